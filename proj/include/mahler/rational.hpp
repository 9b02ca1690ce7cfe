#pragma once

#include <gmpxx.h>

#include <string>

namespace mahler {

// Parse an exact rational from a string. Accepts "7/2", "-3", and decimal
// notation such as "0.35" or "-1.25e-3" (converted exactly, never rounded).
mpq_class parse_rational(const std::string& text);

// Canonical textual form: "p/q" with q > 0, or just "p" when q == 1.
std::string rational_to_string(const mpq_class& q);

// Parse a (possibly signed) integer; throws InputError on garbage.
mpz_class parse_integer(const std::string& text);

// gcd/lcm conveniences for mpz working values.
mpz_class integer_lcm(const mpz_class& a, const mpz_class& b);

// Largest m >= 1 with p^m == q for integer p; used by exactness checks.
bool is_square_free(const mpz_class& n);

}  // namespace mahler
