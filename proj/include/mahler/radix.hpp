#pragma once

#include <gmpxx.h>

#include <optional>
#include <utility>

namespace mahler {

// Largest-exponent perfect-power test: returns (d, m) with n == d^m and m
// maximal (so m >= 2 and d itself is not a perfect power); nullopt when n is
// no perfect power. Requires n >= 2.
std::optional<std::pair<mpz_class, unsigned>> is_perfect_power(const mpz_class& n);

// Canonical decomposition r = d^j with d not a perfect power (j == 1 when r
// itself is not one). This base d is what interleaving and the coefficient
// rank tests are built on.
struct RadixDecomposition {
    mpz_class d;
    unsigned j;
};

RadixDecomposition decompose_radix(const mpz_class& r);

}  // namespace mahler
