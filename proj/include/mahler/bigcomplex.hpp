#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <optional>
#include <string>

#include "mahler/bigfloat.hpp"
#include "mahler/errbound.hpp"

namespace mahler {

// Working precision plus guard bits. All certified outputs are required to
// carry an error radius at most 2^-(P-g) * max(1, |value|).
struct PrecisionContext {
    mpfr_prec_t working_bits = 256;  // P
    long guard_bits = 32;            // g

    PrecisionContext() = default;
    PrecisionContext(mpfr_prec_t p, long g);  // validates P >= 64, 0 < g < P/2

    long target_exp() const { return -(static_cast<long>(working_bits) - guard_bits); }
};

PrecisionContext default_context();  // honours MAHLER_DEFAULT_BITS

// Complex interval: midpoint (re, im) at a fixed precision plus a rigorous
// radius. Every arithmetic routine accounts for its own rounding via the
// MPFR ternary value, so a zero radius really means "exact".
class BigComplex {
public:
    explicit BigComplex(mpfr_prec_t prec) : re_(prec), im_(prec) {}

    const BigFloat& re() const { return re_; }
    const BigFloat& im() const { return im_; }
    BigFloat& re() { return re_; }
    BigFloat& im() { return im_; }
    const ErrBound& err() const { return err_; }
    void set_err(const ErrBound& e) { err_ = e; }
    void widen_err(const ErrBound& e) { err_ += e; }

    mpfr_prec_t prec() const { return re_.prec(); }
    bool midpoint_is_zero() const { return re_.is_zero() && im_.is_zero(); }
    bool is_exact_zero() const { return midpoint_is_zero() && err_.is_zero(); }

    // True when 0 lies outside the interval (certified nonzero).
    bool certainly_nonzero() const;

    static BigComplex zero(mpfr_prec_t prec) { return BigComplex(prec); }
    static BigComplex from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec);
    static BigComplex from_long(long v, mpfr_prec_t prec);

    std::string to_string(std::size_t digits = 0) const;

private:
    BigFloat re_, im_;
    ErrBound err_;
};

// Arithmetic (result precision = max of operand precisions).
BigComplex add(const BigComplex& a, const BigComplex& b);
BigComplex sub(const BigComplex& a, const BigComplex& b);
BigComplex neg(const BigComplex& a);
BigComplex mul(const BigComplex& a, const BigComplex& b);
// Throws DivByZeroError for an exactly-zero divisor and ResolutionError when
// the divisor cannot be separated from zero at its current radius.
BigComplex div(const BigComplex& a, const BigComplex& b);
BigComplex mul_pow2(const BigComplex& a, long k);
BigComplex pow_ui(const BigComplex& a, unsigned long n);
BigComplex pow_mpz(const BigComplex& a, const mpz_class& n);  // negative allowed
BigComplex conj(const BigComplex& a);

// |a| <= 2^result (tight to within a couple of bits); nullopt when the
// midpoint is zero and the radius is too (i.e. a == 0 exactly).
std::optional<long> abs_upper_exp(const BigComplex& a);
// 2^result <= |a|, accounting for the radius; nullopt when no positive lower
// bound can be certified.
std::optional<long> abs_lower_exp(const BigComplex& a);

// 64-bit directed-rounding magnitude bounds as plain BigFloat values, used by
// truncation analysis. abs_upper >= |a| always; abs_lower <= |a| (clamped at 0).
BigFloat abs_upper(const BigComplex& a);
BigFloat abs_lower(const BigComplex& a);

// Upper bound on |a - b| expressed as an ErrBound (midpoint distance rounded
// up plus both radii). This is the workhorse for "are these equal to 2^-t".
ErrBound abs_distance_bound(const BigComplex& a, const BigComplex& b);
ErrBound abs_bound(const BigComplex& a);  // |a| <= returned radius

// e^(2*pi*i*k/n) at context precision, radius <= 2^-(P-2).
BigComplex root_of_unity_numeric(long n, long k, const PrecisionContext& ctx);

// Error radius contributed by one MPFR round-to-nearest operation, derived
// from its ternary value (0 means the result was exact).
ErrBound rounding_err(mpfr_srcptr x, int ternary);

}  // namespace mahler
