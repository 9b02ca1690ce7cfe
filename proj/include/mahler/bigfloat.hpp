#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <cstdint>
#include <string>
#include <utility>

namespace mahler {

// Thin RAII wrapper over mpfr_t. Arithmetic that needs the MPFR ternary
// value goes through the C API on raw()/get(); this class only manages
// storage, precision, and conversions.
class BigFloat {
public:
    explicit BigFloat(mpfr_prec_t prec) {
        mpfr_init2(v_, prec);
        mpfr_set_zero(v_, 1);
    }
    BigFloat(const BigFloat& other) {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_set(v_, other.v_, MPFR_RNDN);
    }
    BigFloat(BigFloat&& other) noexcept {
        mpfr_init2(v_, mpfr_get_prec(other.v_));
        mpfr_swap(v_, other.v_);
    }
    BigFloat& operator=(const BigFloat& other) {
        if (this != &other) {
            mpfr_set_prec(v_, mpfr_get_prec(other.v_));
            mpfr_set(v_, other.v_, MPFR_RNDN);
        }
        return *this;
    }
    BigFloat& operator=(BigFloat&& other) noexcept {
        mpfr_swap(v_, other.v_);
        return *this;
    }
    ~BigFloat() { mpfr_clear(v_); }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    bool is_zero() const { return mpfr_zero_p(v_) != 0; }
    int sign() const { return mpfr_sgn(v_); }
    // Exponent e with 2^(e-1) <= |x| < 2^e; only meaningful for nonzero x.
    long exp2() const { return static_cast<long>(mpfr_get_exp(v_)); }
    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }

    static BigFloat from_mpq(const mpq_class& q, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_q(r.v_, q.get_mpq_t(), MPFR_RNDN);
        return r;
    }
    static BigFloat from_long(long v, mpfr_prec_t prec) {
        BigFloat r(prec);
        mpfr_set_si(r.v_, v, MPFR_RNDN);
        return r;
    }

    // Decimal rendering with the given number of significant digits.
    std::string str(std::size_t digits = 0) const;

private:
    mpfr_t v_;
};

std::string float_to_string(mpfr_srcptr x, std::size_t digits);

}  // namespace mahler
