#pragma once

#include <gmpxx.h>

#include <string>

#include "mahler/bigcomplex.hpp"

namespace mahler {

// Element a + b*sqrt(d) of a quadratic field Q(sqrt(d)), with exact rational
// a, b and squarefree integer d not in {0, 1}. d < 0 gives an imaginary
// quadratic field (sqrt(d) = i*sqrt(|d|) on the principal branch).
class QuadExt {
public:
    QuadExt(mpq_class a, mpq_class b, long d);

    const mpq_class& a() const { return a_; }
    const mpq_class& b() const { return b_; }
    long d() const { return d_; }

    bool is_zero() const { return a_ == 0 && b_ == 0; }
    bool is_rational() const { return b_ == 0; }
    bool is_real() const { return d_ > 0 || b_ == 0; }

    QuadExt conjugate() const { return QuadExt(a_, -b_, d_); }
    mpq_class norm() const { return a_ * a_ - mpq_class(d_) * b_ * b_; }

    bool operator==(const QuadExt& o) const;
    bool operator!=(const QuadExt& o) const { return !(*this == o); }

    std::string to_string() const;

private:
    mpq_class a_, b_;
    long d_;
};

// Same-field arithmetic; mixing fields throws FieldMismatchError. A rational
// operand (QuadExt with b == 0) coerces into either field, which callers
// arrange via the AlgebraicInput layer.
QuadExt add(const QuadExt& x, const QuadExt& y);
QuadExt sub(const QuadExt& x, const QuadExt& y);
QuadExt neg(const QuadExt& x);
QuadExt mul(const QuadExt& x, const QuadExt& y);
QuadExt div(const QuadExt& x, const QuadExt& y);  // DivByZeroError on y == 0
QuadExt pow(const QuadExt& x, long n);            // negative n inverts
QuadExt pow(const QuadExt& x, const mpz_class& n);

// Numerical image at context precision, radius <= 2^-(P-4). Real embedding
// uses the positive square root; d < 0 lands on the positive imaginary axis.
BigComplex embed(const QuadExt& x, const PrecisionContext& ctx);

}  // namespace mahler
