#include "mahler/quadext.hpp"

#include "mahler/errors.hpp"
#include "mahler/rational.hpp"

namespace mahler {

namespace {

void require_same_field(const QuadExt& x, const QuadExt& y) {
    if (x.d() != y.d())
        throw FieldMismatchError("cannot combine sqrt(" + std::to_string(x.d()) +
                                 ") with sqrt(" + std::to_string(y.d()) + ") exactly");
}

}  // namespace

QuadExt::QuadExt(mpq_class a, mpq_class b, long d) : a_(std::move(a)), b_(std::move(b)), d_(d) {
    if (d_ == 0 || d_ == 1) throw DomainError("quadratic field tag must not be 0 or 1");
    if (!is_square_free(mpz_class(d_)))
        throw DomainError("quadratic field tag must be squarefree: " + std::to_string(d_));
    a_.canonicalize();
    b_.canonicalize();
}

bool QuadExt::operator==(const QuadExt& o) const {
    if (b_ == 0 && o.b_ == 0) return a_ == o.a_;  // both rational: tag irrelevant
    return d_ == o.d_ && a_ == o.a_ && b_ == o.b_;
}

std::string QuadExt::to_string() const {
    if (b_ == 0) return rational_to_string(a_);
    std::string s;
    if (a_ != 0) s = rational_to_string(a_) + (b_ > 0 ? " + " : " - ");
    else if (b_ < 0) s = "-";
    mpq_class babs = abs(b_);
    if (babs != 1) s += rational_to_string(babs) + "*";
    s += "sqrt(" + std::to_string(d_) + ")";
    return s;
}

QuadExt add(const QuadExt& x, const QuadExt& y) {
    require_same_field(x, y);
    return QuadExt(x.a() + y.a(), x.b() + y.b(), x.d());
}

QuadExt sub(const QuadExt& x, const QuadExt& y) {
    require_same_field(x, y);
    return QuadExt(x.a() - y.a(), x.b() - y.b(), x.d());
}

QuadExt neg(const QuadExt& x) { return QuadExt(-x.a(), -x.b(), x.d()); }

QuadExt mul(const QuadExt& x, const QuadExt& y) {
    require_same_field(x, y);
    mpq_class d(x.d());
    return QuadExt(x.a() * y.a() + d * x.b() * y.b(), x.a() * y.b() + x.b() * y.a(), x.d());
}

QuadExt div(const QuadExt& x, const QuadExt& y) {
    require_same_field(x, y);
    if (y.is_zero()) throw DivByZeroError();
    mpq_class n = y.norm();  // nonzero: d squarefree means sqrt(d) irrational
    QuadExt num = mul(x, y.conjugate());
    return QuadExt(num.a() / n, num.b() / n, x.d());
}

QuadExt pow(const QuadExt& x, long n) { return pow(x, mpz_class(n)); }

QuadExt pow(const QuadExt& x, const mpz_class& n) {
    if (n < 0) {
        if (x.is_zero()) throw DivByZeroError();
        QuadExt one(1, 0, x.d());
        return pow(div(one, x), mpz_class(-n));
    }
    QuadExt acc(1, 0, x.d());
    QuadExt base = x;
    mpz_class m = n;
    while (m > 0) {
        if (mpz_odd_p(m.get_mpz_t())) acc = mul(acc, base);
        m >>= 1;
        if (m > 0) base = mul(base, base);
    }
    return acc;
}

BigComplex embed(const QuadExt& x, const PrecisionContext& ctx) {
    mpfr_prec_t p = ctx.working_bits;
    if (x.b() == 0) return BigComplex::from_mpq(x.a(), 0, p);

    // sqrt(|d|) and the products at extended precision, then one rounding.
    mpfr_prec_t pw = p + 32;
    BigFloat root(pw), bpart(pw);
    mpfr_sqrt_ui(root.raw(), static_cast<unsigned long>(std::labs(x.d())), MPFR_RNDN);
    BigFloat bq = BigFloat::from_mpq(x.b(), pw);
    mpfr_mul(bpart.raw(), bq.raw(), root.raw(), MPFR_RNDN);

    BigComplex z(p);
    ErrBound err;
    if (x.d() > 0) {
        BigFloat aq = BigFloat::from_mpq(x.a(), pw);
        mpfr_add(bpart.raw(), bpart.raw(), aq.raw(), MPFR_RNDN);
        mpfr_set(z.re().raw(), bpart.raw(), MPFR_RNDN);
    } else {
        int t = mpfr_set_q(z.re().raw(), x.a().get_mpq_t(), MPFR_RNDN);
        err += rounding_err(z.re().raw(), t);
        mpfr_set(z.im().raw(), bpart.raw(), MPFR_RNDN);
    }
    // The extended-precision block keeps its relative error below 2^-(pw-4);
    // after the final rounding the absolute radius is at most
    // 2^(exp(result) - p + 1) which we widen to a clean power of two.
    long eb = bpart.is_zero() ? -static_cast<long>(pw) : bpart.exp2();
    err += ErrBound::pow2(eb - static_cast<long>(p) + 1);
    z.set_err(err);
    return z;
}

}  // namespace mahler
