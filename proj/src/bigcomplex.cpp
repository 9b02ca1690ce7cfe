#include "mahler/bigcomplex.hpp"

#include <cstdlib>
#include <sstream>

#include "mahler/errbound.hpp"
#include "mahler/errors.hpp"

namespace mahler {

// Rounding-error radius of a freshly computed mpfr value given its ternary:
// for round-to-nearest the error is at most half an ulp, i.e. 2^(exp-prec-1).
ErrBound rounding_err(mpfr_srcptr x, int ternary) {
    if (ternary == 0 || mpfr_zero_p(x)) return ErrBound::exact();
    return ErrBound::pow2(static_cast<long>(mpfr_get_exp(x)) - mpfr_get_prec(x) - 1);
}

namespace {

ErrBound round_err(mpfr_srcptr x, int ternary) { return rounding_err(x, ternary); }

// exp bound for the midpoint modulus: |z_hat| < 2^result. nullopt iff the
// midpoint is exactly (0, 0).
std::optional<long> mid_abs_exp(const BigComplex& z) {
    std::optional<long> e;
    if (!z.re().is_zero()) e = z.re().exp2();
    if (!z.im().is_zero()) {
        long ei = z.im().exp2();
        e = e ? std::max(*e, ei) : ei;
    }
    if (!e) return std::nullopt;
    return *e + 1;  // |re| + |im| < 2^(max+1)
}

ErrBound scaled_or_zero(const ErrBound& rho, const std::optional<long>& exp) {
    if (!exp || rho.is_zero()) return ErrBound::exact();
    return rho.times_pow2(*exp);
}

}  // namespace

PrecisionContext::PrecisionContext(mpfr_prec_t p, long g) : working_bits(p), guard_bits(g) {
    if (p < 64) throw InputError("working precision must be at least 64 bits");
    if (g <= 0 || g >= static_cast<long>(p) / 2)
        throw InputError("guard bits must satisfy 0 < g < P/2");
}

PrecisionContext default_context() {
    long bits = 256;
    if (const char* env = std::getenv("MAHLER_DEFAULT_BITS")) {
        char* end = nullptr;
        long v = std::strtol(env, &end, 10);
        if (end && *end == '\0' && v >= 64) bits = v;
    }
    return PrecisionContext(static_cast<mpfr_prec_t>(bits), 32);
}

bool BigComplex::certainly_nonzero() const {
    auto e = mid_abs_exp(*this);
    if (!e) return false;
    // |z_hat| >= 2^(max_component_exp - 1) = 2^(e - 2); need err < that.
    return err_.is_zero() || err_.log2_upper() < *e - 2;
}

BigComplex BigComplex::from_mpq(const mpq_class& re, const mpq_class& im, mpfr_prec_t prec) {
    BigComplex z(prec);
    int t1 = mpfr_set_q(z.re_.raw(), re.get_mpq_t(), MPFR_RNDN);
    int t2 = mpfr_set_q(z.im_.raw(), im.get_mpq_t(), MPFR_RNDN);
    z.err_ = round_err(z.re_.raw(), t1) + round_err(z.im_.raw(), t2);
    return z;
}

BigComplex BigComplex::from_long(long v, mpfr_prec_t prec) {
    BigComplex z(prec);
    mpfr_set_si(z.re_.raw(), v, MPFR_RNDN);
    return z;
}

std::string BigComplex::to_string(std::size_t digits) const {
    std::ostringstream os;
    os << re_.str(digits);
    if (!im_.is_zero()) {
        os << (im_.sign() < 0 ? " - " : " + ");
        BigFloat a = im_;
        mpfr_abs(a.raw(), a.raw(), MPFR_RNDN);
        os << a.str(digits) << "*i";
    }
    return os.str();
}

BigComplex add(const BigComplex& a, const BigComplex& b) {
    BigComplex r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_add(r.re().raw(), a.re().raw(), b.re().raw(), MPFR_RNDN);
    int t2 = mpfr_add(r.im().raw(), a.im().raw(), b.im().raw(), MPFR_RNDN);
    r.set_err(a.err() + b.err() + round_err(r.re().raw(), t1) + round_err(r.im().raw(), t2));
    return r;
}

BigComplex sub(const BigComplex& a, const BigComplex& b) {
    BigComplex r(std::max(a.prec(), b.prec()));
    int t1 = mpfr_sub(r.re().raw(), a.re().raw(), b.re().raw(), MPFR_RNDN);
    int t2 = mpfr_sub(r.im().raw(), a.im().raw(), b.im().raw(), MPFR_RNDN);
    r.set_err(a.err() + b.err() + round_err(r.re().raw(), t1) + round_err(r.im().raw(), t2));
    return r;
}

BigComplex neg(const BigComplex& a) {
    BigComplex r(a.prec());
    mpfr_neg(r.re().raw(), a.re().raw(), MPFR_RNDN);
    mpfr_neg(r.im().raw(), a.im().raw(), MPFR_RNDN);
    r.set_err(a.err());
    return r;
}

BigComplex conj(const BigComplex& a) {
    BigComplex r(a.prec());
    mpfr_set(r.re().raw(), a.re().raw(), MPFR_RNDN);
    mpfr_neg(r.im().raw(), a.im().raw(), MPFR_RNDN);
    r.set_err(a.err());
    return r;
}

BigComplex mul_pow2(const BigComplex& a, long k) {
    BigComplex r(a.prec());
    mpfr_mul_2si(r.re().raw(), a.re().raw(), k, MPFR_RNDN);
    mpfr_mul_2si(r.im().raw(), a.im().raw(), k, MPFR_RNDN);
    r.set_err(a.err().times_pow2(k));
    return r;
}

BigComplex mul(const BigComplex& a, const BigComplex& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    BigComplex r(p);
    BigFloat t1(p), t2(p);
    ErrBound rnd;

    int u1 = mpfr_mul(t1.raw(), a.re().raw(), b.re().raw(), MPFR_RNDN);
    int u2 = mpfr_mul(t2.raw(), a.im().raw(), b.im().raw(), MPFR_RNDN);
    rnd += round_err(t1.raw(), u1) + round_err(t2.raw(), u2);
    int u3 = mpfr_sub(r.re().raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    rnd += round_err(r.re().raw(), u3);

    int u4 = mpfr_mul(t1.raw(), a.re().raw(), b.im().raw(), MPFR_RNDN);
    int u5 = mpfr_mul(t2.raw(), a.im().raw(), b.re().raw(), MPFR_RNDN);
    rnd += round_err(t1.raw(), u4) + round_err(t2.raw(), u5);
    int u6 = mpfr_add(r.im().raw(), t1.raw(), t2.raw(), MPFR_RNDN);
    rnd += round_err(r.im().raw(), u6);

    // |xy - x_hat*y_hat| <= |x_hat|*rho_y + |y_hat|*rho_x + rho_x*rho_y
    ErrBound prop = scaled_or_zero(b.err(), mid_abs_exp(a)) +
                    scaled_or_zero(a.err(), mid_abs_exp(b)) + a.err() * b.err();
    r.set_err(prop + rnd);
    return r;
}

BigComplex div(const BigComplex& a, const BigComplex& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    auto eb = mid_abs_exp(b);
    if (!eb) {
        if (b.err().is_zero()) throw DivByZeroError();
        throw ResolutionError("divisor midpoint is zero but carries a nonzero error radius");
    }
    // |b_hat| >= 2^(ey) with ey = max_component_exp - 1 = *eb - 2.
    long ey = *eb - 2;
    if (!b.err().is_zero() && b.err().log2_upper() > ey - 1)
        throw ResolutionError("divisor cannot be separated from zero at this precision");

    // Midpoint of 1/b_hat at extended precision, then rigorous error:
    //   |1/b - 1/b_hat| <= rho_b / (|b||b_hat|) <= rho_b * 2^(1-2*ey),
    // plus the (tiny) rounding error of this block, bounded generously.
    mpfr_prec_t pw = p + 40;
    BigFloat den(pw), wre(pw), wim(pw), t(pw);
    mpfr_sqr(t.raw(), b.re().raw(), MPFR_RNDN);
    mpfr_sqr(den.raw(), b.im().raw(), MPFR_RNDN);
    mpfr_add(den.raw(), den.raw(), t.raw(), MPFR_RNDN);
    mpfr_div(wre.raw(), b.re().raw(), den.raw(), MPFR_RNDN);
    mpfr_div(wim.raw(), b.im().raw(), den.raw(), MPFR_RNDN);
    mpfr_neg(wim.raw(), wim.raw(), MPFR_RNDN);

    BigComplex inv(p);
    mpfr_set(inv.re().raw(), wre.raw(), MPFR_RNDN);
    mpfr_set(inv.im().raw(), wim.raw(), MPFR_RNDN);
    ErrBound inv_err = ErrBound::pow2(-ey - static_cast<long>(p) + 3);
    if (!b.err().is_zero()) inv_err += b.err().times_pow2(1 - 2 * ey);
    inv.set_err(inv_err);
    return mul(a, inv);
}

BigComplex pow_ui(const BigComplex& a, unsigned long n) {
    BigComplex acc = BigComplex::from_long(1, a.prec());
    BigComplex base = a;
    while (n > 0) {
        if (n & 1ul) acc = mul(acc, base);
        n >>= 1;
        if (n > 0) base = mul(base, base);
    }
    return acc;
}

BigComplex pow_mpz(const BigComplex& a, const mpz_class& n) {
    if (n >= 0) {
        BigComplex acc = BigComplex::from_long(1, a.prec());
        BigComplex base = a;
        mpz_class m = n;
        while (m > 0) {
            if (mpz_odd_p(m.get_mpz_t())) acc = mul(acc, base);
            m >>= 1;
            if (m > 0) base = mul(base, base);
        }
        return acc;
    }
    mpz_class m = -n;
    return div(BigComplex::from_long(1, a.prec()), pow_mpz(a, m));
}

std::optional<long> abs_upper_exp(const BigComplex& a) {
    auto e = mid_abs_exp(a);
    if (!e) {
        if (a.err().is_zero()) return std::nullopt;
        return a.err().log2_upper();
    }
    long bound = *e;
    if (!a.err().is_zero()) bound = std::max(bound, a.err().log2_upper() + 1) + 1;
    return bound;
}

std::optional<long> abs_lower_exp(const BigComplex& a) {
    auto e = mid_abs_exp(a);
    if (!e) return std::nullopt;
    long lo = *e - 2;  // |a_hat| >= 2^(max_component_exp - 1)
    if (a.err().is_zero()) return lo;
    if (a.err().log2_upper() > lo - 1) return std::nullopt;
    return lo - 1;  // |a| >= 2^lo - 2^(lo-1)
}

namespace {

BigFloat hypot_dir(mpfr_srcptr x, mpfr_srcptr y, mpfr_rnd_t rnd) {
    BigFloat r(64);
    mpfr_hypot(r.raw(), x, y, rnd);
    return r;
}

}  // namespace

BigFloat abs_upper(const BigComplex& a) {
    BigFloat r = hypot_dir(a.re().raw(), a.im().raw(), MPFR_RNDU);
    if (!a.err().is_zero()) {
        BigFloat e(64);
        mpfr_set_si_2exp(e.raw(), 1, a.err().log2_upper(), MPFR_RNDU);
        mpfr_add(r.raw(), r.raw(), e.raw(), MPFR_RNDU);
    }
    return r;
}

BigFloat abs_lower(const BigComplex& a) {
    BigFloat r = hypot_dir(a.re().raw(), a.im().raw(), MPFR_RNDD);
    if (!a.err().is_zero()) {
        BigFloat e(64);
        mpfr_set_si_2exp(e.raw(), 1, a.err().log2_upper(), MPFR_RNDU);
        mpfr_sub(r.raw(), r.raw(), e.raw(), MPFR_RNDD);
        if (mpfr_sgn(r.raw()) < 0) mpfr_set_zero(r.raw(), 1);
    }
    return r;
}

ErrBound abs_distance_bound(const BigComplex& a, const BigComplex& b) {
    mpfr_prec_t p = std::max(a.prec(), b.prec());
    BigFloat dre(p), dim(p);
    mpfr_sub(dre.raw(), a.re().raw(), b.re().raw(), MPFR_RNDA);
    mpfr_sub(dim.raw(), a.im().raw(), b.im().raw(), MPFR_RNDA);
    BigFloat d = hypot_dir(dre.raw(), dim.raw(), MPFR_RNDU);
    ErrBound out = a.err() + b.err();
    if (!d.is_zero()) out += ErrBound::pow2(d.exp2());
    return out;
}

ErrBound abs_bound(const BigComplex& a) {
    ErrBound out = a.err();
    BigFloat d = hypot_dir(a.re().raw(), a.im().raw(), MPFR_RNDU);
    if (!d.is_zero()) out += ErrBound::pow2(d.exp2());
    return out;
}

BigComplex root_of_unity_numeric(long n, long k, const PrecisionContext& ctx) {
    if (n <= 0) throw InvalidOrderError();
    long kk = ((k % n) + n) % n;
    mpfr_prec_t p = ctx.working_bits;
    mpfr_prec_t pw = p + 48;
    BigFloat arg(pw), s(pw), c(pw);
    mpfr_const_pi(arg.raw(), MPFR_RNDN);
    mpfr_mul_si(arg.raw(), arg.raw(), 2 * kk, MPFR_RNDN);
    mpfr_div_si(arg.raw(), arg.raw(), n, MPFR_RNDN);
    mpfr_sin_cos(s.raw(), c.raw(), arg.raw(), MPFR_RNDN);
    BigComplex z(p);
    mpfr_set(z.re().raw(), c.raw(), MPFR_RNDN);
    mpfr_set(z.im().raw(), s.raw(), MPFR_RNDN);
    // Argument error < 2^-(pw-6); sin/cos are 1-Lipschitz; plus final
    // roundings. 2^-(P-2) absorbs everything with room to spare.
    z.set_err(ErrBound::pow2(-(static_cast<long>(p) - 2)));
    return z;
}

}  // namespace mahler
