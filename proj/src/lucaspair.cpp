#include "mahler/lucaspair.hpp"

#include <mpfr.h>

#include <utility>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

// (F(n), F(n+1)) for n >= 0 by fast doubling.
std::pair<mpz_class, mpz_class> fib_pair(unsigned long n) {
    if (n == 0) return {mpz_class(0), mpz_class(1)};
    auto [a, b] = fib_pair(n >> 1);
    mpz_class c = a * (2 * b - a);
    mpz_class d = a * a + b * b;
    if (n & 1) return {d, c + d};
    return {c, d};
}

unsigned long abs_index(long n) {
    if (n == std::numeric_limits<long>::min()) throw InputError("index out of range");
    return static_cast<unsigned long>(n < 0 ? -n : n);
}

}  // namespace

mpz_class fib(long n) {
    unsigned long m = abs_index(n);
    mpz_class f = fib_pair(m).first;
    if (n < 0 && m % 2 == 0) f = -f;
    return f;
}

mpz_class lucas(long n) {
    unsigned long m = abs_index(n);
    auto [a, b] = fib_pair(m);
    mpz_class v = 2 * b - a;
    if (n < 0 && m % 2 == 1) v = -v;
    return v;
}

LucasPairParams::LucasPairParams(AlgebraicInput gamma1, AlgebraicInput gamma2, AlgebraicInput g1,
                                 AlgebraicInput g2, AlgebraicInput h1, AlgebraicInput h2,
                                 std::string preset_name)
    : gamma1_(std::move(gamma1)),
      gamma2_(std::move(gamma2)),
      g1_(std::move(g1)),
      g2_(std::move(g2)),
      h1_(std::move(h1)),
      h2_(std::move(h2)),
      preset_(std::move(preset_name)) {
    validate();
}

void LucasPairParams::validate() {
    const AlgebraicInput* vals[] = {&gamma1_, &gamma2_, &g1_, &g2_, &h1_, &h2_};
    for (const auto* v : vals)
        if (v->is_zero()) throw InputError("recurrence parameters must all be nonzero");

    // All six values embeddable in one field <=> exact sequence arithmetic.
    std::optional<long> d;
    exact_ = true;
    for (const auto* v : vals) {
        auto vd = v->field_d();
        if (!vd) continue;
        if (d && *d != *vd) {
            exact_ = false;
            break;
        }
        d = vd;
    }

    if (exact_) {
        AlgebraicInput prod = mul(gamma1_, gamma2_);
        if (prod == AlgebraicInput(1L)) {
            delta_ = 1;
        } else if (prod == AlgebraicInput(-1L)) {
            delta_ = -1;
        } else {
            throw InputError("gamma1 * gamma2 must be +1 or -1");
        }
    } else {
        PrecisionContext ctx(192, 32);
        BigComplex prod = mul(embed(gamma1_, ctx), embed(gamma2_, ctx));
        BigComplex one = BigComplex::from_long(1, ctx.working_bits);
        if (abs_distance_bound(prod, one).leq_pow2(-96)) {
            delta_ = 1;
        } else if (abs_distance_bound(prod, neg(one)).leq_pow2(-96)) {
            delta_ = -1;
        } else {
            throw InputError("gamma1 * gamma2 must be +1 or -1");
        }
    }

    PrecisionContext small_ctx(64, 16);
    BigFloat lo = abs_lower(embed(gamma1_, small_ctx));
    if (mpfr_cmp_ui(lo.raw(), 1) <= 0) throw InputError("|gamma1| must exceed 1");
    BigFloat up = abs_upper(embed(gamma2_, small_ctx));
    if (mpfr_cmp_ui(up.raw(), 1) >= 0) throw InputError("|gamma2| must be below 1");
}

LucasPairParams LucasPairParams::fibonacci_lucas() {
    AlgebraicInput gamma1(QuadExt(mpq_class(1, 2), mpq_class(1, 2), 5));
    AlgebraicInput gamma2(QuadExt(mpq_class(1, 2), mpq_class(-1, 2), 5));
    AlgebraicInput g1(QuadExt(mpq_class(0), mpq_class(1, 5), 5));
    AlgebraicInput g2(QuadExt(mpq_class(0), mpq_class(-1, 5), 5));
    return LucasPairParams(gamma1, gamma2, g1, g2, AlgebraicInput(1L), AlgebraicInput(1L),
                           "fibonacci-lucas");
}

LucasPairParams LucasPairParams::fibonacci() {
    AlgebraicInput gamma1(QuadExt(mpq_class(1, 2), mpq_class(1, 2), 5));
    AlgebraicInput gamma2(QuadExt(mpq_class(1, 2), mpq_class(-1, 2), 5));
    AlgebraicInput g1(QuadExt(mpq_class(0), mpq_class(1, 5), 5));
    AlgebraicInput g2(QuadExt(mpq_class(0), mpq_class(-1, 5), 5));
    return LucasPairParams(gamma1, gamma2, g1, g2, g1, g2, "fibonacci");
}

LucasPairParams LucasPairParams::lucas() {
    AlgebraicInput gamma1(QuadExt(mpq_class(1, 2), mpq_class(1, 2), 5));
    AlgebraicInput gamma2(QuadExt(mpq_class(1, 2), mpq_class(-1, 2), 5));
    return LucasPairParams(gamma1, gamma2, AlgebraicInput(1L), AlgebraicInput(1L),
                           AlgebraicInput(1L), AlgebraicInput(1L), "lucas");
}

LucasPairParams LucasPairParams::shifted_power() {
    return LucasPairParams(AlgebraicInput(2L), AlgebraicInput(mpq_class(1, 2)),
                           AlgebraicInput(1L), AlgebraicInput(1L), AlgebraicInput(1L),
                           AlgebraicInput(4L), "shifted-power");
}

LucasPairParams LucasPairParams::cubic_twist() {
    // g2 = -1/theta and h2 = -theta for theta = e^(2 pi i/3); then
    // -g2*theta/g1 = 1 and Omega*theta = 1, so the resonance test fires at
    // offset 0 with exact cube-phase witnesses.
    AlgebraicInput g2(QuadExt(mpq_class(1, 2), mpq_class(1, 2), -3));
    AlgebraicInput h2(QuadExt(mpq_class(1, 2), mpq_class(-1, 2), -3));
    return LucasPairParams(AlgebraicInput(2L), AlgebraicInput(mpq_class(1, 2)),
                           AlgebraicInput(1L), g2, AlgebraicInput(1L), h2, "cubic-twist");
}

LucasPairParams LucasPairParams::from_preset(const std::string& name) {
    if (name == "fibonacci-lucas") return fibonacci_lucas();
    if (name == "fibonacci") return fibonacci();
    if (name == "lucas") return lucas();
    if (name == "shifted-power") return shifted_power();
    if (name == "cubic-twist") return cubic_twist();
    throw InputError("unknown preset: " + name);
}

std::vector<std::string> LucasPairParams::preset_names() {
    return {"fibonacci-lucas", "fibonacci", "lucas", "shifted-power", "cubic-twist"};
}

AlgebraicInput LucasPairParams::omega() const { return div(mul(g1_, h2_), mul(g2_, h1_)); }

AlgebraicInput LucasPairParams::rn(const mpz_class& n) const {
    if (!exact_) throw ExactnessRequiredError("sequence values need single-field parameters");
    return add(mul(g1_, pow(gamma1_, n)), mul(g2_, pow(gamma2_, n)));
}

AlgebraicInput LucasPairParams::sn(const mpz_class& n) const {
    if (!exact_) throw ExactnessRequiredError("sequence values need single-field parameters");
    return add(mul(h1_, pow(gamma1_, n)), mul(h2_, pow(gamma2_, n)));
}

std::string LucasPairParams::r_display() const {
    if (preset_ == "fibonacci-lucas" || preset_ == "fibonacci") return "F";
    if (preset_ == "lucas") return "L";
    return "R";
}

std::string LucasPairParams::s_display() const {
    if (preset_ == "fibonacci-lucas" || preset_ == "lucas") return "L";
    if (preset_ == "fibonacci") return "F";
    return "S";
}

nlohmann::ordered_json LucasPairParams::to_json() const {
    nlohmann::ordered_json j;
    j["gamma1"] = gamma1_.to_json();
    j["gamma2"] = gamma2_.to_json();
    j["g1"] = g1_.to_json();
    j["g2"] = g2_.to_json();
    j["h1"] = h1_.to_json();
    j["h2"] = h2_.to_json();
    j["delta"] = delta_;
    if (!preset_.empty()) j["preset"] = preset_;
    return j;
}

LucasPairParams LucasPairParams::from_json(const nlohmann::json& j) {
    if (j.is_string()) return from_preset(j.get<std::string>());
    if (!j.is_object()) throw InputError("pair parameters must be an object or a preset name");
    if (j.contains("preset") && j.size() == 1) return from_preset(j.at("preset").get<std::string>());
    for (const char* key : {"gamma1", "gamma2", "g1", "g2", "h1", "h2"})
        if (!j.contains(key)) throw InputError(std::string("pair parameters need ") + key);
    return LucasPairParams(
        AlgebraicInput::from_json(j.at("gamma1")), AlgebraicInput::from_json(j.at("gamma2")),
        AlgebraicInput::from_json(j.at("g1")), AlgebraicInput::from_json(j.at("g2")),
        AlgebraicInput::from_json(j.at("h1")), AlgebraicInput::from_json(j.at("h2")),
        j.value("preset", ""));
}

std::string family_name(NumberFamily f) {
    switch (f) {
        case NumberFamily::Q: return "Q";
        case NumberFamily::R: return "R";
        case NumberFamily::S: return "S";
    }
    throw ComputeError("unreachable number family");
}

NumberFamily family_from_name(const std::string& s) {
    if (s == "Q") return NumberFamily::Q;
    if (s == "R") return NumberFamily::R;
    if (s == "S") return NumberFamily::S;
    throw InputError("unknown number family: " + s + " (expected Q, R or S)");
}

void NumberSeriesSpec::validate() const {
    if (k < 1) throw InputError("index scale k must be >= 1");
    if (r < 2) throw InputError("index radix r must be >= 2");
    if (family == NumberFamily::Q && (mu < 1 || mu > r - 1))
        throw InputError("Q-series exponent mu must satisfy 1 <= mu <= r-1");
    if (start_index < 0) throw InputError("start index must be >= 0");
    if (coeffs.is_identically_zero()) throw EmptySeriesError();
}

nlohmann::ordered_json NumberSeriesSpec::to_json() const {
    nlohmann::ordered_json j;
    j["family"] = family_name(family);
    j["k"] = k;
    j["r"] = r;
    if (family == NumberFamily::Q) {
        j["mu"] = mu;
    } else {
        j["ell"] = ell;
    }
    j["coeffs"] = coeffs.to_json();
    j["start_index"] = start_index;
    return j;
}

NumberSeriesSpec NumberSeriesSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("number series spec must be a JSON object");
    NumberSeriesSpec s;
    s.family = family_from_name(j.at("family").get<std::string>());
    s.k = j.value("k", 1L);
    s.r = j.value("r", 2L);
    s.ell = j.value("ell", 0L);
    s.mu = j.value("mu", 1L);
    if (j.contains("coeffs")) s.coeffs = PeriodicSeq::from_json(j.at("coeffs"));
    s.start_index = j.value("start_index", 0L);
    s.validate();
    return s;
}

namespace {

mpz_class pow_long(long base, long e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return out;
}

mpz_class series_index(const NumberSeriesSpec& spec, long h) {
    return mpz_class(spec.k) * pow_long(spec.r, h) + spec.ell;
}

// Last index h to sum so the omitted reciprocal tail is below 2^-target.
// Uses |D_n| >= (|lead|/2) |gamma1|^n, valid once the subordinate term has
// decayed below half the dominant one.
long number_truncation_depth(const LucasPairParams& params, const NumberSeriesSpec& spec,
                             long target_bits) {
    PrecisionContext small_ctx(64, 16);
    const bool is_r = spec.family == NumberFamily::R;
    BigFloat lead_lo = abs_lower(embed(is_r ? params.g1() : params.h1(), small_ctx));
    BigFloat sub_up = abs_upper(embed(is_r ? params.g2() : params.h2(), small_ctx));
    BigFloat a1_lo = abs_lower(embed(params.gamma1(), small_ctx));
    BigFloat a2_up = abs_upper(embed(params.gamma2(), small_ctx));
    if (mpfr_sgn(lead_lo.raw()) <= 0)
        throw ComputeError("leading coefficient lower bound degenerated to zero");

    mpfr_t cmax, lhs, rhs, t1, thresh;
    mpfr_inits2(64, cmax, lhs, rhs, t1, thresh, (mpfr_ptr)nullptr);
    mpfr_set_ui(cmax, 0, MPFR_RNDN);
    for (long i = 0; i < static_cast<long>(spec.coeffs.period()); ++i) {
        BigFloat cu = abs_upper(embed(spec.coeffs.term(i), small_ctx));
        if (mpfr_cmp(cu.raw(), cmax) > 0) mpfr_set(cmax, cu.raw(), MPFR_RNDU);
    }
    mpfr_set_ui_2exp(thresh, 1, -target_bits, MPFR_RNDN);

    long result = -1;
    for (long H = spec.start_index - 1; H <= spec.start_index + 400; ++H) {
        mpz_class n1 = series_index(spec, H + 1);
        if (n1 < 0) continue;

        // Dominance: |sub| * |gamma2|^n1 <= (|lead|/2) * |gamma1|^n1.
        mpfr_pow_z(lhs, a2_up.raw(), n1.get_mpz_t(), MPFR_RNDU);
        mpfr_mul(lhs, lhs, sub_up.raw(), MPFR_RNDU);
        mpfr_pow_z(rhs, a1_lo.raw(), n1.get_mpz_t(), MPFR_RNDD);
        mpfr_mul(rhs, rhs, lead_lo.raw(), MPFR_RNDD);
        mpfr_div_2si(rhs, rhs, 1, MPFR_RNDD);
        if (mpfr_cmp(lhs, rhs) > 0) continue;

        // Successive-term bound ratio <= 1/2: |gamma1|^(k r^(H+1) (r-1)) >= 2.
        mpz_class gap = mpz_class(spec.k) * pow_long(spec.r, H + 1) * (spec.r - 1);
        mpfr_pow_z(t1, a1_lo.raw(), gap.get_mpz_t(), MPFR_RNDD);
        if (mpfr_cmp_ui(t1, 2) < 0) continue;

        // Tail: 2 * cmax / ((|lead|/2) |gamma1|^n1) <= 2^-target.
        mpfr_pow_z(t1, a1_lo.raw(), n1.get_mpz_t(), MPFR_RNDD);
        mpfr_mul(t1, t1, lead_lo.raw(), MPFR_RNDD);
        mpfr_ui_div(t1, 4, t1, MPFR_RNDU);
        mpfr_mul(t1, t1, cmax, MPFR_RNDU);
        if (mpfr_cmp(t1, thresh) > 0) continue;

        result = H;
        break;
    }
    mpfr_clears(cmax, lhs, rhs, t1, thresh, (mpfr_ptr)nullptr);
    if (result < spec.start_index - 1)
        throw ComputeError("number-series truncation analysis failed to converge");
    return result;
}

}  // namespace

NumberEvalResult eval_number_series(const LucasPairParams& params, const NumberSeriesSpec& spec,
                                    const PrecisionContext& ctx) {
    spec.validate();
    const long P = static_cast<long>(ctx.working_bits);

    if (spec.family == NumberFamily::Q) {
        SeriesSpec gspec = SeriesSpec::make_gamma(spec.r, spec.mu, spec.coeffs, spec.start_index);
        BigComplex z = div(BigComplex::from_long(1, ctx.working_bits),
                           pow_ui(embed(params.gamma1(), ctx), static_cast<unsigned long>(spec.k)));
        EvalResult er = eval_series(gspec, z, ctx);
        return NumberEvalResult{er.value, er.terms_used, 0, er.truncation_bound};
    }

    const long target = P;
    const long h_max = number_truncation_depth(params, spec, target);
    const bool is_r = spec.family == NumberFamily::R;

    BigComplex acc = BigComplex::zero(ctx.working_bits);
    long terms = 0, skipped = 0;

    if (params.exact()) {
        for (long h = spec.start_index; h <= h_max; ++h) {
            mpz_class n = series_index(spec, h);
            if (n < 0) {
                ++skipped;
                continue;
            }
            AlgebraicInput den = is_r ? params.rn(n) : params.sn(n);
            if (den.is_zero()) {
                ++skipped;
                continue;
            }
            AlgebraicInput c = spec.coeffs.term(h);
            if (!c.is_zero()) acc = add(acc, embed(div(c, den), ctx));
            ++terms;
        }
    } else {
        BigComplex a1 = embed(params.gamma1(), ctx);
        BigComplex a2 = embed(params.gamma2(), ctx);
        BigComplex lead = embed(is_r ? params.g1() : params.h1(), ctx);
        BigComplex subc = embed(is_r ? params.g2() : params.h2(), ctx);
        for (long h = spec.start_index; h <= h_max; ++h) {
            mpz_class n = series_index(spec, h);
            if (n < 0) {
                ++skipped;
                continue;
            }
            BigComplex den = add(mul(lead, pow_mpz(a1, n)), mul(subc, pow_mpz(a2, n)));
            auto lo = abs_lower_exp(den);
            if (!lo || *lo <= -(P / 4))
                throw ResolutionError("denominator at h = " + std::to_string(h) +
                                      " is below resolution; exact parameters are required to "
                                      "decide term skipping");
            BigComplex c = embed(spec.coeffs.term(h), ctx);
            acc = add(acc, div(c, den));
            ++terms;
        }
    }

    ErrBound tail = ErrBound::pow2(-target);
    acc.widen_err(tail);
    return NumberEvalResult{acc, terms, skipped, tail};
}

namespace {

int delta_power_sign(int delta, const mpz_class& exponent) {
    if (delta == 1) return 1;
    return mpz_even_p(exponent.get_mpz_t()) ? 1 : -1;
}

}  // namespace

nlohmann::ordered_json TransformConsts::to_json() const {
    nlohmann::ordered_json j;
    j["E"] = E.to_json();
    j["e"] = e.to_json();
    j["F"] = F.to_json();
    j["f"] = f.to_json();
    j["h_exact"] = h_exact;
    if (h_exact) j["h"] = h;
    j["abs_e"] = abs_e;
    j["abs_f"] = abs_f;
    return j;
}

TransformConsts transform_consts(const LucasPairParams& params, long k, long r, long ell,
                                 std::optional<long> h) {
    if (k < 1) throw InputError("index scale k must be >= 1");
    if (r < 2) throw InputError("index radix r must be >= 2");
    if (h && *h < 0) throw InputError("transform index h must be >= 0");

    mpz_class X = mpz_class(k) * (h ? pow_long(r, *h) : mpz_class(r));
    int sx = delta_power_sign(params.delta(), X);
    int sxl = delta_power_sign(params.delta(), X + ell);
    AlgebraicInput sign_x(static_cast<long>(sx));
    AlgebraicInput sign_xl(static_cast<long>(sxl));

    AlgebraicInput g2pow = pow(params.gamma2(), ell);
    AlgebraicInput g1sq = pow(params.gamma1(), 2 * ell);

    TransformConsts out;
    out.E = mul(sign_x, mul(params.g2(), g2pow));
    out.e = neg(mul(sign_xl, mul(div(params.g1(), params.g2()), g1sq)));
    out.F = mul(sign_x, mul(params.h2(), g2pow));
    out.f = neg(mul(sign_xl, mul(div(params.h1(), params.h2()), g1sq)));
    out.h_exact = h.has_value();
    out.h = h.value_or(1);

    PrecisionContext small_ctx(64, 16);
    out.abs_e = abs_upper(embed(out.e, small_ctx)).to_double();
    out.abs_f = abs_upper(embed(out.f, small_ctx)).to_double();
    return out;
}

BridgeCheck verify_bridge(const LucasPairParams& params, const NumberSeriesSpec& spec,
                          const PrecisionContext& ctx) {
    spec.validate();
    if (spec.family != NumberFamily::Q && spec.start_index < 1)
        throw DomainError("reciprocal-side bridge needs start_index >= 1 so one constant pair "
                          "covers every term");

    NumberEvalResult num = eval_number_series(params, spec, ctx);

    BigComplex z = div(BigComplex::from_long(1, ctx.working_bits),
                       pow_ui(embed(params.gamma1(), ctx), static_cast<unsigned long>(spec.k)));

    BigComplex fs = BigComplex::zero(ctx.working_bits);
    if (spec.family == NumberFamily::Q) {
        SeriesSpec gspec = SeriesSpec::make_gamma(spec.r, spec.mu, spec.coeffs, spec.start_index);
        fs = eval_series(gspec, z, ctx).value;
    } else {
        TransformConsts tc = transform_consts(params, spec.k, spec.r, spec.ell);
        if (spec.family == NumberFamily::R) {
            SeriesSpec pspec = SeriesSpec::make_phi(spec.r, tc.e, spec.coeffs, spec.start_index);
            fs = div(eval_series(pspec, z, ctx).value, embed(tc.E, ctx));
        } else {
            SeriesSpec lspec = SeriesSpec::make_lambda(spec.r, tc.f, spec.coeffs, spec.start_index);
            fs = div(eval_series(lspec, z, ctx).value, embed(tc.F, ctx));
        }
    }

    BridgeCheck out{num.value, fs, sub(num.value, fs), num.terms_used, num.skipped_terms};
    return out;
}

BigComplex remark6_residual(const LucasPairParams& params, long k, long r, long ell, long ell1,
                            const PrecisionContext& ctx) {
    AlgebraicInput q = div(params.gamma1(), params.gamma2());
    AlgebraicInput omega = params.omega();
    if (!alg_equal(pow(q, ell1), omega, ctx))
        throw NotApplicableError("index-shift dependence needs Omega = (gamma1/gamma2)^ell1");

    NumberSeriesSpec rs;
    rs.family = NumberFamily::R;
    rs.k = k;
    rs.r = r;
    rs.ell = ell;
    NumberSeriesSpec ss = rs;
    ss.family = NumberFamily::S;
    ss.ell = ell + ell1;

    BigComplex r_val = eval_number_series(params, rs, ctx).value;
    BigComplex s_val = eval_number_series(params, ss, ctx).value;

    BigComplex lhs = mul(embed(params.g2(), ctx), r_val);
    BigComplex rhs = mul(embed(mul(params.h2(), pow(params.gamma2(), ell1)), ctx), s_val);
    return sub(lhs, rhs);
}

}  // namespace mahler
