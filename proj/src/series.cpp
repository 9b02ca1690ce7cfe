#include "mahler/series.hpp"

#include <mpfr.h>

#include <utility>

#include "mahler/errors.hpp"

namespace mahler {

std::string kind_name(SeriesKind k) {
    switch (k) {
        case SeriesKind::gamma: return "gamma";
        case SeriesKind::phi: return "phi";
        case SeriesKind::lambda: return "lambda";
    }
    throw ComputeError("unreachable series kind");
}

SeriesKind kind_from_name(const std::string& s) {
    if (s == "gamma") return SeriesKind::gamma;
    if (s == "phi") return SeriesKind::phi;
    if (s == "lambda") return SeriesKind::lambda;
    throw InputError("unknown series kind: " + s);
}

SeriesSpec SeriesSpec::make_gamma(long r, long mu, AlgebraicInput geometric_a, long h0) {
    SeriesSpec s;
    s.kind_ = SeriesKind::gamma;
    s.r_ = r;
    s.mu_ = mu;
    s.geo_a_ = std::move(geometric_a);
    s.h0_ = h0;
    s.validate();
    return s;
}

SeriesSpec SeriesSpec::make_gamma(long r, long mu, PeriodicSeq coeffs, long h0) {
    SeriesSpec s;
    s.kind_ = SeriesKind::gamma;
    s.r_ = r;
    s.mu_ = mu;
    s.periodic_ = std::move(coeffs);
    s.h0_ = h0;
    s.validate();
    return s;
}

SeriesSpec SeriesSpec::make_phi(long r, AlgebraicInput pole, AlgebraicInput geometric_a, long h0) {
    SeriesSpec s;
    s.kind_ = SeriesKind::phi;
    s.r_ = r;
    s.pole_ = std::move(pole);
    s.geo_a_ = std::move(geometric_a);
    s.h0_ = h0;
    s.validate();
    return s;
}

SeriesSpec SeriesSpec::make_phi(long r, AlgebraicInput pole, PeriodicSeq coeffs, long h0) {
    SeriesSpec s;
    s.kind_ = SeriesKind::phi;
    s.r_ = r;
    s.pole_ = std::move(pole);
    s.periodic_ = std::move(coeffs);
    s.h0_ = h0;
    s.validate();
    return s;
}

SeriesSpec SeriesSpec::make_lambda(long r, AlgebraicInput pole, AlgebraicInput geometric_a,
                                   long h0) {
    SeriesSpec s = make_phi(r, std::move(pole), std::move(geometric_a), h0);
    s.kind_ = SeriesKind::lambda;
    return s;
}

SeriesSpec SeriesSpec::make_lambda(long r, AlgebraicInput pole, PeriodicSeq coeffs, long h0) {
    SeriesSpec s = make_phi(r, std::move(pole), std::move(coeffs), h0);
    s.kind_ = SeriesKind::lambda;
    return s;
}

void SeriesSpec::validate() const {
    if (r_ < 2) throw InputError("series radix r must be >= 2");
    if (h0_ < 0) throw InputError("series start index must be >= 0");
    if (kind_ == SeriesKind::gamma) {
        if (mu_ < 1 || mu_ > r_ - 1) throw InputError("gamma exponent mu must satisfy 1 <= mu <= r-1");
    } else {
        if (!pole_) throw InputError("phi/lambda series needs a pole value");
        if (pole_->is_zero()) throw InputError("phi/lambda pole must be nonzero");
    }
    if (geo_a_.has_value() == periodic_.has_value())
        throw InputError("series needs exactly one of geometric or periodic coefficients");
    if (geo_a_ && geo_a_->is_zero()) throw InputError("geometric coefficient base must be nonzero");
    if (periodic_ && periodic_->is_identically_zero())
        throw InputError("periodic coefficients must not be identically zero");
}

const AlgebraicInput& SeriesSpec::pole() const {
    if (!pole_) throw ComputeError("series has no pole (gamma kind)");
    return *pole_;
}

AlgebraicInput SeriesSpec::coefficient(long h) const {
    if (h < 0) throw InputError("coefficient index must be >= 0");
    if (geo_a_) return pow(*geo_a_, h);
    return periodic_->term(h);
}

SeriesSpec SeriesSpec::with_start_index(long h0) const {
    SeriesSpec s = *this;
    s.h0_ = h0;
    s.validate();
    return s;
}

SeriesSpec SeriesSpec::shifted_coeffs() const {
    if (!periodic_) throw ComputeError("shifted_coeffs applies to periodic coefficients only");
    SeriesSpec s = *this;
    s.periodic_ = periodic_->rotated();
    return s;
}

nlohmann::ordered_json SeriesSpec::to_json() const {
    nlohmann::ordered_json j;
    j["kind"] = kind_name(kind_);
    j["r"] = r_;
    if (kind_ == SeriesKind::gamma) j["mu"] = mu_;
    if (pole_) j["pole"] = pole_->to_json();
    if (geo_a_) {
        j["coeffs"] = nlohmann::ordered_json{{"geometric", geo_a_->to_json()}};
    } else {
        j["coeffs"] = nlohmann::ordered_json{{"periodic", periodic_->to_json()}};
    }
    j["start_index"] = h0_;
    return j;
}

SeriesSpec SeriesSpec::from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw InputError("series spec must be a JSON object");
    if (!j.contains("kind") || !j.contains("r")) throw InputError("series spec needs kind and r");
    SeriesSpec s;
    s.kind_ = kind_from_name(j.at("kind").get<std::string>());
    s.r_ = j.at("r").get<long>();
    if (j.contains("mu")) s.mu_ = j.at("mu").get<long>();
    if (j.contains("pole")) s.pole_ = AlgebraicInput::from_json(j.at("pole"));
    if (j.contains("start_index")) s.h0_ = j.at("start_index").get<long>();
    if (!j.contains("coeffs")) throw InputError("series spec needs coeffs");
    const auto& c = j.at("coeffs");
    if (c.is_object() && c.contains("geometric")) {
        s.geo_a_ = AlgebraicInput::from_json(c.at("geometric"));
    } else if (c.is_object() && c.contains("periodic")) {
        s.periodic_ = PeriodicSeq::from_json(c.at("periodic"));
    } else if (c.is_array()) {
        s.periodic_ = PeriodicSeq::from_json(c);
    } else {
        throw InputError("series coeffs must be {geometric: ...} or {periodic: [...]}");
    }
    s.validate();
    return s;
}

std::string SeriesSpec::to_string() const { return to_json().dump(); }

namespace {

// 64-bit scratch precision for the a-priori tail analysis; every quantity is
// rounded in the safe direction.
constexpr mpfr_prec_t kBoundPrec = 64;

struct TailScratch {
    mpfr_t u;         // upper bound on |z|
    mpfr_t cgeo;      // max(|a| upper, 1) for geometric, 1 for periodic
    mpfr_t cmax;      // upper bound on |c_h| uniform in h (periodic) or |a|^h factor base
    mpfr_t dlo;       // lower bound on the safe denominator clearance (pole kinds), else 1
    mpfr_t alo_half;  // |pole|/2 lower bound (pole kinds)
    mpfr_t t1, t2;
    bool has_pole = false;

    TailScratch() {
        mpfr_inits2(kBoundPrec, u, cgeo, cmax, dlo, alo_half, t1, t2, (mpfr_ptr)nullptr);
    }
    ~TailScratch() { mpfr_clears(u, cgeo, cmax, dlo, alo_half, t1, t2, (mpfr_ptr)nullptr); }
    TailScratch(const TailScratch&) = delete;
    TailScratch& operator=(const TailScratch&) = delete;
};

mpz_class pow_long(long base, long e) {
    mpz_class out;
    mpz_ui_pow_ui(out.get_mpz_t(), static_cast<unsigned long>(base),
                  static_cast<unsigned long>(e));
    return out;
}

// Exponent of z in the h-th term: mu * r^h for gamma, r^h otherwise.
mpz_class term_exponent(const SeriesSpec& spec, long h) {
    mpz_class e = pow_long(spec.r(), h);
    if (spec.kind() == SeriesKind::gamma) e *= spec.mu();
    return e;
}

void fill_tail_scratch(TailScratch& ts, const SeriesSpec& spec, const BigComplex& z) {
    PrecisionContext small_ctx(64, 16);
    BigFloat uz = abs_upper(z);
    mpfr_set(ts.u, uz.raw(), MPFR_RNDU);
    if (mpfr_cmp_ui(ts.u, 1) >= 0) throw DomainError("series evaluation needs |z| < 1");

    if (spec.is_geometric()) {
        BigFloat au = abs_upper(embed(spec.geometric_base(), small_ctx));
        mpfr_set(ts.cmax, au.raw(), MPFR_RNDU);
        mpfr_set(ts.cgeo, au.raw(), MPFR_RNDU);
        if (mpfr_cmp_ui(ts.cgeo, 1) < 0) mpfr_set_ui(ts.cgeo, 1, MPFR_RNDU);
    } else {
        mpfr_set_ui(ts.cmax, 0, MPFR_RNDN);
        const auto& seq = spec.periodic_coeffs();
        for (long i = 0; i < static_cast<long>(seq.period()); ++i) {
            BigFloat bu = abs_upper(embed(seq.term(i), small_ctx));
            if (mpfr_cmp(bu.raw(), ts.cmax) > 0) mpfr_set(ts.cmax, bu.raw(), MPFR_RNDU);
        }
        mpfr_set_ui(ts.cgeo, 1, MPFR_RNDN);
    }

    ts.has_pole = spec.kind() != SeriesKind::gamma;
    if (ts.has_pole) {
        BigFloat alo = abs_lower(embed(spec.pole(), small_ctx));
        mpfr_div_2si(ts.alo_half, alo.raw(), 1, MPFR_RNDD);
        if (mpfr_sgn(ts.alo_half) <= 0)
            throw ComputeError("pole modulus lower bound degenerated to zero");
        mpfr_set(ts.dlo, ts.alo_half, MPFR_RNDD);
    } else {
        mpfr_set_ui(ts.alo_half, 1, MPFR_RNDN);
        mpfr_set_ui(ts.dlo, 1, MPFR_RNDN);
    }
}

// Upper bound on |c_h| when the coefficient stream is geometric: |a|^h.
void coeff_upper_at(const TailScratch& ts, const SeriesSpec& spec, long h, mpfr_t out) {
    if (spec.is_geometric()) {
        mpfr_pow_ui(out, ts.cmax, static_cast<unsigned long>(h), MPFR_RNDU);
    } else {
        mpfr_set(out, ts.cmax, MPFR_RNDU);
    }
}

}  // namespace

long truncation_depth(const SeriesSpec& spec, const BigComplex& z, long target_bits) {
    if (target_bits < 1) throw InputError("truncation target must be >= 1 bit");
    if (z.is_exact_zero()) return 0;

    TailScratch ts;
    fill_tail_scratch(ts, spec, z);
    if (mpfr_sgn(ts.u) == 0) return 0;

    mpfr_t upow, ratio, term, thresh, cup;
    mpfr_inits2(kBoundPrec, upow, ratio, term, thresh, cup, (mpfr_ptr)nullptr);
    mpfr_set_ui_2exp(thresh, 1, -target_bits, MPFR_RNDN);

    long result = -1;
    const long h0 = spec.start_index();
    for (long H = h0 - 1; H <= h0 + 400; ++H) {
        const long hn = H + 1;  // first omitted index
        mpz_class e_next = term_exponent(spec, hn);

        // u^(E(H+1)), rounded up.
        mpfr_pow_z(upow, ts.u, e_next.get_mpz_t(), MPFR_RNDU);

        // (i) pole clearance for every omitted term: u^(2 r^(H+1)) <= |pole|/2.
        if (ts.has_pole) {
            mpz_class e2 = pow_long(spec.r(), hn) * 2;
            mpfr_pow_z(ts.t1, ts.u, e2.get_mpz_t(), MPFR_RNDU);
            if (mpfr_cmp(ts.t1, ts.alo_half) > 0) continue;
        }

        // (ii) halving ratio for successive term bounds: C_geo * u^((r-1) E(H+1)) <= 1/2.
        mpz_class egap = e_next * (spec.r() - 1);
        mpfr_pow_z(ratio, ts.u, egap.get_mpz_t(), MPFR_RNDU);
        mpfr_mul(ratio, ratio, ts.cgeo, MPFR_RNDU);
        mpfr_set_ui_2exp(ts.t2, 1, -1, MPFR_RNDN);
        if (mpfr_cmp(ratio, ts.t2) > 0) continue;

        // (iii) geometric tail: 2 * t(H+1) <= 2^-target.
        coeff_upper_at(ts, spec, hn, cup);
        mpfr_mul(term, cup, upow, MPFR_RNDU);
        mpfr_div(term, term, ts.dlo, MPFR_RNDU);
        mpfr_mul_2si(term, term, 1, MPFR_RNDU);
        if (mpfr_cmp(term, thresh) > 0) continue;

        result = H;
        break;
    }
    mpfr_clears(upow, ratio, term, thresh, cup, (mpfr_ptr)nullptr);
    if (result < -0x7fffffff) throw ComputeError("unreachable");
    if (result == -1 && spec.start_index() == 0) {
        // Loop exhausted without success; cannot happen for |z| < 1.
        throw ComputeError("truncation analysis failed to converge");
    }
    if (result < spec.start_index() - 1) throw ComputeError("truncation analysis failed to converge");
    return result;
}

EvalResult eval_series(const SeriesSpec& spec, const BigComplex& z, const PrecisionContext& ctx) {
    const long P = static_cast<long>(ctx.working_bits);
    {
        BigFloat uz = abs_upper(z);
        if (mpfr_cmp_ui(uz.raw(), 1) >= 0) throw DomainError("series evaluation needs |z| < 1");
    }
    if (z.is_exact_zero()) {
        return EvalResult{BigComplex::zero(ctx.working_bits), 0, ErrBound::exact()};
    }

    const long target = P;
    const long h_max = truncation_depth(spec, z, target);
    const long h0 = spec.start_index();

    BigComplex acc = BigComplex::zero(ctx.working_bits);

    std::optional<BigComplex> pole_hat;
    BigFloat pole_thresh(kBoundPrec);
    if (spec.kind() != SeriesKind::gamma) {
        pole_hat = embed(spec.pole(), ctx);
        mpfr_set_ui_2exp(pole_thresh.raw(), 1, -(P / 4), MPFR_RNDN);
    }

    // Coefficient stream.
    std::vector<BigComplex> periodic_hat;
    std::optional<BigComplex> a_hat;
    std::optional<BigComplex> a_pow;
    long coeff_period = 1;
    if (spec.is_geometric()) {
        a_hat = embed(spec.geometric_base(), ctx);
        a_pow = pow_ui(*a_hat, static_cast<unsigned long>(h0));
    } else {
        const auto& seq = spec.periodic_coeffs();
        coeff_period = static_cast<long>(seq.period());
        periodic_hat.reserve(seq.period());
        for (long i = 0; i < coeff_period; ++i) periodic_hat.push_back(embed(seq.term(i), ctx));
    }

    long terms = 0;
    if (h_max >= h0) {
        BigComplex w = pow_mpz(z, pow_long(spec.r(), h0));
        for (long h = h0; h <= h_max; ++h) {
            if (h > h0) w = pow_ui(w, static_cast<unsigned long>(spec.r()));
            const BigComplex& c_h = spec.is_geometric()
                                        ? *a_pow
                                        : periodic_hat[static_cast<size_t>(h % coeff_period)];
            BigComplex term = BigComplex::zero(ctx.working_bits);
            bool term_zero = c_h.is_exact_zero();
            if (spec.kind() == SeriesKind::gamma) {
                if (!term_zero) term = mul(c_h, pow_ui(w, static_cast<unsigned long>(spec.mu())));
            } else {
                BigComplex den = sub(pow_ui(w, 2), *pole_hat);
                BigFloat dlo = abs_lower(den);
                if (mpfr_cmp(dlo.raw(), pole_thresh.raw()) <= 0) throw PoleCollisionError(h);
                if (!term_zero) term = div(mul(c_h, w), den);
            }
            acc = add(acc, term);
            ++terms;
            if (spec.is_geometric()) a_pow = mul(*a_pow, *a_hat);
        }
    }

    ErrBound tail = ErrBound::pow2(-target);
    acc.widen_err(tail);
    return EvalResult{acc, terms, tail};
}

BigComplex feq_residual(const SeriesSpec& spec, const BigComplex& z, const PrecisionContext& ctx) {
    if (spec.start_index() != 0)
        throw DomainError("functional equation residual requires start_index 0");

    BigComplex zr = pow_ui(z, static_cast<unsigned long>(spec.r()));
    BigComplex f_z = eval_series(spec, z, ctx).value;

    BigComplex lhs = BigComplex::zero(ctx.working_bits);
    if (spec.is_geometric()) {
        lhs = mul(embed(spec.geometric_base(), ctx), eval_series(spec, zr, ctx).value);
    } else {
        lhs = eval_series(spec.shifted_coeffs(), zr, ctx).value;
    }

    BigComplex q = BigComplex::zero(ctx.working_bits);
    if (spec.kind() == SeriesKind::gamma) {
        q = pow_ui(z, static_cast<unsigned long>(spec.mu()));
    } else {
        BigComplex den = sub(pow_ui(z, 2), embed(spec.pole(), ctx));
        q = div(z, den);
    }

    BigComplex c0 = embed(spec.coefficient(0), ctx);
    return add(sub(lhs, f_z), mul(c0, q));
}

namespace {

AlgebraicInput zeta6(long k) {
    auto v = exact_root_of_unity(6, k);
    if (!v) throw ComputeError("sixth root of unity must be exact");
    return *v;
}

struct IdentityConfig {
    long a;                 // geometric base, +1 or -1
    AlgebraicInput phi_pole;
    AlgebraicInput lambda_pole;
    AlgebraicInput u0;      // coefficient of the phi-slot series
    AlgebraicInput v0;      // coefficient of the lambda-slot series
    int rhs;                // 1: z/(z-1); 3: (2z^2+z)/(z^2+z+1); 4: z/(z^2+z+1)
    bool phi_only = false;
    bool lambda_only = false;
};

IdentityConfig identity_config(int case_id) {
    const AlgebraicInput one(mpq_class(1));
    const AlgebraicInput zero(mpq_class(0));
    const AlgebraicInput z2 = zeta6(2), z4 = zeta6(4);
    // 1/(1+zeta) with zeta = e^(i pi/3); exact in the discriminant -3 field.
    const AlgebraicInput inv_1pz(QuadExt(mpq_class(1, 2), mpq_class(-1, 6), -3));
    const AlgebraicInput zeta = zeta6(1);
    switch (case_id) {
        case 1:
            return IdentityConfig{1, one, one, one, zero, 1, true, false};
        case 2:
            return IdentityConfig{1, one, one, zero, one, 1, false, true};
        case 3:
            return IdentityConfig{1, z2, z4, z4, z2, 3};
        case 4:
            return IdentityConfig{-1, z2, z4, inv_1pz, mul(zeta, inv_1pz), 4};
        case 5:
            return IdentityConfig{1, z4, z2, z2, z4, 3};
        case 6:
            return IdentityConfig{-1, z4, z2, mul(zeta, inv_1pz), inv_1pz, 4};
        default:
            throw UnknownCaseError(case_id);
    }
}

}  // namespace

BigComplex remark2_rational_side(int case_id, const BigComplex& z, const PrecisionContext& ctx) {
    IdentityConfig cfg = identity_config(case_id);
    BigComplex one = BigComplex::from_long(1, ctx.working_bits);
    if (cfg.rhs == 1) {
        return div(z, sub(z, one));
    }
    BigComplex zsq = mul(z, z);
    BigComplex den = add(add(zsq, z), one);
    if (cfg.rhs == 3) {
        BigComplex num = add(add(zsq, zsq), z);
        return div(num, den);
    }
    return div(z, den);
}

BigComplex remark2_residual(int case_id, const BigComplex& z, const PrecisionContext& ctx) {
    IdentityConfig cfg = identity_config(case_id);
    const AlgebraicInput a(mpq_class(cfg.a));

    BigComplex lhs = BigComplex::zero(ctx.working_bits);
    if (!cfg.lambda_only) {
        SeriesSpec phi = SeriesSpec::make_phi(2, cfg.phi_pole, a, 0);
        lhs = add(lhs, mul(embed(cfg.u0, ctx), eval_series(phi, z, ctx).value));
    }
    if (!cfg.phi_only) {
        SeriesSpec lam = SeriesSpec::make_lambda(2, cfg.lambda_pole, a, 0);
        lhs = add(lhs, mul(embed(cfg.v0, ctx), eval_series(lam, z, ctx).value));
    }
    return sub(lhs, remark2_rational_side(case_id, z, ctx));
}

}  // namespace mahler
