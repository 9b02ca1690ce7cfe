#include "mahler/classify.hpp"

#include <cmath>
#include <set>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

double abs_to_double(const AlgebraicInput& x) {
    PrecisionContext sc(64, 16);
    return abs_upper(embed(x, sc)).to_double();
}

double abs_to_double(const BigComplex& x) { return abs_upper(x).to_double(); }

bool fields_compatible_equal(const AlgebraicInput& x, const AlgebraicInput& y,
                             const PrecisionContext& ctx) {
    try {
        return alg_equal(x, y, ctx);
    } catch (const FieldMismatchError&) {
        return false;
    }
}

// |a - b| certifiably positive at the operands' precision.
bool certainly_distinct(const BigComplex& a, const BigComplex& b) {
    return sub(a, b).certainly_nonzero();
}

}  // namespace

bool unit_modulus_exact(const AlgebraicInput& x) {
    if (x.is_rational()) return x.rational() == 1 || x.rational() == -1;
    const QuadExt& q = x.quad();
    if (q.d() > 0) return false;  // a real quadratic irrational is never +-1
    return q.norm() == 1;
}

AlgebraicInput modulus_sq(const AlgebraicInput& x) {
    if (x.is_rational()) return AlgebraicInput(mpq_class(x.rational() * x.rational()));
    const QuadExt& q = x.quad();
    if (q.d() < 0) return AlgebraicInput(q.norm());
    return mul(x, x);  // real embedding: |x|^2 = x^2
}

MembershipResult power_membership(const AlgebraicInput& x, const AlgebraicInput& q,
                                  const PrecisionContext& ctx) {
    if (x.is_zero()) throw DomainError("membership target must be nonzero");
    if (q.is_zero()) throw DomainError("membership base must be nonzero");
    if (unit_modulus_exact(q))
        throw AmbiguousError("|q| = 1: the modulus ladder cannot isolate an exponent");

    double lx = std::log2(abs_to_double(x));
    double lq = std::log2(abs_to_double(q));
    if (lq == 0.0 || !std::isfinite(lx) || !std::isfinite(lq))
        throw AmbiguousError("modulus ladder could not be evaluated");
    double cand = lx / lq;
    if (!std::isfinite(cand) || std::fabs(cand) > 1e6)
        throw DomainError("membership exponent candidate out of range");

    long n0 = std::lround(cand);
    for (long n : {n0 - 1, n0, n0 + 1}) {
        if (fields_compatible_equal(pow(q, n), x, ctx)) return MembershipResult{true, n};
    }
    return MembershipResult{false, 0};
}

MembershipResult power_membership_numeric(const BigComplex& x, const BigComplex& q,
                                          const PrecisionContext& ctx) {
    if (!x.certainly_nonzero()) throw DomainError("membership target must be certifiably nonzero");
    if (!q.certainly_nonzero()) throw DomainError("membership base must be certifiably nonzero");
    {
        BigFloat lo = abs_lower(q), up = abs_upper(q);
        if (mpfr_cmp_ui(lo.raw(), 1) <= 0 && mpfr_cmp_ui(up.raw(), 1) >= 0)
            throw AmbiguousError("|q| = 1 within bounds: cannot isolate an exponent");
    }

    double lx = std::log2(abs_to_double(x));
    double lq = std::log2(abs_to_double(q));
    double cand = lx / lq;
    if (!std::isfinite(cand) || std::fabs(cand) > 1e6)
        throw DomainError("membership exponent candidate out of range");

    const long tol = -(static_cast<long>(ctx.working_bits) / 2);
    long n0 = std::lround(cand);
    for (long n : {n0 - 1, n0, n0 + 1}) {
        BigComplex qn = pow_mpz(q, mpz_class(n));
        if (abs_distance_bound(qn, x).leq_pow2(tol)) return MembershipResult{true, n};
    }
    return MembershipResult{false, 0};
}

std::string HypothesisDiagnostics::summary() const {
    if (violations.empty() && modulus_collisions.empty()) return "errors: none";
    std::string s = "errors: ";
    bool first = true;
    for (const auto& v : violations) {
        if (!first) s += "; ";
        s += v;
        first = false;
    }
    for (const auto& v : modulus_collisions) {
        if (!first) s += "; ";
        s += v;
        first = false;
    }
    return s;
}

nlohmann::ordered_json HypothesisDiagnostics::to_json() const {
    nlohmann::ordered_json j;
    j["passed"] = passed();
    j["violations"] = violations;
    j["modulus_collisions"] = modulus_collisions;
    j["notes"] = notes;
    j["summary"] = summary();
    return j;
}

HypothesisDiagnostics check_lemma2_hypotheses(const std::vector<AlgebraicInput>& alphas,
                                              const std::vector<AlgebraicInput>& betas,
                                              HypothesisMode mode, const PrecisionContext& ctx) {
    if (alphas.empty()) throw InputError("need at least one phi-side pole");
    if (alphas.size() != betas.size())
        throw InputError("pole lists must have matching lengths");

    HypothesisDiagnostics diag;
    auto idx = [](const char* base, size_t i) { return std::string(base) + std::to_string(i); };

    for (size_t i = 0; i < alphas.size(); ++i) {
        if (alphas[i].is_zero()) diag.violations.push_back(idx("alpha_", i) + " is zero");
        if (betas[i].is_zero()) diag.violations.push_back(idx("beta_", i) + " is zero");
    }
    if (!diag.violations.empty()) return diag;

    if (mode == HypothesisMode::lemma2) {
        if (!unit_modulus_exact(alphas[0]))
            diag.violations.push_back("|alpha_0| != 1");
        for (size_t i = 0; i < alphas.size(); ++i) {
            try {
                AlgebraicInput delta = div(betas[i], alphas[i]);
                if (!unit_modulus_exact(delta))
                    diag.violations.push_back(idx("|beta_", i) + "/alpha_" + std::to_string(i) +
                                              "| != 1");
                if (delta == AlgebraicInput(1L))
                    diag.violations.push_back(idx("beta_", i) + " equals alpha_" +
                                              std::to_string(i));
            } catch (const FieldMismatchError&) {
                BigComplex ah = embed(alphas[i], ctx), bh = embed(betas[i], ctx);
                BigComplex delta = div(bh, ah);
                BigFloat lo = abs_lower(delta), up = abs_upper(delta);
                if (mpfr_cmp_ui(lo.raw(), 1) > 0 || mpfr_cmp_ui(up.raw(), 1) < 0) {
                    diag.violations.push_back(idx("|beta_", i) + "/alpha_" + std::to_string(i) +
                                              "| != 1");
                } else {
                    diag.notes.push_back(idx("delta_", i) +
                                         " modulus confirmed only numerically");
                }
                if (!certainly_distinct(bh, ah))
                    diag.violations.push_back(idx("beta_", i) + " not separable from alpha_" +
                                              std::to_string(i));
            }
        }
        for (size_t i = 0; i < alphas.size(); ++i)
            for (size_t j = i + 1; j < alphas.size(); ++j)
                if (fields_compatible_equal(modulus_sq(alphas[i]), modulus_sq(alphas[j]), ctx))
                    diag.modulus_collisions.push_back("|alpha_" + std::to_string(i) +
                                                      "| = |alpha_" + std::to_string(j) + "|");
    } else {
        auto collide = [&](const char* an, size_t i, const char* bn, size_t j,
                           const AlgebraicInput& x, const AlgebraicInput& y) {
            if (fields_compatible_equal(modulus_sq(x), modulus_sq(y), ctx))
                diag.modulus_collisions.push_back(std::string("|") + an + std::to_string(i) +
                                                  "| = |" + bn + std::to_string(j) + "|");
        };
        for (size_t i = 0; i < alphas.size(); ++i)
            for (size_t j = i + 1; j < alphas.size(); ++j) {
                collide("alpha_", i, "alpha_", j, alphas[i], alphas[j]);
                collide("beta_", i, "beta_", j, betas[i], betas[j]);
            }
        for (size_t i = 0; i < alphas.size(); ++i)
            for (size_t j = 0; j < betas.size(); ++j)
                collide("alpha_", i, "beta_", j, alphas[i], betas[j]);
    }
    return diag;
}

nlohmann::ordered_json CaseWitness::to_json() const {
    nlohmann::ordered_json j;
    j["case"] = case_id;
    nlohmann::ordered_json w;
    for (const auto& [k, v] : witnesses) w[k] = v;
    j["witnesses"] = w;
    return j;
}

nlohmann::ordered_json CaseReport::to_json() const {
    nlohmann::ordered_json j;
    j["theorem"] = theorem;
    j["generic"] = generic;
    j["verdict"] = verdict;
    nlohmann::ordered_json cs = nlohmann::ordered_json::array();
    for (const auto& c : cases) cs.push_back(c.to_json());
    j["cases"] = cs;
    j["removals"] = removals;
    j["notes"] = notes;
    return j;
}

namespace {

void finalize(CaseReport& rep) {
    rep.generic = rep.cases.empty();
    if (rep.verdict == "generic" && !rep.generic) rep.verdict = "exceptional";
}

std::string quoted(const AlgebraicInput& x) { return x.to_string(); }

}  // namespace

CaseReport classify_lemma3(long r, const AlgebraicInput& a, const AlgebraicInput& alpha0,
                           const AlgebraicInput& beta0, const std::vector<AlgebraicInput>& p_coeffs,
                           const AlgebraicInput& u0, const AlgebraicInput& v0,
                           const PrecisionContext& ctx) {
    if (r < 2) throw InputError("radix r must be >= 2");
    if (static_cast<long>(p_coeffs.size()) != r - 1)
        throw InputError("power-part coefficient list must have r-1 entries");
    if (a.is_zero()) throw InvalidHypothesesError("a must be nonzero");
    if (alpha0.is_zero() || beta0.is_zero())
        throw InvalidHypothesesError("poles alpha_0, beta_0 must be nonzero");
    if (!unit_modulus_exact(alpha0)) throw InvalidHypothesesError("|alpha_0| must equal 1");
    {
        bool delta_unit = false, delta_one = true;
        try {
            AlgebraicInput delta0 = div(beta0, alpha0);
            delta_unit = unit_modulus_exact(delta0);
            delta_one = (delta0 == AlgebraicInput(1L));
        } catch (const FieldMismatchError&) {
            BigComplex ah = embed(alpha0, ctx), bh = embed(beta0, ctx);
            BigComplex delta = div(bh, ah);
            BigFloat lo = abs_lower(delta), up = abs_upper(delta);
            delta_unit = !(mpfr_cmp_ui(lo.raw(), 1) > 0 || mpfr_cmp_ui(up.raw(), 1) < 0);
            delta_one = !certainly_distinct(bh, ah);
        }
        if (!delta_unit) throw InvalidHypothesesError("|beta_0/alpha_0| must equal 1");
        if (delta_one) throw InvalidHypothesesError("beta_0 must differ from alpha_0");
    }
    bool all_zero = u0.is_zero() && v0.is_zero();
    for (const auto& p : p_coeffs) all_zero = all_zero && p.is_zero();
    if (all_zero)
        throw InvalidHypothesesError("the coefficients (p_mu, u_0, v_0) must not all vanish");

    CaseReport rep;
    rep.theorem = "L3";

    if (r >= 4) {
        rep.verdict = "generic";
        rep.notes.push_back("radix >= 4: the value is irrational for every admissible parameter "
                            "choice");
        finalize(rep);
        return rep;
    }

    AlgebraicInput a_sq = mul(a, a);
    if (r == 3) {
        if (a_sq == AlgebraicInput(9L)) {
            rep.verdict = "undetermined";
            rep.notes.push_back("radix 3 with a^2 = 9 lies outside the decided parameter range");
        } else {
            rep.verdict = "generic";
            rep.notes.push_back("radix 3 with a^2 != 9: the value is irrational");
        }
        finalize(rep);
        return rep;
    }

    // r == 2.
    if (a_sq == AlgebraicInput(2L) || a_sq == AlgebraicInput(4L)) {
        rep.verdict = "undetermined";
        rep.notes.push_back("radix 2 with a^2 in {2, 4} lies outside the decided parameter range");
        finalize(rep);
        return rep;
    }
    if (!p_coeffs[0].is_zero()) {
        rep.verdict = "generic";
        rep.notes.push_back("nonzero power-part coefficient p_1 forces irrationality at radix 2");
        finalize(rep);
        return rep;
    }

    const AlgebraicInput one(1L), minus_one(-1L);
    const AlgebraicInput zeta = *exact_root_of_unity(6, 1);
    const AlgebraicInput z2 = *exact_root_of_unity(6, 2);
    const AlgebraicInput z4 = *exact_root_of_unity(6, 4);

    auto scaled_eq = [&](const AlgebraicInput& lhs, const AlgebraicInput& base, int sign) {
        try {
            AlgebraicInput t = mul(base, zeta);
            if (sign < 0) t = neg(t);
            return alg_equal(lhs, t, ctx);
        } catch (const FieldMismatchError&) {
            return false;
        }
    };
    auto push_case = [&](int id, const std::string& relation) {
        CaseWitness w;
        w.case_id = id;
        w.witnesses.emplace_back("a", quoted(a));
        w.witnesses.emplace_back("alpha0", quoted(alpha0));
        w.witnesses.emplace_back("beta0", quoted(beta0));
        w.witnesses.emplace_back("u0", quoted(u0));
        w.witnesses.emplace_back("v0", quoted(v0));
        w.witnesses.emplace_back("relation", relation);
        rep.cases.push_back(std::move(w));
    };

    if (a == one && alpha0 == one && v0.is_zero())
        push_case(1, "a = 1, alpha_0 = 1, v_0 = 0");
    if (a == one && beta0 == one && u0.is_zero())
        push_case(2, "a = 1, beta_0 = 1, u_0 = 0");
    if (a == one && alpha0 == z2 && beta0 == z4 && scaled_eq(v0, u0, -1))
        push_case(3, "a = 1, alpha_0 = zeta^2, beta_0 = zeta^4, v_0 = -u_0*zeta");
    if (a == minus_one && alpha0 == z2 && beta0 == z4 && scaled_eq(v0, u0, +1))
        push_case(4, "a = -1, alpha_0 = zeta^2, beta_0 = zeta^4, v_0 = u_0*zeta");
    if (a == one && alpha0 == z4 && beta0 == z2 && scaled_eq(u0, v0, -1))
        push_case(5, "a = 1, alpha_0 = zeta^4, beta_0 = zeta^2, u_0 = -v_0*zeta");
    if (a == minus_one && alpha0 == z4 && beta0 == z2 && scaled_eq(u0, v0, +1))
        push_case(6, "a = -1, alpha_0 = zeta^4, beta_0 = zeta^2, u_0 = v_0*zeta");

    if (rep.cases.empty()) {
        rep.verdict = "generic";
        rep.notes.push_back("radix 2, p_1 = 0, but no rational configuration matches: the value "
                            "is irrational");
    }
    finalize(rep);
    return rep;
}

namespace {

std::optional<long> magnitude_candidate(const AlgebraicInput& num, const AlgebraicInput& den,
                                        const AlgebraicInput& gamma1) {
    double ln = std::log2(abs_to_double(num)) - std::log2(abs_to_double(den));
    double lg = 2.0 * std::log2(abs_to_double(gamma1));
    double cand = ln / lg;
    if (!std::isfinite(cand) || std::fabs(cand) > 1e6) return std::nullopt;
    return std::lround(cand);
}

}  // namespace

CaseReport classify_thm2(const LucasPairParams& params, const PeriodicSeq& b,
                         const PeriodicSeq& c, long search_bound, const PrecisionContext& ctx) {
    if (search_bound < 0 || search_bound > 10000)
        throw InputError("search bound must lie in [0, 10000]");
    if (b.is_identically_zero() || c.is_identically_zero())
        throw InputError("coefficient streams must not be identically zero");

    CaseReport rep;
    rep.theorem = params.preset() == "fibonacci-lucas" ? "T1" : "T2";
    rep.notes.push_back("vanishing-term criterion used here: " + params.r_display() +
                        "_(l0) = 0, equivalently shifted pole constant e_(l0,2) = 1");

    // Degenerate pair: Omega already a power of gamma1/gamma2 means the two
    // sequences are index shifts of each other up to constants.
    MembershipResult omega_mem{false, 0};
    bool exact_q = true;
    AlgebraicInput q_exact(1L), omega_exact(1L);
    try {
        q_exact = div(params.gamma1(), params.gamma2());
        omega_exact = params.omega();
        omega_mem = power_membership(omega_exact, q_exact, ctx);
    } catch (const FieldMismatchError&) {
        exact_q = false;
        BigComplex qh = div(embed(params.gamma1(), ctx), embed(params.gamma2(), ctx));
        BigComplex oh = div(mul(embed(params.g1(), ctx), embed(params.h2(), ctx)),
                            mul(embed(params.g2(), ctx), embed(params.h1(), ctx)));
        omega_mem = power_membership_numeric(oh, qh, ctx);
    }
    if (omega_mem.member) {
        rep.verdict = "not-covered";
        rep.notes.push_back(
            "Omega = (gamma1/gamma2)^" + std::to_string(omega_mem.exponent) +
            ": the sequences satisfy g2 * " + params.r_display() + "'_(l,r) = h2 * gamma2^" +
            std::to_string(omega_mem.exponent) + " * " + params.s_display() + "'_(l+" +
            std::to_string(omega_mem.exponent) + ",r); the pair collapses to one family");
        finalize(rep);
        rep.verdict = "not-covered";
        return rep;
    }

    // Candidate offsets: the scan window plus the magnitude-isolated offset.
    auto candidate_set = [&](const AlgebraicInput& sub, const AlgebraicInput& lead) {
        std::set<long> cands;
        for (long l = -search_bound; l <= search_bound; ++l) cands.insert(l);
        if (auto m = magnitude_candidate(sub, lead, params.gamma1())) {
            cands.insert(*m - 1);
            cands.insert(*m);
            cands.insert(*m + 1);
        }
        return cands;
    };

    if (params.exact()) {
        for (long l0 : candidate_set(params.g2(), params.g1())) {
            if (!params.rn(mpz_class(l0)).is_zero()) continue;
            if (b.is_constant()) {
                CaseWitness w;
                w.case_id = 1;
                w.witnesses.emplace_back("l0", std::to_string(l0));
                w.witnesses.emplace_back("zero_term", params.r_display() + "_(" +
                                                          std::to_string(l0) + ") = 0");
                rep.cases.push_back(std::move(w));
                rep.removals.push_back(params.r_display() + "_(" + std::to_string(l0) + ",2)");
            } else {
                rep.notes.push_back(params.r_display() + "_(" + std::to_string(l0) +
                                    ") = 0 but the b-coefficients are not constant; no removal "
                                    "follows");
            }
            break;
        }
        for (long l0 : candidate_set(params.h2(), params.h1())) {
            if (!params.sn(mpz_class(l0)).is_zero()) continue;
            if (c.is_constant()) {
                CaseWitness w;
                w.case_id = 2;
                w.witnesses.emplace_back("l0", std::to_string(l0));
                w.witnesses.emplace_back("zero_term", params.s_display() + "_(" +
                                                          std::to_string(l0) + ") = 0");
                rep.cases.push_back(std::move(w));
                rep.removals.push_back(params.s_display() + "_(" + std::to_string(l0) + ",2)");
            } else {
                rep.notes.push_back(params.s_display() + "_(" + std::to_string(l0) +
                                    ") = 0 but the c-coefficients are not constant; no removal "
                                    "follows");
            }
            break;
        }
    } else {
        rep.notes.push_back("parameters span multiple fields: vanishing terms checked only "
                            "numerically, no removal is certified from them");
    }

    // Resonant cube-phase cases: (gamma1/gamma2)^l0 = -(g2/g1) theta with
    // Omega*theta also a power of gamma1/gamma2.
    struct Phase {
        int case_id;
        long k;  // exact_root_of_unity(3, k)
        const char* label;
    };
    for (const Phase& ph : {Phase{3, 1, "e^(2*pi*i/3)"}, Phase{4, 2, "e^(-2*pi*i/3)"}}) {
        MembershipResult m1{false, 0}, m2{false, 0};
        try {
            AlgebraicInput theta = *exact_root_of_unity(3, ph.k);
            if (exact_q) {
                AlgebraicInput target = neg(mul(div(params.g2(), params.g1()), theta));
                m1 = power_membership(target, q_exact, ctx);
                if (m1.member) m2 = power_membership(mul(omega_exact, theta), q_exact, ctx);
            } else {
                throw FieldMismatchError();
            }
        } catch (const FieldMismatchError&) {
            BigComplex qh = div(embed(params.gamma1(), ctx), embed(params.gamma2(), ctx));
            BigComplex th = root_of_unity_numeric(3, ph.k, ctx);
            BigComplex target =
                neg(mul(div(embed(params.g2(), ctx), embed(params.g1(), ctx)), th));
            m1 = power_membership_numeric(target, qh, ctx);
            if (m1.member) {
                BigComplex oh = div(mul(embed(params.g1(), ctx), embed(params.h2(), ctx)),
                                    mul(embed(params.g2(), ctx), embed(params.h1(), ctx)));
                m2 = power_membership_numeric(mul(oh, th), qh, ctx);
            }
        }
        if (m1.member && m2.member) {
            CaseWitness w;
            w.case_id = ph.case_id;
            w.witnesses.emplace_back("l0", std::to_string(m1.exponent));
            w.witnesses.emplace_back("theta", ph.label);
            w.witnesses.emplace_back("shift_exponent", std::to_string(m2.exponent));
            rep.cases.push_back(std::move(w));
            rep.removals.push_back(params.r_display() + "_(" + std::to_string(m1.exponent) +
                                   ",2^j) for all j >= 1");
        }
    }

    finalize(rep);
    return rep;
}

CaseReport classify_thm3(const std::vector<AlgebraicInput>& alphas,
                         const std::vector<AlgebraicInput>& betas, const PeriodicSeq& b,
                         const PeriodicSeq& c, HypothesisMode mode, const PrecisionContext& ctx) {
    if (b.is_identically_zero() || c.is_identically_zero())
        throw InputError("coefficient streams must not be identically zero");

    HypothesisDiagnostics diag = check_lemma2_hypotheses(alphas, betas, mode, ctx);
    if (!diag.violations.empty()) throw InvalidHypothesesError(diag.summary());

    CaseReport rep;
    rep.theorem = "T3";
    for (const auto& n : diag.modulus_collisions)
        rep.notes.push_back("modulus collision: " + n);
    for (const auto& n : diag.notes) rep.notes.push_back(n);

    const AlgebraicInput one(1L);
    const AlgebraicInput& alpha0 = alphas[0];
    const AlgebraicInput& beta0 = betas[0];

    if (b.is_constant() && alpha0 == one) {
        CaseWitness w;
        w.case_id = 1;
        w.witnesses.emplace_back("alpha0", "1");
        w.witnesses.emplace_back("b", "constant");
        rep.cases.push_back(std::move(w));
        rep.removals.push_back("Phi_(0,2)");
    }
    if (c.is_constant() && beta0 == one) {
        CaseWitness w;
        w.case_id = 2;
        w.witnesses.emplace_back("beta0", "1");
        w.witnesses.emplace_back("c", "constant");
        rep.cases.push_back(std::move(w));
        rep.removals.push_back("Lambda_(0,2)");
    }

    const AlgebraicInput theta = *exact_root_of_unity(3, 1);
    const AlgebraicInput theta_bar = *exact_root_of_unity(3, 2);
    bool res3 = (alpha0 == theta) && (beta0 == theta_bar);
    bool res4 = (alpha0 == theta_bar) && (beta0 == theta);
    if (mode == HypothesisMode::remark1) {
        if (res3 || res4)
            rep.notes.push_back("cube-phase pole pattern present but structurally excluded in "
                                "the distinct-moduli regime");
    } else {
        if (res3) {
            CaseWitness w;
            w.case_id = 3;
            w.witnesses.emplace_back("alpha0", "e^(2*pi*i/3)");
            w.witnesses.emplace_back("beta0", "alpha0^2");
            rep.cases.push_back(std::move(w));
            rep.removals.push_back("Phi_(0,2^j) for all j >= 1");
        }
        if (res4) {
            CaseWitness w;
            w.case_id = 4;
            w.witnesses.emplace_back("alpha0", "e^(-2*pi*i/3)");
            w.witnesses.emplace_back("beta0", "alpha0^2");
            rep.cases.push_back(std::move(w));
            rep.removals.push_back("Lambda_(0,2^j) for all j >= 1");
        }
    }

    finalize(rep);
    return rep;
}

}  // namespace mahler
