#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mahler/algebraic.hpp"
#include "mahler/bigcomplex.hpp"
#include "mahler/lucaspair.hpp"
#include "mahler/periodic.hpp"

namespace mahler {

struct MembershipResult {
    bool member = false;
    long exponent = 0;
};

// Decides x = q^n for integer n. |q| != 1 makes the exponent candidate unique
// through the modulus ladder; the candidate (and its neighbours) are then
// confirmed exactly, or to 2^-(P/2) when the operands live in different
// fields. |q| = 1 raises AmbiguousError; x = 0 or q = 0 raises DomainError.
MembershipResult power_membership(const AlgebraicInput& x, const AlgebraicInput& q,
                                  const PrecisionContext& ctx);
// Same test for numeric operands; both must be certifiably nonzero and |q|
// certifiably separated from 1.
MembershipResult power_membership_numeric(const BigComplex& x, const BigComplex& q,
                                          const PrecisionContext& ctx);

// |x|^2 as an exact element (rational whenever the field is imaginary).
AlgebraicInput modulus_sq(const AlgebraicInput& x);
// Exact |x| = 1 test: +-1 for rationals and real fields, norm 1 otherwise.
bool unit_modulus_exact(const AlgebraicInput& x);

enum class HypothesisMode { lemma2, remark1 };

// lemma2 mode: |alpha_0| = 1, every beta_l = delta_l alpha_l with
//   |delta_l| = 1 and delta_l != 1; pairwise-distinct |alpha_l| go into the
//   collision bucket.
// remark1 mode: no ratio structure; instead all moduli |alpha_l|, |beta_l|
//   must be pairwise distinct within and across the two lists (failures go
//   into the collision bucket).
struct HypothesisDiagnostics {
    std::vector<std::string> violations;          // value-level failures
    std::vector<std::string> modulus_collisions;  // separation failures
    std::vector<std::string> notes;               // numeric-fallback observations

    bool passed() const { return violations.empty() && modulus_collisions.empty(); }
    std::string summary() const;  // "errors: none" or "errors: ..." joined
    nlohmann::ordered_json to_json() const;
};

HypothesisDiagnostics check_lemma2_hypotheses(const std::vector<AlgebraicInput>& alphas,
                                              const std::vector<AlgebraicInput>& betas,
                                              HypothesisMode mode, const PrecisionContext& ctx);

struct CaseWitness {
    int case_id = 0;
    std::vector<std::pair<std::string, std::string>> witnesses;

    nlohmann::ordered_json to_json() const;
};

// Outcome of one classifier run. generic == cases.empty() always; verdict
// refines it: "generic", "exceptional", "undetermined" (parameters fall in a
// range the criteria do not decide) or "not-covered" (input degenerates out
// of the pair setting).
struct CaseReport {
    std::string theorem;  // "T1", "T2", "T3" or "L3"
    bool generic = true;
    std::string verdict = "generic";
    std::vector<CaseWitness> cases;
    std::vector<std::string> removals;
    std::vector<std::string> notes;

    nlohmann::ordered_json to_json() const;
};

// Rationality classifier for the combined series
//   sum_mu p_mu gamma_mu(a, z) + u_0 phi_0(a, z) + v_0 lambda_0(a, z)
// with poles alpha_0, beta_0 on the unit circle (beta_0 = delta_0 alpha_0,
// |delta_0| = 1, delta_0 != 1) and (p, u_0, v_0) not all zero:
//   r >= 4           -> never rational
//   r = 3, a^2 != 9  -> never rational        (a^2 = 9 undetermined)
//   r = 2, a^2 not in {2, 4}: rational exactly when p_1 = 0 and one of six
//   explicit configurations holds (a^2 in {2, 4} undetermined).
// Hypothesis failures raise InvalidHypothesesError.
CaseReport classify_lemma3(long r, const AlgebraicInput& a, const AlgebraicInput& alpha0,
                           const AlgebraicInput& beta0, const std::vector<AlgebraicInput>& p_coeffs,
                           const AlgebraicInput& u0, const AlgebraicInput& v0,
                           const PrecisionContext& ctx);

// Exceptional-index classifier for the reciprocal sums of a recurrence pair
// (radix 2 removals). Fires:
//   case 1: R_(l0) = 0 with constant b-coefficients  -> remove R_(l0,2)
//   case 2: S_(l0) = 0 with constant c-coefficients  -> remove S_(l0,2)
//   case 3/4: (gamma1/gamma2)^l0 = -(g2/g1) theta and Omega*theta a power of
//     gamma1/gamma2, for theta = e^(+-2 pi i/3)      -> remove R_(l0,2^j), all j
// When Omega is itself a power of gamma1/gamma2 the two sequences are
// index-shift dependent and the report verdict is "not-covered".
CaseReport classify_thm2(const LucasPairParams& params, const PeriodicSeq& b,
                         const PeriodicSeq& c, long search_bound, const PrecisionContext& ctx);

// Exceptional-case classifier for paired periodic-coefficient pole series.
//   case 1: constant b and alpha_0 = 1              -> remove Phi_(0,2)
//   case 2: constant c and beta_0 = 1               -> remove Lambda_(0,2)
//   case 3: alpha_0 = e^(2 pi i/3), beta_0 = alpha_0^2   -> Phi_(0,2^j), all j
//   case 4: alpha_0 = e^(-2 pi i/3), beta_0 = alpha_0^2  -> Lambda_(0,2^j), all j
// remark1 mode reports cases 3/4 as structurally excluded. Value-level
// hypothesis failures raise InvalidHypothesesError; modulus collisions are
// recorded as notes.
CaseReport classify_thm3(const std::vector<AlgebraicInput>& alphas,
                         const std::vector<AlgebraicInput>& betas, const PeriodicSeq& b,
                         const PeriodicSeq& c, HypothesisMode mode, const PrecisionContext& ctx);

}  // namespace mahler
