#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>

#include <json.hpp>

#include "mahler/algebraic.hpp"
#include "mahler/bigcomplex.hpp"
#include "mahler/periodic.hpp"
#include "mahler/series.hpp"

namespace mahler {

// Fibonacci and Lucas numbers by fast doubling, with the standard
// negative-index extension F(-n) = (-1)^(n+1) F(n), L(-n) = (-1)^n L(n).
mpz_class fib(long n);
mpz_class lucas(long n);

// A pair of binary recurrences sharing one root pair:
//   R_n = g1 gamma1^n + g2 gamma2^n,   S_n = h1 gamma1^n + h2 gamma2^n,
// with gamma1 * gamma2 = delta in {+1, -1} and |gamma1| > 1.
class LucasPairParams {
public:
    LucasPairParams(AlgebraicInput gamma1, AlgebraicInput gamma2, AlgebraicInput g1,
                    AlgebraicInput g2, AlgebraicInput h1, AlgebraicInput h2,
                    std::string preset_name = "");

    // gamma1 = (1+sqrt 5)/2: R_n = F_n (Fibonacci), S_n = L_n (Lucas).
    static LucasPairParams fibonacci_lucas();
    static LucasPairParams fibonacci();
    static LucasPairParams lucas();
    // gamma1 = 2, R_n = 2^n + 2^-n, S_n = 2^n + 4*2^-n; satisfies the
    // index-shift dependence with Omega = 4.
    static LucasPairParams shifted_power();
    // gamma1 = 2 with cube-root-of-unity weights on the S side; exercises the
    // resonance classification path.
    static LucasPairParams cubic_twist();
    static LucasPairParams from_preset(const std::string& name);
    static std::vector<std::string> preset_names();

    const AlgebraicInput& gamma1() const { return gamma1_; }
    const AlgebraicInput& gamma2() const { return gamma2_; }
    const AlgebraicInput& g1() const { return g1_; }
    const AlgebraicInput& g2() const { return g2_; }
    const AlgebraicInput& h1() const { return h1_; }
    const AlgebraicInput& h2() const { return h2_; }
    int delta() const { return delta_; }
    bool exact() const { return exact_; }
    const std::string& preset() const { return preset_; }

    // g1*h2 / (g2*h1); exact only when every factor lives in one field.
    AlgebraicInput omega() const;

    // Exact sequence values; require exact().
    AlgebraicInput rn(const mpz_class& n) const;
    AlgebraicInput sn(const mpz_class& n) const;

    // Display names for report strings: F/L for the fibonacci-lucas preset,
    // plain R/S otherwise.
    std::string r_display() const;
    std::string s_display() const;

    nlohmann::ordered_json to_json() const;
    static LucasPairParams from_json(const nlohmann::json& j);

private:
    void validate();

    AlgebraicInput gamma1_, gamma2_, g1_, g2_, h1_, h2_;
    int delta_ = 1;
    bool exact_ = true;
    std::string preset_;
};

enum class NumberFamily { Q, R, S };

std::string family_name(NumberFamily f);
NumberFamily family_from_name(const std::string& s);

// One reciprocal-type number series:
//   Q: sum of a_h * gamma1^(-mu k r^h)           (plain lacunary value)
//   R: sum' of c_h / R_(k r^h + ell)             (primed: skip vanishing or
//   S: sum' of c_h / S_(k r^h + ell)              negative-index terms)
struct NumberSeriesSpec {
    NumberFamily family = NumberFamily::R;
    long k = 1;
    long r = 2;
    long ell = 0;  // R/S index offset
    long mu = 1;   // Q exponent multiplier
    PeriodicSeq coeffs = PeriodicSeq::constant(AlgebraicInput(1L));
    long start_index = 0;

    void validate() const;
    nlohmann::ordered_json to_json() const;
    static NumberSeriesSpec from_json(const nlohmann::json& j);
};

struct NumberEvalResult {
    BigComplex value;
    long terms_used = 0;
    long skipped_terms = 0;
    ErrBound truncation_bound;
};

// Rigorous evaluation of the number series; the result radius covers
// truncation and rounding. Exact parameter sets use exact denominators, so
// term skipping is decided without ambiguity; otherwise an unresolvable
// denominator raises ResolutionError.
NumberEvalResult eval_number_series(const LucasPairParams& params, const NumberSeriesSpec& spec,
                                    const PrecisionContext& ctx);

// Constants that turn a block of reciprocal terms into a single pole-shifted
// lacunary series:
//   1/R_(k r^h + ell) = E^-1 * w / (w^2 - e) at w = gamma1^(-k r^h),
// and the same with (F, f) for S. With no h given the constants use the
// stable h >= 1 form; they differ from the h = 0 constants exactly when
// delta = -1, k is odd and r is even.
struct TransformConsts {
    AlgebraicInput E, e, F, f;
    bool h_exact = false;
    long h = 1;
    double abs_e = 0.0, abs_f = 0.0;

    nlohmann::ordered_json to_json() const;
};

TransformConsts transform_consts(const LucasPairParams& params, long k, long r, long ell,
                                 std::optional<long> h = std::nullopt);

// Number-side tail vs the matching function-side value at z = gamma1^(-k):
//   R family: sum' from h0  vs  E^-1 * phi-type series with pole e
//   S family: sum' from h0  vs  F^-1 * lambda-type series with pole f
//   Q family: the lacunary series itself.
// R/S require start_index >= 1 so a single constant pair covers every term.
struct BridgeCheck {
    BigComplex number_side;
    BigComplex function_side;
    BigComplex residual;
    long terms_used = 0;
    long skipped_terms = 0;
};

BridgeCheck verify_bridge(const LucasPairParams& params, const NumberSeriesSpec& spec,
                          const PrecisionContext& ctx);

// Residual of the index-shift dependence g2 * sum' 1/R_(n) - h2 gamma2^ell1 *
// sum' 1/S_(n + ell1) over n = k r^h + ell, which is exactly 0 whenever
// Omega = (gamma1/gamma2)^ell1. Raises NotApplicableError otherwise.
BigComplex remark6_residual(const LucasPairParams& params, long k, long r, long ell, long ell1,
                            const PrecisionContext& ctx);

}  // namespace mahler
