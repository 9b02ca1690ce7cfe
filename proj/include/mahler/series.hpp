#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "mahler/algebraic.hpp"
#include "mahler/bigcomplex.hpp"
#include "mahler/errbound.hpp"
#include "mahler/periodic.hpp"

namespace mahler {

enum class SeriesKind { gamma, phi, lambda };

std::string kind_name(SeriesKind k);
SeriesKind kind_from_name(const std::string& s);

// One lacunary series: sum over h >= start_index of
//   gamma:  c_h * z^(mu * r^h)
//   phi:    c_h * z^(r^h) / (z^(2 r^h) - pole)
//   lambda: c_h * z^(r^h) / (z^(2 r^h) - pole)
// with coefficients c_h either geometric (a^h) or periodic.
class SeriesSpec {
public:
    static SeriesSpec make_gamma(long r, long mu, AlgebraicInput geometric_a, long h0 = 0);
    static SeriesSpec make_gamma(long r, long mu, PeriodicSeq coeffs, long h0 = 0);
    static SeriesSpec make_phi(long r, AlgebraicInput pole, AlgebraicInput geometric_a,
                               long h0 = 0);
    static SeriesSpec make_phi(long r, AlgebraicInput pole, PeriodicSeq coeffs, long h0 = 0);
    static SeriesSpec make_lambda(long r, AlgebraicInput pole, AlgebraicInput geometric_a,
                                  long h0 = 0);
    static SeriesSpec make_lambda(long r, AlgebraicInput pole, PeriodicSeq coeffs, long h0 = 0);

    SeriesKind kind() const { return kind_; }
    long r() const { return r_; }
    long mu() const { return mu_; }
    const AlgebraicInput& pole() const;
    bool is_geometric() const { return geo_a_.has_value(); }
    const AlgebraicInput& geometric_base() const { return *geo_a_; }
    const PeriodicSeq& periodic_coeffs() const { return *periodic_; }
    long start_index() const { return h0_; }

    // Exact coefficient c_h.
    AlgebraicInput coefficient(long h) const;

    SeriesSpec with_start_index(long h0) const;
    // Coefficients advanced one step (c'_h = c_{h+1}); the left-hand side of
    // the functional equation evaluates this spec at z^r.
    SeriesSpec shifted_coeffs() const;

    nlohmann::ordered_json to_json() const;
    static SeriesSpec from_json(const nlohmann::json& j);
    std::string to_string() const;

private:
    SeriesSpec() = default;
    void validate() const;

    SeriesKind kind_ = SeriesKind::gamma;
    long r_ = 2;
    long mu_ = 1;
    std::optional<AlgebraicInput> pole_;
    std::optional<AlgebraicInput> geo_a_;
    std::optional<PeriodicSeq> periodic_;
    long h0_ = 0;
};

struct EvalResult {
    BigComplex value;
    long terms_used = 0;
    ErrBound truncation_bound;
};

// Smallest h_max such that the omitted tail (h > h_max) is at most
// 2^-target_bits in absolute value. May be start_index - 1 (empty sum) for
// tiny z; returns 0 for z = 0 as every term vanishes there.
long truncation_depth(const SeriesSpec& spec, const BigComplex& z, long target_bits);

// Rigorous evaluation: |value - exact sum| <= value.err, which folds in both
// rounding and the truncation bound.
EvalResult eval_series(const SeriesSpec& spec, const BigComplex& z, const PrecisionContext& ctx);

// a*f(z^r) - f(z) + inhomogeneity, which is exactly 0; for periodic
// coefficients the left side uses the advanced coefficient sequence and the
// inhomogeneity picks up the factor c_0. Requires start_index == 0.
BigComplex feq_residual(const SeriesSpec& spec, const BigComplex& z, const PrecisionContext& ctx);

// Left-minus-right residual of the six explicit rational-solution identities
// (case_id 1..6); exact value 0 at every admissible z.
BigComplex remark2_residual(int case_id, const BigComplex& z, const PrecisionContext& ctx);

// The rational side of the given identity case, for reporting.
BigComplex remark2_rational_side(int case_id, const BigComplex& z, const PrecisionContext& ctx);

}  // namespace mahler
