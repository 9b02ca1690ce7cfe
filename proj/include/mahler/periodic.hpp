#pragma once

#include <vector>

#include <json.hpp>

#include "mahler/algebraic.hpp"
#include "mahler/bigcomplex.hpp"

namespace mahler {

// Purely periodic sequence of exact algebraic values, stored as one period.
// Zero entries are allowed (stretching inserts them); callers that need a
// not-identically-zero sequence check is_identically_zero() themselves.
class PeriodicSeq {
public:
    explicit PeriodicSeq(std::vector<AlgebraicInput> period_values);
    static PeriodicSeq constant(AlgebraicInput c) { return PeriodicSeq({std::move(c)}); }

    std::size_t period() const { return values_.size(); }
    const AlgebraicInput& term(long h) const;
    const std::vector<AlgebraicInput>& values() const { return values_; }

    bool is_constant() const;
    bool is_identically_zero() const;

    // The stretched sequence: period j*p, term(h) = term(h/j) when j | h and
    // 0 otherwise. j = 1 is the identity.
    PeriodicSeq stretch(unsigned j) const;

    // Left rotation by one step: term'(h) = term(h+1). Used by the
    // functional-equation residual for periodic coefficients.
    PeriodicSeq rotated() const;

    bool operator==(const PeriodicSeq& o) const;

    nlohmann::ordered_json to_json() const;
    static PeriodicSeq from_json(const nlohmann::json& j);
    std::string to_string() const;

private:
    std::vector<AlgebraicInput> values_;
};

PeriodicSeq interleave(const PeriodicSeq& seq, unsigned j);  // = seq.stretch(j)

// Inverse finite Fourier sum: coefficients A_0..A_{N-1} with
// term(h) = sum_i A_i * omega^(i*h), omega = e^(2*pi*i/N). The sequence's
// period must divide N.
std::vector<BigComplex> dft_decompose(const PeriodicSeq& combined, long N,
                                      const PrecisionContext& ctx);

// Rank over the common exact field of the matrix whose rows are the first
// num_terms entries of each sequence, by exact Gaussian elimination.
int rank_exact(const std::vector<PeriodicSeq>& seqs, long num_terms);

}  // namespace mahler
