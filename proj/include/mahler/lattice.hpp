#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mahler/bigcomplex.hpp"
#include "mahler/errbound.hpp"

namespace mahler {

struct LatticeBasis {
    std::vector<std::vector<mpz_class>> rows;  // row vectors of equal length
};

// Exact lattice reduction with rational Gram-Schmidt bookkeeping and Lovasz
// parameter delta (default 99/100). Rows must be linearly independent;
// otherwise DegenerateBasisError. The output spans the same lattice.
LatticeBasis lll_reduce(const LatticeBasis& basis, const mpq_class& delta = mpq_class(99, 100));

// Determinant of the Gram matrix = product of squared Gram-Schmidt norms
// (exact; 0 for dependent rows). Invariant under lll_reduce.
mpq_class gram_determinant(const LatticeBasis& basis);

// Exact squared length of a shortest nonzero lattice vector by depth-first
// enumeration over the reduced basis. Exponential in the dimension; intended
// as a test oracle for small instances.
mpz_class shortest_vector_normsq(const LatticeBasis& basis);

struct RelationReport {
    bool found = false;
    std::vector<mpz_class> coefficients;  // empty when !found
    ErrBound residual;                    // certified bound on |sum c_i x_i|
    mpz_class certified_height = 0;       // when !found: no relation at or below this height
    std::vector<std::string> basis_names;
    long precision_bits = 0;
    mpz_class height_bound = 0;

    nlohmann::ordered_json to_json() const;
};

// Searches for integers c (not all zero, |c_i| <= height_bound) with
// sum c_i x_i = 0, through reduction of the scaled lattice
// [I | round(2^(P-g) Re x) | round(2^(P-g) Im x)]. A candidate is accepted
// only if the doubled-precision residual bound is below 2^-(P/2), the
// midpoint magnitude is consistent with an exact zero, and the next-shortest
// candidate is at least 2^(P/4) times worse (or itself a confirmed relation).
// When nothing is found, certified_height excludes all smaller heights via
// the reduced first vector. Throws PrecisionTooLowError when P cannot
// support the requested height at the given count.
RelationReport find_integer_relation(const std::vector<BigComplex>& values,
                                     const mpz_class& height_bound, const PrecisionContext& ctx);

// Smallest-degree integer polynomial (trailing-to-leading coefficient order,
// content 1, positive leading coefficient) vanishing at x within the height
// bound; nullopt if none exists up to max_degree. Degrees whose precision
// guard fails are not searched.
std::optional<std::vector<mpz_class>> minimal_polynomial(const BigComplex& x, long max_degree,
                                                         const mpz_class& height_bound,
                                                         const PrecisionContext& ctx);

// Relation search over all monomials of total degree <= degree in the named
// values (graded-lex order, constant monomial first). More than 200 monomials
// raises TooManyMonomialsError. The precision guard is applied with the
// number of base values, not the monomial count.
RelationReport independence_smoke(const std::vector<std::pair<std::string, BigComplex>>& values,
                                  long degree, const mpz_class& height_bound,
                                  const PrecisionContext& ctx);

}  // namespace mahler
