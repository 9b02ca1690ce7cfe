#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <variant>

#include <json.hpp>

#include "mahler/bigcomplex.hpp"
#include "mahler/quadext.hpp"

namespace mahler {

// Exact algebraic scalar: either a rational or an element of one quadratic
// field. Exactly one alternative is populated; nothing here ever silently
// degrades to a floating approximation. Complex literals with exact rational
// parts are stored as Gaussian elements (field tag -1).
class AlgebraicInput {
public:
    AlgebraicInput() : v_(mpq_class(0)) {}
    AlgebraicInput(mpq_class q) : v_(std::move(q)) { std::get<mpq_class>(v_).canonicalize(); }
    AlgebraicInput(long n) : v_(mpq_class(n)) {}
    AlgebraicInput(QuadExt q);  // normalizes b == 0 back to a rational

    static AlgebraicInput complex_literal(const mpq_class& re, const mpq_class& im);

    bool is_rational() const { return std::holds_alternative<mpq_class>(v_); }
    bool is_quad() const { return !is_rational(); }
    const mpq_class& rational() const { return std::get<mpq_class>(v_); }
    const QuadExt& quad() const { return std::get<QuadExt>(v_); }

    bool is_zero() const;
    bool is_one() const;
    bool is_real() const;
    // Field tag, nullopt for plain rationals.
    std::optional<long> field_d() const;

    // View in a concrete field (coerces a rational into Q(sqrt(d))).
    QuadExt as_quad(long d) const;

    bool operator==(const AlgebraicInput& o) const;
    bool operator!=(const AlgebraicInput& o) const { return !(*this == o); }

    std::string to_string() const;
    nlohmann::ordered_json to_json() const;
    static AlgebraicInput from_json(const nlohmann::json& j);

private:
    std::variant<mpq_class, QuadExt> v_;
};

// Field-aware exact arithmetic: rationals coerce into either operand's
// field; two distinct quadratic fields throw FieldMismatchError.
AlgebraicInput add(const AlgebraicInput& x, const AlgebraicInput& y);
AlgebraicInput sub(const AlgebraicInput& x, const AlgebraicInput& y);
AlgebraicInput neg(const AlgebraicInput& x);
AlgebraicInput mul(const AlgebraicInput& x, const AlgebraicInput& y);
AlgebraicInput div(const AlgebraicInput& x, const AlgebraicInput& y);
AlgebraicInput pow(const AlgebraicInput& x, const mpz_class& n);
AlgebraicInput pow(const AlgebraicInput& x, long n);
AlgebraicInput conjugate(const AlgebraicInput& x);

BigComplex embed(const AlgebraicInput& x, const PrecisionContext& ctx);

// Exact root of unity e^(2*pi*i*k/n) when it lies in a quadratic field
// (reduced order 1, 2, 3, 4 or 6); nullopt otherwise.
std::optional<AlgebraicInput> exact_root_of_unity(long n, long k);

// True when the two exact values can be compared within one field; result is
// then the exact verdict. Mixed fields fall back to a numeric comparison at
// ctx precision with threshold 2^-(P/2).
bool alg_equal(const AlgebraicInput& x, const AlgebraicInput& y, const PrecisionContext& ctx);

}  // namespace mahler
