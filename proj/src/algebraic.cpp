#include "mahler/algebraic.hpp"

#include <numeric>

#include "mahler/errors.hpp"
#include "mahler/rational.hpp"

namespace mahler {

AlgebraicInput::AlgebraicInput(QuadExt q) : v_(mpq_class(0)) {
    if (q.b() == 0)
        v_ = q.a();
    else
        v_ = std::move(q);
}

AlgebraicInput AlgebraicInput::complex_literal(const mpq_class& re, const mpq_class& im) {
    if (im == 0) return AlgebraicInput(re);
    return AlgebraicInput(QuadExt(re, im, -1));
}

bool AlgebraicInput::is_zero() const {
    return is_rational() ? rational() == 0 : quad().is_zero();
}

bool AlgebraicInput::is_one() const {
    return is_rational() ? rational() == 1 : false;
}

bool AlgebraicInput::is_real() const { return is_rational() || quad().is_real(); }

std::optional<long> AlgebraicInput::field_d() const {
    if (is_rational()) return std::nullopt;
    return quad().d();
}

QuadExt AlgebraicInput::as_quad(long d) const {
    if (is_rational()) return QuadExt(rational(), 0, d);
    if (quad().d() != d)
        throw FieldMismatchError("value lies in Q(sqrt(" + std::to_string(quad().d()) +
                                 ")), not Q(sqrt(" + std::to_string(d) + "))");
    return quad();
}

bool AlgebraicInput::operator==(const AlgebraicInput& o) const {
    if (is_rational() && o.is_rational()) return rational() == o.rational();
    if (is_rational() || o.is_rational()) return false;  // quad side has b != 0
    return quad() == o.quad();
}

std::string AlgebraicInput::to_string() const {
    return is_rational() ? rational_to_string(rational()) : quad().to_string();
}

nlohmann::ordered_json AlgebraicInput::to_json() const {
    nlohmann::ordered_json j;
    if (is_rational()) {
        j["type"] = "rational";
        j["v"] = rational_to_string(rational());
    } else if (quad().d() == -1) {
        j["type"] = "complex";
        j["re"] = rational_to_string(quad().a());
        j["im"] = rational_to_string(quad().b());
    } else {
        j["type"] = "quad";
        j["a"] = rational_to_string(quad().a());
        j["b"] = rational_to_string(quad().b());
        j["D"] = quad().d();
    }
    return j;
}

AlgebraicInput AlgebraicInput::from_json(const nlohmann::json& j) {
    if (j.is_string()) return AlgebraicInput(parse_rational(j.get<std::string>()));
    if (j.is_number_integer()) return AlgebraicInput(mpq_class(j.get<long>()));
    if (!j.is_object() || !j.contains("type"))
        throw InputError("algebraic value must be a string, integer, or tagged object");
    std::string type = j.at("type").get<std::string>();
    if (type == "rational") return AlgebraicInput(parse_rational(j.at("v").get<std::string>()));
    if (type == "complex") {
        auto field = [&](const char* k) {
            if (!j.contains(k)) return mpq_class(0);
            const auto& v = j.at(k);
            return v.is_number_integer() ? mpq_class(v.get<long>())
                                         : parse_rational(v.get<std::string>());
        };
        return complex_literal(field("re"), field("im"));
    }
    if (type == "quad") {
        auto q = [&](const char* k) {
            const auto& v = j.at(k);
            return v.is_number_integer() ? mpq_class(v.get<long>())
                                         : parse_rational(v.get<std::string>());
        };
        return AlgebraicInput(QuadExt(q("a"), q("b"), j.at("D").get<long>()));
    }
    throw InputError("unknown algebraic value type: " + type);
}

namespace {

// Pick the common field for a binary operation, or throw.
std::optional<long> join_fields(const AlgebraicInput& x, const AlgebraicInput& y) {
    auto dx = x.field_d(), dy = y.field_d();
    if (dx && dy && *dx != *dy) throw FieldMismatchError();
    return dx ? dx : dy;
}

template <typename RatOp, typename QuadOp>
AlgebraicInput lift(const AlgebraicInput& x, const AlgebraicInput& y, RatOp rop, QuadOp qop) {
    auto d = join_fields(x, y);
    if (!d) return AlgebraicInput(rop(x.rational(), y.rational()));
    return AlgebraicInput(qop(x.as_quad(*d), y.as_quad(*d)));
}

}  // namespace

AlgebraicInput add(const AlgebraicInput& x, const AlgebraicInput& y) {
    return lift(
        x, y, [](const mpq_class& a, const mpq_class& b) { return mpq_class(a + b); },
        [](const QuadExt& a, const QuadExt& b) { return add(a, b); });
}

AlgebraicInput sub(const AlgebraicInput& x, const AlgebraicInput& y) {
    return lift(
        x, y, [](const mpq_class& a, const mpq_class& b) { return mpq_class(a - b); },
        [](const QuadExt& a, const QuadExt& b) { return sub(a, b); });
}

AlgebraicInput neg(const AlgebraicInput& x) {
    if (x.is_rational()) return AlgebraicInput(mpq_class(-x.rational()));
    return AlgebraicInput(neg(x.quad()));
}

AlgebraicInput mul(const AlgebraicInput& x, const AlgebraicInput& y) {
    return lift(
        x, y, [](const mpq_class& a, const mpq_class& b) { return mpq_class(a * b); },
        [](const QuadExt& a, const QuadExt& b) { return mul(a, b); });
}

AlgebraicInput div(const AlgebraicInput& x, const AlgebraicInput& y) {
    if (y.is_zero()) throw DivByZeroError();
    return lift(
        x, y, [](const mpq_class& a, const mpq_class& b) { return mpq_class(a / b); },
        [](const QuadExt& a, const QuadExt& b) { return div(a, b); });
}

AlgebraicInput pow(const AlgebraicInput& x, const mpz_class& n) {
    if (x.is_rational()) {
        if (n >= 0) {
            mpq_class r;
            if (!mpz_fits_ulong_p(n.get_mpz_t())) throw DomainError("exponent too large");
            unsigned long e = mpz_get_ui(n.get_mpz_t());
            mpz_pow_ui(r.get_num().get_mpz_t(), x.rational().get_num().get_mpz_t(), e);
            mpz_pow_ui(r.get_den().get_mpz_t(), x.rational().get_den().get_mpz_t(), e);
            r.canonicalize();
            return AlgebraicInput(r);
        }
        if (x.is_zero()) throw DivByZeroError();
        return pow(div(AlgebraicInput(1), x), mpz_class(-n));
    }
    return AlgebraicInput(pow(x.quad(), n));
}

AlgebraicInput pow(const AlgebraicInput& x, long n) { return pow(x, mpz_class(n)); }

AlgebraicInput conjugate(const AlgebraicInput& x) {
    if (x.is_rational()) return x;
    if (x.quad().d() > 0) return x;  // real field: complex conjugation is trivial
    return AlgebraicInput(x.quad().conjugate());
}

BigComplex embed(const AlgebraicInput& x, const PrecisionContext& ctx) {
    if (x.is_rational()) return BigComplex::from_mpq(x.rational(), 0, ctx.working_bits);
    return embed(x.quad(), ctx);
}

std::optional<AlgebraicInput> exact_root_of_unity(long n, long k) {
    if (n <= 0) throw InvalidOrderError();
    long kk = ((k % n) + n) % n;
    long g = std::gcd(kk == 0 ? n : kk, n);
    long order = n / g;       // reduced order of e^(2*pi*i*k/n)
    long j = kk / g;          // numerator coprime to order
    mpq_class half(1, 2);
    switch (order) {
        case 1:
            return AlgebraicInput(1);
        case 2:
            return AlgebraicInput(-1);
        case 4:
            return AlgebraicInput(QuadExt(0, j == 1 ? 1 : -1, -1));
        case 3:
            return AlgebraicInput(QuadExt(-half, j == 1 ? half : -half, -3));
        case 6:
            return AlgebraicInput(QuadExt(half, j == 1 ? half : -half, -3));
        default:
            return std::nullopt;
    }
}

bool alg_equal(const AlgebraicInput& x, const AlgebraicInput& y, const PrecisionContext& ctx) {
    auto dx = x.field_d(), dy = y.field_d();
    if (!dx || !dy || *dx == *dy) return sub(x, y).is_zero();
    // Distinct fields: elements with b != 0 in different squarefree fields
    // are never equal, but we confirm numerically rather than rely on that.
    ErrBound dist = abs_distance_bound(embed(x, ctx), embed(y, ctx));
    return dist.leq_pow2(-static_cast<long>(ctx.working_bits) / 2);
}

}  // namespace mahler
