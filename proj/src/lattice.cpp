#include "mahler/lattice.hpp"

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "mahler/errors.hpp"

namespace mahler {

namespace {

using Row = std::vector<mpz_class>;

void check_shape(const LatticeBasis& basis) {
    if (basis.rows.empty()) throw InputError("lattice basis is empty");
    std::size_t cols = basis.rows.front().size();
    if (cols == 0) throw InputError("lattice basis has zero-length rows");
    for (const Row& r : basis.rows)
        if (r.size() != cols) throw InputError("lattice basis rows differ in length");
    if (basis.rows.size() > cols) throw DegenerateBasisError();
}

mpz_class dot_zz(const Row& a, const Row& b) {
    mpz_class s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

// Nearest integer to q, halves toward +infinity: floor(q + 1/2).
mpz_class round_nearest(const mpq_class& q) {
    mpz_class num = q.get_num() * 2 + q.get_den();
    mpz_class den = q.get_den() * 2;
    mpz_class r;
    mpz_fdiv_q(r.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    return r;
}

// Full exact Gram-Schmidt over the rows: mu[k][j] for j < k and
// B[k] = ||b*_k||^2. Returns false as soon as some B[k] vanishes.
bool gram_schmidt(const std::vector<Row>& b, std::vector<std::vector<mpq_class>>& mu,
                  std::vector<mpq_class>& B) {
    const long n = static_cast<long>(b.size());
    mu.assign(n, std::vector<mpq_class>(n));
    B.assign(n, mpq_class(0));
    std::vector<mpq_class> u(n);
    for (long k = 0; k < n; ++k) {
        for (long j = 0; j <= k; ++j) {
            mpq_class s(dot_zz(b[k], b[j]));
            for (long i = 0; i < j; ++i) s -= mu[j][i] * u[i];
            u[j] = s;
            if (j < k)
                mu[k][j] = u[j] / B[j];
            else
                B[k] = s;
        }
        if (B[k] == 0) return false;
    }
    return true;
}

}  // namespace

LatticeBasis lll_reduce(const LatticeBasis& basis, const mpq_class& delta) {
    check_shape(basis);
    if (delta <= mpq_class(1, 4) || delta >= 1)
        throw InputError("Lovasz parameter must lie strictly between 1/4 and 1");
    const long n = static_cast<long>(basis.rows.size());
    std::vector<Row> b = basis.rows;
    std::vector<std::vector<mpq_class>> mu(n, std::vector<mpq_class>(n));
    std::vector<mpq_class> B(n);
    std::vector<mpq_class> u(n);  // scratch: b_k . b*_j for the row being added

    // Adds row k to the Gram-Schmidt state (rows 0..k-1 already present).
    auto incorporate = [&](long k) {
        for (long j = 0; j <= k; ++j) {
            mpq_class s(dot_zz(b[k], b[j]));
            for (long i = 0; i < j; ++i) s -= mu[j][i] * u[i];
            u[j] = s;
            if (j < k)
                mu[k][j] = u[j] / B[j];
            else
                B[k] = s;
        }
        if (B[k] == 0) throw DegenerateBasisError();
    };

    // Size-reduces b_k against b_l when |mu[k][l]| > 1/2.
    auto red = [&](long k, long l) {
        if (2 * abs(mu[k][l]) <= 1) return;
        mpz_class q = round_nearest(mu[k][l]);
        for (std::size_t c = 0; c < b[k].size(); ++c) b[k][c] -= q * b[l][c];
        mu[k][l] -= q;
        for (long i = 0; i < l; ++i) mu[k][i] -= mpq_class(q) * mu[l][i];
    };

    long kmax = 0;
    B[0] = mpq_class(dot_zz(b[0], b[0]));
    if (B[0] == 0) throw DegenerateBasisError();
    long k = 1;
    while (k < n) {
        if (k > kmax) {
            incorporate(k);
            kmax = k;
        }
        red(k, k - 1);
        if (B[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * B[k - 1]) {
            // Swap b_{k-1} and b_k and patch the Gram-Schmidt state in place.
            std::swap(b[k], b[k - 1]);
            for (long j = 0; j <= k - 2; ++j) std::swap(mu[k][j], mu[k - 1][j]);
            mpq_class m = mu[k][k - 1];
            mpq_class Bt = B[k] + m * m * B[k - 1];
            mu[k][k - 1] = m * B[k - 1] / Bt;
            B[k] = B[k - 1] * B[k] / Bt;
            B[k - 1] = Bt;
            for (long i = k + 1; i <= kmax; ++i) {
                mpq_class t = mu[i][k];
                mu[i][k] = mu[i][k - 1] - m * t;
                mu[i][k - 1] = t + mu[k][k - 1] * mu[i][k];
            }
            k = std::max(k - 1, 1L);
        } else {
            for (long l = k - 2; l >= 0; --l) red(k, l);
            ++k;
        }
    }
    return LatticeBasis{std::move(b)};
}

mpq_class gram_determinant(const LatticeBasis& basis) {
    check_shape(basis);
    std::vector<std::vector<mpq_class>> mu;
    std::vector<mpq_class> B;
    if (!gram_schmidt(basis.rows, mu, B)) return mpq_class(0);
    mpq_class det = 1;
    for (const mpq_class& Bk : B) det *= Bk;
    return det;
}

mpz_class shortest_vector_normsq(const LatticeBasis& basis) {
    LatticeBasis red = lll_reduce(basis);
    const long n = static_cast<long>(red.rows.size());
    std::vector<std::vector<mpq_class>> mu;
    std::vector<mpq_class> B;
    gram_schmidt(red.rows, mu, B);  // cannot fail: reduction succeeded

    // Any v = sum x_i b_i has ||v||^2 = sum_j (x_j + sum_{i>j} mu[i][j] x_i)^2 B_j.
    // Enumerate x from the last coordinate down, pruning on the partial sum.
    mpq_class best(dot_zz(red.rows[0], red.rows[0]));
    std::vector<mpz_class> x(n, 0);
    std::function<void(long, const mpq_class&)> dive = [&](long j, const mpq_class& above) {
        if (j < 0) {
            if (above > 0 && above < best) best = above;
            return;
        }
        mpq_class c = 0;
        for (long i = j + 1; i < n; ++i) c += mu[i][j] * mpq_class(x[i]);
        mpz_class x0 = round_nearest(-c);
        for (int dir = 0; dir < 2; ++dir) {
            for (mpz_class t = 0;; ++t) {
                mpz_class xj = (dir == 0) ? mpz_class(x0 + t) : mpz_class(x0 - 1 - t);
                mpq_class d = mpq_class(xj) + c;
                mpq_class contrib = d * d * B[j];
                if (above + contrib >= best) break;  // moving outward only grows
                x[j] = xj;
                dive(j - 1, above + contrib);
            }
        }
        x[j] = 0;
    };
    dive(n - 1, mpq_class(0));
    // Norms of integer vectors are integers, so best is canonical over 1.
    return best.get_num();
}

namespace {

std::string power_name(const std::string& base, long e) {
    if (e == 0) return "1";
    if (e == 1) return base;
    return base + "^" + std::to_string(e);
}

struct CandidateCheck {
    bool ok = false;          // height + certification + midpoint consistency
    ErrBound bound;           // rigorous bound on |sum c_i x_i|
    BigFloat mid_upper;       // upper bound on the midpoint magnitude
    BigFloat mid_lower;       // lower bound on the midpoint magnitude
    CandidateCheck() : mid_upper(64), mid_lower(64) {}
};

// Core search shared by the public entry points. guard_count is the number of
// base quantities for the precision guard; for monomial searches it is the
// number of underlying values rather than the (much larger) monomial count.
RelationReport relation_search(const std::vector<BigComplex>& values,
                               std::vector<std::string> names, const mpz_class& height_bound,
                               const PrecisionContext& ctx, long guard_count) {
    const long n = static_cast<long>(values.size());
    if (n < 2) throw InputError("relation search needs at least two values");
    if (height_bound < 1) throw InputError("height bound must be positive");
    const long P = static_cast<long>(ctx.working_bits);
    const long g = ctx.guard_bits;
    const long hbits = static_cast<long>(mpz_sizeinbase(height_bound.get_mpz_t(), 2));
    if (P < 4 * guard_count * hbits)
        throw PrecisionTooLowError("relation search at this height bound needs at least " +
                                   std::to_string(4 * guard_count * hbits) + " working bits");
    if (names.empty())
        for (long i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));

    // Radii must sit near the precision contract (a few bits of slack for
    // derived values such as monomial products). The scale S is then chosen
    // so that 2^S * radius <= 1 for every input, which both keeps the scaled
    // rounding errors bounded and keeps the height certificate below valid.
    long S = P - g;
    for (const BigComplex& v : values) {
        if (v.err().is_zero()) continue;
        long le = v.err().log2_upper();
        if (le > -(P - g) + 16)
            throw PrecisionTooLowError("input radius too wide for relation search");
        S = std::min(S, -le);
    }

    bool use_im = false;
    for (const BigComplex& v : values)
        if (!v.im().is_zero() && v.im().exp2() > -S) use_im = true;
    const long s_cols = use_im ? 2 : 1;

    // Rows [identity | round(2^S re) | round(2^S im)]; the identity block
    // keeps them independent.
    LatticeBasis lat;
    lat.rows.assign(n, Row(n + s_cols, 0));
    BigFloat t(ctx.working_bits);
    for (long i = 0; i < n; ++i) {
        lat.rows[i][i] = 1;
        mpfr_mul_2si(t.raw(), values[i].re().raw(), S, MPFR_RNDN);
        mpfr_get_z(lat.rows[i][n].get_mpz_t(), t.raw(), MPFR_RNDN);
        if (use_im) {
            mpfr_mul_2si(t.raw(), values[i].im().raw(), S, MPFR_RNDN);
            mpfr_get_z(lat.rows[i][n + 1].get_mpz_t(), t.raw(), MPFR_RNDN);
        }
    }

    LatticeBasis red = lll_reduce(lat);

    std::vector<mpz_class> norms(n);
    for (long i = 0; i < n; ++i) norms[i] = dot_zz(red.rows[i], red.rows[i]);
    std::vector<long> order(n);
    std::iota(order.begin(), order.end(), 0L);
    std::sort(order.begin(), order.end(), [&](long a, long c) {
        if (norms[a] != norms[c]) return norms[a] < norms[c];
        return red.rows[a] < red.rows[c];  // deterministic tie-break
    });

    // Residuals are re-evaluated at doubled precision so that acceptance does
    // not hinge on the same rounding that produced the lattice entries.
    const mpfr_prec_t wide = 2 * ctx.working_bits;
    auto check = [&](const Row& r) {
        CandidateCheck out;
        BigComplex acc = BigComplex::zero(wide);
        mpz_class hmax = 0;
        for (long i = 0; i < n; ++i) {
            if (r[i] == 0) continue;
            hmax = std::max(hmax, mpz_class(abs(r[i])));
            acc = add(acc, mul(BigComplex::from_mpq(mpq_class(r[i]), mpq_class(0), wide),
                               values[i]));
        }
        out.bound = abs_bound(acc);
        BigComplex mid_only = acc;
        mid_only.set_err(ErrBound::exact());
        out.mid_upper = abs_upper(mid_only);
        out.mid_lower = abs_lower(mid_only);
        bool height_ok = hmax > 0 && hmax <= height_bound;
        bool certified = out.bound.leq_pow2(-(P / 2));
        // The midpoint of an exact relation can only be as large as the
        // propagated input radii; anything bigger is a near-miss.
        bool consistent =
            abs_bound(mid_only) <= ErrBound::max(ErrBound::pow2(-P), acc.err().times_pow2(1));
        out.ok = height_ok && certified && consistent;
        return out;
    };

    RelationReport rep;
    rep.basis_names = std::move(names);
    rep.precision_bits = P;
    rep.height_bound = height_bound;

    for (long pos = 0; pos < n; ++pos) {
        const Row& r = red.rows[order[pos]];
        bool all_zero = true;
        for (long i = 0; i < n && all_zero; ++i) all_zero = (r[i] == 0);
        if (all_zero) continue;
        CandidateCheck c1 = check(r);
        if (!c1.ok) continue;

        // Gap test: the next-shortest candidate must be decisively worse, or
        // itself a confirmed relation (two independent relations can coexist).
        bool gap_ok = true;
        if (mpfr_zero_p(c1.mid_upper.raw()) == 0 && pos + 1 < n) {
            CandidateCheck c2 = check(red.rows[order[pos + 1]]);
            BigFloat thresh(64);
            mpfr_mul_2si(thresh.raw(), c1.mid_upper.raw(), P / 4, MPFR_RNDU);
            gap_ok = c2.ok || mpfr_cmp(c2.mid_lower.raw(), thresh.raw()) >= 0;
        }
        if (!gap_ok) {
            // An ambiguous candidate: refuse to certify either outcome.
            rep.found = false;
            rep.certified_height = 0;
            rep.residual = c1.bound;
            return rep;
        }

        rep.found = true;
        rep.coefficients.assign(r.begin(), r.begin() + n);
        for (mpz_class& v : rep.coefficients) {
            if (v == 0) continue;
            if (v < 0)
                for (mpz_class& w : rep.coefficients) w = -w;
            break;
        }
        rep.residual = c1.bound;
        return rep;
    }

    // Nothing found: certify a height floor from the shortest reduced vector.
    // A true relation c with height H would put sum c_i row_i in the lattice
    // with squared length <= n H^2 + s (1.5 n H)^2 <= H^2 (n + 4.5 n^2), so
    // ||b_1|| <= 2^((n-1)/2) H sqrt(n + 4.5 n^2); heights below the quotient
    // are therefore impossible.
    rep.found = false;
    rep.residual = check(red.rows[order[0]]).bound;
    mpz_class len = sqrt(norms[order[0]]);  // floor, conservative
    mpz_class nn(n);
    mpz_class m = nn + (9 * nn * nn + (n % 2 ? 1 : 0)) / 2;  // ceil(n + 4.5 n^2)
    mpz_class cs = sqrt(m);
    if (cs * cs < m) ++cs;
    mpz_class denom = cs;
    mpz_mul_2exp(denom.get_mpz_t(), denom.get_mpz_t(), static_cast<mp_bitcnt_t>(n / 2));
    mpz_class hc = len / denom;
    rep.certified_height = (hc < height_bound) ? hc : height_bound;
    return rep;
}

}  // namespace

nlohmann::ordered_json RelationReport::to_json() const {
    nlohmann::ordered_json j;
    j["found"] = found;
    auto arr = nlohmann::ordered_json::array();
    for (const mpz_class& c : coefficients) arr.push_back(c.get_str());
    j["coefficients"] = std::move(arr);
    j["residual"] = residual.to_string();
    j["certified_height"] = certified_height.get_str();
    j["basis"] = basis_names;
    j["precision_bits"] = precision_bits;
    j["height_bound"] = height_bound.get_str();
    return j;
}

RelationReport find_integer_relation(const std::vector<BigComplex>& values,
                                     const mpz_class& height_bound, const PrecisionContext& ctx) {
    return relation_search(values, {}, height_bound, ctx, static_cast<long>(values.size()));
}

std::optional<std::vector<mpz_class>> minimal_polynomial(const BigComplex& x, long max_degree,
                                                         const mpz_class& height_bound,
                                                         const PrecisionContext& ctx) {
    if (max_degree < 1) throw InputError("max_degree must be at least 1");
    if (height_bound < 1) throw InputError("height bound must be positive");
    const long P = static_cast<long>(ctx.working_bits);
    const long hbits = static_cast<long>(mpz_sizeinbase(height_bound.get_mpz_t(), 2));
    if (P < 4 * 2 * hbits)
        throw PrecisionTooLowError("minimal polynomial at this height bound needs at least " +
                                   std::to_string(8 * hbits) + " working bits");

    std::vector<BigComplex> powers;
    powers.push_back(BigComplex::from_long(1, ctx.working_bits));
    for (long d = 1; d <= max_degree; ++d) {
        powers.push_back(mul(powers.back(), x));
        if (P < 4 * (d + 1) * hbits) break;  // this and all higher degrees fail the guard
        std::vector<std::string> names;
        for (long i = 0; i <= d; ++i) names.push_back(power_name("x", i));
        RelationReport rel = relation_search(powers, std::move(names), height_bound, ctx, d + 1);
        if (!rel.found) continue;
        std::vector<mpz_class> c = rel.coefficients;
        while (!c.empty() && c.back() == 0) c.pop_back();
        if (c.size() < 2) continue;  // a bare constant is never a witness
        mpz_class content = 0;
        for (const mpz_class& v : c) content = gcd(content, v);
        if (content > 1)
            for (mpz_class& v : c) v /= content;
        if (c.back() < 0)
            for (mpz_class& v : c) v = -v;
        return c;
    }
    return std::nullopt;
}

RelationReport independence_smoke(const std::vector<std::pair<std::string, BigComplex>>& values,
                                  long degree, const mpz_class& height_bound,
                                  const PrecisionContext& ctx) {
    if (values.empty()) throw InputError("independence check needs at least one value");
    if (degree < 1) throw InputError("degree must be at least 1");
    const long m = static_cast<long>(values.size());

    // Exponent vectors of total degree <= degree in graded-lex order.
    std::vector<std::vector<long>> exps;
    std::vector<long> cur;
    std::function<void(long, long)> compositions = [&](long total, long parts) {
        if (parts == 1) {
            cur.push_back(total);
            exps.push_back(cur);
            cur.pop_back();
            return;
        }
        for (long v = total; v >= 0; --v) {
            cur.push_back(v);
            compositions(total - v, parts - 1);
            cur.pop_back();
        }
    };
    for (long t = 0; t <= degree; ++t) compositions(t, m);
    if (exps.size() > 200)
        throw TooManyMonomialsError("monomial basis has " + std::to_string(exps.size()) +
                                    " entries; the limit is 200");

    std::vector<BigComplex> vals;
    std::vector<std::string> names;
    for (const std::vector<long>& e : exps) {
        BigComplex v = BigComplex::from_long(1, ctx.working_bits);
        std::string name;
        for (long i = 0; i < m; ++i) {
            if (e[i] == 0) continue;
            v = mul(v, pow_ui(values[i].second, static_cast<unsigned long>(e[i])));
            if (!name.empty()) name += "*";
            name += power_name(values[i].first, e[i]);
        }
        if (name.empty()) name = "1";
        vals.push_back(std::move(v));
        names.push_back(std::move(name));
    }
    return relation_search(vals, std::move(names), height_bound, ctx, m);
}

}  // namespace mahler
