#include <doctest.h>

#include <numeric>
#include <vector>

#include "mahler/algebraic.hpp"
#include "mahler/errors.hpp"
#include "mahler/periodic.hpp"
#include "mahler/verify.hpp"

using namespace mahler;

namespace {

PeriodicSeq seq_of(std::initializer_list<long> vals) {
    std::vector<AlgebraicInput> v;
    for (long x : vals) v.emplace_back(x);
    return PeriodicSeq(v);
}

// Exact rank oracle by Gaussian elimination over the rationals, on the
// matrix whose rows are the sequences expanded to num_terms columns.
int rank_oracle(const std::vector<PeriodicSeq>& seqs, long num_terms) {
    std::vector<std::vector<mpq_class>> m;
    for (const PeriodicSeq& s : seqs) {
        std::vector<mpq_class> row;
        for (long h = 0; h < num_terms; ++h) row.push_back(s.term(h).rational());
        m.push_back(std::move(row));
    }
    int rank = 0;
    std::size_t col = 0;
    while (rank < static_cast<int>(m.size()) && col < static_cast<std::size_t>(num_terms)) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < m.size() && m[piv][col] == 0) ++piv;
        if (piv == m.size()) {
            ++col;
            continue;
        }
        std::swap(m[piv], m[static_cast<std::size_t>(rank)]);
        for (std::size_t i = 0; i < m.size(); ++i) {
            if (i == static_cast<std::size_t>(rank) || m[i][col] == 0) continue;
            mpq_class f = m[i][col] / m[static_cast<std::size_t>(rank)][col];
            for (std::size_t c = col; c < static_cast<std::size_t>(num_terms); ++c)
                m[i][c] -= f * m[static_cast<std::size_t>(rank)][c];
        }
        ++rank;
        ++col;
    }
    return rank;
}

}  // namespace

TEST_CASE("periodic sequence basics") {
    PeriodicSeq s = seq_of({1, 2, 3});
    CHECK(s.period() == 3);
    CHECK(s.term(0) == AlgebraicInput(1L));
    CHECK(s.term(4) == AlgebraicInput(2L));
    CHECK(s.term(300) == AlgebraicInput(1L));
    CHECK_THROWS_AS(s.term(-1), DomainError);
    CHECK_THROWS_AS(PeriodicSeq({}), InputError);

    CHECK(PeriodicSeq::constant(AlgebraicInput(7L)).is_constant());
    CHECK(!s.is_constant());
    CHECK(seq_of({2, 2, 2}).is_constant());
    CHECK(seq_of({0, 0}).is_identically_zero());
    CHECK(!s.is_identically_zero());

    PeriodicSeq rot = s.rotated();
    for (long h = 0; h < 9; ++h) CHECK(rot.term(h) == s.term(h + 1));

    PeriodicSeq back = PeriodicSeq::from_json(s.to_json());
    CHECK(back == s);
}

TEST_CASE("stretching inserts zeros at non-multiples") {
    PeriodicSeq s = seq_of({5, -1});
    PeriodicSeq t = s.stretch(3);
    CHECK(t.period() == 6);
    for (long h = 0; h < 24; ++h) {
        if (h % 3 == 0)
            CHECK(t.term(h) == s.term(h / 3));
        else
            CHECK(t.term(h).is_zero());
    }
    CHECK(s.stretch(1) == s);
    CHECK(interleave(s, 4) == s.stretch(4));
}

TEST_CASE("inverse finite Fourier decomposition reconstructs the sequence") {
    PrecisionContext ctx(192, 24);
    SplitMix64 rng(99);
    for (int iter = 0; iter < 10; ++iter) {
        long p = rng.next_long(1, 6);
        std::vector<AlgebraicInput> vals;
        for (long i = 0; i < p; ++i)
            vals.emplace_back(mpq_class(rng.next_long(-9, 9), rng.next_long(1, 4)));
        PeriodicSeq s(vals);
        long N = p * rng.next_long(1, 2);  // the period must divide N
        std::vector<BigComplex> amps = dft_decompose(s, N, ctx);
        REQUIRE(amps.size() == static_cast<std::size_t>(N));
        for (long h = 0; h < 2 * N; ++h) {
            BigComplex acc = BigComplex::zero(ctx.working_bits);
            for (long i = 0; i < N; ++i) {
                BigComplex w = root_of_unity_numeric(N, (i * h) % N, ctx);
                acc = add(acc, mul(amps[static_cast<std::size_t>(i)], w));
            }
            CHECK(abs_distance_bound(acc, embed(s.term(h), ctx)).leq_pow2(-150));
        }
    }
    // Constant sequence: all mass on the zero frequency.
    std::vector<BigComplex> flat = dft_decompose(seq_of({4}), 4, ctx);
    CHECK(abs_distance_bound(flat[0], BigComplex::from_long(4, 192)).leq_pow2(-150));
    for (int i = 1; i < 4; ++i) CHECK(abs_bound(flat[static_cast<std::size_t>(i)]).leq_pow2(-150));
    // N not a multiple of the period is rejected.
    CHECK_THROWS_AS(dft_decompose(seq_of({1, 2, 3}), 4, ctx), InputError);
}

TEST_CASE("exact rank: fixed cases") {
    CHECK(rank_exact({seq_of({1}), seq_of({1, 2})}, 4) == 2);
    CHECK(rank_exact({seq_of({1, 2}), seq_of({2, 4})}, 4) == 1);
    CHECK(rank_exact({seq_of({0, 0})}, 2) == 0);
    CHECK(rank_exact({seq_of({1, 0}), seq_of({0, 1}), seq_of({1, 1})}, 4) == 2);
}

TEST_CASE("exact rank agrees with a rational elimination oracle") {
    SplitMix64 rng(2024);
    for (int iter = 0; iter < 30; ++iter) {
        long s_count = rng.next_long(1, 5);
        std::vector<PeriodicSeq> seqs;
        long lcm = 1;
        for (long i = 0; i < s_count; ++i) {
            long p = rng.next_long(1, 5);
            lcm = std::lcm(lcm, p);
            std::vector<AlgebraicInput> vals;
            for (long t = 0; t < p; ++t) vals.emplace_back(mpq_class(rng.next_long(-3, 3)));
            seqs.emplace_back(vals);
        }
        long terms = 2 * lcm;
        int got = rank_exact(seqs, terms);
        int want = rank_oracle(seqs, terms);
        CHECK(got == want);
        // Periodicity: adding more terms cannot change the rank any more.
        CHECK(rank_exact(seqs, 3 * lcm) == want);
    }
}
