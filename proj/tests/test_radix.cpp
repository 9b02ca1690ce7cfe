#include <doctest.h>

#include <gmpxx.h>

#include "mahler/errors.hpp"
#include "mahler/radix.hpp"

using namespace mahler;

namespace {

// Independent brute-force oracle: the largest m >= 2 with an exact m-th
// root, found by trying every candidate exponent from the top down.
std::pair<mpz_class, unsigned> oracle_decompose(const mpz_class& n) {
    unsigned kmax = static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
    for (unsigned m = kmax; m >= 2; --m) {
        mpz_class root;
        if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), m) != 0) return {root, m};
    }
    return {n, 1};
}

}  // namespace

TEST_CASE("radix decomposition: fixed values") {
    RadixDecomposition r = decompose_radix(729);
    CHECK(r.d == 3);
    CHECK(r.j == 6);
    r = decompose_radix(2);
    CHECK(r.d == 2);
    CHECK(r.j == 1);
    r = decompose_radix(1296);  // 6^4
    CHECK(r.d == 6);
    CHECK(r.j == 4);
    r = decompose_radix(1000000);
    CHECK(r.d == 10);
    CHECK(r.j == 6);
    r = decompose_radix(mpz_class("18446744073709551616"));  // 2^64
    CHECK(r.d == 2);
    CHECK(r.j == 64);

    CHECK_THROWS_AS(decompose_radix(1), InputError);
    CHECK_THROWS_AS(decompose_radix(0), InputError);
    CHECK_THROWS_AS(decompose_radix(-8), InputError);
}

TEST_CASE("perfect power detection: fixed values") {
    auto p = is_perfect_power(1024);
    REQUIRE(p.has_value());
    CHECK(p->first == 2);
    CHECK(p->second == 10);
    CHECK(!is_perfect_power(2).has_value());
    CHECK(!is_perfect_power(12).has_value());
    auto q = is_perfect_power(46656);  // 6^6 = 2^6 * 3^6
    REQUIRE(q.has_value());
    CHECK(q->first == 6);
    CHECK(q->second == 6);
}

TEST_CASE("radix decomposition: exhaustive against brute force up to 10^6") {
    for (long n = 2; n <= 1000000; ++n) {
        mpz_class nz(n);
        RadixDecomposition got = decompose_radix(nz);
        auto [d, j] = oracle_decompose(nz);
        if (got.d != d || got.j != j) {
            CAPTURE(n);
            REQUIRE(got.d == d);
            REQUIRE(got.j == j);
        }
        // Structural invariants: reconstruction and a non-power base.
        if (n < 2048 || (n & 1023) == 0) {  // spot-check the expensive parts
            mpz_class back;
            mpz_pow_ui(back.get_mpz_t(), got.d.get_mpz_t(), got.j);
            REQUIRE(back == nz);
            REQUIRE(!is_perfect_power(got.d).has_value());
        }
    }
}
