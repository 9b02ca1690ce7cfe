#include <doctest.h>

#include <gmpxx.h>

#include "mahler/algebraic.hpp"
#include "mahler/bigcomplex.hpp"
#include "mahler/errors.hpp"
#include "mahler/lucaspair.hpp"
#include "mahler/periodic.hpp"

using namespace mahler;

namespace {

bool contains_zero(const BigComplex& resid) {
    BigComplex mid = resid;
    mid.set_err(ErrBound::exact());
    return abs_bound(mid) <= resid.err().times_pow2(1);
}

}  // namespace

TEST_CASE("fast doubling agrees with the additive recurrence on [-2000, 2000]") {
    // Forward pass with the plain recurrence, extended to negative indices.
    std::vector<mpz_class> f(4001), l(4001);
    f[2000] = 0;  // index offset +2000
    f[2001] = 1;
    l[2000] = 2;
    l[2001] = 1;
    for (long n = 2; n <= 2000; ++n) {
        f[2000 + n] = f[1999 + n] + f[1998 + n];
        l[2000 + n] = l[1999 + n] + l[1998 + n];
    }
    for (long n = -1; n >= -2000; --n) {
        f[2000 + n] = f[2002 + n] - f[2001 + n];
        l[2000 + n] = l[2002 + n] - l[2001 + n];
    }
    for (long n = -2000; n <= 2000; ++n) {
        if (fib(n) != f[2000 + n] || lucas(n) != l[2000 + n]) {
            CAPTURE(n);
            REQUIRE(fib(n) == f[2000 + n]);
            REQUIRE(lucas(n) == l[2000 + n]);
        }
    }
    // Cross identity between the two sequences.
    for (long n = -100; n <= 100; ++n) REQUIRE(lucas(n) == fib(n - 1) + fib(n + 1));
}

TEST_CASE("presets produce their named sequences exactly") {
    LucasPairParams fl = LucasPairParams::fibonacci_lucas();
    for (long n = -20; n <= 20; ++n) {
        CHECK(fl.rn(n) == AlgebraicInput(mpq_class(fib(n))));
        CHECK(fl.sn(n) == AlgebraicInput(mpq_class(lucas(n))));
    }
    CHECK(fl.delta() == -1);
    CHECK(fl.r_display() == "F");
    CHECK(fl.s_display() == "L");

    LucasPairParams fib_only = LucasPairParams::fibonacci();
    LucasPairParams luc_only = LucasPairParams::lucas();
    for (long n = -10; n <= 10; ++n) {
        CHECK(fib_only.rn(n) == AlgebraicInput(mpq_class(fib(n))));
        CHECK(fib_only.sn(n) == AlgebraicInput(mpq_class(fib(n))));
        CHECK(luc_only.rn(n) == AlgebraicInput(mpq_class(lucas(n))));
    }

    LucasPairParams sp = LucasPairParams::shifted_power();
    CHECK(sp.rn(3) == AlgebraicInput(mpq_class(65, 8)));    // 2^3 + 2^-3
    CHECK(sp.sn(3) == AlgebraicInput(mpq_class(17, 2)));    // 2^3 + 4*2^-3
    CHECK(sp.delta() == 1);
    CHECK(sp.omega() == AlgebraicInput(4L));

    CHECK(LucasPairParams::preset_names().size() == 5);
    CHECK_THROWS_AS(LucasPairParams::from_preset("nope"), InputError);

    LucasPairParams back = LucasPairParams::from_json(fl.to_json());
    CHECK(back.rn(7) == fl.rn(7));
    CHECK(back.delta() == fl.delta());
}

TEST_CASE("number series: plain lacunary value against a direct partial sum") {
    PrecisionContext ctx(320, 40);
    LucasPairParams fl = LucasPairParams::fibonacci_lucas();
    NumberSeriesSpec q;
    q.family = NumberFamily::Q;
    q.k = 1;
    q.r = 2;
    q.mu = 1;
    NumberEvalResult res = eval_number_series(fl, q, ctx);

    // Power numerically from the embedded base: the exact field element
    // gamma1^(-2^h) suffers catastrophic a + b*sqrt(5) cancellation when
    // embedded at fixed precision, while the numeric power stays tight.
    BigComplex g1 = embed(fl.gamma1(), ctx);
    BigComplex manual = BigComplex::zero(320);
    for (long h = 0; h <= 9; ++h) {
        mpz_class e;
        mpz_ui_pow_ui(e.get_mpz_t(), 2, static_cast<unsigned long>(h));
        manual = add(manual, pow_mpz(g1, -e));
    }
    // gamma1^(-2^10) < 2^-700, far below the comparison threshold.
    CHECK(abs_distance_bound(res.value, manual).leq_pow2(-250));
    CHECK(res.skipped_terms == 0);
}

TEST_CASE("number series: vanishing terms are skipped and counted") {
    PrecisionContext ctx(256, 32);
    LucasPairParams fl = LucasPairParams::fibonacci_lucas();
    NumberSeriesSpec f;
    f.family = NumberFamily::R;
    f.k = 1;
    f.r = 2;
    f.ell = -1;  // h = 0 hits F_0 = 0
    NumberEvalResult res = eval_number_series(fl, f, ctx);
    CHECK(res.skipped_terms == 1);
    CHECK(res.terms_used >= 6);

    NumberSeriesSpec plain;
    plain.family = NumberFamily::R;
    NumberEvalResult ok = eval_number_series(fl, plain, ctx);
    CHECK(ok.skipped_terms == 0);
    // Sum of 1/F_(2^h) from h = 0: the classical telescoped value (7-sqrt5)/2.
    BigComplex oracle = embed(AlgebraicInput(QuadExt(mpq_class(7, 2), mpq_class(-1, 2), 5)), ctx);
    CHECK(abs_distance_bound(ok.value, oracle).leq_pow2(-200));
}

TEST_CASE("number series spec validation and JSON") {
    NumberSeriesSpec s;
    s.family = NumberFamily::S;
    s.k = 2;
    s.r = 3;
    s.ell = -2;
    NumberSeriesSpec back = NumberSeriesSpec::from_json(s.to_json());
    CHECK(back.to_json() == s.to_json());

    NumberSeriesSpec bad = s;
    bad.r = 1;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = s;
    bad.k = 0;
    CHECK_THROWS_AS(bad.validate(), InputError);
    bad = s;
    bad.start_index = -1;
    CHECK_THROWS_AS(bad.validate(), InputError);
    CHECK(family_from_name("Q") == NumberFamily::Q);
    CHECK_THROWS_AS(family_from_name("X"), InputError);
}

TEST_CASE("transform constants: reciprocal identity is exact in the field") {
    LucasPairParams fl = LucasPairParams::fibonacci_lucas();
    const AlgebraicInput one(1L);
    for (long k : {1L, 2L}) {
        for (long r : {2L, 3L}) {
            for (long ell : {-2L, 0L, 1L}) {
                for (long h = 0; h <= 5; ++h) {
                    mpz_class rh;
                    mpz_ui_pow_ui(rh.get_mpz_t(), static_cast<unsigned long>(r),
                                  static_cast<unsigned long>(h));
                    mpz_class n = k * rh + ell;
                    TransformConsts tc = transform_consts(fl, k, r, ell, h);
                    CHECK(tc.h_exact);
                    AlgebraicInput w = pow(fl.gamma1(), mpz_class(-k * rh));
                    AlgebraicInput w2 = mul(w, w);
                    // When a sequence term vanishes, so does the transform's
                    // denominator; both sides are undefined and skipped.
                    if (!fl.rn(n).is_zero())
                        CHECK(div(one, fl.rn(n)) == div(w, mul(tc.E, sub(w2, tc.e))));
                    if (!fl.sn(n).is_zero())
                        CHECK(div(one, fl.sn(n)) == div(w, mul(tc.F, sub(w2, tc.f))));
                }
            }
        }
    }
}

TEST_CASE("transform constants: stable form flags the h = 0 parity discrepancy") {
    LucasPairParams fl = LucasPairParams::fibonacci_lucas();
    TransformConsts stable = transform_consts(fl, 1, 2, 0);
    CHECK(!stable.h_exact);
    TransformConsts h0 = transform_consts(fl, 1, 2, 0, 0);
    // delta = -1, k odd, r even: the h = 0 constants genuinely differ.
    CHECK(!(h0.e == stable.e && h0.E == stable.E && h0.f == stable.f && h0.F == stable.F));
    TransformConsts h1 = transform_consts(fl, 1, 2, 0, 1);
    CHECK((h1.e == stable.e && h1.E == stable.E && h1.f == stable.f && h1.F == stable.F));
    // k even kills the parity issue.
    TransformConsts h0e = transform_consts(fl, 2, 2, 0, 0);
    TransformConsts ste = transform_consts(fl, 2, 2, 0);
    CHECK((h0e.e == ste.e && h0e.E == ste.E && h0e.f == ste.f && h0e.F == ste.F));
    // JSON report carries the magnitudes used by truncation planning.
    auto j = stable.to_json();
    CHECK(j.contains("E"));
    CHECK(j.contains("abs_e"));
}

TEST_CASE("bridge: number side equals the function side") {
    PrecisionContext ctx(256, 32);
    for (const char* preset : {"fibonacci-lucas", "fibonacci", "lucas"}) {
        LucasPairParams params = LucasPairParams::from_preset(preset);
        NumberSeriesSpec spec;
        spec.family = NumberFamily::R;
        spec.k = 1;
        spec.r = 2;
        spec.ell = 0;
        spec.start_index = 1;
        BridgeCheck bc = verify_bridge(params, spec, ctx);
        CHECK(contains_zero(bc.residual));
        CHECK(bc.residual.err().leq_pow2(-180));
        spec.family = NumberFamily::S;
        bc = verify_bridge(params, spec, ctx);
        CHECK(contains_zero(bc.residual));
    }
    // R/S require start_index >= 1 so one constant pair covers every term.
    NumberSeriesSpec zero_start;
    zero_start.family = NumberFamily::R;
    CHECK_THROWS_AS(verify_bridge(LucasPairParams::fibonacci_lucas(), zero_start, ctx),
                    InputError);
}

TEST_CASE("index-shift dependence residual") {
    PrecisionContext ctx(256, 32);
    LucasPairParams sp = LucasPairParams::shifted_power();
    for (auto [k, r, ell] : {std::tuple<long, long, long>{1, 2, 0},
                             std::tuple<long, long, long>{2, 2, 1},
                             std::tuple<long, long, long>{1, 3, 2}}) {
        BigComplex resid = remark6_residual(sp, k, r, ell, 1, ctx);
        CHECK(contains_zero(resid));
        CHECK(resid.err().leq_pow2(-190));
    }
    // Omega = 4 = (gamma1/gamma2)^1, so ell1 = 2 does not apply...
    CHECK_THROWS_AS(remark6_residual(sp, 1, 2, 0, 2, ctx), NotApplicableError);
    // ...and the Fibonacci-Lucas pair satisfies no power dependence at all.
    CHECK_THROWS_AS(remark6_residual(LucasPairParams::fibonacci_lucas(), 1, 2, 0, 1, ctx),
                    NotApplicableError);
}
