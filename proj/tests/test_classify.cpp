// Classifier tests: power membership, hypothesis diagnostics, and the three
// case classifiers, each pinned against hand-computed witnesses.

#include <doctest.h>

#include <string>
#include <vector>

#include "mahler/classify.hpp"
#include "mahler/errors.hpp"

using namespace mahler;

namespace {

PrecisionContext ctx192() { return PrecisionContext(192, 32); }

const CaseWitness& single_case(const CaseReport& rep) {
    REQUIRE(rep.cases.size() == 1);
    return rep.cases.front();
}

std::string witness_value(const CaseWitness& w, const std::string& key) {
    for (const auto& [k, v] : w.witnesses)
        if (k == key) return v;
    FAIL("missing witness key: ", key);
    return {};
}

}  // namespace

TEST_CASE("power membership on exact inputs") {
    PrecisionContext ctx = ctx192();
    const AlgebraicInput four(4L);

    SUBCASE("positive and negative integer exponents") {
        MembershipResult m = power_membership(AlgebraicInput(16384L), four, ctx);
        CHECK(m.member);
        CHECK(m.exponent == 7);

        m = power_membership(AlgebraicInput(mpq_class(1, 64)), four, ctx);
        CHECK(m.member);
        CHECK(m.exponent == -3);

        // Shrinking base: 4^5 against base 1/4 isolates exponent -5.
        m = power_membership(AlgebraicInput(1024L), AlgebraicInput(mpq_class(1, 4)), ctx);
        CHECK(m.member);
        CHECK(m.exponent == -5);
    }

    SUBCASE("non-members are rejected") {
        CHECK_FALSE(power_membership(AlgebraicInput(17L), four, ctx).member);
        CHECK_FALSE(power_membership(AlgebraicInput(mpq_class(3, 5)), four, ctx).member);
    }

    SUBCASE("rational base") {
        AlgebraicInput base(mpq_class(3, 2));
        MembershipResult m = power_membership(AlgebraicInput(mpq_class(243, 32)), base, ctx);
        CHECK(m.member);
        CHECK(m.exponent == 5);
    }

    SUBCASE("quadratic base") {
        AlgebraicInput phi(QuadExt(mpq_class(1, 2), mpq_class(1, 2), 5));
        MembershipResult m = power_membership(pow(phi, mpz_class(9)), phi, ctx);
        CHECK(m.member);
        CHECK(m.exponent == 9);
        // 2*phi is between phi^2 and phi^3 and equals neither.
        CHECK_FALSE(power_membership(mul(AlgebraicInput(2L), phi), phi, ctx).member);
    }

    SUBCASE("unit-modulus base is ambiguous") {
        AlgebraicInput zeta6 = *exact_root_of_unity(6, 1);
        CHECK_THROWS_AS(power_membership(AlgebraicInput(1L), zeta6, ctx), AmbiguousError);
        CHECK_THROWS_AS(power_membership(AlgebraicInput(1L), AlgebraicInput(-1L), ctx),
                        AmbiguousError);
    }

    SUBCASE("zero operands are out of domain") {
        CHECK_THROWS_AS(power_membership(AlgebraicInput(0L), four, ctx), DomainError);
        CHECK_THROWS_AS(power_membership(four, AlgebraicInput(0L), ctx), DomainError);
    }
}

TEST_CASE("power membership on numeric operands") {
    PrecisionContext ctx = ctx192();
    BigComplex phi = embed(AlgebraicInput(QuadExt(mpq_class(1, 2), mpq_class(1, 2), 5)), ctx);

    MembershipResult m = power_membership_numeric(pow_mpz(phi, mpz_class(5)), phi, ctx);
    CHECK(m.member);
    CHECK(m.exponent == 5);

    m = power_membership_numeric(embed(AlgebraicInput(3L), ctx), embed(AlgebraicInput(2L), ctx),
                                 ctx);
    CHECK_FALSE(m.member);

    // A base whose interval straddles |q| = 1 cannot anchor the ladder.
    CHECK_THROWS_AS(
        power_membership_numeric(embed(AlgebraicInput(2L), ctx), root_of_unity_numeric(6, 1, ctx),
                                 ctx),
        AmbiguousError);

    // A target interval containing zero is rejected.
    BigComplex one = embed(AlgebraicInput(1L), ctx);
    CHECK_THROWS_AS(power_membership_numeric(sub(one, one), embed(AlgebraicInput(2L), ctx), ctx),
                    DomainError);
}

TEST_CASE("exact modulus helpers") {
    AlgebraicInput zeta3 = *exact_root_of_unity(3, 1);
    CHECK(modulus_sq(zeta3) == AlgebraicInput(1L));
    CHECK(modulus_sq(AlgebraicInput(mpq_class(-3, 2))) == AlgebraicInput(mpq_class(9, 4)));

    // Real quadratic field: |x|^2 is just x^2.
    AlgebraicInput phi(QuadExt(mpq_class(1, 2), mpq_class(1, 2), 5));
    CHECK(modulus_sq(phi) == add(phi, AlgebraicInput(1L)));

    CHECK(unit_modulus_exact(*exact_root_of_unity(6, 1)));
    CHECK(unit_modulus_exact(zeta3));
    CHECK(unit_modulus_exact(AlgebraicInput(1L)));
    CHECK(unit_modulus_exact(AlgebraicInput(-1L)));
    CHECK_FALSE(unit_modulus_exact(AlgebraicInput(2L)));
    CHECK_FALSE(unit_modulus_exact(phi));
}

TEST_CASE("pole hypothesis diagnostics") {
    PrecisionContext ctx = ctx192();
    const AlgebraicInput one(1L), minus_one(-1L), two(2L);

    SUBCASE("clean pair configuration passes") {
        HypothesisDiagnostics d = check_lemma2_hypotheses({one, two}, {minus_one, neg(two)},
                                                          HypothesisMode::lemma2, ctx);
        CHECK(d.passed());
        CHECK(d.summary() == "errors: none");
        nlohmann::ordered_json j = d.to_json();
        CHECK(j.at("passed").get<bool>());
        CHECK(j.at("violations").empty());
        CHECK(j.at("modulus_collisions").empty());
    }

    SUBCASE("value-level violations are named") {
        HypothesisDiagnostics d =
            check_lemma2_hypotheses({one}, {one}, HypothesisMode::lemma2, ctx);
        CHECK_FALSE(d.passed());
        REQUIRE(d.violations.size() == 1);
        CHECK(d.violations[0] == "beta_0 equals alpha_0");

        d = check_lemma2_hypotheses({two}, {neg(two)}, HypothesisMode::lemma2, ctx);
        CHECK_FALSE(d.passed());
        CHECK(d.violations[0] == "|alpha_0| != 1");

        d = check_lemma2_hypotheses({one}, {two}, HypothesisMode::lemma2, ctx);
        CHECK_FALSE(d.passed());

        d = check_lemma2_hypotheses({one, AlgebraicInput(0L)}, {minus_one, two},
                                    HypothesisMode::lemma2, ctx);
        CHECK_FALSE(d.passed());
        CHECK(d.violations[0] == "alpha_1 is zero");
    }

    SUBCASE("modulus collisions are separated from violations") {
        HypothesisDiagnostics d = check_lemma2_hypotheses({one, minus_one}, {minus_one, one},
                                                          HypothesisMode::lemma2, ctx);
        CHECK(d.violations.empty());
        REQUIRE(d.modulus_collisions.size() == 1);
        CHECK(d.modulus_collisions[0] == "|alpha_0| = |alpha_1|");
        CHECK_FALSE(d.passed());
    }

    SUBCASE("distinct-moduli mode compares across the lists") {
        HypothesisDiagnostics d =
            check_lemma2_hypotheses({two}, {AlgebraicInput(3L)}, HypothesisMode::remark1, ctx);
        CHECK(d.passed());

        d = check_lemma2_hypotheses({two}, {neg(two)}, HypothesisMode::remark1, ctx);
        CHECK_FALSE(d.passed());
        REQUIRE(d.modulus_collisions.size() == 1);
        CHECK(d.modulus_collisions[0] == "|alpha_0| = |beta_0|");
    }

    SUBCASE("input validation") {
        CHECK_THROWS_AS(check_lemma2_hypotheses({}, {}, HypothesisMode::lemma2, ctx), InputError);
        CHECK_THROWS_AS(check_lemma2_hypotheses({one}, {one, two}, HypothesisMode::lemma2, ctx),
                        InputError);
    }
}

TEST_CASE("combined-series rationality classifier at radix 2") {
    PrecisionContext ctx = ctx192();
    const AlgebraicInput one(1L), minus_one(-1L), zero(0L);
    const AlgebraicInput z2 = *exact_root_of_unity(6, 2);
    const AlgebraicInput z4 = *exact_root_of_unity(6, 4);
    const AlgebraicInput zeta = *exact_root_of_unity(6, 1);

    struct Config {
        int expected_case;
        AlgebraicInput a, alpha0, beta0, u0, v0;
    };
    // The first two rows carry an inert pole on the inactive side so the
    // pair hypotheses (beta_0 != alpha_0, both nonzero) stay satisfied.
    const std::vector<Config> table = {
        {1, one, one, minus_one, one, zero},
        {2, one, minus_one, one, zero, one},
        {3, one, z2, z4, z4, z2},
        {4, minus_one, z2, z4, one, zeta},
        {5, one, z4, z2, neg(zeta), one},
        {6, minus_one, z4, z2, zeta, one},
    };

    for (const Config& cfg : table) {
        CAPTURE(cfg.expected_case);
        CaseReport rep = classify_lemma3(2, cfg.a, cfg.alpha0, cfg.beta0, {zero}, cfg.u0, cfg.v0,
                                         ctx);
        CHECK(rep.theorem == "L3");
        CHECK_FALSE(rep.generic);
        CHECK(rep.verdict == "exceptional");
        const CaseWitness& w = single_case(rep);
        CHECK(w.case_id == cfg.expected_case);
        CHECK_FALSE(witness_value(w, "relation").empty());
        nlohmann::ordered_json j = rep.to_json();
        CHECK(j.at("cases").at(0).at("case").get<int>() == cfg.expected_case);
    }

    SUBCASE("perturbed configurations fall back to generic") {
        // Flipping the sign of a breaks rows 1 and 3; shifting u0 breaks row 4.
        CaseReport rep = classify_lemma3(2, minus_one, one, minus_one, {zero}, one, zero, ctx);
        CHECK(rep.generic);
        CHECK(rep.verdict == "generic");

        rep = classify_lemma3(2, minus_one, z2, z4, {zero}, one, add(zeta, one), ctx);
        CHECK(rep.generic);
    }

    SUBCASE("a nonzero power-part coefficient is decisive") {
        CaseReport rep = classify_lemma3(2, one, one, minus_one, {one}, one, zero, ctx);
        CHECK(rep.generic);
        REQUIRE_FALSE(rep.notes.empty());
        CHECK(rep.notes[0].find("power-part coefficient") != std::string::npos);
    }

    SUBCASE("undetermined parameter ranges") {
        CaseReport rep = classify_lemma3(2, AlgebraicInput(2L), one, minus_one, {zero}, one, zero,
                                         ctx);
        CHECK(rep.verdict == "undetermined");
        rep = classify_lemma3(2, AlgebraicInput(QuadExt(mpq_class(0), mpq_class(1), 2)), one,
                              minus_one, {zero}, one, zero, ctx);
        CHECK(rep.verdict == "undetermined");
    }
}

TEST_CASE("combined-series rationality classifier at higher radices") {
    PrecisionContext ctx = ctx192();
    const AlgebraicInput one(1L), minus_one(-1L), zero(0L);

    CaseReport rep = classify_lemma3(3, one, one, minus_one, {zero, zero}, one, zero, ctx);
    CHECK(rep.generic);
    CHECK(rep.verdict == "generic");

    rep = classify_lemma3(3, AlgebraicInput(3L), one, minus_one, {zero, zero}, one, zero, ctx);
    CHECK(rep.verdict == "undetermined");

    rep = classify_lemma3(4, one, one, minus_one, {zero, zero, zero}, one, zero, ctx);
    CHECK(rep.generic);
    CHECK(rep.verdict == "generic");

    rep = classify_lemma3(5, one, one, minus_one, {one, one, one, one}, zero, zero, ctx);
    CHECK(rep.generic);
}

TEST_CASE("combined-series classifier validates its hypotheses") {
    PrecisionContext ctx = ctx192();
    const AlgebraicInput one(1L), minus_one(-1L), zero(0L), two(2L);

    CHECK_THROWS_AS(classify_lemma3(1, one, one, minus_one, {}, one, zero, ctx), InputError);
    CHECK_THROWS_AS(classify_lemma3(2, one, one, minus_one, {zero, zero}, one, zero, ctx),
                    InputError);
    CHECK_THROWS_AS(classify_lemma3(2, zero, one, minus_one, {zero}, one, zero, ctx),
                    InvalidHypothesesError);
    CHECK_THROWS_AS(classify_lemma3(2, one, two, minus_one, {zero}, one, zero, ctx),
                    InvalidHypothesesError);
    CHECK_THROWS_AS(classify_lemma3(2, one, one, one, {zero}, one, zero, ctx),
                    InvalidHypothesesError);
    CHECK_THROWS_AS(classify_lemma3(2, one, one, two, {zero}, one, zero, ctx),
                    InvalidHypothesesError);
    CHECK_THROWS_AS(classify_lemma3(2, one, one, minus_one, {zero}, zero, zero, ctx),
                    InvalidHypothesesError);
}

TEST_CASE("recurrence-pair classifier") {
    PrecisionContext ctx(256, 48);
    PeriodicSeq ones({1});

    SUBCASE("vanishing-term removal for the paired preset") {
        LucasPairParams p = LucasPairParams::fibonacci_lucas();
        CaseReport rep = classify_thm2(p, ones, ones, 16, ctx);
        CHECK(rep.theorem == "T1");
        CHECK_FALSE(rep.generic);
        CHECK(rep.verdict == "exceptional");
        REQUIRE(rep.removals.size() == 1);
        CHECK(rep.removals[0] == "F_(0,2)");
        const CaseWitness& w = single_case(rep);
        CHECK(w.case_id == 1);
        CHECK(witness_value(w, "l0") == "0");
        CHECK(witness_value(w, "zero_term") == "F_(0) = 0");

        nlohmann::ordered_json j = rep.to_json();
        CHECK(j.at("theorem") == "T1");
        CHECK(j.at("cases").at(0).at("case").get<int>() == 1);
        CHECK(j.at("cases").at(0).at("witnesses").at("l0") == "0");
    }

    SUBCASE("non-constant coefficients suppress the removal") {
        LucasPairParams p = LucasPairParams::fibonacci_lucas();
        CaseReport rep = classify_thm2(p, PeriodicSeq({1, 2}), ones, 16, ctx);
        CHECK(rep.generic);
        CHECK(rep.verdict == "generic");
        CHECK(rep.removals.empty());
        bool noted = false;
        for (const auto& n : rep.notes)
            noted = noted || n.find("not constant") != std::string::npos;
        CHECK(noted);
    }

    SUBCASE("cube-phase resonance") {
        LucasPairParams p = LucasPairParams::cubic_twist();
        CaseReport rep = classify_thm2(p, ones, ones, 8, ctx);
        CHECK(rep.theorem == "T2");
        CHECK_FALSE(rep.generic);
        const CaseWitness& w = single_case(rep);
        CHECK(w.case_id == 3);
        CHECK(witness_value(w, "l0") == "0");
        CHECK(witness_value(w, "theta") == "e^(2*pi*i/3)");
        REQUIRE(rep.removals.size() == 1);
        CHECK(rep.removals[0] == "R_(0,2^j) for all j >= 1");
    }

    SUBCASE("shift-dependent pair is flagged as not covered") {
        LucasPairParams p = LucasPairParams::shifted_power();
        CaseReport rep = classify_thm2(p, ones, ones, 8, ctx);
        CHECK(rep.verdict == "not-covered");
        CHECK(rep.cases.empty());
        bool noted = false;
        for (const auto& n : rep.notes)
            noted = noted || n.find("collapses to one family") != std::string::npos;
        CHECK(noted);
    }

    SUBCASE("input validation") {
        LucasPairParams p = LucasPairParams::fibonacci_lucas();
        CHECK_THROWS_AS(classify_thm2(p, ones, ones, -1, ctx), InputError);
        CHECK_THROWS_AS(classify_thm2(p, ones, ones, 10001, ctx), InputError);
        CHECK_THROWS_AS(classify_thm2(p, PeriodicSeq({0, 0}), ones, 8, ctx), InputError);
        CHECK_THROWS_AS(classify_thm2(p, ones, PeriodicSeq({0}), 8, ctx), InputError);
    }
}

TEST_CASE("periodic-coefficient pole classifier") {
    PrecisionContext ctx = ctx192();
    PeriodicSeq ones({1});
    const AlgebraicInput one(1L), minus_one(-1L);
    const AlgebraicInput theta = *exact_root_of_unity(3, 1);
    const AlgebraicInput theta_bar = *exact_root_of_unity(3, 2);

    SUBCASE("constant-coefficient removals") {
        CaseReport rep = classify_thm3({one}, {minus_one}, ones, ones, HypothesisMode::lemma2,
                                       ctx);
        CHECK(rep.theorem == "T3");
        CHECK(rep.verdict == "exceptional");
        REQUIRE(rep.removals.size() == 1);
        CHECK(rep.removals[0] == "Phi_(0,2)");
        CHECK(single_case(rep).case_id == 1);

        rep = classify_thm3({minus_one}, {one}, ones, ones, HypothesisMode::lemma2, ctx);
        REQUIRE(rep.removals.size() == 1);
        CHECK(rep.removals[0] == "Lambda_(0,2)");
        CHECK(single_case(rep).case_id == 2);

        // A non-constant stream on the firing side suppresses the case.
        rep = classify_thm3({one}, {minus_one}, PeriodicSeq({1, 2}), ones,
                            HypothesisMode::lemma2, ctx);
        CHECK(rep.generic);
    }

    SUBCASE("cube-phase pole patterns") {
        CaseReport rep = classify_thm3({theta}, {theta_bar}, ones, ones, HypothesisMode::lemma2,
                                       ctx);
        const CaseWitness& w3 = single_case(rep);
        CHECK(w3.case_id == 3);
        CHECK(witness_value(w3, "alpha0") == "e^(2*pi*i/3)");
        CHECK(witness_value(w3, "beta0") == "alpha0^2");
        REQUIRE(rep.removals.size() == 1);
        CHECK(rep.removals[0] == "Phi_(0,2^j) for all j >= 1");

        rep = classify_thm3({theta_bar}, {theta}, ones, ones, HypothesisMode::lemma2, ctx);
        CHECK(single_case(rep).case_id == 4);
        CHECK(rep.removals[0] == "Lambda_(0,2^j) for all j >= 1");
    }

    SUBCASE("distinct-moduli mode structurally excludes the cube-phase cases") {
        CaseReport rep = classify_thm3({theta}, {theta_bar}, ones, ones, HypothesisMode::remark1,
                                       ctx);
        CHECK(rep.generic);
        CHECK(rep.cases.empty());
        bool excluded = false, collision = false;
        for (const auto& n : rep.notes) {
            excluded = excluded || n.find("structurally excluded") != std::string::npos;
            collision = collision || n.find("modulus collision") != std::string::npos;
        }
        CHECK(excluded);
        CHECK(collision);

        // Separated moduli in the same mode: nothing fires.
        rep = classify_thm3({AlgebraicInput(2L)}, {AlgebraicInput(3L)}, ones, ones,
                            HypothesisMode::remark1, ctx);
        CHECK(rep.generic);
        CHECK(rep.verdict == "generic");
    }

    SUBCASE("hypothesis failures and bad inputs throw") {
        CHECK_THROWS_AS(classify_thm3({AlgebraicInput(2L)}, {AlgebraicInput(-2L)}, ones, ones,
                                      HypothesisMode::lemma2, ctx),
                        InvalidHypothesesError);
        CHECK_THROWS_AS(classify_thm3({one}, {one}, ones, ones, HypothesisMode::lemma2, ctx),
                        InvalidHypothesesError);
        CHECK_THROWS_AS(classify_thm3({one}, {minus_one}, PeriodicSeq({0}), ones,
                                      HypothesisMode::lemma2, ctx),
                        InputError);
    }
}
