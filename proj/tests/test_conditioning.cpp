#include <doctest.h>

#include "nlm/errors.hpp"
#include "support.hpp"

using namespace nlmtest;

TEST_CASE("natural extension on the running example") {
    FixtureM1 m1;
    const auto joined = natural_extension(m1.model, m1.a_star, m1.b1.join(m1.b2));
    CHECK(joined.lower == q(13, 45));
    CHECK(joined.upper == q(43, 45));
    CHECK(joined.case_label == "interior");

    const auto at_b3 = natural_extension(m1.model, m1.a_star, m1.b3);
    CHECK(at_b3.lower == q(1, 6));
    CHECK(at_b3.upper == q(5, 6));
    CHECK(at_b3.case_label == "interior");

    const auto at_b1 = natural_extension(m1.model, m1.a_star, m1.b1);
    CHECK(at_b1.lower == q(2, 23));
    CHECK(at_b1.upper == q(1));
    CHECK(at_b1.case_label == "upper-one");

    const auto at_b2 = natural_extension(m1.model, m1.a_star, m1.b2);
    CHECK(at_b2.lower == q(0));
    CHECK(at_b2.upper == q(1));
    CHECK(at_b2.case_label == "lower-zero");

    CHECK_THROWS_AS(natural_extension(m1.model, m1.a_star, Event::empty(m1.space)), UsageError);

    // Conditioning refuses models that fail the coherence gate.
    const SpacePtr s3 = space_n(3);
    const NLModel broken(BaseProbability(s3, {q(1, 10), q(1, 10), q(8, 10)}),
                         {q(-1, 4), q(3, 2)});
    REQUIRE_FALSE(broken.is_coherent());
    CHECK_THROWS_AS(natural_extension(broken, Event::of_atoms(s3, {"w1"}), Event::full(s3)),
                    UnsupportedFamilyError);
    CHECK_THROWS_AS(regular_extension(broken, Event::of_atoms(s3, {"w1"}), Event::full(s3)),
                    UnsupportedFamilyError);
}

TEST_CASE("natural extension vacuous case") {
    FixtureM3 m3;
    REQUIRE(m3.model.lower(m3.given) == q(0));
    const auto cond = natural_extension(m3.model, m3.a, m3.given);
    CHECK(cond.lower == q(0));
    CHECK(cond.upper == q(1));
    CHECK(cond.case_label == "zero-vacuous");

    // Implication pins the value when lower(B) = 0.
    const auto implied = natural_extension(m3.model, m3.given.join(m3.a), m3.given);
    CHECK(implied.lower == q(1));
    CHECK(implied.upper == q(1));
    CHECK(implied.case_label == "zero-implied");
}

TEST_CASE("closed form agrees with the ratio form everywhere") {
    Rng rng(31);
    int done = 0;
    while (done < 80) {
        const std::size_t n = static_cast<std::size_t>(rand_int(rng, 2, 5));
        const SpacePtr space = space_n(n);
        NLModel model = (done % 4 == 3) ? random_hbm(rng, space) : random_vbm(rng, space);
        if (model.family() == Family::hbm && !model.is_coherent()) continue;
        ++done;
        const EventMask full = space->full_mask();
        for (EventMask bm = 1; bm <= full; ++bm) {
            const Event given(space, bm);
            if (model.lower(given).sign() <= 0) continue;
            for (EventMask am = 0; am <= full; ++am) {
                const Event a(space, am);
                const auto closed = natural_extension(model, a, given);
                const auto ratio = two_monotone_extension(model, a, given);
                CHECK(closed.lower == ratio.lower);
                CHECK(closed.upper == ratio.upper);
                // Conjugacy of the extensions.
                const auto conj = natural_extension(model, a.complement(), given);
                CHECK(closed.upper == Rational(1) - conj.lower);
                CHECK(closed.lower <= closed.upper);
            }
        }
    }
}

TEST_CASE("conditioned VBM parameters") {
    FixtureM1 m1;
    const NLModel at_b3 = condition_vbm(m1.model, m1.b3);
    CHECK(at_b3.params().a == q(-4, 9));
    CHECK(at_b3.params().b == q(11, 9));
    CHECK(at_b3.params().c() == q(2, 9));
    CHECK(at_b3.space()->atoms() == std::vector<std::string>{"w5", "w6"});
    CHECK(at_b3.p0().masses() == std::vector<Rational>{q(1, 2), q(1, 2)});

    const NLModel at_omega = condition_vbm(m1.model, Event::full(m1.space));
    CHECK(at_omega.params().a == m1.model.params().a);
    CHECK(at_omega.params().b == m1.model.params().b);
    CHECK(at_omega.space()->atoms() == m1.space->atoms());

    FixtureM3 m3;
    const NLModel vac = condition_vbm(m3.model, m3.given);
    CHECK(recognize_submodel(vac).kind == SubmodelTag::Kind::vacuous);

    const SpacePtr s2 = space_n(2);
    const NLModel hbm(BaseProbability(s2, {q(1), q(0)}), {q(-1, 4), q(3, 2)});
    CHECK_THROWS_AS(condition_vbm(hbm, Event::full(s2)), UnsupportedFamilyError);
}

TEST_CASE("conditioning is stable and idempotent on random VBMs") {
    Rng rng(37);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rand_int(rng, 2, 5));
        const SpacePtr space = space_n(n);
        const NLModel model = random_vbm(rng, space);
        const EventMask full = space->full_mask();
        for (EventMask bm = 1; bm <= full; ++bm) {
            const Event given(space, bm);
            if (model.lower(given).sign() <= 0) continue;
            const NLModel conditioned = condition_vbm(model, given);
            REQUIRE(conditioned.family() == Family::vbm);
            // Parameter guarantees hold whenever the affine branch applies;
            // a vacuous model conditioned on Ω comes back vacuous.
            if ((model.params().b * model.p0().of(given) + model.params().a).sign() > 0) {
                CHECK(conditioned.params().b.sign() > 0);
                CHECK(conditioned.params().a.sign() <= 0);
                CHECK((conditioned.params().a + conditioned.params().b).sign() > 0);
                CHECK(conditioned.params().a + conditioned.params().b <= Rational(1));
            } else {
                CHECK(recognize_submodel(conditioned).kind == SubmodelTag::Kind::vacuous);
            }
            // Pointwise agreement with the natural extension on every event.
            for (EventMask am = 0; am <= full; ++am) {
                const Event a(space, am);
                const auto direct = natural_extension(model, a, given);
                const Event restricted = restrict_to_conditioned_space(conditioned, a, given);
                CHECK(conditioned.lower(restricted) == direct.lower);
                CHECK(conditioned.upper(restricted) == direct.upper);
            }
            // Conditioning the conditioned model on its sure event changes nothing.
            const NLModel again = condition_vbm(conditioned, Event::full(conditioned.space()));
            CHECK(again.params().a == conditioned.params().a);
            CHECK(again.params().b == conditioned.params().b);
            CHECK(again.p0().masses() == conditioned.p0().masses());
        }
    }
}

TEST_CASE("submodel stability under conditioning") {
    const SpacePtr s4 = space_n(4);
    const BaseProbability p0(s4, {q(1, 8), q(3, 8), q(1, 4), q(1, 4)});
    const Event given = Event::of_atoms(s4, {"w1", "w2"});  // P0(B) = 1/2

    const NLModel pmm = make_submodel({SubmodelTag::Kind::pmm, q(1, 5)}, p0);
    REQUIRE(pmm.lower(given).sign() > 0);
    const SubmodelTag pmm_tag = submodel_stability(pmm, given);
    CHECK(pmm_tag.kind == SubmodelTag::Kind::pmm);
    // delta_B from the conditioned coefficients: b_B - 1.
    const NLModel pmm_cond = condition_vbm(pmm, given);
    CHECK(pmm_cond.params().c() == q(0));
    CHECK(pmm_tag.parameter == pmm_cond.params().b - Rational(1));

    const NLModel eps = make_submodel({SubmodelTag::Kind::epsilon_contamination, q(1, 10)}, p0);
    CHECK(submodel_stability(eps, given).kind == SubmodelTag::Kind::epsilon_contamination);
    CHECK(condition_vbm(eps, given).params().a == q(0));

    const NLModel tvm = make_submodel({SubmodelTag::Kind::tvm, q(-1, 4)}, p0);
    REQUIRE(tvm.lower(given).sign() > 0);
    CHECK(submodel_stability(tvm, given).kind == SubmodelTag::Kind::tvm);
    CHECK(condition_vbm(tvm, given).params().b == q(1));
}

TEST_CASE("regular extension") {
    FixtureM3 m3;
    const auto reg = regular_extension(m3.model, m3.a, m3.given);
    CHECK(reg.lower == q(1));
    CHECK(reg.upper == q(1));
    const auto nat = natural_extension(m3.model, m3.a, m3.given);
    CHECK(nat.lower == q(0));
    CHECK(regular_differs(m3.model, m3.a, m3.given));

    // With lower(B) > 0 the two extensions coincide.
    FixtureM1 m1;
    for (const auto& block : m1.b_star.blocks()) {
        REQUIRE(m1.model.lower(block).sign() > 0);
        const EventMask full = m1.space->full_mask();
        for (EventMask am = 0; am <= full; am += 7) {
            const Event a(m1.space, am);
            const auto r = regular_extension(m1.model, a, block);
            const auto n = natural_extension(m1.model, a, block);
            CHECK(r.lower == n.lower);
            CHECK(r.upper == n.upper);
            CHECK_FALSE(regular_differs(m1.model, a, block));
        }
    }

    // B => A with lower(B) = 0 < upper(B): both extensions give 1.
    const Event implied = m3.given.join(m3.a);
    CHECK(regular_extension(m3.model, implied, m3.given).lower == q(1));
    CHECK(natural_extension(m3.model, implied, m3.given).lower == q(1));
    CHECK_FALSE(regular_differs(m3.model, implied, m3.given));
}

TEST_CASE("regular extension dominance and exact divergence set") {
    Rng rng(41);
    for (int trial = 0; trial < 40; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rand_int(rng, 2, 4));
        const SpacePtr space = space_n(n);
        const NLModel model = random_vbm(rng, space);  // zero masses allowed
        const EventMask full = space->full_mask();
        for (EventMask bm = 1; bm <= full; ++bm) {
            for (EventMask am = 0; am <= full; ++am) {
                const Event a(space, am), given(space, bm);
                const auto reg = regular_extension(model, a, given);
                const auto nat = natural_extension(model, a, given);
                CHECK(reg.lower >= nat.lower);
                const bool diverges = regular_differs(model, a, given);
                CHECK(diverges == (reg.lower != nat.lower));
                if (diverges) {
                    CHECK(reg.lower == q(1));
                    CHECK(nat.lower == q(0));
                }
            }
        }
    }
}

TEST_CASE("PMM witness scan") {
    FixtureM3 m3;
    const auto witness = vbm_pmm_witness(m3.model);
    REQUIRE(witness.has_value());
    CHECK(*witness == SubmodelTag{SubmodelTag::Kind::pmm, q(1, 5)});

    FixtureM1 m1;
    CHECK_FALSE(vbm_pmm_witness(m1.model).has_value());  // c = 1/10 != 0

    // Contamination model with strictly positive masses never diverges.
    FixtureM2 m2;
    CHECK_FALSE(vbm_pmm_witness(m2.model).has_value());

    // PMM with everywhere-positive P0 has no zero-upper event either.
    const SpacePtr s3 = space_n(3);
    const NLModel pmm = make_submodel({SubmodelTag::Kind::pmm, q(1, 5)},
                                      BaseProbability(s3, {q(1, 3), q(1, 3), q(1, 3)}));
    CHECK_FALSE(vbm_pmm_witness(pmm).has_value());
}
