#include <doctest.h>

#include <atomic>
#include <thread>

#include "nlm/errors.hpp"
#include "support.hpp"

using namespace nlmtest;

TEST_CASE("family classification") {
    CHECK(classify({q(-1, 5), q(11, 10)}) == Family::vbm);
    CHECK(classify({q(0), q(1)}) == Family::vbm);  // degenerate: lower = upper = P0
    CHECK(classify({q(-1, 4), q(3, 2)}) == Family::hbm);  // a+b = 5/4 > 1, b+2a = 1
    CHECK(classify({q(1, 10), q(1)}) == Family::other);   // a > 0
    CHECK(classify({q(-1, 4), q(2)}) == Family::other);   // b+2a = 3/2 > 1
    CHECK_THROWS_AS(classify({q(0), q(0)}), InvalidParameterError);
    CHECK_THROWS_AS(classify({q(0), q(-1)}), InvalidParameterError);
}

TEST_CASE("lower and upper on the running example") {
    FixtureM1 m1;
    CHECK(m1.model.lower(m1.a_star) == q(81, 200));
    CHECK(m1.model.upper(m1.a_star) == q(141, 200));
    CHECK(m1.model.lower(Event::of_atoms(m1.space, {"w2"})) == q(1, 50));
    CHECK(m1.model.upper(Event::of_atoms(m1.space, {"w1"})) == q(21, 100));
    CHECK(m1.model.lower(Event::empty(m1.space)) == q(0));
    CHECK(m1.model.upper(Event::empty(m1.space)) == q(0));
    CHECK(m1.model.lower(Event::full(m1.space)) == q(1));
    CHECK(m1.model.upper(Event::full(m1.space)) == q(1));
}

TEST_CASE("vacuous model") {
    const SpacePtr space = space_n(3);
    const NLModel vac = make_submodel({SubmodelTag::Kind::vacuous, q(0)},
                                      BaseProbability(space, {q(1, 3), q(1, 3), q(1, 3)}));
    for (EventMask m = 1; m < space->full_mask(); ++m) {
        CHECK(vac.lower_mask(m) == q(0));
        CHECK(vac.upper_mask(m) == q(1));
    }
}

TEST_CASE("coherence check") {
    FixtureM1 m1;
    CHECK(check_coherence(m1.model).ok);

    const SpacePtr s2 = space_n(2);
    const NLModel concentrated(BaseProbability(s2, {q(1), q(0)}), {q(-1, 4), q(3, 2)});
    REQUIRE(concentrated.family() == Family::hbm);
    CHECK(check_coherence(concentrated).ok);
    CHECK(concentrated.is_coherent());

    // Subadditivity violated by construction: upper(w1) = upper(w2) = 0
    // while upper(w1|w2) > 0.
    const SpacePtr s3 = space_n(3);
    const NLModel broken(BaseProbability(s3, {q(1, 10), q(1, 10), q(8, 10)}),
                         {q(-1, 4), q(3, 2)});
    REQUIRE(broken.family() == Family::hbm);
    CHECK(broken.upper(Event::of_atoms(s3, {"w1"})) == q(0));
    CHECK(broken.upper(Event::of_atoms(s3, {"w2"})) == q(0));
    CHECK(broken.upper(Event::of_atoms(s3, {"w1", "w2"})) == q(1, 20));
    const auto verdict = check_coherence(broken);
    REQUIRE_FALSE(verdict.ok);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->first == Event::of_atoms(s3, {"w1"}));
    CHECK(verdict.witness->second == Event::of_atoms(s3, {"w2"}));

    const NLModel other(BaseProbability(s2, {q(1, 2), q(1, 2)}), {q(1, 10), q(1)});
    CHECK_THROWS_AS(check_coherence(other), UnsupportedFamilyError);
}

TEST_CASE("2-monotonicity scan") {
    FixtureM1 m1;
    CHECK(check_two_monotone(m1.model).ok);

    const SpacePtr s2 = space_n(2);
    const NLModel coherent_hbm(BaseProbability(s2, {q(1), q(0)}), {q(-1, 4), q(3, 2)});
    CHECK(check_two_monotone(coherent_hbm).ok);

    TwoMonotoneOptions tight;
    tight.max_atoms = 4;
    CHECK_THROWS_AS(check_two_monotone(m1.model, tight), CapacityError);

    // The incoherent HBM from the coherence test also fails the dual
    // 2-alternating scan, with the first violating pair as witness.
    const SpacePtr s3 = space_n(3);
    const NLModel broken(BaseProbability(s3, {q(1, 10), q(1, 10), q(8, 10)}),
                         {q(-1, 4), q(3, 2)});
    const auto verdict = check_two_monotone(broken);
    REQUIRE_FALSE(verdict.ok);
    REQUIRE(verdict.witness.has_value());
    CHECK(verdict.witness->first == Event::of_atoms(s3, {"w1"}));
    CHECK(verdict.witness->second == Event::of_atoms(s3, {"w2"}));
}

TEST_CASE("family 'other' models evaluate but refuse coherence-bound operations") {
    const SpacePtr s3 = space_n(3);
    const NLModel other(BaseProbability(s3, {q(1, 2), q(1, 4), q(1, 4)}), {q(1, 10), q(1)});
    REQUIRE(other.family() == Family::other);
    CHECK(other.lower(Event::of_atoms(s3, {"w1"})) == q(3, 5));  // clamped affine value
    CHECK(other.upper(Event::of_atoms(s3, {"w1"})) == q(2, 5));  // no coherence promised
    CHECK_THROWS_AS(other.is_coherent(), UnsupportedFamilyError);
    CHECK_THROWS_AS(check_coherence(other), UnsupportedFamilyError);
    CHECK_THROWS_AS(nlm::natural_extension(other, Event::of_atoms(s3, {"w1"}), Event::full(s3)),
                    UnsupportedFamilyError);
}

TEST_CASE("submodel construction and recognition") {
    const SpacePtr s3 = space_n(3);
    const BaseProbability p0(s3, {q(1, 10), q(0), q(9, 10)});

    const NLModel pmm = make_submodel({SubmodelTag::Kind::pmm, q(1, 5)}, p0);
    CHECK(pmm.params().a == q(-1, 5));
    CHECK(pmm.params().b == q(6, 5));
    CHECK(pmm.params().c() == q(0));
    CHECK(recognize_submodel(pmm) == SubmodelTag{SubmodelTag::Kind::pmm, q(1, 5)});

    const NLModel no_contamination =
        make_submodel({SubmodelTag::Kind::epsilon_contamination, q(0)}, p0);
    for (EventMask m = 0; m <= s3->full_mask(); ++m) {
        CHECK(no_contamination.lower_mask(m) == p0.of_mask(m));
        CHECK(no_contamination.upper_mask(m) == p0.of_mask(m));
    }

    const NLModel tvm = make_submodel({SubmodelTag::Kind::tvm, q(-1, 4)}, p0);
    CHECK(recognize_submodel(tvm) == SubmodelTag{SubmodelTag::Kind::tvm, q(-1, 4)});
    CHECK(tvm.params().c() == q(1, 4));

    const NLModel vac = make_submodel({SubmodelTag::Kind::vacuous, q(0)}, p0);
    CHECK(recognize_submodel(vac).kind == SubmodelTag::Kind::vacuous);

    FixtureM1 m1;
    CHECK(recognize_submodel(m1.model).kind == SubmodelTag::Kind::generic);

    CHECK_THROWS_AS(make_submodel({SubmodelTag::Kind::epsilon_contamination, q(1)}, p0),
                    InvalidParameterError);
    CHECK_THROWS_AS(make_submodel({SubmodelTag::Kind::pmm, q(0)}, p0), InvalidParameterError);
    CHECK_THROWS_AS(make_submodel({SubmodelTag::Kind::tvm, q(-1)}, p0), InvalidParameterError);
}

TEST_CASE("non-correlation") {
    FixtureM2 m2;
    CHECK(non_correlation(m2.model.p0(), m2.a, Event::of_atoms(m2.space, {"w1", "w3"})));

    FixtureM1 m1;
    CHECK_FALSE(non_correlation(m1.model.p0(), m1.a_star, m1.b1));
    CHECK(non_correlation(m1.model.p0(), m1.a_star, Event::full(m1.space)));
}

TEST_CASE("random VBMs: conjugacy, monotonicity, sandwich, coherence") {
    Rng rng(23);
    for (int trial = 0; trial < 60; ++trial) {
        const std::size_t n = static_cast<std::size_t>(rand_int(rng, 2, 5));
        const SpacePtr space = space_n(n);
        const NLModel model = random_vbm(rng, space);
        REQUIRE(model.family() == Family::vbm);
        CHECK(check_coherence(model).ok);
        CHECK(check_two_monotone(model).ok);

        const EventMask full = space->full_mask();
        for (EventMask a = 0; a <= full; ++a) {
            // Conjugacy and the VBM sandwich.
            CHECK(model.upper_mask(a) == Rational(1) - model.lower_mask(full & ~a));
            CHECK(model.lower_mask(a) <= model.p0().of_mask(a));
            CHECK(model.p0().of_mask(a) <= model.upper_mask(a));
            // Monotonicity along single-atom extensions.
            for (std::size_t i = 0; i < n; ++i) {
                const EventMask b = a | (EventMask{1} << i);
                CHECK(model.lower_mask(a) <= model.lower_mask(b));
                CHECK(model.upper_mask(a) <= model.upper_mask(b));
            }
        }
    }
}

TEST_CASE("evaluation rejects events from other spaces") {
    FixtureM1 m1;
    const SpacePtr other = space_n(6);  // equal labels: compatible
    CHECK(m1.model.lower(Event::of_atoms(other, {"w2", "w4", "w5"})) == q(81, 200));
    const SpacePtr different = space_n(4);
    CHECK_THROWS_AS(m1.model.lower(Event::full(different)), UsageError);
    CHECK_THROWS_AS(m1.model.p0().of(Event::full(different)), UsageError);
}

TEST_CASE("models are safe to evaluate from several threads") {
    FixtureM1 m1;
    const EventMask full = m1.space->full_mask();
    std::vector<Rational> expected;
    for (EventMask m = 0; m <= full; ++m) expected.push_back(m1.model.lower_mask(m));

    std::vector<std::thread> workers;
    std::atomic<int> mismatches{0};
    for (int t = 0; t < 4; ++t) {
        workers.emplace_back([&]() {
            for (int round = 0; round < 20; ++round)
                for (EventMask m = 0; m <= full; ++m)
                    if (m1.model.lower_mask(m) != expected[m]) ++mismatches;
        });
    }
    for (auto& w : workers) w.join();
    CHECK(mismatches.load() == 0);
}

TEST_CASE("positivity lemma on random coherent models") {
    Rng rng(29);
    int done = 0;
    while (done < 40) {
        const SpacePtr space = space_n(4);
        NLModel model = (done % 3 == 2) ? random_hbm(rng, space) : random_vbm(rng, space);
        if (model.family() == Family::hbm && !model.is_coherent()) continue;
        ++done;
        const EventMask full = space->full_mask();
        for (EventMask a = 0; a <= full; ++a) {
            for (EventMask b = 0; b <= full; ++b) {
                const EventMask ab = a & b;
                const EventMask nab = b & ~a;
                if (model.lower_mask(ab).sign() > 0) CHECK(model.upper_mask(nab) < Rational(1));
                if (model.upper_mask(nab).sign() > 0) CHECK(model.lower_mask(ab) < Rational(1));
            }
        }
    }
}
