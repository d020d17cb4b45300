#pragma once

#include <random>
#include <string>
#include <vector>

#include "nlm/conditioning.hpp"
#include "nlm/credal.hpp"
#include "nlm/dilation.hpp"
#include "nlm/model.hpp"

namespace nlmtest {

using namespace nlm;

inline SpacePtr space_n(std::size_t n) {
    std::vector<std::string> labels;
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("w" + std::to_string(i));
    return SampleSpace::create(std::move(labels));
}

inline Rational q(long num, long den = 1) { return Rational(num, den); }

// Six-atom VBM with P0 = (1/10, 1/5, 1/10, 1/10, 1/4, 1/4), a = -1/5,
// b = 11/10; A* = w2|w4|w5 and the pairwise partition {w1|w2, w3|w4, w5|w6}.
struct FixtureM1 {
    SpacePtr space = space_n(6);
    NLModel model{BaseProbability(space, {q(1, 10), q(1, 5), q(1, 10), q(1, 10), q(1, 4), q(1, 4)}),
                  NLParameters{q(-1, 5), q(11, 10)}};
    Event a_star = Event::of_atoms(space, {"w2", "w4", "w5"});
    Partition b_star{space,
                     {Event::of_atoms(space, {"w1", "w2"}), Event::of_atoms(space, {"w3", "w4"}),
                      Event::of_atoms(space, {"w5", "w6"})}};
    Event b1 = Event::of_atoms(space, {"w1", "w2"});
    Event b2 = Event::of_atoms(space, {"w3", "w4"});
    Event b3 = Event::of_atoms(space, {"w5", "w6"});
};

// Contamination model, epsilon = 1/10, uniform on four atoms.
struct FixtureM2 {
    SpacePtr space = space_n(4);
    NLModel model = make_submodel({SubmodelTag::Kind::epsilon_contamination, q(1, 10)},
                                  BaseProbability(space, {q(1, 4), q(1, 4), q(1, 4), q(1, 4)}));
    Event a = Event::of_atoms(space, {"w1", "w2"});
    Partition cross{space,
                    {Event::of_atoms(space, {"w1", "w3"}), Event::of_atoms(space, {"w2", "w4"})}};
};

// Pari-mutuel model, delta = 1/5, on three atoms with P0 = (1/10, 0, 9/10).
struct FixtureM3 {
    SpacePtr space = space_n(3);
    NLModel model = make_submodel({SubmodelTag::Kind::pmm, q(1, 5)},
                                  BaseProbability(space, {q(1, 10), q(0), q(9, 10)}));
    Event a = Event::of_atoms(space, {"w1", "w3"});
    Event given = Event::of_atoms(space, {"w1", "w2"});
};

inline NLModel uniform_epsilon_model(std::size_t n, const Rational& eps, const SpacePtr& space) {
    std::vector<Rational> masses(n, Rational(1, static_cast<long>(n)));
    return make_submodel({SubmodelTag::Kind::epsilon_contamination, eps},
                         BaseProbability(space, std::move(masses)));
}

using Rng = std::mt19937_64;

inline long rand_int(Rng& rng, long lo, long hi) {
    return std::uniform_int_distribution<long>(lo, hi)(rng);
}

// Random base probability with small rational masses; zero masses allowed
// when `allow_zero` (conditioning edge cases need them).
inline BaseProbability random_p0(Rng& rng, const SpacePtr& space, bool allow_zero = true) {
    const std::size_t n = space->size();
    std::vector<long> weights(n);
    long total = 0;
    do {
        total = 0;
        for (auto& w : weights) {
            w = rand_int(rng, allow_zero ? 0 : 1, 6);
            total += w;
        }
    } while (total == 0);
    std::vector<Rational> masses;
    masses.reserve(n);
    for (long w : weights) masses.emplace_back(w, total);
    return BaseProbability(space, std::move(masses));
}

// Random VBM parameters: a+b drawn from [0,1], a = -(b - (a+b)) <= 0.
inline NLParameters random_vbm_params(Rng& rng) {
    const Rational sum(rand_int(rng, 0, 12), 12);  // a + b
    Rational slack(rand_int(rng, 0, 12), 8);       // b - (a + b) >= 0
    if ((sum + slack).is_zero()) slack = Rational(1, 8);
    return {-slack, sum + slack};
}

// Random HBM-region parameters: a+b = 1+x (x > 0), b+2a = 1-y <= 1.
inline NLParameters random_hbm_params(Rng& rng) {
    const Rational x(rand_int(rng, 1, 12), 12);
    const Rational y(rand_int(rng, 0, 12), 12);
    return {-x - y, Rational(1) + Rational(2) * x + y};
}

inline NLModel random_vbm(Rng& rng, const SpacePtr& space, bool allow_zero = true) {
    return NLModel(random_p0(rng, space, allow_zero), random_vbm_params(rng));
}

inline NLModel random_hbm(Rng& rng, const SpacePtr& space, bool allow_zero = true) {
    return NLModel(random_p0(rng, space, allow_zero), random_hbm_params(rng));
}

// HBMs with P0 concentrated on one atom are always coherent; used to make
// sure the random suites span the coherent HBM region.
inline NLModel concentrated_hbm(Rng& rng, const SpacePtr& space) {
    std::vector<Rational> masses(space->size(), Rational(0));
    masses[static_cast<std::size_t>(rand_int(rng, 0, static_cast<long>(space->size()) - 1))] = 1;
    return NLModel(BaseProbability(space, std::move(masses)), random_hbm_params(rng));
}

inline Event random_event(Rng& rng, const SpacePtr& space) {
    return Event(space, static_cast<EventMask>(rand_int(rng, 0, space->full_mask())));
}

inline Event random_nontrivial_event(Rng& rng, const SpacePtr& space) {
    return Event(space, static_cast<EventMask>(rand_int(rng, 1, space->full_mask() - 1)));
}

// Random partition with 2..max_blocks blocks via a random growth string.
inline Partition random_partition(Rng& rng, const SpacePtr& space, std::size_t max_blocks) {
    const std::size_t n = space->size();
    std::vector<int> rgs(n, 0);
    int prefix_max = 0;
    do {
        prefix_max = 0;
        for (std::size_t i = 1; i < n; ++i) {
            const int ceiling =
                std::min(prefix_max + 1, static_cast<int>(max_blocks) - 1);
            rgs[i] = static_cast<int>(rand_int(rng, 0, ceiling));
            prefix_max = std::max(prefix_max, rgs[i]);
        }
    } while (prefix_max == 0);  // at least two blocks
    std::vector<EventMask> masks(static_cast<std::size_t>(prefix_max) + 1, 0);
    for (std::size_t i = 0; i < n; ++i) masks[rgs[i]] |= EventMask{1} << i;
    std::vector<Event> blocks;
    for (EventMask m : masks) blocks.emplace_back(space, m);
    return Partition(space, std::move(blocks));
}

}  // namespace nlmtest
