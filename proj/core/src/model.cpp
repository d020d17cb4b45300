#include "nlm/model.hpp"

#include <bit>

#include "nlm/errors.hpp"

namespace nlm {

BaseProbability::BaseProbability(SpacePtr space, std::vector<Rational> atom_masses)
    : space_(std::move(space)), masses_(std::move(atom_masses)) {
    if (!space_) throw UsageError("base probability without a sample space");
    if (masses_.size() != space_->size())
        throw UsageError("base probability needs one mass per atom");
    Rational sum = 0;
    for (const auto& m : masses_) {
        if (m.sign() < 0) throw InvalidParameterError("negative atom mass");
        sum += m;
    }
    if (sum != Rational(1)) throw InvalidParameterError("atom masses must sum to exactly 1");
}

Rational BaseProbability::of(const Event& e) const {
    if (!e.space()->same_as(*space_)) throw UsageError("event from a different sample space");
    return of_mask(e.mask());
}

Rational BaseProbability::of_mask(EventMask mask) const {
    Rational sum = 0;
    while (mask) {
        const unsigned i = std::countr_zero(mask);
        sum += masses_[i];
        mask &= mask - 1;
    }
    return sum;
}

const char* to_string(Family f) {
    switch (f) {
        case Family::vbm: return "vbm";
        case Family::hbm: return "hbm";
        case Family::other: return "other";
    }
    return "?";
}

Family classify(const NLParameters& params) {
    if (params.b.sign() <= 0) throw InvalidParameterError("NL parameter b must be positive");
    const Rational ab = params.a + params.b;
    if (Rational(0) <= ab && ab <= Rational(1) && params.a <= Rational(0)) return Family::vbm;
    if (ab > Rational(1) && params.b + Rational(2) * params.a <= Rational(1)) return Family::hbm;
    return Family::other;
}

const char* to_string(SubmodelTag::Kind k) {
    switch (k) {
        case SubmodelTag::Kind::vacuous: return "vacuous";
        case SubmodelTag::Kind::epsilon_contamination: return "epsilon-contamination";
        case SubmodelTag::Kind::pmm: return "pmm";
        case SubmodelTag::Kind::tvm: return "tvm";
        case SubmodelTag::Kind::generic: return "generic";
    }
    return "?";
}

NLModel::NLModel(BaseProbability p0, NLParameters params)
    : p0_(std::move(p0)), params_(std::move(params)), family_(classify(params_)),
      coherent_cache_(-1) {}

NLModel::NLModel(const NLModel& other)
    : p0_(other.p0_), params_(other.params_), family_(other.family_),
      coherent_cache_(other.coherent_cache_.load()) {}

NLModel& NLModel::operator=(const NLModel& other) {
    if (this != &other) {
        p0_ = other.p0_;
        params_ = other.params_;
        family_ = other.family_;
        coherent_cache_.store(other.coherent_cache_.load());
    }
    return *this;
}

Rational NLModel::lower(const Event& e) const {
    if (!e.space()->same_as(*space())) throw UsageError("event from a different sample space");
    return lower_mask(e.mask());
}

Rational NLModel::upper(const Event& e) const {
    if (!e.space()->same_as(*space())) throw UsageError("event from a different sample space");
    return upper_mask(e.mask());
}

Rational NLModel::lower_mask(EventMask mask) const {
    if (mask == 0) return 0;
    if (mask == space()->full_mask()) return 1;
    return min(max(params_.b * p0_.of_mask(mask) + params_.a, Rational(0)), Rational(1));
}

Rational NLModel::upper_mask(EventMask mask) const {
    if (mask == 0) return 0;
    if (mask == space()->full_mask()) return 1;
    return max(min(params_.b * p0_.of_mask(mask) + params_.c(), Rational(1)), Rational(0));
}

bool NLModel::is_coherent() const {
    if (family_ == Family::vbm) return true;
    if (family_ == Family::other)
        throw UnsupportedFamilyError("coherence is only supported for VBM and HBM families");
    signed char cached = coherent_cache_.load();
    if (cached >= 0) return cached == 1;
    const bool ok = check_coherence(*this).ok;
    coherent_cache_.store(ok ? 1 : 0);
    return ok;
}

PairScanResult check_coherence(const NLModel& model) {
    if (model.family() == Family::other)
        throw UnsupportedFamilyError("coherence check rejects family 'other'");
    if (model.family() == Family::vbm) return {true, std::nullopt};

    const auto upr = upper_table(model);
    const EventMask full = model.space()->full_mask();
    for (EventMask a = 0; a <= full; ++a) {
        for (EventMask b = a; b <= full; ++b) {
            if (upr[a] + upr[b] < upr[a | b]) {
                return {false, std::make_pair(Event(model.space(), a), Event(model.space(), b))};
            }
        }
    }
    return {true, std::nullopt};
}

PairScanResult check_two_monotone(const NLModel& model, const TwoMonotoneOptions& opts) {
    const std::size_t n = model.space()->size();
    if (n > opts.max_atoms)
        throw CapacityError("2-monotonicity scan capped at " + std::to_string(opts.max_atoms) +
                            " atoms, space has " + std::to_string(n));
    const auto lpr = lower_table(model);
    const auto upr = upper_table(model);
    const EventMask full = model.space()->full_mask();
    for (EventMask a = 0; a <= full; ++a) {
        for (EventMask b = a; b <= full; ++b) {
            if (lpr[a | b] + lpr[a & b] < lpr[a] + lpr[b] ||
                upr[a | b] + upr[a & b] > upr[a] + upr[b]) {
                return {false, std::make_pair(Event(model.space(), a), Event(model.space(), b))};
            }
        }
    }
    return {true, std::nullopt};
}

NLModel make_submodel(const SubmodelTag& tag, BaseProbability p0) {
    switch (tag.kind) {
        case SubmodelTag::Kind::vacuous:
            return NLModel(std::move(p0), {Rational(-1), Rational(1)});
        case SubmodelTag::Kind::epsilon_contamination: {
            const Rational& eps = tag.parameter;
            if (eps.sign() < 0 || eps >= Rational(1))
                throw InvalidParameterError("epsilon must lie in [0, 1)");
            return NLModel(std::move(p0), {Rational(0), Rational(1) - eps});
        }
        case SubmodelTag::Kind::pmm: {
            const Rational& delta = tag.parameter;
            if (delta.sign() <= 0) throw InvalidParameterError("PMM delta must be positive");
            return NLModel(std::move(p0), {-delta, Rational(1) + delta});
        }
        case SubmodelTag::Kind::tvm: {
            const Rational& a = tag.parameter;
            if (a >= Rational(0) || a <= Rational(-1))
                throw InvalidParameterError("TVM parameter must lie in (-1, 0)");
            return NLModel(std::move(p0), {a, Rational(1)});
        }
        case SubmodelTag::Kind::generic:
            throw InvalidParameterError("cannot build a model from the generic tag");
    }
    throw InvalidParameterError("unknown submodel tag");
}

SubmodelTag recognize_submodel(const NLModel& model) {
    const Rational& a = model.params().a;
    const Rational& b = model.params().b;
    if ((a + b).is_zero()) return {SubmodelTag::Kind::vacuous, Rational(0)};
    if (a.is_zero() && b <= Rational(1))
        return {SubmodelTag::Kind::epsilon_contamination, Rational(1) - b};
    if (model.params().c().is_zero() && b > Rational(1))
        return {SubmodelTag::Kind::pmm, b - Rational(1)};
    if (b == Rational(1) && a.sign() < 0 && a > Rational(-1)) return {SubmodelTag::Kind::tvm, a};
    return {SubmodelTag::Kind::generic, Rational(0)};
}

bool non_correlation(const BaseProbability& p0, const Event& a, const Event& b) {
    require_same_space(a, b);
    return p0.of(a.meet(b)) == p0.of(a) * p0.of(b);
}

std::vector<Rational> probability_table(const BaseProbability& p0) {
    const std::size_t n = p0.space()->size();
    std::vector<Rational> table(std::size_t{1} << n);
    for (EventMask m = 1; m < table.size(); ++m) {
        const unsigned low = std::countr_zero(m);
        table[m] = table[m & (m - 1)] + p0.masses()[low];
    }
    return table;
}

namespace {

std::vector<Rational> value_table(const NLModel& model, bool upper) {
    const auto p0 = probability_table(model.p0());
    const EventMask full = model.space()->full_mask();
    std::vector<Rational> out(p0.size());
    const Rational shift = upper ? model.params().c() : model.params().a;
    for (EventMask m = 0; m <= full; ++m) {
        if (m == 0) {
            out[m] = 0;
        } else if (m == full) {
            out[m] = 1;
        } else {
            const Rational raw = model.params().b * p0[m] + shift;
            out[m] = min(max(raw, Rational(0)), Rational(1));
        }
    }
    return out;
}

}  // namespace

std::vector<Rational> lower_table(const NLModel& model) { return value_table(model, false); }
std::vector<Rational> upper_table(const NLModel& model) { return value_table(model, true); }

}  // namespace nlm
