#pragma once

#include <atomic>
#include <optional>
#include <utility>
#include <vector>

#include "nlm/events.hpp"
#include "nlm/rational.hpp"

namespace nlm {

/// Precise probability on the atoms: nonnegative masses summing to exactly 1.
class BaseProbability {
public:
    BaseProbability(SpacePtr space, std::vector<Rational> atom_masses);

    const SpacePtr& space() const { return space_; }
    const std::vector<Rational>& masses() const { return masses_; }
    Rational of(const Event& e) const;
    Rational of_mask(EventMask mask) const;

private:
    SpacePtr space_;
    std::vector<Rational> masses_;
};

/// Distortion coefficients. c is derived, never stored: c = 1 - (a + b).
struct NLParameters {
    Rational a;
    Rational b;
    Rational c() const { return Rational(1) - (a + b); }
};

enum class Family { vbm, hbm, other };
const char* to_string(Family f);

/// VBM iff 0 <= a+b <= 1 and a <= 0; HBM iff a+b > 1 and b+2a <= 1;
/// other otherwise. Requires b > 0.
Family classify(const NLParameters& params);

struct SubmodelTag {
    enum class Kind { vacuous, epsilon_contamination, pmm, tvm, generic };
    Kind kind = Kind::generic;
    Rational parameter;  // epsilon, delta, or the TVM's a; meaningless otherwise

    friend bool operator==(const SubmodelTag& x, const SubmodelTag& y) {
        return x.kind == y.kind && (x.kind == Kind::vacuous || x.kind == Kind::generic ||
                                    x.parameter == y.parameter);
    }
};

const char* to_string(SubmodelTag::Kind k);

/// Lower/upper probability pair obtained by clamping the affine distortion
/// b*P0 + a (lower) and b*P0 + c (upper) to [0,1], with the sure and
/// impossible events pinned to 1 and 0.
class NLModel {
public:
    NLModel(BaseProbability p0, NLParameters params);

    const BaseProbability& p0() const { return p0_; }
    const SpacePtr& space() const { return p0_.space(); }
    const NLParameters& params() const { return params_; }
    Family family() const { return family_; }

    Rational lower(const Event& e) const;
    Rational upper(const Event& e) const;
    Rational lower_mask(EventMask mask) const;
    Rational upper_mask(EventMask mask) const;

    /// VBMs are coherent outright; HBMs are coherent iff the upper is
    /// subadditive (exhaustive pair scan, result cached). Throws
    /// UnsupportedFamilyError for family other.
    bool is_coherent() const;

    NLModel(const NLModel& other);
    NLModel& operator=(const NLModel& other);

private:
    BaseProbability p0_;
    NLParameters params_;
    Family family_;
    mutable std::atomic<signed char> coherent_cache_;  // -1 unknown, 0 no, 1 yes
};

/// Verdict of an exhaustive pair scan; `witness` is the lexicographically
/// first violating pair (by mask) when the scan fails.
struct PairScanResult {
    bool ok = false;
    std::optional<std::pair<Event, Event>> witness;
};

/// VBM: coherent, no scan. HBM: subadditivity scan of the upper
/// (upr(A)+upr(B) >= upr(A|B) for all A, B). Family other is rejected.
PairScanResult check_coherence(const NLModel& model);

struct TwoMonotoneOptions {
    std::size_t max_atoms = 10;  // the scan is O(4^n)
};

/// Exhaustive 2-monotonicity scan of the lower together with the dual
/// 2-alternating scan of the upper.
PairScanResult check_two_monotone(const NLModel& model, const TwoMonotoneOptions& opts = {});

/// Parameter mappings: vacuous a=-1,b=1; epsilon-contamination a=0,b=1-eps;
/// PMM a=-delta,b=1+delta; TVM b=1,c=-a.
NLModel make_submodel(const SubmodelTag& tag, BaseProbability p0);

SubmodelTag recognize_submodel(const NLModel& model);

/// Exact test of P0(A and B) == P0(A) * P0(B).
bool non_correlation(const BaseProbability& p0, const Event& a, const Event& b);

/// All 2^n subset sums of the atom masses (table[mask] = P0(mask)).
std::vector<Rational> probability_table(const BaseProbability& p0);

/// All 2^n lower (resp. upper) values of the model, for scan-style callers.
std::vector<Rational> lower_table(const NLModel& model);
std::vector<Rational> upper_table(const NLModel& model);

}  // namespace nlm
