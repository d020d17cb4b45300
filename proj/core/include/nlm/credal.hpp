#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "nlm/conditioning.hpp"
#include "nlm/model.hpp"

namespace nlm {

/// Extreme points of the credal set of a 2-monotone lower probability,
/// deduplicated and ordered lexicographically. Every vertex dominates the
/// lower probability, and pointwise min/max over the vertices reproduce it
/// and its conjugate.
class VertexSet {
public:
    VertexSet(SpacePtr space, std::vector<std::vector<Rational>> vertices);

    const SpacePtr& space() const { return space_; }
    std::size_t size() const { return vertices_.size(); }
    const std::vector<std::vector<Rational>>& vertices() const { return vertices_; }
    const std::vector<Rational>& vertex(std::size_t i) const { return vertices_[i]; }

    Rational mass(std::size_t vertex_index, EventMask mask) const;

private:
    SpacePtr space_;
    std::vector<std::vector<Rational>> vertices_;
};

struct OracleOptions {
    std::size_t max_atoms = 9;        // the construction enumerates n! orderings
    bool enforce_two_monotone = true; // reject non-2-monotone inputs up front
};

/// One vertex per atom ordering: the i-th atom of the ordering gets
/// lower(first i atoms) - lower(first i-1 atoms). Exact for 2-monotone
/// models; non-2-monotone inputs are rejected unless enforcement is
/// disabled (differential-testing hook).
VertexSet permutation_vertices(const NLModel& model, const OracleOptions& opts = {});

/// Brute-force natural extension: min/max of P(A∧B)/P(B) over the vertices.
/// Requires lower(B) > 0. Agrees exactly with the closed forms.
ConditionalAssessment oracle_natural_extension(const NLModel& model, const VertexSet& vertices,
                                               const Event& a, const Event& given);
ConditionalAssessment oracle_natural_extension(const NLModel& model, const Event& a,
                                               const Event& given, const OracleOptions& opts = {});

struct EnvelopeResult {
    bool ok = false;
    std::optional<Event> witness;  // first event where min/max and lower/upper disagree
};

/// Checks min over vertices = lower and max = upper on every event.
EnvelopeResult envelope_check(const NLModel& model, const OracleOptions& opts = {});

/// Same check against arbitrary assessments (seam for corrupted inputs).
EnvelopeResult envelope_check(const VertexSet& vertices,
                              const std::function<Rational(EventMask)>& lower_of,
                              const std::function<Rational(EventMask)>& upper_of);

struct RegularOracleOptions {
    Rational bisection_width = Rational::pow2(-40);
    Rational tolerance = Rational::pow2(-20);  // convergence-to-closed-form margin
    std::size_t max_atoms = 9;
};

struct RegularOracleResult {
    /// One (delta, lower estimate, upper estimate) row per requested delta,
    /// in the given order.
    struct Row {
        Rational delta;
        Rational lower;
        Rational upper;
    };
    std::vector<Row> estimates;
    ConditionalAssessment closed_form;  // regular_extension(model, a, given)
    bool converged = false;             // final estimates within tolerance of the closed form
};

/// Delta-restricted approximation of the regular extension: for each delta,
/// optimizes P(A∧B)/P(B) over the credal-set members with P(B) >= delta,
/// by bisection on t with an exact inner linear minimization over the
/// restricted polytope. Requires lower(B) = 0 < upper(B) and a decreasing
/// sequence of deltas in (0, upper(B)].
RegularOracleResult oracle_regular_extension(const NLModel& model, const Event& a,
                                             const Event& given,
                                             const std::vector<Rational>& deltas,
                                             const RegularOracleOptions& opts = {});

}  // namespace nlm
