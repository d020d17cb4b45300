#include "nlm/credal.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>

#include "nlm/errors.hpp"

namespace nlm {

VertexSet::VertexSet(SpacePtr space, std::vector<std::vector<Rational>> vertices)
    : space_(std::move(space)), vertices_(std::move(vertices)) {
    if (!space_) throw UsageError("vertex set without a sample space");
    for (const auto& v : vertices_)
        if (v.size() != space_->size()) throw UsageError("vertex with wrong arity");
}

Rational VertexSet::mass(std::size_t vertex_index, EventMask mask) const {
    const auto& v = vertices_[vertex_index];
    Rational sum = 0;
    while (mask) {
        sum += v[std::countr_zero(mask)];
        mask &= mask - 1;
    }
    return sum;
}

VertexSet permutation_vertices(const NLModel& model, const OracleOptions& opts) {
    const std::size_t n = model.space()->size();
    if (n > opts.max_atoms)
        throw CapacityError("vertex enumeration capped at " + std::to_string(opts.max_atoms) +
                            " atoms, space has " + std::to_string(n));
    if (opts.enforce_two_monotone) {
        if (!model.is_coherent())
            throw UnsupportedFamilyError("vertex construction requires a coherent model");
        // Coherent NL models are 2-monotone; incoherent ones are rejected
        // above rather than silently mishandled.
    }

    const auto lpr = lower_table(model);
    std::vector<unsigned> order(n);
    std::iota(order.begin(), order.end(), 0u);
    std::set<std::vector<Rational>> dedup;
    do {
        std::vector<Rational> vertex(n);
        EventMask mask = 0;
        Rational prev = 0;
        for (unsigned atom : order) {
            mask |= EventMask{1} << atom;
            const Rational& cur = lpr[mask];
            vertex[atom] = cur - prev;
            prev = cur;
        }
        dedup.insert(std::move(vertex));
    } while (std::next_permutation(order.begin(), order.end()));

    return VertexSet(model.space(),
                     std::vector<std::vector<Rational>>(dedup.begin(), dedup.end()));
}

ConditionalAssessment oracle_natural_extension(const NLModel& model, const VertexSet& vertices,
                                               const Event& a, const Event& given) {
    if (!a.space()->same_as(*model.space()) || !given.space()->same_as(*model.space()))
        throw UsageError("event from a different sample space");
    if (model.lower(given).sign() <= 0)
        throw UsageError("vertex oracle needs lower(B) > 0; the zero case is analytic");

    const EventMask ab = a.mask() & given.mask();
    bool first = true;
    Rational lo, hi;
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const Rational pb = vertices.mass(i, given.mask());
        if (pb.sign() <= 0)
            throw InternalError("vertex with zero mass on B although lower(B) > 0");
        const Rational ratio = vertices.mass(i, ab) / pb;
        if (first) {
            lo = hi = ratio;
            first = false;
        } else {
            if (ratio < lo) lo = ratio;
            if (ratio > hi) hi = ratio;
        }
    }
    ConditionalAssessment out;
    out.lower = lo;
    out.upper = hi;
    out.method = ExtensionMethod::oracle;
    out.case_label = "oracle";
    return out;
}

ConditionalAssessment oracle_natural_extension(const NLModel& model, const Event& a,
                                               const Event& given, const OracleOptions& opts) {
    return oracle_natural_extension(model, permutation_vertices(model, opts), a, given);
}

EnvelopeResult envelope_check(const VertexSet& vertices,
                              const std::function<Rational(EventMask)>& lower_of,
                              const std::function<Rational(EventMask)>& upper_of) {
    const std::size_t n = vertices.space()->size();
    const std::size_t count = std::size_t{1} << n;
    std::vector<Rational> lo(count), hi(count), sums(count);
    for (std::size_t i = 0; i < vertices.size(); ++i) {
        const auto& v = vertices.vertex(i);
        sums[0] = 0;
        for (EventMask m = 1; m < count; ++m)
            sums[m] = sums[m & (m - 1)] + v[std::countr_zero(m)];
        if (i == 0) {
            lo = sums;
            hi = sums;
        } else {
            for (EventMask m = 1; m < count; ++m) {
                if (sums[m] < lo[m]) lo[m] = sums[m];
                if (sums[m] > hi[m]) hi[m] = sums[m];
            }
        }
    }
    for (EventMask m = 0; m < count; ++m) {
        if (lo[m] != lower_of(m) || hi[m] != upper_of(m))
            return {false, Event(vertices.space(), m)};
    }
    return {true, std::nullopt};
}

EnvelopeResult envelope_check(const NLModel& model, const OracleOptions& opts) {
    const VertexSet vertices = permutation_vertices(model, opts);
    const auto lpr = lower_table(model);
    const auto upr = upper_table(model);
    return envelope_check(
        vertices, [&](EventMask m) { return lpr[m]; }, [&](EventMask m) { return upr[m]; });
}

namespace {

// Candidate optimizers for a linear objective over
// {P in conv(V) : P(B) >= delta}: the original vertices satisfying the
// constraint, plus every two-vertex mixture pinned at P(B) = delta. Each
// candidate is stored as (numerator mass on the target event, mass on B).
struct Candidate {
    Rational x;  // P(target)
    Rational h;  // P(B), always >= delta > 0
};

std::vector<Candidate> restricted_candidates(const VertexSet& vertices, EventMask target,
                                             EventMask given, const Rational& delta) {
    const std::size_t count = vertices.size();
    std::vector<Rational> xs(count), hs(count);
    for (std::size_t i = 0; i < count; ++i) {
        xs[i] = vertices.mass(i, target);
        hs[i] = vertices.mass(i, given);
    }
    std::vector<Candidate> out;
    for (std::size_t i = 0; i < count; ++i)
        if (hs[i] >= delta) out.push_back({xs[i], hs[i]});
    for (std::size_t i = 0; i < count; ++i) {
        if (hs[i] <= delta) continue;
        for (std::size_t j = 0; j < count; ++j) {
            if (hs[j] >= delta) continue;
            const Rational lambda = (delta - hs[j]) / (hs[i] - hs[j]);
            out.push_back({lambda * xs[i] + (Rational(1) - lambda) * xs[j], delta});
        }
    }
    return out;
}

// Largest t in [0, 1] (up to the bisection width) with
// min over candidates of (x - t h) >= 0, i.e. the minimum of x/h.
Rational bisect_min_ratio(const std::vector<Candidate>& candidates, const Rational& width) {
    auto feasible = [&](const Rational& t) {
        for (const auto& c : candidates)
            if (c.x - t * c.h < Rational(0)) return false;
        return true;
    };
    if (feasible(1)) return 1;  // the ratio never exceeds 1
    Rational lo = 0, hi = 1;
    while (hi - lo > width) {
        const Rational mid = (lo + hi) / Rational(2);
        if (feasible(mid))
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

}  // namespace

RegularOracleResult oracle_regular_extension(const NLModel& model, const Event& a,
                                             const Event& given,
                                             const std::vector<Rational>& deltas,
                                             const RegularOracleOptions& opts) {
    if (!a.space()->same_as(*model.space()) || !given.space()->same_as(*model.space()))
        throw UsageError("event from a different sample space");
    if (given.is_empty()) throw UsageError("conditioning event must be non-empty");
    const Rational upr_b = model.upper(given);
    if (!model.lower(given).is_zero() || upr_b.sign() <= 0)
        throw UsageError("delta oracle needs lower(B) = 0 < upper(B)");
    if (deltas.empty()) throw UsageError("delta oracle needs at least one delta");
    for (std::size_t i = 0; i < deltas.size(); ++i) {
        if (deltas[i].sign() <= 0 || deltas[i] > upr_b)
            throw InvalidParameterError("each delta must lie in (0, upper(B)]");
        if (i && deltas[i] >= deltas[i - 1])
            throw InvalidParameterError("deltas must strictly decrease");
    }

    OracleOptions vopts;
    vopts.max_atoms = opts.max_atoms;
    const VertexSet vertices = permutation_vertices(model, vopts);

    const EventMask ab = a.mask() & given.mask();
    const EventMask nab = given.mask() & ~a.mask();

    RegularOracleResult result;
    result.closed_form = regular_extension(model, a, given);
    for (const Rational& delta : deltas) {
        const auto lower_candidates = restricted_candidates(vertices, ab, given.mask(), delta);
        const auto upper_candidates = restricted_candidates(vertices, nab, given.mask(), delta);
        RegularOracleResult::Row row;
        row.delta = delta;
        row.lower = bisect_min_ratio(lower_candidates, opts.bisection_width);
        row.upper = Rational(1) - bisect_min_ratio(upper_candidates, opts.bisection_width);
        result.estimates.push_back(std::move(row));
    }
    const auto& last = result.estimates.back();
    result.converged = abs(last.lower - result.closed_form.lower) <= opts.tolerance &&
                       abs(last.upper - result.closed_form.upper) <= opts.tolerance;
    return result;
}

}  // namespace nlm
