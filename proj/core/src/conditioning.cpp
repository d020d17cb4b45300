#include "nlm/conditioning.hpp"

#include "nlm/errors.hpp"

namespace nlm {

const char* to_string(ExtensionMethod m) {
    switch (m) {
        case ExtensionMethod::natural: return "natural";
        case ExtensionMethod::regular: return "regular";
        case ExtensionMethod::oracle: return "oracle";
    }
    return "?";
}

namespace {

void require_conditionable(const NLModel& model, const Event& a, const Event& given) {
    if (!a.space()->same_as(*model.space()) || !given.space()->same_as(*model.space()))
        throw UsageError("event from a different sample space");
    if (given.is_empty()) throw UsageError("conditioning event must be non-empty");
    if (!model.is_coherent())
        throw UnsupportedFamilyError("conditioning requires a coherent model");
}

std::string pick_label(const Rational& lo, const Rational& hi) {
    const bool lo_interior = lo.sign() > 0 && lo < Rational(1);
    const bool hi_interior = hi.sign() > 0 && hi < Rational(1);
    if (lo_interior && hi_interior) return "interior";
    if (lo.is_zero()) return "lower-zero";
    return "upper-one";
}

ConditionalAssessment zero_case(const Event& a, const Event& given, ExtensionMethod method) {
    const bool to_a = given.implies(a);
    const bool to_not_a = given.implies(a.complement());
    ConditionalAssessment out;
    out.lower = to_a ? 1 : 0;
    out.upper = to_not_a ? 0 : 1;
    out.method = method;
    out.case_label = (to_a || to_not_a) ? "zero-implied" : "zero-vacuous";
    return out;
}

}  // namespace

ConditionalAssessment natural_extension(const NLModel& model, const Event& a,
                                        const Event& given) {
    require_conditionable(model, a, given);
    if (model.lower(given).is_zero()) return zero_case(a, given, ExtensionMethod::natural);

    const Rational lpr_ab = model.lower(a.meet(given));
    const Rational upr_nab = model.upper(given.minus(a));
    const Rational lpr_nab = model.lower(given.minus(a));
    const Rational upr_ab = model.upper(a.meet(given));

    ConditionalAssessment out;
    out.method = ExtensionMethod::natural;

    if (upr_nab.is_zero()) {
        out.lower = 1;
    } else if (lpr_ab.is_zero()) {
        out.lower = 0;
    } else {
        const Rational den = model.params().b * model.p0().of(given) + Rational(1) - model.params().b;
        if (den.sign() <= 0)
            throw InternalError("nonpositive conditioning denominator b*P0(B)+1-b with lower(B)>0");
        out.lower = (model.params().b * model.p0().of(a.meet(given)) + model.params().a) / den;
    }

    if (upr_ab.is_zero()) {
        out.upper = 0;
    } else if (lpr_nab.is_zero()) {
        out.upper = 1;
    } else {
        const Rational den = model.params().b * model.p0().of(given) + Rational(1) - model.params().b;
        if (den.sign() <= 0)
            throw InternalError("nonpositive conditioning denominator b*P0(B)+1-b with lower(B)>0");
        out.upper = (model.params().b * model.p0().of(a.meet(given)) + model.params().c()) / den;
    }

    out.case_label = pick_label(out.lower, out.upper);
    return out;
}

ConditionalAssessment two_monotone_extension(const NLModel& model, const Event& a,
                                             const Event& given) {
    require_conditionable(model, a, given);
    if (model.lower(given).sign() <= 0)
        throw UsageError("2-monotone conditioning ratios need lower(B) > 0");

    const Rational lpr_ab = model.lower(a.meet(given));
    const Rational upr_nab = model.upper(given.minus(a));
    const Rational lpr_nab = model.lower(given.minus(a));
    const Rational upr_ab = model.upper(a.meet(given));

    const Rational lo_den = lpr_ab + upr_nab;
    const Rational hi_den = upr_ab + lpr_nab;
    if (lo_den.sign() <= 0 || hi_den.sign() <= 0)
        throw InternalError("vanishing 2-monotone conditioning denominator with lower(B)>0");

    ConditionalAssessment out;
    out.lower = lpr_ab / lo_den;
    out.upper = upr_ab / hi_den;
    out.method = ExtensionMethod::natural;
    out.case_label = pick_label(out.lower, out.upper);
    return out;
}

NLModel condition_vbm(const NLModel& model, const Event& given) {
    if (model.family() != Family::vbm)
        throw UnsupportedFamilyError("only VBMs are stable under conditioning");
    if (!given.space()->same_as(*model.space()))
        throw UsageError("event from a different sample space");
    if (given.is_empty()) throw UsageError("conditioning event must be non-empty");

    SpacePtr sub = SampleSpace::create(given.atom_labels());
    const Rational p0_given = model.p0().of(given);
    std::vector<Rational> masses;
    masses.reserve(sub->size());

    // The affine route needs the unclamped value b P0(B) + a positive; this
    // coincides with lower(B) > 0 except for the vacuous model at B = Ω,
    // which goes through the vacuous branch and comes back normalized.
    if ((model.params().b * p0_given + model.params().a).sign() > 0) {
        const Rational den = model.params().b * p0_given + Rational(1) - model.params().b;
        if (den.sign() <= 0)
            throw InternalError("nonpositive conditioning denominator in a VBM");
        for (std::size_t i = 0; i < model.space()->size(); ++i)
            if (given.contains_atom(i)) masses.push_back(model.p0().masses()[i] / p0_given);
        NLParameters params{model.params().a / den, model.params().b * p0_given / den};
        return NLModel(BaseProbability(std::move(sub), std::move(masses)), std::move(params));
    }

    // lower(B) = 0: the conditional model is the vacuous VBM. Its
    // evaluations do not depend on the base probability; condition P0 when
    // possible, otherwise fall back to uniform masses on B's atoms.
    if (p0_given.sign() > 0) {
        for (std::size_t i = 0; i < model.space()->size(); ++i)
            if (given.contains_atom(i)) masses.push_back(model.p0().masses()[i] / p0_given);
    } else {
        const Rational uniform(1, static_cast<long>(sub->size()));
        masses.assign(sub->size(), uniform);
    }
    return NLModel(BaseProbability(std::move(sub), std::move(masses)),
                   NLParameters{Rational(-1), Rational(1)});
}

Event restrict_to_conditioned_space(const NLModel& conditioned, const Event& a,
                                    const Event& given) {
    if (!a.space()->same_as(*given.space()))
        throw UsageError("event from a different sample space");
    EventMask sub_mask = 0;
    std::size_t sub_index = 0;
    for (std::size_t i = 0; i < given.space()->size(); ++i) {
        if (!given.contains_atom(i)) continue;
        if (a.contains_atom(i)) sub_mask |= EventMask{1} << sub_index;
        ++sub_index;
    }
    return Event(conditioned.space(), sub_mask);
}

SubmodelTag submodel_stability(const NLModel& model, const Event& given) {
    return recognize_submodel(condition_vbm(model, given));
}

ConditionalAssessment regular_extension(const NLModel& model, const Event& a,
                                        const Event& given) {
    require_conditionable(model, a, given);
    const Rational lpr_b = model.lower(given);
    const Rational upr_b = model.upper(given);
    if (lpr_b.sign() > 0 || upr_b.is_zero()) {
        ConditionalAssessment out = natural_extension(model, a, given);
        out.method = ExtensionMethod::regular;
        return out;
    }

    // lower(B) = 0 < upper(B): closed form for 2-monotone models.
    const bool lower_one = model.upper(given.minus(a)).is_zero();
    const bool upper_zero = model.upper(a.meet(given)).is_zero();
    ConditionalAssessment out;
    out.lower = lower_one ? 1 : 0;
    out.upper = upper_zero ? 0 : 1;
    out.method = ExtensionMethod::regular;
    out.case_label = (lower_one || upper_zero) ? "zero-implied" : "zero-vacuous";
    return out;
}

bool regular_differs(const NLModel& model, const Event& a, const Event& given) {
    if (!a.space()->same_as(*model.space()) || !given.space()->same_as(*model.space()))
        throw UsageError("event from a different sample space");
    if (given.is_empty()) return false;
    if (!model.is_coherent())
        throw UnsupportedFamilyError("regular extension requires a coherent model");
    const Event nab = given.minus(a);
    return model.lower(given).is_zero() && model.upper(given).sign() > 0 && !nab.is_empty() &&
           model.upper(nab).is_zero();
}

std::optional<SubmodelTag> vbm_pmm_witness(const NLModel& model) {
    if (model.family() != Family::vbm)
        throw UnsupportedFamilyError("PMM witness scan applies to VBMs");
    // The divergence condition needs upper(¬A∧B) = 0 with ¬A∧B nonempty,
    // which forces c = 0; skip the scan when c != 0.
    if (!model.params().c().is_zero()) return std::nullopt;

    const auto lpr = lower_table(model);
    const auto upr = upper_table(model);
    const EventMask full = model.space()->full_mask();
    for (EventMask b = 1; b <= full; ++b) {
        if (!lpr[b].is_zero() || upr[b].is_zero()) continue;
        // Any nonempty N ⊆ B with upper(N) = 0 witnesses divergence at
        // A = B \ N (and at every A with ¬A∧B = N).
        for (EventMask n = b; n; n = (n - 1) & b) {
            if (upr[n].is_zero()) {
                SubmodelTag tag = recognize_submodel(model);
                if (tag.kind != SubmodelTag::Kind::pmm)
                    throw InternalError("extension divergence on a VBM that is not a PMM");
                return tag;
            }
        }
    }
    return std::nullopt;
}

}  // namespace nlm
