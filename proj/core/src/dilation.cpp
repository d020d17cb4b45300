#include "nlm/dilation.hpp"

#include <algorithm>

#include "nlm/errors.hpp"

namespace nlm {

const char* to_string(DilationMode m) {
    return m == DilationMode::weak ? "weak" : "strict";
}

const char* to_string(DilationVerdict v) {
    switch (v) {
        case DilationVerdict::strict: return "strict";
        case DilationVerdict::weak_nontrivial: return "weak-nontrivial";
        case DilationVerdict::weak_trivial: return "weak-trivial";
        case DilationVerdict::none: return "none";
    }
    return "?";
}

namespace {

void require_on_model(const NLModel& model, const Event& a, const Partition& part) {
    if (!a.space()->same_as(*model.space()) || !part.space()->same_as(*model.space()))
        throw UsageError("event or partition from a different sample space");
}

AssumptionFlags assumption_flags(const NLModel& model, const Event& a, const Partition& part) {
    AssumptionFlags flags;
    flags.a1 = classify_dependence(a, part) == DependenceClass::independent;
    const Rational lo = model.lower(a), hi = model.upper(a);
    const bool extreme = lo == hi && (lo.is_zero() || lo == Rational(1));
    flags.a2 = !extreme;
    flags.a3 = !(lo.is_zero() && hi == Rational(1));
    return flags;
}

bool is_extreme(const NLModel& model, const Event& a) {
    const Rational lo = model.lower(a), hi = model.upper(a);
    return lo == hi && (lo.is_zero() || lo == Rational(1));
}

DilationVerdict classify_verdict(const Rational& lower_a, const Rational& upper_a,
                                 const std::vector<BlockFinding>& blocks) {
    bool weak = true, strict = true, trivial = true;
    for (const auto& finding : blocks) {
        weak &= finding.lower <= lower_a && upper_a <= finding.upper;
        strict &= finding.lower < lower_a && upper_a < finding.upper;
        trivial &= finding.lower == lower_a && finding.upper == upper_a && lower_a == upper_a;
    }
    if (!weak) return DilationVerdict::none;
    if (strict) return DilationVerdict::strict;
    return trivial ? DilationVerdict::weak_trivial : DilationVerdict::weak_nontrivial;
}

}  // namespace

Rational imprecision_variation(const NLModel& model, const Event& a, const Event& given) {
    const ConditionalAssessment cond = natural_extension(model, a, given);
    return (cond.upper - cond.lower) - (model.upper(a) - model.lower(a));
}

DilationReport check_dilation(const NLModel& model, const Event& a, const Partition& part,
                              DilationMode mode) {
    require_on_model(model, a, part);
    DilationReport report;
    report.mode = mode;
    report.lower_a = model.lower(a);
    report.upper_a = model.upper(a);
    report.assumptions = assumption_flags(model, a, part);

    for (const auto& block : part.blocks()) {
        const ConditionalAssessment cond = natural_extension(model, a, block);
        BlockFinding finding(block);
        finding.lower = cond.lower;
        finding.upper = cond.upper;
        finding.extension_case = cond.case_label;
        finding.satisfied = mode == DilationMode::weak
                                ? cond.lower <= report.lower_a && report.upper_a <= cond.upper
                                : cond.lower < report.lower_a && report.upper_a < cond.upper;
        report.per_block.push_back(std::move(finding));
    }
    report.verdict = classify_verdict(report.lower_a, report.upper_a, report.per_block);
    return report;
}

DilationReport characterize_dilation(const NLModel& model, const Event& a,
                                     const Partition& part) {
    require_on_model(model, a, part);
    if (!model.is_coherent())
        throw UnsupportedFamilyError("dilation characterization needs a coherent NL model");
    const AssumptionFlags flags = assumption_flags(model, a, part);
    if (!flags.a1) throw AssumptionError("A1", "A is not logically independent of the partition");
    if (!flags.a2) throw AssumptionError("A2", "A is an extreme event");
    if (!flags.a3) throw AssumptionError("A3", "(lower(A), upper(A)) = (0, 1)");

    DilationReport report;
    report.mode = DilationMode::weak;
    report.lower_a = model.lower(a);
    report.upper_a = model.upper(a);
    report.assumptions = flags;

    const Event not_a = a.complement();
    bool all_satisfied = true;
    for (const auto& block : part.blocks()) {
        const ConditionalAssessment cond = natural_extension(model, a, block);
        BlockFinding finding(block);
        finding.lower = cond.lower;
        finding.upper = cond.upper;
        finding.extension_case = cond.case_label;

        if (model.lower(block).is_zero()) {
            // Cannot hinder dilation: logical independence makes the
            // conditional vacuous here.
            finding.lower_case = "zero";
            finding.upper_case = "zero";
            finding.satisfied = true;
        } else {
            const Event not_block = block.complement();
            const Rational lpr_ab = model.lower(a.meet(block));
            const Rational upr_nab = model.upper(block.minus(a));
            const Rational lpr_nab = model.lower(block.minus(a));
            const Rational upr_ab = model.upper(a.meet(block));
            const Rational p0_a_nb = model.p0().of(a.meet(not_block));
            const Rational p0_nb = model.p0().of(not_block);

            const bool a1 = lpr_ab.sign() > 0 && upr_nab.sign() > 0 &&
                            p0_a_nb >= p0_nb * report.lower_a;
            const bool a2 = lpr_ab.is_zero();
            const bool b1 = lpr_nab.sign() > 0 && upr_ab.sign() > 0 &&
                            p0_a_nb <= p0_nb * report.upper_a;
            const bool b2 = lpr_nab.is_zero();

            finding.lower_case = a1 ? "a1" : (a2 ? "a2" : "");
            finding.upper_case = b1 ? "b1" : (b2 ? "b2" : "");
            finding.satisfied = (a1 || a2) && (b1 || b2);
        }
        all_satisfied &= finding.satisfied;
        report.per_block.push_back(std::move(finding));
    }

    report.verdict = all_satisfied ? classify_verdict(report.lower_a, report.upper_a,
                                                      report.per_block)
                                   : DilationVerdict::none;
    return report;
}

EpsilonDilationResult epsilon_dilation(const NLModel& model, const Event& a,
                                       const Partition& part) {
    require_on_model(model, a, part);
    const SubmodelTag tag = recognize_submodel(model);
    if (tag.kind != SubmodelTag::Kind::epsilon_contamination || tag.parameter.sign() <= 0)
        throw AssumptionError("epsilon-contamination",
                              "needs a contamination model with epsilon > 0");
    const AssumptionFlags flags = assumption_flags(model, a, part);
    if (!flags.a1) throw AssumptionError("A1", "A is not logically independent of the partition");
    if (!flags.a2) throw AssumptionError("A2", "A is an extreme event");

    const Rational& eps = tag.parameter;
    const Rational p0_a = model.p0().of(a);
    const Rational p0_na = Rational(1) - p0_a;
    EpsilonDilationResult result{true, true};
    for (const auto& block : part.blocks()) {
        const Rational p0_ab = model.p0().of(a.meet(block));
        const Rational p0_nab = model.p0().of(block.minus(a));
        if (p0_ab.sign() <= 0 || p0_nab.sign() <= 0)
            throw AssumptionError("P0-positivity",
                                  "needs P0(A∧B) > 0 and P0(¬A∧B) > 0 on every block");
        const Rational p0_b = model.p0().of(block);
        const Rational p0_nb = Rational(1) - p0_b;
        const Rational diff = p0_ab - p0_a * p0_b;
        const Rational lo = -eps * p0_na * p0_nb;
        const Rational hi = eps * p0_a * p0_nb;
        result.weak &= lo <= diff && diff <= hi;
        result.strict &= lo < diff && diff < hi;
    }
    return result;
}

Rational elle(const NLModel& model, const Event& a, const Event& b) {
    if (model.family() != Family::vbm)
        throw UnsupportedFamilyError("the L function is defined for VBMs");
    require_same_space(a, b);
    if (!a.space()->same_as(*model.space()))
        throw UsageError("event from a different sample space");
    const Rational p0_ab = model.p0().of(a.meet(b));
    const Rational p0_a = model.p0().of(a);
    const Rational p0_b = model.p0().of(b);
    return p0_ab - model.params().b * p0_a * p0_b - model.params().a * p0_b;
}

ElleSignTest elle_sign_test(const NLModel& model, const Event& a, const Event& given) {
    if (model.family() != Family::vbm)
        throw UnsupportedFamilyError("the L sign test is defined for VBMs");
    if (!a.space()->same_as(*model.space()) || !given.space()->same_as(*model.space()))
        throw UsageError("event from a different sample space");
    if (given.is_empty()) throw UsageError("conditioning event must be non-empty");
    if (model.lower(given).sign() <= 0)
        throw AssumptionError("lower(B)>0", "the sign test needs lower(B) > 0");

    const Event not_a = a.complement();
    const Event not_given = given.complement();
    ElleSignTest result;
    const bool lower_applicable =
        model.lower(a).is_zero() ||
        (model.lower(a.meet(given)).sign() > 0 && model.upper(given.minus(a)).sign() > 0);
    if (lower_applicable) result.lower_side = elle(model, a, not_given).sign() >= 0;
    const bool upper_applicable =
        model.upper(a) == Rational(1) ||
        (model.lower(given.minus(a)).sign() > 0 && model.upper(a.meet(given)).sign() > 0);
    if (upper_applicable) result.upper_side = elle(model, not_a, not_given).sign() >= 0;
    return result;
}

CoarseningHypotheses coarsening_hypotheses(const NLModel& model, const Event& a,
                                           const Partition& part) {
    require_on_model(model, a, part);
    if (model.family() != Family::vbm)
        throw UnsupportedFamilyError("the coarsening condition is stated for VBMs");
    if (part.size() < 3)
        throw AssumptionError("partition-size", "needs a partition with at least 3 blocks");
    if (is_extreme(model, a)) throw AssumptionError("A2", "A is an extreme event");
    if (model.lower(a).is_zero() && model.upper(a) == Rational(1))
        throw AssumptionError("A3", "(lower(A), upper(A)) = (0, 1)");
    for (const auto& block : part.blocks())
        if (model.lower(block).sign() <= 0)
            throw AssumptionError("lower(B)>0", "needs lower(B) > 0 on every block");
    if (check_dilation(model, a, part, DilationMode::weak).verdict == DilationVerdict::none)
        throw AssumptionError("weak-dilation", "the partition does not weakly dilate A");

    CoarseningHypotheses result;
    result.a1 = model.lower(a).is_zero();
    result.b1 = model.upper(a) == Rational(1);
    result.a2 = true;
    result.b2 = true;
    for (const auto& block : part.blocks()) {
        result.a2 &= model.lower(a.meet(block)).sign() > 0 &&
                     model.upper(block.minus(a)).sign() > 0;
        result.b2 &= model.lower(block.minus(a)).sign() > 0 &&
                     model.upper(a.meet(block)).sign() > 0;
    }
    result.verdict = (result.a1 || result.a2) && (result.b1 || result.b2);
    return result;
}

std::optional<Partition> find_dilating_coarser(const NLModel& model, const Event& a,
                                               const Partition& part, DilationMode mode,
                                               const CoarseningOptions& opts) {
    require_on_model(model, a, part);
    std::optional<Partition> found;
    for_each_coarsening(part, [&](const Partition& coarser) {
        const DilationVerdict verdict = check_dilation(model, a, coarser, mode).verdict;
        const bool hit = mode == DilationMode::weak ? verdict != DilationVerdict::none
                                                    : verdict == DilationVerdict::strict;
        if (hit) {
            found = coarser;
            return false;
        }
        return true;
    }, opts);
    return found;
}

bool non_correlation_dilation(const NLModel& model, const Event& a, const Partition& part,
                              const CoarseningOptions& opts) {
    require_on_model(model, a, part);
    if (model.family() != Family::vbm)
        throw UnsupportedFamilyError("the non-correlation criterion is stated for VBMs");
    if (part.size() < 3)
        throw AssumptionError("partition-size", "needs a partition with at least 3 blocks");

    for (const auto& block : part.blocks()) {
        if (model.lower(a.meet(block)).sign() <= 0 ||
            model.lower(block.minus(a)).sign() <= 0)
            return false;
        if (!non_correlation(model.p0(), a, block)) return false;
    }

    // The hypotheses hold; both conclusions are theorems and are verified.
    if (check_dilation(model, a, part, DilationMode::weak).verdict == DilationVerdict::none)
        throw InternalError("non-correlation hypotheses hold but the partition does not dilate");
    for_each_coarsening(part, [&](const Partition& coarser) {
        if (check_dilation(model, a, coarser, DilationMode::weak).verdict ==
            DilationVerdict::none)
            throw InternalError("non-correlation hypotheses hold but a coarsening fails");
        return true;
    }, opts);
    return true;
}

ExtentReport extent(const NLModel& model, const Event& a, const Partition& part) {
    require_on_model(model, a, part);
    if (model.family() != Family::vbm)
        throw UnsupportedFamilyError("the extent formula is stated for VBMs");
    const DilationReport dilation = check_dilation(model, a, part, DilationMode::strict);
    if (dilation.verdict != DilationVerdict::strict)
        throw AssumptionError("strict-dilation", "the extent needs a strictly dilating partition");

    ExtentReport report(part.block(0));
    report.lower_a = dilation.lower_a;
    report.upper_a = dilation.upper_a;

    bool first = true;
    Rational best_variation;
    std::optional<Rational> best_p0;  // of the interior-block maximizer
    std::optional<Rational> m0, m1;

    for (std::size_t i = 0; i < part.size(); ++i) {
        const Event& block = part.block(i);
        const BlockFinding& finding = dilation.per_block[i];
        const Rational variation =
            (finding.upper - finding.lower) - (report.upper_a - report.lower_a);
        if (first || variation < best_variation) {
            best_variation = variation;
            report.argmin_block = block;
            first = false;
        }

        if (model.lower(block).is_zero()) {
            report.zero_blocks.push_back(block);
            continue;
        }
        report.positive_blocks.push_back(block);
        const bool lower_interior = finding.lower.sign() > 0 && finding.lower < Rational(1);
        const bool upper_interior = finding.upper.sign() > 0 && finding.upper < Rational(1);
        if (lower_interior && upper_interior) {
            report.interior_blocks.push_back(block);
            const Rational p0_b = model.p0().of(block);
            if (!best_p0 || p0_b > *best_p0) {
                best_p0 = p0_b;
                report.b_star = block;
            }
        } else if (finding.lower.is_zero() && upper_interior) {
            report.lower_zero_blocks.push_back(block);
            const Rational ratio = model.lower(block.minus(a)) / model.upper(a.meet(block));
            if (!m0 || ratio > *m0) m0 = ratio;
        } else if (lower_interior && finding.upper == Rational(1)) {
            report.upper_one_blocks.push_back(block);
            const Rational ratio = model.lower(a.meet(block)) / model.upper(block.minus(a));
            if (!m1 || ratio > *m1) m1 = ratio;
        } else if (!(finding.lower.is_zero() && finding.upper == Rational(1))) {
            // lower = 1 or upper = 0 cannot strictly dilate.
            throw InternalError("unclassifiable block under strict dilation");
        }
    }

    Rational narrowest(1);
    if (report.b_star) {
        const ConditionalAssessment at_star = natural_extension(model, a, *report.b_star);
        narrowest = min(narrowest, at_star.upper - at_star.lower);
    }
    if (m0) {
        report.m0 = *m0;
        narrowest = min(narrowest, Rational(1) / (Rational(1) + *m0));
    }
    if (m1) {
        report.m1 = *m1;
        narrowest = min(narrowest, Rational(1) / (Rational(1) + *m1));
    }
    report.delta = report.lower_a - report.upper_a + narrowest;
    report.delta_bruteforce = best_variation;
    return report;
}

Rational imprecision_increase_extent(const NLModel& model, const Event& a,
                                     const Partition& part) {
    require_on_model(model, a, part);
    bool first = true;
    Rational best;
    for (const auto& block : part.blocks()) {
        const Rational v = max(imprecision_variation(model, a, block), Rational(0));
        if (first || v < best) {
            best = v;
            first = false;
        }
    }
    return best;
}

GuaranteeResult imprecision_increase_guarantee(const NLModel& model, const Event& a,
                                               const Partition& part) {
    require_on_model(model, a, part);
    GuaranteeResult result;
    auto fail = [&](const char* why) {
        result.applicable = false;
        result.failed_hypothesis = why;
        return result;
    };
    if (model.family() != Family::vbm) return fail("family != VBM");
    if (model.params().b >= Rational(1)) return fail("b >= 1");
    const Rational lo = model.lower(a), hi = model.upper(a);
    if (lo.sign() <= 0 || lo >= Rational(1) || hi.sign() <= 0 || hi >= Rational(1))
        return fail("lower(A), upper(A) not interior");
    for (const auto& block : part.blocks()) {
        if (model.lower(block).sign() <= 0) return fail("lower(B) = 0 for some block");
        if (model.p0().of(block) >= Rational(1)) return fail("P0(B) = 1 for some block");
        const ConditionalAssessment cond = natural_extension(model, a, block);
        if (cond.lower.sign() <= 0 || cond.lower >= Rational(1) || cond.upper.sign() <= 0 ||
            cond.upper >= Rational(1))
            return fail("conditional values not interior");
    }
    result.applicable = true;
    result.verdict = true;
    for (const auto& block : part.blocks())
        result.verdict &= imprecision_variation(model, a, block).sign() > 0;
    return result;
}

ConstrictionReport check_constriction(const NLModel& model, const Event& a,
                                      const Partition& part) {
    require_on_model(model, a, part);
    const Rational lower_a = model.lower(a), upper_a = model.upper(a);
    if (lower_a >= upper_a)
        throw AssumptionError("A4", "constriction needs lower(A) < upper(A)");

    ConstrictionReport report;
    bool weak_holds = true;
    for (const auto& block : part.blocks()) {
        const ConditionalAssessment cond = natural_extension(model, a, block);
        weak_holds &= lower_a <= cond.lower && cond.upper <= upper_a;
        if (!report.strict_witness && (lower_a < cond.lower || cond.upper < upper_a) &&
            lower_a <= cond.lower && cond.upper <= upper_a)
            report.strict_witness = block;
    }
    report.constricts = weak_holds && report.strict_witness.has_value();
    if (!weak_holds) report.strict_witness.reset();

    // Shortcut classification.
    std::vector<Event> zero_blocks;
    for (const auto& block : part.blocks())
        if (model.lower(block).is_zero()) zero_blocks.push_back(block);

    if (zero_blocks.empty()) {
        for (const auto& block : part.blocks()) {
            if (model.lower(a.meet(block)).sign() > 0 &&
                model.lower(block.minus(a)).sign() > 0) {
                report.shortcut = "positive-interior-block";
                report.shortcut_verdict = false;
                return report;
            }
        }
        return report;  // "direct"
    }
    if (classify_dependence(a, part) == DependenceClass::independent) {
        report.shortcut = "zero-block-independence";
        report.shortcut_verdict = false;
        return report;
    }
    const Event not_a = a.complement();
    const bool has_free_zero_block =
        std::any_of(zero_blocks.begin(), zero_blocks.end(), [&](const Event& block) {
            return !block.implies(a) && !block.implies(not_a);
        });
    if (has_free_zero_block) {
        const bool has_implying_zero_block =
            std::any_of(zero_blocks.begin(), zero_blocks.end(), [&](const Event& block) {
                return block.implies(a) || block.implies(not_a);
            });
        report.shortcut = "zero-block-extreme-iff";
        report.shortcut_verdict = lower_a.is_zero() && upper_a == Rational(1) &&
                                  has_implying_zero_block;
    }
    return report;
}

DependenceDilationResult dependence_dilation(const NLModel& model, const Event& a,
                                             const Partition& part) {
    require_on_model(model, a, part);
    if (a.is_empty() || a.is_full())
        throw UsageError("dependence analysis needs a nontrivial event");
    const DependenceClass cls = classify_dependence(a, part);
    if (cls == DependenceClass::independent)
        throw AssumptionError("logical-dependence",
                              "A is logically independent; use the characterization instead");

    DependenceDilationResult result;
    result.dependence = cls;
    result.direct = check_dilation(model, a, part, DilationMode::weak);

    if (cls == DependenceClass::dependent || cls == DependenceClass::semidep_two_sided) {
        result.dilates_weakly_nontrivially = false;
        return result;
    }

    const Rational lower_a = model.lower(a), upper_a = model.upper(a);
    bool verdict;
    if (cls == DependenceClass::semidep_type1) {
        verdict = lower_a.is_zero() && upper_a.is_zero();
        bool some_positive_upper = false;
        for (const auto& finding : result.direct.per_block) {
            verdict &= finding.lower.is_zero();
            some_positive_upper |= finding.upper.sign() > 0;
        }
        verdict &= some_positive_upper;
    } else {  // semidep_type2
        verdict = lower_a == Rational(1) && upper_a == Rational(1);
        bool some_lower_below_one = false;
        for (const auto& finding : result.direct.per_block) {
            verdict &= finding.upper == Rational(1);
            some_lower_below_one |= finding.lower < Rational(1);
        }
        verdict &= some_lower_below_one;
    }
    result.dilates_weakly_nontrivially = verdict;
    return result;
}

DilationReport extreme_dilation(const NLModel& model, const Event& a, const Partition& part) {
    require_on_model(model, a, part);
    if (!is_extreme(model, a))
        throw AssumptionError("extreme-event", "needs lower(A) = upper(A) in {0, 1}");
    if (classify_dependence(a, part) != DependenceClass::independent)
        throw AssumptionError("A1", "A is not logically independent of the partition");

    DilationReport report = check_dilation(model, a, part, DilationMode::weak);
    bool all_positive = true;
    for (std::size_t i = 0; i < part.size(); ++i) {
        const bool positive = model.lower(part.block(i)).sign() > 0;
        all_positive &= positive;
        const BlockFinding& finding = report.per_block[i];
        if (positive) {
            if (finding.lower != report.lower_a || finding.upper != report.upper_a)
                throw InternalError("extreme event: expected equalities on a positive block");
        } else {
            if (!finding.lower.is_zero() || finding.upper != Rational(1))
                throw InternalError("extreme event: expected a vacuous conditional");
        }
    }
    if (report.verdict == DilationVerdict::none)
        throw InternalError("extreme event: weak dilation must hold");
    return report;
}

}  // namespace nlm
