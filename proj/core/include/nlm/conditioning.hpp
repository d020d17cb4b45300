#pragma once

#include <optional>
#include <string>

#include "nlm/model.hpp"

namespace nlm {

enum class ExtensionMethod { natural, regular, oracle };
const char* to_string(ExtensionMethod m);

/// One conditional interval for A given B. `case_label` names the formula
/// branch that produced it:
///   "zero-vacuous"  lower(B)=0 and B implies neither A nor ¬A
///   "zero-implied"  lower(B)=0 and the value is pinned by an implication
///                   (or, for the regular extension, by an upper-zero event)
///   "interior"      both sides from the affine branch, values in (0,1)
///   "lower-zero"    lower side clamped to 0 (lower(A∧B)=0)
///   "upper-one"     upper side pinned to 1 (lower(¬A∧B)=0), lower side > 0
/// Precedence when several apply: the zero-B labels, then "interior",
/// then "lower-zero", then "upper-one".
struct ConditionalAssessment {
    Rational lower;
    Rational upper;
    ExtensionMethod method = ExtensionMethod::natural;
    std::string case_label;
};

/// Least-committal coherent extension of the model to A|B. Uses the
/// vacuous/implication rule when lower(B) = 0 and the NL closed form
/// otherwise. Requires B nonempty and a coherent model.
ConditionalAssessment natural_extension(const NLModel& model, const Event& a, const Event& given);

/// The generic 2-monotone conditioning ratios
///   lower(A∧B) / (lower(A∧B) + upper(¬A∧B)),
///   upper(A∧B) / (upper(A∧B) + lower(¬A∧B)).
/// Requires lower(B) > 0. Independent derivation route; must agree with
/// natural_extension exactly.
ConditionalAssessment two_monotone_extension(const NLModel& model, const Event& a,
                                             const Event& given);

/// Conditions a VBM on B. The result is a VBM over the restricted space
/// (the atoms of B): with lower(B) > 0 its parameters are
///   a_B = a / (b P0(B) + 1 - b),  b_B = b P0(B) / (b P0(B) + 1 - b)
/// and its base probability is P0(.|B); with lower(B) = 0 it is the vacuous
/// VBM. Evaluating the result on A∧B (see restrict_to_conditioned_space)
/// reproduces natural_extension(model, A, B) for every A.
NLModel condition_vbm(const NLModel& model, const Event& given);

/// Maps an original-space event into the space of condition_vbm's result:
/// A goes to A∧B read over B's atoms.
Event restrict_to_conditioned_space(const NLModel& conditioned, const Event& a,
                                    const Event& given);

/// Tag of the conditioned model; the main VBM submodels keep their family
/// under conditioning (possibly with a new parameter value).
SubmodelTag submodel_stability(const NLModel& model, const Event& given);

/// Conditioning over only the credal-set members with P(B) > 0, via the
/// 2-monotone closed form: equal to the natural extension except when
/// lower(B) = 0 < upper(B), where the lower is 1 iff upper(¬A∧B) = 0.
ConditionalAssessment regular_extension(const NLModel& model, const Event& a, const Event& given);

/// True iff regular and natural extension disagree at (A, B):
/// lower(B) = 0 < upper(B), ¬A∧B nonempty, and upper(¬A∧B) = 0.
/// Where true, the regular lower is 1 and the natural lower is 0.
bool regular_differs(const NLModel& model, const Event& a, const Event& given);

/// Scans all (A, B); if any pair makes the extensions diverge, the VBM is
/// necessarily a Pari-Mutuel model and its tag is returned.
std::optional<SubmodelTag> vbm_pmm_witness(const NLModel& model);

}  // namespace nlm
