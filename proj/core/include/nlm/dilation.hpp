#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlm/conditioning.hpp"

namespace nlm {

enum class DilationMode { weak, strict };
enum class DilationVerdict { strict, weak_nontrivial, weak_trivial, none };

const char* to_string(DilationMode m);
const char* to_string(DilationVerdict v);

/// Whether the standing assumptions hold for (A, partition):
/// a1 logical independence, a2 A non-extreme, a3 (lower(A), upper(A)) != (0, 1).
struct AssumptionFlags {
    bool a1 = false;
    bool a2 = false;
    bool a3 = false;
};

struct BlockFinding {
    explicit BlockFinding(Event b) : block(std::move(b)) {}

    Event block;
    Rational lower;             // conditional lower for A given the block
    Rational upper;             // conditional upper
    std::string lower_case;     // characterization label "a1"/"a2", "zero", or ""
    std::string upper_case;     // "b1"/"b2", "zero", or ""
    std::string extension_case; // ConditionalAssessment::case_label
    bool satisfied = false;
};

struct DilationReport {
    DilationVerdict verdict = DilationVerdict::none;
    DilationMode mode = DilationMode::weak;
    std::vector<BlockFinding> per_block;
    AssumptionFlags assumptions;
    Rational lower_a;  // unconditional interval, echoed for rendering
    Rational upper_a;
};

/// (upper(A|B) - lower(A|B)) - (upper(A) - lower(A)), natural extension.
Rational imprecision_variation(const NLModel& model, const Event& a, const Event& given);

/// Direct evaluation of the dilation inequalities
///   lower(A|B) <= lower(A) <= upper(A) <= upper(A|B)  for every block,
/// strict mode requiring the outer inequalities strict. Weak dilation is
/// trivial when all three hold with equality on every block.
DilationReport check_dilation(const NLModel& model, const Event& a, const Partition& part,
                              DilationMode mode = DilationMode::weak);

/// Per-block characterization for coherent NL models. For each block with
/// lower(B) > 0, weak dilation holds iff one of
///   (a1) lower(A∧B), upper(¬A∧B) > 0 and P0(A∧¬B) >= P0(¬B) lower(A)
///   (a2) lower(A∧B) = 0
/// and one of
///   (b1) lower(¬A∧B), upper(A∧B) > 0 and P0(A∧¬B) <= P0(¬B) upper(A)
///   (b2) lower(¬A∧B) = 0
/// apply; blocks with lower(B) = 0 cannot hinder dilation and are skipped.
/// Enforces the A1-A3 assumption gates. Must agree with check_dilation.
DilationReport characterize_dilation(const NLModel& model, const Event& a, const Partition& part);

struct EpsilonDilationResult {
    bool weak = false;
    bool strict = false;
};

/// Contamination-model specialization: under the positivity hypothesis
/// P0(A∧B) > 0, P0(¬A∧B) > 0 for every block, weak dilation holds iff
///   -eps P0(¬A) P0(¬B) <= P0(A∧B) - P0(A) P0(B) <= eps P0(A) P0(¬B)
/// for every block; strict dilation iff the inequalities are strict.
EpsilonDilationResult epsilon_dilation(const NLModel& model, const Event& a,
                                       const Partition& part);

/// L(A,B) = P0(A∧B) - b P0(A) P0(B) - a P0(B). Additive over disjoint
/// decompositions of B. VBM only.
Rational elle(const NLModel& model, const Event& a, const Event& b);

/// Sign tests: where applicable, lower(A|B) <= lower(A) iff L(A,¬B) >= 0,
/// and upper(A|B) >= upper(A) iff L(¬A,¬B) >= 0. A side is applicable when
/// lower(A) = 0 (resp. upper(A) = 1) or the corresponding joint values are
/// positive; inapplicable sides come back disengaged rather than as errors.
struct ElleSignTest {
    std::optional<bool> lower_side;
    std::optional<bool> upper_side;
};

ElleSignTest elle_sign_test(const NLModel& model, const Event& a, const Event& given);

/// Sufficient condition for a strictly coarser nontrivial partition to also
/// dilate: ((a1) lower(A)=0 or (a2) all joint lowers/uppers positive on the
/// A side) and ((b1) upper(A)=1 or (b2) dually). Preconditions (VBM, >= 3
/// blocks, weak dilation, A2/A3, lower(B) > 0 on every block) are enforced
/// as named gates.
struct CoarseningHypotheses {
    bool verdict = false;
    bool a1 = false, a2 = false, b1 = false, b2 = false;
};

CoarseningHypotheses coarsening_hypotheses(const NLModel& model, const Event& a,
                                           const Partition& part);

/// First coarser nontrivial partition (in enumeration order) that dilates A
/// in the requested mode, if any.
std::optional<Partition> find_dilating_coarser(const NLModel& model, const Event& a,
                                               const Partition& part, DilationMode mode,
                                               const CoarseningOptions& opts = {});

/// Non-correlation criterion: if lower(A∧B), lower(¬A∧B) > 0 and
/// P0(A∧B) = P0(A) P0(B) for every block, then the partition and every
/// coarser partition weakly dilate A. Returns whether the hypotheses hold;
/// when they do, both conclusions are verified exhaustively within caps.
bool non_correlation_dilation(const NLModel& model, const Event& a, const Partition& part,
                              const CoarseningOptions& opts = {});

/// Extent of dilation for a strictly dilating partition (VBM only):
///   delta = lower(A) - upper(A)
///         + min{1, width at B*, 1/(1+M0), 1/(1+M1)}
/// where B* maximizes P0 among blocks with interior conditionals,
/// M0 = max lower(¬A∧B)/upper(A∧B) over blocks with conditional lower 0,
/// M1 = max lower(A∧B)/upper(¬A∧B) over blocks with conditional upper 1,
/// empty classes skipped. delta_bruteforce is the direct minimum of the
/// imprecision variation over blocks and must coincide.
struct ExtentReport {
    Rational delta;
    Rational delta_bruteforce;
    Event argmin_block;
    std::vector<Event> zero_blocks;        // lower(B) = 0
    std::vector<Event> positive_blocks;    // lower(B) > 0
    std::vector<Event> interior_blocks;    // conditionals both interior
    std::vector<Event> lower_zero_blocks;  // conditional lower 0, upper interior
    std::vector<Event> upper_one_blocks;   // conditional lower interior, upper 1
    std::optional<Event> b_star;
    std::optional<Rational> m0;
    std::optional<Rational> m1;
    Rational lower_a;
    Rational upper_a;

    ExtentReport(Event argmin) : argmin_block(std::move(argmin)) {}
};

ExtentReport extent(const NLModel& model, const Event& a, const Partition& part);

/// min over blocks of max{imprecision variation, 0}; equals the extent
/// whenever dilation holds, and is total otherwise.
Rational imprecision_increase_extent(const NLModel& model, const Event& a, const Partition& part);

/// For a VBM with b < 1, interior unconditional and conditional values and
/// P0(B) < 1, lower(B) > 0 on every block, the imprecision variation is
/// strictly positive on every block.
struct GuaranteeResult {
    bool applicable = false;
    std::string failed_hypothesis;  // why not applicable
    bool verdict = false;           // all blocks have positive variation
};

GuaranteeResult imprecision_increase_guarantee(const NLModel& model, const Event& a,
                                               const Partition& part);

/// Constriction: lower(A) <= lower(A|B) <= upper(A|B) <= upper(A) on every
/// block, with at least one outer inequality strict somewhere. The report
/// names the shortcut that decides the instance, when one applies:
///   "positive-interior-block"  no zero-lower blocks and some block has
///                              lower(A∧B), lower(¬A∧B) > 0 -> never constricts
///   "zero-block-independence"  zero-lower blocks exist and A is logically
///                              independent of the partition -> never constricts
///   "zero-block-extreme-iff"   zero-lower blocks exist and one of them
///                              implies neither A nor ¬A -> constricts iff
///                              lower(A)=0, upper(A)=1 and some zero-lower
///                              block implies A or ¬A
///   "direct"                   no shortcut; the direct evaluation decides
struct ConstrictionReport {
    bool constricts = false;
    std::optional<Event> strict_witness;
    std::string shortcut = "direct";
    std::optional<bool> shortcut_verdict;  // what the shortcut predicts
};

ConstrictionReport check_constriction(const NLModel& model, const Event& a,
                                      const Partition& part);

/// Dilation when A is logically dependent or semidependent on the
/// partition: dependent and two-sided semidependent events are never
/// weakly dilated (non-trivially); one-sided semidependence dilates weakly
/// and non-trivially iff the extreme-value conditions hold.
struct DependenceDilationResult {
    DependenceClass dependence = DependenceClass::independent;
    bool dilates_weakly_nontrivially = false;
    DilationReport direct;  // the direct inequality scan, for cross-checking
};

DependenceDilationResult dependence_dilation(const NLModel& model, const Event& a,
                                             const Partition& part);

/// Extreme A (lower = upper in {0,1}) logically independent of the
/// partition: weak dilation always holds; it is trivial exactly when every
/// block has lower(B) > 0.
DilationReport extreme_dilation(const NLModel& model, const Event& a, const Partition& part);

}  // namespace nlm
