#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace nlm {

using EventMask = std::uint32_t;

class SampleSpace;
using SpacePtr = std::shared_ptr<const SampleSpace>;

/// Ordered universe of atoms. Immutable once created; events reference it
/// through a shared pointer so conditioned models can own their restricted
/// space.
class SampleSpace {
public:
    static constexpr std::size_t kMaxAtoms = 31;  // mask width bound

    static SpacePtr create(std::vector<std::string> atom_labels);

    std::size_t size() const { return atoms_.size(); }
    const std::vector<std::string>& atoms() const { return atoms_; }
    const std::string& atom(std::size_t i) const { return atoms_[i]; }
    int index_of(const std::string& label) const;  // -1 if unknown
    EventMask full_mask() const { return static_cast<EventMask>((1u << atoms_.size()) - 1u); }

    /// Same object, or same label sequence.
    bool same_as(const SampleSpace& other) const;

private:
    explicit SampleSpace(std::vector<std::string> atom_labels);
    std::vector<std::string> atoms_;
};

/// Subset of the atom universe, encoded as a bitmask. Immutable value type.
class Event {
public:
    Event(SpacePtr space, EventMask mask);

    static Event empty(const SpacePtr& space) { return Event(space, 0); }
    static Event full(const SpacePtr& space);
    static Event of_atoms(const SpacePtr& space, const std::vector<std::string>& labels);
    static Event single_atom(const SpacePtr& space, std::size_t index);

    const SpacePtr& space() const { return space_; }
    EventMask mask() const { return mask_; }
    bool is_empty() const { return mask_ == 0; }
    bool is_full() const { return mask_ == space_->full_mask(); }
    std::size_t cardinality() const;

    Event complement() const;
    Event meet(const Event& other) const;
    Event join(const Event& other) const;
    Event minus(const Event& other) const;
    bool implies(const Event& other) const;  // this => other
    bool intersects(const Event& other) const;
    bool contains_atom(std::size_t index) const { return (mask_ >> index) & 1u; }

    std::vector<std::string> atom_labels() const;
    /// "w2|w4|w5"; "FALSE" for the empty event, "TRUE" for the sure event.
    std::string to_string() const;

    friend bool operator==(const Event& a, const Event& b) {
        return a.mask_ == b.mask_ && a.space_->same_as(*b.space_);
    }
    friend bool operator!=(const Event& a, const Event& b) { return !(a == b); }

private:
    SpacePtr space_;
    EventMask mask_;
};

/// Checks the two events live on the same space; throws UsageError otherwise.
void require_same_space(const Event& a, const Event& b);

/// Pairwise-disjoint nonempty events covering the sure event. Block order is
/// part of the value and preserved as given.
class Partition {
public:
    Partition(SpacePtr space, std::vector<Event> blocks);  // validates

    static Partition atoms(const SpacePtr& space);

    const SpacePtr& space() const { return space_; }
    const std::vector<Event>& blocks() const { return blocks_; }
    std::size_t size() const { return blocks_.size(); }
    const Event& block(std::size_t i) const { return blocks_[i]; }

    std::string to_string() const;  // "{w1|w2, w3|w4, w5|w6}"

    friend bool operator==(const Partition& a, const Partition& b);
    friend bool operator!=(const Partition& a, const Partition& b) { return !(a == b); }

private:
    SpacePtr space_;
    std::vector<Event> blocks_;
};

enum class DependenceClass {
    independent,
    dependent,
    semidep_type1,      // semidependent, no block implies A
    semidep_type2,      // semidependent, no block implies ¬A
    semidep_two_sided,  // semidependent, blocks implying A and blocks implying ¬A
};

const char* to_string(DependenceClass c);

/// Logical relation of A to the partition: independent iff no block implies
/// A or ¬A, dependent iff every block does, semidependent otherwise (split
/// by which side the implying blocks fall on).
DependenceClass classify_dependence(const Event& a, const Partition& part);

/// Necessary condition for logical independence: 2 <= |partition| <= min{|A|, |¬A|}.
bool independence_cardinality_check(const Event& a, const Partition& part);

struct CoarseningOptions {
    std::size_t max_blocks = 10;  // Bell-number growth past this
};

/// Visits every partition strictly coarser than `part` and nontrivial
/// (not {Ω}), each block a union of `part`'s blocks, in restricted-growth-
/// string order. The visitor returns false to stop early.
void for_each_coarsening(const Partition& part,
                         const std::function<bool(const Partition&)>& visit,
                         const CoarseningOptions& opts = {});

std::vector<Partition> coarsenings(const Partition& part, const CoarseningOptions& opts = {});

struct IndependentEnumerationOptions {
    std::size_t max_atoms = 14;
};

/// Visits every partition with 2..max_blocks blocks that A is logically
/// independent of, in restricted-growth-string order over atoms. Requires
/// |A| >= 2 and |¬A| >= 2 and max_blocks <= min{|A|, |¬A|}.
void for_each_independent_partition(const Event& a, std::size_t max_blocks,
                                    const std::function<bool(const Partition&)>& visit,
                                    const IndependentEnumerationOptions& opts = {});

std::vector<Partition> independent_partitions(const Event& a, std::size_t max_blocks,
                                              const IndependentEnumerationOptions& opts = {});

}  // namespace nlm
