#include "nlm/events.hpp"

#include <algorithm>
#include <bit>
#include <set>

#include "nlm/errors.hpp"

namespace nlm {

SampleSpace::SampleSpace(std::vector<std::string> atom_labels) : atoms_(std::move(atom_labels)) {}

SpacePtr SampleSpace::create(std::vector<std::string> atom_labels) {
    if (atom_labels.empty()) throw UsageError("sample space needs at least one atom");
    if (atom_labels.size() > kMaxAtoms)
        throw CapacityError("sample space exceeds " + std::to_string(kMaxAtoms) + " atoms");
    std::set<std::string> seen;
    for (const auto& label : atom_labels) {
        if (label.empty()) throw UsageError("empty atom label");
        if (!seen.insert(label).second) throw UsageError("duplicate atom label: " + label);
    }
    return SpacePtr(new SampleSpace(std::move(atom_labels)));
}

int SampleSpace::index_of(const std::string& label) const {
    for (std::size_t i = 0; i < atoms_.size(); ++i)
        if (atoms_[i] == label) return static_cast<int>(i);
    return -1;
}

bool SampleSpace::same_as(const SampleSpace& other) const {
    return this == &other || atoms_ == other.atoms_;
}

Event::Event(SpacePtr space, EventMask mask) : space_(std::move(space)), mask_(mask) {
    if (!space_) throw UsageError("event without a sample space");
    if (mask_ & ~space_->full_mask()) throw UsageError("event mask uses bits beyond the atom count");
}

Event Event::full(const SpacePtr& space) { return Event(space, space->full_mask()); }

Event Event::of_atoms(const SpacePtr& space, const std::vector<std::string>& labels) {
    EventMask m = 0;
    for (const auto& label : labels) {
        int i = space->index_of(label);
        if (i < 0) throw UsageError("unknown atom: " + label);
        m |= EventMask{1} << i;
    }
    return Event(space, m);
}

Event Event::single_atom(const SpacePtr& space, std::size_t index) {
    if (index >= space->size()) throw UsageError("atom index out of range");
    return Event(space, EventMask{1} << index);
}

std::size_t Event::cardinality() const { return static_cast<std::size_t>(std::popcount(mask_)); }

Event Event::complement() const { return Event(space_, space_->full_mask() & ~mask_); }

Event Event::meet(const Event& other) const {
    require_same_space(*this, other);
    return Event(space_, mask_ & other.mask_);
}

Event Event::join(const Event& other) const {
    require_same_space(*this, other);
    return Event(space_, mask_ | other.mask_);
}

Event Event::minus(const Event& other) const {
    require_same_space(*this, other);
    return Event(space_, mask_ & ~other.mask_);
}

bool Event::implies(const Event& other) const {
    require_same_space(*this, other);
    return (mask_ & ~other.mask_) == 0;
}

bool Event::intersects(const Event& other) const {
    require_same_space(*this, other);
    return (mask_ & other.mask_) != 0;
}

std::vector<std::string> Event::atom_labels() const {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < space_->size(); ++i)
        if (contains_atom(i)) out.push_back(space_->atom(i));
    return out;
}

std::string Event::to_string() const {
    if (is_empty()) return "FALSE";
    if (is_full()) return "TRUE";
    std::string out;
    for (std::size_t i = 0; i < space_->size(); ++i) {
        if (!contains_atom(i)) continue;
        if (!out.empty()) out += "|";
        out += space_->atom(i);
    }
    return out;
}

void require_same_space(const Event& a, const Event& b) {
    if (!a.space()->same_as(*b.space()))
        throw UsageError("events built on different sample spaces");
}

Partition::Partition(SpacePtr space, std::vector<Event> blocks)
    : space_(std::move(space)), blocks_(std::move(blocks)) {
    if (!space_) throw UsageError("partition without a sample space");
    if (blocks_.empty()) throw UsageError("partition needs at least one block");
    EventMask covered = 0;
    for (const auto& block : blocks_) {
        if (!block.space()->same_as(*space_))
            throw UsageError("partition block on a different sample space");
        if (block.is_empty()) throw UsageError("partition block is empty");
        if (covered & block.mask()) throw UsageError("partition blocks are not disjoint");
        covered |= block.mask();
    }
    if (covered != space_->full_mask()) throw UsageError("partition blocks do not cover the space");
}

Partition Partition::atoms(const SpacePtr& space) {
    std::vector<Event> blocks;
    for (std::size_t i = 0; i < space->size(); ++i) blocks.push_back(Event::single_atom(space, i));
    return Partition(space, std::move(blocks));
}

std::string Partition::to_string() const {
    std::string out = "{";
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
        if (i) out += ", ";
        out += blocks_[i].to_string();
    }
    return out + "}";
}

bool operator==(const Partition& a, const Partition& b) {
    if (!a.space_->same_as(*b.space_) || a.blocks_.size() != b.blocks_.size()) return false;
    // Order-insensitive: partitions are sets of blocks.
    std::vector<EventMask> am, bm;
    for (const auto& e : a.blocks_) am.push_back(e.mask());
    for (const auto& e : b.blocks_) bm.push_back(e.mask());
    std::sort(am.begin(), am.end());
    std::sort(bm.begin(), bm.end());
    return am == bm;
}

const char* to_string(DependenceClass c) {
    switch (c) {
        case DependenceClass::independent: return "independent";
        case DependenceClass::dependent: return "dependent";
        case DependenceClass::semidep_type1: return "semidep-type1";
        case DependenceClass::semidep_type2: return "semidep-type2";
        case DependenceClass::semidep_two_sided: return "semidep-two-sided";
    }
    return "?";
}

DependenceClass classify_dependence(const Event& a, const Partition& part) {
    require_same_space(a, Event(part.space(), 0));
    bool some_implies_a = false, some_implies_not_a = false, some_neither = false;
    const Event not_a = a.complement();
    for (const auto& block : part.blocks()) {
        const bool to_a = block.implies(a);
        const bool to_not_a = block.implies(not_a);
        some_implies_a |= to_a;
        some_implies_not_a |= to_not_a;
        some_neither |= !to_a && !to_not_a;
    }
    if (!some_implies_a && !some_implies_not_a) return DependenceClass::independent;
    if (!some_neither) return DependenceClass::dependent;
    if (some_implies_a && some_implies_not_a) return DependenceClass::semidep_two_sided;
    return some_implies_a ? DependenceClass::semidep_type2 : DependenceClass::semidep_type1;
}

bool independence_cardinality_check(const Event& a, const Partition& part) {
    const std::size_t k = part.size();
    return k >= 2 && k <= std::min(a.cardinality(), a.complement().cardinality());
}

namespace {

// Restricted growth strings of length n in lexicographic order, class count
// capped at max_classes. Returns false once exhausted.
bool next_rgs(std::vector<int>& a, std::size_t max_classes) {
    const std::size_t n = a.size();
    for (std::size_t pos = n; pos-- > 1;) {
        int prefix_max = 0;
        for (std::size_t j = 0; j < pos; ++j) prefix_max = std::max(prefix_max, a[j]);
        const int ceiling = std::min(prefix_max + 1, static_cast<int>(max_classes) - 1);
        if (a[pos] < ceiling) {
            ++a[pos];
            for (std::size_t j = pos + 1; j < n; ++j) a[j] = 0;
            return true;
        }
    }
    return false;
}

}  // namespace

void for_each_coarsening(const Partition& part,
                         const std::function<bool(const Partition&)>& visit,
                         const CoarseningOptions& opts) {
    const std::size_t m = part.size();
    if (m > opts.max_blocks)
        throw CapacityError("coarsening enumeration capped at " + std::to_string(opts.max_blocks) +
                            " blocks, partition has " + std::to_string(m));
    if (m <= 2) return;  // the only coarser partition is {Ω}, excluded

    std::vector<int> rgs(m, 0);
    do {
        const int classes = *std::max_element(rgs.begin(), rgs.end()) + 1;
        if (classes == 1) continue;                         // {Ω}
        if (classes == static_cast<int>(m)) continue;       // the partition itself
        std::vector<EventMask> merged(classes, 0);
        for (std::size_t i = 0; i < m; ++i) merged[rgs[i]] |= part.block(i).mask();
        std::vector<Event> blocks;
        blocks.reserve(classes);
        for (EventMask mask : merged) blocks.emplace_back(part.space(), mask);
        if (!visit(Partition(part.space(), std::move(blocks)))) return;
    } while (next_rgs(rgs, m));
}

std::vector<Partition> coarsenings(const Partition& part, const CoarseningOptions& opts) {
    std::vector<Partition> out;
    for_each_coarsening(part, [&](const Partition& p) {
        out.push_back(p);
        return true;
    }, opts);
    return out;
}

void for_each_independent_partition(const Event& a, std::size_t max_blocks,
                                    const std::function<bool(const Partition&)>& visit,
                                    const IndependentEnumerationOptions& opts) {
    const SpacePtr& space = a.space();
    const std::size_t n = space->size();
    if (n > opts.max_atoms)
        throw CapacityError("independent-partition enumeration capped at " +
                            std::to_string(opts.max_atoms) + " atoms, space has " +
                            std::to_string(n));
    const std::size_t ca = a.cardinality();
    const std::size_t cna = n - ca;
    if (ca < 2 || cna < 2)
        throw UsageError("independent-partition enumeration needs |A| >= 2 and |not A| >= 2");
    if (max_blocks < 2 || max_blocks > std::min(ca, cna))
        throw InvalidParameterError("max_blocks must lie in [2, min{|A|, |not A|}]");

    std::vector<int> rgs(n, 0);
    do {
        const int classes = *std::max_element(rgs.begin(), rgs.end()) + 1;
        if (classes < 2) continue;
        std::vector<EventMask> masks(classes, 0);
        for (std::size_t i = 0; i < n; ++i) masks[rgs[i]] |= EventMask{1} << i;
        const EventMask am = a.mask();
        const EventMask nam = space->full_mask() & ~am;
        bool independent = true;
        for (EventMask mask : masks) {
            if (!(mask & am) || !(mask & nam)) {  // block implies ¬A resp. A
                independent = false;
                break;
            }
        }
        if (!independent) continue;
        std::vector<Event> blocks;
        blocks.reserve(classes);
        for (EventMask mask : masks) blocks.emplace_back(space, mask);
        if (!visit(Partition(space, std::move(blocks)))) return;
    } while (next_rgs(rgs, max_blocks));
}

std::vector<Partition> independent_partitions(const Event& a, std::size_t max_blocks,
                                              const IndependentEnumerationOptions& opts) {
    std::vector<Partition> out;
    for_each_independent_partition(a, max_blocks, [&](const Partition& p) {
        out.push_back(p);
        return true;
    }, opts);
    return out;
}

}  // namespace nlm
