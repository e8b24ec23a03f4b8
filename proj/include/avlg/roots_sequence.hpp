#ifndef AVLG_ROOTS_SEQUENCE_HPP_
#define AVLG_ROOTS_SEQUENCE_HPP_

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "avlg/blocked_array.hpp"
#include "avlg/fingerprint.hpp"

namespace avlg {

struct RootEntry {
    std::uint64_t ell = 0;  // cumulative expansion end position
    NodeId id = 0;
    bool deleted = false;
};

/// Physical slots of the first and last live root of a range.
struct RootsRange {
    std::size_t first;
    std::size_t last;
};

/// Ordered sequence of (ell, root) pairs whose expansions concatenate to
/// the processed prefix. Insertions happen only at the end; deletions
/// only mark slots, and a compaction pass runs once the number of deleted
/// slots touched by queries reaches the physical size.
///
/// Physical indices stay valid until the next call to push(), range() or
/// gc(), any of which may compact the array.
class RootsSequence {
public:
    /// Throws std::logic_error("non-monotone roots") unless ell exceeds the
    /// last live ell.
    void push(std::uint64_t ell, NodeId id);

    /// Live roots fully inside [i..j] (1-based, inclusive): first is
    /// min{t : ell_{t-1} >= i-1}, last is max{t : ell_t <= j}. Empty when
    /// no root fits. Throws std::out_of_range unless 1 <= i <= j <= length().
    std::optional<RootsRange> range(std::uint64_t i, std::uint64_t j);

    /// Deletes live roots in slots [x..y] and stores (ell, id) in slot y.
    /// `ell` must equal the current ell of slot y.
    void replace_range(std::size_t x, std::size_t y, std::uint64_t ell, NodeId id);

    void gc();

    /// Slot of the live root whose expansion covers text position pos.
    std::size_t containing(std::uint64_t pos);
    /// 0-based start offset of the live root in slot k (ell of its
    /// predecessor).
    std::uint64_t start_of(std::size_t k);
    std::optional<std::size_t> next_live(std::size_t k);
    std::optional<std::size_t> prev_live(std::size_t k);
    std::vector<RootEntry> collect_live(std::size_t x, std::size_t y);

    const RootEntry& entry(std::size_t k) const { return entries_[k]; }
    std::size_t physical_size() const { return entries_.size(); }
    std::size_t live_count() const { return live_; }
    std::uint64_t length() const { return entries_.empty() ? 0 : entries_.back().ell; }

    /// Live entries as (ell, id) pairs, in order.
    std::vector<std::pair<std::uint64_t, NodeId>> live_entries() const;

    std::uint64_t gc_runs() const { return gc_runs_; }
    std::uint64_t gc_moved() const { return gc_moved_; }
    std::size_t memory_bytes() const { return entries_.memory_bytes(); }

private:
    std::size_t lower_bound_ell(std::uint64_t v) const;
    std::optional<std::size_t> live_at_or_after(std::size_t k);
    std::optional<std::size_t> live_at_or_before(std::size_t k);
    void touch_deleted() { ++deleted_accesses_; }
    void maybe_gc();

    BlockedArray<RootEntry> entries_;
    std::size_t live_ = 0;
    std::uint64_t deleted_accesses_ = 0;
    std::uint64_t gc_runs_ = 0;
    std::uint64_t gc_moved_ = 0;
};

}  // namespace avlg

#endif  // AVLG_ROOTS_SEQUENCE_HPP_
