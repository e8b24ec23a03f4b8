#include "avlg/roots_sequence.hpp"

#include <stdexcept>

namespace avlg {

void RootsSequence::push(std::uint64_t ell, NodeId id) {
    if (!entries_.empty() && ell <= entries_.back().ell)
        throw std::logic_error("non-monotone roots");
    maybe_gc();
    entries_.push_back({ell, id, false});
    ++live_;
}

void RootsSequence::maybe_gc() {
    if (deleted_accesses_ > 0 && deleted_accesses_ >= entries_.size())
        gc();
}

void RootsSequence::gc() {
    std::size_t out = 0;
    for (std::size_t k = 0; k < entries_.size(); ++k) {
        if (entries_[k].deleted)
            continue;
        if (out != k) {
            entries_[out] = entries_[k];
            ++gc_moved_;
        }
        ++out;
    }
    entries_.truncate(out);
    deleted_accesses_ = 0;
    ++gc_runs_;
}

// Ell values stay strictly increasing across deleted slots too: a range
// replacement reuses the ell of its last slot.
std::size_t RootsSequence::lower_bound_ell(std::uint64_t v) const {
    std::size_t lo = 0, hi = entries_.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (entries_[mid].ell < v)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

std::optional<std::size_t> RootsSequence::live_at_or_after(std::size_t k) {
    for (; k < entries_.size(); ++k) {
        if (!entries_[k].deleted)
            return k;
        touch_deleted();
    }
    return std::nullopt;
}

std::optional<std::size_t> RootsSequence::live_at_or_before(std::size_t k) {
    for (std::size_t t = k + 1; t-- > 0;) {
        if (!entries_[t].deleted)
            return t;
        touch_deleted();
    }
    return std::nullopt;
}

std::optional<std::size_t> RootsSequence::next_live(std::size_t k) {
    return live_at_or_after(k + 1);
}

std::optional<std::size_t> RootsSequence::prev_live(std::size_t k) {
    if (k == 0)
        return std::nullopt;
    return live_at_or_before(k - 1);
}

std::optional<RootsRange> RootsSequence::range(std::uint64_t i, std::uint64_t j) {
    if (i < 1 || i > j || j > length())
        throw std::out_of_range("roots range out of bounds");
    maybe_gc();

    std::optional<std::size_t> x;
    if (i == 1) {
        x = live_at_or_after(0);
    } else {
        auto covering = live_at_or_after(lower_bound_ell(i - 1));
        if (covering)
            x = next_live(*covering);
    }
    if (!x)
        return std::nullopt;

    // Last slot with ell <= j.
    std::size_t q = lower_bound_ell(j + 1);
    if (q == 0)
        return std::nullopt;
    auto y = live_at_or_before(q - 1);
    if (!y || *x > *y)
        return std::nullopt;
    return RootsRange{*x, *y};
}

void RootsSequence::replace_range(std::size_t x, std::size_t y, std::uint64_t ell, NodeId id) {
    if (x > y || y >= entries_.size() || entries_[x].deleted || entries_[y].deleted)
        throw std::logic_error("replace_range: slots must be live and ordered");
    if (entries_[y].ell != ell)
        throw std::logic_error("replace_range: ell must match the last replaced slot");
    for (std::size_t k = x; k < y; ++k) {
        if (entries_[k].deleted) {
            touch_deleted();
            continue;
        }
        entries_[k].deleted = true;
        --live_;
    }
    entries_[y].id = id;
}

std::size_t RootsSequence::containing(std::uint64_t pos) {
    if (pos < 1 || pos > length())
        throw std::out_of_range("roots position out of bounds");
    return *live_at_or_after(lower_bound_ell(pos));
}

std::uint64_t RootsSequence::start_of(std::size_t k) {
    auto p = prev_live(k);
    return p ? entries_[*p].ell : 0;
}

std::vector<RootEntry> RootsSequence::collect_live(std::size_t x, std::size_t y) {
    std::vector<RootEntry> out;
    for (std::size_t k = x; k <= y; ++k) {
        if (entries_[k].deleted) {
            touch_deleted();
            continue;
        }
        out.push_back(entries_[k]);
    }
    return out;
}

std::vector<std::pair<std::uint64_t, NodeId>> RootsSequence::live_entries() const {
    std::vector<std::pair<std::uint64_t, NodeId>> out;
    out.reserve(live_);
    for (std::size_t k = 0; k < entries_.size(); ++k)
        if (!entries_[k].deleted)
            out.emplace_back(entries_[k].ell, entries_[k].id);
    return out;
}

}  // namespace avlg
