#ifndef AVLG_DETAIL_GREEDY_MERGE_HPP_
#define AVLG_DETAIL_GREEDY_MERGE_HPP_

#include <cstdint>
#include <functional>
#include <queue>
#include <vector>

namespace avlg::detail {

/// Heap entry of the greedy merge. Entries whose stamp no longer matches
/// the slot's current stamp are stale and skipped on pop.
struct MergeHeapEntry {
    std::size_t slot;
    int height;
    std::uint32_t stamp;

    // Min-heap on (height, slot): lowest first, leftmost among equals.
    friend bool operator>(const MergeHeapEntry& a, const MergeHeapEntry& b) {
        if (a.height != b.height)
            return a.height > b.height;
        return a.slot > b.slot;
    }
};

/// Merges `items` (left to right) into one element. Repeatedly takes the
/// lowest remaining element and merges it with its lower neighbour (left
/// on ties). `height_of(item)` gives the height, `merge(l, r)` returns the
/// merged item.
template <typename Item, typename HeightOf, typename Merge>
Item greedy_merge(std::vector<Item> items, HeightOf height_of, Merge merge) {
    const std::size_t n = items.size();
    if (n == 1)
        return std::move(items[0]);

    constexpr std::size_t kNil = static_cast<std::size_t>(-1);
    std::vector<std::size_t> prev(n), next(n);
    std::vector<std::uint32_t> stamp(n, 0);
    std::priority_queue<MergeHeapEntry, std::vector<MergeHeapEntry>, std::greater<>> heap;
    for (std::size_t k = 0; k < n; ++k) {
        prev[k] = k == 0 ? kNil : k - 1;
        next[k] = k + 1 == n ? kNil : k + 1;
        heap.push({k, height_of(items[k]), 0});
    }

    std::size_t remaining = n;
    while (remaining > 1) {
        MergeHeapEntry top = heap.top();
        heap.pop();
        if (top.stamp != stamp[top.slot])
            continue;
        const std::size_t u = top.slot;
        const std::size_t l = prev[u], r = next[u];
        std::size_t a, b;  // merged pair, a left of b
        if (l == kNil || (r != kNil && height_of(items[r]) < height_of(items[l]))) {
            a = u;
            b = r;
        } else {
            a = l;
            b = u;
        }
        items[a] = merge(items[a], items[b]);
        ++stamp[a];
        ++stamp[b];
        next[a] = next[b];
        if (next[b] != kNil)
            prev[next[b]] = a;
        --remaining;
        heap.push({a, height_of(items[a]), stamp[a]});
    }
    // Merges keep the left slot, so slot 0 ends up holding the result.
    return std::move(items[0]);
}

}  // namespace avlg::detail

#endif  // AVLG_DETAIL_GREEDY_MERGE_HPP_
