#ifndef AVLG_GRAMMAR_HPP_
#define AVLG_GRAMMAR_HPP_

#include <array>
#include <atomic>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "avlg/blocked_array.hpp"
#include "avlg/fingerprint.hpp"
#include "avlg/lz77.hpp"
#include "avlg/side_tables.hpp"

namespace avlg {

inline constexpr NodeId kNoNode = std::numeric_limits<NodeId>::max();

/// Append-only AVL grammar (a straight-line program in Chomsky normal
/// form). Records are never modified once created; ids are assigned in
/// creation order and binary rules only reference smaller ids.
class Grammar {
public:
    explicit Grammar(FingerprintContext ctx = FingerprintContext{});

    Grammar(const Grammar& other);
    Grammar& operator=(const Grammar& other);
    Grammar(Grammar&&) noexcept;
    Grammar& operator=(Grammar&&) noexcept;

    /// Memoized: one terminal rule per distinct symbol.
    NodeId add_symbol(Symbol c);

    /// Nonterminal expanding to exp(x)exp(y). Uses an AVL join along the
    /// spine of the taller operand; new records are created only for the
    /// nodes of the final shape.
    NodeId add_merged(NodeId x, NodeId y);

    /// Ids whose expansions concatenate to exp(a)[i..j] (1-based,
    /// inclusive). Throws std::out_of_range on a bad range.
    std::vector<NodeId> decompose(NodeId a, std::uint64_t i, std::uint64_t j) const;
    void decompose_into(NodeId a, std::uint64_t i, std::uint64_t j, std::vector<NodeId>& out) const;

    /// Nonterminal expanding to exp(a)[i..j].
    NodeId add_substring(NodeId a, std::uint64_t i, std::uint64_t j);

    /// Joins a sequence left to right into one nonterminal by repeatedly
    /// merging the lowest element with its lower neighbour.
    NodeId merge_sequence(std::span<const NodeId> ids);

    // Raw appends used by deserialization, pruning and tests. No balance
    // check is made; ids must already exist.
    NodeId append_terminal(Symbol c);
    NodeId append_binary(NodeId left, NodeId right);

    std::size_t record_count() const { return rules_.size(); }
    std::size_t terminal_count() const { return terminals_; }
    /// Total length of all right-hand sides.
    std::uint64_t size() const { return 2 * rules_.size() - terminals_; }

    bool contains(NodeId id) const { return id < rules_.size(); }
    bool is_terminal(NodeId id) const { return rules_[id].left == kNoNode; }
    Symbol symbol(NodeId id) const { return static_cast<Symbol>(rules_[id].right); }
    NodeId left(NodeId id) const { return rules_[id].left; }
    NodeId right(NodeId id) const { return rules_[id].right; }
    int height(NodeId id) const { return heights_[id]; }
    std::uint64_t explen(NodeId id) const { return tables_.explen(id); }

    std::string expand(NodeId id) const;
    std::string expand_prefix(NodeId id, std::uint64_t k) const;

    /// Streams exp(id) to `sink(std::string_view)` in bounded chunks.
    template <typename Sink>
    void expand_chunks(NodeId id, Sink&& sink) const;

    /// Phi(exp(id)). Stored for expansions of length >= 255, otherwise
    /// recomputed from the expansion.
    Fingerprint fingerprint(NodeId id) const;
    const FingerprintContext& fingerprints() const { return ctx_; }

    /// Number of expansions fingerprint() had to perform.
    std::uint64_t fingerprint_expansions() const {
        return fp_expansions_.load(std::memory_order_relaxed);
    }

    std::size_t memory_bytes() const {
        return rules_.memory_bytes() + heights_.memory_bytes() + tables_.memory_bytes();
    }

private:
    struct Rule {
        NodeId left;   // kNoNode for terminals
        NodeId right;  // symbol for terminals
    };

    NodeId join(NodeId x, NodeId y);

    FingerprintContext ctx_;
    BlockedArray<Rule> rules_;
    BlockedArray<std::uint8_t> heights_;
    SideTables tables_;
    std::array<NodeId, 256> terminal_memo_;
    std::size_t terminals_ = 0;
    mutable std::atomic<std::uint64_t> fp_expansions_{0};
};

template <typename Sink>
void Grammar::expand_chunks(NodeId id, Sink&& sink) const {
    std::string buf;
    buf.reserve(4096);
    std::vector<NodeId> stack{id};
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        while (!is_terminal(v)) {
            stack.push_back(right(v));
            v = left(v);
        }
        buf.push_back(static_cast<char>(symbol(v)));
        if (buf.size() == 4096) {
            sink(std::string_view(buf));
            buf.clear();
        }
    }
    if (!buf.empty())
        sink(std::string_view(buf));
}

std::uint64_t grammar_size(const Grammar& g);
/// Every binary rule references smaller ids, is balanced, and its stored
/// height is 1 + the larger child height.
bool avl_check(const Grammar& g);
/// height(A) <= 1.45 * log2(explen(A) + 2) + 2 for every A.
bool height_check(const Grammar& g);

struct PruneResult {
    Grammar grammar;
    std::vector<NodeId> roots;  // remapped input roots
};

/// Keeps exactly the records reachable from `roots`, renumbered in
/// increasing id order.
PruneResult prune(const Grammar& g, std::span<const NodeId> roots);

/// Ids reachable from `roots`, ascending.
std::vector<NodeId> reachable(const Grammar& g, std::span<const NodeId> roots);

}  // namespace avlg

#endif  // AVLG_GRAMMAR_HPP_
