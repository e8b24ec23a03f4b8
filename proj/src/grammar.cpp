#include "avlg/grammar.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "avlg/detail/greedy_merge.hpp"

namespace avlg {

Grammar::Grammar(FingerprintContext ctx) : ctx_(ctx) {
    terminal_memo_.fill(kNoNode);
}

Grammar::Grammar(const Grammar& other)
    : ctx_(other.ctx_),
      rules_(other.rules_),
      heights_(other.heights_),
      tables_(other.tables_),
      terminal_memo_(other.terminal_memo_),
      terminals_(other.terminals_),
      fp_expansions_(other.fingerprint_expansions()) {}

Grammar& Grammar::operator=(const Grammar& other) {
    if (this != &other) {
        ctx_ = other.ctx_;
        rules_ = other.rules_;
        heights_ = other.heights_;
        tables_ = other.tables_;
        terminal_memo_ = other.terminal_memo_;
        terminals_ = other.terminals_;
        fp_expansions_.store(other.fingerprint_expansions(), std::memory_order_relaxed);
    }
    return *this;
}

Grammar::Grammar(Grammar&& other) noexcept
    : ctx_(other.ctx_),
      rules_(std::move(other.rules_)),
      heights_(std::move(other.heights_)),
      tables_(std::move(other.tables_)),
      terminal_memo_(other.terminal_memo_),
      terminals_(other.terminals_),
      fp_expansions_(other.fingerprint_expansions()) {}

Grammar& Grammar::operator=(Grammar&& other) noexcept {
    if (this != &other) {
        ctx_ = other.ctx_;
        rules_ = std::move(other.rules_);
        heights_ = std::move(other.heights_);
        tables_ = std::move(other.tables_);
        terminal_memo_ = other.terminal_memo_;
        terminals_ = other.terminals_;
        fp_expansions_.store(other.fingerprint_expansions(), std::memory_order_relaxed);
    }
    return *this;
}

NodeId Grammar::append_terminal(Symbol c) {
    const NodeId id = rules_.size();
    rules_.push_back({kNoNode, c});
    heights_.push_back(0);
    tables_.push(1, std::nullopt);
    ++terminals_;
    if (terminal_memo_[c] == kNoNode)
        terminal_memo_[c] = id;
    return id;
}

NodeId Grammar::append_binary(NodeId l, NodeId r) {
    const NodeId id = rules_.size();
    if (l >= id || r >= id)
        throw std::invalid_argument("append_binary: child id does not exist");
    const int h = 1 + std::max(height(l), height(r));
    if (h > 255)
        throw std::overflow_error("grammar height exceeds 255");
    const std::uint64_t len = explen(l) + explen(r);
    std::optional<Fingerprint> fp;
    if (len >= SideTables::kOverflow)
        fp = ctx_.concat(fingerprint(l), explen(r), fingerprint(r));
    rules_.push_back({l, r});
    heights_.push_back(static_cast<std::uint8_t>(h));
    tables_.push(len, fp);
    return id;
}

NodeId Grammar::add_symbol(Symbol c) {
    if (terminal_memo_[c] != kNoNode)
        return terminal_memo_[c];
    return append_terminal(c);
}

namespace {

// Join workspace. Nodes either wrap an existing record or describe a new
// binary node over two other workspace nodes; only the nodes reachable
// from the final root get materialized.
class JoinBuilder {
public:
    explicit JoinBuilder(Grammar& g) : g_(g) {}

    int leaf(NodeId id) {
        nodes_.push_back({id, -1, -1, g_.height(id)});
        return static_cast<int>(nodes_.size()) - 1;
    }
    int node(int l, int r) {
        nodes_.push_back({kNoNode, l, r, 1 + std::max(h(l), h(r))});
        return static_cast<int>(nodes_.size()) - 1;
    }
    int h(int t) const { return nodes_[t].height; }

    std::pair<int, int> expose(int t) {
        const Node n = nodes_[t];
        if (n.existing == kNoNode)
            return {n.left, n.right};
        int l = leaf(g_.left(n.existing));
        int r = leaf(g_.right(n.existing));
        return {l, r};
    }

    int join(int l, int r) {
        if (h(l) > h(r) + 1)
            return join_right(l, r);
        if (h(r) > h(l) + 1)
            return join_left(l, r);
        return node(l, r);
    }

    NodeId materialize(int t) {
        const Node n = nodes_[t];
        if (n.existing != kNoNode)
            return n.existing;
        NodeId l = materialize(n.left);
        NodeId r = materialize(n.right);
        return g_.append_binary(l, r);
    }

private:
    struct Node {
        NodeId existing;
        int left;
        int right;
        int height;
    };

    int rotate_left(int t) {
        auto [a, b] = expose(t);
        auto [b1, b2] = expose(b);
        return node(node(a, b1), b2);
    }
    int rotate_right(int t) {
        auto [a, b] = expose(t);
        auto [a1, a2] = expose(a);
        return node(a1, node(a2, b));
    }

    // h(tl) > h(tr) + 1: descend the right spine of tl.
    int join_right(int tl, int tr) {
        auto [l, c] = expose(tl);
        if (h(c) <= h(tr) + 1) {
            int t = node(c, tr);
            if (h(t) <= h(l) + 1)
                return node(l, t);
            return rotate_left(node(l, rotate_right(t)));
        }
        int t = join_right(c, tr);
        int res = node(l, t);
        if (h(t) <= h(l) + 1)
            return res;
        return rotate_left(res);
    }

    // h(tr) > h(tl) + 1: mirror image, descending the left spine of tr.
    int join_left(int tl, int tr) {
        auto [c, r] = expose(tr);
        if (h(c) <= h(tl) + 1) {
            int t = node(tl, c);
            if (h(t) <= h(r) + 1)
                return node(t, r);
            return rotate_right(node(rotate_left(t), r));
        }
        int t = join_left(tl, c);
        int res = node(t, r);
        if (h(t) <= h(r) + 1)
            return res;
        return rotate_right(res);
    }

    Grammar& g_;
    std::vector<Node> nodes_;
};

}  // namespace

NodeId Grammar::join(NodeId x, NodeId y) {
    const int hx = height(x), hy = height(y);
    if (hx <= hy + 1 && hy <= hx + 1)
        return append_binary(x, y);
    JoinBuilder b(*this);
    return b.materialize(b.join(b.leaf(x), b.leaf(y)));
}

NodeId Grammar::add_merged(NodeId x, NodeId y) {
    if (!contains(x) || !contains(y))
        throw std::invalid_argument("add_merged: unknown id");
    return join(x, y);
}

void Grammar::decompose_into(NodeId a, std::uint64_t i, std::uint64_t j,
                             std::vector<NodeId>& out) const {
    if (!contains(a))
        throw std::invalid_argument("decompose: unknown id");
    if (i < 1 || i > j || j > explen(a))
        throw std::out_of_range("decompose: range out of bounds");

    // Descend to the lowest node whose range still contains [i..j]; the
    // range is [offset+1 .. offset+explen(v)].
    NodeId v = a;
    std::uint64_t offset = 0;
    while (true) {
        if (i == offset + 1 && j == offset + explen(v)) {
            out.push_back(v);
            return;
        }
        const NodeId l = left(v);
        const std::uint64_t mid = offset + explen(l);
        if (j <= mid) {
            v = l;
        } else if (i > mid) {
            v = right(v);
            offset = mid;
        } else {
            break;
        }
    }

    // Left boundary: suffix of left(v) starting at i. Right children met
    // on the way down are emitted, deepest last, so they are reversed.
    const std::size_t left_begin = out.size();
    {
        NodeId u = left(v);
        std::uint64_t start = offset + 1;
        while (true) {
            if (i == start) {
                out.push_back(u);
                break;
            }
            const NodeId ul = left(u);
            const std::uint64_t mid = start + explen(ul);  // first position of right(u)
            if (i >= mid) {
                u = right(u);
                start = mid;
            } else {
                out.push_back(right(u));
                u = ul;
            }
        }
    }
    std::reverse(out.begin() + static_cast<std::ptrdiff_t>(left_begin), out.end());

    // Right boundary: prefix of right(v) ending at j.
    {
        NodeId u = right(v);
        std::uint64_t start = offset + explen(left(v)) + 1;
        while (true) {
            if (j == start + explen(u) - 1) {
                out.push_back(u);
                break;
            }
            const NodeId ul = left(u);
            const std::uint64_t last_left = start + explen(ul) - 1;
            if (j <= last_left) {
                u = ul;
            } else {
                out.push_back(ul);
                u = right(u);
                start = last_left + 1;
            }
        }
    }
}

std::vector<NodeId> Grammar::decompose(NodeId a, std::uint64_t i, std::uint64_t j) const {
    std::vector<NodeId> out;
    decompose_into(a, i, j, out);
    return out;
}

NodeId Grammar::merge_sequence(std::span<const NodeId> ids) {
    if (ids.empty())
        throw std::invalid_argument("merge_sequence: empty sequence");
    std::vector<NodeId> items(ids.begin(), ids.end());
    return detail::greedy_merge(
        std::move(items), [this](NodeId id) { return height(id); },
        [this](NodeId x, NodeId y) { return join(x, y); });
}

NodeId Grammar::add_substring(NodeId a, std::uint64_t i, std::uint64_t j) {
    return merge_sequence(decompose(a, i, j));
}

std::string Grammar::expand(NodeId id) const {
    std::string out;
    out.reserve(explen(id));
    expand_chunks(id, [&](std::string_view chunk) { out.append(chunk); });
    return out;
}

std::string Grammar::expand_prefix(NodeId id, std::uint64_t k) const {
    if (k > explen(id))
        throw std::out_of_range("expand_prefix: k exceeds expansion length");
    std::string out;
    out.reserve(k);
    std::vector<NodeId> stack{id};
    while (out.size() < k) {
        NodeId v = stack.back();
        stack.pop_back();
        while (!is_terminal(v)) {
            stack.push_back(right(v));
            v = left(v);
        }
        out.push_back(static_cast<char>(symbol(v)));
    }
    return out;
}

Fingerprint Grammar::fingerprint(NodeId id) const {
    if (auto fp = tables_.fp_long(id))
        return *fp;
    fp_expansions_.fetch_add(1, std::memory_order_relaxed);
    if (is_terminal(id))
        return ctx_.extend({}, symbol(id));
    Fingerprint fp;
    expand_chunks(id, [&](std::string_view chunk) {
        for (char c : chunk)
            fp = ctx_.extend(fp, static_cast<std::uint8_t>(c));
    });
    return fp;
}

std::uint64_t grammar_size(const Grammar& g) {
    return g.size();
}

bool avl_check(const Grammar& g) {
    for (NodeId id = 0; id < g.record_count(); ++id) {
        if (g.is_terminal(id)) {
            if (g.height(id) != 0)
                return false;
            continue;
        }
        const NodeId l = g.left(id), r = g.right(id);
        if (l >= id || r >= id)
            return false;
        const int hl = g.height(l), hr = g.height(r);
        if (std::abs(hl - hr) > 1 || g.height(id) != 1 + std::max(hl, hr))
            return false;
    }
    return true;
}

bool height_check(const Grammar& g) {
    for (NodeId id = 0; id < g.record_count(); ++id) {
        const double bound = 1.45 * std::log2(static_cast<double>(g.explen(id)) + 2.0) + 2.0;
        if (g.height(id) > bound)
            return false;
    }
    return true;
}

std::vector<NodeId> reachable(const Grammar& g, std::span<const NodeId> roots) {
    std::vector<bool> seen(g.record_count(), false);
    std::vector<NodeId> stack;
    for (NodeId r : roots) {
        if (!g.contains(r))
            throw std::invalid_argument("reachable: unknown root");
        if (!seen[r]) {
            seen[r] = true;
            stack.push_back(r);
        }
    }
    while (!stack.empty()) {
        NodeId v = stack.back();
        stack.pop_back();
        if (g.is_terminal(v))
            continue;
        for (NodeId c : {g.left(v), g.right(v)}) {
            if (!seen[c]) {
                seen[c] = true;
                stack.push_back(c);
            }
        }
    }
    std::vector<NodeId> out;
    for (NodeId id = 0; id < seen.size(); ++id)
        if (seen[id])
            out.push_back(id);
    return out;
}

PruneResult prune(const Grammar& g, std::span<const NodeId> roots) {
    const auto keep = reachable(g, roots);
    std::vector<NodeId> remap(g.record_count(), kNoNode);
    PruneResult res{Grammar(g.fingerprints()), {}};
    for (NodeId id : keep) {
        remap[id] = g.is_terminal(id)
                        ? res.grammar.append_terminal(g.symbol(id))
                        : res.grammar.append_binary(remap[g.left(id)], remap[g.right(id)]);
    }
    for (NodeId r : roots)
        res.roots.push_back(remap[r]);
    return res;
}

}  // namespace avlg
