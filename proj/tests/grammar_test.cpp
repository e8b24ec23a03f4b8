#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "avlg/grammar.hpp"
#include "oracles.hpp"

using avlg::Grammar;
using avlg::NodeId;

namespace {

// Random AVL grammar built through add_merged, with the expansion of every
// id tracked as a plain string.
struct RandomGrammar {
    Grammar g;
    std::vector<std::string> exp;

    RandomGrammar(std::mt19937_64& rng, std::size_t merges, std::size_t max_len, unsigned sigma = 4)
        : g(avlg::FingerprintContext(rng())) {
        for (unsigned c = 0; c < sigma; ++c)
            track(g.add_symbol(static_cast<avlg::Symbol>('a' + c)));
        for (std::size_t k = 0; k < merges; ++k) {
            const NodeId x = rng() % exp.size(), y = rng() % exp.size();
            if (exp[x].size() + exp[y].size() > max_len)
                continue;
            const std::string want = exp[x] + exp[y];
            track(g.add_merged(x, y));
            REQUIRE(exp.back() == want);
        }
    }

    void track(NodeId id) {
        while (exp.size() <= id) {
            const NodeId v = exp.size();
            exp.push_back(g.is_terminal(v) ? std::string(1, static_cast<char>(g.symbol(v)))
                                           : exp[g.left(v)] + exp[g.right(v)]);
        }
    }
};

bool bitonic(const std::vector<int>& h) {
    std::size_t k = 0;
    while (k + 1 < h.size() && h[k] <= h[k + 1])
        ++k;
    while (k + 1 < h.size() && h[k] >= h[k + 1])
        ++k;
    return k + 1 >= h.size();
}

std::vector<std::pair<NodeId, NodeId>> snapshot(const Grammar& g, std::size_t upto) {
    std::vector<std::pair<NodeId, NodeId>> v;
    for (NodeId id = 0; id < upto; ++id)
        v.emplace_back(g.left(id), g.right(id));
    return v;
}

}  // namespace

TEST_CASE("add_symbol memoizes") {
    Grammar g;
    const NodeId a = g.add_symbol('a');
    CHECK(g.size() == 1);
    CHECK(g.add_symbol('a') == a);
    CHECK(g.size() == 1);
    std::set<NodeId> ids;
    for (int c = 0; c < 256; ++c)
        ids.insert(g.add_symbol(static_cast<avlg::Symbol>(c)));
    CHECK(ids.size() == 256);
    CHECK(g.height(a) == 0);
    CHECK(g.explen(a) == 1);
    CHECK(g.expand(a) == "a");
}

TEST_CASE("grammar size definition") {
    Grammar g;
    const NodeId a = g.add_symbol('a');
    CHECK(avlg::grammar_size(g) == 1);
    const NodeId b = g.add_symbol('b');
    g.add_merged(a, b);
    CHECK(avlg::grammar_size(g) == 4);
}

TEST_CASE("add_merged of equal heights is a single rule") {
    Grammar g;
    const NodeId a = g.add_symbol('a'), b = g.add_symbol('b');
    const std::size_t before = g.record_count();
    const NodeId ab = g.add_merged(a, b);
    CHECK(g.record_count() == before + 1);
    CHECK(g.left(ab) == a);
    CHECK(g.right(ab) == b);
}

TEST_CASE("add_merged onto a height-5 comb") {
    Grammar g;
    const NodeId a = g.add_symbol('a'), b = g.add_symbol('b');
    NodeId x = a;
    std::string want = "a";
    while (g.height(x) < 5) {
        x = g.add_merged(x, b);
        want += "b";
    }
    REQUIRE(g.height(x) == 5);
    const std::size_t before = g.record_count();
    const NodeId m = g.add_merged(x, a);
    CHECK(g.expand(m) == want + "a");
    CHECK(g.record_count() - before <= 12);
    CHECK(avlg::avl_check(g));
}

TEST_CASE("add_merged on random pairs") {
    std::mt19937_64 rng(1);
    RandomGrammar rg(rng, 3000, 4000);
    for (int k = 0; k < 10000; ++k) {
        const NodeId x = rng() % rg.exp.size(), y = rng() % rg.exp.size();
        if (rg.exp[x].size() + rg.exp[y].size() > 6000)
            continue;
        const std::size_t before = rg.g.record_count();
        const auto snap = snapshot(rg.g, before);
        const NodeId m = rg.g.add_merged(x, y);
        const int dh = std::abs(rg.g.height(x) - rg.g.height(y));
        REQUIRE(rg.g.record_count() - before <= static_cast<std::size_t>(2 * (dh + 1)));
        REQUIRE(snapshot(rg.g, before) == snap);
        rg.track(m);
        REQUIRE(rg.exp[m] == rg.exp[x] + rg.exp[y]);
        REQUIRE(rg.g.explen(m) == rg.exp[m].size());
    }
    CHECK(avlg::avl_check(rg.g));
    CHECK(avlg::height_check(rg.g));
}

TEST_CASE("expand matches bottom-up construction") {
    std::mt19937_64 rng(2);
    RandomGrammar rg(rng, 5000, 20000);
    for (NodeId id = 0; id < rg.exp.size(); ++id) {
        REQUIRE(rg.g.expand(id) == rg.exp[id]);
        REQUIRE(rg.g.explen(id) == rg.exp[id].size());
        const std::uint64_t k = rng() % (rg.exp[id].size() + 1);
        REQUIRE(rg.g.expand_prefix(id, k) == rg.exp[id].substr(0, k));
    }
    CHECK_THROWS_AS(rg.g.expand_prefix(0, 2), std::out_of_range);
}

TEST_CASE("decompose") {
    std::mt19937_64 rng(3);
    RandomGrammar rg(rng, 4000, 50000);
    std::size_t non_bitonic = 0;
    for (int k = 0; k < 10000; ++k) {
        const NodeId a = rng() % rg.exp.size();
        const std::uint64_t len = rg.exp[a].size();
        std::uint64_t i = 1 + rng() % len, j = 1 + rng() % len;
        if (i > j)
            std::swap(i, j);
        const auto parts = rg.g.decompose(a, i, j);
        std::string got;
        std::vector<int> heights;
        for (NodeId p : parts) {
            got += rg.exp[p];
            heights.push_back(rg.g.height(p));
        }
        REQUIRE(got == rg.exp[a].substr(i - 1, j - i + 1));
        REQUIRE(parts.size() <= 4 * (1 + std::log2(static_cast<double>(len))));
        non_bitonic += !bitonic(heights);
    }
    CHECK(non_bitonic == 0);

    const NodeId top = rg.exp.size() - 1;
    CHECK(rg.g.decompose(top, 1, rg.g.explen(top)) == std::vector<NodeId>{top});
    const auto one = rg.g.decompose(top, 2, 2);
    REQUIRE(one.size() == 1);
    CHECK(rg.g.is_terminal(one[0]));
    CHECK_THROWS_AS(rg.g.decompose(top, 0, 1), std::out_of_range);
    CHECK_THROWS_AS(rg.g.decompose(top, 2, 1), std::out_of_range);
    CHECK_THROWS_AS(rg.g.decompose(top, 1, rg.g.explen(top) + 1), std::out_of_range);
}

TEST_CASE("add_substring") {
    std::mt19937_64 rng(4);
    RandomGrammar rg(rng, 4000, 50000);
    const NodeId top = rg.exp.size() - 1;
    {
        const std::size_t before = rg.g.record_count();
        CHECK(rg.g.add_substring(top, 1, rg.g.explen(top)) == top);
        CHECK(rg.g.record_count() == before);
        const NodeId t = rg.g.add_substring(top, 3, 3);
        CHECK(rg.g.is_terminal(t));
        CHECK(rg.g.add_symbol(rg.g.symbol(t)) == t);
        CHECK(rg.g.record_count() == before);
    }
    for (int k = 0; k < 3000; ++k) {
        const NodeId a = rng() % rg.exp.size();
        const std::uint64_t len = rg.exp[a].size();
        std::uint64_t i = 1 + rng() % len, j = 1 + rng() % len;
        if (i > j)
            std::swap(i, j);
        const std::size_t before = rg.g.record_count();
        const NodeId b = rg.g.add_substring(a, i, j);
        const double sub = static_cast<double>(j - i + 1);
        REQUIRE(rg.g.record_count() - before <= 4 * (1 + std::log2(sub)));
        rg.track(b);
        REQUIRE(rg.exp[b] == rg.exp[a].substr(i - 1, j - i + 1));
    }
    CHECK(avlg::avl_check(rg.g));
    CHECK(avlg::height_check(rg.g));
}

TEST_CASE("fingerprints of nonterminals") {
    std::mt19937_64 rng(5);
    RandomGrammar rg(rng, 6000, 3000);
    const auto& ctx = rg.g.fingerprints();
    const NodeId a = rg.g.add_symbol('a');
    CHECK(rg.g.fingerprint(a) == ctx.of("a"));
    for (int k = 0; k < 10000; ++k) {
        const NodeId id = rng() % rg.exp.size();
        const std::uint64_t before = rg.g.fingerprint_expansions();
        REQUIRE(rg.g.fingerprint(id) == ctx.of(rg.exp[id]));
        if (rg.exp[id].size() >= 255)
            REQUIRE(rg.g.fingerprint_expansions() == before);
        else
            REQUIRE(rg.g.fingerprint_expansions() == before + 1);
    }
}

TEST_CASE("prune") {
    std::mt19937_64 rng(6);
    RandomGrammar rg(rng, 2000, 10000);
    const Grammar& g = rg.g;

    std::vector<NodeId> all(g.record_count());
    for (NodeId id = 0; id < all.size(); ++id)
        all[id] = id;
    CHECK(avlg::prune(g, all).grammar.size() == g.size());

    // One unreachable record on top of a reachable one.
    {
        Grammar h;
        const NodeId a = h.add_symbol('a'), b = h.add_symbol('b');
        const NodeId ab = h.add_merged(a, b);
        h.add_merged(b, a);
        const NodeId roots[] = {ab};
        const auto pr = avlg::prune(h, roots);
        CHECK(pr.grammar.size() == h.size() - 2);
        CHECK(pr.grammar.expand(pr.roots[0]) == "ab");
    }

    for (int k = 0; k < 200; ++k) {
        std::vector<NodeId> roots;
        for (int r = 0; r < 1 + static_cast<int>(rng() % 4); ++r)
            roots.push_back(rng() % g.record_count());
        // Graph traversal oracle.
        std::set<NodeId> seen;
        std::vector<NodeId> stack(roots);
        while (!stack.empty()) {
            const NodeId v = stack.back();
            stack.pop_back();
            if (!seen.insert(v).second)
                continue;
            if (!g.is_terminal(v)) {
                stack.push_back(g.left(v));
                stack.push_back(g.right(v));
            }
        }
        const auto reach = avlg::reachable(g, roots);
        REQUIRE(reach == std::vector<NodeId>(seen.begin(), seen.end()));
        const auto pr = avlg::prune(g, roots);
        REQUIRE(pr.grammar.record_count() == seen.size());
        REQUIRE(pr.grammar.size() <= g.size());
        for (std::size_t r = 0; r < roots.size(); ++r)
            REQUIRE(pr.grammar.expand(pr.roots[r]) == rg.exp[roots[r]]);
        REQUIRE(avlg::avl_check(pr.grammar));
    }
}

TEST_CASE("balance checks detect violations") {
    Grammar g;
    const NodeId a = g.add_symbol('a'), b = g.add_symbol('b');
    NodeId x = a;
    while (g.height(x) < 3)
        x = g.add_merged(x, b);
    CHECK(avlg::avl_check(g));
    CHECK(avlg::height_check(g));
    g.append_binary(x, a);  // height difference 3
    CHECK_FALSE(avlg::avl_check(g));

    // A left-leaning chain is AVL-invalid and too tall for its length.
    Grammar chain;
    NodeId c = chain.add_symbol('a');
    for (int k = 0; k < 20; ++k)
        c = chain.append_binary(c, chain.add_symbol('a'));
    CHECK_FALSE(avlg::avl_check(chain));
    CHECK_FALSE(avlg::height_check(chain));
    CHECK_THROWS(chain.append_binary(0, 999));
}
