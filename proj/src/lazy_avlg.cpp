#include "avlg/lazy_avlg.hpp"

#include <algorithm>
#include <chrono>
#include <optional>
#include <stdexcept>

#include "avlg/detail/greedy_merge.hpp"

namespace avlg {

namespace {

// The dedup sampler gets its own stream, derived from the fingerprint seed.
constexpr std::uint64_t kSamplerSalt = 0x5deece66dULL;

struct MergeItem {
    NodeId id;
    int height;
    std::uint64_t len;
    std::optional<Fingerprint> fp;
};

}  // namespace

LazyConverter::LazyConverter(LazyOptions opts)
    : opts_(opts),
      grammar_(FingerprintContext(opts.kr_seed)),
      dedup_(opts.sample_prob, opts.kr_seed ^ kSamplerSalt) {}

void LazyConverter::offer_new_records(NodeId from) {
    if (dedup_.sample_prob() <= 0.0)
        return;
    for (NodeId id = from; id < grammar_.record_count(); ++id)
        if (dedup_.sample())
            dedup_.insert(id, grammar_.fingerprint(id), grammar_.explen(id));
}

bool LazyConverter::same_expansion(NodeId candidate, std::span<const NodeId> parts) const {
    std::string joined;
    for (NodeId p : parts)
        joined += grammar_.expand(p);
    return grammar_.explen(candidate) == joined.size() && grammar_.expand(candidate) == joined;
}

void LazyConverter::append_root(NodeId id) {
    roots_.push(roots_.length() + grammar_.explen(id), id);
    counters_.peak_roots = std::max<std::uint64_t>(counters_.peak_roots, roots_.live_count());
}

void LazyConverter::merge_enclosed(std::uint64_t i, std::uint64_t j) {
    const auto range = roots_.range(i, j);
    if (!range || range->first == range->last)
        return;
    const auto entries = roots_.collect_live(range->first, range->last);

    std::vector<MergeItem> items;
    items.reserve(entries.size());
    for (const RootEntry& e : entries)
        items.push_back({e.id, grammar_.height(e.id), grammar_.explen(e.id), std::nullopt});

    const FingerprintContext& ctx = grammar_.fingerprints();
    auto merge = [&](MergeItem& a, MergeItem& b) -> MergeItem {
        ++counters_.attempted_merges;
        std::optional<Fingerprint> fab;
        if (!dedup_.empty()) {
            if (!a.fp)
                a.fp = grammar_.fingerprint(a.id);
            if (!b.fp)
                b.fp = grammar_.fingerprint(b.id);
            fab = ctx.concat(*a.fp, b.len, *b.fp);
            if (auto hit = dedup_.lookup(*fab, a.len + b.len)) {
                const NodeId parts[] = {a.id, b.id};
                if (!opts_.paranoid || same_expansion(*hit, parts)) {
                    ++counters_.avoided_merges;
                    return {*hit, grammar_.height(*hit), a.len + b.len, fab};
                }
                ++counters_.paranoid_mismatches;
            }
        }
        const NodeId before = grammar_.record_count();
        const NodeId id = grammar_.add_merged(a.id, b.id);
        offer_new_records(before);
        return {id, grammar_.height(id), a.len + b.len, fab};
    };

    MergeItem merged = detail::greedy_merge(
        std::move(items), [](const MergeItem& m) { return m.height; }, merge);
    roots_.replace_range(range->first, range->last, entries.back().ell, merged.id);
}

std::vector<NodeId> LazyConverter::decompose_with_roots(std::uint64_t i, std::uint64_t j) {
    if (i < 1 || i > j || j > roots_.length())
        throw std::out_of_range("decompose_with_roots: range out of bounds");

    std::vector<NodeId> out;
    const std::size_t first = roots_.containing(i);
    const std::size_t last = roots_.containing(j);
    const std::uint64_t first_start = roots_.start_of(first);
    const NodeId first_id = roots_.entry(first).id;

    if (first == last) {
        grammar_.decompose_into(first_id, i - first_start, j - first_start, out);
        return out;
    }

    if (i == first_start + 1)
        out.push_back(first_id);
    else
        grammar_.decompose_into(first_id, i - first_start, roots_.entry(first).ell - first_start,
                                out);

    std::size_t k = *roots_.next_live(first);
    for (; k != last; k = *roots_.next_live(k))
        out.push_back(roots_.entry(k).id);

    const std::uint64_t last_start = roots_.start_of(last);
    const NodeId last_id = roots_.entry(last).id;
    if (j == roots_.entry(last).ell)
        out.push_back(last_id);
    else
        grammar_.decompose_into(last_id, 1, j - last_start, out);
    return out;
}

std::vector<NodeId> LazyConverter::optimal_root_sequence(std::span<const NodeId> seq) {
    const std::size_t q = seq.size();
    if (q <= 1 || dedup_.empty())
        return {seq.begin(), seq.end()};

    const FingerprintContext& ctx = grammar_.fingerprints();
    // Prefix fingerprints and lengths; segment (a..b] has fingerprint
    // pre[b] - pre[a] * r^(len[b] - len[a]).
    std::vector<std::uint64_t> pre(q + 1, 0), len(q + 1, 0);
    for (std::size_t k = 0; k < q; ++k) {
        const std::uint64_t l = grammar_.explen(seq[k]);
        pre[k + 1] = ctx.concat({pre[k]}, l, grammar_.fingerprint(seq[k])).value;
        len[k + 1] = len[k] + l;
    }
    auto segment_fp = [&](std::size_t a, std::size_t b) {
        const std::uint64_t shifted = ctx.mul(pre[a], ctx.pow(len[b] - len[a]));
        return Fingerprint{ctx.add(pre[b], ctx.modulus() - shifted)};
    };

    // cost[a]: fewest elements covering (a..q]; pick[a]: end of the first
    // segment, the longest among optimal choices; hit[a]: its id.
    std::vector<std::size_t> cost(q + 1, 0), pick(q + 1, 0);
    std::vector<NodeId> hit(q + 1, kNoNode);
    for (std::size_t a = q; a-- > 0;) {
        cost[a] = cost[a + 1] + 1;
        pick[a] = a + 1;
        hit[a] = seq[a];
        for (std::size_t b = a + 2; b <= q; ++b) {
            if (cost[b] + 1 > cost[a])
                continue;
            auto found = dedup_.lookup(segment_fp(a, b), len[b] - len[a]);
            if (!found)
                continue;
            if (opts_.paranoid && !same_expansion(*found, seq.subspan(a, b - a))) {
                ++counters_.paranoid_mismatches;
                continue;
            }
            // Ascending b: ties go to the later, i.e. longer, segment.
            cost[a] = cost[b] + 1;
            pick[a] = b;
            hit[a] = *found;
        }
    }

    std::vector<NodeId> out;
    out.reserve(cost[0]);
    for (std::size_t a = 0; a < q; a = pick[a])
        out.push_back(hit[a]);
    counters_.dp_removed += q - out.size();
    return out;
}

void LazyConverter::push(const Phrase& phrase) {
    if (phrase.is_literal()) {
        if (phrase.pos > 255)
            throw InvalidFactorization("invalid factorization: literal out of byte range");
        const NodeId before = grammar_.record_count();
        const NodeId id = grammar_.add_symbol(phrase.symbol());
        offer_new_records(before);
        append_root(id);
        return;
    }
    const std::uint64_t src = phrase.src();
    if (src < 1 || src > length())
        throw InvalidFactorization("invalid factorization: source beyond written prefix");

    // Self-overlapping sources are copied in rounds; see BasicConverter.
    std::uint64_t remaining = phrase.len;
    while (remaining > 0) {
        const std::uint64_t chunk = std::min(remaining, length() - src + 1);
        const std::uint64_t i = src, j = src + chunk - 1;
        merge_enclosed(i, j);
        const auto seq = optimal_root_sequence(decompose_with_roots(i, j));
        for (NodeId id : seq)
            append_root(id);
        remaining -= chunk;
    }
}

NodeId LazyConverter::finish() {
    if (roots_.live_count() == 0)
        throw std::logic_error("finish: no phrases were pushed");
    if (roots_.live_count() > 1)
        merge_enclosed(1, roots_.length());
    return roots_.live_entries().front().second;
}

ConversionResult convert_lazy(const Factorization& fact, const LazyOptions& opts) {
    if (auto report = validate_factorization(fact); !report)
        throw InvalidFactorization("invalid factorization at phrase " +
                                   std::to_string(report.first_bad) + ": " + report.rule);
    if (fact.phrases.empty())
        throw InvalidFactorization("invalid factorization: no phrases");

    const auto t0 = std::chrono::steady_clock::now();
    LazyConverter conv(opts);
    std::size_t peak_roots_bytes = 0;
    for (const Phrase& p : fact.phrases) {
        conv.push(p);
        peak_roots_bytes = std::max(peak_roots_bytes, conv.roots().memory_bytes());
    }

    RunStats st;
    st.algo = "lazy";
    st.n = fact.n;
    st.f = fact.f();
    st.size_pre_flatten = conv.grammar().size() + conv.roots().live_count();
    const NodeId start = conv.finish();
    const Grammar& g = conv.grammar();
    st.size = g.size();
    st.records = g.record_count();
    st.peak_records = st.records;
    st.attempted_merges = conv.counters().attempted_merges;
    st.avoided_merges = conv.counters().avoided_merges;
    st.paranoid_mismatches = conv.counters().paranoid_mismatches;
    st.peak_roots = conv.counters().peak_roots;
    st.peak_mem_bytes = g.memory_bytes() + peak_roots_bytes + conv.dedup().size() * 48;
    st.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(conv.grammar()), start, st};
}

}  // namespace avlg
