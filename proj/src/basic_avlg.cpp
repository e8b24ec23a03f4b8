#include "avlg/basic_avlg.hpp"

#include <algorithm>
#include <chrono>

namespace avlg {

BasicConverter::BasicConverter(FingerprintContext ctx) : grammar_(ctx) {}

void BasicConverter::append(NodeId id) {
    prefix_ = prefix_ == kNoNode ? id : grammar_.add_merged(prefix_, id);
    length_ += grammar_.explen(id);
}

void BasicConverter::push(const Phrase& phrase) {
    if (phrase.is_literal()) {
        if (phrase.pos > 255)
            throw InvalidFactorization("invalid factorization: literal out of byte range");
        append(grammar_.add_symbol(phrase.symbol()));
        return;
    }
    const std::uint64_t src = phrase.src();
    if (src < 1 || src > length_)
        throw InvalidFactorization("invalid factorization: source beyond written prefix");

    std::uint64_t remaining = phrase.len;
    while (remaining > 0) {
        const std::uint64_t chunk = std::min(remaining, length_ - src + 1);
        append(grammar_.add_substring(prefix_, src, src + chunk - 1));
        remaining -= chunk;
    }
}

ConversionResult convert_basic(const Factorization& fact, std::uint64_t kr_seed) {
    if (auto report = validate_factorization(fact); !report)
        throw InvalidFactorization("invalid factorization at phrase " +
                                   std::to_string(report.first_bad) + ": " + report.rule);
    if (fact.phrases.empty())
        throw InvalidFactorization("invalid factorization: no phrases");

    const auto t0 = std::chrono::steady_clock::now();
    BasicConverter conv{FingerprintContext(kr_seed)};
    for (const Phrase& p : fact.phrases)
        conv.push(p);
    const NodeId start = conv.prefix();
    Grammar g = conv.release();

    RunStats st;
    st.algo = "basic";
    st.n = fact.n;
    st.f = fact.f();
    st.size = g.size();
    st.size_pre_flatten = st.size;
    st.records = g.record_count();
    st.peak_records = st.records;
    st.peak_roots = 1;
    st.peak_mem_bytes = g.memory_bytes();
    st.wall_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    return {std::move(g), start, st};
}

}  // namespace avlg
