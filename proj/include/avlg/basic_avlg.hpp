#ifndef AVLG_BASIC_AVLG_HPP_
#define AVLG_BASIC_AVLG_HPP_

#include <cstdint>

#include "avlg/grammar.hpp"
#include "avlg/lz77.hpp"
#include "avlg/run_stats.hpp"

namespace avlg {

/// Baseline conversion: keeps one nonterminal expanding to the whole
/// processed prefix and extends it phrase by phrase.
class BasicConverter {
public:
    explicit BasicConverter(FingerprintContext ctx = FingerprintContext{});

    /// Appends one phrase. Copies whose source overlaps the phrase are
    /// built in rounds, each copying the whole available part of the
    /// source, so the copied length at least doubles per round.
    void push(const Phrase& phrase);

    /// Nonterminal for the processed prefix, kNoNode before the first phrase.
    NodeId prefix() const { return prefix_; }
    std::uint64_t length() const { return length_; }
    const Grammar& grammar() const { return grammar_; }
    Grammar release() { return std::move(grammar_); }

private:
    void append(NodeId id);

    Grammar grammar_;
    NodeId prefix_ = kNoNode;
    std::uint64_t length_ = 0;
};

struct ConversionResult {
    Grammar grammar;
    NodeId start;
    RunStats stats;
};

/// Throws InvalidFactorization before producing anything if the
/// factorization is structurally invalid.
ConversionResult convert_basic(const Factorization& fact, std::uint64_t kr_seed = 0);

}  // namespace avlg

#endif  // AVLG_BASIC_AVLG_HPP_
