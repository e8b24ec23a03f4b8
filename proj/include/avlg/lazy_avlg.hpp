#ifndef AVLG_LAZY_AVLG_HPP_
#define AVLG_LAZY_AVLG_HPP_

#include <cstdint>
#include <span>
#include <vector>

#include "avlg/basic_avlg.hpp"
#include "avlg/fingerprint.hpp"
#include "avlg/grammar.hpp"
#include "avlg/lz77.hpp"
#include "avlg/roots_sequence.hpp"
#include "avlg/run_stats.hpp"

namespace avlg {

struct LazyOptions {
    /// Probability of recording a new nonterminal in the dedup map.
    double sample_prob = 0.125;
    std::uint64_t kr_seed = 0;
    /// Check every dedup hit by comparing expansions; mismatching hits are
    /// counted and rejected.
    bool paranoid = false;
};

struct LazyCounters {
    std::uint64_t attempted_merges = 0;
    std::uint64_t avoided_merges = 0;
    std::uint64_t paranoid_mismatches = 0;
    std::uint64_t dp_removed = 0;  // elements saved by optimal_root_sequence
    std::uint64_t peak_roots = 0;
};

/// Lazy conversion. The state is a sequence of roots whose expansions
/// concatenate to the processed prefix; roots are merged only when a
/// later phrase's source covers them entirely.
///
/// Only phrases are consumed, never the text.
class LazyConverter {
public:
    explicit LazyConverter(LazyOptions opts = {});

    void push(const Phrase& phrase);

    /// Merges the live roots lying entirely inside [i..j] into one root.
    void merge_enclosed(std::uint64_t i, std::uint64_t j);

    /// Sequence of ids spelling prefix[i..j]: whole roots where possible,
    /// decompositions of the (at most two) partially covered boundary roots.
    std::vector<NodeId> decompose_with_roots(std::uint64_t i, std::uint64_t j);

    /// Shortest sequence with the same concatenated expansion, using dedup
    /// hits to replace runs of consecutive elements.
    std::vector<NodeId> optimal_root_sequence(std::span<const NodeId> seq);

    void append_root(NodeId id);

    /// Merges all roots into one and returns it as the start symbol.
    NodeId finish();

    Grammar& grammar() { return grammar_; }
    const Grammar& grammar() const { return grammar_; }
    RootsSequence& roots() { return roots_; }
    DedupMap& dedup() { return dedup_; }
    const LazyCounters& counters() const { return counters_; }
    std::uint64_t length() const { return roots_.length(); }

private:
    void offer_new_records(NodeId from);
    bool same_expansion(NodeId candidate, std::span<const NodeId> parts) const;

    LazyOptions opts_;
    Grammar grammar_;
    RootsSequence roots_;
    DedupMap dedup_;
    LazyCounters counters_;
};

/// Throws InvalidFactorization before producing anything if the
/// factorization is structurally invalid.
ConversionResult convert_lazy(const Factorization& fact, const LazyOptions& opts = {});

}  // namespace avlg

#endif  // AVLG_LAZY_AVLG_HPP_
