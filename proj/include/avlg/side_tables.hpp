#ifndef AVLG_SIDE_TABLES_HPP_
#define AVLG_SIDE_TABLES_HPP_

#include <cstdint>
#include <optional>

#include "avlg/blocked_array.hpp"
#include "avlg/fingerprint.hpp"

namespace avlg {

/// Per-nonterminal expansion lengths and fingerprints. Lengths below 255
/// take one byte; longer ones are kept, together with their fingerprint,
/// in id-sorted overflow arrays searched by binary search.
class SideTables {
public:
    static constexpr std::uint8_t kOverflow = 255;

    /// Appends the entry for id == count(). `fp` is required when
    /// len >= 255 and ignored otherwise.
    void push(std::uint64_t len, std::optional<Fingerprint> fp);

    /// Throws std::out_of_range for an unknown id.
    std::uint64_t explen(NodeId id) const;
    std::optional<Fingerprint> fp_long(NodeId id) const;

    std::size_t count() const { return explen_byte_.size(); }
    std::size_t overflow_count() const { return overflow_.size(); }
    std::size_t memory_bytes() const {
        return explen_byte_.memory_bytes() + overflow_.memory_bytes();
    }

private:
    struct Long {
        NodeId id;
        std::uint64_t len;
        Fingerprint fp;
    };
    std::size_t find_long(NodeId id) const;

    BlockedArray<std::uint8_t> explen_byte_;
    BlockedArray<Long> overflow_;
};

}  // namespace avlg

#endif  // AVLG_SIDE_TABLES_HPP_
