#include "avlg/side_tables.hpp"

#include <stdexcept>

namespace avlg {

void SideTables::push(std::uint64_t len, std::optional<Fingerprint> fp) {
    const NodeId id = explen_byte_.size();
    if (len < kOverflow) {
        explen_byte_.push_back(static_cast<std::uint8_t>(len));
        return;
    }
    if (!fp)
        throw std::logic_error("side tables: long nonterminal needs a fingerprint");
    explen_byte_.push_back(kOverflow);
    overflow_.push_back({id, len, *fp});
}

std::size_t SideTables::find_long(NodeId id) const {
    std::size_t lo = 0, hi = overflow_.size();
    while (lo < hi) {
        std::size_t mid = lo + (hi - lo) / 2;
        if (overflow_[mid].id < id)
            lo = mid + 1;
        else
            hi = mid;
    }
    return lo;
}

std::uint64_t SideTables::explen(NodeId id) const {
    if (id >= explen_byte_.size())
        throw std::out_of_range("unknown nonterminal id");
    const std::uint8_t b = explen_byte_[id];
    if (b != kOverflow)
        return b;
    return overflow_[find_long(id)].len;
}

std::optional<Fingerprint> SideTables::fp_long(NodeId id) const {
    if (id >= explen_byte_.size())
        throw std::out_of_range("unknown nonterminal id");
    if (explen_byte_[id] != kOverflow)
        return std::nullopt;
    return overflow_[find_long(id)].fp;
}

}  // namespace avlg
