#ifndef AVLG_REPAIR_HPP_
#define AVLG_REPAIR_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace avlg {

/// Re-Pair output. Symbols below 256 are bytes; symbol 256 + k is
/// rules[k].
struct RePairResult {
    std::vector<std::pair<std::uint32_t, std::uint32_t>> rules;
    std::vector<std::uint32_t> sequence;
};

/// Plain Re-Pair: repeatedly replaces the most frequent adjacent pair
/// (counted without overlaps, frequency >= 2) by a new symbol. Ties go to
/// the smallest (left, right) pair. Throws std::invalid_argument on empty
/// input.
RePairResult repair_compress(std::string_view text);

/// 2 * rules + final sequence length.
std::uint64_t repair_size(const RePairResult& r);

std::string repair_decode(const RePairResult& r);

}  // namespace avlg

#endif  // AVLG_REPAIR_HPP_
