#ifndef AVLG_SUFFIX_ARRAY_HPP_
#define AVLG_SUFFIX_ARRAY_HPP_

#include <cstdint>
#include <string_view>
#include <vector>

namespace avlg {

/// Suffix array of a byte string (SA-IS, linear time). Texts must be
/// shorter than 2^31 symbols.
std::vector<std::int32_t> suffix_array(std::string_view text);

/// Kasai et al.: lcp[k] = LCP of suffixes sa[k-1] and sa[k], lcp[0] = 0.
std::vector<std::int32_t> lcp_array(std::string_view text, const std::vector<std::int32_t>& sa,
                                    const std::vector<std::int32_t>& rank);

}  // namespace avlg

#endif  // AVLG_SUFFIX_ARRAY_HPP_
