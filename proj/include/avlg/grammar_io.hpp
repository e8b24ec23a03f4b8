#ifndef AVLG_GRAMMAR_IO_HPP_
#define AVLG_GRAMMAR_IO_HPP_

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>

#include "avlg/grammar.hpp"

namespace avlg {

enum class FormatErrc {
    bad_magic = 1,
    bad_version,
    unexpected_end,
    bad_tag,
    dangling_id,
    acyclicity_violated,
    avl_violation,
    bad_start,
};

class FormatError : public std::runtime_error {
public:
    FormatError(FormatErrc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    FormatErrc code() const { return code_; }

private:
    FormatErrc code_;
};

// AVLG binary format, little-endian: "AVLG", u8 version, u64 record count,
// u64 start id, then per record u8 tag (0 = terminal + u8 symbol,
// 1 = binary + two u64 child ids).
inline constexpr std::uint8_t kAvlgVersion = 1;

void serialize(std::ostream& out, const Grammar& g, NodeId start);
std::string serialize(const Grammar& g, NodeId start);

struct LoadedGrammar {
    Grammar grammar;
    NodeId start;
};

/// Re-validates acyclicity and the AVL property; throws FormatError.
LoadedGrammar deserialize(std::istream& in, std::uint64_t kr_seed = 0);
LoadedGrammar deserialize(std::string_view bytes, std::uint64_t kr_seed = 0);

void save_grammar(const std::string& path, const Grammar& g, NodeId start);
LoadedGrammar load_grammar(const std::string& path, std::uint64_t kr_seed = 0);

/// Debug listing, one rule per line in id order: "A_i -> c" for terminals
/// (printable bytes verbatim, others as \xHH), "A_i -> A_j A_k" otherwise.
void write_text(std::ostream& out, const Grammar& g, NodeId start);

/// Streams exp(start) against `text` without materializing it.
bool verify_against_text(const Grammar& g, NodeId start, std::string_view text);

}  // namespace avlg

#endif  // AVLG_GRAMMAR_IO_HPP_
