#ifndef AVLG_LZ77_HPP_
#define AVLG_LZ77_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace avlg {

using Symbol = std::uint8_t;

/// One phrase of an LZ77-like factorization, stored in the (pos, len)
/// pair convention: literals are (symbol, 0), copies are (src, len) with
/// a 1-based source position.
struct Phrase {
    std::uint64_t pos = 0;
    std::uint64_t len = 0;

    static Phrase literal(Symbol c) { return {c, 0}; }
    static Phrase copy(std::uint64_t src, std::uint64_t len) { return {src, len}; }

    bool is_literal() const { return len == 0; }
    Symbol symbol() const { return static_cast<Symbol>(pos); }
    std::uint64_t src() const { return pos; }
    /// Number of text symbols the phrase covers.
    std::uint64_t length() const { return len == 0 ? 1 : len; }

    /// Source overlaps the phrase itself; `start` is the phrase's 1-based
    /// text position.
    bool is_self_referential(std::uint64_t start) const {
        return !is_literal() && pos + len > start;
    }

    friend bool operator==(const Phrase&, const Phrase&) = default;
};

struct Factorization {
    std::vector<Phrase> phrases;
    std::uint64_t n = 0;

    std::uint64_t f() const { return phrases.size(); }

    void push(Phrase p) {
        n += p.length();
        phrases.push_back(p);
    }

    friend bool operator==(const Factorization&, const Factorization&) = default;
};

class InvalidFactorization : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Exact greedy LZ77 with self-references. Among sources of maximal
/// length the rightmost one is chosen. Throws std::invalid_argument on
/// empty input.
Factorization lz77_parse(std::string_view text);

/// Throws InvalidFactorization if a copy reads unwritten positions.
std::string lz_decode(const Factorization& fact);

struct ValidationReport {
    bool ok = true;
    std::size_t first_bad = 0;  // phrase index, meaningful when !ok
    std::string rule;

    explicit operator bool() const { return ok; }
};

ValidationReport validate_factorization(const Factorization& fact,
                                        std::optional<std::string_view> text = std::nullopt);

// LZ7F file format: "LZ7F", u8 version, u64 n, u64 f, then f (u64, u64)
// records, little-endian.
inline constexpr std::uint8_t kLz7fVersion = 1;

void write_lz7f(std::ostream& out, const Factorization& fact);
Factorization read_lz7f(std::istream& in);

void save_lz7f(const std::string& path, const Factorization& fact);
Factorization load_lz7f(const std::string& path);

}  // namespace avlg

#endif  // AVLG_LZ77_HPP_
