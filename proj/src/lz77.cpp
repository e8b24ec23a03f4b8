#include "avlg/lz77.hpp"

#include <algorithm>
#include <fstream>
#include <vector>

#include "avlg/detail/binary_io.hpp"
#include "avlg/suffix_array.hpp"

namespace avlg {

namespace {

std::uint64_t lce(std::string_view text, std::size_t i, std::size_t j) {
    std::size_t k = 0;
    while (i + k < text.size() && j + k < text.size() && text[i + k] == text[j + k])
        ++k;
    return k;
}

}  // namespace

Factorization lz77_parse(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("empty text");

    const auto sa = suffix_array(text);
    const std::size_t n = text.size();
    std::vector<std::int32_t> rank(n);
    for (std::size_t k = 0; k < n; ++k)
        rank[sa[k]] = static_cast<std::int32_t>(k);
    const auto lcp = lcp_array(text, sa, rank);

    // Lexicographic neighbours with a smaller text position.
    std::vector<std::int32_t> psv(n, -1), nsv(n, -1);
    {
        std::vector<std::int32_t> stack;
        for (std::size_t k = 0; k < n; ++k) {
            const std::int32_t v = sa[k];
            while (!stack.empty() && stack.back() > v) {
                nsv[stack.back()] = v;
                stack.pop_back();
            }
            psv[v] = stack.empty() ? -1 : stack.back();
            stack.push_back(v);
        }
    }

    Factorization fact;
    std::size_t i = 0;
    while (i < n) {
        std::uint64_t len = 0;
        if (psv[i] >= 0)
            len = lce(text, i, psv[i]);
        if (nsv[i] >= 0)
            len = std::max(len, lce(text, i, nsv[i]));

        if (len == 0) {
            fact.push(Phrase::literal(static_cast<Symbol>(text[i])));
            ++i;
            continue;
        }

        // Every earlier occurrence of the phrase lies in the SA interval
        // around rank[i] with lcp >= len; take the rightmost one.
        std::int64_t best = -1;
        const std::int64_t r = rank[i];
        for (std::int64_t k = r; k > 0 && static_cast<std::uint64_t>(lcp[k]) >= len; --k)
            if (sa[k - 1] < static_cast<std::int64_t>(i))
                best = std::max<std::int64_t>(best, sa[k - 1]);
        for (std::int64_t k = r + 1; k < static_cast<std::int64_t>(n) &&
                                     static_cast<std::uint64_t>(lcp[k]) >= len;
             ++k)
            if (sa[k] < static_cast<std::int64_t>(i))
                best = std::max<std::int64_t>(best, sa[k]);

        fact.push(Phrase::copy(static_cast<std::uint64_t>(best) + 1, len));
        i += len;
    }
    return fact;
}

std::string lz_decode(const Factorization& fact) {
    std::string out;
    out.reserve(fact.n);
    for (const Phrase& p : fact.phrases) {
        if (p.is_literal()) {
            if (p.pos > 255)
                throw InvalidFactorization("invalid factorization: literal out of byte range");
            out.push_back(static_cast<char>(p.symbol()));
            continue;
        }
        const std::uint64_t start = out.size() + 1;
        if (p.src() < 1 || p.src() >= start)
            throw InvalidFactorization("invalid factorization: source beyond written prefix");
        // Symbol by symbol so that overlapping sources see fresh output.
        std::size_t from = p.src() - 1;
        for (std::uint64_t k = 0; k < p.len; ++k)
            out.push_back(out[from + k]);
    }
    return out;
}

ValidationReport validate_factorization(const Factorization& fact,
                                        std::optional<std::string_view> text) {
    auto fail = [](std::size_t idx, std::string rule) {
        return ValidationReport{false, idx, std::move(rule)};
    };

    std::uint64_t written = 0;
    for (std::size_t k = 0; k < fact.phrases.size(); ++k) {
        const Phrase& p = fact.phrases[k];
        const std::uint64_t start = written + 1;
        if (p.is_literal()) {
            if (p.pos > 255)
                return fail(k, "literal symbol out of range");
        } else {
            if (p.src() < 1)
                return fail(k, "source position must be >= 1");
            if (p.src() >= start)
                return fail(k, "source beyond written prefix");
        }
        if (text) {
            if (start + p.length() - 1 > text->size())
                return fail(k, "phrase extends past end of text");
            if (p.is_literal()) {
                if (static_cast<Symbol>((*text)[written]) != p.symbol())
                    return fail(k, "literal does not match text");
            } else {
                // Compare against the text itself; equivalent to a decode
                // once all earlier phrases have matched.
                for (std::uint64_t t = 0; t < p.len; ++t)
                    if ((*text)[p.src() - 1 + t] != (*text)[written + t])
                        return fail(k, "copy does not match its source");
            }
        }
        written += p.length();
    }
    if (written != fact.n)
        return fail(fact.phrases.size(), "declared length does not match phrase lengths");
    if (text && written != text->size())
        return fail(fact.phrases.size(), "factorization shorter than text");
    return {};
}

void write_lz7f(std::ostream& out, const Factorization& fact) {
    out.write("LZ7F", 4);
    detail::put_u8(out, kLz7fVersion);
    detail::put_u64(out, fact.n);
    detail::put_u64(out, fact.f());
    for (const Phrase& p : fact.phrases) {
        detail::put_u64(out, p.pos);
        detail::put_u64(out, p.len);
    }
}

Factorization read_lz7f(std::istream& in) {
    char magic[4];
    if (!in.read(magic, 4))
        throw detail::UnexpectedEnd();
    if (std::string_view(magic, 4) != "LZ7F")
        throw std::runtime_error("not an LZ7F file (bad magic)");
    if (detail::get_u8(in) != kLz7fVersion)
        throw std::runtime_error("unsupported LZ7F version");
    const std::uint64_t n = detail::get_u64(in);
    const std::uint64_t f = detail::get_u64(in);
    Factorization fact;
    fact.phrases.reserve(std::min<std::uint64_t>(f, 1u << 20));
    for (std::uint64_t k = 0; k < f; ++k) {
        Phrase p;
        p.pos = detail::get_u64(in);
        p.len = detail::get_u64(in);
        fact.push(p);
    }
    if (fact.n != n)
        throw InvalidFactorization("invalid factorization: header n does not match phrases");
    return fact;
}

void save_lz7f(const std::string& path, const Factorization& fact) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    write_lz7f(out, fact);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

Factorization load_lz7f(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    try {
        return read_lz7f(in);
    } catch (const std::exception& e) {
        throw std::runtime_error(path + ": " + e.what());
    }
}

}  // namespace avlg
