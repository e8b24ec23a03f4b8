#include "avlg/grammar_io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "avlg/detail/binary_io.hpp"

namespace avlg {

void serialize(std::ostream& out, const Grammar& g, NodeId start) {
    out.write("AVLG", 4);
    detail::put_u8(out, kAvlgVersion);
    detail::put_u64(out, g.record_count());
    detail::put_u64(out, start);
    for (NodeId id = 0; id < g.record_count(); ++id) {
        if (g.is_terminal(id)) {
            detail::put_u8(out, 0);
            detail::put_u8(out, g.symbol(id));
        } else {
            detail::put_u8(out, 1);
            detail::put_u64(out, g.left(id));
            detail::put_u64(out, g.right(id));
        }
    }
}

std::string serialize(const Grammar& g, NodeId start) {
    std::ostringstream os;
    serialize(os, g, start);
    return std::move(os).str();
}

LoadedGrammar deserialize(std::istream& in, std::uint64_t kr_seed) {
    try {
        char magic[4];
        if (!in.read(magic, 4))
            throw detail::UnexpectedEnd();
        if (std::string_view(magic, 4) != "AVLG")
            throw FormatError(FormatErrc::bad_magic, "bad magic");
        if (detail::get_u8(in) != kAvlgVersion)
            throw FormatError(FormatErrc::bad_version, "unsupported version");
        const std::uint64_t count = detail::get_u64(in);
        const std::uint64_t start = detail::get_u64(in);

        Grammar g{FingerprintContext(kr_seed)};
        for (std::uint64_t id = 0; id < count; ++id) {
            const std::uint8_t tag = detail::get_u8(in);
            if (tag == 0) {
                g.append_terminal(detail::get_u8(in));
                continue;
            }
            if (tag != 1)
                throw FormatError(FormatErrc::bad_tag, "unknown record tag");
            const std::uint64_t l = detail::get_u64(in);
            const std::uint64_t r = detail::get_u64(in);
            if (l >= count || r >= count)
                throw FormatError(FormatErrc::dangling_id, "dangling id");
            if (l >= id || r >= id)
                throw FormatError(FormatErrc::acyclicity_violated, "acyclicity violated");
            const int hl = g.height(l), hr = g.height(r);
            if (hl > hr + 1 || hr > hl + 1)
                throw FormatError(FormatErrc::avl_violation, "AVL property violated");
            g.append_binary(l, r);
        }
        if (start >= count)
            throw FormatError(FormatErrc::bad_start, "start id out of range");
        return {std::move(g), start};
    } catch (const detail::UnexpectedEnd&) {
        throw FormatError(FormatErrc::unexpected_end, "unexpected end");
    }
}

LoadedGrammar deserialize(std::string_view bytes, std::uint64_t kr_seed) {
    std::istringstream is{std::string(bytes)};
    return deserialize(is, kr_seed);
}

void save_grammar(const std::string& path, const Grammar& g, NodeId start) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    serialize(out, g, start);
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

LoadedGrammar load_grammar(const std::string& path, std::uint64_t kr_seed) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    return deserialize(in, kr_seed);
}

void write_text(std::ostream& out, const Grammar& g, NodeId start) {
    out << "# start A_" << start << '\n';
    for (NodeId id = 0; id < g.record_count(); ++id) {
        out << "A_" << id << " -> ";
        if (g.is_terminal(id)) {
            const Symbol c = g.symbol(id);
            if (c > 32 && c < 127) {
                out << static_cast<char>(c);
            } else {
                char buf[8];
                std::snprintf(buf, sizeof buf, "\\x%02x", c);
                out << buf;
            }
        } else {
            out << "A_" << g.left(id) << " A_" << g.right(id);
        }
        out << '\n';
    }
}

bool verify_against_text(const Grammar& g, NodeId start, std::string_view text) {
    if (!g.contains(start) || g.explen(start) != text.size())
        return false;
    std::size_t pos = 0;
    bool ok = true;
    g.expand_chunks(start, [&](std::string_view chunk) {
        if (ok && text.substr(pos, chunk.size()) != chunk)
            ok = false;
        pos += chunk.size();
    });
    return ok;
}

}  // namespace avlg
