#ifndef AVLG_DETAIL_BINARY_IO_HPP_
#define AVLG_DETAIL_BINARY_IO_HPP_

#include <array>
#include <cstdint>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace avlg::detail {

class UnexpectedEnd : public std::runtime_error {
public:
    UnexpectedEnd() : std::runtime_error("unexpected end") {}
};

inline void put_u8(std::ostream& out, std::uint8_t v) {
    out.put(static_cast<char>(v));
}

inline void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> buf;
    for (int i = 0; i < 8; ++i)
        buf[i] = static_cast<char>((v >> (8 * i)) & 0xff);
    out.write(buf.data(), buf.size());
}

inline std::uint8_t get_u8(std::istream& in) {
    char c;
    if (!in.get(c))
        throw UnexpectedEnd();
    return static_cast<std::uint8_t>(c);
}

inline std::uint64_t get_u64(std::istream& in) {
    std::array<char, 8> buf;
    if (!in.read(buf.data(), buf.size()))
        throw UnexpectedEnd();
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | static_cast<std::uint8_t>(buf[i]);
    return v;
}

}  // namespace avlg::detail

#endif  // AVLG_DETAIL_BINARY_IO_HPP_
