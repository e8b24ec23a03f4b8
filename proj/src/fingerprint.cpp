#include "avlg/fingerprint.hpp"

#include <stdexcept>

namespace avlg {

FingerprintContext::FingerprintContext(std::uint64_t seed) : q_(kMersenne61) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> dist(1, q_ - 1);
    r_ = dist(rng);
    build_table();
}

FingerprintContext::FingerprintContext(std::uint64_t q, std::uint64_t r) : q_(q), r_(r) {
    if (q < 2 || q >= (std::uint64_t{1} << 63))
        throw std::invalid_argument("fingerprint modulus out of range");
    if (r < 1 || r >= q)
        throw std::invalid_argument("fingerprint base must lie in [1, q-1]");
    build_table();
}

std::uint64_t FingerprintContext::mul(std::uint64_t a, std::uint64_t b) const {
    const unsigned __int128 prod = static_cast<unsigned __int128>(a) * b;
    if (q_ == kMersenne61) {
        std::uint64_t lo = static_cast<std::uint64_t>(prod) & kMersenne61;
        std::uint64_t hi = static_cast<std::uint64_t>(prod >> 61);
        std::uint64_t s = lo + hi;
        while (s >= kMersenne61)
            s -= kMersenne61;
        return s;
    }
    return static_cast<std::uint64_t>(prod % q_);
}

void FingerprintContext::build_table() {
    std::uint64_t step = r_ % q_;  // r^(256^k)
    for (auto& row : pow_table_) {
        row[0] = 1 % q_;
        for (std::size_t d = 1; d < row.size(); ++d)
            row[d] = mul(row[d - 1], step);
        step = mul(row[255], step);
    }
}

std::uint64_t FingerprintContext::pow(std::uint64_t e) const {
    std::uint64_t result = pow_table_[0][e & 0xff];
    e >>= 8;
    for (std::size_t k = 1; e != 0; ++k, e >>= 8)
        if (e & 0xff)
            result = mul(result, pow_table_[k][e & 0xff]);
    return result;
}

Fingerprint FingerprintContext::of(std::string_view s) const {
    Fingerprint fp;
    for (char c : s)
        fp = extend(fp, static_cast<std::uint8_t>(c));
    return fp;
}

DedupMap::DedupMap(double sample_prob, std::uint64_t seed) : p_(sample_prob), rng_(seed) {
    if (!(sample_prob >= 0.0 && sample_prob <= 1.0))
        throw std::invalid_argument("sampling probability must lie in [0, 1]");
}

std::optional<NodeId> DedupMap::lookup(Fingerprint fp, std::uint64_t len) const {
    auto it = map_.find(Key{fp.value, len});
    if (it == map_.end())
        return std::nullopt;
    return it->second;
}

bool DedupMap::sample() {
    if (p_ <= 0.0)
        return false;
    if (p_ >= 1.0)
        return true;
    return coin_(rng_) < p_;
}

bool DedupMap::insert(NodeId id, Fingerprint fp, std::uint64_t len) {
    return map_.try_emplace(Key{fp.value, len}, id).second;
}

bool DedupMap::offer(NodeId id, Fingerprint fp, std::uint64_t len) {
    if (!sample())
        return false;
    return insert(id, fp, len);
}

}  // namespace avlg
