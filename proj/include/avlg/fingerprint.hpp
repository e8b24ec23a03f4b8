#ifndef AVLG_FINGERPRINT_HPP_
#define AVLG_FINGERPRINT_HPP_

#include <array>
#include <cstdint>
#include <optional>
#include <random>
#include <string_view>
#include <unordered_map>

namespace avlg {

using NodeId = std::uint64_t;

struct Fingerprint {
    std::uint64_t value = 0;
    friend bool operator==(Fingerprint, Fingerprint) = default;
};

/// Karp-Rabin arithmetic modulo a prime q with base r. Immutable once
/// built; r^e for any e is served from a fixed table of r^(d * 256^k).
class FingerprintContext {
public:
    static constexpr std::uint64_t kMersenne61 = (std::uint64_t{1} << 61) - 1;

    /// q = 2^61 - 1, r uniform in [1, q-1] drawn from `seed`.
    explicit FingerprintContext(std::uint64_t seed = 0);
    /// Explicit modulus and base; q must be a prime below 2^63, 1 <= r < q.
    FingerprintContext(std::uint64_t q, std::uint64_t r);

    std::uint64_t modulus() const { return q_; }
    std::uint64_t base() const { return r_; }

    std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
    std::uint64_t add(std::uint64_t a, std::uint64_t b) const {
        std::uint64_t s = a + b;
        return s >= q_ ? s - q_ : s;
    }
    std::uint64_t pow(std::uint64_t e) const;

    Fingerprint of(std::string_view s) const;
    /// Fingerprint of the concatenation x.y given fp(x), |y| and fp(y).
    Fingerprint concat(Fingerprint fx, std::uint64_t len_y, Fingerprint fy) const {
        return {add(mul(fx.value, pow(len_y)), fy.value)};
    }
    /// Extends fp(x) by one symbol.
    Fingerprint extend(Fingerprint fx, std::uint8_t c) const {
        return {add(mul(fx.value, r_), c % q_)};
    }

private:
    void build_table();

    std::uint64_t q_;
    std::uint64_t r_;
    // pow_table_[k][d] = r^(d * 256^k)
    std::array<std::array<std::uint64_t, 256>, 8> pow_table_{};
};

/// Sampled map (fingerprint, expansion length) -> nonterminal used to
/// detect nonterminals whose expansion already exists in the grammar.
class DedupMap {
public:
    DedupMap(double sample_prob, std::uint64_t seed);

    double sample_prob() const { return p_; }

    std::optional<NodeId> lookup(Fingerprint fp, std::uint64_t len) const;

    /// Stores (fp, len) -> id with probability p. First writer wins.
    bool offer(NodeId id, Fingerprint fp, std::uint64_t len);

    /// The coin flip of offer(), exposed so callers can skip computing a
    /// fingerprint that would not be stored. Consumes the same RNG draw.
    bool sample();
    /// Unconditional insert (first writer wins).
    bool insert(NodeId id, Fingerprint fp, std::uint64_t len);

    std::size_t size() const { return map_.size(); }
    bool empty() const { return map_.empty(); }

private:
    struct Key {
        std::uint64_t fp;
        std::uint64_t len;
        friend bool operator==(const Key&, const Key&) = default;
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const noexcept {
            return static_cast<std::size_t>(k.fp ^ (k.len * 0x9e3779b97f4a7c15ULL));
        }
    };

    double p_;
    std::mt19937_64 rng_;
    std::uniform_real_distribution<double> coin_{0.0, 1.0};
    std::unordered_map<Key, NodeId, KeyHash> map_;
};

}  // namespace avlg

#endif  // AVLG_FINGERPRINT_HPP_
