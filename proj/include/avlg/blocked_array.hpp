#ifndef AVLG_BLOCKED_ARRAY_HPP_
#define AVLG_BLOCKED_ARRAY_HPP_

#include <bit>
#include <cassert>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <vector>

namespace avlg {

/// Append-only dynamic array stored in many blocks instead of one
/// contiguous buffer, so growing never copies existing elements and the
/// unused tail stays small.
///
/// Blocks come in levels of 32; every block of level k holds 64 * 2^k
/// elements. Level k therefore starts at global index 2048 * (2^k - 1),
/// which gives O(1) index arithmetic, and the newest block is never larger
/// than ~1/32 of the data already stored.
template <typename T>
class BlockedArray {
public:
    static constexpr std::size_t kBlocksPerLevel = 32;
    static constexpr unsigned kFirstBlockLog = 6;  // 64 elements
    static constexpr unsigned kLevelLog = 11;      // 32 * 64 = 2^11

    BlockedArray() = default;
    BlockedArray(BlockedArray&&) noexcept = default;
    BlockedArray& operator=(BlockedArray&&) noexcept = default;

    BlockedArray(const BlockedArray& other) { *this = other; }
    BlockedArray& operator=(const BlockedArray& other) {
        if (this == &other)
            return *this;
        clear();
        for (std::size_t i = 0; i < other.size(); ++i)
            push_back(other[i]);
        return *this;
    }

    std::size_t size() const { return size_; }
    bool empty() const { return size_ == 0; }
    std::size_t capacity() const { return capacity_; }
    std::size_t block_count() const { return blocks_.size(); }

    void push_back(const T& x) {
        if (size_ == capacity_)
            grow();
        (*this)[size_++] = x;
    }

    T& operator[](std::size_t i) {
        auto [b, off] = locate(i);
        return blocks_[b][off];
    }
    const T& operator[](std::size_t i) const {
        auto [b, off] = locate(i);
        return blocks_[b][off];
    }

    T& back() { return (*this)[size_ - 1]; }
    const T& back() const { return (*this)[size_ - 1]; }

    /// Shrinks to `n` elements and releases blocks no longer needed.
    void truncate(std::size_t n) {
        assert(n <= size_);
        size_ = n;
        std::size_t keep = n == 0 ? 0 : locate(n - 1).first + 1;
        while (blocks_.size() > keep) {
            capacity_ -= block_size(blocks_.size() - 1);
            blocks_.pop_back();
        }
    }

    void clear() {
        blocks_.clear();
        size_ = capacity_ = 0;
    }

    std::size_t memory_bytes() const {
        return capacity_ * sizeof(T) + blocks_.capacity() * sizeof(std::unique_ptr<T[]>);
    }

    static std::size_t block_size(std::size_t block) {
        return std::size_t{1} << (kFirstBlockLog + block / kBlocksPerLevel);
    }

private:
    static std::pair<std::size_t, std::size_t> locate(std::size_t i) {
        const std::uint64_t g = static_cast<std::uint64_t>(i) + (std::uint64_t{1} << kLevelLog);
        const unsigned level = static_cast<unsigned>(std::bit_width(g)) - 1 - kLevelLog;
        const std::uint64_t within = g - (std::uint64_t{1} << (kLevelLog + level));
        const unsigned shift = kFirstBlockLog + level;
        return {level * kBlocksPerLevel + static_cast<std::size_t>(within >> shift),
                static_cast<std::size_t>(within & ((std::uint64_t{1} << shift) - 1))};
    }

    void grow() {
        const std::size_t sz = block_size(blocks_.size());
        blocks_.push_back(std::make_unique<T[]>(sz));
        capacity_ += sz;
    }

    std::vector<std::unique_ptr<T[]>> blocks_;
    std::size_t size_ = 0;
    std::size_t capacity_ = 0;
};

}  // namespace avlg

#endif  // AVLG_BLOCKED_ARRAY_HPP_
