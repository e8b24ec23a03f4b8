#include "avlg/repair.hpp"

#include <algorithm>
#include <queue>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace avlg {

namespace {

constexpr std::uint32_t kDead = 0xffffffffu;
constexpr std::int64_t kNil = -1;

std::uint64_t pair_key(std::uint32_t l, std::uint32_t r) {
    return (static_cast<std::uint64_t>(l) << 32) | r;
}

struct PairInfo {
    std::uint32_t count = 0;        // upper bound on non-overlapping occurrences
    std::uint32_t heap_prio = 0;    // priority of the live heap entry, 0 = none
    std::vector<std::uint32_t> occ;  // candidate left positions, may be stale
};

struct HeapEntry {
    std::uint32_t prio;
    std::uint64_t key;
    // Highest priority first, then the smallest pair.
    friend bool operator<(const HeapEntry& a, const HeapEntry& b) {
        if (a.prio != b.prio)
            return a.prio < b.prio;
        return a.key > b.key;
    }
};

class RePairState {
public:
    explicit RePairState(std::string_view text) : sym_(text.size()), prev_(text.size()), next_(text.size()) {
        const std::int64_t n = static_cast<std::int64_t>(text.size());
        for (std::int64_t k = 0; k < n; ++k) {
            sym_[k] = static_cast<unsigned char>(text[k]);
            prev_[k] = k - 1;
            next_[k] = k + 1 < n ? k + 1 : kNil;
        }
        for (std::int64_t k = 0; k + 1 < n; ++k)
            inc(sym_[k], sym_[k + 1], static_cast<std::uint32_t>(k));
        flush_touched();
    }

    RePairResult run() {
        RePairResult res;
        while (!heap_.empty()) {
            HeapEntry top = heap_.top();
            heap_.pop();
            auto it = pairs_.find(top.key);
            if (it == pairs_.end() || it->second.heap_prio != top.prio)
                continue;
            PairInfo& info = it->second;
            info.heap_prio = 0;

            const auto a = static_cast<std::uint32_t>(top.key >> 32);
            const auto b = static_cast<std::uint32_t>(top.key & 0xffffffffu);
            std::vector<std::uint32_t> chosen = refresh(info, a, b);
            if (chosen.size() != top.prio) {
                if (chosen.size() >= 2)
                    push(top.key, info, static_cast<std::uint32_t>(chosen.size()));
                continue;
            }

            const std::uint32_t x = 256 + static_cast<std::uint32_t>(res.rules.size());
            res.rules.emplace_back(a, b);
            for (std::uint32_t pos : chosen)
                replace_at(pos, a, b, x);
            pairs_.erase(top.key);
            touched_.erase(top.key);
            flush_touched();
        }
        for (std::int64_t k = 0; k != kNil; k = next_[k])
            res.sequence.push_back(sym_[k]);
        return res;
    }

private:
    bool occurs_at(std::uint32_t pos, std::uint32_t a, std::uint32_t b) const {
        return sym_[pos] == a && next_[pos] != kNil && sym_[next_[pos]] == b;
    }

    // Drops stale positions and returns the left-to-right non-overlapping
    // occurrences.
    std::vector<std::uint32_t> refresh(PairInfo& info, std::uint32_t a, std::uint32_t b) {
        auto& occ = info.occ;
        std::sort(occ.begin(), occ.end());
        occ.erase(std::unique(occ.begin(), occ.end()), occ.end());
        std::vector<std::uint32_t> valid, chosen;
        for (std::uint32_t pos : occ) {
            if (!occurs_at(pos, a, b))
                continue;
            valid.push_back(pos);
            if (a == b && !chosen.empty() && next_[chosen.back()] == pos)
                continue;
            chosen.push_back(pos);
        }
        occ = std::move(valid);
        info.count = static_cast<std::uint32_t>(occ.size());
        return chosen;
    }

    void replace_at(std::uint32_t pos, std::uint32_t a, std::uint32_t b, std::uint32_t x) {
        if (!occurs_at(pos, a, b))
            return;
        const std::int64_t q = next_[pos];
        const std::int64_t pp = prev_[pos];
        const std::int64_t nn = next_[q];
        if (pp != kNil)
            dec(sym_[pp], a);
        if (nn != kNil)
            dec(b, sym_[nn]);
        sym_[pos] = x;
        sym_[q] = kDead;
        next_[pos] = nn;
        if (nn != kNil)
            prev_[nn] = pos;
        if (pp != kNil)
            inc(sym_[pp], x, static_cast<std::uint32_t>(pp));
        if (nn != kNil)
            inc(x, sym_[nn], pos);
    }

    void inc(std::uint32_t l, std::uint32_t r, std::uint32_t pos) {
        const std::uint64_t key = pair_key(l, r);
        PairInfo& info = pairs_[key];
        ++info.count;
        info.occ.push_back(pos);
        touched_.insert(key);
    }

    void dec(std::uint32_t l, std::uint32_t r) {
        auto it = pairs_.find(pair_key(l, r));
        if (it != pairs_.end() && it->second.count > 0)
            --it->second.count;
    }

    void push(std::uint64_t key, PairInfo& info, std::uint32_t prio) {
        info.heap_prio = prio;
        heap_.push({prio, key});
    }

    // Pairs whose count grew get one fresh heap entry per replacement round.
    void flush_touched() {
        for (std::uint64_t key : touched_) {
            auto it = pairs_.find(key);
            if (it != pairs_.end() && it->second.count >= 2 && it->second.count > it->second.heap_prio)
                push(key, it->second, it->second.count);
        }
        touched_.clear();
    }

    std::vector<std::uint32_t> sym_;
    std::vector<std::int64_t> prev_, next_;
    std::unordered_map<std::uint64_t, PairInfo> pairs_;
    std::unordered_set<std::uint64_t> touched_;
    std::priority_queue<HeapEntry> heap_;
};

}  // namespace

RePairResult repair_compress(std::string_view text) {
    if (text.empty())
        throw std::invalid_argument("empty text");
    if (text.size() >= kDead - 256)
        throw std::length_error("repair: text too long");
    return RePairState(text).run();
}

std::uint64_t repair_size(const RePairResult& r) {
    return 2 * static_cast<std::uint64_t>(r.rules.size()) + r.sequence.size();
}

std::string repair_decode(const RePairResult& r) {
    std::string out;
    std::vector<std::uint32_t> stack;
    for (std::uint32_t s : r.sequence) {
        stack.push_back(s);
        while (!stack.empty()) {
            std::uint32_t v = stack.back();
            stack.pop_back();
            if (v < 256) {
                out.push_back(static_cast<char>(v));
                continue;
            }
            const auto& [l, rr] = r.rules.at(v - 256);
            stack.push_back(rr);
            stack.push_back(l);
        }
    }
    return out;
}

}  // namespace avlg
