#include "avlg/suffix_array.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace avlg {

namespace {

using Index = std::int32_t;

// Induced sorting over an integer string with symbols in [0, upper].
std::vector<Index> sais(const std::vector<Index>& s, Index upper) {
    const Index n = static_cast<Index>(s.size());
    if (n == 0)
        return {};
    if (n == 1)
        return {0};
    if (n == 2)
        return s[0] < s[1] ? std::vector<Index>{0, 1} : std::vector<Index>{1, 0};

    std::vector<Index> sa(n);
    std::vector<bool> is_s(n, false);
    for (Index i = n - 2; i >= 0; --i)
        is_s[i] = s[i] == s[i + 1] ? is_s[i + 1] : s[i] < s[i + 1];

    // Bucket boundaries: sum_l[c] = start of c's L-bucket, sum_s[c] = start
    // of c's S-bucket.
    std::vector<Index> sum_l(upper + 1, 0), sum_s(upper + 1, 0);
    for (Index i = 0; i < n; ++i) {
        if (!is_s[i])
            ++sum_s[s[i]];
        else
            ++sum_l[s[i] + 1];
    }
    for (Index c = 0; c <= upper; ++c) {
        sum_s[c] += sum_l[c];
        if (c < upper)
            sum_l[c + 1] += sum_s[c];
    }

    auto induce = [&](const std::vector<Index>& lms) {
        std::fill(sa.begin(), sa.end(), -1);
        std::vector<Index> buf(sum_s);
        for (Index d : lms)
            if (d != n)
                sa[buf[s[d]]++] = d;
        buf = sum_l;
        sa[buf[s[n - 1]]++] = n - 1;
        for (Index k = 0; k < n; ++k) {
            Index v = sa[k];
            if (v >= 1 && !is_s[v - 1])
                sa[buf[s[v - 1]]++] = v - 1;
        }
        buf = sum_l;
        for (Index k = n - 1; k >= 0; --k) {
            Index v = sa[k];
            if (v >= 1 && is_s[v - 1])
                sa[--buf[s[v - 1] + 1]] = v - 1;
        }
    };

    std::vector<Index> lms_map(n + 1, -1);
    std::vector<Index> lms;
    for (Index i = 1; i < n; ++i) {
        if (!is_s[i - 1] && is_s[i]) {
            lms_map[i] = static_cast<Index>(lms.size());
            lms.push_back(i);
        }
    }
    const Index m = static_cast<Index>(lms.size());
    induce(lms);

    if (m > 0) {
        std::vector<Index> sorted_lms;
        sorted_lms.reserve(m);
        for (Index v : sa)
            if (lms_map[v] != -1)
                sorted_lms.push_back(v);

        // Name LMS substrings; equal substrings share a name.
        std::vector<Index> rec(m);
        Index rec_upper = 0;
        rec[lms_map[sorted_lms[0]]] = 0;
        for (Index k = 1; k < m; ++k) {
            Index l = sorted_lms[k - 1], r = sorted_lms[k];
            Index end_l = lms_map[l] + 1 < m ? lms[lms_map[l] + 1] : n;
            Index end_r = lms_map[r] + 1 < m ? lms[lms_map[r] + 1] : n;
            bool same = true;
            if (end_l - l != end_r - r) {
                same = false;
            } else {
                while (l < end_l && s[l] == s[r]) {
                    ++l;
                    ++r;
                }
                if (l == n || s[l] != s[r])
                    same = false;
            }
            if (!same)
                ++rec_upper;
            rec[lms_map[sorted_lms[k]]] = rec_upper;
        }

        auto rec_sa = sais(rec, rec_upper);
        for (Index k = 0; k < m; ++k)
            sorted_lms[k] = lms[rec_sa[k]];
        induce(sorted_lms);
    }
    return sa;
}

}  // namespace

std::vector<std::int32_t> suffix_array(std::string_view text) {
    if (text.size() >= static_cast<std::size_t>(std::numeric_limits<Index>::max()))
        throw std::length_error("suffix_array: text too long");
    std::vector<Index> s(text.size());
    for (std::size_t i = 0; i < text.size(); ++i)
        s[i] = static_cast<unsigned char>(text[i]);
    return sais(s, 255);
}

std::vector<std::int32_t> lcp_array(std::string_view text, const std::vector<std::int32_t>& sa,
                                    const std::vector<std::int32_t>& rank) {
    const Index n = static_cast<Index>(text.size());
    std::vector<Index> lcp(n, 0);
    Index h = 0;
    for (Index i = 0; i < n; ++i) {
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        Index j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && text[i + h] == text[j + h])
            ++h;
        lcp[rank[i]] = h;
        if (h > 0)
            --h;
    }
    return lcp;
}

}  // namespace avlg
