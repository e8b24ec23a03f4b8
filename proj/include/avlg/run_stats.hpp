#ifndef AVLG_RUN_STATS_HPP_
#define AVLG_RUN_STATS_HPP_

#include <cstdint>
#include <optional>
#include <string>

namespace avlg {

/// Counters of one conversion run. Sizes are total right-hand-side
/// lengths.
struct RunStats {
    std::string algo;
    std::uint64_t n = 0;
    std::uint64_t f = 0;
    std::optional<std::uint64_t> z;
    std::uint64_t size_pre_flatten = 0;  // grammar plus the roots sequence as a start rule
    std::uint64_t size = 0;              // final grammar
    std::uint64_t records = 0;
    std::uint64_t attempted_merges = 0;
    std::uint64_t avoided_merges = 0;
    std::uint64_t paranoid_mismatches = 0;
    std::uint64_t peak_records = 0;
    std::uint64_t peak_roots = 0;
    double wall_ms = 0.0;
    std::uint64_t peak_mem_bytes = 0;

    /// avoided / attempted * 100, or 0 when nothing was attempted.
    double avoided_pct() const {
        return attempted_merges == 0 ? 0.0
                                     : 100.0 * static_cast<double>(avoided_merges) /
                                           static_cast<double>(attempted_merges);
    }
    std::optional<double> size_over_z() const {
        if (!z || *z == 0)
            return std::nullopt;
        return static_cast<double>(size) / static_cast<double>(*z);
    }
};

/// Fixed column order shared by all CSV output of run records.
std::string stats_csv_header();
std::string stats_csv_row(const RunStats& s);
/// Single-line JSON object with the same fields as the CSV row.
std::string stats_json(const RunStats& s);

}  // namespace avlg

#endif  // AVLG_RUN_STATS_HPP_
