#ifndef AVLG_BENCH_HPP_
#define AVLG_BENCH_HPP_

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace avlg {

struct BenchOptions {
    double sample_prob = 0.125;
    std::uint64_t kr_seed = 0;
    bool timings = true;  // timing columns make rows differ between runs
};

/// One corpus file: LZ77 size, the sizes produced by each method, and
/// their ratios.
struct BenchRow {
    std::string file;
    std::uint64_t n = 0;
    std::uint64_t z = 0;
    std::uint64_t basic = 0;
    std::uint64_t basic_pruned = 0;
    std::uint64_t lazy = 0;     // at opts.sample_prob
    std::uint64_t lazy_p0 = 0;  // without fingerprint dedup
    std::uint64_t repair = 0;
    double avoided_pct = 0.0;
    std::uint64_t lazy_peak_records = 0;
    double t_parse_ms = 0, t_basic_ms = 0, t_lazy_ms = 0, t_repair_ms = 0;
    std::string error;  // non-empty if the file failed

    bool ok() const { return error.empty(); }
};

BenchRow bench_text(const std::string& name, std::string_view text, const BenchOptions& opts);

std::string bench_csv_header(bool timings);
std::string bench_csv_row(const BenchRow& row, bool timings);

/// Benchmarks every regular file in `dir` (sorted by name) and writes the
/// CSV table to `out`. Failures are recorded in the row and the run goes
/// on. Returns the rows.
std::vector<BenchRow> bench_directory(const std::string& dir, const BenchOptions& opts,
                                      std::ostream& out);

}  // namespace avlg

#endif  // AVLG_BENCH_HPP_
