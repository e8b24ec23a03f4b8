#include "avlg/bench.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "avlg/basic_avlg.hpp"
#include "avlg/grammar.hpp"
#include "avlg/lazy_avlg.hpp"
#include "avlg/lz77.hpp"
#include "avlg/repair.hpp"

namespace avlg {

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
    return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string ratio(std::uint64_t a, std::uint64_t b) {
    if (b == 0)
        return "";
    std::ostringstream os;
    os << std::fixed << std::setprecision(4) << static_cast<double>(a) / static_cast<double>(b);
    return os.str();
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in)
        throw std::runtime_error(p.string() + ": cannot open");
    std::ostringstream os;
    os << in.rdbuf();
    return std::move(os).str();
}

}  // namespace

BenchRow bench_text(const std::string& name, std::string_view text, const BenchOptions& opts) {
    BenchRow row;
    row.file = name;
    row.n = text.size();
    try {
        auto t0 = Clock::now();
        const Factorization fact = lz77_parse(text);
        row.t_parse_ms = ms_since(t0);
        row.z = fact.f();

        t0 = Clock::now();
        {
            auto basic = convert_basic(fact, opts.kr_seed);
            row.t_basic_ms = ms_since(t0);
            row.basic = basic.grammar.size();
            const NodeId roots[] = {basic.start};
            row.basic_pruned = prune(basic.grammar, roots).grammar.size();
        }

        t0 = Clock::now();
        auto lazy = convert_lazy(fact, {opts.sample_prob, opts.kr_seed, false});
        row.t_lazy_ms = ms_since(t0);
        row.lazy = lazy.stats.size;
        row.avoided_pct = lazy.stats.avoided_pct();
        row.lazy_peak_records = lazy.stats.peak_records;

        row.lazy_p0 = convert_lazy(fact, {0.0, opts.kr_seed, false}).stats.size;

        t0 = Clock::now();
        row.repair = repair_size(repair_compress(text));
        row.t_repair_ms = ms_since(t0);
    } catch (const std::exception& e) {
        row.error = e.what();
    }
    return row;
}

std::string bench_csv_header(bool timings) {
    std::string h =
        "file,n,z,basic,basic_pruned,lazy,lazy_p0,repair,basic_over_z,basic_pruned_over_z,"
        "lazy_over_z,repair_over_z,lazy_over_repair,basic_over_lazy,avoided_pct,"
        "lazy_peak_records";
    if (timings)
        h += ",t_parse_ms,t_basic_ms,t_lazy_ms,t_repair_ms";
    return h + ",error";
}

std::string bench_csv_row(const BenchRow& r, bool timings) {
    std::ostringstream os;
    os << r.file << ',' << r.n << ',' << r.z << ',' << r.basic << ',' << r.basic_pruned << ','
       << r.lazy << ',' << r.lazy_p0 << ',' << r.repair << ',' << ratio(r.basic, r.z) << ','
       << ratio(r.basic_pruned, r.z) << ',' << ratio(r.lazy, r.z) << ',' << ratio(r.repair, r.z)
       << ',' << ratio(r.lazy, r.repair) << ',' << ratio(r.basic, r.lazy) << ',' << std::fixed
       << std::setprecision(4) << r.avoided_pct << ',' << r.lazy_peak_records;
    if (timings)
        os << std::setprecision(3) << ',' << r.t_parse_ms << ',' << r.t_basic_ms << ','
           << r.t_lazy_ms << ',' << r.t_repair_ms;
    std::string err = r.error;
    std::replace(err.begin(), err.end(), ',', ';');
    std::replace(err.begin(), err.end(), '\n', ' ');
    os << ',' << err;
    return os.str();
}

std::vector<BenchRow> bench_directory(const std::string& dir, const BenchOptions& opts,
                                      std::ostream& out) {
    namespace fs = std::filesystem;
    if (!fs::is_directory(dir))
        throw std::runtime_error(dir + ": not a directory");
    std::vector<fs::path> files;
    for (const auto& e : fs::directory_iterator(dir))
        if (e.is_regular_file())
            files.push_back(e.path());
    std::sort(files.begin(), files.end());

    out << bench_csv_header(opts.timings) << '\n';
    std::vector<BenchRow> rows;
    for (const auto& p : files) {
        BenchRow row;
        try {
            row = bench_text(p.filename().string(), read_file(p), opts);
        } catch (const std::exception& e) {
            row.file = p.filename().string();
            row.error = e.what();
        }
        out << bench_csv_row(row, opts.timings) << '\n' << std::flush;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace avlg
