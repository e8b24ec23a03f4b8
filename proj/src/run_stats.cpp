#include "avlg/run_stats.hpp"

#include <iomanip>
#include <sstream>

#include <json.hpp>

namespace avlg {

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace

std::string stats_csv_header() {
    return "algo,n,f,z,size_pre_flatten,size,size_over_z,records,attempted_merges,"
           "avoided_merges,avoided_pct,paranoid_mismatches,peak_records,peak_roots,wall_ms,"
           "peak_mem_bytes";
}

std::string stats_csv_row(const RunStats& s) {
    std::ostringstream os;
    os << s.algo << ',' << s.n << ',' << s.f << ',' << (s.z ? std::to_string(*s.z) : "") << ','
       << s.size_pre_flatten << ',' << s.size << ','
       << (s.size_over_z() ? fixed(*s.size_over_z(), 4) : "") << ',' << s.records << ','
       << s.attempted_merges << ',' << s.avoided_merges << ',' << fixed(s.avoided_pct(), 4) << ','
       << s.paranoid_mismatches << ',' << s.peak_records << ',' << s.peak_roots << ','
       << fixed(s.wall_ms, 3) << ',' << s.peak_mem_bytes;
    return os.str();
}

std::string stats_json(const RunStats& s) {
    nlohmann::ordered_json j;
    j["algo"] = s.algo;
    j["n"] = s.n;
    j["f"] = s.f;
    j["z"] = s.z ? nlohmann::ordered_json(*s.z) : nlohmann::ordered_json(nullptr);
    j["size_pre_flatten"] = s.size_pre_flatten;
    j["size"] = s.size;
    j["size_over_z"] =
        s.size_over_z() ? nlohmann::ordered_json(*s.size_over_z()) : nlohmann::ordered_json(nullptr);
    j["records"] = s.records;
    j["attempted_merges"] = s.attempted_merges;
    j["avoided_merges"] = s.avoided_merges;
    j["avoided_pct"] = s.avoided_pct();
    j["paranoid_mismatches"] = s.paranoid_mismatches;
    j["peak_records"] = s.peak_records;
    j["peak_roots"] = s.peak_roots;
    j["wall_ms"] = s.wall_ms;
    j["peak_mem_bytes"] = s.peak_mem_bytes;
    return j.dump();
}

}  // namespace avlg
