#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "avlg/bench.hpp"
#include "avlg/corpus.hpp"
#include "avlg/grammar_io.hpp"
#include "avlg/lazy_avlg.hpp"
#include "avlg/run_stats.hpp"
#include "oracles.hpp"

namespace fs = std::filesystem;
using avlg::FormatErrc;
using avlg::FormatError;

namespace {

avlg::ConversionResult example() {
    return avlg::convert_lazy(avlg::lz77_parse("bbabaababababaababa"), {0.0, 0, false});
}

FormatErrc error_code(const std::string& bytes) {
    try {
        avlg::deserialize(bytes);
    } catch (const FormatError& e) {
        return e.code();
    }
    return FormatErrc{};
}

void put_u64(std::string& s, std::size_t at, std::uint64_t v) {
    for (int b = 0; b < 8; ++b)
        s[at + b] = static_cast<char>(v >> (8 * b));
}

// Byte offset of record `id` in a serialized grammar.
std::size_t record_offset(const avlg::Grammar& g, avlg::NodeId id) {
    std::size_t off = 4 + 1 + 8 + 8;
    for (avlg::NodeId k = 0; k < id; ++k)
        off += g.is_terminal(k) ? 2 : 17;
    return off;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("serialize round trip") {
    const auto res = example();
    const std::string bytes = avlg::serialize(res.grammar, res.start);
    CHECK(bytes.substr(0, 4) == "AVLG");
    const auto back = avlg::deserialize(bytes);
    CHECK(back.start == res.start);
    REQUIRE(back.grammar.record_count() == res.grammar.record_count());
    for (avlg::NodeId id = 0; id < res.grammar.record_count(); ++id) {
        REQUIRE(back.grammar.left(id) == res.grammar.left(id));
        REQUIRE(back.grammar.right(id) == res.grammar.right(id));
    }
    CHECK(avlg::serialize(back.grammar, back.start) == bytes);
}

TEST_CASE("deserialize error codes") {
    const auto res = example();
    const std::string bytes = avlg::serialize(res.grammar, res.start);

    CHECK_THROWS_WITH_AS(avlg::deserialize(bytes.substr(0, bytes.size() - 5)), "unexpected end", FormatError);
    CHECK(error_code(bytes.substr(0, 3)) == FormatErrc::unexpected_end);

    std::string magic = bytes;
    magic[1] = 'X';
    CHECK(error_code(magic) == FormatErrc::bad_magic);

    std::string version = bytes;
    version[4] = 9;
    CHECK(error_code(version) == FormatErrc::bad_version);

    const avlg::NodeId last = res.grammar.record_count() - 1;
    REQUIRE_FALSE(res.grammar.is_terminal(last));
    const std::size_t off = record_offset(res.grammar, last);

    std::string tag = bytes;
    tag[off] = 7;
    CHECK(error_code(tag) == FormatErrc::bad_tag);

    std::string cyclic = bytes;
    put_u64(cyclic, off + 1, last);
    CHECK_THROWS_WITH(avlg::deserialize(cyclic), "acyclicity violated");
    CHECK(error_code(cyclic) == FormatErrc::acyclicity_violated);

    std::string dangling = bytes;
    put_u64(dangling, off + 9, last + 100);
    CHECK(error_code(dangling) == FormatErrc::dangling_id);

    std::string start = bytes;
    put_u64(start, 13, last + 1);
    CHECK(error_code(start) == FormatErrc::bad_start);
}

TEST_CASE("deserialize rejects unbalanced rules") {
    avlg::Grammar g;
    avlg::NodeId c = g.add_symbol('a');
    for (int k = 0; k < 3; ++k)
        c = g.append_binary(c, g.add_symbol('a'));
    const std::string bytes = avlg::serialize(g, c);
    CHECK_THROWS_WITH(avlg::deserialize(bytes), "AVL property violated");
    CHECK(error_code(bytes) == FormatErrc::avl_violation);
}

TEST_CASE("text format") {
    avlg::Grammar g;
    const auto a = g.add_symbol('a'), b = g.add_symbol('b');
    const auto ab = g.add_merged(a, b);
    std::ostringstream os;
    avlg::write_text(os, g, ab);
    CHECK(os.str() == "# start A_2\nA_0 -> a\nA_1 -> b\nA_2 -> A_0 A_1\n");
}

TEST_CASE("verify against text") {
    const auto res = example();
    std::string text = "bbabaababababaababa";
    CHECK(avlg::verify_against_text(res.grammar, res.start, text));
    text[7] = text[7] == 'a' ? 'b' : 'a';
    CHECK_FALSE(avlg::verify_against_text(res.grammar, res.start, text));
    CHECK_FALSE(avlg::verify_against_text(res.grammar, res.start, "bbaba"));

    // Streaming comparison agrees with full materialization.
    std::mt19937_64 rng(1);
    const std::string big = oracle::repetitive_string(rng, 1000000, 4);
    const auto r = avlg::convert_lazy(avlg::lz77_parse(big));
    CHECK(avlg::verify_against_text(r.grammar, r.start, big) == (r.grammar.expand(r.start) == big));
    std::string flipped = big;
    flipped[999999] = flipped[999999] == 'a' ? 'b' : 'a';
    CHECK_FALSE(avlg::verify_against_text(r.grammar, r.start, flipped));
}

TEST_CASE("save and load") {
    TempDir dir("avlg_io_test");
    const auto res = example();
    const std::string path = (dir.path / "g.avlg").string();
    avlg::save_grammar(path, res.grammar, res.start);
    const auto back = avlg::load_grammar(path);
    CHECK(back.grammar.expand(back.start) == "bbabaababababaababa");
    CHECK_THROWS_WITH(avlg::load_grammar((dir.path / "missing").string()), doctest::Contains("missing"));
}

TEST_CASE("stats report") {
    avlg::RunStats s;
    s.algo = "lazy";
    CHECK(s.avoided_pct() == 0.0);
    s.attempted_merges = 200;
    s.avoided_merges = 15;
    CHECK(s.avoided_pct() == doctest::Approx(7.5));
    CHECK_FALSE(s.size_over_z());

    const auto res = example();
    auto st = res.stats;
    st.z = avlg::lz77_parse("bbabaababababaababa").f();
    REQUIRE(st.size_over_z());
    CHECK(*st.size_over_z() == doctest::Approx(static_cast<double>(res.grammar.size()) / 7.0));

    const std::string header = avlg::stats_csv_header();
    CHECK(header ==
          "algo,n,f,z,size_pre_flatten,size,size_over_z,records,attempted_merges,avoided_merges,"
          "avoided_pct,paranoid_mismatches,peak_records,peak_roots,wall_ms,peak_mem_bytes");
    const std::string row = avlg::stats_csv_row(st);
    CHECK(std::count(row.begin(), row.end(), ',') == std::count(header.begin(), header.end(), ','));
    CHECK(row.rfind("lazy,19,7,7,", 0) == 0);

    const auto j = nlohmann::json::parse(avlg::stats_json(st));
    CHECK(j["size"] == res.grammar.size());
    CHECK(j["z"] == 7);
    CHECK(j["f"] == 7);
    std::vector<std::string> keys;
    for (auto it = j.begin(); it != j.end(); ++it)
        keys.push_back(it.key());
    CHECK(keys.size() == 16);
}

TEST_CASE("bench table") {
    TempDir dir("avlg_bench_test");
    {
        std::ostringstream os;
        const auto rows = avlg::bench_directory(dir.path.string(), {0.125, 0, false}, os);
        CHECK(rows.empty());
        CHECK(os.str() == avlg::bench_csv_header(false) + "\n");
    }
    avlg::CorpusSpec spec;
    spec.seed_size = 1000;
    spec.copies = 20;
    spec.mutation_rate = 0.01;
    {
        std::ofstream(dir.path / "b.txt", std::ios::binary) << avlg::generate_repetitive(spec);
        std::ofstream(dir.path / "a.txt", std::ios::binary) << "bbabaababababaababa";
        std::ofstream(dir.path / "c_empty.txt", std::ios::binary);
    }
    std::ostringstream first, second;
    const auto rows = avlg::bench_directory(dir.path.string(), {0.125, 0, false}, first);
    avlg::bench_directory(dir.path.string(), {0.125, 0, false}, second);
    CHECK(first.str() == second.str());
    REQUIRE(rows.size() == 3);
    CHECK(rows[0].file == "a.txt");
    CHECK(rows[0].z == 7);
    CHECK(rows[1].ok());
    CHECK(rows[1].lazy > 0);
    CHECK(rows[1].repair > 0);
    CHECK(rows[1].lazy <= rows[1].basic);
    CHECK_FALSE(rows[2].ok());

    std::ostringstream timed;
    avlg::bench_directory(dir.path.string(), {}, timed);
    CHECK(timed.str().find("t_lazy_ms") != std::string::npos);
}
