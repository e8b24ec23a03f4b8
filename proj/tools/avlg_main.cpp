// avlg: LZ77 parsing, LZ77 -> AVL grammar conversion, verification and
// benchmarking from the command line.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "avlg/basic_avlg.hpp"
#include "avlg/bench.hpp"
#include "avlg/corpus.hpp"
#include "avlg/grammar.hpp"
#include "avlg/grammar_io.hpp"
#include "avlg/lazy_avlg.hpp"
#include "avlg/lz77.hpp"
#include "avlg/repair.hpp"
#include "avlg/run_stats.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error(path + ": cannot open");
    std::ostringstream os;
    os << in.rdbuf();
    return std::move(os).str();
}

void write_file(const std::string& path, std::string_view data) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
    if (!out)
        throw std::runtime_error(path + ": write failed");
}

// Appends one row, writing the header first if the file is new or empty.
void append_csv(const std::string& path, const std::string& header, const std::string& row) {
    const bool fresh = !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
    std::ofstream out(path, std::ios::app);
    if (!out)
        throw std::runtime_error(path + ": cannot open for writing");
    if (fresh)
        out << header << '\n';
    out << row << '\n';
}

class VerificationFailure : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct ParseArgs {
    std::string input, output;
};

int run_parse(const ParseArgs& a) {
    const std::string text = read_file(a.input);
    if (text.empty())
        throw std::runtime_error(a.input + ": empty text");
    const auto fact = avlg::lz77_parse(text);
    const std::string out = a.output.empty() ? a.input + ".lz7f" : a.output;
    avlg::save_lz7f(out, fact);
    std::cout << "n=" << fact.n << " z=" << fact.f() << " n/z=" << std::fixed
              << std::setprecision(2) << static_cast<double>(fact.n) / fact.f() << '\n';
    return kExitOk;
}

struct DecodeArgs {
    std::string input, output;
};

int run_decode(const DecodeArgs& a) {
    const std::string text = avlg::lz_decode(avlg::load_lz7f(a.input));
    if (a.output.empty())
        std::cout.write(text.data(), static_cast<std::streamsize>(text.size()));
    else
        write_file(a.output, text);
    return kExitOk;
}

struct ConvertArgs {
    std::string input, output, algo = "lazy", verify_with, csv, text_dump;
    double sample_prob = 0.125;
    std::uint64_t kr_seed = 0;
    bool paranoid = false, prune = false;
};

int run_convert(const ConvertArgs& a) {
    const auto fact = avlg::load_lz7f(a.input);
    avlg::ConversionResult res = a.algo == "basic"
                                     ? avlg::convert_basic(fact, a.kr_seed)
                                     : avlg::convert_lazy(fact, {a.sample_prob, a.kr_seed, a.paranoid});
    if (a.prune) {
        if (a.algo != "basic")
            throw CLI::ValidationError("--prune", "pruning applies to --algo basic only");
        const avlg::NodeId roots[] = {res.start};
        auto pruned = avlg::prune(res.grammar, roots);
        res.grammar = std::move(pruned.grammar);
        res.start = pruned.roots[0];
        res.stats.algo = "basic_pruned";
        res.stats.size = res.grammar.size();
        res.stats.records = res.grammar.record_count();
    }

    if (!a.verify_with.empty()) {
        const std::string text = read_file(a.verify_with);
        res.stats.z = avlg::lz77_parse(text).f();
        if (!avlg::verify_against_text(res.grammar, res.start, text))
            throw VerificationFailure("verification failed: grammar does not generate " +
                                      a.verify_with);
    }

    const std::string out = a.output.empty() ? a.input + ".avlg" : a.output;
    avlg::save_grammar(out, res.grammar, res.start);
    if (!a.text_dump.empty()) {
        std::ofstream dump(a.text_dump);
        avlg::write_text(dump, res.grammar, res.start);
    }
    std::cout << avlg::stats_json(res.stats) << '\n';
    if (!a.csv.empty())
        append_csv(a.csv, avlg::stats_csv_header(), avlg::stats_csv_row(res.stats));
    return kExitOk;
}

int run_verify(const std::string& grammar_path, const std::string& text_path) {
    const auto loaded = avlg::load_grammar(grammar_path);
    const std::string text = read_file(text_path);
    if (!avlg::verify_against_text(loaded.grammar, loaded.start, text)) {
        std::cout << "FAIL\n";
        return kExitFailure;
    }
    std::cout << "OK\n";
    return kExitOk;
}

int run_stats(const std::string& grammar_path) {
    const auto loaded = avlg::load_grammar(grammar_path);
    const auto& g = loaded.grammar;
    const avlg::NodeId roots[] = {loaded.start};
    nlohmann::ordered_json j;
    j["records"] = g.record_count();
    j["terminals"] = g.terminal_count();
    j["size"] = g.size();
    j["reachable_size"] = avlg::prune(g, roots).grammar.size();
    j["start"] = loaded.start;
    j["n"] = g.explen(loaded.start);
    j["height"] = g.height(loaded.start);
    j["avl_check"] = avlg::avl_check(g);
    j["height_check"] = avlg::height_check(g);
    std::cout << j.dump() << '\n';
    return kExitOk;
}

int run_repair(const std::string& input, const std::string& csv) {
    const std::string text = read_file(input);
    const auto res = avlg::repair_compress(text);
    const auto size = avlg::repair_size(res);
    std::cout << "n=" << text.size() << " rules=" << res.rules.size()
              << " sequence=" << res.sequence.size() << " size=" << size << '\n';
    if (!csv.empty())
        append_csv(csv, "file,n,rules,sequence,size",
                   input + ',' + std::to_string(text.size()) + ',' +
                       std::to_string(res.rules.size()) + ',' +
                       std::to_string(res.sequence.size()) + ',' + std::to_string(size));
    return kExitOk;
}

struct BenchArgs {
    std::string dir, csv;
    avlg::BenchOptions opts;
    bool no_timings = false;
};

int run_bench(BenchArgs a) {
    a.opts.timings = !a.no_timings;
    std::vector<avlg::BenchRow> rows;
    if (a.csv.empty()) {
        rows = avlg::bench_directory(a.dir, a.opts, std::cout);
    } else {
        std::ofstream out(a.csv);
        if (!out)
            throw std::runtime_error(a.csv + ": cannot open for writing");
        rows = avlg::bench_directory(a.dir, a.opts, out);
    }
    for (const auto& r : rows)
        if (!r.ok())
            std::cerr << r.file << ": " << r.error << '\n';
    return kExitOk;
}

int run_gen_corpus(const avlg::CorpusSpec& spec, const std::string& out) {
    write_file(out, avlg::generate_repetitive(spec));
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"AVL grammar construction from LZ77 parses"};
    app.require_subcommand(1);

    ParseArgs parse_args;
    auto* parse = app.add_subcommand("parse", "Compute the greedy LZ77 parse of a text");
    parse->add_option("text", parse_args.input, "Input text file")->required()->check(CLI::ExistingFile);
    parse->add_option("-o,--out", parse_args.output, "Output LZ7F file (default <text>.lz7f)");

    DecodeArgs decode_args;
    auto* decode = app.add_subcommand("decode", "Decode an LZ7F file back to text");
    decode->add_option("lz77", decode_args.input, "Input LZ7F file")->required()->check(CLI::ExistingFile);
    decode->add_option("-o,--out", decode_args.output, "Output text file (default stdout)");

    ConvertArgs conv_args;
    auto* convert = app.add_subcommand("convert", "Convert an LZ7F parse to an AVL grammar");
    convert->add_option("lz77", conv_args.input, "Input LZ7F file")->required()->check(CLI::ExistingFile);
    convert->add_option("-o,--out", conv_args.output, "Output AVLG file (default <lz77>.avlg)");
    convert->add_option("--algo", conv_args.algo, "basic or lazy")
        ->check(CLI::IsMember({"basic", "lazy"}));
    convert->add_option("--sample-prob", conv_args.sample_prob, "Fingerprint sampling probability")
        ->check(CLI::Range(0.0, 1.0));
    convert->add_option("--kr-seed", conv_args.kr_seed, "Karp-Rabin base seed");
    convert->add_flag("--paranoid", conv_args.paranoid, "Verify dedup hits by expansion");
    convert->add_flag("--prune", conv_args.prune, "Drop unreachable rules (basic only)");
    convert->add_option("--verify-with", conv_args.verify_with, "Check the grammar against this text")
        ->check(CLI::ExistingFile);
    convert->add_option("--csv", conv_args.csv, "Append the stats row to this CSV file");
    convert->add_option("--text-dump", conv_args.text_dump, "Also write the rules in text form");

    std::string verify_grammar, verify_text;
    auto* verify = app.add_subcommand("verify", "Check that a grammar generates a text");
    verify->add_option("grammar", verify_grammar, "AVLG file")->required()->check(CLI::ExistingFile);
    verify->add_option("text", verify_text, "Text file")->required()->check(CLI::ExistingFile);

    std::string stats_grammar;
    auto* stats = app.add_subcommand("stats", "Print grammar statistics as JSON");
    stats->add_option("grammar", stats_grammar, "AVLG file")->required()->check(CLI::ExistingFile);

    std::string repair_input, repair_csv;
    auto* repair = app.add_subcommand("repair", "Run the Re-Pair baseline on a text");
    repair->add_option("text", repair_input, "Input text file")->required()->check(CLI::ExistingFile);
    repair->add_option("--csv", repair_csv, "Append the result row to this CSV file");

    BenchArgs bench_args;
    auto* bench = app.add_subcommand("bench", "Compare all methods on every file of a directory");
    bench->add_option("corpus", bench_args.dir, "Corpus directory")->required()->check(CLI::ExistingDirectory);
    bench->add_option("--csv", bench_args.csv, "Write the table here instead of stdout");
    bench->add_option("--sample-prob", bench_args.opts.sample_prob, "Fingerprint sampling probability")
        ->check(CLI::Range(0.0, 1.0));
    bench->add_option("--kr-seed", bench_args.opts.kr_seed, "Karp-Rabin base seed");
    bench->add_flag("--no-timings", bench_args.no_timings, "Omit timing columns");

    avlg::CorpusSpec corpus;
    std::string corpus_out;
    auto* gen = app.add_subcommand("gen-corpus", "Generate a synthetic repetitive text");
    gen->add_option("--seed-size", corpus.seed_size, "Length of the random seed block");
    gen->add_option("--copies", corpus.copies, "Number of blocks including the seed")
        ->check(CLI::PositiveNumber);
    gen->add_option("--mutation-rate", corpus.mutation_rate, "Per-symbol substitution rate")
        ->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", corpus.rng_seed, "RNG seed");
    gen->add_option("--alphabet", corpus.alphabet, "Alphabet size")->check(CLI::Range(1, 256));
    gen->add_option("--out", corpus_out, "Output file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*parse)
            return run_parse(parse_args);
        if (*decode)
            return run_decode(decode_args);
        if (*convert)
            return run_convert(conv_args);
        if (*verify)
            return run_verify(verify_grammar, verify_text);
        if (*stats)
            return run_stats(stats_grammar);
        if (*repair)
            return run_repair(repair_input, repair_csv);
        if (*bench)
            return run_bench(bench_args);
        if (*gen)
            return run_gen_corpus(corpus, corpus_out);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}
