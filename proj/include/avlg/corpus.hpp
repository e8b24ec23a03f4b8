#ifndef AVLG_CORPUS_HPP_
#define AVLG_CORPUS_HPP_

#include <cstdint>
#include <random>
#include <string>

namespace avlg {

/// Synthetic repetitive collection: a random seed block followed by
/// copies - 1 point-mutated copies of it.
struct CorpusSpec {
    std::size_t seed_size = 10'000;
    std::size_t copies = 200;
    double mutation_rate = 0.0;
    std::uint64_t rng_seed = 1;
    unsigned alphabet = 4;  // 4 -> ACGT, <= 26 -> a.., otherwise raw bytes 0..alphabet-1
};

std::string generate_repetitive(const CorpusSpec& spec);

/// Uniform random text over the first `sigma` symbols of the same alphabet
/// mapping.
std::string random_text(std::size_t n, unsigned sigma, std::mt19937_64& rng);

}  // namespace avlg

#endif  // AVLG_CORPUS_HPP_
