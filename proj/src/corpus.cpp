#include "avlg/corpus.hpp"

#include <stdexcept>

namespace avlg {

namespace {

char symbol_for(unsigned k, unsigned sigma) {
    if (sigma == 4)
        return "ACGT"[k];
    if (sigma <= 26)
        return static_cast<char>('a' + k);
    return static_cast<char>(k);
}

}  // namespace

std::string random_text(std::size_t n, unsigned sigma, std::mt19937_64& rng) {
    if (sigma < 1 || sigma > 256)
        throw std::invalid_argument("alphabet size must lie in [1, 256]");
    std::uniform_int_distribution<unsigned> pick(0, sigma - 1);
    std::string out(n, '\0');
    for (auto& c : out)
        c = symbol_for(pick(rng), sigma);
    return out;
}

std::string generate_repetitive(const CorpusSpec& spec) {
    if (spec.copies == 0 || spec.seed_size == 0)
        throw std::invalid_argument("corpus needs a non-empty seed and at least one copy");
    if (!(spec.mutation_rate >= 0.0 && spec.mutation_rate <= 1.0))
        throw std::invalid_argument("mutation rate must lie in [0, 1]");
    std::mt19937_64 rng(spec.rng_seed);
    const std::string seed = random_text(spec.seed_size, spec.alphabet, rng);

    std::string out;
    out.reserve(spec.seed_size * spec.copies);
    out += seed;
    std::bernoulli_distribution mutate(spec.mutation_rate);
    std::uniform_int_distribution<unsigned> shift(1, spec.alphabet > 1 ? spec.alphabet - 1 : 1);
    for (std::size_t c = 1; c < spec.copies; ++c) {
        std::string copy = seed;
        if (spec.mutation_rate > 0.0 && spec.alphabet > 1) {
            for (auto& ch : copy) {
                if (!mutate(rng))
                    continue;
                // Substitute a different symbol.
                unsigned k = 0;
                while (symbol_for(k, spec.alphabet) != ch)
                    ++k;
                ch = symbol_for((k + shift(rng)) % spec.alphabet, spec.alphabet);
            }
        }
        out += copy;
    }
    return out;
}

}  // namespace avlg
