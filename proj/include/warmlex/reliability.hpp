#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "warmlex/lexicon.hpp"

namespace warmlex {

struct ReliabilityReport {
    Dimension dimension = Dimension::Trust;
    std::size_t trials = 0;
    double mean_spearman = 0.0;
    double mean_pearson = 0.0;
    std::size_t n_terms_used = 0;  // terms with at least 2 responses
    std::uint64_t seed = 0;
};

// Sample Pearson correlation. Throws DomainError on length mismatch or n < 2,
// UndefinedCorrelationError when either vector has zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

// 1-based ranks; tied values share the average of their rank positions.
std::vector<double> fractional_ranks(std::span<const double> values);

// Pearson correlation of the fractional ranks.
double spearman(std::span<const double> xs, std::span<const double> ys);

// Engine for a (seed, stream) pair. mt19937_64 output is fully specified by
// the standard, so sequences are identical across platforms.
std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream);

// Fisher-Yates with a modulo draw; std::shuffle's draws are
// implementation-defined, which would break cross-platform reproducibility.
template <class T>
void deterministic_shuffle(std::vector<T>& values, std::mt19937_64& rng) {
    for (std::size_t i = values.size(); i > 1; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % i);
        std::swap(values[i - 1], values[j]);
    }
}

// Random partition into maximally balanced halves (sizes floor(n/2) and
// ceil(n/2)). For odd n a coin decides which half receives the extra
// response, so each response lands in the first half with probability 1/2.
std::pair<std::vector<int>, std::vector<int>> split_responses(const std::vector<int>& responses,
                                                              std::mt19937_64& rng);

struct SplitHalfResult {
    double spearman;
    double pearson;
};

// One split-half trial: every term's responses are split, each half is
// aggregated to a mean, and the two per-term score vectors are correlated.
// Terms with fewer than 2 responses are skipped; if all are skipped, throws
// DataError.
SplitHalfResult split_half_once(const std::map<std::string, std::vector<int>>& per_term_responses,
                                std::mt19937_64& rng);

// Mean split-half correlations over independently seeded trials.
ReliabilityReport shr(const std::map<std::string, std::vector<int>>& per_term_responses,
                      Dimension dim, std::size_t trials = 1000, std::uint64_t seed = 1);

}  // namespace warmlex
