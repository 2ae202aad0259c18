#include "warmlex/reliability.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "warmlex/annotations.hpp"
#include "warmlex/errors.hpp"

namespace warmlex {

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw DomainError("pearson: input lengths differ (" + std::to_string(xs.size()) + " vs " +
                          std::to_string(ys.size()) + ")");
    const std::size_t n = xs.size();
    if (n < 2) throw DomainError("pearson: need at least 2 observations");

    double mean_x = 0.0;
    double mean_y = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mean_x += xs[i];
        mean_y += ys[i];
    }
    mean_x /= static_cast<double>(n);
    mean_y /= static_cast<double>(n);

    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double dx = xs[i] - mean_x;
        const double dy = ys[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0)
        throw UndefinedCorrelationError("pearson: zero variance input");
    return sxy / std::sqrt(sxx * syy);
}

std::vector<double> fractional_ranks(std::span<const double> values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });

    std::vector<double> ranks(n, 0.0);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        // Positions i..j (0-based) share the average of ranks i+1..j+1.
        const double shared = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
        for (std::size_t k = i; k <= j; ++k) ranks[order[k]] = shared;
        i = j + 1;
    }
    return ranks;
}

double spearman(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size())
        throw DomainError("spearman: input lengths differ (" + std::to_string(xs.size()) + " vs " +
                          std::to_string(ys.size()) + ")");
    const std::vector<double> rx = fractional_ranks(xs);
    const std::vector<double> ry = fractional_ranks(ys);
    return pearson(rx, ry);
}

std::mt19937_64 seeded_engine(std::uint64_t seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
    return std::mt19937_64(seq);
}

std::pair<std::vector<int>, std::vector<int>> split_responses(const std::vector<int>& responses,
                                                              std::mt19937_64& rng) {
    std::vector<int> shuffled = responses;
    deterministic_shuffle(shuffled, rng);
    const std::size_t n = shuffled.size();
    std::size_t k = n / 2;
    if (n % 2 == 1 && (rng() & 1U) != 0) ++k;  // coin decides who gets the odd response
    std::vector<int> first(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(k));
    std::vector<int> second(shuffled.begin() + static_cast<std::ptrdiff_t>(k), shuffled.end());
    return {std::move(first), std::move(second)};
}

SplitHalfResult split_half_once(const std::map<std::string, std::vector<int>>& per_term_responses,
                                std::mt19937_64& rng) {
    std::vector<double> half_a;
    std::vector<double> half_b;
    half_a.reserve(per_term_responses.size());
    half_b.reserve(per_term_responses.size());

    for (const auto& [term, responses] : per_term_responses) {
        if (responses.size() < 2) continue;
        const auto [first, second] = split_responses(responses, rng);
        half_a.push_back(aggregate_term(first));
        half_b.push_back(aggregate_term(second));
    }
    if (half_a.empty())
        throw DataError("split_half_once: no term has at least 2 responses");
    return {spearman(half_a, half_b), pearson(half_a, half_b)};
}

ReliabilityReport shr(const std::map<std::string, std::vector<int>>& per_term_responses,
                      Dimension dim, std::size_t trials, std::uint64_t seed) {
    if (trials == 0) throw DomainError("shr: need at least 1 trial");

    double sum_spearman = 0.0;
    double sum_pearson = 0.0;
    for (std::size_t trial = 0; trial < trials; ++trial) {
        std::mt19937_64 rng = seeded_engine(seed, trial);
        const SplitHalfResult result = split_half_once(per_term_responses, rng);
        sum_spearman += result.spearman;
        sum_pearson += result.pearson;
    }

    std::size_t usable = 0;
    for (const auto& [term, responses] : per_term_responses) {
        if (responses.size() >= 2) ++usable;
    }

    return ReliabilityReport{dim,
                             trials,
                             sum_spearman / static_cast<double>(trials),
                             sum_pearson / static_cast<double>(trials),
                             usable,
                             seed};
}

}  // namespace warmlex
