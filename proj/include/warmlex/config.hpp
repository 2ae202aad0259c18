#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "warmlex/corpus.hpp"
#include "warmlex/lexicon.hpp"

namespace warmlex {

inline constexpr std::string_view kToolName = "warmlex";
inline constexpr std::string_view kToolVersion = "0.1.0";

// Every tunable in one place; defaults match the published pipeline.
struct RunConfig {
    Thresholds thresholds{};
    int gold_tolerance = 1;
    double min_gold_accuracy = 0.8;
    bool include_gold_in_aggregation = false;
    std::uint64_t shr_trials = 1000;
    bool shr_on_raw = false;  // skip quality-control filtering before reliability runs
    std::uint64_t seed = 1;
    std::uint64_t min_group_docs = 50;
    double valence_exclusion_lo = -0.2;
    double valence_exclusion_hi = 0.2;
    DenominatorMode denominator = DenominatorMode::AllTokens;
    bool exclude_target_terms = true;
    bool cumulative_aoa = false;
    int aoa_age_lo = 3;
    int aoa_age_hi = 17;
    // Optional paths to externally produced single-dimension lexicons; used
    // by the real-data consistency checks when present.
    std::string real_trust_tsv;
    std::string real_sociability_tsv;
    std::string real_competence_tsv;

    void validate() const;

    // Single-line JSON with sorted keys: the canonical form that gets hashed
    // and echoed into output metadata.
    std::string canonical_json() const;
    std::string config_hash() const;
};

// Overlays JSON text onto a config. Unknown keys are an error.
void apply_config_json(RunConfig& config, const std::string& json_text);

// Reads and applies a config file; missing file -> IoError.
RunConfig load_run_config(const std::filesystem::path& path);

}  // namespace warmlex
