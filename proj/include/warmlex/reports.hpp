#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "warmlex/annotations.hpp"
#include "warmlex/corpus.hpp"
#include "warmlex/lexicon.hpp"
#include "warmlex/reliability.hpp"

namespace warmlex {

// Embedded in every output file so identical inputs reproduce identical bytes:
// no timestamps, no absolute paths.
struct OutputMetadata {
    std::string version;
    std::string config_hash;
    std::string config_echo;  // canonical one-line config JSON
    std::uint64_t seed = 0;
    std::vector<std::pair<std::string, std::string>> inputs;  // (basename, content digest)

    // '#'-prefixed lines for CSV/TSV outputs.
    std::string comment_block() const;
};

std::string build_stats_json(const AggregationStats& aggregation,
                             const std::map<std::string, AnnotatorStats>& annotators,
                             const OutputMetadata& meta);

struct MergeInputSizes {
    std::size_t trust_input = 0;
    std::size_t sociability_input = 0;
    std::size_t merged = 0;
};

std::string distribution_json(const ClassDistribution& dist, const MergeInputSizes& sizes,
                              const OutputMetadata& meta);

std::string reliability_report_json(const ReliabilityReport& report, const OutputMetadata& meta);

std::string score_report_json(std::span<const TargetReport> reports,
                              const std::map<Dimension, Baseline>& baselines,
                              const OutputMetadata& meta);

std::string ingroup_outgroup_json(const IngroupOutgroupReport& report, const OutputMetadata& meta);

// Extracts the warmth/competence scatter (targets with non-degenerate co-term
// W and C, plus the two baselines) from a score_report_json document.
struct WcScatterData {
    struct Point {
        std::string label;
        double w;
        double c;
    };
    std::vector<Point> points;
    double baseline_w = 0.0;
    double baseline_c = 0.0;
};
WcScatterData scatter_from_score_report(const std::string& json_text);

// Flattened per-class rows from a distribution_json document.
struct DistributionRows {
    struct ClassRow {
        std::string dimension;
        std::string category;
        std::size_t count;
        double percent;
    };
    struct SourceRow {
        std::string category;
        std::size_t from_trust;
        std::size_t from_sociability;
        std::size_t equal;
    };
    std::vector<ClassRow> classes;
    std::vector<SourceRow> sources;
};
DistributionRows rows_from_distribution(const std::string& json_text);

}  // namespace warmlex
