#pragma once

#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "warmlex/lexicon.hpp"

namespace warmlex {

struct TermCandidate {
    std::string term;
    double valence;  // [-1, 1]
};

enum class GoldKind { NotGold = 0, PopupGold = 1, NoPopupGold = 2 };
std::string_view gold_kind_name(GoldKind kind);
std::optional<GoldKind> parse_gold_kind(std::string_view name);

struct AnnotationRecord {
    std::string annotator_id;
    std::string term;
    Dimension dimension = Dimension::Trust;  // Trust or Sociability only
    int response = 0;                        // integer on [-3, 3]
    GoldKind gold_kind = GoldKind::NotGold;
    std::optional<int> gold_answer;  // present iff gold_kind != NotGold

    void validate() const;
    bool operator==(const AnnotationRecord&) const = default;
};

struct AnnotatorStats {
    std::string annotator_id;
    std::size_t gold_seen = 0;
    std::size_t gold_correct = 0;
    std::optional<double> accuracy;  // absent when the annotator saw no gold
    bool retained = true;            // gold_seen == 0, or accuracy >= the floor
};

struct AggregationStats {
    Dimension dimension = Dimension::Trust;
    std::size_t n_terms = 0;
    std::size_t n_annotations = 0;
    double mean_annotations_per_term = 0.0;
};

inline constexpr double kDefaultValenceExclusionLo = -0.2;
inline constexpr double kDefaultValenceExclusionHi = 0.2;
inline constexpr int kDefaultGoldTolerance = 1;
inline constexpr double kDefaultMinGoldAccuracy = 0.8;

// Keeps candidates with valence <= lo or >= hi: the exclusion band is open, so
// both endpoints survive. Preserves input order. Requires lo < hi.
std::vector<std::string> select_terms(std::span<const TermCandidate> candidates,
                                      double lo = kDefaultValenceExclusionLo,
                                      double hi = kDefaultValenceExclusionHi);

// |response - gold_answer| <= tolerance. tolerance >= 0.
bool gold_correct(int response, int gold_answer, int tolerance);

// Pools popup and no-popup gold; annotators with no gold stay retained.
std::map<std::string, AnnotatorStats> compute_annotator_stats(
    std::span<const AnnotationRecord> records, int tolerance = kDefaultGoldTolerance,
    double min_accuracy = kDefaultMinGoldAccuracy);

// Keeps only records from retained annotators. Gold rows are dropped from the
// result unless include_gold is set; dropping an annotator removes every one
// of their records. Order is preserved.
std::vector<AnnotationRecord> filter_annotations(std::span<const AnnotationRecord> records,
                                                 const std::map<std::string, AnnotatorStats>& stats,
                                                 bool include_gold = false);

// Arithmetic mean of integer responses; exact sum before a single division.
double aggregate_term(std::span<const int> responses);

struct DimensionLexiconResult {
    Lexicon lexicon;
    AggregationStats aggregation;
    std::map<std::string, AnnotatorStats> annotators;
};

// Full path from raw records to a single-dimension lexicon: annotator stats,
// filtering, per-term aggregation. Every record must carry dimension == dim.
DimensionLexiconResult build_dimension_lexicon(std::span<const AnnotationRecord> records,
                                               Dimension dim,
                                               int tolerance = kDefaultGoldTolerance,
                                               double min_accuracy = kDefaultMinGoldAccuracy,
                                               bool include_gold = false);

// CSV with header annotator_id,term,dimension,response,gold_kind,gold_answer.
// dimension: trust|sociability; gold_kind: none|popup|nopopup; gold_answer
// empty unless gold. '#' lines and blank lines are skipped.
std::vector<AnnotationRecord> parse_annotations_csv(std::istream& in);

// Groups responses per term, preserving record order within each term.
std::map<std::string, std::vector<int>> responses_by_term(std::span<const AnnotationRecord> records);

}  // namespace warmlex
