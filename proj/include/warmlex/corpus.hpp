#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_set>
#include <utility>
#include <vector>

#include "warmlex/lexicon.hpp"

namespace warmlex {

// Lowercases, splits on whitespace, drops URLs and @-mentions, strips edge
// punctuation (which removes '#' from hashtags), drops empty leftovers.
std::vector<std::string> tokenize(std::string_view text);

class Document {
public:
    Document(std::string id, std::string text, std::optional<int> year = std::nullopt,
             std::optional<std::string> region = std::nullopt);

    const std::string& id() const { return id_; }
    const std::string& text() const { return text_; }
    const std::vector<std::string>& tokens() const { return tokens_; }
    std::optional<int> year() const { return year_; }
    const std::optional<std::string>& region() const { return region_; }

private:
    std::string id_;
    std::string text_;
    std::vector<std::string> tokens_;  // always derived from text_
    std::optional<int> year_;
    std::optional<std::string> region_;
};

struct TargetSpec {
    std::string name;
    std::vector<std::string> surface_terms;  // lowercase single tokens, lookup order

    void validate() const;
};

enum class DenominatorMode { AllTokens = 0, LexiconCovered = 1 };
std::string_view denominator_mode_name(DenominatorMode mode);
std::optional<DenominatorMode> parse_denominator_mode(std::string_view name);

struct CotermScore {
    std::string target;
    Dimension dimension = Dimension::Warmth;
    double score = 0.0;  // (n_high - n_low) / n_tokens; 0 when degenerate
    std::size_t n_docs = 0;
    std::size_t n_tokens = 0;  // non-excluded tokens counted per DenominatorMode
    std::size_t n_high = 0;
    std::size_t n_low = 0;
    bool degenerate = false;  // n_tokens == 0
};

struct Baseline {
    Dimension dimension = Dimension::Warmth;
    double score = 0.0;
    std::size_t n_docs = 0;
    bool degenerate = false;
};

// Documents containing at least one surface term as a whole token; "nursery"
// does not match "nurse". Input order preserved.
std::vector<Document> filter_documents(std::span<const Document> corpus, const TargetSpec& target);

// For each dimension, the score of the first surface term (in list order)
// that has that dimension populated in the lexicon.
std::map<Dimension, std::optional<double>> direct_lookup(const Lexicon& lex, const TargetSpec& target);

// Counts polarity-High and polarity-Low tokens over all non-excluded tokens.
// AllTokens counts every non-excluded token in the denominator;
// LexiconCovered counts only tokens with a score for dim.
CotermScore coterm_score(std::span<const Document> docs, const Lexicon& lex, Dimension dim,
                         const std::unordered_set<std::string>& exclude,
                         DenominatorMode mode = DenominatorMode::AllTokens,
                         const Thresholds& th = kDefaultThresholds);

// Co-term score over the full corpus with an empty exclusion set.
Baseline baseline(std::span<const Document> corpus, const Lexicon& lex, Dimension dim,
                  DenominatorMode mode = DenominatorMode::AllTokens,
                  const Thresholds& th = kDefaultThresholds);

enum class QuadrantLabel { HighW_HighC = 0, HighW_LowC, LowW_HighC, LowW_LowC };
std::string_view quadrant_name(QuadrantLabel label);

// High on an axis means >= the baseline; points on a boundary are High.
QuadrantLabel quadrant(double w, double c, double baseline_w, double baseline_c);

struct CorpusOptions {
    bool exclude_target_terms = true;
    DenominatorMode denominator = DenominatorMode::AllTokens;
    std::size_t min_group_docs = 50;
    Thresholds thresholds{};
};

enum class GroupKey { Year = 0, Region = 1 };
std::string_view group_key_name(GroupKey key);
std::optional<GroupKey> parse_group_key(std::string_view name);

struct GroupScore {
    std::string group;
    CotermScore score;
    bool low_confidence = false;  // fewer than min_group_docs documents
};

struct StabilityReport {
    std::vector<GroupScore> groups;  // sorted by group key
    double spread = 0.0;             // max - min of group scores
};

// Per-year or per-region co-term scores for one target. Documents without the
// grouping field are skipped; if none remain, throws DataError.
StabilityReport stability_by_group(std::span<const Document> corpus, const Lexicon& lex,
                                   const TargetSpec& target, GroupKey key, Dimension dim,
                                   const CorpusOptions& opt = {});

struct IngroupOutgroupReport {
    std::array<std::string, 2> source_regions;
    std::array<std::string, 2> target_names;
    // cells[source][target]
    std::array<std::array<std::map<Dimension, CotermScore>, 2>, 2> cells;
    std::array<std::map<Dimension, Baseline>, 2> source_baselines;
    std::vector<Dimension> dimensions;
};

// 2x2 matrix of source region x mentioned target, plus per-source baselines
// over every document from that region. Empty cells come back degenerate.
IngroupOutgroupReport ingroup_outgroup(std::span<const Document> corpus, const Lexicon& lex,
                                       const std::pair<std::string, std::string>& source_regions,
                                       const std::pair<TargetSpec, TargetSpec>& targets,
                                       std::span<const Dimension> dims, const CorpusOptions& opt = {});

struct TargetGroupRow {
    std::string group;
    bool low_confidence = false;
    std::map<Dimension, CotermScore> scores;
};

struct TargetReport {
    std::string target;
    std::map<Dimension, std::optional<double>> direct;
    std::map<Dimension, CotermScore> coterm;
    std::optional<QuadrantLabel> quadrant;  // needs non-degenerate W and C plus baselines
    std::vector<TargetGroupRow> by_group;
};

struct ScoreOptions : CorpusOptions {
    std::optional<GroupKey> group_by;
};

TargetReport score_target(std::span<const Document> corpus, const Lexicon& lex,
                          const TargetSpec& target, std::span<const Dimension> dims,
                          const std::map<Dimension, Baseline>& baselines, const ScoreOptions& opt = {});

// JSONL with one object per line: id and text required, year and region
// optional. Errors carry the line number.
std::vector<Document> parse_corpus_jsonl(std::istream& in);

// JSON object mapping target name -> array of surface terms. Targets come
// back sorted by name; surface term order inside each target is preserved.
std::vector<TargetSpec> parse_targets_json(std::istream& in);

// Header target,dimension,score,n_docs,n_tokens,n_high,n_low.
void write_scores_csv(std::span<const CotermScore> rows, std::ostream& out);

struct GroupCsvRow {
    std::string target;
    std::string group;
    CotermScore score;
    bool low_confidence = false;
};
// Header target,group,dimension,score,n_docs,n_tokens,n_high,n_low,low_confidence.
void write_group_scores_csv(std::span<const GroupCsvRow> rows, std::ostream& out);

}  // namespace warmlex
