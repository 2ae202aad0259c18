#pragma once

#include <array>
#include <cstddef>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace warmlex {

enum class Dimension { Warmth = 0, Competence = 1, Trust = 2, Sociability = 3 };

inline constexpr std::array<Dimension, 4> kAllDimensions = {
    Dimension::Warmth, Dimension::Competence, Dimension::Trust, Dimension::Sociability};

std::string_view dimension_name(Dimension dim);
std::optional<Dimension> parse_dimension(std::string_view name);

// Largest |score| a dimension admits: 3 on the 7-point scales, 1 for competence.
double score_limit(Dimension dim);

// Seven-level class, ordered most negative to most positive so that the
// mapping from scores is monotone.
enum class Category7 {
    HighNeg = 0,
    ModerateNeg,
    SlightNeg,
    Neither,
    SlightPos,
    ModeratePos,
    HighPos,
};
std::string_view category_name(Category7 cat);
inline constexpr std::size_t kCategory7Count = 7;

enum class Polarity3 { Low = 0, Neutral = 1, High = 2 };
std::string_view polarity_name(Polarity3 pol);

enum class WarmthSource { FromTrust = 0, FromSociability = 1, Equal = 2 };
std::string_view warmth_source_name(WarmthSource source);

// Every cutoff used anywhere in the pipeline lives here. bin_moderate doubles
// as the high/low polarity cutoff for warmth/trust/sociability; competence has
// its own cutoff and is never assigned a Category7.
struct Thresholds {
    double bin_slight = 0.5;
    double bin_moderate = 1.5;
    double bin_high = 2.5;
    double competence_polar = 0.33;

    void validate() const;  // 0 < slight < moderate < high; competence_polar in (0, 1)
};

inline constexpr Thresholds kDefaultThresholds{};

// Maps a mean score on [-3, 3] to its seven-level class. Positive boundaries
// are inclusive upward (0.5 -> SlightPos, 2.5 -> HighPos); negative boundaries
// mirror them (-0.5 -> SlightNeg, -2.5 -> HighNeg). Throws DomainError for
// non-finite or out-of-range scores.
Category7 bin_score(double score, const Thresholds& th = kDefaultThresholds);

// Tri-level polarity. Warmth/trust/sociability: Low <= -cut, High >= +cut with
// cut = bin_moderate. Competence: cutoff +-competence_polar, boundary values
// assigned to the polar class, domain [-1, 1].
Polarity3 polarity_class(double score, Dimension dim, const Thresholds& th = kDefaultThresholds);

struct CombinedWarmth {
    double warmth;
    WarmthSource source;
};

// Warmth = the input with the larger magnitude, taken verbatim. Equal values
// report Equal; an opposite-sign magnitude tie resolves to trust. Throws
// DomainError when both inputs are absent or either is out of range.
CombinedWarmth combine_warmth(std::optional<double> trust, std::optional<double> sociability);

struct LexiconEntry {
    std::string term;  // lowercase, no tabs or newlines
    std::optional<double> sociability;
    std::optional<double> trust;
    std::optional<double> warmth;
    std::optional<double> competence;

    std::optional<double> score_for(Dimension dim) const;

    // Categorical labels are derived from the stored scores, so they are
    // present exactly when the score is and always agree with bin_score.
    std::optional<Category7> category_s(const Thresholds& th = kDefaultThresholds) const;
    std::optional<Category7> category_t(const Thresholds& th = kDefaultThresholds) const;
    std::optional<Category7> category_w(const Thresholds& th = kDefaultThresholds) const;

    // Which input the warmth score was taken from. Absent when there is no
    // warmth score, or when the stored warmth cannot have been produced from
    // the stored trust/sociability by combine_warmth.
    std::optional<WarmthSource> warmth_source() const;

    void validate() const;

    bool operator==(const LexiconEntry&) const = default;
};

// Immutable term -> entry map. Iteration order is lexicographic by term.
class Lexicon {
public:
    using EntryMap = std::map<std::string, LexiconEntry, std::less<>>;

    Lexicon() = default;
    Lexicon(std::vector<LexiconEntry> entries, std::string provenance);

    const LexiconEntry* find(std::string_view term) const;
    std::size_t size() const { return entries_.size(); }
    bool empty() const { return entries_.empty(); }
    const EntryMap& entries() const { return entries_; }
    const std::string& provenance() const { return provenance_; }

private:
    EntryMap entries_;
    std::string provenance_;
};

// Strict union of the two single-dimension inputs. Every output entry carries
// a warmth score; competence is copied for terms present in competence_lex.
Lexicon build_warmth_lexicon(const Lexicon& trust_lex, const Lexicon& sociability_lex,
                             const Lexicon* competence_lex = nullptr);

// Tab-separated lexicon files. The header names the columns: "term" plus any
// of sociability/trust/warmth/competence, in any order. Empty field = absent
// score. Lines starting with '#' and blank lines are skipped.
Lexicon parse_lexicon_tsv(std::istream& in, std::string provenance = "tsv");

// Writes term, sociability, trust, warmth (competence appended when any entry
// has one), terms in lexicographic order, LF line endings, full round-trip
// numeric precision. parse_lexicon_tsv(write_lexicon_tsv(L)) == L.
void write_lexicon_tsv(const Lexicon& lex, std::ostream& out);

// Per-class counts for the score distributions and the warmth-source mix.
struct ClassDistribution {
    struct DimCounts {
        std::array<std::size_t, kCategory7Count> by_category{};
        std::size_t n_scored = 0;
    };
    DimCounts sociability;
    DimCounts trust;
    DimCounts warmth;
    // Indexed by WarmthSource.
    std::array<std::size_t, 3> warmth_source_counts{};
    // [category][source], over entries with a warmth score and a known source.
    std::array<std::array<std::size_t, 3>, kCategory7Count> warmth_source_by_category{};
    // Entries with both inputs and |trust - sociability| < 0.5.
    std::size_t close_pairs = 0;
    std::size_t n_entries = 0;
};

ClassDistribution class_distribution(const Lexicon& lex, const Thresholds& th = kDefaultThresholds);

}  // namespace warmlex
