#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "warmlex/lexicon.hpp"

namespace warmlex {

struct AoaRecord {
    std::string term;
    double age = 0.0;  // years, > 0

    void validate() const;
};

struct JoinedTerm {
    std::string term;
    double age;
    Polarity3 polarity;
};

struct AoaJoin {
    std::vector<JoinedTerm> rows;
    std::size_t n_aoa_records = 0;
    std::size_t n_missing_term = 0;   // in the age table but not the lexicon
    std::size_t n_missing_score = 0;  // in the lexicon but without this dimension
};

// Inner join on term; each joined row carries the tri-level polarity of the
// lexicon score for dim. Empty join -> DataError.
AoaJoin join_aoa(const Lexicon& lex, std::span<const AoaRecord> aoa, Dimension dim,
                 const Thresholds& th = kDefaultThresholds);

inline constexpr int kDefaultAoaAgeLo = 3;
inline constexpr int kDefaultAoaAgeHi = 17;

struct ProfileRow {
    int age_bucket = 0;  // bucket b covers ages [b, b+1)
    double pct_high = 0.0;
    double pct_low = 0.0;
    double pct_neutral = 0.0;
    std::size_t n_words = 0;
    bool degenerate = false;  // empty bucket
};

struct AcquisitionProfile {
    Dimension dimension = Dimension::Warmth;
    bool cumulative = false;
    std::vector<ProfileRow> rows;  // contiguous buckets age_lo..age_hi
};

// Integer-year buckets; ages below age_lo land in the first bucket and ages
// at or above age_hi + 1 in the last. Cumulative mode counts every term
// acquired by the end of the bucket instead.
AcquisitionProfile acquisition_profile(std::span<const JoinedTerm> joined, Dimension dim,
                                       int age_lo = kDefaultAoaAgeLo, int age_hi = kDefaultAoaAgeHi,
                                       bool cumulative = false);

// (bucket, pct_high + pct_low) pairs.
std::vector<std::pair<int, double>> polar_fraction(const AcquisitionProfile& profile);

// CSV with header term,age. '#' lines and blank lines are skipped.
std::vector<AoaRecord> parse_aoa_csv(std::istream& in);

// Header dimension,age,pct_high,pct_low,pct_neutral,n_words.
void write_profile_csv(const AcquisitionProfile& profile, std::ostream& out);

// Reads rows written by write_profile_csv, grouped by dimension in file order.
std::vector<AcquisitionProfile> read_profile_csv(std::istream& in);

}  // namespace warmlex
