#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "warmlex/aoa.hpp"
#include "warmlex/lexicon.hpp"
#include "warmlex/reports.hpp"

namespace warmlex {

// Warmth/competence plane with a fixed [-1, 1] range on both axes. Quadrant
// backgrounds split at the baselines, dashed baseline rules, one labeled
// circle per point. Same input, same bytes.
std::string render_wc_scatter_svg(const WcScatterData& data, const OutputMetadata& meta);

// One lexicon entry in the trust/sociability plane.
struct TsPoint {
    double trust;
    double sociability;
    Category7 warmth_category;
};

std::vector<TsPoint> ts_points_from_lexicon(const Lexicon& lex,
                                            const Thresholds& th = kDefaultThresholds);

// Trust/sociability plane, fixed [-3, 3] range, unlabeled points colored by
// warmth class, with the t == s diagonal as a reference line.
std::string render_ts_scatter_svg(std::span<const TsPoint> points, const OutputMetadata& meta);

// Header label,warmth,competence.
void write_wc_points_csv(const WcScatterData& data, std::ostream& out);

// Header term,trust,sociability,warmth,warmth_class. Rows are the entries
// carrying both trust and sociability; warmth falls back to the combined
// value when the entry has none stored.
void write_ts_points_csv(const Lexicon& lex, std::ostream& out,
                         const Thresholds& th = kDefaultThresholds);

// Stacked band geometry for an age profile: low on the bottom, neutral in
// the middle, high on top, y in percent of the bucket.
struct StreamBandRow {
    int age_bucket;
    std::string band;  // "low", "neutral", "high"
    double y0;
    double y1;
};

std::vector<StreamBandRow> stream_chart_rows(const AcquisitionProfile& profile);

// Header dimension,age,band,y0,y1.
void write_stream_chart_csv(const AcquisitionProfile& profile, std::ostream& out);

}  // namespace warmlex
