#include "warmlex/annotations.hpp"

#include <cmath>
#include <cstdlib>
#include <istream>
#include <utility>

#include "warmlex/errors.hpp"
#include "warmlex/io_util.hpp"

namespace warmlex {

std::string_view gold_kind_name(GoldKind kind) {
    switch (kind) {
        case GoldKind::NotGold: return "none";
        case GoldKind::PopupGold: return "popup";
        case GoldKind::NoPopupGold: return "nopopup";
    }
    return "unknown";
}

std::optional<GoldKind> parse_gold_kind(std::string_view name) {
    if (name == "none") return GoldKind::NotGold;
    if (name == "popup") return GoldKind::PopupGold;
    if (name == "nopopup") return GoldKind::NoPopupGold;
    return std::nullopt;
}

namespace {

void check_response_range(int response, const std::string& context) {
    if (response < -3 || response > 3)
        throw DomainError(context + ": response " + std::to_string(response) + " outside [-3, 3]");
}

}  // namespace

void AnnotationRecord::validate() const {
    if (annotator_id.empty()) throw DomainError("annotation record: empty annotator_id");
    if (term.empty()) throw DomainError("annotation record: empty term");
    if (dimension != Dimension::Trust && dimension != Dimension::Sociability)
        throw DomainError("annotation record '" + term + "': dimension must be trust or sociability");
    check_response_range(response, "annotation record '" + term + "'");
    if (gold_kind == GoldKind::NotGold) {
        if (gold_answer)
            throw DomainError("annotation record '" + term + "': gold_answer on a non-gold record");
    } else {
        if (!gold_answer)
            throw DomainError("annotation record '" + term + "': gold record without gold_answer");
        check_response_range(*gold_answer, "annotation record '" + term + "' gold answer");
    }
}

std::vector<std::string> select_terms(std::span<const TermCandidate> candidates, double lo, double hi) {
    if (!(lo < hi)) throw DomainError("select_terms: exclusion band requires lo < hi");
    std::vector<std::string> out;
    for (const TermCandidate& cand : candidates) {
        if (!std::isfinite(cand.valence) || cand.valence < -1.0 || cand.valence > 1.0)
            throw DomainError("select_terms: valence for '" + cand.term + "' outside [-1, 1]");
        if (cand.valence <= lo || cand.valence >= hi) out.push_back(cand.term);
    }
    return out;
}

bool gold_correct(int response, int gold_answer, int tolerance) {
    if (tolerance < 0) throw DomainError("gold_correct: negative tolerance");
    return std::abs(response - gold_answer) <= tolerance;
}

std::map<std::string, AnnotatorStats> compute_annotator_stats(
    std::span<const AnnotationRecord> records, int tolerance, double min_accuracy) {
    std::map<std::string, AnnotatorStats> stats;
    for (const AnnotationRecord& rec : records) {
        rec.validate();
        auto& st = stats[rec.annotator_id];
        st.annotator_id = rec.annotator_id;
        if (rec.gold_kind == GoldKind::NotGold) continue;
        ++st.gold_seen;
        if (gold_correct(rec.response, *rec.gold_answer, tolerance)) ++st.gold_correct;
    }
    for (auto& [id, st] : stats) {
        if (st.gold_seen == 0) {
            st.retained = true;
            continue;
        }
        st.accuracy = static_cast<double>(st.gold_correct) / static_cast<double>(st.gold_seen);
        st.retained = *st.accuracy >= min_accuracy;
    }
    return stats;
}

std::vector<AnnotationRecord> filter_annotations(std::span<const AnnotationRecord> records,
                                                 const std::map<std::string, AnnotatorStats>& stats,
                                                 bool include_gold) {
    std::vector<AnnotationRecord> out;
    out.reserve(records.size());
    for (const AnnotationRecord& rec : records) {
        const auto it = stats.find(rec.annotator_id);
        if (it == stats.end())
            throw DomainError("filter_annotations: no stats for annotator '" + rec.annotator_id + "'");
        if (!it->second.retained) continue;
        if (!include_gold && rec.gold_kind != GoldKind::NotGold) continue;
        out.push_back(rec);
    }
    return out;
}

double aggregate_term(std::span<const int> responses) {
    if (responses.empty()) throw DomainError("aggregate_term: empty response list");
    long long sum = 0;
    for (const int r : responses) {
        check_response_range(r, "aggregate_term");
        sum += r;
    }
    return static_cast<double>(sum) / static_cast<double>(responses.size());
}

DimensionLexiconResult build_dimension_lexicon(std::span<const AnnotationRecord> records,
                                               Dimension dim, int tolerance, double min_accuracy,
                                               bool include_gold) {
    if (dim != Dimension::Trust && dim != Dimension::Sociability)
        throw DomainError("build_dimension_lexicon: dimension must be trust or sociability");
    for (const AnnotationRecord& rec : records) {
        if (rec.dimension != dim)
            throw DomainError("build_dimension_lexicon: record for '" + rec.term +
                              "' carries a different dimension than requested");
    }

    auto stats = compute_annotator_stats(records, tolerance, min_accuracy);
    const std::vector<AnnotationRecord> surviving = filter_annotations(records, stats, include_gold);
    if (surviving.empty())
        throw DataError("build_dimension_lexicon: no surviving annotations after quality control");

    const auto by_term = responses_by_term(surviving);

    std::vector<LexiconEntry> entries;
    entries.reserve(by_term.size());
    for (const auto& [term, responses] : by_term) {
        LexiconEntry entry;
        entry.term = term;
        const double mean = aggregate_term(responses);
        if (dim == Dimension::Trust)
            entry.trust = mean;
        else
            entry.sociability = mean;
        entries.push_back(std::move(entry));
    }

    DimensionLexiconResult result{
        Lexicon(std::move(entries),
                std::string(dimension_name(dim)) + " lexicon aggregated from crowd annotations"),
        AggregationStats{dim, by_term.size(), surviving.size(),
                         static_cast<double>(surviving.size()) / static_cast<double>(by_term.size())},
        std::move(stats)};
    return result;
}

std::vector<AnnotationRecord> parse_annotations_csv(std::istream& in) {
    static constexpr std::string_view kHeader =
        "annotator_id,term,dimension,response,gold_kind,gold_answer";

    std::vector<AnnotationRecord> records;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        if (!have_header) {
            if (line != kHeader)
                throw ParseError("annotation header must be '" + std::string(kHeader) + "'", lineno);
            have_header = true;
            continue;
        }

        const std::vector<std::string_view> fields = split_fields(line, ',');
        if (fields.size() != 6)
            throw ParseError("expected 6 fields, got " + std::to_string(fields.size()), lineno);

        AnnotationRecord rec;
        rec.annotator_id = std::string(fields[0]);
        rec.term = ascii_lower(fields[1]);

        const auto dim = parse_dimension(fields[2]);
        if (!dim || (*dim != Dimension::Trust && *dim != Dimension::Sociability))
            throw ParseError("dimension must be trust or sociability, got '" + std::string(fields[2]) + "'",
                             lineno);
        rec.dimension = *dim;

        const auto response = try_parse_int(fields[3]);
        if (!response) throw ParseError("invalid response '" + std::string(fields[3]) + "'", lineno);
        rec.response = static_cast<int>(*response);

        const auto kind = parse_gold_kind(fields[4]);
        if (!kind)
            throw ParseError("gold_kind must be none, popup or nopopup, got '" + std::string(fields[4]) + "'",
                             lineno);
        rec.gold_kind = *kind;

        if (!fields[5].empty()) {
            const auto gold = try_parse_int(fields[5]);
            if (!gold) throw ParseError("invalid gold_answer '" + std::string(fields[5]) + "'", lineno);
            rec.gold_answer = static_cast<int>(*gold);
        }

        try {
            rec.validate();
        } catch (const DomainError& e) {
            throw ParseError(e.what(), lineno);
        }
        records.push_back(std::move(rec));
    }

    if (!have_header) throw DataError("annotation file has no header row");
    return records;
}

std::map<std::string, std::vector<int>> responses_by_term(std::span<const AnnotationRecord> records) {
    std::map<std::string, std::vector<int>> by_term;
    for (const AnnotationRecord& rec : records) by_term[rec.term].push_back(rec.response);
    return by_term;
}

}  // namespace warmlex
