#include "warmlex/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <utility>

#include <json.hpp>

#include "warmlex/errors.hpp"
#include "warmlex/io_util.hpp"

namespace warmlex {

namespace {

bool starts_with(std::string_view text, std::string_view prefix) {
    return text.size() >= prefix.size() && text.substr(0, prefix.size()) == prefix;
}

// One whitespace-delimited raw token -> zero or one cleaned token.
void clean_token(std::string_view raw, std::vector<std::string>& out) {
    std::string tok = ascii_lower(raw);
    if (tok.front() == '@') return;
    if (starts_with(tok, "http://") || starts_with(tok, "https://") || starts_with(tok, "www."))
        return;
    std::size_t begin = 0;
    std::size_t end = tok.size();
    while (begin < end && is_ascii_punct(tok[begin])) ++begin;
    while (end > begin && is_ascii_punct(tok[end - 1])) --end;
    if (begin == end) return;
    out.push_back(tok.substr(begin, end - begin));
}

}  // namespace

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    while (i < n) {
        while (i < n && is_ascii_space(text[i])) ++i;
        std::size_t j = i;
        while (j < n && !is_ascii_space(text[j])) ++j;
        if (j > i) clean_token(text.substr(i, j - i), out);
        i = j;
    }
    return out;
}

Document::Document(std::string id, std::string text, std::optional<int> year,
                   std::optional<std::string> region)
    : id_(std::move(id)),
      text_(std::move(text)),
      tokens_(tokenize(text_)),
      year_(year),
      region_(std::move(region)) {}

void TargetSpec::validate() const {
    if (name.empty()) throw DomainError("target spec: empty name");
    if (surface_terms.empty()) throw DomainError("target '" + name + "': no surface terms");
    for (const std::string& term : surface_terms) {
        if (term.empty()) throw DomainError("target '" + name + "': empty surface term");
        for (const char c : term) {
            if (is_ascii_space(c))
                throw DomainError("target '" + name + "': surface term '" + term +
                                  "' must be a single token");
            if (c >= 'A' && c <= 'Z')
                throw DomainError("target '" + name + "': surface term '" + term +
                                  "' must be lowercase");
        }
    }
}

std::string_view denominator_mode_name(DenominatorMode mode) {
    return mode == DenominatorMode::AllTokens ? "all-tokens" : "lexicon-covered";
}

std::optional<DenominatorMode> parse_denominator_mode(std::string_view name) {
    if (name == "all-tokens") return DenominatorMode::AllTokens;
    if (name == "lexicon-covered") return DenominatorMode::LexiconCovered;
    return std::nullopt;
}

std::vector<Document> filter_documents(std::span<const Document> corpus, const TargetSpec& target) {
    target.validate();
    std::unordered_set<std::string> wanted(target.surface_terms.begin(), target.surface_terms.end());
    std::vector<Document> out;
    for (const Document& doc : corpus) {
        for (const std::string& tok : doc.tokens()) {
            if (wanted.contains(tok)) {
                out.push_back(doc);
                break;
            }
        }
    }
    return out;
}

std::map<Dimension, std::optional<double>> direct_lookup(const Lexicon& lex, const TargetSpec& target) {
    target.validate();
    std::map<Dimension, std::optional<double>> out;
    for (const Dimension dim : kAllDimensions) {
        std::optional<double> found;
        for (const std::string& term : target.surface_terms) {
            if (const LexiconEntry* entry = lex.find(term)) {
                if (const auto score = entry->score_for(dim)) {
                    found = score;
                    break;
                }
            }
        }
        out[dim] = found;
    }
    return out;
}

CotermScore coterm_score(std::span<const Document> docs, const Lexicon& lex, Dimension dim,
                         const std::unordered_set<std::string>& exclude, DenominatorMode mode,
                         const Thresholds& th) {
    CotermScore cs;
    cs.dimension = dim;
    cs.n_docs = docs.size();
    for (const Document& doc : docs) {
        for (const std::string& tok : doc.tokens()) {
            if (exclude.contains(tok)) continue;
            std::optional<double> score;
            if (const LexiconEntry* entry = lex.find(tok)) score = entry->score_for(dim);
            if (mode == DenominatorMode::AllTokens || score) ++cs.n_tokens;
            if (!score) continue;
            switch (polarity_class(*score, dim, th)) {
                case Polarity3::High: ++cs.n_high; break;
                case Polarity3::Low: ++cs.n_low; break;
                case Polarity3::Neutral: break;
            }
        }
    }
    if (cs.n_tokens == 0) {
        cs.degenerate = true;
        cs.score = 0.0;
    } else {
        cs.score = (static_cast<double>(cs.n_high) - static_cast<double>(cs.n_low)) /
                   static_cast<double>(cs.n_tokens);
    }
    return cs;
}

Baseline baseline(std::span<const Document> corpus, const Lexicon& lex, Dimension dim,
                  DenominatorMode mode, const Thresholds& th) {
    const CotermScore cs = coterm_score(corpus, lex, dim, {}, mode, th);
    return Baseline{dim, cs.score, cs.n_docs, cs.degenerate};
}

std::string_view quadrant_name(QuadrantLabel label) {
    switch (label) {
        case QuadrantLabel::HighW_HighC: return "high_w_high_c";
        case QuadrantLabel::HighW_LowC: return "high_w_low_c";
        case QuadrantLabel::LowW_HighC: return "low_w_high_c";
        case QuadrantLabel::LowW_LowC: return "low_w_low_c";
    }
    return "unknown";
}

QuadrantLabel quadrant(double w, double c, double baseline_w, double baseline_c) {
    for (const double v : {w, c, baseline_w, baseline_c}) {
        if (!std::isfinite(v)) throw DomainError("quadrant: non-finite input");
    }
    const bool high_w = w >= baseline_w;
    const bool high_c = c >= baseline_c;
    if (high_w) return high_c ? QuadrantLabel::HighW_HighC : QuadrantLabel::HighW_LowC;
    return high_c ? QuadrantLabel::LowW_HighC : QuadrantLabel::LowW_LowC;
}

std::string_view group_key_name(GroupKey key) {
    return key == GroupKey::Year ? "year" : "region";
}

std::optional<GroupKey> parse_group_key(std::string_view name) {
    if (name == "year") return GroupKey::Year;
    if (name == "region") return GroupKey::Region;
    return std::nullopt;
}

namespace {

std::unordered_set<std::string> exclusion_set(const TargetSpec& target, const CorpusOptions& opt) {
    if (!opt.exclude_target_terms) return {};
    return {target.surface_terms.begin(), target.surface_terms.end()};
}

}  // namespace

StabilityReport stability_by_group(std::span<const Document> corpus, const Lexicon& lex,
                                   const TargetSpec& target, GroupKey key, Dimension dim,
                                   const CorpusOptions& opt) {
    const std::vector<Document> matched = filter_documents(corpus, target);

    // Year keys sort numerically, region keys lexicographically.
    std::map<long long, std::vector<Document>> by_year;
    std::map<std::string, std::vector<Document>> by_region;
    for (const Document& doc : matched) {
        if (key == GroupKey::Year) {
            if (doc.year()) by_year[*doc.year()].push_back(doc);
        } else {
            if (doc.region()) by_region[*doc.region()].push_back(doc);
        }
    }

    std::vector<std::pair<std::string, std::vector<Document>>> groups;
    for (auto& [year, docs] : by_year) groups.emplace_back(std::to_string(year), std::move(docs));
    for (auto& [region, docs] : by_region) groups.emplace_back(region, std::move(docs));

    if (groups.empty())
        throw DataError("stability_by_group: no matching document carries a " +
                        std::string(group_key_name(key)));

    const auto exclude = exclusion_set(target, opt);
    StabilityReport report;
    double lo = 0.0;
    double hi = 0.0;
    bool first = true;
    for (auto& [label, docs] : groups) {
        CotermScore cs = coterm_score(docs, lex, dim, exclude, opt.denominator, opt.thresholds);
        cs.target = target.name;
        const bool low_confidence = docs.size() < opt.min_group_docs;
        if (first) {
            lo = hi = cs.score;
            first = false;
        } else {
            lo = std::min(lo, cs.score);
            hi = std::max(hi, cs.score);
        }
        report.groups.push_back(GroupScore{label, std::move(cs), low_confidence});
    }
    report.spread = hi - lo;
    return report;
}

IngroupOutgroupReport ingroup_outgroup(std::span<const Document> corpus, const Lexicon& lex,
                                       const std::pair<std::string, std::string>& source_regions,
                                       const std::pair<TargetSpec, TargetSpec>& targets,
                                       std::span<const Dimension> dims, const CorpusOptions& opt) {
    if (source_regions.first == source_regions.second)
        throw DomainError("ingroup_outgroup: source regions must differ");
    targets.first.validate();
    targets.second.validate();
    if (dims.empty()) throw DomainError("ingroup_outgroup: no dimensions requested");

    IngroupOutgroupReport report;
    report.source_regions = {source_regions.first, source_regions.second};
    report.target_names = {targets.first.name, targets.second.name};
    report.dimensions.assign(dims.begin(), dims.end());

    const std::array<const TargetSpec*, 2> target_ptr = {&targets.first, &targets.second};
    for (std::size_t si = 0; si < 2; ++si) {
        std::vector<Document> source_docs;
        for (const Document& doc : corpus) {
            if (doc.region() && *doc.region() == report.source_regions[si])
                source_docs.push_back(doc);
        }
        for (const Dimension dim : dims) {
            report.source_baselines[si][dim] =
                baseline(source_docs, lex, dim, opt.denominator, opt.thresholds);
        }
        for (std::size_t tj = 0; tj < 2; ++tj) {
            const std::vector<Document> cell_docs = filter_documents(source_docs, *target_ptr[tj]);
            const auto exclude = exclusion_set(*target_ptr[tj], opt);
            for (const Dimension dim : dims) {
                CotermScore cs =
                    coterm_score(cell_docs, lex, dim, exclude, opt.denominator, opt.thresholds);
                cs.target = target_ptr[tj]->name;
                report.cells[si][tj][dim] = std::move(cs);
            }
        }
    }
    return report;
}

TargetReport score_target(std::span<const Document> corpus, const Lexicon& lex,
                          const TargetSpec& target, std::span<const Dimension> dims,
                          const std::map<Dimension, Baseline>& baselines, const ScoreOptions& opt) {
    target.validate();
    TargetReport report;
    report.target = target.name;
    report.direct = direct_lookup(lex, target);

    const std::vector<Document> matched = filter_documents(corpus, target);
    const auto exclude = exclusion_set(target, opt);
    for (const Dimension dim : dims) {
        CotermScore cs = coterm_score(matched, lex, dim, exclude, opt.denominator, opt.thresholds);
        cs.target = target.name;
        report.coterm[dim] = std::move(cs);
    }

    const auto cw = report.coterm.find(Dimension::Warmth);
    const auto cc = report.coterm.find(Dimension::Competence);
    const auto bw = baselines.find(Dimension::Warmth);
    const auto bc = baselines.find(Dimension::Competence);
    if (cw != report.coterm.end() && cc != report.coterm.end() && bw != baselines.end() &&
        bc != baselines.end() && !cw->second.degenerate && !cc->second.degenerate &&
        !bw->second.degenerate && !bc->second.degenerate) {
        report.quadrant =
            quadrant(cw->second.score, cc->second.score, bw->second.score, bc->second.score);
    }

    if (opt.group_by && !matched.empty()) {
        std::map<std::string, TargetGroupRow> rows;
        for (const Dimension dim : dims) {
            const StabilityReport stability =
                stability_by_group(corpus, lex, target, *opt.group_by, dim, opt);
            for (const GroupScore& gs : stability.groups) {
                TargetGroupRow& row = rows[gs.group];
                row.group = gs.group;
                row.low_confidence = gs.low_confidence;
                row.scores[dim] = gs.score;
            }
        }
        for (auto& [label, row] : rows) report.by_group.push_back(std::move(row));
    }

    return report;
}

std::vector<Document> parse_corpus_jsonl(std::istream& in) {
    std::vector<Document> docs;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        const nlohmann::json j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw ParseError("invalid JSON", lineno);
        if (!j.is_object()) throw ParseError("expected a JSON object", lineno);
        if (!j.contains("id") || !j["id"].is_string())
            throw ParseError("missing or non-string 'id'", lineno);
        if (!j.contains("text") || !j["text"].is_string())
            throw ParseError("missing or non-string 'text'", lineno);

        std::optional<int> year;
        if (j.contains("year") && !j["year"].is_null()) {
            if (!j["year"].is_number_integer()) throw ParseError("'year' must be an integer", lineno);
            year = j["year"].get<int>();
        }
        std::optional<std::string> region;
        if (j.contains("region") && !j["region"].is_null()) {
            if (!j["region"].is_string()) throw ParseError("'region' must be a string", lineno);
            region = ascii_lower(j["region"].get<std::string>());
        }
        docs.emplace_back(j["id"].get<std::string>(), j["text"].get<std::string>(), year,
                          std::move(region));
    }
    return docs;
}

std::vector<TargetSpec> parse_targets_json(std::istream& in) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("targets file: ") + e.what());
    }
    if (!j.is_object()) throw DataError("targets file: expected an object of name -> term list");

    std::vector<TargetSpec> targets;
    for (const auto& [name, value] : j.items()) {
        if (!value.is_array()) throw DataError("target '" + name + "': expected an array of terms");
        TargetSpec spec;
        spec.name = name;
        for (const auto& item : value) {
            if (!item.is_string()) throw DataError("target '" + name + "': terms must be strings");
            std::string term = ascii_lower(item.get<std::string>());
            if (std::find(spec.surface_terms.begin(), spec.surface_terms.end(), term) ==
                spec.surface_terms.end())
                spec.surface_terms.push_back(std::move(term));
        }
        spec.validate();
        targets.push_back(std::move(spec));
    }
    std::sort(targets.begin(), targets.end(),
              [](const TargetSpec& a, const TargetSpec& b) { return a.name < b.name; });
    return targets;
}

void write_scores_csv(std::span<const CotermScore> rows, std::ostream& out) {
    out << "target,dimension,score,n_docs,n_tokens,n_high,n_low\n";
    for (const CotermScore& cs : rows) {
        out << cs.target << ',' << dimension_name(cs.dimension) << ',' << format_double(cs.score)
            << ',' << cs.n_docs << ',' << cs.n_tokens << ',' << cs.n_high << ',' << cs.n_low << '\n';
    }
}

void write_group_scores_csv(std::span<const GroupCsvRow> rows, std::ostream& out) {
    out << "target,group,dimension,score,n_docs,n_tokens,n_high,n_low,low_confidence\n";
    for (const GroupCsvRow& row : rows) {
        out << row.target << ',' << row.group << ',' << dimension_name(row.score.dimension) << ','
            << format_double(row.score.score) << ',' << row.score.n_docs << ',' << row.score.n_tokens
            << ',' << row.score.n_high << ',' << row.score.n_low << ',' << (row.low_confidence ? 1 : 0)
            << '\n';
    }
}

}  // namespace warmlex
