#include "warmlex/lexicon.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <utility>

#include "warmlex/errors.hpp"
#include "warmlex/io_util.hpp"

namespace warmlex {

namespace {

constexpr double kWtsLimit = 3.0;
constexpr double kCompetenceLimit = 1.0;

void check_score_range(double score, Dimension dim, const std::string& context) {
    if (!std::isfinite(score)) throw DomainError(context + ": score is not finite");
    const double limit = score_limit(dim);
    if (score < -limit || score > limit) {
        throw DomainError(context + ": score " + format_double(score) + " outside [-" +
                          format_double(limit) + ", " + format_double(limit) + "] for " +
                          std::string(dimension_name(dim)));
    }
}

}  // namespace

std::string_view dimension_name(Dimension dim) {
    switch (dim) {
        case Dimension::Warmth: return "warmth";
        case Dimension::Competence: return "competence";
        case Dimension::Trust: return "trust";
        case Dimension::Sociability: return "sociability";
    }
    return "unknown";
}

std::optional<Dimension> parse_dimension(std::string_view name) {
    for (const Dimension dim : kAllDimensions) {
        if (name == dimension_name(dim)) return dim;
    }
    return std::nullopt;
}

double score_limit(Dimension dim) {
    return dim == Dimension::Competence ? kCompetenceLimit : kWtsLimit;
}

std::string_view category_name(Category7 cat) {
    switch (cat) {
        case Category7::HighNeg: return "high_neg";
        case Category7::ModerateNeg: return "moderate_neg";
        case Category7::SlightNeg: return "slight_neg";
        case Category7::Neither: return "neither";
        case Category7::SlightPos: return "slight_pos";
        case Category7::ModeratePos: return "moderate_pos";
        case Category7::HighPos: return "high_pos";
    }
    return "unknown";
}

std::string_view polarity_name(Polarity3 pol) {
    switch (pol) {
        case Polarity3::Low: return "low";
        case Polarity3::Neutral: return "neutral";
        case Polarity3::High: return "high";
    }
    return "unknown";
}

std::string_view warmth_source_name(WarmthSource source) {
    switch (source) {
        case WarmthSource::FromTrust: return "from_trust";
        case WarmthSource::FromSociability: return "from_sociability";
        case WarmthSource::Equal: return "equal";
    }
    return "unknown";
}

void Thresholds::validate() const {
    if (!(bin_slight > 0.0 && bin_slight < bin_moderate && bin_moderate < bin_high))
        throw DomainError("thresholds: need 0 < bin_slight < bin_moderate < bin_high");
    if (!(bin_high <= kWtsLimit))
        throw DomainError("thresholds: bin_high exceeds the score scale");
    if (!(competence_polar > 0.0 && competence_polar < kCompetenceLimit))
        throw DomainError("thresholds: competence_polar must lie in (0, 1)");
}

Category7 bin_score(double score, const Thresholds& th) {
    check_score_range(score, Dimension::Warmth, "bin_score");
    if (score >= th.bin_high) return Category7::HighPos;
    if (score >= th.bin_moderate) return Category7::ModeratePos;
    if (score >= th.bin_slight) return Category7::SlightPos;
    if (score > -th.bin_slight) return Category7::Neither;
    if (score > -th.bin_moderate) return Category7::SlightNeg;
    if (score > -th.bin_high) return Category7::ModerateNeg;
    return Category7::HighNeg;
}

Polarity3 polarity_class(double score, Dimension dim, const Thresholds& th) {
    check_score_range(score, dim, "polarity_class");
    const double cut = dim == Dimension::Competence ? th.competence_polar : th.bin_moderate;
    if (score <= -cut) return Polarity3::Low;
    if (score >= cut) return Polarity3::High;
    return Polarity3::Neutral;
}

CombinedWarmth combine_warmth(std::optional<double> trust, std::optional<double> sociability) {
    if (!trust && !sociability)
        throw DomainError("combine_warmth: both trust and sociability are absent");
    if (trust) check_score_range(*trust, Dimension::Trust, "combine_warmth");
    if (sociability) check_score_range(*sociability, Dimension::Sociability, "combine_warmth");
    if (trust && !sociability) return {*trust, WarmthSource::FromTrust};
    if (!trust && sociability) return {*sociability, WarmthSource::FromSociability};
    const double t = *trust;
    const double s = *sociability;
    if (t == s) return {t, WarmthSource::Equal};
    // Larger magnitude wins; an opposite-sign magnitude tie resolves to trust.
    if (std::fabs(t) >= std::fabs(s)) return {t, WarmthSource::FromTrust};
    return {s, WarmthSource::FromSociability};
}

std::optional<double> LexiconEntry::score_for(Dimension dim) const {
    switch (dim) {
        case Dimension::Warmth: return warmth;
        case Dimension::Competence: return competence;
        case Dimension::Trust: return trust;
        case Dimension::Sociability: return sociability;
    }
    return std::nullopt;
}

std::optional<Category7> LexiconEntry::category_s(const Thresholds& th) const {
    if (!sociability) return std::nullopt;
    return bin_score(*sociability, th);
}

std::optional<Category7> LexiconEntry::category_t(const Thresholds& th) const {
    if (!trust) return std::nullopt;
    return bin_score(*trust, th);
}

std::optional<Category7> LexiconEntry::category_w(const Thresholds& th) const {
    if (!warmth) return std::nullopt;
    return bin_score(*warmth, th);
}

std::optional<WarmthSource> LexiconEntry::warmth_source() const {
    if (!warmth || (!trust && !sociability)) return std::nullopt;
    const CombinedWarmth combined = combine_warmth(trust, sociability);
    if (combined.warmth != *warmth) return std::nullopt;
    return combined.source;
}

void LexiconEntry::validate() const {
    if (term.empty()) throw DomainError("lexicon entry: empty term");
    for (const char c : term) {
        if (c == '\t' || c == '\n' || c == '\r')
            throw DomainError("lexicon entry '" + term + "': term contains tab or newline");
        if (c >= 'A' && c <= 'Z')
            throw DomainError("lexicon entry '" + term + "': term must be lowercase");
    }
    if (sociability) check_score_range(*sociability, Dimension::Sociability, "term '" + term + "'");
    if (trust) check_score_range(*trust, Dimension::Trust, "term '" + term + "'");
    if (warmth) check_score_range(*warmth, Dimension::Warmth, "term '" + term + "'");
    if (competence) check_score_range(*competence, Dimension::Competence, "term '" + term + "'");
}

Lexicon::Lexicon(std::vector<LexiconEntry> entries, std::string provenance)
    : provenance_(std::move(provenance)) {
    for (LexiconEntry& entry : entries) {
        entry.validate();
        std::string key = entry.term;
        const auto [it, inserted] = entries_.emplace(std::move(key), std::move(entry));
        if (!inserted) throw DataError("duplicate term '" + it->first + "'");
    }
}

const LexiconEntry* Lexicon::find(std::string_view term) const {
    const auto it = entries_.find(term);
    return it == entries_.end() ? nullptr : &it->second;
}

Lexicon build_warmth_lexicon(const Lexicon& trust_lex, const Lexicon& sociability_lex,
                             const Lexicon* competence_lex) {
    std::vector<LexiconEntry> out;
    out.reserve(trust_lex.size() + sociability_lex.size());

    auto ti = trust_lex.entries().begin();
    auto si = sociability_lex.entries().begin();
    const auto tend = trust_lex.entries().end();
    const auto send = sociability_lex.entries().end();

    const auto emit = [&](const std::string& term, const LexiconEntry* te, const LexiconEntry* se) {
        const std::optional<double> t = te ? te->trust : std::nullopt;
        const std::optional<double> s = se ? se->sociability : std::nullopt;
        if (!t && !s)
            throw DomainError("build_warmth_lexicon: term '" + term +
                              "' carries neither a trust nor a sociability score");
        const CombinedWarmth combined = combine_warmth(t, s);
        LexiconEntry entry;
        entry.term = term;
        entry.sociability = s;
        entry.trust = t;
        entry.warmth = combined.warmth;
        if (competence_lex) {
            if (const LexiconEntry* ce = competence_lex->find(term); ce && ce->competence)
                entry.competence = ce->competence;
        }
        out.push_back(std::move(entry));
    };

    while (ti != tend || si != send) {
        if (si == send || (ti != tend && ti->first < si->first)) {
            emit(ti->first, &ti->second, nullptr);
            ++ti;
        } else if (ti == tend || si->first < ti->first) {
            emit(si->first, nullptr, &si->second);
            ++si;
        } else {
            emit(ti->first, &ti->second, &si->second);
            ++ti;
            ++si;
        }
    }

    return Lexicon(std::move(out), "warmth union of [" + trust_lex.provenance() + "] and [" +
                                       sociability_lex.provenance() + "]");
}

Lexicon parse_lexicon_tsv(std::istream& in, std::string provenance) {
    std::vector<LexiconEntry> entries;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    std::vector<std::optional<Dimension>> columns;  // nullopt marks the term column

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        const std::vector<std::string_view> fields = split_fields(line, '\t');
        if (!have_header) {
            bool term_seen = false;
            std::array<bool, 4> dim_seen{};
            for (const std::string_view field : fields) {
                if (field == "term") {
                    if (term_seen) throw ParseError("duplicate 'term' column", lineno);
                    term_seen = true;
                    columns.push_back(std::nullopt);
                    continue;
                }
                const auto dim = parse_dimension(field);
                if (!dim) throw ParseError("unknown lexicon column '" + std::string(field) + "'", lineno);
                auto& seen = dim_seen[static_cast<std::size_t>(*dim)];
                if (seen) throw ParseError("duplicate column '" + std::string(field) + "'", lineno);
                seen = true;
                columns.push_back(*dim);
            }
            if (!term_seen) throw ParseError("lexicon header lacks a 'term' column", lineno);
            have_header = true;
            continue;
        }

        if (fields.size() != columns.size()) {
            throw ParseError("expected " + std::to_string(columns.size()) + " fields, got " +
                                 std::to_string(fields.size()),
                             lineno);
        }

        LexiconEntry entry;
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (!columns[i]) {
                entry.term = ascii_lower(fields[i]);
                continue;
            }
            if (fields[i].empty()) continue;
            const auto value = try_parse_double(fields[i]);
            if (!value) throw ParseError("invalid number '" + std::string(fields[i]) + "'", lineno);
            switch (*columns[i]) {
                case Dimension::Warmth: entry.warmth = *value; break;
                case Dimension::Competence: entry.competence = *value; break;
                case Dimension::Trust: entry.trust = *value; break;
                case Dimension::Sociability: entry.sociability = *value; break;
            }
        }
        try {
            entry.validate();
        } catch (const DomainError& e) {
            throw DomainError(std::string(e.what()) + " (line " + std::to_string(lineno) + ")");
        }
        entries.push_back(std::move(entry));
    }

    if (!have_header) throw DataError("lexicon file has no header row");
    return Lexicon(std::move(entries), std::move(provenance));
}

void write_lexicon_tsv(const Lexicon& lex, std::ostream& out) {
    bool any_competence = false;
    for (const auto& [term, entry] : lex.entries()) {
        if (entry.competence) {
            any_competence = true;
            break;
        }
    }

    out << "term\tsociability\ttrust\twarmth";
    if (any_competence) out << "\tcompetence";
    out << '\n';

    const auto field = [](const std::optional<double>& v) {
        return v ? format_double(*v) : std::string();
    };
    for (const auto& [term, entry] : lex.entries()) {
        out << term << '\t' << field(entry.sociability) << '\t' << field(entry.trust) << '\t'
            << field(entry.warmth);
        if (any_competence) out << '\t' << field(entry.competence);
        out << '\n';
    }
}

ClassDistribution class_distribution(const Lexicon& lex, const Thresholds& th) {
    ClassDistribution dist;
    dist.n_entries = lex.size();
    const auto tally = [&](const std::optional<double>& score, ClassDistribution::DimCounts& counts) {
        if (!score) return;
        ++counts.n_scored;
        ++counts.by_category[static_cast<std::size_t>(bin_score(*score, th))];
    };
    for (const auto& [term, entry] : lex.entries()) {
        tally(entry.sociability, dist.sociability);
        tally(entry.trust, dist.trust);
        tally(entry.warmth, dist.warmth);
        if (entry.warmth) {
            if (const auto source = entry.warmth_source()) {
                const auto cat = static_cast<std::size_t>(bin_score(*entry.warmth, th));
                ++dist.warmth_source_counts[static_cast<std::size_t>(*source)];
                ++dist.warmth_source_by_category[cat][static_cast<std::size_t>(*source)];
            }
        }
        if (entry.trust && entry.sociability && std::fabs(*entry.trust - *entry.sociability) < 0.5)
            ++dist.close_pairs;
    }
    return dist;
}

}  // namespace warmlex
