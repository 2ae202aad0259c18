#include "warmlex/aoa.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <unordered_set>

#include "warmlex/errors.hpp"
#include "warmlex/io_util.hpp"

namespace warmlex {

void AoaRecord::validate() const {
    if (term.empty()) throw DomainError("age-of-acquisition record: empty term");
    if (!std::isfinite(age) || age <= 0.0)
        throw DomainError("age-of-acquisition record '" + term + "': age must be a positive number");
}

AoaJoin join_aoa(const Lexicon& lex, std::span<const AoaRecord> aoa, Dimension dim,
                 const Thresholds& th) {
    AoaJoin join;
    join.n_aoa_records = aoa.size();
    for (const AoaRecord& rec : aoa) {
        rec.validate();
        const LexiconEntry* entry = lex.find(rec.term);
        if (!entry) {
            ++join.n_missing_term;
            continue;
        }
        const auto score = entry->score_for(dim);
        if (!score) {
            ++join.n_missing_score;
            continue;
        }
        join.rows.push_back(JoinedTerm{rec.term, rec.age, polarity_class(*score, dim, th)});
    }
    if (join.rows.empty())
        throw DataError("join_aoa: no age-of-acquisition term matches a " +
                        std::string(dimension_name(dim)) + " score");
    return join;
}

AcquisitionProfile acquisition_profile(std::span<const JoinedTerm> joined, Dimension dim,
                                       int age_lo, int age_hi, bool cumulative) {
    if (joined.empty()) throw DataError("acquisition_profile: empty join");
    if (age_lo > age_hi) throw DomainError("acquisition_profile: age_lo must not exceed age_hi");

    const std::size_t n_buckets = static_cast<std::size_t>(age_hi - age_lo + 1);
    std::vector<std::array<std::size_t, 3>> counts(n_buckets, {0, 0, 0});

    for (const JoinedTerm& row : joined) {
        int bucket = static_cast<int>(std::floor(row.age));
        bucket = std::clamp(bucket, age_lo, age_hi);
        counts[static_cast<std::size_t>(bucket - age_lo)][static_cast<std::size_t>(row.polarity)] += 1;
    }

    if (cumulative) {
        for (std::size_t b = 1; b < n_buckets; ++b) {
            for (std::size_t p = 0; p < 3; ++p) counts[b][p] += counts[b - 1][p];
        }
    }

    AcquisitionProfile profile;
    profile.dimension = dim;
    profile.cumulative = cumulative;
    profile.rows.reserve(n_buckets);
    for (std::size_t b = 0; b < n_buckets; ++b) {
        ProfileRow row;
        row.age_bucket = age_lo + static_cast<int>(b);
        const std::size_t n_low = counts[b][static_cast<std::size_t>(Polarity3::Low)];
        const std::size_t n_neutral = counts[b][static_cast<std::size_t>(Polarity3::Neutral)];
        const std::size_t n_high = counts[b][static_cast<std::size_t>(Polarity3::High)];
        row.n_words = n_low + n_neutral + n_high;
        if (row.n_words == 0) {
            row.degenerate = true;
        } else {
            const double n = static_cast<double>(row.n_words);
            row.pct_high = 100.0 * static_cast<double>(n_high) / n;
            row.pct_low = 100.0 * static_cast<double>(n_low) / n;
            row.pct_neutral = 100.0 * static_cast<double>(n_neutral) / n;
        }
        profile.rows.push_back(row);
    }
    return profile;
}

std::vector<std::pair<int, double>> polar_fraction(const AcquisitionProfile& profile) {
    std::vector<std::pair<int, double>> out;
    out.reserve(profile.rows.size());
    for (const ProfileRow& row : profile.rows)
        out.emplace_back(row.age_bucket, row.pct_high + row.pct_low);
    return out;
}

std::vector<AoaRecord> parse_aoa_csv(std::istream& in) {
    static constexpr std::string_view kHeader = "term,age";

    std::vector<AoaRecord> records;
    std::unordered_set<std::string> seen;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        if (!have_header) {
            if (line != kHeader)
                throw ParseError("age-of-acquisition header must be '" + std::string(kHeader) + "'",
                                 lineno);
            have_header = true;
            continue;
        }

        const std::vector<std::string_view> fields = split_fields(line, ',');
        if (fields.size() != 2)
            throw ParseError("expected 2 fields, got " + std::to_string(fields.size()), lineno);
        const auto age = try_parse_double(fields[1]);
        if (!age) throw ParseError("invalid age '" + std::string(fields[1]) + "'", lineno);

        AoaRecord rec{ascii_lower(fields[0]), *age};
        try {
            rec.validate();
        } catch (const DomainError& e) {
            throw ParseError(e.what(), lineno);
        }
        if (!seen.insert(rec.term).second)
            throw ParseError("duplicate term '" + rec.term + "'", lineno);
        records.push_back(std::move(rec));
    }

    if (!have_header) throw DataError("age-of-acquisition file has no header row");
    return records;
}

void write_profile_csv(const AcquisitionProfile& profile, std::ostream& out) {
    out << "dimension,age,pct_high,pct_low,pct_neutral,n_words\n";
    for (const ProfileRow& row : profile.rows) {
        out << dimension_name(profile.dimension) << ',' << row.age_bucket << ','
            << format_double(row.pct_high) << ',' << format_double(row.pct_low) << ','
            << format_double(row.pct_neutral) << ',' << row.n_words << '\n';
    }
}

std::vector<AcquisitionProfile> read_profile_csv(std::istream& in) {
    static constexpr std::string_view kHeader = "dimension,age,pct_high,pct_low,pct_neutral,n_words";

    std::vector<AcquisitionProfile> profiles;
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;

    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line.front() == '#') continue;

        if (!have_header) {
            if (line != kHeader)
                throw ParseError("profile header must be '" + std::string(kHeader) + "'", lineno);
            have_header = true;
            continue;
        }
        if (line == kHeader) continue;  // concatenated profile files repeat it

        const std::vector<std::string_view> fields = split_fields(line, ',');
        if (fields.size() != 6)
            throw ParseError("expected 6 fields, got " + std::to_string(fields.size()), lineno);

        const auto dim = parse_dimension(fields[0]);
        if (!dim) throw ParseError("unknown dimension '" + std::string(fields[0]) + "'", lineno);
        const auto age = try_parse_int(fields[1]);
        const auto pct_high = try_parse_double(fields[2]);
        const auto pct_low = try_parse_double(fields[3]);
        const auto pct_neutral = try_parse_double(fields[4]);
        const auto n_words = try_parse_int(fields[5]);
        if (!age || !pct_high || !pct_low || !pct_neutral || !n_words || *n_words < 0)
            throw ParseError("invalid profile row", lineno);

        if (profiles.empty() || profiles.back().dimension != *dim) {
            AcquisitionProfile profile;
            profile.dimension = *dim;
            profiles.push_back(std::move(profile));
        }
        ProfileRow row;
        row.age_bucket = static_cast<int>(*age);
        row.pct_high = *pct_high;
        row.pct_low = *pct_low;
        row.pct_neutral = *pct_neutral;
        row.n_words = static_cast<std::size_t>(*n_words);
        row.degenerate = row.n_words == 0;
        profiles.back().rows.push_back(row);
    }

    if (!have_header) throw DataError("profile file has no header row");
    return profiles;
}

}  // namespace warmlex
