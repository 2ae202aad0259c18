#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "warmlex/errors.hpp"
#include "warmlex/lexicon.hpp"

using namespace warmlex;

namespace {

double random_score(std::mt19937_64& rng, double limit) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;  // [0, 1)
    return (u * 2.0 - 1.0) * limit;
}

Lexicon lex_of(std::vector<LexiconEntry> entries) {
    return Lexicon(std::move(entries), "test");
}

}  // namespace

TEST_CASE("bin_score boundary table") {
    const double e = 1e-9;
    struct Row {
        double score;
        Category7 expected;
    };
    const Row rows[] = {
        {-3.0, Category7::HighNeg},     {-2.5 - e, Category7::HighNeg},
        {-2.5, Category7::HighNeg},     {-2.5 + e, Category7::ModerateNeg},
        {-1.5 - e, Category7::ModerateNeg}, {-1.5, Category7::ModerateNeg},
        {-1.5 + e, Category7::SlightNeg},   {-0.5 - e, Category7::SlightNeg},
        {-0.5, Category7::SlightNeg},   {-0.5 + e, Category7::Neither},
        {-e, Category7::Neither},       {0.0, Category7::Neither},
        {e, Category7::Neither},        {0.5 - e, Category7::Neither},
        {0.5, Category7::SlightPos},    {0.5 + e, Category7::SlightPos},
        {1.5 - e, Category7::SlightPos},    {1.5, Category7::ModeratePos},
        {1.5 + e, Category7::ModeratePos},  {2.5 - e, Category7::ModeratePos},
        {2.5, Category7::HighPos},      {2.5 + e, Category7::HighPos},
        {3.0, Category7::HighPos},
    };
    for (const Row& row : rows) {
        CAPTURE(row.score);
        CHECK(bin_score(row.score) == row.expected);
    }
}

TEST_CASE("bin_score rejects out-of-range and non-finite scores") {
    CHECK_THROWS_AS(bin_score(3.0000001), DomainError);
    CHECK_THROWS_AS(bin_score(-3.0000001), DomainError);
    CHECK_THROWS_AS(bin_score(std::nan("")), DomainError);
    CHECK_THROWS_AS(bin_score(INFINITY), DomainError);
}

TEST_CASE("bin_score is monotone in the score") {
    std::mt19937_64 rng(7);
    for (int i = 0; i < 2000; ++i) {
        double a = random_score(rng, 3.0);
        double b = random_score(rng, 3.0);
        if (a > b) std::swap(a, b);
        CAPTURE(a);
        CAPTURE(b);
        CHECK(static_cast<int>(bin_score(a)) <= static_cast<int>(bin_score(b)));
    }
}

TEST_CASE("polarity coarsens the seven classes with the shared moderate cut") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 2000; ++i) {
        const double s = random_score(rng, 3.0);
        const Category7 cat = bin_score(s);
        const Polarity3 pol = polarity_class(s, Dimension::Warmth);
        CAPTURE(s);
        if (pol == Polarity3::High)
            CHECK((cat == Category7::ModeratePos || cat == Category7::HighPos));
        else if (pol == Polarity3::Low)
            CHECK((cat == Category7::ModerateNeg || cat == Category7::HighNeg));
        else
            CHECK((cat == Category7::SlightNeg || cat == Category7::Neither ||
                   cat == Category7::SlightPos));
    }
}

TEST_CASE("competence polarity uses its own inclusive cutoff") {
    CHECK(polarity_class(0.33, Dimension::Competence) == Polarity3::High);
    CHECK(polarity_class(-0.33, Dimension::Competence) == Polarity3::Low);
    CHECK(polarity_class(0.3299999, Dimension::Competence) == Polarity3::Neutral);
    CHECK(polarity_class(-0.3299999, Dimension::Competence) == Polarity3::Neutral);
    CHECK(polarity_class(1.0, Dimension::Competence) == Polarity3::High);
    CHECK(polarity_class(-1.0, Dimension::Competence) == Polarity3::Low);
    CHECK_THROWS_AS(polarity_class(1.01, Dimension::Competence), DomainError);
    // The 7-point dimensions allow the full [-3, 3] range.
    CHECK(polarity_class(1.5, Dimension::Trust) == Polarity3::High);
    CHECK(polarity_class(-1.5, Dimension::Sociability) == Polarity3::Low);
    CHECK(polarity_class(1.4999999, Dimension::Trust) == Polarity3::Neutral);
}

TEST_CASE("combine_warmth worked examples") {
    auto check = [](double t, double s, double w, WarmthSource src) {
        CAPTURE(t);
        CAPTURE(s);
        const CombinedWarmth got = combine_warmth(t, s);
        CHECK(got.warmth == w);
        CHECK(got.source == src);
    };
    check(0.67, 3.0, 3.0, WarmthSource::FromSociability);
    check(-2.62, -1.71, -2.62, WarmthSource::FromTrust);
    check(2.0, 2.0, 2.0, WarmthSource::Equal);
    check(0.0, 0.0, 0.0, WarmthSource::Equal);
    // Opposite-sign magnitude tie goes to trust.
    check(-2.0, 2.0, -2.0, WarmthSource::FromTrust);
    check(2.0, -2.0, 2.0, WarmthSource::FromTrust);
}

TEST_CASE("combine_warmth single-input and error cases") {
    const CombinedWarmth t_only = combine_warmth(1.25, std::nullopt);
    CHECK(t_only.warmth == 1.25);
    CHECK(t_only.source == WarmthSource::FromTrust);
    const CombinedWarmth s_only = combine_warmth(std::nullopt, -0.5);
    CHECK(s_only.warmth == -0.5);
    CHECK(s_only.source == WarmthSource::FromSociability);
    CHECK_THROWS_AS(combine_warmth(std::nullopt, std::nullopt), DomainError);
    CHECK_THROWS_AS(combine_warmth(3.5, 0.0), DomainError);
    CHECK_THROWS_AS(combine_warmth(0.0, -3.5), DomainError);
}

TEST_CASE("combine_warmth picks the larger magnitude verbatim") {
    std::mt19937_64 rng(13);
    for (int i = 0; i < 2000; ++i) {
        const double t = random_score(rng, 3.0);
        const double s = random_score(rng, 3.0);
        const CombinedWarmth got = combine_warmth(t, s);
        CAPTURE(t);
        CAPTURE(s);
        CHECK((got.warmth == t || got.warmth == s));
        CHECK(std::fabs(got.warmth) == std::max(std::fabs(t), std::fabs(s)));
        switch (got.source) {
            case WarmthSource::FromTrust: CHECK(got.warmth == t); break;
            case WarmthSource::FromSociability: CHECK(got.warmth == s); break;
            case WarmthSource::Equal: CHECK(t == s); break;
        }
    }
}

TEST_CASE("entry categories are derived and track the stored scores") {
    LexiconEntry entry;
    entry.term = "x";
    CHECK(!entry.category_s());
    CHECK(!entry.category_t());
    CHECK(!entry.category_w());
    CHECK(!entry.warmth_source());

    entry.trust = 2.0;
    CHECK(entry.category_t() == Category7::ModeratePos);
    CHECK(!entry.warmth_source());  // no warmth stored

    entry.warmth = 2.0;
    CHECK(entry.warmth_source() == WarmthSource::FromTrust);

    entry.sociability = 2.0;
    CHECK(entry.warmth_source() == WarmthSource::Equal);

    // A stored warmth the combine rule cannot produce reports no source.
    entry.warmth = 1.0;
    CHECK(!entry.warmth_source());
}

TEST_CASE("entry validation rejects malformed terms and scores") {
    LexiconEntry ok;
    ok.term = "fine";
    ok.trust = 1.0;
    CHECK_NOTHROW(ok.validate());

    LexiconEntry empty = ok;
    empty.term = "";
    CHECK_THROWS_AS(empty.validate(), DomainError);

    LexiconEntry tabbed = ok;
    tabbed.term = "a\tb";
    CHECK_THROWS_AS(tabbed.validate(), DomainError);

    LexiconEntry upper = ok;
    upper.term = "Fine";
    CHECK_THROWS_AS(upper.validate(), DomainError);

    LexiconEntry range = ok;
    range.competence = 1.5;
    CHECK_THROWS_AS(range.validate(), DomainError);
}

TEST_CASE("lexicon rejects duplicate terms and offers heterogeneous lookup") {
    LexiconEntry a;
    a.term = "alpha";
    a.trust = 1.0;
    LexiconEntry b = a;
    CHECK_THROWS_AS(lex_of({a, b}), DataError);

    const Lexicon lex = lex_of({a});
    CHECK(lex.find(std::string_view("alpha")) != nullptr);
    CHECK(lex.find("beta") == nullptr);
    CHECK(lex.size() == 1);
}

TEST_CASE("build_warmth_lexicon forms the union with per-side scores") {
    LexiconEntry t1;
    t1.term = "shared";
    t1.trust = 0.67;
    LexiconEntry t2;
    t2.term = "trustonly";
    t2.trust = -1.0;
    LexiconEntry s1;
    s1.term = "shared";
    s1.sociability = 3.0;
    LexiconEntry s2;
    s2.term = "soconly";
    s2.sociability = 2.0;
    LexiconEntry c1;
    c1.term = "shared";
    c1.competence = 0.4;

    const Lexicon comp = lex_of({c1});
    const Lexicon merged = build_warmth_lexicon(lex_of({t1, t2}), lex_of({s1, s2}), &comp);

    CHECK(merged.size() == 3);
    const LexiconEntry* shared = merged.find("shared");
    REQUIRE(shared != nullptr);
    CHECK(shared->warmth == 3.0);
    CHECK(shared->trust == 0.67);
    CHECK(shared->sociability == 3.0);
    CHECK(shared->competence == 0.4);
    CHECK(shared->warmth_source() == WarmthSource::FromSociability);

    const LexiconEntry* trustonly = merged.find("trustonly");
    REQUIRE(trustonly != nullptr);
    CHECK(trustonly->warmth == -1.0);
    CHECK(!trustonly->sociability);
    CHECK(!trustonly->competence);
    CHECK(trustonly->warmth_source() == WarmthSource::FromTrust);

    const LexiconEntry* soconly = merged.find("soconly");
    REQUIRE(soconly != nullptr);
    CHECK(soconly->warmth == 2.0);
    CHECK(soconly->warmth_source() == WarmthSource::FromSociability);
}

TEST_CASE("build_warmth_lexicon needs a score on at least one side") {
    LexiconEntry bare;
    bare.term = "bare";
    bare.competence = 0.1;  // present in the trust lexicon but with no trust score
    CHECK_THROWS_AS(build_warmth_lexicon(lex_of({bare}), Lexicon()), DomainError);
}

TEST_CASE("warmth union entries always satisfy the combine rule") {
    std::mt19937_64 rng(17);
    const char* pool[] = {"a", "b", "c", "d", "e", "f", "g", "h", "i", "j"};
    for (int iter = 0; iter < 200; ++iter) {
        std::vector<LexiconEntry> ts, ss;
        for (const char* term : pool) {
            const bool in_t = (rng() & 1U) != 0;
            const bool in_s = (rng() & 1U) != 0;
            if (in_t) {
                LexiconEntry e;
                e.term = term;
                e.trust = random_score(rng, 3.0);
                ts.push_back(std::move(e));
            }
            if (in_s) {
                LexiconEntry e;
                e.term = term;
                e.sociability = random_score(rng, 3.0);
                ss.push_back(std::move(e));
            }
        }
        const Lexicon merged = build_warmth_lexicon(lex_of(std::move(ts)), lex_of(std::move(ss)));
        for (const auto& [term, entry] : merged.entries()) {
            REQUIRE(entry.warmth.has_value());
            const CombinedWarmth expect = combine_warmth(entry.trust, entry.sociability);
            CHECK(entry.warmth == expect.warmth);
            CHECK(entry.warmth_source() == expect.source);
        }
    }
}

TEST_CASE("lexicon TSV round-trips exactly") {
    std::mt19937_64 rng(23);
    const char* pool[] = {"apple", "bear", "cold", "dust", "ember", "frost", "glow", "hush"};
    for (int iter = 0; iter < 100; ++iter) {
        std::vector<LexiconEntry> entries;
        for (const char* term : pool) {
            if ((rng() & 1U) == 0) continue;
            LexiconEntry e;
            e.term = term;
            bool any = false;
            if (rng() & 1U) { e.sociability = random_score(rng, 3.0); any = true; }
            if (rng() & 1U) { e.trust = random_score(rng, 3.0); any = true; }
            if (rng() & 1U) { e.warmth = random_score(rng, 3.0); any = true; }
            if (rng() & 1U) { e.competence = random_score(rng, 1.0); any = true; }
            if (!any) e.trust = random_score(rng, 3.0);
            entries.push_back(std::move(e));
        }
        const Lexicon lex = lex_of(std::move(entries));
        std::ostringstream out;
        write_lexicon_tsv(lex, out);
        std::istringstream in(out.str());
        const Lexicon back = parse_lexicon_tsv(in);
        REQUIRE(back.size() == lex.size());
        auto bi = back.entries().begin();
        for (const auto& [term, entry] : lex.entries()) {
            CHECK(bi->second == entry);
            ++bi;
        }
    }
}

TEST_CASE("lexicon TSV parse accepts column reordering and comments") {
    std::istringstream in(
        "# produced elsewhere\n"
        "warmth\tterm\ttrust\n"
        "\n"
        "2.5\tGOOD\t2.5\n"
        "\tplain\t-1\n");
    const Lexicon lex = parse_lexicon_tsv(in);
    CHECK(lex.size() == 2);
    const LexiconEntry* good = lex.find("good");  // terms are lowercased on read
    REQUIRE(good != nullptr);
    CHECK(good->warmth == 2.5);
    CHECK(good->trust == 2.5);
    CHECK(!good->sociability);
    const LexiconEntry* plain = lex.find("plain");
    REQUIRE(plain != nullptr);
    CHECK(!plain->warmth);
    CHECK(plain->trust == -1.0);
}

TEST_CASE("lexicon TSV parse errors carry line numbers") {
    const auto expect_parse_error = [](const char* text, std::size_t line) {
        std::istringstream in(text);
        try {
            parse_lexicon_tsv(in);
            FAIL("expected ParseError");
        } catch (const ParseError& e) {
            CHECK(e.line() == line);
        }
    };
    expect_parse_error("term\ttrust\nx\tnotanumber\n", 2);
    expect_parse_error("term\ttrust\nx\t1\ty\n", 2);
    expect_parse_error("term\ttrust\ttrust\n", 1);
    expect_parse_error("trust\twarmth\n", 1);
    expect_parse_error("term\tbogus\n", 1);

    std::istringstream headerless("");
    CHECK_THROWS_AS(parse_lexicon_tsv(headerless), DataError);

    std::istringstream dup("term\ttrust\nsame\t1\nsame\t2\n");
    CHECK_THROWS_AS(parse_lexicon_tsv(dup), DataError);

    std::istringstream range("term\ttrust\nx\t3.01\n");
    CHECK_THROWS_AS(parse_lexicon_tsv(range), DomainError);
}

TEST_CASE("class_distribution tallies categories, sources, and close pairs") {
    std::vector<LexiconEntry> entries;
    auto add = [&](const char* term, std::optional<double> s, std::optional<double> t) {
        LexiconEntry e;
        e.term = term;
        e.sociability = s;
        e.trust = t;
        entries.push_back(std::move(e));
    };
    add("hot", 3.0, 0.67);     // warmth 3.0 from sociability, HighPos
    add("cold", -1.71, -2.62); // warmth -2.62 from trust, HighNeg
    add("flat", 0.1, 0.1);     // warmth 0.1 equal, Neither, close pair
    add("half", std::nullopt, 1.0);

    std::vector<LexiconEntry> ts, ss;
    for (const LexiconEntry& e : entries) {
        if (e.trust) {
            LexiconEntry t;
            t.term = e.term;
            t.trust = e.trust;
            ts.push_back(std::move(t));
        }
        if (e.sociability) {
            LexiconEntry s;
            s.term = e.term;
            s.sociability = e.sociability;
            ss.push_back(std::move(s));
        }
    }
    const Lexicon lex = build_warmth_lexicon(lex_of(std::move(ts)), lex_of(std::move(ss)));
    const ClassDistribution dist = class_distribution(lex);

    CHECK(dist.n_entries == 4);
    CHECK(dist.warmth.n_scored == 4);
    CHECK(dist.sociability.n_scored == 3);
    CHECK(dist.trust.n_scored == 4);
    CHECK(dist.warmth.by_category[static_cast<std::size_t>(Category7::HighPos)] == 1);
    CHECK(dist.warmth.by_category[static_cast<std::size_t>(Category7::HighNeg)] == 1);
    CHECK(dist.warmth.by_category[static_cast<std::size_t>(Category7::Neither)] == 1);
    CHECK(dist.warmth.by_category[static_cast<std::size_t>(Category7::SlightPos)] == 1);
    CHECK(dist.warmth_source_counts[static_cast<std::size_t>(WarmthSource::FromSociability)] == 1);
    CHECK(dist.warmth_source_counts[static_cast<std::size_t>(WarmthSource::FromTrust)] == 2);
    CHECK(dist.warmth_source_counts[static_cast<std::size_t>(WarmthSource::Equal)] == 1);
    CHECK(dist.close_pairs == 1);
    const auto high_pos = dist.warmth_source_by_category[static_cast<std::size_t>(Category7::HighPos)];
    CHECK(high_pos[static_cast<std::size_t>(WarmthSource::FromSociability)] == 1);
}

TEST_CASE("threshold validation") {
    Thresholds th;
    CHECK_NOTHROW(th.validate());
    th.bin_slight = 2.0;
    CHECK_THROWS_AS(th.validate(), DomainError);
    th = Thresholds{};
    th.competence_polar = 0.0;
    CHECK_THROWS_AS(th.validate(), DomainError);
    th = Thresholds{};
    th.bin_high = 3.5;
    CHECK_THROWS_AS(th.validate(), DomainError);
}
