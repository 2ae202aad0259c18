#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "warmlex/corpus.hpp"
#include "warmlex/errors.hpp"

using namespace warmlex;

namespace {

LexiconEntry entry_w(const char* term, double w) {
    LexiconEntry e;
    e.term = term;
    e.warmth = w;
    return e;
}

Lexicon small_lexicon() {
    LexiconEntry good = entry_w("good", 2.0);
    LexiconEntry bad = entry_w("bad", -2.0);
    LexiconEntry meh = entry_w("meh", 0.0);
    return Lexicon({good, bad, meh}, "test");
}

TargetSpec target_of(const char* name, std::vector<std::string> terms) {
    TargetSpec t;
    t.name = name;
    t.surface_terms = std::move(terms);
    return t;
}

// Token-by-token recount with the polarity cutoffs written out literally.
CotermScore oracle_coterm(const std::vector<Document>& docs, const Lexicon& lex, Dimension dim,
                          const std::unordered_set<std::string>& exclude, DenominatorMode mode) {
    CotermScore cs;
    cs.dimension = dim;
    cs.n_docs = docs.size();
    for (const Document& doc : docs) {
        for (const std::string& tok : doc.tokens()) {
            if (exclude.count(tok) != 0) continue;
            const LexiconEntry* e = lex.find(tok);
            const std::optional<double> score = e ? e->score_for(dim) : std::nullopt;
            if (score.has_value()) {
                const double cut = dim == Dimension::Competence ? 0.33 : 1.5;
                if (*score >= cut) ++cs.n_high;
                if (*score <= -cut) ++cs.n_low;
                ++cs.n_tokens;
            } else if (mode == DenominatorMode::AllTokens) {
                ++cs.n_tokens;
            }
        }
    }
    if (cs.n_tokens == 0) {
        cs.degenerate = true;
    } else {
        cs.score = (static_cast<double>(cs.n_high) - static_cast<double>(cs.n_low)) /
                   static_cast<double>(cs.n_tokens);
    }
    return cs;
}

}  // namespace

TEST_CASE("tokenize lowercases, strips handles, urls, and edge punctuation") {
    CHECK(tokenize("@bob http://x.co #kind") == std::vector<std::string>{"kind"});
    CHECK(tokenize("HTTPS://SHOUTY.example and WWW.other.org stay out") ==
          std::vector<std::string>{"and", "stay", "out"});
    CHECK(tokenize("...hello!! (world)") == std::vector<std::string>{"hello", "world"});
    CHECK(tokenize("don't stop") == std::vector<std::string>{"don't", "stop"});
    CHECK(tokenize("!!! ??? ...") == std::vector<std::string>{});
    CHECK(tokenize("Tabs\tand\nnewlines\rsplit") ==
          std::vector<std::string>{"tabs", "and", "newlines", "split"});
    CHECK(tokenize("") == std::vector<std::string>{});
    CHECK(tokenize("co-op keeps inner dashes") ==
          std::vector<std::string>{"co-op", "keeps", "inner", "dashes"});
}

TEST_CASE("documents derive their tokens from the text") {
    const Document doc("d1", "The Nurse, smiled.");
    CHECK(doc.tokens() == std::vector<std::string>{"the", "nurse", "smiled"});
    CHECK(doc.id() == "d1");
    CHECK(!doc.year());
    CHECK(!doc.region());
}

TEST_CASE("target specs demand lowercase single tokens") {
    CHECK_NOTHROW(target_of("ok", {"nurse", "nurses"}).validate());
    CHECK_THROWS_AS(target_of("", {"x"}).validate(), DomainError);
    CHECK_THROWS_AS(target_of("x", {}).validate(), DomainError);
    CHECK_THROWS_AS(target_of("x", {""}).validate(), DomainError);
    CHECK_THROWS_AS(target_of("x", {"two words"}).validate(), DomainError);
    CHECK_THROWS_AS(target_of("x", {"Upper"}).validate(), DomainError);
}

TEST_CASE("filter_documents matches whole tokens only") {
    const std::vector<Document> corpus = {
        Document("a", "the nurse arrived"),
        Document("b", "the nursery opened"),
        Document("c", "nurses everywhere"),
        Document("d", "nothing relevant"),
    };
    const auto nurse_docs = filter_documents(corpus, target_of("nurse", {"nurse", "nurses"}));
    REQUIRE(nurse_docs.size() == 2);
    CHECK(nurse_docs[0].id() == "a");
    CHECK(nurse_docs[1].id() == "c");
    CHECK(filter_documents(corpus, target_of("ghost", {"ghost"})).empty());
}

TEST_CASE("direct_lookup walks surface terms per dimension") {
    LexiconEntry nurse;
    nurse.term = "nurse";
    nurse.trust = 2.2;
    LexiconEntry nurses;
    nurses.term = "nurses";
    nurses.trust = 1.1;
    nurses.sociability = 1.0;
    const Lexicon lex({nurse, nurses}, "test");

    const auto scores = direct_lookup(lex, target_of("nurse", {"nurse", "nurses"}));
    CHECK(scores.at(Dimension::Trust) == 2.2);          // first surface term wins
    CHECK(scores.at(Dimension::Sociability) == 1.0);    // falls through to the second
    CHECK(!scores.at(Dimension::Warmth).has_value());
    CHECK(!scores.at(Dimension::Competence).has_value());
}

TEST_CASE("coterm_score counts polar tokens over the chosen denominator") {
    const Lexicon lex = small_lexicon();
    const std::vector<Document> docs = {
        Document("a", "x good good meh junk"),
        Document("b", "x bad"),
    };

    SUBCASE("all-tokens denominator") {
        const CotermScore cs =
            coterm_score(docs, lex, Dimension::Warmth, {"x"}, DenominatorMode::AllTokens);
        CHECK(cs.n_docs == 2);
        CHECK(cs.n_tokens == 5);  // 7 tokens minus two excluded "x"
        CHECK(cs.n_high == 2);
        CHECK(cs.n_low == 1);
        CHECK(cs.score == (2.0 - 1.0) / 5.0);
        CHECK(!cs.degenerate);
    }

    SUBCASE("lexicon-covered denominator ignores unknown tokens") {
        const CotermScore cs =
            coterm_score(docs, lex, Dimension::Warmth, {"x"}, DenominatorMode::LexiconCovered);
        CHECK(cs.n_tokens == 4);  // good good meh bad
        CHECK(cs.score == 0.25);
    }

    SUBCASE("no tokens at all is degenerate") {
        const CotermScore cs =
            coterm_score(std::vector<Document>{}, lex, Dimension::Warmth, {},
                         DenominatorMode::AllTokens);
        CHECK(cs.degenerate);
        CHECK(cs.score == 0.0);
        const std::vector<Document> empty_text = {Document("e", "x x x")};
        const CotermScore all_excluded =
            coterm_score(empty_text, lex, Dimension::Warmth, {"x"}, DenominatorMode::AllTokens);
        CHECK(all_excluded.degenerate);
    }
}

TEST_CASE("coterm_score equals the recount oracle on random corpora") {
    std::mt19937_64 rng(71);
    const char* vocab[] = {"alpha", "beta", "gamma", "delta", "x", "y", "junk"};
    const double scores[] = {-3, -2, -1.5, 0, 1.4999, 1.5, 3};

    for (int iter = 0; iter < 200; ++iter) {
        std::vector<LexiconEntry> entries;
        for (const char* term : vocab) {
            if ((rng() & 1U) == 0) continue;
            LexiconEntry e;
            e.term = term;
            e.warmth = scores[rng() % 7];
            entries.push_back(std::move(e));
        }
        const Lexicon lex(std::move(entries), "test");

        std::vector<Document> docs;
        const std::size_t n_docs = 1 + rng() % 5;
        for (std::size_t d = 0; d < n_docs; ++d) {
            std::string text;
            const std::size_t n_tok = rng() % 20;
            for (std::size_t t = 0; t < n_tok; ++t) {
                text += vocab[rng() % 7];
                text += ' ';
            }
            docs.emplace_back("d" + std::to_string(d), text);
        }

        std::unordered_set<std::string> exclude;
        if (rng() & 1U) exclude.insert("x");
        const DenominatorMode mode =
            (rng() & 1U) ? DenominatorMode::AllTokens : DenominatorMode::LexiconCovered;

        const CotermScore got = coterm_score(docs, lex, Dimension::Warmth, exclude, mode);
        const CotermScore want = oracle_coterm(docs, lex, Dimension::Warmth, exclude, mode);
        CHECK(got.n_tokens == want.n_tokens);
        CHECK(got.n_high == want.n_high);
        CHECK(got.n_low == want.n_low);
        CHECK(got.score == want.score);
        CHECK(got.degenerate == want.degenerate);
        if (!got.degenerate) {
            CHECK(got.score >= -1.0);
            CHECK(got.score <= 1.0);
        }

        // Duplicating every document doubles the counts and keeps the score.
        std::vector<Document> doubled = docs;
        doubled.insert(doubled.end(), docs.begin(), docs.end());
        const CotermScore twice = coterm_score(doubled, lex, Dimension::Warmth, exclude, mode);
        CHECK(twice.n_tokens == 2 * got.n_tokens);
        CHECK(twice.score == got.score);

        // Excluding a term the docs never contain changes nothing.
        std::unordered_set<std::string> harmless = exclude;
        harmless.insert("absent_term");
        const CotermScore same = coterm_score(docs, lex, Dimension::Warmth, harmless, mode);
        CHECK(same.score == got.score);
        CHECK(same.n_tokens == got.n_tokens);
    }
}

TEST_CASE("quadrants put boundary points on the high side") {
    CHECK(quadrant(0.5, 0.1, 0.5, 0.1) == QuadrantLabel::HighW_HighC);
    CHECK(quadrant(0.6, 0.2, 0.5, 0.1) == QuadrantLabel::HighW_HighC);
    CHECK(quadrant(0.6, 0.0, 0.5, 0.1) == QuadrantLabel::HighW_LowC);
    CHECK(quadrant(0.4, 0.2, 0.5, 0.1) == QuadrantLabel::LowW_HighC);
    CHECK(quadrant(0.4, 0.0, 0.5, 0.1) == QuadrantLabel::LowW_LowC);
    CHECK_THROWS_AS(quadrant(std::nan(""), 0, 0, 0), DomainError);
}

TEST_CASE("stability_by_group scores each year and reports the spread") {
    const Lexicon lex = small_lexicon();
    const std::vector<Document> corpus = {
        Document("a", "x good good", 2015),
        Document("b", "x bad", 2015),
        Document("c", "x meh bad", 2016),
        Document("d", "x good", std::nullopt),  // no year: skipped
        Document("e", "unrelated good", 2017),  // no target match
    };
    CorpusOptions opt;
    opt.min_group_docs = 2;

    const StabilityReport report = stability_by_group(corpus, lex, target_of("x", {"x"}),
                                                      GroupKey::Year, Dimension::Warmth, opt);
    REQUIRE(report.groups.size() == 2);
    CHECK(report.groups[0].group == "2015");
    CHECK(report.groups[0].score.score == 1.0 / 3.0);
    CHECK(report.groups[0].score.n_docs == 2);
    CHECK(!report.groups[0].low_confidence);
    CHECK(report.groups[1].group == "2016");
    CHECK(report.groups[1].score.score == -0.5);
    CHECK(report.groups[1].low_confidence);  // 1 doc < min_group_docs
    CHECK(report.spread == 1.0 / 3.0 + 0.5);
}

TEST_CASE("stability_by_group sorts years numerically and regions by name") {
    const Lexicon lex = small_lexicon();
    const std::vector<Document> corpus = {
        Document("a", "x good", 100),
        Document("b", "x bad", 99),
        Document("c", "x good", std::nullopt, "zeta"),
        Document("d", "x bad", std::nullopt, "alpha"),
    };
    const StabilityReport years = stability_by_group(corpus, lex, target_of("x", {"x"}),
                                                     GroupKey::Year, Dimension::Warmth);
    REQUIRE(years.groups.size() == 2);
    CHECK(years.groups[0].group == "99");
    CHECK(years.groups[1].group == "100");

    const StabilityReport regions = stability_by_group(corpus, lex, target_of("x", {"x"}),
                                                       GroupKey::Region, Dimension::Warmth);
    REQUIRE(regions.groups.size() == 2);
    CHECK(regions.groups[0].group == "alpha");
    CHECK(regions.groups[1].group == "zeta");

    const std::vector<Document> ungrouped = {Document("u", "x good")};
    CHECK_THROWS_AS(stability_by_group(ungrouped, lex, target_of("x", {"x"}), GroupKey::Year,
                                       Dimension::Warmth),
                    DataError);
}

TEST_CASE("ingroup_outgroup fills the 2x2 matrix with per-source baselines") {
    const Lexicon lex = small_lexicon();
    const std::vector<Document> corpus = {
        Document("us1", "america good", std::nullopt, "us"),
        Document("us2", "canada bad", std::nullopt, "us"),
        Document("ca1", "america bad", std::nullopt, "ca"),
        Document("ca2", "canada good good", std::nullopt, "ca"),
    };
    const Dimension dims[] = {Dimension::Warmth};
    const IngroupOutgroupReport report =
        ingroup_outgroup(corpus, lex, {"us", "ca"},
                         {target_of("america", {"america"}), target_of("canada", {"canada"})}, dims);

    CHECK(report.source_regions[0] == "us");
    CHECK(report.target_names[1] == "canada");
    CHECK(report.cells[0][0].at(Dimension::Warmth).score == 1.0);   // us talks about america
    CHECK(report.cells[0][1].at(Dimension::Warmth).score == -1.0);  // us talks about canada
    CHECK(report.cells[1][0].at(Dimension::Warmth).score == -1.0);  // ca talks about america
    CHECK(report.cells[1][1].at(Dimension::Warmth).score == 1.0);   // ca talks about canada
    CHECK(report.source_baselines[0].at(Dimension::Warmth).score == 0.0);
    CHECK(report.source_baselines[1].at(Dimension::Warmth).score == 0.2);

    CHECK_THROWS_AS(ingroup_outgroup(corpus, lex, {"us", "us"},
                                     {target_of("a", {"a"}), target_of("b", {"b"})}, dims),
                    DomainError);
    CHECK_THROWS_AS(ingroup_outgroup(corpus, lex, {"us", "ca"},
                                     {target_of("a", {"a"}), target_of("b", {"b"})},
                                     std::span<const Dimension>{}),
                    DomainError);
}

TEST_CASE("ingroup_outgroup marks empty cells degenerate") {
    const Lexicon lex = small_lexicon();
    const std::vector<Document> corpus = {
        Document("us1", "america good", std::nullopt, "us"),
    };
    const Dimension dims[] = {Dimension::Warmth};
    const IngroupOutgroupReport report =
        ingroup_outgroup(corpus, lex, {"us", "ca"},
                         {target_of("america", {"america"}), target_of("canada", {"canada"})}, dims);
    CHECK(report.cells[0][1].at(Dimension::Warmth).degenerate);  // us never mentions canada
    CHECK(report.cells[1][0].at(Dimension::Warmth).degenerate);  // no ca docs at all
    CHECK(report.source_baselines[1].at(Dimension::Warmth).degenerate);
}

TEST_CASE("score_target combines direct, coterm, quadrant, and groups") {
    LexiconEntry x;
    x.term = "x";
    x.warmth = 2.5;
    x.competence = 0.9;
    LexiconEntry good = entry_w("good", 2.0);
    LexiconEntry bad = entry_w("bad", -2.0);
    const Lexicon lex({x, good, bad}, "test");

    const std::vector<Document> corpus = {
        Document("a", "x good good", 2015),
        Document("b", "x bad", 2016),
        Document("c", "good good good good", 2015),
    };
    const Dimension dims[] = {Dimension::Warmth, Dimension::Competence};

    std::map<Dimension, Baseline> baselines;
    for (const Dimension dim : dims) baselines[dim] = baseline(corpus, lex, dim);

    ScoreOptions opt;
    opt.group_by = GroupKey::Year;
    opt.min_group_docs = 1;
    const TargetReport report = score_target(corpus, lex, target_of("x", {"x"}), dims, baselines, opt);

    CHECK(report.target == "x");
    CHECK(report.direct.at(Dimension::Warmth) == 2.5);
    CHECK(report.direct.at(Dimension::Competence) == 0.9);
    // Docs a and b, "x" excluded: good good bad -> (2 - 1) / 3.
    CHECK(report.coterm.at(Dimension::Warmth).score == 1.0 / 3.0);
    REQUIRE(report.quadrant.has_value());
    // Baselines keep the target's own tokens: warmth 8 high 1 low of 9 (7/9),
    // competence 2 high of 9 (2/9). Coterm W 1/3 < 7/9, coterm C 0 < 2/9.
    CHECK(*report.quadrant == QuadrantLabel::LowW_LowC);

    REQUIRE(report.by_group.size() == 2);
    CHECK(report.by_group[0].group == "2015");
    CHECK(report.by_group[0].scores.count(Dimension::Warmth) == 1);
    CHECK(report.by_group[0].scores.count(Dimension::Competence) == 1);
    CHECK(report.by_group[0].scores.at(Dimension::Warmth).score == 1.0);
    CHECK(report.by_group[1].scores.at(Dimension::Warmth).score == -1.0);
}

TEST_CASE("score_target on an absent target stays degenerate without a quadrant") {
    const Lexicon lex = small_lexicon();
    const std::vector<Document> corpus = {Document("a", "good bad", 2015)};
    const Dimension dims[] = {Dimension::Warmth, Dimension::Competence};
    std::map<Dimension, Baseline> baselines;
    for (const Dimension dim : dims) baselines[dim] = baseline(corpus, lex, dim);

    ScoreOptions opt;
    opt.group_by = GroupKey::Year;
    const TargetReport report =
        score_target(corpus, lex, target_of("ghost", {"ghost"}), dims, baselines, opt);
    CHECK(report.coterm.at(Dimension::Warmth).degenerate);
    CHECK(!report.quadrant.has_value());
    CHECK(report.by_group.empty());
}

TEST_CASE("corpus JSONL parsing: optional fields, nulls, and line-addressed errors") {
    std::istringstream good(
        "{\"id\":\"a\",\"text\":\"Hello World\",\"year\":2015,\"region\":\"US\"}\n"
        "\n"
        "{\"id\":\"b\",\"text\":\"second\",\"year\":null,\"region\":null}\n");
    const std::vector<Document> docs = parse_corpus_jsonl(good);
    REQUIRE(docs.size() == 2);
    CHECK(docs[0].year() == 2015);
    CHECK(docs[0].region() == "us");  // lowercased
    CHECK(docs[0].tokens() == std::vector<std::string>{"hello", "world"});
    CHECK(!docs[1].year());
    CHECK(!docs[1].region());

    const auto expect_error = [](const char* text, std::size_t line) {
        std::istringstream in(text);
        try {
            parse_corpus_jsonl(in);
            FAIL("expected ParseError for: ", text);
        } catch (const ParseError& e) {
            CAPTURE(text);
            CHECK(e.line() == line);
        }
    };
    expect_error("{\"id\":\"a\",\"text\":\"ok\"}\nnot json\n", 2);
    expect_error("[1,2]\n", 1);
    expect_error("{\"text\":\"no id\"}\n", 1);
    expect_error("{\"id\":\"a\"}\n", 1);
    expect_error("{\"id\":\"a\",\"text\":\"x\",\"year\":\"2015\"}\n", 1);
    expect_error("{\"id\":\"a\",\"text\":\"x\",\"region\":7}\n", 1);
}

TEST_CASE("targets JSON parsing sorts names and dedupes surface terms") {
    std::istringstream in(
        "{\"zebra\": [\"zebra\"], \"ant\": [\"Ant\", \"ants\", \"ant\"]}");
    const std::vector<TargetSpec> targets = parse_targets_json(in);
    REQUIRE(targets.size() == 2);
    CHECK(targets[0].name == "ant");
    CHECK(targets[0].surface_terms == std::vector<std::string>{"ant", "ants"});
    CHECK(targets[1].name == "zebra");

    std::istringstream not_object("[1]");
    CHECK_THROWS_AS(parse_targets_json(not_object), DataError);
    std::istringstream not_array("{\"a\": \"b\"}");
    CHECK_THROWS_AS(parse_targets_json(not_array), DataError);
    std::istringstream not_string("{\"a\": [1]}");
    CHECK_THROWS_AS(parse_targets_json(not_string), DataError);
    std::istringstream bad_term("{\"a\": [\"two words\"]}");
    CHECK_THROWS_AS(parse_targets_json(bad_term), DomainError);
    std::istringstream broken("{");
    CHECK_THROWS_AS(parse_targets_json(broken), DataError);
}

TEST_CASE("score CSV writers emit one row per score") {
    CotermScore cs;
    cs.target = "nurse";
    cs.dimension = Dimension::Warmth;
    cs.score = 0.25;
    cs.n_docs = 2;
    cs.n_tokens = 8;
    cs.n_high = 3;
    cs.n_low = 1;

    std::ostringstream scores;
    write_scores_csv(std::vector<CotermScore>{cs}, scores);
    CHECK(scores.str() ==
          "target,dimension,score,n_docs,n_tokens,n_high,n_low\n"
          "nurse,warmth,0.25,2,8,3,1\n");

    std::ostringstream groups;
    write_group_scores_csv(std::vector<GroupCsvRow>{{"nurse", "2015", cs, true}}, groups);
    CHECK(groups.str() ==
          "target,group,dimension,score,n_docs,n_tokens,n_high,n_low,low_confidence\n"
          "nurse,2015,warmth,0.25,2,8,3,1,1\n");
}
