#include <CLI11.hpp>

#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "warmlex/annotations.hpp"
#include "warmlex/aoa.hpp"
#include "warmlex/config.hpp"
#include "warmlex/corpus.hpp"
#include "warmlex/errors.hpp"
#include "warmlex/io_util.hpp"
#include "warmlex/lexicon.hpp"
#include "warmlex/plot.hpp"
#include "warmlex/reliability.hpp"
#include "warmlex/reports.hpp"

namespace fs = std::filesystem;
using namespace warmlex;

namespace {

// Shared run state: resolved config, output directory, and the digest of
// every input file read so far (which ends up in output metadata).
struct Ctx {
    RunConfig config;
    fs::path out_dir;
    std::vector<std::pair<std::string, std::string>> input_digests;

    std::string read_input(const fs::path& path) {
        std::string content = read_text_file(path);
        input_digests.emplace_back(path.filename().string(), hex64(fnv1a64(content)));
        return content;
    }

    OutputMetadata meta() const {
        OutputMetadata m;
        m.version = std::string(kToolVersion);
        m.config_echo = config.canonical_json();
        m.config_hash = config.config_hash();
        m.seed = config.seed;
        m.inputs = input_digests;
        return m;
    }

    // CSV/TSV outputs carry the metadata as '#' comment lines up front.
    void write_table(const std::string& name, const std::string& body) const {
        write_text_file_atomic(out_dir / name, meta().comment_block() + body);
    }

    // JSON and SVG bodies embed their metadata themselves.
    void write_raw(const std::string& name, const std::string& body) const {
        write_text_file_atomic(out_dir / name, body);
    }
};

int usage_error(const std::string& message) {
    std::cerr << "error: " << message << "\n";
    return 1;
}

std::vector<Dimension> parse_dimension_list(const std::string& csv) {
    std::vector<Dimension> dims;
    for (std::string_view field : split_fields(csv, ',')) {
        const auto dim = parse_dimension(field);
        if (!dim) throw DomainError("unknown dimension '" + std::string(field) + "'");
        dims.push_back(*dim);
    }
    if (dims.empty()) throw DomainError("empty dimension list");
    return dims;
}

std::vector<AnnotationRecord> load_annotations(Ctx& ctx, const std::vector<std::string>& paths,
                                               Dimension dim) {
    std::vector<AnnotationRecord> records;
    for (const std::string& path : paths) {
        std::istringstream in(ctx.read_input(path));
        for (AnnotationRecord& rec : parse_annotations_csv(in)) {
            if (rec.dimension == dim) records.push_back(std::move(rec));
        }
    }
    return records;
}

Lexicon load_lexicon(Ctx& ctx, const std::string& path) {
    std::istringstream in(ctx.read_input(path));
    return parse_lexicon_tsv(in, fs::path(path).filename().string());
}

int cmd_build(Ctx& ctx, const std::string& dim_name, const std::vector<std::string>& files) {
    const Dimension dim = *parse_dimension(dim_name);
    const std::vector<AnnotationRecord> records = load_annotations(ctx, files, dim);
    const DimensionLexiconResult result =
        build_dimension_lexicon(records, dim, ctx.config.gold_tolerance,
                                ctx.config.min_gold_accuracy,
                                ctx.config.include_gold_in_aggregation);

    std::ostringstream tsv;
    write_lexicon_tsv(result.lexicon, tsv);
    ctx.write_table(dim_name + "_lexicon.tsv", tsv.str());
    ctx.write_raw(dim_name + "_build_stats.json",
                  build_stats_json(result.aggregation, result.annotators, ctx.meta()));
    return 0;
}

int cmd_merge(Ctx& ctx, std::string trust_path, std::string soc_path, std::string comp_path) {
    if (trust_path.empty()) trust_path = ctx.config.real_trust_tsv;
    if (soc_path.empty()) soc_path = ctx.config.real_sociability_tsv;
    if (comp_path.empty()) comp_path = ctx.config.real_competence_tsv;
    if (trust_path.empty() || soc_path.empty())
        return usage_error("merge needs --trust and --sociability (or config paths)");

    const Lexicon trust_lex = load_lexicon(ctx, trust_path);
    const Lexicon soc_lex = load_lexicon(ctx, soc_path);
    std::optional<Lexicon> comp_lex;
    if (!comp_path.empty()) comp_lex = load_lexicon(ctx, comp_path);

    const Lexicon merged =
        build_warmth_lexicon(trust_lex, soc_lex, comp_lex ? &*comp_lex : nullptr);

    std::ostringstream tsv;
    write_lexicon_tsv(merged, tsv);
    ctx.write_table("merged_lexicon.tsv", tsv.str());

    const MergeInputSizes sizes{trust_lex.size(), soc_lex.size(), merged.size()};
    ctx.write_raw("merge_distribution.json",
                  distribution_json(class_distribution(merged, ctx.config.thresholds), sizes,
                                    ctx.meta()));
    return 0;
}

int cmd_validate(Ctx& ctx, const std::string& dim_name, const std::vector<std::string>& files,
                 std::optional<std::uint64_t> trials, bool raw) {
    const Dimension dim = *parse_dimension(dim_name);
    std::vector<AnnotationRecord> records = load_annotations(ctx, files, dim);
    if (!(raw || ctx.config.shr_on_raw)) {
        const auto stats = compute_annotator_stats(records, ctx.config.gold_tolerance,
                                                   ctx.config.min_gold_accuracy);
        records = filter_annotations(records, stats, ctx.config.include_gold_in_aggregation);
    }
    const auto per_term = responses_by_term(records);
    const ReliabilityReport report =
        shr(per_term, dim, trials ? *trials : ctx.config.shr_trials, ctx.config.seed);
    ctx.write_raw("reliability_" + dim_name + ".json",
                  reliability_report_json(report, ctx.meta()));
    return 0;
}

std::pair<std::string, std::string> split_region_pair(const std::string& value) {
    const auto fields = split_fields(value, ',');
    if (fields.size() != 2 || fields[0].empty() || fields[1].empty())
        throw DomainError("--ingroup-outgroup expects two comma-separated regions");
    return {ascii_lower(fields[0]), ascii_lower(fields[1])};
}

void write_ingroup_csv(const Ctx& ctx, const IngroupOutgroupReport& report) {
    std::ostringstream out;
    out << "source_region,target,dimension,score,n_docs,n_tokens,n_high,n_low,source_baseline\n";
    for (std::size_t si = 0; si < 2; ++si) {
        for (std::size_t tj = 0; tj < 2; ++tj) {
            for (const auto& [dim, cs] : report.cells[si][tj]) {
                const Baseline& base = report.source_baselines[si].at(dim);
                out << report.source_regions[si] << ',' << report.target_names[tj] << ','
                    << dimension_name(dim) << ',' << format_double(cs.score) << ',' << cs.n_docs
                    << ',' << cs.n_tokens << ',' << cs.n_high << ',' << cs.n_low << ','
                    << format_double(base.score) << '\n';
            }
        }
    }
    ctx.write_table("ingroup_outgroup.csv", out.str());
}

int cmd_score(Ctx& ctx, const std::string& lex_path, const std::string& corpus_path,
              const std::string& targets_path, const std::string& dims_csv,
              const std::string& group_by, const std::string& ingroup_pair) {
    const Lexicon lex = load_lexicon(ctx, lex_path);
    std::istringstream corpus_in(ctx.read_input(corpus_path));
    const std::vector<Document> corpus = parse_corpus_jsonl(corpus_in);
    std::istringstream targets_in(ctx.read_input(targets_path));
    const std::vector<TargetSpec> targets = parse_targets_json(targets_in);
    const std::vector<Dimension> dims = parse_dimension_list(dims_csv);

    ScoreOptions opt;
    opt.exclude_target_terms = ctx.config.exclude_target_terms;
    opt.denominator = ctx.config.denominator;
    opt.min_group_docs = static_cast<std::size_t>(ctx.config.min_group_docs);
    opt.thresholds = ctx.config.thresholds;
    if (!group_by.empty()) opt.group_by = parse_group_key(group_by);

    std::map<Dimension, Baseline> baselines;
    std::vector<CotermScore> csv_rows;
    for (Dimension dim : dims) {
        CotermScore full = coterm_score(corpus, lex, dim, {}, opt.denominator, opt.thresholds);
        full.target = "__baseline__";
        baselines[dim] = Baseline{dim, full.score, full.n_docs, full.degenerate};
        csv_rows.push_back(std::move(full));
    }

    std::vector<TargetReport> reports;
    std::vector<GroupCsvRow> group_rows;
    for (const TargetSpec& target : targets) {
        TargetReport report = score_target(corpus, lex, target, dims, baselines, opt);
        for (const auto& [dim, cs] : report.coterm) csv_rows.push_back(cs);
        for (const TargetGroupRow& row : report.by_group) {
            for (const auto& [dim, cs] : row.scores)
                group_rows.push_back(GroupCsvRow{report.target, row.group, cs, row.low_confidence});
        }
        reports.push_back(std::move(report));
    }

    std::ostringstream scores_csv;
    write_scores_csv(csv_rows, scores_csv);
    ctx.write_table("scores.csv", scores_csv.str());
    ctx.write_raw("score_report.json", score_report_json(reports, baselines, ctx.meta()));

    if (opt.group_by) {
        std::ostringstream group_csv;
        write_group_scores_csv(group_rows, group_csv);
        ctx.write_table("scores_by_group.csv", group_csv.str());
    }

    if (!ingroup_pair.empty()) {
        if (targets.size() != 2)
            throw DataError("--ingroup-outgroup needs a targets file with exactly 2 targets, got " +
                            std::to_string(targets.size()));
        const auto regions = split_region_pair(ingroup_pair);
        const IngroupOutgroupReport report = ingroup_outgroup(
            corpus, lex, regions, {targets[0], targets[1]}, dims, opt);
        ctx.write_raw("ingroup_outgroup.json", ingroup_outgroup_json(report, ctx.meta()));
        write_ingroup_csv(ctx, report);
    }
    return 0;
}

int cmd_aoa(Ctx& ctx, const std::string& lex_path, const std::string& aoa_path,
            const std::string& dims_csv, bool cumulative) {
    const Lexicon lex = load_lexicon(ctx, lex_path);
    std::istringstream aoa_in(ctx.read_input(aoa_path));
    const std::vector<AoaRecord> aoa = parse_aoa_csv(aoa_in);
    const bool cum = cumulative || ctx.config.cumulative_aoa;

    for (Dimension dim : parse_dimension_list(dims_csv)) {
        const AoaJoin joined = join_aoa(lex, aoa, dim, ctx.config.thresholds);
        const AcquisitionProfile profile = acquisition_profile(
            joined.rows, dim, ctx.config.aoa_age_lo, ctx.config.aoa_age_hi, cum);
        std::ostringstream out;
        write_profile_csv(profile, out);
        ctx.write_table("aoa_" + std::string(dimension_name(dim)) + ".csv", out.str());
    }
    return 0;
}

int cmd_plot(Ctx& ctx, const std::string& score_path, const std::string& aoa_path,
             const std::string& dist_path, const std::string& lex_path) {
    if (score_path.empty() && aoa_path.empty() && dist_path.empty() && lex_path.empty())
        return usage_error("plot needs at least one of --score, --aoa, --distribution, --lexicon");

    if (!score_path.empty()) {
        const WcScatterData data = scatter_from_score_report(ctx.read_input(score_path));
        ctx.write_raw("wc_scatter.svg", render_wc_scatter_svg(data, ctx.meta()));
        std::ostringstream points;
        write_wc_points_csv(data, points);
        ctx.write_table("wc_scatter_points.csv", points.str());
    }

    if (!aoa_path.empty()) {
        std::istringstream in(ctx.read_input(aoa_path));
        const std::vector<AcquisitionProfile> profiles = read_profile_csv(in);
        if (profiles.empty()) throw DataError("age profile file has no rows");
        for (const AcquisitionProfile& profile : profiles) {
            std::ostringstream out;
            write_stream_chart_csv(profile, out);
            ctx.write_table("stream_" + std::string(dimension_name(profile.dimension)) + ".csv",
                            out.str());
        }
    }

    if (!dist_path.empty()) {
        const DistributionRows rows = rows_from_distribution(ctx.read_input(dist_path));
        std::ostringstream classes;
        classes << "dimension,category,count,percent\n";
        for (const auto& row : rows.classes) {
            classes << row.dimension << ',' << row.category << ',' << row.count << ','
                    << format_double(row.percent) << '\n';
        }
        ctx.write_table("class_distribution.csv", classes.str());

        std::ostringstream sources;
        sources << "category,from_trust,from_sociability,equal\n";
        for (const auto& row : rows.sources) {
            sources << row.category << ',' << row.from_trust << ',' << row.from_sociability << ','
                    << row.equal << '\n';
        }
        ctx.write_table("warmth_source_breakdown.csv", sources.str());
    }

    if (!lex_path.empty()) {
        const Lexicon lex = load_lexicon(ctx, lex_path);
        const std::vector<TsPoint> points = ts_points_from_lexicon(lex, ctx.config.thresholds);
        ctx.write_raw("ts_scatter.svg", render_ts_scatter_svg(points, ctx.meta()));
        std::ostringstream csv;
        write_ts_points_csv(lex, csv, ctx.config.thresholds);
        ctx.write_table("ts_scatter_points.csv", csv.str());
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"warmth/trust/sociability lexicon pipeline"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::string out_dir = ".";
    app.add_option("--config", config_path, "JSON config file");
    app.add_option("--seed", seed, "Random seed (overrides config)");
    app.add_option("--out", out_dir, "Output directory")->capture_default_str();

    auto* build = app.add_subcommand("build", "Aggregate annotations into a dimension lexicon");
    std::string build_dim;
    std::vector<std::string> build_files;
    build->add_option("--dimension", build_dim, "Dimension to build")
        ->required()
        ->check(CLI::IsMember({"trust", "sociability"}));
    build->add_option("annotations", build_files, "Annotation CSV files")->required();

    auto* merge = app.add_subcommand("merge", "Merge trust and sociability lexicons into one");
    std::string merge_trust, merge_soc, merge_comp;
    merge->add_option("--trust", merge_trust, "Trust lexicon TSV");
    merge->add_option("--sociability", merge_soc, "Sociability lexicon TSV");
    merge->add_option("--competence", merge_comp, "Competence lexicon TSV");

    auto* validate = app.add_subcommand("validate", "Split-half reliability of annotations");
    std::string validate_dim;
    std::vector<std::string> validate_files;
    std::optional<std::uint64_t> validate_trials;
    bool validate_raw = false;
    validate->add_option("--dimension", validate_dim, "Dimension to validate")
        ->required()
        ->check(CLI::IsMember({"trust", "sociability"}));
    validate->add_option("--trials", validate_trials, "Number of split trials");
    validate->add_flag("--raw", validate_raw, "Skip annotator filtering and gold-row removal");
    validate->add_option("annotations", validate_files, "Annotation CSV files")->required();

    auto* score = app.add_subcommand("score", "Score targets against a corpus");
    std::string score_lex, score_corpus, score_targets;
    std::string score_dims = "warmth,competence,trust,sociability";
    std::string score_group_by, score_ingroup;
    score->add_option("--lexicon", score_lex, "Lexicon TSV")->required();
    score->add_option("--corpus", score_corpus, "Corpus JSONL")->required();
    score->add_option("--targets", score_targets, "Targets JSON")->required();
    score->add_option("--dimensions", score_dims, "Comma-separated dimensions")
        ->capture_default_str();
    score->add_option("--group-by", score_group_by, "Group scores by year or region")
        ->check(CLI::IsMember({"year", "region"}));
    score->add_option("--ingroup-outgroup", score_ingroup,
                      "Two comma-separated source regions for a 2x2 region/target matrix");

    auto* aoa = app.add_subcommand("aoa", "Age-of-acquisition polarity profiles");
    std::string aoa_lex, aoa_file;
    std::string aoa_dims = "warmth";
    bool aoa_cumulative = false;
    aoa->add_option("--lexicon", aoa_lex, "Lexicon TSV")->required();
    aoa->add_option("--aoa", aoa_file, "Age-of-acquisition CSV")->required();
    aoa->add_option("--dimensions", aoa_dims, "Comma-separated dimensions")->capture_default_str();
    aoa->add_flag("--cumulative", aoa_cumulative, "Count words acquired by each age, not at it");

    auto* plot = app.add_subcommand("plot", "Emit SVG charts and their CSV twins");
    std::string plot_score, plot_aoa, plot_dist, plot_lex;
    plot->add_option("--score", plot_score, "score_report.json from the score command");
    plot->add_option("--aoa", plot_aoa, "Profile CSV from the aoa command");
    plot->add_option("--distribution", plot_dist, "Distribution JSON from the merge command");
    plot->add_option("--lexicon", plot_lex, "Merged lexicon TSV");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        Ctx ctx;
        if (!config_path.empty()) ctx.config = load_run_config(config_path);
        if (seed) ctx.config.seed = *seed;
        ctx.out_dir = out_dir;
        std::error_code ec;
        fs::create_directories(ctx.out_dir, ec);
        if (ec) throw IoError("cannot create output directory '" + out_dir + "': " + ec.message());

        if (build->parsed()) return cmd_build(ctx, build_dim, build_files);
        if (merge->parsed()) return cmd_merge(ctx, merge_trust, merge_soc, merge_comp);
        if (validate->parsed())
            return cmd_validate(ctx, validate_dim, validate_files, validate_trials, validate_raw);
        if (score->parsed())
            return cmd_score(ctx, score_lex, score_corpus, score_targets, score_dims,
                             score_group_by, score_ingroup);
        if (aoa->parsed()) return cmd_aoa(ctx, aoa_lex, aoa_file, aoa_dims, aoa_cumulative);
        if (plot->parsed()) return cmd_plot(ctx, plot_score, plot_aoa, plot_dist, plot_lex);
        return usage_error("no command given");
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
