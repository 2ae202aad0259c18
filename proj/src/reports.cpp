#include "warmlex/reports.hpp"

#include <algorithm>

#include <json.hpp>

#include "warmlex/config.hpp"
#include "warmlex/errors.hpp"
#include "warmlex/io_util.hpp"

namespace warmlex {

namespace {

using nlohmann::json;

json metadata_json(const OutputMetadata& meta) {
    json inputs = json::object();
    for (const auto& [name, digest] : meta.inputs) inputs[name] = digest;
    json config_echo = json::parse(meta.config_echo, nullptr, false);
    if (config_echo.is_discarded()) config_echo = json::object();
    return json{{"tool", std::string(kToolName)}, {"version", meta.version},
                {"config_hash", meta.config_hash}, {"seed", meta.seed},
                {"inputs", std::move(inputs)},     {"config", std::move(config_echo)}};
}

std::string dump_report(json j) {
    return j.dump(2) + "\n";
}

json coterm_json(const CotermScore& cs) {
    return json{{"score", cs.score},     {"n_docs", cs.n_docs}, {"n_tokens", cs.n_tokens},
                {"n_high", cs.n_high},   {"n_low", cs.n_low},   {"degenerate", cs.degenerate}};
}

json baseline_json(const Baseline& b) {
    return json{{"score", b.score}, {"n_docs", b.n_docs}, {"degenerate", b.degenerate}};
}

double percent_of(std::size_t count, std::size_t total) {
    return total == 0 ? 0.0 : 100.0 * static_cast<double>(count) / static_cast<double>(total);
}

json dim_distribution_json(std::string_view name, const ClassDistribution::DimCounts& counts) {
    json classes = json::array();
    for (std::size_t c = 0; c < kCategory7Count; ++c) {
        classes.push_back(json{{"category", std::string(category_name(static_cast<Category7>(c)))},
                               {"count", counts.by_category[c]},
                               {"percent", percent_of(counts.by_category[c], counts.n_scored)}});
    }
    const auto idx = [&](Category7 c) { return counts.by_category[static_cast<std::size_t>(c)]; };
    const std::size_t negative =
        idx(Category7::HighNeg) + idx(Category7::ModerateNeg) + idx(Category7::SlightNeg);
    const std::size_t neither = idx(Category7::Neither);
    const std::size_t positive =
        idx(Category7::SlightPos) + idx(Category7::ModeratePos) + idx(Category7::HighPos);
    json rollup = {
        {"negative", json{{"count", negative}, {"percent", percent_of(negative, counts.n_scored)}}},
        {"neither", json{{"count", neither}, {"percent", percent_of(neither, counts.n_scored)}}},
        {"positive", json{{"count", positive}, {"percent", percent_of(positive, counts.n_scored)}}}};
    return json{{"dimension", std::string(name)},
                {"n_scored", counts.n_scored},
                {"classes", std::move(classes)},
                {"rollup", std::move(rollup)}};
}

}  // namespace

std::string OutputMetadata::comment_block() const {
    std::string out;
    out += "# warmlex ";
    out += version;
    out += "\n# config_hash=";
    out += config_hash;
    out += "\n# seed=";
    out += std::to_string(seed);
    out += '\n';
    for (const auto& [name, digest] : inputs) {
        out += "# input ";
        out += name;
        out += '=';
        out += digest;
        out += '\n';
    }
    out += "# config ";
    out += config_echo;
    out += '\n';
    return out;
}

std::string build_stats_json(const AggregationStats& aggregation,
                             const std::map<std::string, AnnotatorStats>& annotators,
                             const OutputMetadata& meta) {
    json annotator_rows = json::array();
    std::size_t retained = 0;
    for (const auto& [id, st] : annotators) {
        json row{{"annotator_id", st.annotator_id},
                 {"gold_seen", st.gold_seen},
                 {"gold_correct", st.gold_correct},
                 {"retained", st.retained}};
        if (st.accuracy)
            row["accuracy"] = *st.accuracy;
        else
            row["accuracy"] = nullptr;
        annotator_rows.push_back(std::move(row));
        if (st.retained) ++retained;
    }
    json j{{"metadata", metadata_json(meta)},
           {"dimension", std::string(dimension_name(aggregation.dimension))},
           {"aggregation",
            json{{"n_terms", aggregation.n_terms},
                 {"n_annotations", aggregation.n_annotations},
                 {"mean_annotations_per_term", aggregation.mean_annotations_per_term}}},
           {"annotators",
            json{{"n_total", annotators.size()}, {"n_retained", retained},
                 {"rows", std::move(annotator_rows)}}}};
    return dump_report(std::move(j));
}

std::string distribution_json(const ClassDistribution& dist, const MergeInputSizes& sizes,
                              const OutputMetadata& meta) {
    json dimensions = json::array();
    dimensions.push_back(dim_distribution_json("sociability", dist.sociability));
    dimensions.push_back(dim_distribution_json("trust", dist.trust));
    dimensions.push_back(dim_distribution_json("warmth", dist.warmth));

    const std::size_t sourced = dist.warmth_source_counts[0] + dist.warmth_source_counts[1] +
                                dist.warmth_source_counts[2];
    json warmth_source = json::object();
    for (std::size_t s = 0; s < 3; ++s) {
        warmth_source[std::string(warmth_source_name(static_cast<WarmthSource>(s)))] =
            json{{"count", dist.warmth_source_counts[s]},
                 {"percent", percent_of(dist.warmth_source_counts[s], sourced)}};
    }
    warmth_source["close_pairs"] = json{{"count", dist.close_pairs},
                                        {"percent", percent_of(dist.close_pairs, dist.n_entries)}};

    json by_class = json::array();
    for (std::size_t c = 0; c < kCategory7Count; ++c) {
        by_class.push_back(
            json{{"category", std::string(category_name(static_cast<Category7>(c)))},
                 {"from_trust", dist.warmth_source_by_category[c][0]},
                 {"from_sociability", dist.warmth_source_by_category[c][1]},
                 {"equal", dist.warmth_source_by_category[c][2]}});
    }

    json j{{"metadata", metadata_json(meta)},
           {"lexicon_sizes", json{{"trust_input", sizes.trust_input},
                                  {"sociability_input", sizes.sociability_input},
                                  {"merged", sizes.merged}}},
           {"dimensions", std::move(dimensions)},
           {"warmth_source", std::move(warmth_source)},
           {"warmth_source_by_class", std::move(by_class)}};
    return dump_report(std::move(j));
}

std::string reliability_report_json(const ReliabilityReport& report, const OutputMetadata& meta) {
    json j{{"metadata", metadata_json(meta)},
           {"dimension", std::string(dimension_name(report.dimension))},
           {"trials", report.trials},
           {"seed", report.seed},
           {"mean_spearman", report.mean_spearman},
           {"mean_pearson", report.mean_pearson},
           {"n_terms_used", report.n_terms_used}};
    return dump_report(std::move(j));
}

std::string score_report_json(std::span<const TargetReport> reports,
                              const std::map<Dimension, Baseline>& baselines,
                              const OutputMetadata& meta) {
    json baselines_json = json::object();
    for (const auto& [dim, b] : baselines)
        baselines_json[std::string(dimension_name(dim))] = baseline_json(b);

    json targets = json::array();
    for (const TargetReport& report : reports) {
        json direct = json::object();
        for (const auto& [dim, score] : report.direct) {
            if (score)
                direct[std::string(dimension_name(dim))] = *score;
            else
                direct[std::string(dimension_name(dim))] = nullptr;
        }
        json coterm = json::object();
        for (const auto& [dim, cs] : report.coterm)
            coterm[std::string(dimension_name(dim))] = coterm_json(cs);

        json by_group = json::array();
        for (const TargetGroupRow& row : report.by_group) {
            json scores = json::object();
            for (const auto& [dim, cs] : row.scores)
                scores[std::string(dimension_name(dim))] = coterm_json(cs);
            by_group.push_back(json{{"group", row.group},
                                    {"low_confidence", row.low_confidence},
                                    {"scores", std::move(scores)}});
        }

        json spreads = json::object();
        for (const auto& [dim, cs] : report.coterm) {
            if (report.by_group.empty()) break;
            double lo = 0.0;
            double hi = 0.0;
            bool first = true;
            for (const TargetGroupRow& row : report.by_group) {
                const auto it = row.scores.find(dim);
                if (it == row.scores.end()) continue;
                if (first) {
                    lo = hi = it->second.score;
                    first = false;
                } else {
                    lo = std::min(lo, it->second.score);
                    hi = std::max(hi, it->second.score);
                }
            }
            if (!first) spreads[std::string(dimension_name(dim))] = hi - lo;
        }

        json entry{{"name", report.target},
                   {"direct", std::move(direct)},
                   {"coterm", std::move(coterm)},
                   {"by_group", std::move(by_group)}};
        if (!report.by_group.empty()) entry["group_spread"] = std::move(spreads);
        if (report.quadrant)
            entry["quadrant"] = std::string(quadrant_name(*report.quadrant));
        else
            entry["quadrant"] = nullptr;
        targets.push_back(std::move(entry));
    }

    json j{{"metadata", metadata_json(meta)},
           {"baselines", std::move(baselines_json)},
           {"targets", std::move(targets)}};
    return dump_report(std::move(j));
}

std::string ingroup_outgroup_json(const IngroupOutgroupReport& report, const OutputMetadata& meta) {
    json cells = json::array();
    for (std::size_t si = 0; si < 2; ++si) {
        for (std::size_t tj = 0; tj < 2; ++tj) {
            json scores = json::object();
            for (const auto& [dim, cs] : report.cells[si][tj])
                scores[std::string(dimension_name(dim))] = coterm_json(cs);
            cells.push_back(json{{"source_region", report.source_regions[si]},
                                 {"target", report.target_names[tj]},
                                 {"scores", std::move(scores)}});
        }
    }
    json baselines = json::object();
    for (std::size_t si = 0; si < 2; ++si) {
        json per_dim = json::object();
        for (const auto& [dim, b] : report.source_baselines[si])
            per_dim[std::string(dimension_name(dim))] = baseline_json(b);
        baselines[report.source_regions[si]] = std::move(per_dim);
    }
    json j{{"metadata", metadata_json(meta)},
           {"source_regions", json::array({report.source_regions[0], report.source_regions[1]})},
           {"targets", json::array({report.target_names[0], report.target_names[1]})},
           {"cells", std::move(cells)},
           {"source_baselines", std::move(baselines)}};
    return dump_report(std::move(j));
}

WcScatterData scatter_from_score_report(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("score report: ") + e.what());
    }
    if (!j.contains("baselines") || !j.contains("targets"))
        throw DataError("score report: missing baselines or targets");
    const json& baselines = j["baselines"];
    if (!baselines.contains("warmth") || !baselines.contains("competence"))
        throw DataError("score report: needs warmth and competence baselines");

    WcScatterData data;
    data.baseline_w = baselines["warmth"].at("score").get<double>();
    data.baseline_c = baselines["competence"].at("score").get<double>();
    for (const json& target : j["targets"]) {
        const json& coterm = target.at("coterm");
        if (!coterm.contains("warmth") || !coterm.contains("competence")) continue;
        const json& w = coterm["warmth"];
        const json& c = coterm["competence"];
        if (w.at("degenerate").get<bool>() || c.at("degenerate").get<bool>()) continue;
        data.points.push_back(WcScatterData::Point{target.at("name").get<std::string>(),
                                                   w.at("score").get<double>(),
                                                   c.at("score").get<double>()});
    }
    return data;
}

DistributionRows rows_from_distribution(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw DataError(std::string("distribution report: ") + e.what());
    }
    DistributionRows rows;
    for (const json& dim : j.at("dimensions")) {
        const std::string name = dim.at("dimension").get<std::string>();
        for (const json& cls : dim.at("classes")) {
            rows.classes.push_back(DistributionRows::ClassRow{
                name, cls.at("category").get<std::string>(), cls.at("count").get<std::size_t>(),
                cls.at("percent").get<double>()});
        }
    }
    for (const json& row : j.at("warmth_source_by_class")) {
        rows.sources.push_back(DistributionRows::SourceRow{
            row.at("category").get<std::string>(), row.at("from_trust").get<std::size_t>(),
            row.at("from_sociability").get<std::size_t>(), row.at("equal").get<std::size_t>()});
    }
    return rows;
}

}  // namespace warmlex
