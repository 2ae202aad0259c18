#include "warmlex/config.hpp"

#include <cmath>

#include <json.hpp>

#include "warmlex/errors.hpp"
#include "warmlex/io_util.hpp"

namespace warmlex {

void RunConfig::validate() const {
    thresholds.validate();
    if (gold_tolerance < 0) throw DataError("config: gold_tolerance must be >= 0");
    if (!(min_gold_accuracy >= 0.0 && min_gold_accuracy <= 1.0))
        throw DataError("config: min_gold_accuracy must lie in [0, 1]");
    if (shr_trials == 0) throw DataError("config: shr_trials must be >= 1");
    if (!(valence_exclusion_lo < valence_exclusion_hi))
        throw DataError("config: valence exclusion band requires lo < hi");
    if (aoa_age_lo > aoa_age_hi) throw DataError("config: aoa_age_lo must not exceed aoa_age_hi");
}

std::string RunConfig::canonical_json() const {
    nlohmann::json j;
    j["thresholds"] = {{"bin_slight", thresholds.bin_slight},
                       {"bin_moderate", thresholds.bin_moderate},
                       {"bin_high", thresholds.bin_high},
                       {"competence_polar", thresholds.competence_polar}};
    j["gold_tolerance"] = gold_tolerance;
    j["min_gold_accuracy"] = min_gold_accuracy;
    j["include_gold_in_aggregation"] = include_gold_in_aggregation;
    j["shr_trials"] = shr_trials;
    j["shr_on_raw"] = shr_on_raw;
    j["seed"] = seed;
    j["min_group_docs"] = min_group_docs;
    j["valence_exclusion_lo"] = valence_exclusion_lo;
    j["valence_exclusion_hi"] = valence_exclusion_hi;
    j["denominator"] = std::string(denominator_mode_name(denominator));
    j["exclude_target_terms"] = exclude_target_terms;
    j["cumulative_aoa"] = cumulative_aoa;
    j["aoa_age_lo"] = aoa_age_lo;
    j["aoa_age_hi"] = aoa_age_hi;
    j["real_trust_tsv"] = real_trust_tsv;
    j["real_sociability_tsv"] = real_sociability_tsv;
    j["real_competence_tsv"] = real_competence_tsv;
    return j.dump();  // nlohmann objects serialize with sorted keys
}

std::string RunConfig::config_hash() const {
    return hex64(fnv1a64(canonical_json()));
}

namespace {

double require_number(const nlohmann::json& j, const std::string& key) {
    if (!j.is_number()) throw DataError("config: '" + key + "' must be a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw DataError("config: '" + key + "' must be finite");
    return v;
}

std::uint64_t require_uint(const nlohmann::json& j, const std::string& key) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
        throw DataError("config: '" + key + "' must be a non-negative integer");
    return j.get<std::uint64_t>();
}

int require_int(const nlohmann::json& j, const std::string& key) {
    if (!j.is_number_integer()) throw DataError("config: '" + key + "' must be an integer");
    return j.get<int>();
}

bool require_bool(const nlohmann::json& j, const std::string& key) {
    if (!j.is_boolean()) throw DataError("config: '" + key + "' must be a boolean");
    return j.get<bool>();
}

std::string require_string(const nlohmann::json& j, const std::string& key) {
    if (!j.is_string()) throw DataError("config: '" + key + "' must be a string");
    return j.get<std::string>();
}

}  // namespace

void apply_config_json(RunConfig& config, const std::string& json_text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(std::string("config: ") + e.what());
    }
    if (!j.is_object()) throw DataError("config: expected a JSON object");

    for (const auto& [key, value] : j.items()) {
        if (key == "thresholds") {
            if (!value.is_object()) throw DataError("config: 'thresholds' must be an object");
            for (const auto& [tkey, tvalue] : value.items()) {
                if (tkey == "bin_slight")
                    config.thresholds.bin_slight = require_number(tvalue, tkey);
                else if (tkey == "bin_moderate")
                    config.thresholds.bin_moderate = require_number(tvalue, tkey);
                else if (tkey == "bin_high")
                    config.thresholds.bin_high = require_number(tvalue, tkey);
                else if (tkey == "competence_polar")
                    config.thresholds.competence_polar = require_number(tvalue, tkey);
                else
                    throw DataError("config: unknown threshold key '" + tkey + "'");
            }
        } else if (key == "gold_tolerance") {
            config.gold_tolerance = require_int(value, key);
        } else if (key == "min_gold_accuracy") {
            config.min_gold_accuracy = require_number(value, key);
        } else if (key == "include_gold_in_aggregation") {
            config.include_gold_in_aggregation = require_bool(value, key);
        } else if (key == "shr_trials") {
            config.shr_trials = require_uint(value, key);
        } else if (key == "shr_on_raw") {
            config.shr_on_raw = require_bool(value, key);
        } else if (key == "seed") {
            config.seed = require_uint(value, key);
        } else if (key == "min_group_docs") {
            config.min_group_docs = require_uint(value, key);
        } else if (key == "valence_exclusion_lo") {
            config.valence_exclusion_lo = require_number(value, key);
        } else if (key == "valence_exclusion_hi") {
            config.valence_exclusion_hi = require_number(value, key);
        } else if (key == "denominator") {
            const auto mode = parse_denominator_mode(require_string(value, key));
            if (!mode) throw DataError("config: denominator must be all-tokens or lexicon-covered");
            config.denominator = *mode;
        } else if (key == "exclude_target_terms") {
            config.exclude_target_terms = require_bool(value, key);
        } else if (key == "cumulative_aoa") {
            config.cumulative_aoa = require_bool(value, key);
        } else if (key == "aoa_age_lo") {
            config.aoa_age_lo = require_int(value, key);
        } else if (key == "aoa_age_hi") {
            config.aoa_age_hi = require_int(value, key);
        } else if (key == "real_trust_tsv") {
            config.real_trust_tsv = require_string(value, key);
        } else if (key == "real_sociability_tsv") {
            config.real_sociability_tsv = require_string(value, key);
        } else if (key == "real_competence_tsv") {
            config.real_competence_tsv = require_string(value, key);
        } else {
            throw DataError("config: unknown key '" + key + "'");
        }
    }
    config.validate();
}

RunConfig load_run_config(const std::filesystem::path& path) {
    RunConfig config;
    apply_config_json(config, read_text_file(path));
    return config;
}

}  // namespace warmlex
