#include "bcshape/config.hpp"

#include "bcshape/errors.hpp"
#include "bcshape/pipeline.hpp"

#include <json.hpp>

#include <fstream>
#include <set>

namespace bcshape {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& origin, const std::string& field, const std::string& why) {
    throw config_error(origin + ": field '" + field + "' " + why);
}

template <typename T>
T field_as(const json& j, const std::string& origin, const std::string& field) {
    try {
        return j.get<T>();
    } catch (const json::exception&) {
        bad_field(origin, field, "has the wrong type");
    }
}

void parse_optimizer(const json& j, const std::string& origin, OptimizerOptions& opts) {
    for (const auto& [key, value] : j.items()) {
        const std::string where = "optimizer." + key;
        if (key == "restarts") opts.restarts = field_as<int>(value, origin, where);
        else if (key == "max_alt_iters") opts.max_alt_iters = field_as<int>(value, origin, where);
        else if (key == "max_outer_iters") opts.max_outer_iters = field_as<int>(value, origin, where);
        else if (key == "objective_tolerance") opts.objective_tolerance = field_as<double>(value, origin, where);
        else if (key == "power_tolerance") opts.power_tolerance = field_as<double>(value, origin, where);
        else if (key == "s_lo") opts.s_lo = field_as<double>(value, origin, where);
        else if (key == "s_hi") opts.s_hi = field_as<double>(value, origin, where);
        else if (key == "quad_order") opts.quad_order = field_as<int>(value, origin, where);
        else if (key == "seed") opts.seed = field_as<std::uint64_t>(value, origin, where);
        else if (key == "optimize_positions") opts.optimize_positions = field_as<bool>(value, origin, where);
        else bad_field(origin, where, "is not a recognized option");
    }
}

void parse_gain_search(const json& j, const std::string& origin, GainSearchOptions& gain) {
    for (const auto& [key, value] : j.items()) {
        const std::string where = "gain." + key;
        if (key == "delta_lo_db") gain.delta_lo_db = field_as<double>(value, origin, where);
        else if (key == "delta_hi_db") gain.delta_hi_db = field_as<double>(value, origin, where);
        else if (key == "delta_tol_db") gain.delta_tol_db = field_as<double>(value, origin, where);
        else if (key == "r2_points") gain.r2_points = field_as<int>(value, origin, where);
        else if (key == "restrict_to_positive") gain.restrict_to_positive = field_as<bool>(value, origin, where);
        else bad_field(origin, where, "is not a recognized option");
    }
}

GainPair parse_gain_pair(const json& j, const std::string& origin) {
    GainPair pair;
    for (const auto& [key, value] : j.items()) {
        const std::string where = "gains[]." + key;
        if (key == "a") {
            pair.a = field_as<std::string>(value, origin, where);
        } else if (key == "b") {
            if (value.is_string()) {
                pair.b.push_back(value.get<std::string>());
            } else if (value.is_array()) {
                for (const auto& e : value) pair.b.push_back(field_as<std::string>(e, origin, where));
            } else {
                bad_field(origin, where, "must be a tag or a list of tags");
            }
        } else {
            bad_field(origin, where, "is not a recognized option");
        }
    }
    return pair;
}

} // namespace

ExperimentConfig config_from_json_text(const std::string& text, const std::string& origin) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw config_error(origin + ": not valid JSON (" + e.what() + ")");
    }
    if (!j.is_object()) throw config_error(origin + ": top level must be an object");

    ExperimentConfig config;
    for (const auto& [key, value] : j.items()) {
        if (key == "name") config.name = field_as<std::string>(value, origin, key);
        else if (key == "m") config.m = field_as<int>(value, origin, key);
        else if (key == "snr1_db") config.snr1_db = field_as<double>(value, origin, key);
        else if (key == "snr2_db") config.snr2_db = field_as<double>(value, origin, key);
        else if (key == "power") config.power = field_as<double>(value, origin, key);
        else if (key == "strategies") config.strategies = field_as<std::vector<std::string>>(value, origin, key);
        else if (key == "theta_points") config.theta_points = field_as<int>(value, origin, key);
        else if (key == "out_dir") config.out_dir = field_as<std::string>(value, origin, key);
        else if (key == "seed") config.optimizer.seed = field_as<std::uint64_t>(value, origin, key);
        else if (key == "optimizer") parse_optimizer(value, origin, config.optimizer);
        else if (key == "gain") parse_gain_search(value, origin, config.gain);
        else if (key == "compute_mg_snr") config.compute_mg_snr = field_as<bool>(value, origin, key);
        else if (key == "compute_mg_r1") config.compute_mg_r1 = field_as<bool>(value, origin, key);
        else if (key == "probe_restarts") config.probe_restarts = field_as<int>(value, origin, key);
        else if (key == "probe_theta_points") config.probe_theta_points = field_as<int>(value, origin, key);
        else if (key == "gains") {
            if (!value.is_array()) bad_field(origin, key, "must be a list");
            for (const auto& e : value) config.gains.push_back(parse_gain_pair(e, origin));
        } else {
            bad_field(origin, key, "is not a recognized option");
        }
    }
    validate(config);
    return config;
}

ExperimentConfig config_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return config_from_json_text(text, path);
}

void validate(const ExperimentConfig& config) {
    const std::string& origin = config.name;
    if (!is_power_of_two(config.m) || config.m < 2) bad_field(origin, "m", "must be a power of two, >= 2");
    if (!(config.power > 0)) bad_field(origin, "power", "must be positive");
    if (!(config.snr1_db > config.snr2_db)) bad_field(origin, "snr1_db", "must exceed snr2_db");
    if (config.theta_points < 1) bad_field(origin, "theta_points", "must be at least 1");
    if (config.strategies.empty()) bad_field(origin, "strategies", "must not be empty");
    std::set<std::string> seen;
    for (const auto& tag : config.strategies) {
        if (!is_known_strategy_tag(tag)) bad_field(origin, "strategies", "contains unknown tag '" + tag + "'");
        if ((tag == "sm-optimized" || tag == "sm-uniform" || tag == "sc") && config.m < 4) {
            bad_field(origin, "strategies", "tag '" + tag + "' needs m >= 4");
        }
        if (!seen.insert(tag).second) bad_field(origin, "strategies", "repeats tag '" + tag + "'");
    }
    for (const auto& pair : config.gains) {
        if (!is_known_strategy_tag(pair.a)) bad_field(origin, "gains", "unknown tag '" + pair.a + "'");
        if (pair.b.empty()) bad_field(origin, "gains", "pair for '" + pair.a + "' lacks a baseline");
        for (const auto& b : pair.b) {
            if (!is_known_strategy_tag(b)) bad_field(origin, "gains", "unknown tag '" + b + "'");
        }
    }
    if (config.optimizer.restarts < 1) bad_field(origin, "optimizer.restarts", "must be >= 1");
    if (config.optimizer.quad_order < 8) bad_field(origin, "optimizer.quad_order", "must be >= 8");
    if (!(config.optimizer.s_lo >= 0) || !(config.optimizer.s_hi > config.optimizer.s_lo)) {
        bad_field(origin, "optimizer.s_lo", "needs 0 <= s_lo < s_hi");
    }
    if (!(config.gain.delta_tol_db > 0) || !(config.gain.delta_hi_db > config.gain.delta_lo_db) ||
        config.gain.delta_lo_db < 0) {
        bad_field(origin, "gain.delta_lo_db", "needs 0 <= delta_lo_db < delta_hi_db and a positive tolerance");
    }
    if (config.gain.r2_points < 2) bad_field(origin, "gain.r2_points", "must be at least 2");
    if (config.probe_restarts < 0) bad_field(origin, "probe_restarts", "must be >= 0");
}

} // namespace bcshape
