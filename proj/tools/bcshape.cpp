#include "bcshape/commands.hpp"
#include "bcshape/config.hpp"
#include "bcshape/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::vector<std::string> strategies;
    std::string out_dir;
    std::int64_t seed = -1;
    int quad_order = 0;
    int theta_points = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "experiment config JSON file");
    cmd->add_option("--preset", args.preset, "named preset (see --list-presets)");
    cmd->add_option("--strategy", args.strategies, "strategy tag, repeatable; overrides the config list");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "optimizer seed");
    cmd->add_option("--quad-order", args.quad_order, "Gauss-Hermite order");
    cmd->add_option("--theta-points", args.theta_points, "points on the theta (or alpha) grid");
}

bcshape::ExperimentConfig resolve_config(const CommonArgs& args) {
    if (!args.config_path.empty() && !args.preset.empty()) {
        throw bcshape::config_error("give either --config or --preset, not both");
    }
    bcshape::ExperimentConfig config;
    if (!args.config_path.empty()) {
        config = bcshape::config_from_json_file(args.config_path);
    } else if (!args.preset.empty()) {
        config = bcshape::preset_config(args.preset);
    } else {
        throw bcshape::config_error("one of --config or --preset is required");
    }
    if (!args.strategies.empty()) config.strategies = args.strategies;
    if (!args.out_dir.empty()) config.out_dir = args.out_dir;
    if (args.seed >= 0) config.optimizer.seed = static_cast<std::uint64_t>(args.seed);
    if (args.quad_order > 0) config.optimizer.quad_order = args.quad_order;
    if (args.theta_points > 0) config.theta_points = args.theta_points;
    bcshape::validate(config);
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Achievable rate regions for the two-user AWGN broadcast channel with PAM constellations"};
    app.require_subcommand(0, 1);

    bool list_presets = false;
    app.add_flag("--list-presets", list_presets, "print the preset catalog and exit");

    CommonArgs region_args;
    CLI::App* region = app.add_subcommand("region", "sweep and persist achievable-rate frontiers");
    add_common(region, region_args);

    CommonArgs gain_args;
    std::string gain_a;
    std::vector<std::string> gain_b;
    CLI::App* gain = app.add_subcommand("gain", "shaping-gain and rate-gain report for a strategy pair");
    add_common(gain, gain_args);
    gain->add_option("--a", gain_a, "strategy A (the improved scheme)");
    gain->add_option("--b", gain_b, "baseline strategy B, repeatable for a union baseline");

    std::string mi_path;
    bool mi_mc = false;
    int mi_quad = 0;
    CLI::App* mi = app.add_subcommand("mi", "evaluate one mutual-information term");
    mi->add_option("--config", mi_path, "mi request JSON file")->required();
    mi->add_flag("--mc", mi_mc, "also run the Monte Carlo estimator");
    mi->add_option("--quad-order", mi_quad, "Gauss-Hermite order");

    CLI11_PARSE(app, argc, argv);

    try {
        if (list_presets) {
            for (const auto& name : bcshape::preset_names()) std::cout << name << "\n";
            return 0;
        }
        if (region->parsed()) {
            return bcshape::cmd_region(resolve_config(region_args), std::cout);
        }
        if (gain->parsed()) {
            bcshape::ExperimentConfig config = resolve_config(gain_args);
            std::vector<std::pair<std::string, std::vector<std::string>>> pairs;
            if (!gain_a.empty()) {
                if (gain_b.empty()) throw bcshape::config_error("--a requires at least one --b");
                pairs.emplace_back(gain_a, gain_b);
            } else {
                if (config.gains.empty()) {
                    throw bcshape::config_error("no gain pair: give --a/--b or configure 'gains'");
                }
                for (const auto& pair : config.gains) pairs.emplace_back(pair.a, pair.b);
            }
            int rc = 0;
            for (const auto& [a, b] : pairs) {
                rc = std::max(rc, bcshape::cmd_gain(config, a, b, std::cout));
            }
            return rc;
        }
        if (mi->parsed()) {
            bcshape::MiRequest req = bcshape::mi_request_from_json_file(mi_path);
            if (mi_quad > 0) req.quad_order = mi_quad;
            return bcshape::cmd_mi(req, mi_mc, std::cout);
        }
        std::cout << app.help();
        return 0;
    } catch (const bcshape::config_error& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const bcshape::bracket_error& e) {
        std::cerr << "solver error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "invalid input: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
