#include "bcshape/commands.hpp"

#include "bcshape/errors.hpp"
#include "bcshape/io.hpp"
#include "bcshape/mutual_info.hpp"
#include "bcshape/oracle.hpp"
#include "bcshape/pipeline.hpp"

#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <map>

namespace bcshape {

namespace {

using nlohmann::json;

std::string strategy_file_tag(std::string tag) {
    for (char& c : tag) {
        if (c == '(' || c == ')' || c == ',') c = '_';
    }
    return tag;
}

BroadcastChannel channel_of(const ExperimentConfig& config) {
    return channel_from_snr(config.snr1_db, config.snr2_db, config.power);
}

std::map<std::string, StrategyRun> build_strategies(const ExperimentConfig& config,
                                                    const std::vector<std::string>& tags,
                                                    std::ostream& log) {
    const BroadcastChannel channel = channel_of(config);
    std::map<std::string, StrategyRun> runs;
    for (const auto& tag : tags) {
        if (runs.count(tag)) continue;
        log << "building " << tag << " frontier (m=" << config.m << ", snr=" << config.snr1_db
            << "/" << config.snr2_db << " dB)\n";
        runs.emplace(tag, build_strategy(channel, config.m, tag, config.theta_points, config.optimizer));
    }
    return runs;
}

} // namespace

int cmd_region(const ExperimentConfig& config, std::ostream& log) {
    validate(config);
    std::filesystem::create_directories(config.out_dir);
    const auto runs = build_strategies(config, config.strategies, log);

    std::size_t total = 0, converged = 0;
    std::vector<const RegionFrontier*> hulls;
    for (const auto& tag : config.strategies) {
        const StrategyRun& run = runs.at(tag);
        const std::string stem = config.out_dir + "/" + config.name + "_" + strategy_file_tag(tag);
        write_frontier_csv(stem + "_raw.csv", {&run.raw_all});
        write_frontier_csv(stem + "_hull.csv", {&run.hull});
        hulls.push_back(&run.hull);

        total += run.raw_all.points.size() + run.raw_all.failed_thetas.size();
        for (const auto& pt : run.raw_all.points) converged += pt.converged ? 1 : 0;
    }
    write_frontier_csv(config.out_dir + "/" + config.name + "_frontiers.csv", hulls);

    const double rate = total ? static_cast<double>(converged) / total : 1.0;
    log << "wrote " << config.strategies.size() << " strategy frontier(s) to " << config.out_dir
        << " (" << converged << "/" << total << " points converged)\n";
    return rate >= 0.9 ? 0 : 3;
}

int cmd_gain(const ExperimentConfig& config, const std::string& a,
             const std::vector<std::string>& b, std::ostream& log) {
    validate(config);
    if (!is_known_strategy_tag(a)) throw config_error("gain: unknown strategy tag '" + a + "'");
    for (const auto& tag : b) {
        if (!is_known_strategy_tag(tag)) throw config_error("gain: unknown strategy tag '" + tag + "'");
    }
    if (b.empty()) throw config_error("gain: baseline list is empty");
    std::filesystem::create_directories(config.out_dir);

    std::vector<std::string> tags{a};
    tags.insert(tags.end(), b.begin(), b.end());
    const auto runs = build_strategies(config, tags, log);
    const BroadcastChannel channel = channel_of(config);

    const RegionFrontier& a_hull = runs.at(a).hull;
    RegionFrontier b_hull = runs.at(b.front()).hull;
    for (std::size_t k = 1; k < b.size(); ++k) b_hull = union_frontier(b_hull, runs.at(b[k]).hull);

    const std::vector<double> r2_grid = default_r2_grid(a_hull, config.gain.r2_points);

    GainReport report;
    if (config.compute_mg_r1) {
        report = max_rate_gain(a_hull, b_hull, r2_grid, config.gain);
    }
    if (config.compute_mg_snr) {
        OptimizerOptions probe = config.optimizer;
        if (config.probe_restarts > 0) probe.restarts = config.probe_restarts;

        std::vector<FrontierBuilder> builders;
        for (const auto& tag : b) {
            builders.push_back(make_shifted_builder(channel, config.m, tag,
                                                    config.effective_probe_theta_points(), probe,
                                                    &runs.at(tag)));
        }
        FrontierBuilder combined = [builders](double delta_db) {
            RegionFrontier f = builders.front()(delta_db);
            for (std::size_t k = 1; k < builders.size(); ++k) {
                f = union_frontier(f, builders[k](delta_db));
            }
            return f;
        };
        CachedFrontierBuilder cached(std::move(combined));
        GainReport snr_report = max_shaping_gain(a_hull, cached, channel, r2_grid, config.gain);
        if (report.samples.empty()) {
            report = std::move(snr_report);
        } else {
            for (std::size_t k = 0; k < report.samples.size(); ++k) {
                report.samples[k].delta_snr_db = snr_report.samples[k].delta_snr_db;
                report.samples[k].delta_unbounded = snr_report.samples[k].delta_unbounded;
            }
            report.mg_snr_db = snr_report.mg_snr_db;
            report.mg_snr_argmax_r2 = snr_report.mg_snr_argmax_r2;
        }
    }
    report.tag_a = a;
    report.tag_b = b.front();
    for (std::size_t k = 1; k < b.size(); ++k) report.tag_b += "+" + b[k];
    report.channel = channel;
    report.delta_snr_db_gap = channel.snr1_db - channel.snr2_db;

    std::string path = config.out_dir + "/" + config.name + "_gain_" + strategy_file_tag(a) + "_vs_";
    path += strategy_file_tag(report.tag_b) + ".csv";
    write_gain_csv(path, report);

    log << "gain " << a << " vs " << report.tag_b << ":";
    if (config.compute_mg_snr) log << " mg_snr_db=" << report.mg_snr_db;
    if (config.compute_mg_r1) {
        log << " mg_r1_percent=" << report.mg_r1_percent
            << " (unrestricted " << report.mg_r1_unrestricted_percent << ")";
    }
    log << "\n";
    return 0;
}

MiRequest mi_request_from_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open mi request '" + path + "'");
    json j;
    try {
        j = json::parse(in);
    } catch (const json::exception& e) {
        throw config_error(path + ": not valid JSON (" + e.what() + ")");
    }

    MiRequest req;
    bool have_sigma = false;
    double snr_db = 0.0, power = 1.0;
    bool have_snr = false;
    for (const auto& [key, value] : j.items()) {
        try {
            if (key == "constellation") {
                req.constellation.symbols = value.get<std::vector<double>>();
            } else if (key == "joint") {
                const auto rows = value.get<std::vector<std::vector<double>>>();
                req.joint.u_size = static_cast<int>(rows.size());
                req.joint.x_size = rows.empty() ? 0 : static_cast<int>(rows.front().size());
                for (const auto& row : rows) {
                    if (static_cast<int>(row.size()) != req.joint.x_size) {
                        throw config_error(path + ": field 'joint' rows differ in length");
                    }
                    req.joint.probs.insert(req.joint.probs.end(), row.begin(), row.end());
                }
            } else if (key == "x_marginal") {
                req.x_marginal = value.get<std::vector<double>>();
            } else if (key == "sigma_sq") {
                req.sigma_sq = value.get<double>();
                have_sigma = true;
            } else if (key == "snr_db") {
                snr_db = value.get<double>();
                have_snr = true;
            } else if (key == "power") {
                power = value.get<double>();
            } else if (key == "which") {
                req.which = value.get<std::string>();
            } else if (key == "quad_order") {
                req.quad_order = value.get<int>();
            } else if (key == "mc_samples") {
                req.mc_samples = value.get<std::int64_t>();
            } else if (key == "seed") {
                req.seed = value.get<std::uint64_t>();
            } else {
                throw config_error(path + ": field '" + key + "' is not recognized");
            }
        } catch (const json::exception&) {
            throw config_error(path + ": field '" + key + "' has the wrong type");
        }
    }
    if (have_snr) {
        if (have_sigma) throw config_error(path + ": give either 'sigma_sq' or 'snr_db', not both");
        req.sigma_sq = power * std::pow(10.0, -snr_db / 10.0);
    } else if (!have_sigma) {
        throw config_error(path + ": field 'sigma_sq' (or 'snr_db') is required");
    }
    if (req.which != "x_y" && req.which != "u_y" && req.which != "x_y_given_u") {
        throw config_error(path + ": field 'which' must be x_y, u_y, or x_y_given_u");
    }
    if (req.constellation.symbols.empty()) {
        throw config_error(path + ": field 'constellation' is required");
    }
    if (req.which != "x_y" && req.joint.x_size == 0) {
        throw config_error(path + ": field 'joint' is required for " + req.which);
    }
    return req;
}

int cmd_mi(const MiRequest& request, bool with_mc, std::ostream& log) {
    const QuadratureSpec quad = gauss_hermite(request.quad_order);

    double value = 0.0;
    MiKind kind = MiKind::XY;
    JointDistribution joint = request.joint;
    if (request.which == "x_y") {
        std::vector<double> marginal = request.x_marginal;
        if (marginal.empty() && joint.x_size > 0) marginal = marginals(joint).x;
        if (marginal.empty()) {
            marginal.assign(request.constellation.symbols.size(),
                            1.0 / static_cast<double>(request.constellation.symbols.size()));
        }
        value = mi_x_y(request.constellation, marginal, request.sigma_sq, quad);
        if (joint.x_size == 0) {
            // Equivalent deterministic coupling, for the Monte Carlo path.
            joint.u_size = static_cast<int>(marginal.size());
            joint.x_size = joint.u_size;
            joint.probs.assign(static_cast<std::size_t>(joint.u_size) * joint.x_size, 0.0);
            for (int i = 0; i < joint.u_size; ++i) joint.at(i, i) = marginal[i];
        }
    } else if (request.which == "u_y") {
        kind = MiKind::UY;
        value = mi_u_y(joint, request.constellation, request.sigma_sq, quad);
    } else {
        kind = MiKind::XGivenU;
        value = mi_x_y_given_u(joint, request.constellation, request.sigma_sq, quad);
    }

    log << request.which << " = " << format_g17(value) << " bits (quadrature order "
        << request.quad_order << ")\n";
    if (with_mc) {
        const McEstimate mc =
            mc_mutual_info(joint, request.constellation, request.sigma_sq, kind, request.mc_samples,
                           request.seed);
        log << request.which << " = " << format_g17(mc.value) << " +/- " << format_g17(mc.std_error)
            << " bits (monte carlo, n=" << mc.samples << ", seed=" << mc.seed << ")\n";
    }
    return 0;
}

} // namespace bcshape
