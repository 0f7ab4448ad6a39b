#include "bcshape/pipeline.hpp"

#include "bcshape/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcshape {

namespace {

/// Warm starts aligned with the theta grid, taken from a previous sweep of
/// the same constraint. Slots without a matching solved point stay empty and
/// are skipped by sweep_frontier.
std::vector<WarmStart> aligned_warm_starts(const RegionFrontier& raw,
                                           const std::vector<double>& theta_grid, int m) {
    std::vector<WarmStart> warm(theta_grid.size());
    for (const auto& pt : raw.points) {
        if (!pt.result) continue;
        for (std::size_t k = 0; k < theta_grid.size(); ++k) {
            if (std::abs(theta_grid[k] - pt.theta) < 1e-12) {
                warm[k] = WarmStart{pt.result->joint, pt.result->constellation};
                break;
            }
        }
    }
    // Mark empty slots with a size mismatch so the sweep ignores them.
    for (auto& w : warm) {
        if (w.joint.x_size != m) {
            w.joint = JointDistribution{};
            w.constellation = Constellation{};
        }
    }
    return warm;
}

} // namespace

std::vector<StrategyConstraint> constraints_for_tag(const std::string& tag, int m) {
    std::vector<StrategyConstraint> cs;
    if (tag == "sc") {
        cs.push_back(StrategyConstraint::general_sc(m));
    } else if (tag == "sm-optimized" || tag == "sm-uniform") {
        const bool free_probs = tag == "sm-optimized";
        for (const auto& [m1, m2] : enumerate_sm_configs(m)) {
            cs.push_back(StrategyConstraint::sm(m1, m2, free_probs));
        }
        if (cs.empty()) {
            throw std::domain_error("strategy '" + tag + "' needs M >= 4 for an SM split");
        }
    } else if (tag == "ts") {
        // handled by ts_frontier
    } else {
        throw std::domain_error("unknown strategy tag '" + tag + "'");
    }
    return cs;
}

bool is_known_strategy_tag(const std::string& tag) {
    return tag == "ts" || tag == "sc" || tag == "sm-optimized" || tag == "sm-uniform";
}

StrategyRun build_strategy(const BroadcastChannel& channel, int m, const std::string& tag,
                           int theta_points, const OptimizerOptions& opts) {
    StrategyRun run;
    run.tag = tag;

    if (tag == "ts") {
        const QuadratureSpec quad = gauss_hermite(opts.quad_order);
        RegionFrontier ts = ts_frontier(channel, m, linspace(0.0, 1.0, theta_points), quad);
        ts.label = "ts";
        run.raw_parts.push_back(ts);
        run.raw_all = ts;
        run.raw_all.label = tag;
        run.hull = upper_envelope(run.raw_all);
        return run;
    }

    run.constraints = constraints_for_tag(tag, m);
    const std::vector<double> theta_grid = linspace(0.0, 0.5, theta_points);

    run.raw_all.channel = channel;
    run.raw_all.label = tag;
    for (const auto& constraint : run.constraints) {
        RegionFrontier part = sweep_frontier(channel, constraint, m, theta_grid, opts);
        run.raw_all.points.insert(run.raw_all.points.end(), part.points.begin(), part.points.end());
        run.raw_all.failed_thetas.insert(run.raw_all.failed_thetas.end(),
                                         part.failed_thetas.begin(), part.failed_thetas.end());
        run.raw_parts.push_back(std::move(part));
    }
    std::sort(run.raw_all.points.begin(), run.raw_all.points.end(),
              [](const FrontierPoint& a, const FrontierPoint& b) { return a.r2 < b.r2; });
    if (run.raw_all.points.empty()) {
        throw bracket_error("build_strategy: every theta point failed for '" + tag + "'");
    }
    run.hull = upper_envelope(run.raw_all);
    run.hull.label = tag;
    return run;
}

FrontierBuilder make_shifted_builder(const BroadcastChannel& base, int m, const std::string& tag,
                                     int theta_points, const OptimizerOptions& probe_opts,
                                     const StrategyRun* warm_from) {
    // Own the warm-start payload: the builder may outlive the caller's run.
    std::vector<std::vector<WarmStart>> warm_lists;
    if (warm_from && tag != "ts") {
        const std::vector<double> theta_grid = linspace(0.0, 0.5, theta_points);
        for (const auto& part : warm_from->raw_parts) {
            warm_lists.push_back(aligned_warm_starts(part, theta_grid, m));
        }
    }

    return [base, m, tag, theta_points, probe_opts, warm_lists](double delta_db) {
        const BroadcastChannel shifted = shifted_channel(base, delta_db);
        if (tag == "ts") {
            const QuadratureSpec quad = gauss_hermite(probe_opts.quad_order);
            RegionFrontier ts = ts_frontier(shifted, m, linspace(0.0, 1.0, theta_points), quad);
            ts.label = tag;
            return upper_envelope(ts);
        }

        const auto constraints = constraints_for_tag(tag, m);
        const std::vector<double> theta_grid = linspace(0.0, 0.5, theta_points);
        RegionFrontier all;
        all.channel = shifted;
        all.label = tag;
        for (std::size_t c = 0; c < constraints.size(); ++c) {
            OptimizerOptions opts = probe_opts;
            if (c < warm_lists.size()) opts.warm_starts = warm_lists[c];
            RegionFrontier part = sweep_frontier(shifted, constraints[c], m, theta_grid, opts);
            all.points.insert(all.points.end(), part.points.begin(), part.points.end());
        }
        if (all.points.empty()) {
            throw bracket_error("shifted builder: every theta point failed for '" + tag + "'");
        }
        return upper_envelope(all);
    };
}

} // namespace bcshape
