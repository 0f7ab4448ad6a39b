#ifndef BCSHAPE_PIPELINE_HPP
#define BCSHAPE_PIPELINE_HPP

#include "bcshape/metrics.hpp"
#include "bcshape/optimizer.hpp"
#include "bcshape/region.hpp"
#include "bcshape/strategies.hpp"

#include <string>
#include <vector>

namespace bcshape {

/// A strategy's computed frontier: per-constraint sweeps (superposition
/// modulation contributes one per (m1, m2) split), the pooled raw points, and
/// the enveloped union.
struct StrategyRun {
    std::string tag;
    std::vector<StrategyConstraint> constraints;
    std::vector<RegionFrontier> raw_parts;
    RegionFrontier raw_all;
    RegionFrontier hull;
};

/// Constraints behind a CLI strategy tag: "sc", "sm-optimized", "sm-uniform"
/// expand per SM split; "ts" yields none (handled without the optimizer).
std::vector<StrategyConstraint> constraints_for_tag(const std::string& tag, int m);

bool is_known_strategy_tag(const std::string& tag);

StrategyRun build_strategy(const BroadcastChannel& channel, int m, const std::string& tag,
                           int theta_points, const OptimizerOptions& opts);

/// Frontier builder for shaping-gain probes: rebuilds the strategy at the
/// SNR-shifted channel, warm starting each theta from warm_from when given.
/// probe_opts typically runs fewer restarts than the base build.
FrontierBuilder make_shifted_builder(const BroadcastChannel& base, int m, const std::string& tag,
                                     int theta_points, const OptimizerOptions& probe_opts,
                                     const StrategyRun* warm_from);

} // namespace bcshape

#endif
