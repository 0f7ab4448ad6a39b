#ifndef BCSHAPE_REGION_HPP
#define BCSHAPE_REGION_HPP

#include "bcshape/channel.hpp"
#include "bcshape/optimizer.hpp"
#include "bcshape/strategies.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bcshape {

/// One operating point in the common-message accounting: user 1 decodes both
/// messages (r_total = R1 + R2), user 2 decodes r2 = R2.
struct FrontierPoint {
    double r_total = 0.0;
    double r2 = 0.0;
    double theta = 0.0; ///< sweep weight; holds alpha for time sharing
    std::string strategy;
    bool converged = true;
    std::optional<OptResult> result;
};

struct RegionFrontier {
    BroadcastChannel channel{};
    std::string label;
    bool enveloped = false;
    std::vector<FrontierPoint> points;  ///< sorted by r2 ascending
    std::vector<double> failed_thetas;  ///< sweep weights whose solve threw

    double max_r2() const;
    double max_r_total() const;
};

/// One optimize_rates call per theta, mapped to (r1+r2, r2). Per-point
/// failures are recorded and skipped, never aborting the sweep.
RegionFrontier sweep_frontier(const BroadcastChannel& channel, const StrategyConstraint& constraint,
                              int m, const std::vector<double>& theta_grid, const OptimizerOptions& opts);

/// Upper concave envelope in the (r2, r_total) plane. Points strictly below a
/// chord of two others are dropped; collinear points are retained.
RegionFrontier upper_envelope(const RegionFrontier& frontier);

/// Largest r_total achievable at the given r2 by hull points, chords, or by
/// discarding rate (moving left of the hull). -infinity beyond the hull's
/// maximal r2.
double hull_max_r_total_at(const RegionFrontier& hull, double r2);

/// Dominance test against an enveloped frontier.
bool region_contains(const RegionFrontier& hull, double r_total, double r2, double slack = 1e-9);

/// Envelope of the union of two frontiers over the same channel.
RegionFrontier union_frontier(const RegionFrontier& a, const RegionFrontier& b);

std::vector<double> linspace(double lo, double hi, int n);

} // namespace bcshape

#endif
