#include "bcshape/region.hpp"

#include "bcshape/errors.hpp"
#include "bcshape/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcshape {

namespace {

constexpr double kCollinearSlack = 1e-12;

double cross(const FrontierPoint& a, const FrontierPoint& b, const FrontierPoint& c) {
    return (b.r2 - a.r2) * (c.r_total - a.r_total) - (b.r_total - a.r_total) * (c.r2 - a.r2);
}

void sort_points(std::vector<FrontierPoint>& pts) {
    std::sort(pts.begin(), pts.end(), [](const FrontierPoint& a, const FrontierPoint& b) {
        if (a.r2 != b.r2) return a.r2 < b.r2;
        return a.r_total > b.r_total;
    });
}

} // namespace

double RegionFrontier::max_r2() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) v = std::max(v, p.r2);
    return v;
}

double RegionFrontier::max_r_total() const {
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& p : points) v = std::max(v, p.r_total);
    return v;
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v;
    if (n <= 0) return v;
    if (n == 1) {
        v.push_back(lo);
        return v;
    }
    v.resize(n);
    for (int k = 0; k < n; ++k) v[k] = lo + (hi - lo) * k / (n - 1);
    return v;
}

RegionFrontier sweep_frontier(const BroadcastChannel& channel, const StrategyConstraint& constraint,
                              int m, const std::vector<double>& theta_grid, const OptimizerOptions& opts) {
    for (std::size_t k = 0; k < theta_grid.size(); ++k) {
        if (!(theta_grid[k] >= 0.0 && theta_grid[k] <= 0.5)) {
            throw std::domain_error("sweep_frontier: theta grid must lie in [0, 0.5]");
        }
        if (k > 0 && theta_grid[k] < theta_grid[k - 1]) {
            throw std::domain_error("sweep_frontier: theta grid must be ascending");
        }
    }

    RegionFrontier frontier;
    frontier.channel = channel;
    frontier.label = constraint.tag();

    std::vector<std::optional<FrontierPoint>> slots(theta_grid.size());
    std::vector<double> failures(theta_grid.size(), std::numeric_limits<double>::quiet_NaN());

    parallel_for(theta_grid.size(), [&](std::size_t k) {
        const double theta = theta_grid[k];
        OptimizerOptions local = opts;
        if (k < opts.warm_starts.size()) {
            // Per-theta warm start: slot k of the caller-provided list.
            local.warm_starts = {opts.warm_starts[k]};
        } else {
            local.warm_starts.clear();
        }
        try {
            OptResult res = optimize_rates(channel, theta, constraint, m, local);
            FrontierPoint pt;
            pt.r_total = res.r1 + res.r2;
            pt.r2 = res.r2;
            pt.theta = theta;
            pt.strategy = constraint.tag();
            pt.converged = res.converged;
            pt.result = std::move(res);
            slots[k] = std::move(pt);
        } catch (const std::exception&) {
            failures[k] = theta;
        }
    });

    for (std::size_t k = 0; k < slots.size(); ++k) {
        if (slots[k]) {
            frontier.points.push_back(std::move(*slots[k]));
        } else if (!std::isnan(failures[k])) {
            frontier.failed_thetas.push_back(failures[k]);
        }
    }
    sort_points(frontier.points);
    return frontier;
}

RegionFrontier upper_envelope(const RegionFrontier& frontier) {
    if (frontier.points.empty()) throw std::domain_error("upper_envelope: need at least one point");

    std::vector<FrontierPoint> pts = frontier.points;
    sort_points(pts);

    // Monotone chain over (r2, r_total); a middle point is dropped only when
    // strictly below the chord of its neighbors, so collinear runs survive.
    std::vector<FrontierPoint> hull;
    for (const auto& p : pts) {
        if (!hull.empty() && p.r2 == hull.back().r2) continue; // dominated duplicate abscissa
        while (hull.size() >= 2 && cross(hull[hull.size() - 2], hull.back(), p) > kCollinearSlack) {
            hull.pop_back();
        }
        hull.push_back(p);
    }

    RegionFrontier out;
    out.channel = frontier.channel;
    out.label = frontier.label;
    out.enveloped = true;
    out.points = std::move(hull);
    out.failed_thetas = frontier.failed_thetas;
    return out;
}

double hull_max_r_total_at(const RegionFrontier& hull, double r2) {
    if (!hull.enveloped) throw std::domain_error("hull_max_r_total_at: frontier must be enveloped");
    const auto& pts = hull.points;
    if (pts.empty() || r2 > pts.back().r2) return -std::numeric_limits<double>::infinity();

    // Peak of the concave chain; left of it the best move is to sit at the
    // peak and discard rate.
    std::size_t peak = 0;
    for (std::size_t k = 1; k < pts.size(); ++k) {
        if (pts[k].r_total > pts[peak].r_total) peak = k;
    }
    if (r2 <= pts[peak].r2) return pts[peak].r_total;

    const auto it = std::lower_bound(pts.begin(), pts.end(), r2, [](const FrontierPoint& p, double v) {
        return p.r2 < v;
    });
    if (it == pts.begin()) return it->r_total;
    if (it == pts.end()) return pts.back().r_total;
    const auto& b = *it;
    const auto& a = *(it - 1);
    if (b.r2 == a.r2) return std::max(a.r_total, b.r_total);
    const double t = (r2 - a.r2) / (b.r2 - a.r2);
    return a.r_total + t * (b.r_total - a.r_total);
}

bool region_contains(const RegionFrontier& hull, double r_total, double r2, double slack) {
    if (r2 < 0.0 || r_total < 0.0) return true;
    if (hull.points.empty()) return false;
    if (r2 > hull.points.back().r2 + slack) return false;
    const double cap = hull_max_r_total_at(hull, std::min(r2, hull.points.back().r2));
    return r_total <= cap + slack;
}

RegionFrontier union_frontier(const RegionFrontier& a, const RegionFrontier& b) {
    if (!same_channel(a.channel, b.channel)) {
        throw std::domain_error("union_frontier: frontiers belong to different channels");
    }
    RegionFrontier merged;
    merged.channel = a.channel;
    merged.label = a.label == b.label ? a.label : a.label + "+" + b.label;
    merged.points = a.points;
    merged.points.insert(merged.points.end(), b.points.begin(), b.points.end());
    merged.failed_thetas = a.failed_thetas;
    merged.failed_thetas.insert(merged.failed_thetas.end(), b.failed_thetas.begin(),
                                b.failed_thetas.end());
    return upper_envelope(merged);
}

} // namespace bcshape
