#include "bcshape/strategies.hpp"

#include "bcshape/errors.hpp"
#include "bcshape/mutual_info.hpp"
#include "bcshape/region.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace bcshape {

StrategyConstraint StrategyConstraint::general_sc(int m) {
    if (m < 1) throw std::domain_error("general_sc: M must be positive");
    StrategyConstraint c;
    c.kind = Kind::GeneralSC;
    c.probs_free = true;
    c.u_size = m;
    c.x_size = m;
    c.support.assign(static_cast<std::size_t>(m) * m, 1);
    return c;
}

StrategyConstraint StrategyConstraint::sm(int m1, int m2, bool probs_free) {
    StrategyConstraint c;
    c.kind = Kind::SM;
    c.m1 = m1;
    c.m2 = m2;
    c.probs_free = probs_free;
    c.u_size = m2;
    c.x_size = m1 * m2;
    c.support = sm_support(m1, m2);
    return c;
}

StrategyConstraint StrategyConstraint::time_sharing() {
    StrategyConstraint c;
    c.kind = Kind::TimeSharing;
    return c;
}

std::string StrategyConstraint::tag() const {
    switch (kind) {
        case Kind::GeneralSC: return "sc";
        case Kind::SM:
            return (probs_free ? std::string("sm-optimized(") : std::string("sm-uniform(")) +
                   std::to_string(m1) + "x" + std::to_string(m2) + ")";
        case Kind::TimeSharing: return "ts";
    }
    return "?";
}

std::vector<std::uint8_t> sm_support(int m1, int m2) {
    if (m1 < 2 || m2 < 2) throw std::domain_error("sm_support: need m1 >= 2 and m2 >= 2");
    const int m = m1 * m2;
    std::vector<std::uint8_t> mask(static_cast<std::size_t>(m2) * m, 0);
    for (int i = 0; i < m2; ++i) {
        for (int j = i * m1; j < (i + 1) * m1; ++j) {
            mask[static_cast<std::size_t>(i) * m + j] = 1;
        }
    }
    return mask;
}

JointDistribution uniform_sm_joint(int m1, int m2, int m) {
    if (m1 * m2 != m) throw std::domain_error("uniform_sm_joint: m1*m2 must equal M");
    const auto mask = sm_support(m1, m2);
    JointDistribution joint;
    joint.u_size = m2;
    joint.x_size = m;
    joint.probs.assign(mask.size(), 0.0);
    for (std::size_t t = 0; t < mask.size(); ++t) {
        if (mask[t]) joint.probs[t] = 1.0 / m;
    }
    return joint;
}

std::vector<std::pair<int, int>> enumerate_sm_configs(int m) {
    std::vector<std::pair<int, int>> configs;
    if (m < 4) return configs;
    if (!is_power_of_two(m)) throw std::domain_error("enumerate_sm_configs: M must be a power of two");
    for (int m2 = 2; m2 * 2 <= m; m2 *= 2) {
        configs.emplace_back(m / m2, m2);
    }
    return configs;
}

RegionFrontier ts_frontier(const BroadcastChannel& channel, int m,
                           const std::vector<double>& alpha_grid, const QuadratureSpec& quad) {
    if (!is_power_of_two(m) || m < 2) throw std::domain_error("ts_frontier: M must be a power of two, M >= 2");
    for (double a : alpha_grid) {
        if (!(a >= 0.0 && a <= 1.0)) throw std::domain_error("ts_frontier: alpha grid must lie in [0, 1]");
    }
    const auto [constellation, joint] = standard_pam(m, channel.power);
    const auto marg = marginals(joint);
    const double r1_bar = mi_x_y(constellation, marg.x, channel.sigma1_sq, quad);
    const double r2_bar = mi_x_y(constellation, marg.x, channel.sigma2_sq, quad);

    RegionFrontier frontier;
    frontier.channel = channel;
    frontier.label = "ts";
    frontier.points.reserve(alpha_grid.size());
    for (double alpha : alpha_grid) {
        FrontierPoint pt;
        pt.theta = alpha;
        pt.strategy = "ts";
        pt.r2 = (1.0 - alpha) * r2_bar;
        pt.r_total = alpha * r1_bar + pt.r2;
        frontier.points.push_back(std::move(pt));
    }
    std::sort(frontier.points.begin(), frontier.points.end(),
              [](const FrontierPoint& a, const FrontierPoint& b) { return a.r2 < b.r2; });
    return frontier;
}

} // namespace bcshape
