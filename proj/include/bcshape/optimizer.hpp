#ifndef BCSHAPE_OPTIMIZER_HPP
#define BCSHAPE_OPTIMIZER_HPP

#include "bcshape/channel.hpp"
#include "bcshape/quadrature.hpp"
#include "bcshape/strategies.hpp"

#include <cstdint>
#include <vector>

namespace bcshape {

struct StepRule {
    double init;   ///< first trial step
    double grow;   ///< multiplier after an accepted step
    double shrink; ///< multiplier after a rejected step
    double min;    ///< below this the step is treated as stationary
};

struct WarmStart {
    JointDistribution joint;
    Constellation constellation;
};

struct OptimizerOptions {
    int max_outer_iters = 60;     ///< multiplier bisection steps
    int max_alt_iters = 2000;     ///< alternating ascent steps per multiplier value
    StepRule prob_step{2.0, 1.5, 0.5, 1e-14};
    StepRule pos_step{0.1, 1.5, 0.5, 1e-16};
    double s_lo = 0.0;            ///< multiplier bracket
    double s_hi = 10.0;
    double power_tolerance = 1e-4;
    double objective_tolerance = 1e-8;
    int restarts = 8;
    std::uint64_t seed = 1;
    int quad_order = kDefaultQuadOrder;
    bool optimize_positions = true;
    /// Extra initial iterates tried before the standard and randomized
    /// starts; useful for warm starting from a neighboring solve.
    std::vector<WarmStart> warm_starts;
};

struct OptResult {
    JointDistribution joint;
    Constellation constellation;
    double r1 = 0.0;            ///< I(X;Y1|U), bits
    double r2 = 0.0;            ///< I(U;Y2), bits
    double objective = 0.0;     ///< theta r1 + (1-theta) r2, bits
    double multiplier_s = 0.0;
    double achieved_power = 0.0;
    bool converged = false;
    int iterations = 0;
    bool power_warning = false;     ///< non-monotone power detected in the bracket
    bool position_clamped = false;  ///< symbols were pushed apart to keep ordering
};

/// One exponentiated-gradient ascent step on the masked simplex of the
/// Lagrangian L = f + s (P - sum p x^2); never decreases L, falls back to the
/// input when no improving step exists.
JointDistribution ascend_probabilities(const JointDistribution& joint, const Constellation& constellation,
                                       const BroadcastChannel& channel, double theta, double s,
                                       const std::vector<std::uint8_t>& mask, const OptimizerOptions& opts);

/// One gradient ascent step on the mirrored nonnegative half of the symbol
/// positions; keeps the constellation symmetric and strictly increasing.
Constellation ascend_positions(const JointDistribution& joint, const Constellation& constellation,
                               const BroadcastChannel& channel, double theta, double s,
                               const OptimizerOptions& opts);

/// Alternating maximization at a fixed theta under the strategy constraint,
/// with bisection on the power multiplier; single initialization (the first
/// warm start if provided, otherwise the standard one).
OptResult solve_multiplier(const BroadcastChannel& channel, double theta,
                           const StrategyConstraint& constraint, int m, const OptimizerOptions& opts);

/// Best feasible stationary point across restarts (warm starts, the standard
/// start, then seeded random starts). Deterministic for fixed options.
OptResult optimize_rates(const BroadcastChannel& channel, double theta,
                         const StrategyConstraint& constraint, int m, const OptimizerOptions& opts);

} // namespace bcshape

#endif
