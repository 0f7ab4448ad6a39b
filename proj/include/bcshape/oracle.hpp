#ifndef BCSHAPE_ORACLE_HPP
#define BCSHAPE_ORACLE_HPP

#include "bcshape/channel.hpp"
#include "bcshape/optimizer.hpp"
#include "bcshape/strategies.hpp"

#include <cstdint>

namespace bcshape {

enum class MiKind { XY, UY, XGivenU };

struct McEstimate {
    double value = 0.0;     ///< bits
    double std_error = 0.0; ///< bits
    std::int64_t samples = 0;
    std::uint64_t seed = 0;
};

/// Sample-mean estimator of the matching log-ratio expectation, driven by the
/// counter-based stream (3 counters per sample: one categorical draw, one
/// Box-Muller pair). Standard error is the jackknife value, which for a plain
/// mean is the sample standard deviation over sqrt(n).
McEstimate mc_mutual_info(const JointDistribution& joint, const Constellation& constellation,
                          double sigma_sq, MiKind which, std::int64_t samples, std::uint64_t seed);

/// Exhaustive maximum of the power-feasible objective over a discretized
/// simplex (step grid_step) times discretized symmetric positions. Ties break
/// by lexicographic enumeration order. A test-scale tool: the point count is
/// guarded at 1e8.
OptResult grid_search_optimize(const BroadcastChannel& channel, double theta,
                               const StrategyConstraint& constraint, int m, double grid_step,
                               bool optimize_positions = true, int quad_order = kDefaultQuadOrder);

} // namespace bcshape

#endif
