#ifndef BCSHAPE_STRATEGIES_HPP
#define BCSHAPE_STRATEGIES_HPP

#include "bcshape/channel.hpp"
#include "bcshape/quadrature.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace bcshape {

struct RegionFrontier;

/// Structural restriction on the joint distribution. General superposition
/// coding uses |U| = M with full support; superposition modulation splits the
/// constellation into |U| = m2 contiguous blocks of m1 symbols each.
struct StrategyConstraint {
    enum class Kind { GeneralSC, SM, TimeSharing };

    Kind kind = Kind::GeneralSC;
    int m1 = 0;
    int m2 = 0;
    bool probs_free = true; ///< false: taps pinned at 1/M on the support
    int u_size = 0;
    int x_size = 0;
    std::vector<std::uint8_t> support; ///< u_size x x_size mask; empty for TimeSharing

    bool on_support(int i, int j) const { return support[static_cast<std::size_t>(i) * x_size + j] != 0; }

    static StrategyConstraint general_sc(int m);
    static StrategyConstraint sm(int m1, int m2, bool probs_free);
    static StrategyConstraint time_sharing();

    std::string tag() const;
};

/// Contiguous-block support mask of superposition modulation, m2 rows by
/// m1*m2 columns; row i covers columns [i*m1, (i+1)*m1).
std::vector<std::uint8_t> sm_support(int m1, int m2);

/// The uniform-tap SM joint: 1/M on the support, 0 elsewhere.
JointDistribution uniform_sm_joint(int m1, int m2, int m);

/// All SM factorizations m1*m2 = M with m1, m2 >= 2, ordered by m2 ascending.
/// Empty for M < 4.
std::vector<std::pair<int, int>> enumerate_sm_configs(int m);

/// Time-sharing frontier for the power-normalized standard M-PAM:
/// (R1+R2, R2) = (alpha R1b + (1-alpha) R2b, (1-alpha) R2b) over the alpha
/// grid, where Rib is the point-to-point rate at sigma_i^2.
RegionFrontier ts_frontier(const BroadcastChannel& channel, int m,
                           const std::vector<double>& alpha_grid, const QuadratureSpec& quad);

} // namespace bcshape

#endif
