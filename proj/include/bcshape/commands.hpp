#ifndef BCSHAPE_COMMANDS_HPP
#define BCSHAPE_COMMANDS_HPP

#include "bcshape/config.hpp"

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace bcshape {

/// Computes and persists one frontier file pair (raw + enveloped) per
/// strategy plus the combined plot file. Returns 0, or 3 when fewer than 90%
/// of the sweep points converged.
int cmd_region(const ExperimentConfig& config, std::ostream& log);

/// Gain report for strategy `a` against baseline `b` (union when b has
/// several tags); writes the sample CSV and prints the maxima.
int cmd_gain(const ExperimentConfig& config, const std::string& a,
             const std::vector<std::string>& b, std::ostream& log);

struct MiRequest {
    Constellation constellation;
    JointDistribution joint;   ///< empty x_size means marginal-only input
    std::vector<double> x_marginal;
    double sigma_sq = 1.0;
    std::string which = "x_y"; ///< x_y | u_y | x_y_given_u
    int quad_order = kDefaultQuadOrder;
    std::int64_t mc_samples = 1000000;
    std::uint64_t seed = 1;
};

MiRequest mi_request_from_json_file(const std::string& path);

/// Prints the quadrature value and, when with_mc, the Monte Carlo estimate
/// with its standard error.
int cmd_mi(const MiRequest& request, bool with_mc, std::ostream& log);

} // namespace bcshape

#endif
