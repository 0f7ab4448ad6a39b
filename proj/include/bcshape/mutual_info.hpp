#ifndef BCSHAPE_MUTUAL_INFO_HPP
#define BCSHAPE_MUTUAL_INFO_HPP

#include "bcshape/channel.hpp"
#include "bcshape/quadrature.hpp"

#include <vector>

namespace bcshape {

/// I(X;Y) in bits for a discrete input over AWGN, clamped to [0, log2 M].
double mi_x_y(const Constellation& constellation, const std::vector<double>& x_marginal,
              double sigma_sq, const QuadratureSpec& quad);

/// I(U;Y) in bits with cloud conditionals p(y|u_i), clamped to [0, log2 |U|].
double mi_u_y(const JointDistribution& joint, const Constellation& constellation,
              double sigma_sq, const QuadratureSpec& quad);

/// I(X;Y|U) in bits, the P(u)-weighted point-to-point informations of the
/// conditional rows; zero-mass rows contribute zero. Clamped to [0, log2 M].
double mi_x_y_given_u(const JointDistribution& joint, const Constellation& constellation,
                      double sigma_sq, const QuadratureSpec& quad);

struct ObjectiveEval {
    double value = 0.0;                ///< bits
    std::vector<double> grad_probs;    ///< |U| x M, d value / d p_ij
    std::vector<double> grad_symbols;  ///< M, d value / d x_j
};

/// Weighted objective theta * I(X;Y1|U) + (1-theta) * I(U;Y2) together with
/// its analytic gradients. The gradients differentiate the
/// quadrature-discretized objective itself (including the dependence of the
/// evaluation points on the symbol positions), so central finite differences
/// of `objective_value` reproduce them to float precision.
///
/// The tables are treated as raw nonnegative weights: the simplex constraint
/// is the caller's concern, which keeps the function well-defined under the
/// small off-simplex perturbations used by finite-difference checks.
ObjectiveEval objective_and_gradients(const JointDistribution& joint, const Constellation& constellation,
                                      const BroadcastChannel& channel, double theta,
                                      const QuadratureSpec& quad);

/// Objective only; cheaper, used by line searches.
double objective_value(const JointDistribution& joint, const Constellation& constellation,
                       const BroadcastChannel& channel, double theta, const QuadratureSpec& quad);

/// The two rate coordinates of an operating point, in bits:
/// r1 = I(X;Y1|U) at sigma1_sq, r2 = I(U;Y2) at sigma2_sq.
std::pair<double, double> rate_pair(const JointDistribution& joint, const Constellation& constellation,
                                    const BroadcastChannel& channel, const QuadratureSpec& quad);

} // namespace bcshape

#endif
