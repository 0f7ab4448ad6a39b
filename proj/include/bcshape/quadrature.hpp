#ifndef BCSHAPE_QUADRATURE_HPP
#define BCSHAPE_QUADRATURE_HPP

#include <vector>

namespace bcshape {

inline constexpr int kDefaultQuadOrder = 96;

/// Gauss-Hermite rule recentred per mixture component: for g smooth,
///   integral of N(y; mu, sigma^2) g(y) dy  ~=  sum_n weights[n] * g(mu + sqrt(2) sigma * nodes[n]).
/// Weights are normalized, so they sum to 1 and act as probabilities of a
/// discretized standard normal.
struct QuadratureSpec {
    int order = 0;
    std::vector<double> nodes;
    std::vector<double> weights;
};

/// Nodes and weights by Golub-Welsch on the Hermite Jacobi matrix.
QuadratureSpec gauss_hermite(int order = kDefaultQuadOrder);

} // namespace bcshape

#endif
