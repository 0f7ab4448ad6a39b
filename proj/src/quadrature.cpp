#include "bcshape/quadrature.hpp"

#include <Eigen/Dense>

#include <stdexcept>
#include <string>

namespace bcshape {

QuadratureSpec gauss_hermite(int order) {
    if (order < 8) {
        throw std::domain_error("gauss_hermite: order must be at least 8, got " + std::to_string(order));
    }

    // Jacobi matrix of the (physicists') Hermite polynomials: zero diagonal,
    // off-diagonal beta_k = sqrt(k/2). Eigenvalues are the nodes; the squared
    // first eigenvector components are the normalized weights.
    Eigen::VectorXd diag = Eigen::VectorXd::Zero(order);
    Eigen::VectorXd subdiag(order - 1);
    for (int k = 1; k < order; ++k) subdiag[k - 1] = std::sqrt(k / 2.0);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
    solver.computeFromTridiagonal(diag, subdiag, Eigen::ComputeEigenvectors);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("gauss_hermite: tridiagonal eigensolve failed");
    }

    QuadratureSpec spec;
    spec.order = order;
    spec.nodes.resize(order);
    spec.weights.resize(order);
    for (int n = 0; n < order; ++n) {
        spec.nodes[n] = solver.eigenvalues()[n];
        const double v0 = solver.eigenvectors()(0, n);
        spec.weights[n] = v0 * v0;
    }
    return spec;
}

} // namespace bcshape
