#ifndef BCSHAPE_CHANNEL_HPP
#define BCSHAPE_CHANNEL_HPP

#include <cstdint>
#include <utility>
#include <vector>

namespace bcshape {

/// Degraded two-user AWGN broadcast channel. User 1 is the less noisy
/// receiver: snr1_db > snr2_db, equivalently sigma1_sq < sigma2_sq.
struct BroadcastChannel {
    double power;     ///< average symbol energy budget P (linear)
    double snr1_db;
    double snr2_db;
    double sigma1_sq; ///< noise variance seen by user 1
    double sigma2_sq; ///< noise variance seen by user 2
};

BroadcastChannel channel_from_snr(double snr1_db, double snr2_db, double power);

/// Same power budget, both SNRs moved by delta_db.
BroadcastChannel shifted_channel(const BroadcastChannel& ch, double delta_db);

bool same_channel(const BroadcastChannel& a, const BroadcastChannel& b, double tol = 1e-12);

/// Real PAM constellation, symbols strictly increasing.
struct Constellation {
    std::vector<double> symbols;

    int size() const { return static_cast<int>(symbols.size()); }
};

void check(const Constellation& c);
bool is_symmetric(const Constellation& c, double tol = 1e-9);

/// Joint probability table p_ij = Pr{U = u_i, X = x_j}, row-major.
struct JointDistribution {
    int u_size = 0;
    int x_size = 0;
    std::vector<double> probs;

    double at(int i, int j) const { return probs[static_cast<std::size_t>(i) * x_size + j]; }
    double& at(int i, int j) { return probs[static_cast<std::size_t>(i) * x_size + j]; }
};

JointDistribution uniform_diagonal_joint(int m);

void check(const JointDistribution& joint);

struct Marginals {
    std::vector<double> u;          ///< Pr{U = u_i}
    std::vector<double> x;          ///< Pr{X = x_j}
    std::vector<double> x_given_u;  ///< row-major |U| x M, rows of Pr{X | U = u_i}
    std::vector<std::uint8_t> empty_row; ///< rows with zero mass (conditional undefined)
};

Marginals marginals(const JointDistribution& joint);

double average_power(const JointDistribution& joint, const Constellation& constellation);

/// Standard M-PAM: the odd-integer grid scaled so the equiprobable average
/// energy equals `power` exactly, paired with the deterministic U = X joint.
std::pair<Constellation, JointDistribution> standard_pam(int m, double power);

bool is_power_of_two(int m);

} // namespace bcshape

#endif
