#include "bcshape/channel.hpp"

#include "bcshape/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <numeric>
#include <string>

namespace bcshape {

BroadcastChannel channel_from_snr(double snr1_db, double snr2_db, double power) {
    if (!(power > 0.0) || !std::isfinite(power)) {
        throw std::domain_error("channel_from_snr: power must be positive, got " + std::to_string(power));
    }
    if (!(snr1_db > snr2_db)) {
        throw degradedness_error("channel_from_snr: snr1_db must exceed snr2_db (user 1 is the less noisy receiver)");
    }
    BroadcastChannel ch;
    ch.power = power;
    ch.snr1_db = snr1_db;
    ch.snr2_db = snr2_db;
    ch.sigma1_sq = power * std::pow(10.0, -snr1_db / 10.0);
    ch.sigma2_sq = power * std::pow(10.0, -snr2_db / 10.0);
    return ch;
}

BroadcastChannel shifted_channel(const BroadcastChannel& ch, double delta_db) {
    return channel_from_snr(ch.snr1_db + delta_db, ch.snr2_db + delta_db, ch.power);
}

bool same_channel(const BroadcastChannel& a, const BroadcastChannel& b, double tol) {
    return std::abs(a.power - b.power) <= tol && std::abs(a.snr1_db - b.snr1_db) <= tol &&
           std::abs(a.snr2_db - b.snr2_db) <= tol;
}

void check(const Constellation& c) {
    if (c.symbols.empty()) throw std::domain_error("Constellation: needs at least one symbol");
    for (std::size_t j = 0; j + 1 < c.symbols.size(); ++j) {
        if (!(c.symbols[j] < c.symbols[j + 1])) {
            throw std::domain_error("Constellation: symbols must be strictly increasing");
        }
    }
    for (double s : c.symbols) {
        if (!std::isfinite(s)) throw std::domain_error("Constellation: non-finite symbol");
    }
}

bool is_symmetric(const Constellation& c, double tol) {
    const int m = c.size();
    for (int j = 0; j < m; ++j) {
        if (std::abs(c.symbols[j] + c.symbols[m - 1 - j]) > tol) return false;
    }
    return true;
}

JointDistribution uniform_diagonal_joint(int m) {
    JointDistribution joint;
    joint.u_size = m;
    joint.x_size = m;
    joint.probs.assign(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) joint.at(i, i) = 1.0 / m;
    return joint;
}

void check(const JointDistribution& joint) {
    if (joint.u_size < 1 || joint.x_size < 1) throw std::domain_error("JointDistribution: empty alphabet");
    if (joint.u_size > joint.x_size) {
        throw std::domain_error("JointDistribution: |U| must not exceed |X| (cardinality bound)");
    }
    if (joint.probs.size() != static_cast<std::size_t>(joint.u_size) * joint.x_size) {
        throw std::domain_error("JointDistribution: table size mismatch");
    }
    double total = 0.0;
    for (double p : joint.probs) {
        if (!(p >= 0.0) || !std::isfinite(p)) throw std::domain_error("JointDistribution: entries must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-12) {
        throw std::domain_error("JointDistribution: entries must sum to 1, got " + std::to_string(total));
    }
}

Marginals marginals(const JointDistribution& joint) {
    Marginals m;
    m.u.assign(joint.u_size, 0.0);
    m.x.assign(joint.x_size, 0.0);
    m.x_given_u.assign(joint.probs.size(), 0.0);
    m.empty_row.assign(joint.u_size, 0);
    for (int i = 0; i < joint.u_size; ++i) {
        for (int j = 0; j < joint.x_size; ++j) {
            m.u[i] += joint.at(i, j);
            m.x[j] += joint.at(i, j);
        }
    }
    for (int i = 0; i < joint.u_size; ++i) {
        if (m.u[i] > 0.0) {
            for (int j = 0; j < joint.x_size; ++j) {
                m.x_given_u[static_cast<std::size_t>(i) * joint.x_size + j] = joint.at(i, j) / m.u[i];
            }
        } else {
            m.empty_row[i] = 1;
        }
    }
    return m;
}

double average_power(const JointDistribution& joint, const Constellation& constellation) {
    if (joint.x_size != constellation.size()) {
        throw std::domain_error("average_power: joint and constellation sizes differ");
    }
    double e = 0.0;
    for (int i = 0; i < joint.u_size; ++i) {
        for (int j = 0; j < joint.x_size; ++j) {
            e += joint.at(i, j) * constellation.symbols[j] * constellation.symbols[j];
        }
    }
    return e;
}

bool is_power_of_two(int m) { return m >= 1 && (m & (m - 1)) == 0; }

std::pair<Constellation, JointDistribution> standard_pam(int m, double power) {
    if (m < 2 || !is_power_of_two(m)) {
        throw std::domain_error("standard_pam: M must be a power of two, M >= 2");
    }
    if (!(power > 0.0)) throw std::domain_error("standard_pam: power must be positive");

    // Raw grid {-(M-1), ..., -1, 1, ..., M-1}; equiprobable energy (M^2-1)/3.
    const double scale = std::sqrt(3.0 * power / (static_cast<double>(m) * m - 1.0));
    Constellation c;
    c.symbols.resize(m);
    for (int j = 0; j < m; ++j) {
        c.symbols[j] = scale * static_cast<double>(2 * j - (m - 1));
    }
    return {std::move(c), uniform_diagonal_joint(m)};
}

} // namespace bcshape
