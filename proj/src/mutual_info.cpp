#include "bcshape/mutual_info.hpp"

#include "bcshape/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcshape {

namespace {

constexpr double kProbFloor = 1e-300;
constexpr double kLogFloor = -690.77552789821368; // log(1e-300)
constexpr double kLn2 = 0.69314718055994530942;

double clamp_bits(double v, double hi) { return std::min(std::max(v, 0.0), hi); }

void check_sigma(double sigma_sq) {
    if (!(sigma_sq > 0.0) || !std::isfinite(sigma_sq)) {
        throw std::domain_error("mutual information: noise variance must be positive");
    }
}

/// Raw joint table with the marginals and logs the kernels consume.
struct TableView {
    int u_size;
    int x_size;
    const double* p;
    std::vector<double> row_sum;  // P_i
    std::vector<double> col_sum;  // q_j
    std::vector<double> lp;       // log p_ij, kLogFloor - 1 when skipped
    std::vector<double> lrow;     // log P_i
    std::vector<double> lcol;     // log q_j

    TableView(const double* probs, int u, int m) : u_size(u), x_size(m), p(probs) {
        row_sum.assign(u, 0.0);
        col_sum.assign(m, 0.0);
        lp.assign(static_cast<std::size_t>(u) * m, kLogFloor - 1.0);
        lrow.assign(u, kLogFloor - 1.0);
        lcol.assign(m, kLogFloor - 1.0);
        for (int i = 0; i < u; ++i) {
            for (int j = 0; j < m; ++j) {
                const double v = p[static_cast<std::size_t>(i) * m + j];
                if (!(v >= 0.0) || !std::isfinite(v)) {
                    throw std::domain_error("mutual information: probabilities must be nonnegative and finite");
                }
                row_sum[i] += v;
                col_sum[j] += v;
                if (v >= kProbFloor) lp[static_cast<std::size_t>(i) * m + j] = std::log(v);
            }
        }
        for (int i = 0; i < u; ++i)
            if (row_sum[i] >= kProbFloor) lrow[i] = std::log(row_sum[i]);
        for (int j = 0; j < m; ++j)
            if (col_sum[j] >= kProbFloor) lcol[j] = std::log(col_sum[j]);
    }

    double at(int i, int j) const { return p[static_cast<std::size_t>(i) * x_size + j]; }
    double lp_at(int i, int j) const { return lp[static_cast<std::size_t>(i) * x_size + j]; }
    bool present(int i, int j) const { return lp_at(i, j) >= kLogFloor; }
};

double lse(const double* v, int n) {
    double m = kLogFloor;
    for (int k = 0; k < n; ++k) m = std::max(m, v[k]);
    if (m <= kLogFloor) return kLogFloor;
    double s = 0.0;
    for (int k = 0; k < n; ++k)
        if (v[k] > kLogFloor) s += std::exp(v[k] - m);
    return m + std::log(s);
}

struct KernelOut {
    double value_nats = 0.0;
    std::vector<double> grad_p;
    std::vector<double> grad_x;
};

/// Shared state for one pass over the evaluation grid g_jn = x_j + sqrt(2 s2) t_n.
struct Pass {
    const TableView& tab;
    const std::vector<double>& x;
    double sigma_sq;
    const QuadratureSpec& quad;
    std::vector<double> lw; // log quadrature weights

    Pass(const TableView& t, const std::vector<double>& xs, double s2, const QuadratureSpec& q)
        : tab(t), x(xs), sigma_sq(s2), quad(q) {
        lw.resize(q.weights.size());
        for (std::size_t n = 0; n < q.weights.size(); ++n) {
            lw[n] = q.weights[n] > 0.0 ? std::log(q.weights[n]) : kLogFloor - 1.0;
        }
    }
};

/// I(U;Y) of the raw table, natural log, with optional gradients of the
/// discretized sum with respect to every p_ij and x_j.
KernelOut cloud_kernel(const Pass& ps, bool want_grad) {
    const TableView& tab = ps.tab;
    const int U = tab.u_size, M = tab.x_size, N = ps.quad.order;
    const double c = std::sqrt(2.0 * ps.sigma_sq);
    const double inv2s = 1.0 / (2.0 * ps.sigma_sq);
    const double inv_ss = 1.0 / ps.sigma_sq;

    KernelOut out;
    if (want_grad) {
        out.grad_p.assign(static_cast<std::size_t>(U) * M, 0.0);
        out.grad_x.assign(M, 0.0);
    }

    std::vector<double> a(M), scratch(M), logm(U), dlogm(U);
    // Accumulators for the gradient pieces that are summed over the whole grid.
    std::vector<double> c1;            // U x M: sum over (j,n) of p_aj w_n exp(a_b - logm_a)
    std::vector<double> c2(M, 0.0);    // M: sum of q_j w_n exp(a_b - logp)
    if (want_grad) c1.assign(static_cast<std::size_t>(U) * M, 0.0);

    for (int j = 0; j < M; ++j) {
        const bool col_used = tab.col_sum[j] >= kProbFloor;
        for (int n = 0; n < N; ++n) {
            const double y = ps.x[j] + c * ps.quad.nodes[n];
            const double w = ps.quad.weights[n];
            if (!(w > 0.0)) continue;

            for (int k = 0; k < M; ++k) {
                const double d = y - ps.x[k];
                a[k] = -d * d * inv2s;
            }
            for (int k = 0; k < M; ++k) scratch[k] = tab.lcol[k] + a[k];
            const double logp = std::max(lse(scratch.data(), M), kLogFloor);
            for (int i = 0; i < U; ++i) {
                for (int k = 0; k < M; ++k) scratch[k] = tab.lp_at(i, k) + a[k];
                logm[i] = std::max(lse(scratch.data(), M), kLogFloor);
            }

            if (col_used) {
                for (int i = 0; i < U; ++i) {
                    if (!tab.present(i, j)) continue;
                    out.value_nats += tab.at(i, j) * w * (logm[i] - tab.lrow[i] - logp);
                }
            }

            if (!want_grad) continue;

            // Direct term of d/dp_aj, shared evaluation row j.
            for (int i = 0; i < U; ++i) {
                if (tab.row_sum[i] < kProbFloor) continue;
                out.grad_p[static_cast<std::size_t>(i) * M + j] += w * (logm[i] - tab.lrow[i] - logp);
            }

            // Cross terms through m_a and p(y), in log form to stay bounded.
            for (int i = 0; i < U; ++i) {
                const double lpij = tab.lp_at(i, j);
                if (lpij < kLogFloor) continue;
                const double base = lpij + ps.lw[n] - logm[i];
                for (int b = 0; b < M; ++b) {
                    c1[static_cast<std::size_t>(i) * M + b] += std::exp(base + a[b]);
                }
            }
            if (col_used) {
                const double base = tab.lcol[j] + ps.lw[n] - logp;
                for (int b = 0; b < M; ++b) c2[b] += std::exp(base + a[b]);
            }

            // Position gradient. dlogm_i(y), dlogp(y) are posterior-weighted
            // mean slopes (x_k - y)/sigma^2.
            double dlogp_y = 0.0;
            for (int k = 0; k < M; ++k) {
                const double t = tab.lcol[k] + a[k] - logp;
                if (t > kLogFloor) dlogp_y += std::exp(t) * (ps.x[k] - y) * inv_ss;
            }
            for (int i = 0; i < U; ++i) {
                double s = 0.0;
                for (int k = 0; k < M; ++k) {
                    const double t = tab.lp_at(i, k) + a[k] - logm[i];
                    if (t > kLogFloor) s += std::exp(t) * (ps.x[k] - y) * inv_ss;
                }
                dlogm[i] = s;
            }
            // (a) through the evaluation points centered on x_j.
            for (int i = 0; i < U; ++i) {
                if (!tab.present(i, j)) continue;
                out.grad_x[j] += tab.at(i, j) * w * (dlogm[i] - dlogp_y);
            }
            // (b) through the center x_c inside every mixture.
            for (int cidx = 0; cidx < M; ++cidx) {
                double inner = 0.0;
                for (int i = 0; i < U; ++i) {
                    const double lpic = tab.lp_at(i, cidx);
                    if (lpic < kLogFloor || !tab.present(i, j)) continue;
                    inner += tab.at(i, j) * std::exp(lpic + a[cidx] - logm[i]);
                }
                if (col_used && tab.lcol[cidx] >= kLogFloor) {
                    inner -= tab.col_sum[j] * std::exp(tab.lcol[cidx] + a[cidx] - logp);
                }
                out.grad_x[cidx] += w * (y - ps.x[cidx]) * inv_ss * inner;
            }
        }
    }

    if (want_grad) {
        for (int i = 0; i < U; ++i) {
            const bool live = tab.row_sum[i] >= kProbFloor;
            for (int b = 0; b < M; ++b) {
                double& g = out.grad_p[static_cast<std::size_t>(i) * M + b];
                if (!live) {
                    g = 0.0; // zero-mass cloud: contributes zero, receives zero
                    continue;
                }
                g += -1.0 + c1[static_cast<std::size_t>(i) * M + b] - c2[b];
            }
        }
    }
    return out;
}

/// I(X;Y|U) of the raw table, natural log, optional gradients as above.
KernelOut cond_kernel(const Pass& ps, bool want_grad) {
    const TableView& tab = ps.tab;
    const int U = tab.u_size, M = tab.x_size, N = ps.quad.order;
    const double c = std::sqrt(2.0 * ps.sigma_sq);
    const double inv2s = 1.0 / (2.0 * ps.sigma_sq);
    const double inv_ss = 1.0 / ps.sigma_sq;

    KernelOut out;
    if (want_grad) {
        out.grad_p.assign(static_cast<std::size_t>(U) * M, 0.0);
        out.grad_x.assign(M, 0.0);
    }

    std::vector<double> a(M), scratch(M), logm(U);
    std::vector<double> c1;
    if (want_grad) c1.assign(static_cast<std::size_t>(U) * M, 0.0);

    for (int j = 0; j < M; ++j) {
        for (int n = 0; n < N; ++n) {
            const double tn = ps.quad.nodes[n];
            const double y = ps.x[j] + c * tn;
            const double w = ps.quad.weights[n];
            if (!(w > 0.0)) continue;

            for (int k = 0; k < M; ++k) {
                const double d = y - ps.x[k];
                a[k] = -d * d * inv2s;
            }
            for (int i = 0; i < U; ++i) {
                for (int k = 0; k < M; ++k) scratch[k] = tab.lp_at(i, k) + a[k];
                logm[i] = std::max(lse(scratch.data(), M), kLogFloor);
            }

            for (int i = 0; i < U; ++i) {
                if (!tab.present(i, j)) continue;
                out.value_nats += tab.at(i, j) * w * (-tn * tn - logm[i] + tab.lrow[i]);
            }

            if (!want_grad) continue;

            for (int i = 0; i < U; ++i) {
                if (tab.row_sum[i] < kProbFloor) continue;
                out.grad_p[static_cast<std::size_t>(i) * M + j] += w * (-tn * tn - logm[i] + tab.lrow[i]);
            }
            for (int i = 0; i < U; ++i) {
                const double lpij = tab.lp_at(i, j);
                if (lpij < kLogFloor) continue;
                const double base = lpij + ps.lw[n] - logm[i];
                for (int b = 0; b < M; ++b) {
                    c1[static_cast<std::size_t>(i) * M + b] += std::exp(base + a[b]);
                }
            }

            for (int i = 0; i < U; ++i) {
                if (!tab.present(i, j)) continue;
                double s = 0.0;
                for (int k = 0; k < M; ++k) {
                    const double t = tab.lp_at(i, k) + a[k] - logm[i];
                    if (t > kLogFloor) s += std::exp(t) * (ps.x[k] - y) * inv_ss;
                }
                out.grad_x[j] -= tab.at(i, j) * w * s;
            }
            for (int cidx = 0; cidx < M; ++cidx) {
                double inner = 0.0;
                for (int i = 0; i < U; ++i) {
                    const double lpic = tab.lp_at(i, cidx);
                    if (lpic < kLogFloor || !tab.present(i, j)) continue;
                    inner += tab.at(i, j) * std::exp(lpic + a[cidx] - logm[i]);
                }
                out.grad_x[cidx] -= w * (y - ps.x[cidx]) * inv_ss * inner;
            }
        }
    }

    if (want_grad) {
        for (int i = 0; i < U; ++i) {
            const bool live = tab.row_sum[i] >= kProbFloor;
            for (int b = 0; b < M; ++b) {
                double& g = out.grad_p[static_cast<std::size_t>(i) * M + b];
                if (!live) {
                    g = 0.0;
                    continue;
                }
                g += 1.0 - c1[static_cast<std::size_t>(i) * M + b];
            }
        }
    }
    return out;
}

/// Point-to-point I(X;Y) in nats for an input marginal q.
double pp_kernel(const std::vector<double>& q, const std::vector<double>& x, double sigma_sq,
                 const QuadratureSpec& quad) {
    const int M = static_cast<int>(x.size());
    const double c = std::sqrt(2.0 * sigma_sq);
    const double inv2s = 1.0 / (2.0 * sigma_sq);
    std::vector<double> lq(M, kLogFloor - 1.0);
    for (int k = 0; k < M; ++k)
        if (q[k] >= kProbFloor) lq[k] = std::log(q[k]);

    std::vector<double> v(M);
    double total = 0.0;
    for (int j = 0; j < M; ++j) {
        if (q[j] < kProbFloor) continue;
        double inner = 0.0;
        for (int n = 0; n < quad.order; ++n) {
            const double tn = quad.nodes[n];
            const double y = x[j] + c * tn;
            for (int k = 0; k < M; ++k) {
                const double d = y - x[k];
                v[k] = lq[k] - d * d * inv2s;
            }
            const double logp = std::max(lse(v.data(), M), kLogFloor);
            inner += quad.weights[n] * (-tn * tn - logp);
        }
        total += q[j] * inner;
    }
    return total;
}

void check_quad(const QuadratureSpec& quad) {
    if (quad.order < 8 || quad.nodes.size() != static_cast<std::size_t>(quad.order) ||
        quad.weights.size() != static_cast<std::size_t>(quad.order)) {
        throw std::domain_error("QuadratureSpec: order must be >= 8 with matching node/weight arrays");
    }
}

} // namespace

double mi_x_y(const Constellation& constellation, const std::vector<double>& x_marginal,
              double sigma_sq, const QuadratureSpec& quad) {
    check(constellation);
    check_sigma(sigma_sq);
    check_quad(quad);
    if (x_marginal.size() != constellation.symbols.size()) {
        throw std::domain_error("mi_x_y: marginal and constellation sizes differ");
    }
    double total = 0.0;
    for (double p : x_marginal) {
        if (!(p >= 0.0)) throw std::domain_error("mi_x_y: marginal entries must be nonnegative");
        total += p;
    }
    if (std::abs(total - 1.0) > 1e-9) throw std::domain_error("mi_x_y: marginal must sum to 1");

    const double nats = pp_kernel(x_marginal, constellation.symbols, sigma_sq, quad);
    return clamp_bits(nats / kLn2, std::log2(static_cast<double>(constellation.size())));
}

double mi_u_y(const JointDistribution& joint, const Constellation& constellation,
              double sigma_sq, const QuadratureSpec& quad) {
    check(joint);
    check(constellation);
    check_sigma(sigma_sq);
    check_quad(quad);
    if (joint.x_size != constellation.size()) {
        throw std::domain_error("mi_u_y: joint and constellation sizes differ");
    }
    TableView tab(joint.probs.data(), joint.u_size, joint.x_size);
    Pass ps(tab, constellation.symbols, sigma_sq, quad);
    const double nats = cloud_kernel(ps, false).value_nats;
    return clamp_bits(nats / kLn2, std::log2(static_cast<double>(joint.u_size)));
}

double mi_x_y_given_u(const JointDistribution& joint, const Constellation& constellation,
                      double sigma_sq, const QuadratureSpec& quad) {
    check(joint);
    check(constellation);
    check_sigma(sigma_sq);
    check_quad(quad);
    if (joint.x_size != constellation.size()) {
        throw std::domain_error("mi_x_y_given_u: joint and constellation sizes differ");
    }
    TableView tab(joint.probs.data(), joint.u_size, joint.x_size);
    Pass ps(tab, constellation.symbols, sigma_sq, quad);
    const double nats = cond_kernel(ps, false).value_nats;
    return clamp_bits(nats / kLn2, std::log2(static_cast<double>(joint.x_size)));
}

namespace {

ObjectiveEval objective_impl(const JointDistribution& joint, const Constellation& constellation,
                             const BroadcastChannel& channel, double theta, const QuadratureSpec& quad,
                             bool want_grad) {
    check(constellation);
    check_quad(quad);
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("objective: theta must lie in [0, 1]");
    if (joint.x_size != constellation.size()) {
        throw std::domain_error("objective: joint and constellation sizes differ");
    }
    check_sigma(channel.sigma1_sq);
    check_sigma(channel.sigma2_sq);

    TableView tab(joint.probs.data(), joint.u_size, joint.x_size);
    Pass ps1(tab, constellation.symbols, channel.sigma1_sq, quad);
    Pass ps2(tab, constellation.symbols, channel.sigma2_sq, quad);
    const KernelOut cond = cond_kernel(ps1, want_grad);
    const KernelOut cloud = cloud_kernel(ps2, want_grad);

    const double i1 = clamp_bits(cond.value_nats / kLn2, std::log2(static_cast<double>(joint.x_size)));
    const double i2 = clamp_bits(cloud.value_nats / kLn2, std::log2(static_cast<double>(joint.u_size)));

    ObjectiveEval ev;
    ev.value = theta * i1 + (1.0 - theta) * i2;
    if (want_grad) {
        const std::size_t sz = joint.probs.size();
        ev.grad_probs.resize(sz);
        for (std::size_t t = 0; t < sz; ++t) {
            ev.grad_probs[t] = (theta * cond.grad_p[t] + (1.0 - theta) * cloud.grad_p[t]) / kLn2;
        }
        ev.grad_symbols.resize(joint.x_size);
        for (int jx = 0; jx < joint.x_size; ++jx) {
            ev.grad_symbols[jx] = (theta * cond.grad_x[jx] + (1.0 - theta) * cloud.grad_x[jx]) / kLn2;
        }
    }
    return ev;
}

} // namespace

ObjectiveEval objective_and_gradients(const JointDistribution& joint, const Constellation& constellation,
                                      const BroadcastChannel& channel, double theta,
                                      const QuadratureSpec& quad) {
    return objective_impl(joint, constellation, channel, theta, quad, true);
}

double objective_value(const JointDistribution& joint, const Constellation& constellation,
                       const BroadcastChannel& channel, double theta, const QuadratureSpec& quad) {
    return objective_impl(joint, constellation, channel, theta, quad, false).value;
}

std::pair<double, double> rate_pair(const JointDistribution& joint, const Constellation& constellation,
                                    const BroadcastChannel& channel, const QuadratureSpec& quad) {
    TableView tab(joint.probs.data(), joint.u_size, joint.x_size);
    Pass ps1(tab, constellation.symbols, channel.sigma1_sq, quad);
    Pass ps2(tab, constellation.symbols, channel.sigma2_sq, quad);
    const double r1 = clamp_bits(cond_kernel(ps1, false).value_nats / kLn2,
                                 std::log2(static_cast<double>(joint.x_size)));
    const double r2 = clamp_bits(cloud_kernel(ps2, false).value_nats / kLn2,
                                 std::log2(static_cast<double>(joint.u_size)));
    return {r1, r2};
}

} // namespace bcshape
