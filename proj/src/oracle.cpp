#include "bcshape/oracle.hpp"

#include "bcshape/errors.hpp"
#include "bcshape/mutual_info.hpp"
#include "bcshape/parallel.hpp"
#include "bcshape/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace bcshape {

namespace {

constexpr double kLn2 = 0.69314718055994530942;
constexpr double kProbFloor = 1e-300;

double log_density_floor(double v) { return std::log(std::max(v, kProbFloor)); }

struct McAccumulator {
    std::int64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void add(double x) {
        ++n;
        const double d = x - mean;
        mean += d / static_cast<double>(n);
        m2 += d * (x - mean);
    }

    void merge(const McAccumulator& other) {
        if (other.n == 0) return;
        if (n == 0) {
            *this = other;
            return;
        }
        const double d = other.mean - mean;
        const std::int64_t total = n + other.n;
        mean += d * static_cast<double>(other.n) / static_cast<double>(total);
        m2 += other.m2 + d * d * static_cast<double>(n) * static_cast<double>(other.n) / static_cast<double>(total);
        n = total;
    }
};

} // namespace

McEstimate mc_mutual_info(const JointDistribution& joint, const Constellation& constellation,
                          double sigma_sq, MiKind which, std::int64_t samples, std::uint64_t seed) {
    check(joint);
    check(constellation);
    if (joint.x_size != constellation.size()) {
        throw std::domain_error("mc_mutual_info: joint and constellation sizes differ");
    }
    if (!(sigma_sq > 0.0)) throw std::domain_error("mc_mutual_info: noise variance must be positive");
    if (samples < 10000) throw std::domain_error("mc_mutual_info: need at least 1e4 samples");

    const int M = joint.x_size;
    const auto& x = constellation.symbols;
    const double sigma = std::sqrt(sigma_sq);
    const double inv2s = 1.0 / (2.0 * sigma_sq);
    const auto marg = marginals(joint);

    // Cumulative table for one-uniform categorical draws over (u, x) pairs.
    std::vector<double> cdf(joint.probs.size());
    double acc = 0.0;
    for (std::size_t t = 0; t < joint.probs.size(); ++t) {
        acc += joint.probs[t];
        cdf[t] = acc;
    }
    cdf.back() = 1.0;

    const CounterRng rng(CounterRng::mix64(seed ^ 0x6d63206d69ULL));

    // Shard partition is a function of the sample count alone, so the merged
    // moments are bitwise reproducible whatever the worker pool looks like.
    const int shards = std::max(1, static_cast<int>(std::min<std::int64_t>(64, samples / 10000)));
    std::vector<McAccumulator> parts(shards);
    const std::int64_t per = samples / shards;

    parallel_for(static_cast<std::size_t>(shards), [&](std::size_t sh) {
        McAccumulator local;
        const std::int64_t lo = static_cast<std::int64_t>(sh) * per;
        const std::int64_t hi = (sh + 1 == static_cast<std::size_t>(shards)) ? samples : lo + per;
        for (std::int64_t k = lo; k < hi; ++k) {
            const double u_draw = rng.uniform(3 * static_cast<std::uint64_t>(k));
            const std::size_t cell =
                std::lower_bound(cdf.begin(), cdf.end(), u_draw) - cdf.begin();
            const int ui = static_cast<int>(cell) / M;
            const int xj = static_cast<int>(cell) % M;

            const double u1 = rng.uniform(3 * static_cast<std::uint64_t>(k) + 1);
            const double u2 = rng.uniform(3 * static_cast<std::uint64_t>(k) + 2);
            const double z = std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586477 * u2);
            const double y = x[xj] + sigma * z;

            // Densities up to the common Gaussian normalizer, which cancels in
            // every ratio below.
            double p_y = 0.0, p_y_u = 0.0;
            for (int k2 = 0; k2 < M; ++k2) {
                const double d = y - x[k2];
                const double g = std::exp(-d * d * inv2s);
                p_y += marg.x[k2] * g;
                if (which != MiKind::XY) {
                    p_y_u += marg.x_given_u[static_cast<std::size_t>(ui) * M + k2] * g;
                }
            }
            const double log_phi = -z * z / 2.0;

            double val = 0.0;
            switch (which) {
                case MiKind::XY: val = log_phi - log_density_floor(p_y); break;
                case MiKind::UY: val = log_density_floor(p_y_u) - log_density_floor(p_y); break;
                case MiKind::XGivenU: val = log_phi - log_density_floor(p_y_u); break;
            }
            local.add(val / kLn2);
        }
        parts[sh] = local;
    });

    McAccumulator total;
    for (const auto& part : parts) total.merge(part);

    McEstimate est;
    est.value = total.mean;
    est.std_error = total.n > 1 ? std::sqrt(total.m2 / (static_cast<double>(total.n) - 1.0) /
                                            static_cast<double>(total.n))
                                : 0.0;
    est.samples = samples;
    est.seed = seed;
    return est;
}

namespace {

/// Compositions of `total` into `parts` nonnegative integers, visited in
/// lexicographic order.
bool next_composition(std::vector<int>& c, int total) {
    const int parts = static_cast<int>(c.size());
    for (int i = parts - 2; i >= 0; --i) {
        if (c[i] == 0) continue;
        int tail = 0;
        for (int k = i; k < parts; ++k) tail += c[k];
        --c[i];
        for (int k = i + 1; k < parts; ++k) c[k] = 0;
        c[i + 1] = tail - c[i];
        (void)total;
        return true;
    }
    return false;
}

double count_compositions(int total, int parts) {
    // C(total + parts - 1, parts - 1)
    double v = 1.0;
    for (int i = 1; i < parts; ++i) v = v * (total + i) / i;
    return v;
}

std::vector<std::vector<double>> symmetric_position_grids(int m, double step, double cap) {
    // All strictly increasing nonnegative half-vectors h_0 < ... < h_{m/2-1}
    // on the grid {step, 2 step, ...} up to cap.
    const int half = m / 2;
    const int levels = static_cast<int>(std::floor(cap / step + 1e-9));
    std::vector<std::vector<double>> grids;
    std::vector<int> idx(half);
    for (int r = 0; r < half; ++r) idx[r] = r + 1;
    if (levels < half) return grids;
    for (;;) {
        std::vector<double> h(half);
        for (int r = 0; r < half; ++r) h[r] = idx[r] * step;
        grids.push_back(std::move(h));
        int r = half - 1;
        while (r >= 0 && idx[r] == levels - (half - 1 - r)) --r;
        if (r < 0) break;
        ++idx[r];
        for (int k = r + 1; k < half; ++k) idx[k] = idx[k - 1] + 1;
    }
    return grids;
}

Constellation mirrored(const std::vector<double>& half) {
    Constellation c;
    const int m = static_cast<int>(half.size()) * 2;
    c.symbols.resize(m);
    for (int r = 0; r < m / 2; ++r) {
        c.symbols[m / 2 + r] = half[r];
        c.symbols[m / 2 - 1 - r] = -half[r];
    }
    return c;
}

} // namespace

OptResult grid_search_optimize(const BroadcastChannel& channel, double theta,
                               const StrategyConstraint& constraint, int m, double grid_step,
                               bool optimize_positions, int quad_order) {
    if (constraint.kind == StrategyConstraint::Kind::TimeSharing) {
        throw std::domain_error("grid_search_optimize: constraint must be GeneralSC or SM");
    }
    if (m > 4) throw std::domain_error("grid_search_optimize: M <= 4 only");
    if (!(grid_step > 0.0 && grid_step < 1.0)) throw std::domain_error("grid_search_optimize: bad step");
    if (constraint.x_size != m) throw std::domain_error("grid_search_optimize: constraint size mismatch");

    const int taps = constraint.probs_free
                         ? static_cast<int>(std::count(constraint.support.begin(), constraint.support.end(), 1))
                         : 0;
    const int levels = static_cast<int>(std::round(1.0 / grid_step));
    const double pos_cap = 3.0 * std::sqrt(channel.power);

    const auto pos_grids = optimize_positions
                               ? symmetric_position_grids(m, grid_step * std::sqrt(channel.power), pos_cap)
                               : std::vector<std::vector<double>>{};
    const double n_pos = optimize_positions ? static_cast<double>(pos_grids.size()) : 1.0;
    const double n_taps = constraint.probs_free ? count_compositions(levels, taps) : 1.0;
    if (n_pos * n_taps > 1e8) {
        throw std::length_error("grid_search_optimize: grid would exceed 1e8 points");
    }

    const QuadratureSpec quad = gauss_hermite(quad_order);
    const auto [std_const, std_joint] = standard_pam(m, channel.power);
    (void)std_joint;

    struct Best {
        double f = -1.0;
        std::int64_t order = -1;
        JointDistribution joint;
        Constellation constellation;
        double power = 0.0;
        std::int64_t evals = 0;
    };

    const std::size_t n_outer = optimize_positions ? pos_grids.size() : 1;
    std::vector<Best> best_per_pos(n_outer);

    parallel_for(n_outer, [&](std::size_t pi) {
        const Constellation cons = optimize_positions ? mirrored(pos_grids[pi]) : std_const;
        Best best;

        // Cheapest feasibility prune: even all mass on the innermost symbol
        // pair costs h_0^2.
        double min_sq = cons.symbols[0] * cons.symbols[0];
        for (double s : cons.symbols) min_sq = std::min(min_sq, s * s);
        if (min_sq > channel.power + 1e-12) {
            best_per_pos[pi] = best;
            return;
        }

        JointDistribution joint;
        joint.u_size = constraint.u_size;
        joint.x_size = constraint.x_size;
        joint.probs.assign(static_cast<std::size_t>(joint.u_size) * joint.x_size, 0.0);

        std::vector<std::size_t> tap_cells;
        for (std::size_t t = 0; t < constraint.support.size(); ++t) {
            if (constraint.support[t]) tap_cells.push_back(t);
        }

        std::int64_t order_idx = 0;
        auto consider = [&](const JointDistribution& j) {
            const double pw = average_power(j, cons);
            ++best.evals;
            if (pw > channel.power + 1e-12) {
                ++order_idx;
                return;
            }
            const double f = objective_value(j, cons, channel, theta, quad);
            if (f > best.f) {
                best.f = f;
                best.order = order_idx;
                best.joint = j;
                best.constellation = cons;
                best.power = pw;
            }
            ++order_idx;
        };

        if (!constraint.probs_free) {
            consider(uniform_sm_joint(constraint.m1, constraint.m2, m));
        } else {
            std::vector<int> comp(taps, 0);
            comp[0] = levels;
            for (;;) {
                for (std::size_t t = 0; t < tap_cells.size(); ++t) {
                    joint.probs[tap_cells[t]] = static_cast<double>(comp[t]) / levels;
                }
                consider(joint);
                if (!next_composition(comp, levels)) break;
            }
        }
        best_per_pos[pi] = best;
    });

    Best overall;
    std::int64_t evals = 0;
    for (std::size_t pi = 0; pi < best_per_pos.size(); ++pi) {
        evals += best_per_pos[pi].evals;
        if (best_per_pos[pi].order >= 0 &&
            (overall.order < 0 || best_per_pos[pi].f > overall.f)) {
            overall = best_per_pos[pi];
        }
    }
    if (overall.order < 0) {
        throw std::domain_error("grid_search_optimize: no power-feasible grid point");
    }

    OptResult result;
    result.joint = overall.joint;
    result.constellation = overall.constellation;
    const auto [r1, r2] = rate_pair(result.joint, result.constellation, channel, quad);
    result.r1 = r1;
    result.r2 = r2;
    result.objective = overall.f;
    result.multiplier_s = 0.0;
    result.achieved_power = overall.power;
    result.converged = true;
    result.iterations = static_cast<int>(std::min<std::int64_t>(evals, 1 << 30));
    return result;
}

} // namespace bcshape
