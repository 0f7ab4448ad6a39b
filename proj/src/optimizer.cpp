#include "bcshape/optimizer.hpp"

#include "bcshape/errors.hpp"
#include "bcshape/mutual_info.hpp"
#include "bcshape/rng.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bcshape {

namespace {

constexpr double kMinSeparation = 1e-9;

/// Acceptance threshold: a step must improve L by more than float noise,
/// otherwise plateaus would keep feeding the step-size growth.
double accept_margin(double l0) { return 1e-14 * (1.0 + std::abs(l0)); }

struct Iterate {
    JointDistribution joint;
    Constellation cons;
};

struct EvalCache {
    double f = 0.0;
    double power = 0.0;
    double lagrangian(double s, double budget) const { return f + s * (budget - power); }
};

EvalCache evaluate(const Iterate& it, const BroadcastChannel& ch, double theta,
                   const QuadratureSpec& quad) {
    EvalCache ev;
    ev.f = objective_value(it.joint, it.cons, ch, theta, quad);
    ev.power = average_power(it.joint, it.cons);
    return ev;
}

/// One backtracking exponentiated-gradient step on the masked simplex.
/// Returns true when an improving step was accepted; eta adapts in place.
bool eg_step(Iterate& it, EvalCache& cache, const std::vector<double>& grad_probs,
             const BroadcastChannel& ch, double theta, double s,
             const std::vector<std::uint8_t>& mask, const StepRule& rule, double& eta,
             const QuadratureSpec& quad) {
    const int u = it.joint.u_size, m = it.joint.x_size;
    const std::size_t sz = it.joint.probs.size();

    std::vector<double> g(sz, 0.0);
    double gmax = -1e308;
    for (int i = 0; i < u; ++i) {
        for (int j = 0; j < m; ++j) {
            const std::size_t t = static_cast<std::size_t>(i) * m + j;
            if (!mask[t]) continue;
            g[t] = grad_probs[t] - s * it.cons.symbols[j] * it.cons.symbols[j];
            gmax = std::max(gmax, g[t]);
        }
    }

    const double l0 = cache.lagrangian(s, ch.power);
    JointDistribution trial = it.joint;
    while (eta >= rule.min) {
        double z = 0.0;
        for (std::size_t t = 0; t < sz; ++t) {
            trial.probs[t] = mask[t] ? it.joint.probs[t] * std::exp(eta * (g[t] - gmax)) : 0.0;
            z += trial.probs[t];
        }
        if (z > 0.0 && std::isfinite(z)) {
            for (std::size_t t = 0; t < sz; ++t) trial.probs[t] /= z;
            EvalCache ev = evaluate({trial, it.cons}, ch, theta, quad);
            if (ev.lagrangian(s, ch.power) > l0 + accept_margin(l0)) {
                it.joint = std::move(trial);
                cache = ev;
                eta = std::min(eta * rule.grow, 1e8);
                return true;
            }
            trial = it.joint;
        }
        eta *= rule.shrink;
    }
    eta = std::max(eta, rule.min);
    return false;
}

std::vector<double> half_positions(const Constellation& cons) {
    const int m = cons.size();
    std::vector<double> h(m / 2);
    for (int r = 0; r < m / 2; ++r) h[r] = cons.symbols[m / 2 + r];
    return h;
}

Constellation from_half(const std::vector<double>& h) {
    Constellation c;
    const int m = static_cast<int>(h.size()) * 2;
    c.symbols.resize(m);
    for (int r = 0; r < m / 2; ++r) {
        c.symbols[m / 2 + r] = h[r];
        c.symbols[m / 2 - 1 - r] = -h[r];
    }
    return c;
}

/// Clamp a trial half-vector to keep the mirrored constellation strictly
/// increasing with at least kMinSeparation between neighbors.
bool enforce_separation(std::vector<double>& h) {
    bool clamped = false;
    if (h[0] < kMinSeparation / 2) {
        h[0] = kMinSeparation / 2;
        clamped = true;
    }
    for (std::size_t r = 1; r < h.size(); ++r) {
        if (h[r] < h[r - 1] + kMinSeparation) {
            h[r] = h[r - 1] + kMinSeparation;
            clamped = true;
        }
    }
    return clamped;
}

/// One backtracking gradient step on the mirrored nonnegative positions.
bool pos_step(Iterate& it, EvalCache& cache, const std::vector<double>& grad_symbols,
              const BroadcastChannel& ch, double theta, double s, const StepRule& rule,
              double& eta, bool& eta_primed, bool& clamped_flag, const QuadratureSpec& quad) {
    const int m = it.cons.size();
    const int half = m / 2;
    const auto marg = marginals(it.joint);

    std::vector<double> h = half_positions(it.cons);
    std::vector<double> g(half);
    double gmax = 0.0;
    for (int r = 0; r < half; ++r) {
        const int jp = half + r, jm = half - 1 - r;
        g[r] = grad_symbols[jp] - grad_symbols[jm] - 2.0 * s * h[r] * (marg.x[jp] + marg.x[jm]);
        gmax = std::max(gmax, std::abs(g[r]));
    }
    if (gmax == 0.0) return false;

    if (!eta_primed) {
        // Scale the first trial so the outermost symbol moves by about
        // rule.init of its magnitude.
        eta = rule.init * std::max(h[half - 1], kMinSeparation) / gmax;
        eta_primed = true;
    }

    const double l0 = cache.lagrangian(s, ch.power);
    while (eta * gmax >= rule.min * std::max(h[half - 1], 1.0)) {
        std::vector<double> ht = h;
        for (int r = 0; r < half; ++r) ht[r] += eta * g[r];
        const bool clamped = enforce_separation(ht);
        Constellation trial = from_half(ht);
        EvalCache ev = evaluate({it.joint, trial}, ch, theta, quad);
        if (ev.lagrangian(s, ch.power) >= l0) {
            it.cons = std::move(trial);
            cache = ev;
            if (clamped) clamped_flag = true;
            eta *= rule.grow;
            return true;
        }
        eta *= rule.shrink;
    }
    return false;
}

struct AltOutcome {
    EvalCache cache;
    int iterations = 0;
    bool converged = false;
    bool clamped = false;
};

/// Alternating ascent of the Lagrangian at fixed s. When early_power_exit is
/// set (the s_lo probe), stops as soon as the iterate leaves the power budget.
AltOutcome alternate(Iterate& it, const BroadcastChannel& ch, double theta, double s,
                     const StrategyConstraint& constraint, const OptimizerOptions& opts,
                     const QuadratureSpec& quad, bool free_probs, bool free_pos,
                     bool early_power_exit) {
    AltOutcome out;
    out.cache = evaluate(it, ch, theta, quad);
    double eta_p = opts.prob_step.init;
    double eta_x = 0.0;
    bool eta_x_primed = false;

    double l_prev = out.cache.lagrangian(s, ch.power);
    for (int iter = 0; iter < opts.max_alt_iters; ++iter) {
        bool moved = false;
        if (free_probs) {
            const ObjectiveEval ev = objective_and_gradients(it.joint, it.cons, ch, theta, quad);
            moved |= eg_step(it, out.cache, ev.grad_probs, ch, theta, s, constraint.support,
                             opts.prob_step, eta_p, quad);
        }
        if (free_pos) {
            const ObjectiveEval ev = objective_and_gradients(it.joint, it.cons, ch, theta, quad);
            moved |= pos_step(it, out.cache, ev.grad_symbols, ch, theta, s, opts.pos_step, eta_x,
                              eta_x_primed, out.clamped, quad);
        }
        ++out.iterations;

        const double l_now = out.cache.lagrangian(s, ch.power);
        if (!moved || std::abs(l_now - l_prev) < opts.objective_tolerance) {
            out.converged = true;
            break;
        }
        l_prev = l_now;
        if (early_power_exit && out.cache.power > ch.power + opts.power_tolerance) break;
    }
    return out;
}

Iterate standard_start(const BroadcastChannel& ch, const StrategyConstraint& constraint, int m) {
    Iterate it;
    it.cons = standard_pam(m, ch.power).first;
    if (constraint.kind == StrategyConstraint::Kind::SM) {
        it.joint = uniform_sm_joint(constraint.m1, constraint.m2, m);
    } else {
        // Half diagonal, half uniform: keeps both I(U;Y2) and I(X;Y1|U) away
        // from degenerate zeros so either gradient direction is informative.
        it.joint.u_size = m;
        it.joint.x_size = m;
        it.joint.probs.assign(static_cast<std::size_t>(m) * m, 0.5 / (static_cast<double>(m) * m));
        for (int i = 0; i < m; ++i) it.joint.at(i, i) += 0.5 / m;
    }
    return it;
}

Iterate random_start(const BroadcastChannel& ch, const StrategyConstraint& constraint, int m,
                     const OptimizerOptions& opts, int restart_index) {
    Iterate it = standard_start(ch, constraint, m);
    const CounterRng rng = CounterRng(opts.seed).fork(0x5EEDULL + static_cast<std::uint64_t>(restart_index));
    std::uint64_t ctr = 0;

    if (constraint.probs_free) {
        double total = 0.0;
        for (std::size_t t = 0; t < it.joint.probs.size(); ++t) {
            if (constraint.support[t]) {
                it.joint.probs[t] = -std::log(rng.uniform(ctr++));
                total += it.joint.probs[t];
            } else {
                it.joint.probs[t] = 0.0;
            }
        }
        for (double& p : it.joint.probs) p /= total;
    }

    if (opts.optimize_positions) {
        auto h = half_positions(it.cons);
        for (double& v : h) v *= std::exp(0.25 * rng.gaussian(ctr++));
        std::sort(h.begin(), h.end());
        enforce_separation(h);
        it.cons = from_half(h);
        const double e = average_power(it.joint, it.cons);
        if (e > 0.0) {
            const double scale = std::sqrt(ch.power / e);
            for (double& v : it.cons.symbols) v *= scale;
        }
    }
    return it;
}

struct Candidate {
    Iterate it;
    EvalCache cache;
    double s = 0.0;
    bool alt_converged = false;
    bool clamped = false;
    bool valid = false;
};

OptResult finish(const Candidate& sel, const BroadcastChannel& ch, double theta,
                 const QuadratureSpec& quad, int iterations, bool power_warning,
                 bool power_met) {
    OptResult res;
    res.joint = sel.it.joint;
    res.constellation = sel.it.cons;
    const auto [r1, r2] = rate_pair(res.joint, res.constellation, ch, quad);
    res.r1 = r1;
    res.r2 = r2;
    res.objective = theta * r1 + (1.0 - theta) * r2;
    res.multiplier_s = sel.s;
    res.achieved_power = sel.cache.power;
    res.converged = sel.alt_converged && power_met;
    res.iterations = iterations;
    res.power_warning = power_warning;
    res.position_clamped = sel.clamped;
    return res;
}

OptResult solve_one(const Iterate& init, const BroadcastChannel& ch, double theta,
                    const StrategyConstraint& constraint, const OptimizerOptions& opts,
                    const QuadratureSpec& quad) {
    const bool free_probs = constraint.probs_free;
    const bool free_pos = opts.optimize_positions;
    const double tol = opts.power_tolerance;
    int iterations = 0;

    Candidate best; // highest-f power-feasible iterate seen anywhere
    auto offer = [&](const Iterate& it, const EvalCache& cache, double s, bool conv, bool clamped) {
        if (cache.power > ch.power + tol) return;
        if (!best.valid || cache.f > best.cache.f) {
            best = Candidate{it, cache, s, conv, clamped, true};
        }
    };

    {
        const EvalCache ev0 = evaluate(init, ch, theta, quad);
        offer(init, ev0, opts.s_lo, false, false);
    }

    if (!free_probs && !free_pos) {
        // Nothing varies with s; a single evaluation is the answer.
        Candidate c{init, evaluate(init, ch, theta, quad), opts.s_lo, true, false, true};
        if (c.cache.power > ch.power + tol) {
            throw bracket_error("solve_multiplier: fixed instance violates the power budget");
        }
        return finish(c, ch, theta, quad, 0, false, true);
    }

    std::vector<std::pair<double, double>> power_history; // (s, achieved power)

    // Feasible anchor at s_hi.
    Iterate it_hi = init;
    AltOutcome hi = alternate(it_hi, ch, theta, opts.s_hi, constraint, opts, quad, free_probs,
                              free_pos, false);
    iterations += hi.iterations;
    if (hi.cache.power > ch.power + tol) {
        throw bracket_error("solve_multiplier: power constraint unmet at s_hi");
    }
    offer(it_hi, hi.cache, opts.s_hi, hi.converged, hi.clamped);
    power_history.emplace_back(opts.s_hi, hi.cache.power);

    // Unconstrained probe at s_lo; abandoned as soon as it leaves the budget.
    Iterate it_lo = init;
    AltOutcome lo = alternate(it_lo, ch, theta, opts.s_lo, constraint, opts, quad, free_probs,
                              free_pos, true);
    iterations += lo.iterations;
    if (lo.converged && lo.cache.power <= ch.power + tol) {
        offer(it_lo, lo.cache, opts.s_lo, true, lo.clamped);
        Candidate c{it_lo, lo.cache, opts.s_lo, true, lo.clamped, true};
        return finish(c, ch, theta, quad, iterations, false, true);
    }
    power_history.emplace_back(opts.s_lo, lo.cache.power);

    double s_left = opts.s_lo, s_right = opts.s_hi;
    Iterate warm = it_hi;
    Candidate selected;
    for (int outer = 0; outer < opts.max_outer_iters && s_right - s_left > 1e-10; ++outer) {
        const double mid = 0.5 * (s_left + s_right);
        Iterate it_mid = warm;
        AltOutcome res = alternate(it_mid, ch, theta, mid, constraint, opts, quad, free_probs,
                                   free_pos, false);
        iterations += res.iterations;
        offer(it_mid, res.cache, mid, res.converged, res.clamped);
        power_history.emplace_back(mid, res.cache.power);

        if (std::abs(res.cache.power - ch.power) <= tol) {
            selected = Candidate{it_mid, res.cache, mid, res.converged, res.clamped, true};
            break;
        }
        (res.cache.power > ch.power ? s_left : s_right) = mid;
        warm = it_mid;
    }

    bool warning = false;
    std::sort(power_history.begin(), power_history.end());
    for (std::size_t k = 0; k + 1 < power_history.size(); ++k) {
        if (power_history[k].second < power_history[k + 1].second - 1e-6) warning = true;
    }

    if (selected.valid) {
        // Report the best feasible iterate if some earlier s did strictly
        // better; the multiplier path is not always monotone in f.
        if (best.valid && best.cache.f > selected.cache.f) selected = best;
        return finish(selected, ch, theta, quad, iterations, warning, true);
    }
    if (!best.valid) {
        throw bracket_error("solve_multiplier: no power-feasible iterate found in the bracket");
    }
    return finish(best, ch, theta, quad, iterations, true,
                  std::abs(best.cache.power - ch.power) <= tol);
}

void check_options(const OptimizerOptions& opts) {
    if (opts.restarts < 1) throw std::domain_error("OptimizerOptions: restarts must be >= 1");
    if (!(opts.power_tolerance > 0.0) || !(opts.objective_tolerance > 0.0)) {
        throw std::domain_error("OptimizerOptions: tolerances must be positive");
    }
    if (!(opts.s_lo >= 0.0) || !(opts.s_hi > opts.s_lo)) {
        throw std::domain_error("OptimizerOptions: need 0 <= s_lo < s_hi");
    }
}

void check_problem(const BroadcastChannel& ch, double theta, const StrategyConstraint& constraint,
                   int m) {
    if (!(theta >= 0.0 && theta <= 1.0)) throw std::domain_error("optimize_rates: theta must lie in [0, 1]");
    if (constraint.kind == StrategyConstraint::Kind::TimeSharing) {
        throw std::domain_error("optimize_rates: constraint kind must be GeneralSC or SM");
    }
    if (constraint.x_size != m) throw std::domain_error("optimize_rates: constraint built for a different M");
    if (m % 2 != 0) throw std::domain_error("optimize_rates: M must be even (symmetric constellation)");
    if (!(ch.power > 0.0) || !(ch.sigma1_sq > 0.0) || !(ch.sigma2_sq > 0.0)) {
        throw std::domain_error("optimize_rates: invalid channel");
    }
}

Iterate nth_start(const BroadcastChannel& ch, const StrategyConstraint& constraint, int m,
                  const OptimizerOptions& opts, int r) {
    const int warm = static_cast<int>(opts.warm_starts.size());
    if (r < warm) {
        const WarmStart& w = opts.warm_starts[r];
        if (w.joint.x_size != m || w.constellation.size() != m) {
            throw std::domain_error("optimize_rates: warm start size mismatch");
        }
        return Iterate{w.joint, w.constellation};
    }
    if (r == warm) return standard_start(ch, constraint, m);
    return random_start(ch, constraint, m, opts, r);
}

} // namespace

JointDistribution ascend_probabilities(const JointDistribution& joint, const Constellation& constellation,
                                       const BroadcastChannel& channel, double theta, double s,
                                       const std::vector<std::uint8_t>& mask, const OptimizerOptions& opts) {
    if (mask.size() != joint.probs.size()) throw std::domain_error("ascend_probabilities: mask size mismatch");
    const QuadratureSpec quad = gauss_hermite(opts.quad_order);
    Iterate it{joint, constellation};
    EvalCache cache = evaluate(it, channel, theta, quad);
    const ObjectiveEval ev = objective_and_gradients(joint, constellation, channel, theta, quad);
    double eta = opts.prob_step.init;
    eg_step(it, cache, ev.grad_probs, channel, theta, s, mask, opts.prob_step, eta, quad);
    return it.joint;
}

Constellation ascend_positions(const JointDistribution& joint, const Constellation& constellation,
                               const BroadcastChannel& channel, double theta, double s,
                               const OptimizerOptions& opts) {
    if (!is_symmetric(constellation)) throw std::domain_error("ascend_positions: constellation must be symmetric");
    const QuadratureSpec quad = gauss_hermite(opts.quad_order);
    Iterate it{joint, constellation};
    EvalCache cache = evaluate(it, channel, theta, quad);
    const ObjectiveEval ev = objective_and_gradients(joint, constellation, channel, theta, quad);
    double eta = 0.0;
    bool primed = false;
    bool clamped = false;
    pos_step(it, cache, ev.grad_symbols, channel, theta, s, opts.pos_step, eta, primed, clamped, quad);
    return it.cons;
}

OptResult solve_multiplier(const BroadcastChannel& channel, double theta,
                           const StrategyConstraint& constraint, int m, const OptimizerOptions& opts) {
    check_options(opts);
    check_problem(channel, theta, constraint, m);
    const QuadratureSpec quad = gauss_hermite(opts.quad_order);
    return solve_one(nth_start(channel, constraint, m, opts, 0), channel, theta, constraint, opts, quad);
}

OptResult optimize_rates(const BroadcastChannel& channel, double theta,
                         const StrategyConstraint& constraint, int m, const OptimizerOptions& opts) {
    check_options(opts);
    check_problem(channel, theta, constraint, m);
    const QuadratureSpec quad = gauss_hermite(opts.quad_order);

    OptResult best;
    bool have = false;
    int total_iters = 0;
    for (int r = 0; r < opts.restarts; ++r) {
        OptResult res = solve_one(nth_start(channel, constraint, m, opts, r), channel, theta,
                                  constraint, opts, quad);
        total_iters += res.iterations;
        if (!have || res.objective > best.objective) {
            best = std::move(res);
            have = true;
        }
    }
    best.iterations = total_iters;
    return best;
}

} // namespace bcshape
