#include "bcshape/metrics.hpp"

#include "bcshape/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace bcshape {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

long long delta_key(double delta_db) { return std::llround(delta_db * 1048576.0); }

} // namespace

const RegionFrontier& CachedFrontierBuilder::at(double delta_db) {
    const long long key = delta_key(delta_db);
    auto it = cache_.find(key);
    if (it == cache_.end()) {
        RegionFrontier f = builder_(delta_db);
        if (!f.enveloped) f = upper_envelope(f);
        it = cache_.emplace(key, std::move(f)).first;
    }
    return it->second;
}

double shaping_gain_at(double r_total, double r2, CachedFrontierBuilder& b_builder,
                       const GainSearchOptions& opts) {
    if (region_contains(b_builder.at(opts.delta_lo_db), r_total, r2, opts.contain_slack)) {
        return 0.0;
    }
    if (!region_contains(b_builder.at(opts.delta_hi_db), r_total, r2, opts.contain_slack)) {
        return kInf;
    }
    double lo = opts.delta_lo_db, hi = opts.delta_hi_db;
    while (hi - lo > opts.delta_tol_db) {
        const double mid = 0.5 * (lo + hi);
        if (region_contains(b_builder.at(mid), r_total, r2, opts.contain_slack)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

GainReport max_shaping_gain(const RegionFrontier& a_hull, CachedFrontierBuilder& b_builder,
                            const BroadcastChannel& channel, const std::vector<double>& r2_grid,
                            const GainSearchOptions& opts) {
    if (!a_hull.enveloped) throw std::domain_error("max_shaping_gain: A must be enveloped");

    GainReport report;
    report.tag_a = a_hull.label;
    report.channel = channel;
    report.delta_snr_db_gap = channel.snr1_db - channel.snr2_db;
    report.samples.reserve(r2_grid.size());

    const double a_max_r2 = a_hull.points.back().r2;
    for (double r2 : r2_grid) {
        if (!(r2 >= 0.0 && r2 <= a_max_r2 + 1e-12)) {
            throw std::domain_error("max_shaping_gain: r2 grid must lie within A's support");
        }
        GainSample sample;
        sample.r2 = r2;
        const double target = hull_max_r_total_at(a_hull, std::min(r2, a_max_r2));
        const double delta = shaping_gain_at(target, r2, b_builder, opts);
        if (std::isinf(delta)) {
            sample.delta_unbounded = true;
        }
        sample.delta_snr_db = delta;
        report.samples.push_back(sample);

        if (!sample.delta_unbounded &&
            (std::isnan(report.mg_snr_db) || delta > report.mg_snr_db)) {
            report.mg_snr_db = delta;
            report.mg_snr_argmax_r2 = r2;
        }
    }
    return report;
}

GainReport max_rate_gain(const RegionFrontier& a_hull, const RegionFrontier& b_hull,
                         const std::vector<double>& r2_grid, const GainSearchOptions& opts) {
    if (!a_hull.enveloped || !b_hull.enveloped) {
        throw std::domain_error("max_rate_gain: both frontiers must be enveloped");
    }
    if (!same_channel(a_hull.channel, b_hull.channel)) {
        throw std::domain_error("max_rate_gain: frontiers belong to different channels");
    }

    GainReport report;
    report.tag_a = a_hull.label;
    report.tag_b = b_hull.label;
    report.channel = a_hull.channel;
    report.delta_snr_db_gap = report.channel.snr1_db - report.channel.snr2_db;

    const double a_max_r2 = a_hull.points.back().r2;
    const double b_max_r2 = b_hull.points.back().r2;
    for (double r2 : r2_grid) {
        GainSample sample;
        sample.r2 = r2;
        if (r2 > b_max_r2 + 1e-12) {
            sample.skipped = true; // B cannot reach this r2 at any rate split
            report.samples.push_back(sample);
            continue;
        }
        const double ta = hull_max_r_total_at(a_hull, std::min(r2, a_max_r2));
        const double tb = hull_max_r_total_at(b_hull, r2);
        if (!(tb > 1e-12)) {
            sample.skipped = true;
            report.samples.push_back(sample);
            continue;
        }
        sample.g_r1_percent = (ta - tb) / tb * 100.0;
        report.samples.push_back(sample);

        if (std::isnan(report.mg_r1_unrestricted_percent) ||
            sample.g_r1_percent > report.mg_r1_unrestricted_percent) {
            report.mg_r1_unrestricted_percent = sample.g_r1_percent;
        }
        const bool admissible = !opts.restrict_to_positive || sample.g_r1_percent >= 0.0;
        if (admissible &&
            (std::isnan(report.mg_r1_percent) || sample.g_r1_percent > report.mg_r1_percent)) {
            report.mg_r1_percent = sample.g_r1_percent;
            report.mg_r1_argmax_r2 = r2;
        }
    }
    if (std::isnan(report.mg_r1_percent) && !report.samples.empty()) {
        report.mg_r1_percent = 0.0; // A never outperforms B on the grid
    }
    return report;
}

std::vector<double> default_r2_grid(const RegionFrontier& a_hull, int points) {
    if (!a_hull.enveloped || a_hull.points.empty()) {
        throw std::domain_error("default_r2_grid: need an enveloped, nonempty hull");
    }
    return linspace(a_hull.points.front().r2, a_hull.points.back().r2, points);
}

} // namespace bcshape
