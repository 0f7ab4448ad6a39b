#ifndef BCSHAPE_IO_HPP
#define BCSHAPE_IO_HPP

#include "bcshape/metrics.hpp"
#include "bcshape/region.hpp"

#include <string>
#include <vector>

namespace bcshape {

/// Shortest decimal form that round-trips the double exactly (17 significant
/// digits).
std::string format_g17(double v);

/// Frontier CSV: header `strategy,theta,r2,r1_plus_r2,converged`.
void write_frontier_csv(const std::string& path, const std::vector<const RegionFrontier*>& frontiers);

struct ParsedFrontierRow {
    std::string strategy;
    double theta = 0.0;
    double r2 = 0.0;
    double r1_plus_r2 = 0.0;
    bool converged = true;
};

std::vector<ParsedFrontierRow> read_frontier_csv(const std::string& path);

/// Gain CSV: header `r2,delta_snr_db,g_r1_percent`, one row per sample,
/// followed by a `#` summary line with the report maxima.
void write_gain_csv(const std::string& path, const GainReport& report);

} // namespace bcshape

#endif
