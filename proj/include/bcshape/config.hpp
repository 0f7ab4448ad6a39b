#ifndef BCSHAPE_CONFIG_HPP
#define BCSHAPE_CONFIG_HPP

#include "bcshape/metrics.hpp"
#include "bcshape/optimizer.hpp"

#include <string>
#include <vector>

namespace bcshape {

struct GainPair {
    std::string a;
    std::vector<std::string> b; ///< more than one entry means the union frontier
};

struct ExperimentConfig {
    std::string name = "experiment";
    int m = 4;
    double snr1_db = 10.0;
    double snr2_db = 8.0;
    double power = 1.0;
    std::vector<std::string> strategies{"ts", "sm-uniform", "sm-optimized", "sc"};
    int theta_points = 51;
    std::string out_dir = "out";
    OptimizerOptions optimizer;
    GainSearchOptions gain;
    std::vector<GainPair> gains;
    bool compute_mg_snr = true;
    bool compute_mg_r1 = true;
    /// Cheaper settings for the shifted-frontier probes of the shaping-gain
    /// bisection; 0 keeps the base value.
    int probe_restarts = 2;
    int probe_theta_points = 0;

    int effective_probe_theta_points() const {
        return probe_theta_points > 0 ? probe_theta_points : theta_points;
    }
};

/// Parses the JSON experiment description; unknown or ill-typed fields raise
/// config_error naming the field.
ExperimentConfig config_from_json_text(const std::string& text, const std::string& origin);
ExperimentConfig config_from_json_file(const std::string& path);

void validate(const ExperimentConfig& config);

ExperimentConfig preset_config(const std::string& name);
std::vector<std::string> preset_names();

} // namespace bcshape

#endif
