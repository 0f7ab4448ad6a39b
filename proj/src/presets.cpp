#include "bcshape/config.hpp"

#include "bcshape/errors.hpp"

#include <map>
#include <string>
#include <vector>

namespace bcshape {

namespace {

ExperimentConfig base_config(const std::string& name, int m, double snr1, double snr2) {
    ExperimentConfig c;
    c.name = name;
    c.m = m;
    c.snr1_db = snr1;
    c.snr2_db = snr2;
    return c;
}

ExperimentConfig table2_row(int m, double snr1, double snr2, int row) {
    ExperimentConfig c = base_config("table2-m" + std::to_string(m) + "-row" + std::to_string(row),
                                     m, snr1, snr2);
    c.strategies = {"sm-uniform", "sm-optimized"};
    c.gains = {GainPair{"sm-optimized", {"sm-uniform"}}};
    return c;
}

ExperimentConfig table3_row(int m, double snr1, double snr2, int row) {
    ExperimentConfig c = base_config("table3-m" + std::to_string(m) + "-row" + std::to_string(row),
                                     m, snr1, snr2);
    c.strategies = {"ts", "sm-optimized", "sc"};
    c.gains = {GainPair{"sm-optimized", {"ts"}}, GainPair{"sc", {"ts", "sm-optimized"}}};
    c.compute_mg_snr = false; // rate gains only; SNR savings are the Table 2 metric
    if (m >= 8) c.theta_points = 31;
    return c;
}

ExperimentConfig fig1(const std::string& name, int m, double snr1, double snr2) {
    ExperimentConfig c = base_config(name, m, snr1, snr2);
    c.strategies = m >= 4 ? std::vector<std::string>{"ts", "sm-uniform", "sm-optimized", "sc"}
                          : std::vector<std::string>{"ts"};
    if (m >= 8) c.theta_points = 31;
    return c;
}

std::map<std::string, ExperimentConfig> build_presets() {
    std::map<std::string, ExperimentConfig> presets;
    auto add = [&](ExperimentConfig c) { presets.emplace(c.name, std::move(c)); };

    const double t2_snr2[3][4] = {{8, 6, 4, 2}, {14, 12, 10, 8}, {16, 14, 12, 10}};
    const int t2_m[3] = {4, 8, 16};
    const double t2_snr1[3] = {10, 16, 18};
    for (int g = 0; g < 3; ++g) {
        for (int r = 0; r < 4; ++r) add(table2_row(t2_m[g], t2_snr1[g], t2_snr2[g][r], r + 1));
    }

    for (int r = 0; r < 5; ++r) add(table3_row(4, 10, 8 - 2 * r, r + 1));
    for (int r = 0; r < 4; ++r) add(table3_row(8, 16, 14 - 2 * r, r + 1));
    for (int r = 0; r < 4; ++r) add(table3_row(16, 18, 16 - 2 * r, r + 1));

    add(fig1("fig1a", 4, 10, 8));
    add(fig1("fig1b", 8, 16, 12));
    add(fig1("fig1c", 16, 18, 12));
    return presets;
}

const std::map<std::string, ExperimentConfig>& presets() {
    static const std::map<std::string, ExperimentConfig> p = build_presets();
    return p;
}

} // namespace

ExperimentConfig preset_config(const std::string& name) {
    const auto& all = presets();
    const auto it = all.find(name);
    if (it == all.end()) {
        throw config_error("unknown preset '" + name + "'; run with --list-presets to see the catalog");
    }
    return it->second;
}

std::vector<std::string> preset_names() {
    std::vector<std::string> names;
    for (const auto& [name, cfg] : presets()) names.push_back(name);
    return names;
}

} // namespace bcshape
