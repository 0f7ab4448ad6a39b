#include "bcshape/io.hpp"

#include "bcshape/errors.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace bcshape {

std::string format_g17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_frontier_csv(const std::string& path, const std::vector<const RegionFrontier*>& frontiers) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << "strategy,theta,r2,r1_plus_r2,converged\n";
    for (const RegionFrontier* f : frontiers) {
        for (const auto& pt : f->points) {
            out << pt.strategy << ',' << format_g17(pt.theta) << ',' << format_g17(pt.r2) << ','
                << format_g17(pt.r_total) << ',' << (pt.converged ? 1 : 0) << '\n';
        }
        for (double theta : f->failed_thetas) {
            out << "# failed theta=" << format_g17(theta) << " strategy=" << f->label << '\n';
        }
    }
}

std::vector<ParsedFrontierRow> read_frontier_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw config_error("cannot open '" + path + "' for reading");
    std::vector<ParsedFrontierRow> rows;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (header) {
            if (line != "strategy,theta,r2,r1_plus_r2,converged") {
                throw config_error("'" + path + "': unexpected frontier header '" + line + "'");
            }
            header = false;
            continue;
        }
        std::istringstream ss(line);
        ParsedFrontierRow row;
        std::string field;
        if (!std::getline(ss, row.strategy, ',')) throw config_error("'" + path + "': short row");
        auto next_double = [&](double& dst) {
            if (!std::getline(ss, field, ',')) throw config_error("'" + path + "': short row");
            dst = std::strtod(field.c_str(), nullptr);
        };
        next_double(row.theta);
        next_double(row.r2);
        next_double(row.r1_plus_r2);
        if (!std::getline(ss, field, ',')) throw config_error("'" + path + "': short row");
        row.converged = field != "0";
        rows.push_back(std::move(row));
    }
    return rows;
}

void write_gain_csv(const std::string& path, const GainReport& report) {
    std::ofstream out(path);
    if (!out) throw config_error("cannot open '" + path + "' for writing");
    out << "r2,delta_snr_db,g_r1_percent\n";
    for (const auto& s : report.samples) {
        out << format_g17(s.r2) << ',';
        if (s.delta_unbounded) {
            out << "inf";
        } else if (!std::isnan(s.delta_snr_db)) {
            out << format_g17(s.delta_snr_db);
        }
        out << ',';
        if (!s.skipped && !std::isnan(s.g_r1_percent)) out << format_g17(s.g_r1_percent);
        out << '\n';
    }
    out << "# a=" << report.tag_a << " b=" << report.tag_b
        << " snr1_db=" << format_g17(report.channel.snr1_db)
        << " snr2_db=" << format_g17(report.channel.snr2_db)
        << " mg_snr_db=" << format_g17(report.mg_snr_db)
        << " mg_r1_percent=" << format_g17(report.mg_r1_percent)
        << " mg_r1_unrestricted_percent=" << format_g17(report.mg_r1_unrestricted_percent) << '\n';
}

} // namespace bcshape
