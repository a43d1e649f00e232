#pragma once

#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssep/harness.hpp"

namespace ssep {

// CSV schemas (versioned in a leading comment line):
//   profiles: "# ssep-csv v1 profile" then header u,rho
//   traces:   "# ssep-csv v1 trace"   then header t,value
//   reports:  "# ssep-csv v1 experiment" then
//             experiment,N,theta,gamma,replica,observable,value
// Aggregate rows in report CSVs use replica = -1 and observable suffixes
// ":mean", ":std", ":ci".

void write_profile_csv(std::ostream& os, const std::vector<double>& u,
                       const std::vector<double>& rho);
void write_trace_csv(std::ostream& os, const std::vector<double>& t,
                     const std::vector<double>& value);
void write_report_csv(std::ostream& os, const ExperimentReport& report);

std::string report_to_json(const ExperimentReport& report);

struct CsvTable {
    std::string schema;  // "profile", "trace", "experiment", or "" if unheadered
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(std::istream& is);

// Minimal static SVG line plot. Each series is drawn as a polyline in its
// own color with a legend entry.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

std::string render_svg_plot(const std::vector<PlotSeries>& series,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label, bool log_log = false);

// Run configuration file: JSON mirroring ExperimentSpec plus seed and output
// paths. Unknown keys are rejected; Params constraints are re-validated.
struct RunConfig {
    ExperimentSpec spec;
    std::uint64_t seed = 1;
    std::string out_csv;
    std::string out_json;
    std::string out_svg;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

RunConfig parse_run_config(std::istream& is, const std::string& origin);
RunConfig load_run_config(const std::string& path);

}  // namespace ssep
