#include "ssep/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include <nlohmann/json.hpp>

namespace ssep {

namespace {

using nlohmann::json;

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

}  // namespace

void write_profile_csv(std::ostream& os, const std::vector<double>& u,
                       const std::vector<double>& rho) {
    os << "# ssep-csv v1 profile\n" << "u,rho\n";
    for (std::size_t i = 0; i < u.size(); ++i)
        os << fmt(u[i]) << ',' << fmt(rho[i]) << '\n';
}

void write_trace_csv(std::ostream& os, const std::vector<double>& t,
                     const std::vector<double>& value) {
    os << "# ssep-csv v1 trace\n" << "t,value\n";
    for (std::size_t i = 0; i < t.size(); ++i)
        os << fmt(t[i]) << ',' << fmt(value[i]) << '\n';
}

void write_report_csv(std::ostream& os, const ExperimentReport& report) {
    os << "# ssep-csv v1 experiment\n"
       << "experiment,N,theta,gamma,replica,observable,value\n";
    const std::string id = experiment_name(report.id);
    for (const auto& pt : report.points) {
        const std::string prefix = id + ',' + std::to_string(pt.n) + ',' +
                                   fmt(pt.theta) + ',' + fmt(pt.gamma) + ',';
        for (const auto& rec : pt.raw)
            os << prefix << rec.replica << ',' << rec.observable << ','
               << fmt(rec.value) << '\n';
        for (const auto& [name, st] : pt.aggregates) {
            os << prefix << "-1," << name << ":mean," << fmt(st.mean) << '\n';
            if (st.count >= 2) {
                os << prefix << "-1," << name << ":std," << fmt(st.stddev) << '\n';
                os << prefix << "-1," << name << ":ci," << fmt(st.ci_half) << '\n';
            }
        }
    }
}

std::string report_to_json(const ExperimentReport& report) {
    json j;
    j["experiment"] = experiment_name(report.id);
    j["master_seed"] = report.master_seed;
    j["pass"] = report.pass;
    j["diagnostics"] = report.diagnostics;
    if (report.fit) {
        j["fit"] = {{"slope", report.fit->slope},
                    {"intercept", report.fit->intercept},
                    {"residual_rms", report.fit->residual_rms}};
    }
    j["points"] = json::array();
    for (const auto& pt : report.points) {
        json p;
        p["N"] = pt.n;
        p["theta"] = pt.theta;
        p["gamma"] = pt.gamma;
        p["pass"] = pt.pass;
        p["skipped"] = pt.skipped;
        p["note"] = pt.note;
        for (const auto& [name, st] : pt.aggregates) {
            p["aggregates"][name] = {{"mean", st.mean},
                                     {"std", st.stddev},
                                     {"ci_half", st.ci_half},
                                     {"count", st.count}};
        }
        j["points"].push_back(std::move(p));
    }
    return j.dump(2);
}

CsvTable read_csv(std::istream& is) {
    CsvTable table;
    std::string line;
    bool header_seen = false;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line.rfind("# ssep-csv", 0) == 0) {
            const auto pos = line.rfind(' ');
            table.schema = line.substr(pos + 1);
            continue;
        }
        if (line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string field;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (!header_seen) {
            table.columns = std::move(fields);
            header_seen = true;
        } else {
            table.rows.push_back(std::move(fields));
        }
    }
    return table;
}

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};

double map_coord(double v, double lo, double hi, double px_lo, double px_hi) {
    if (hi <= lo) return 0.5 * (px_lo + px_hi);
    return px_lo + (v - lo) / (hi - lo) * (px_hi - px_lo);
}

}  // namespace

std::string render_svg_plot(const std::vector<PlotSeries>& series,
                            const std::string& title, const std::string& x_label,
                            const std::string& y_label, bool log_log) {
    const double w = 720, h = 480, ml = 70, mr = 160, mt = 45, mb = 55;
    auto tx = [log_log](double v) { return log_log ? std::log10(v) : v; };

    double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
    for (const auto& s : series)
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_log && (s.x[i] <= 0 || s.y[i] <= 0)) continue;
            xmin = std::min(xmin, tx(s.x[i]));
            xmax = std::max(xmax, tx(s.x[i]));
            ymin = std::min(ymin, tx(s.y[i]));
            ymax = std::max(ymax, tx(s.y[i]));
        }
    if (xmin > xmax) { xmin = 0; xmax = 1; }
    if (ymin > ymax) { ymin = 0; ymax = 1; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }

    std::ostringstream os;
    os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
       << "' viewBox='0 0 " << w << ' ' << h << "'>\n"
       << "<rect width='100%' height='100%' fill='white'/>\n"
       << "<text x='" << w / 2 << "' y='24' text-anchor='middle' font-size='16'>"
       << title << "</text>\n";

    // axes
    os << "<line x1='" << ml << "' y1='" << h - mb << "' x2='" << w - mr << "' y2='"
       << h - mb << "' stroke='black'/>\n"
       << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << h - mb
       << "' stroke='black'/>\n";

    // ticks
    for (int i = 0; i <= 4; ++i) {
        const double fx = xmin + (xmax - xmin) * i / 4.0;
        const double fy = ymin + (ymax - ymin) * i / 4.0;
        const double px = map_coord(fx, xmin, xmax, ml, w - mr);
        const double py = map_coord(fy, ymin, ymax, h - mb, mt);
        const double lx = log_log ? std::pow(10.0, fx) : fx;
        const double ly = log_log ? std::pow(10.0, fy) : fy;
        os << "<text x='" << px << "' y='" << h - mb + 18
           << "' text-anchor='middle' font-size='11'>" << std::setprecision(4) << lx
           << "</text>\n"
           << "<text x='" << ml - 8 << "' y='" << py + 4
           << "' text-anchor='end' font-size='11'>" << std::setprecision(4) << ly
           << "</text>\n";
    }
    os << "<text x='" << (ml + w - mr) / 2 << "' y='" << h - 12
       << "' text-anchor='middle' font-size='13'>" << x_label << "</text>\n"
       << "<text x='18' y='" << (mt + h - mb) / 2
       << "' text-anchor='middle' font-size='13' transform='rotate(-90 18 "
       << (mt + h - mb) / 2 << ")'>" << y_label << "</text>\n";

    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % (sizeof(kPalette) / sizeof(kPalette[0]))];
        std::ostringstream pts;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (log_log && (s.x[i] <= 0 || s.y[i] <= 0)) continue;
            pts << map_coord(tx(s.x[i]), xmin, xmax, ml, w - mr) << ','
                << map_coord(tx(s.y[i]), ymin, ymax, h - mb, mt) << ' ';
        }
        os << "<polyline fill='none' stroke='" << color << "' stroke-width='1.5' points='"
           << pts.str() << "'/>\n";
        const double ly = mt + 18.0 * si;
        os << "<line x1='" << w - mr + 10 << "' y1='" << ly << "' x2='" << w - mr + 34
           << "' y2='" << ly << "' stroke='" << color << "' stroke-width='1.5'/>\n"
           << "<text x='" << w - mr + 40 << "' y='" << ly + 4 << "' font-size='11'>"
           << s.label << "</text>\n";
    }
    os << "</svg>\n";
    return os.str();
}

namespace {

void require_keys(const json& j, const std::vector<std::string>& known,
                  const std::string& origin) {
    for (const auto& [key, _] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ConfigError(origin + ": unknown key '" + key + "'");
}

}  // namespace

RunConfig parse_run_config(std::istream& is, const std::string& origin) {
    json j;
    try {
        j = json::parse(is);
    } catch (const json::parse_error& e) {
        throw ConfigError(origin + ": " + e.what());
    }
    require_keys(j,
                 {"experiment", "N", "theta", "gamma", "c", "alpha", "beta", "replicas",
                  "t", "init", "test_functions", "trace_samples", "window_start",
                  "min_events", "burn_in_micro", "thresholds", "max_events_per_point",
                  "seed", "out_csv", "out_json", "out_svg"},
                 origin);

    RunConfig rc;
    try {
        rc.spec.id = experiment_by_name(j.at("experiment").get<std::string>());
        rc.spec.n_values = j.at("N").get<std::vector<int>>();
        rc.spec.theta_values = j.at("theta").get<std::vector<double>>();
        if (j.contains("gamma")) {
            if (j["gamma"].is_array())
                rc.spec.gamma_values = j["gamma"].get<std::vector<double>>();
            else
                rc.spec.gamma_values = {j["gamma"].get<double>()};
        }
        if (j.contains("c")) rc.spec.c = j["c"].get<double>();
        if (j.contains("alpha")) rc.spec.alpha = j["alpha"].get<double>();
        if (j.contains("beta")) rc.spec.beta = j["beta"].get<double>();
        if (j.contains("replicas")) rc.spec.replicas = j["replicas"].get<int>();
        if (j.contains("t")) rc.spec.t_end = j["t"].get<double>();
        if (j.contains("init")) rc.spec.init = j["init"].get<std::string>();
        if (j.contains("test_functions"))
            rc.spec.test_functions = j["test_functions"].get<std::vector<std::string>>();
        if (j.contains("trace_samples"))
            rc.spec.trace_samples = j["trace_samples"].get<int>();
        if (j.contains("window_start"))
            rc.spec.window_start = j["window_start"].get<double>();
        if (j.contains("min_events"))
            rc.spec.min_events = j["min_events"].get<std::uint64_t>();
        if (j.contains("burn_in_micro"))
            rc.spec.burn_in_micro = j["burn_in_micro"].get<double>();
        if (j.contains("max_events_per_point"))
            rc.spec.max_events_per_point = j["max_events_per_point"].get<double>();
        if (j.contains("thresholds"))
            rc.spec.thresholds =
                j["thresholds"].get<std::map<std::string, double>>();
        if (j.contains("seed")) rc.seed = j["seed"].get<std::uint64_t>();
        if (j.contains("out_csv")) rc.out_csv = j["out_csv"].get<std::string>();
        if (j.contains("out_json")) rc.out_json = j["out_json"].get<std::string>();
        if (j.contains("out_svg")) rc.out_svg = j["out_svg"].get<std::string>();
    } catch (const json::exception& e) {
        throw ConfigError(origin + ": " + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(origin + ": " + e.what());
    }

    if (rc.spec.n_values.empty()) throw ConfigError(origin + ": N grid is empty");
    if (rc.spec.theta_values.empty())
        throw ConfigError(origin + ": theta grid is empty");
    if (rc.spec.replicas < 2)
        throw ConfigError(origin + ": replicas must be >= 2 for CI computation");
    // Re-validate the physical constraints for every grid point now, so a bad
    // config fails at parse time and not replicas deep into a sweep.
    for (int n : rc.spec.n_values)
        for (double theta : rc.spec.theta_values)
            for (double gamma : rc.spec.gamma_values) {
                try {
                    (void)Params::make(n, rc.spec.c, theta, rc.spec.alpha, rc.spec.beta,
                                       gamma);
                } catch (const std::invalid_argument& e) {
                    throw ConfigError(origin + ": " + e.what());
                }
            }
    return rc;
}

RunConfig load_run_config(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError(path + ": cannot open");
    return parse_run_config(f, path);
}

}  // namespace ssep
