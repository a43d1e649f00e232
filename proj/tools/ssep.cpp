// ssep: boundary-driven exclusion process simulator and verification harness.

#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ssep/engine.hpp"
#include "ssep/harness.hpp"
#include "ssep/io.hpp"
#include "ssep/observables.hpp"
#include "ssep/pde.hpp"
#include "ssep/theory.hpp"

namespace {

using namespace ssep;

struct ModelArgs {
    int n = 64;
    double c = 1.0, theta = 0.0, alpha = 0.2, beta = 0.8, gamma = 0.0;

    void attach(CLI::App* cmd, bool with_gamma = true) {
        cmd->add_option("--N", n, "scaling parameter N (>= 2)");
        cmd->add_option("--c", c, "boundary rate constant");
        cmd->add_option("--theta", theta, "reservoir-coupling exponent");
        cmd->add_option("--alpha", alpha, "left reservoir density");
        cmd->add_option("--beta", beta, "right reservoir density");
        if (with_gamma) cmd->add_option("--gamma", gamma, "extra time-scaling exponent");
    }
    Params make() const { return Params::make(n, c, theta, alpha, beta, gamma); }
};

Configuration build_init(const std::string& kind, const Params& p, Xoshiro256pp& rng) {
    if (kind == "full") return make_all_occupied(p.n);
    if (kind == "empty") return make_all_empty(p.n);
    if (kind == "step") return make_left_step(p.n);
    if (kind.rfind("bernoulli:", 0) == 0) {
        const double rho = std::stod(kind.substr(10));
        return make_bernoulli_profile(p.n, [rho](double) { return rho; }, rng);
    }
    if (kind.rfind("count:", 0) == 0) {
        const double frac = std::stod(kind.substr(6));
        return make_fixed_count(p.n, static_cast<int>(std::lround(frac * p.num_sites())),
                                rng);
    }
    throw CLI::ValidationError("--init", "unknown initial condition '" + kind + "'");
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path + " for writing");
    f << content;
}

int cmd_simulate(const ModelArgs& model, double t_end, std::uint64_t seed,
                 const std::string& init, int samples, const std::string& trace_out,
                 const std::string& profile_out) {
    const Params p = model.make();
    Xoshiro256pp init_rng(seed, 0x5eedull);
    Simulation sim(p, build_init(init, p, init_rng), SeedSpec{seed, 0});

    std::vector<double> times(samples);
    for (int i = 0; i < samples; ++i)
        times[i] = t_end * (samples == 1 ? 1.0 : static_cast<double>(i) / (samples - 1));
    TraceSampler trace(times, mean_density);
    ProfileAverage prof(p.n);
    JumpCounter jumps(p);
    PathIntegral left_int(p, Integrand::left_minus_alpha);
    PathIntegral right_int(p, Integrand::right_minus_beta);
    Observer* obs[] = {&trace, &prof, &jumps, &left_int, &right_int};
    sim.run_until(t_end, obs);

    std::cout << "t_macro " << sim.clock().macro_time() << "\n"
              << "events " << sim.event_count() << "\n"
              << "mean_density " << mean_density(sim.config()) << "\n"
              << "boundary_flips " << jumps.boundary_flips() << "\n"
              << "qv_mean_density " << jumps.qv_mean_density() << "\n"
              << "int(eta(1)-alpha) " << left_int.value() << "\n"
              << "int(eta(N-1)-beta) " << right_int.value() << "\n";
    if (!trace_out.empty()) {
        std::ofstream f(trace_out);
        write_trace_csv(f, trace.times(), trace.values());
    }
    if (!profile_out.empty()) {
        std::vector<double> u(p.num_sites());
        for (int x = 1; x <= p.num_sites(); ++x)
            u[x - 1] = static_cast<double>(x) / p.n;
        std::ofstream f(profile_out);
        write_profile_csv(f, u, prof.profile());
    }
    return 0;
}

int cmd_stationary_exact(const ModelArgs& model, const std::string& out) {
    const Params p = model.make();
    const auto profile = exact_stationary_profile(p);
    std::vector<double> u(profile.size());
    for (std::size_t i = 0; i < profile.size(); ++i)
        u[i] = static_cast<double>(i + 1) / p.n;
    if (out.empty()) {
        for (std::size_t i = 0; i < profile.size(); ++i)
            std::cout << u[i] << ' ' << profile[i] << '\n';
    } else {
        std::ofstream f(out);
        write_profile_csv(f, u, profile);
    }
    return 0;
}

int cmd_brute_force(const ModelArgs& model) {
    const Params p = model.make();
    const StationaryLaw law = brute_force_stationary(p);
    if (!law.ok) {
        std::cerr << "error: " << law.error << '\n';
        return 2;
    }
    std::cout << "# state probability (bit x-1 = eta(x))\n";
    for (std::size_t s = 0; s < law.probabilities.size(); ++s)
        std::cout << s << ' ' << law.probabilities[s] << '\n';
    std::cout << "# marginals P(eta(x)=1)\n";
    for (std::size_t x = 0; x < law.marginals.size(); ++x)
        std::cout << x + 1 << ' ' << law.marginals[x] << '\n';
    return 0;
}

int cmd_pde(const std::string& bc_name, double alpha, double beta, double c, int m,
            double dt, double t_end, const std::string& init, const std::string& out) {
    BoundaryCondition bc;
    if (bc_name == "dirichlet") bc = BoundaryCondition::dirichlet(alpha, beta);
    else if (bc_name == "robin") bc = BoundaryCondition::robin(c, alpha, beta);
    else if (bc_name == "neumann") bc = BoundaryCondition::neumann();
    else throw CLI::ValidationError("--bc", "unknown boundary condition");

    GridFunction rho0;
    if (init == "affine")
        rho0 = grid_from_function(m, [&](double u) { return (beta - alpha) * u + alpha; });
    else if (init == "step")
        rho0 = grid_from_function(
            m, [](double u) { return u < 0.5 ? 1.0 : (u > 0.5 ? 0.0 : 0.5); });
    else if (init == "sine")
        rho0 = grid_from_function(m, [](double u) { return std::sin(3.14159265358979 * u); });
    else if (init.rfind("const:", 0) == 0) {
        const double v = std::stod(init.substr(6));
        rho0 = grid_from_function(m, [v](double) { return v; });
    } else {
        throw CLI::ValidationError("--init", "unknown initial profile '" + init + "'");
    }

    const GridFunction sol = solve_heat(bc, std::move(rho0), t_end, dt);
    std::vector<double> u(sol.values.size());
    for (int j = 0; j <= sol.resolution(); ++j) u[j] = sol.u(j);
    if (out.empty()) {
        for (std::size_t j = 0; j < u.size(); ++j)
            std::cout << u[j] << ' ' << sol.values[j] << '\n';
    } else {
        std::ofstream f(out);
        write_profile_csv(f, u, sol.values);
    }
    return 0;
}

void emit_report(const ExperimentReport& report, const std::string& out_csv,
                 const std::string& out_json) {
    for (const auto& pt : report.points) {
        std::cout << (pt.skipped ? "[SKIP]" : pt.pass ? "[PASS]" : "[FAIL]") << ' '
                  << experiment_name(report.id) << " N=" << pt.n
                  << " theta=" << pt.theta << " gamma=" << pt.gamma << " : " << pt.note
                  << '\n';
    }
    for (const auto& d : report.diagnostics) std::cout << "note: " << d << '\n';
    if (report.fit)
        std::cout << "fit: slope=" << report.fit->slope
                  << " residual_rms=" << report.fit->residual_rms << '\n';
    if (!out_csv.empty()) {
        std::ofstream f(out_csv);
        write_report_csv(f, report);
    }
    if (!out_json.empty()) write_file(out_json, report_to_json(report));
}

int cmd_verify(const std::string& which, std::uint64_t seed, const std::string& out_csv,
               const std::string& out_json) {
    std::vector<ExperimentSpec> specs;
    if (which == "LT") {
        specs = {acceptance_lt_spec(0.5), acceptance_lt_spec(1.0),
                 acceptance_lt_spec(1.5), acceptance_lt_subcritical_spec()};
    } else if (which == "all") {
        for (const char* id : {"OR", "HS", "HD", "RL", "QV"})
            specs.push_back(acceptance_spec(experiment_by_name(id)));
        specs.push_back(acceptance_lt_spec(0.5));
        specs.push_back(acceptance_lt_spec(1.0));
        specs.push_back(acceptance_lt_spec(1.5));
        specs.push_back(acceptance_lt_subcritical_spec());
    } else {
        specs = {acceptance_spec(experiment_by_name(which))};
    }
    bool all_pass = true;
    for (const auto& spec : specs) {
        const ExperimentReport report = run_experiment(spec, seed);
        emit_report(report, out_csv, out_json);
        all_pass = all_pass && report.pass;
    }
    std::cout << (all_pass ? "VERIFY PASS" : "VERIFY FAIL") << '\n';
    return all_pass ? 0 : 1;
}

int cmd_sweep(const std::string& config_path) {
    const RunConfig rc = load_run_config(config_path);
    const ExperimentReport report = run_experiment(rc.spec, rc.seed);
    emit_report(report, rc.out_csv, rc.out_json);
    if (!rc.out_svg.empty()) {
        // One series per (theta, gamma, observable): aggregate mean vs N.
        std::map<std::string, PlotSeries> series;
        for (const auto& pt : report.points)
            for (const auto& [name, st] : pt.aggregates) {
                const std::string key = "theta=" + std::to_string(pt.theta) +
                                        " gamma=" + std::to_string(pt.gamma) + " " + name;
                series[key].label = key;
                series[key].x.push_back(pt.n);
                series[key].y.push_back(st.mean);
            }
        std::vector<PlotSeries> list;
        for (auto& [_, s] : series) list.push_back(std::move(s));
        write_file(rc.out_svg,
                   render_svg_plot(list, experiment_name(report.id), "N", "estimate",
                                   /*log_log=*/true));
    }
    return report.pass ? 0 : 1;
}

int cmd_plot(const std::string& in, const std::string& out) {
    std::ifstream f(in);
    if (!f) throw std::runtime_error("cannot open " + in);
    const CsvTable table = read_csv(f);
    std::vector<PlotSeries> series;
    bool log_log = false;
    if (table.schema == "profile" || table.schema == "trace" || table.schema.empty()) {
        PlotSeries s;
        s.label = table.columns.size() > 1 ? table.columns[1] : "value";
        for (const auto& row : table.rows) {
            if (row.size() < 2) continue;
            s.x.push_back(std::stod(row[0]));
            s.y.push_back(std::stod(row[1]));
        }
        series.push_back(std::move(s));
    } else if (table.schema == "experiment") {
        // columns: experiment,N,theta,gamma,replica,observable,value
        std::map<std::string, PlotSeries> by_key;
        for (const auto& row : table.rows) {
            if (row.size() < 7 || row[4] != "-1") continue;
            if (row[5].size() < 5 || row[5].rfind(":mean") != row[5].size() - 5) continue;
            const std::string key = "theta=" + row[2] + " " + row[5];
            by_key[key].label = key;
            by_key[key].x.push_back(std::stod(row[1]));
            by_key[key].y.push_back(std::stod(row[6]));
        }
        for (auto& [_, s] : by_key) series.push_back(std::move(s));
        log_log = true;
    } else {
        throw std::runtime_error("unknown csv schema: " + table.schema);
    }
    const std::string x_label = table.columns.empty() ? "x" : table.columns[0];
    write_file(out, render_svg_plot(series, in, x_label, "value", log_log));
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-driven SSEP simulator and verification harness"};
    app.require_subcommand(1);

    // simulate
    auto* sim = app.add_subcommand("simulate", "run one trajectory and dump observables");
    ModelArgs sim_model;
    sim_model.attach(sim);
    double sim_t = 1.0;
    std::uint64_t sim_seed = 1;
    std::string sim_init = "empty", sim_trace_out, sim_profile_out;
    int sim_samples = 101;
    sim->add_option("--t", sim_t, "macroscopic horizon");
    sim->add_option("--seed", sim_seed, "master seed");
    sim->add_option("--init", sim_init, "full|empty|step|bernoulli:<rho>|count:<frac>");
    sim->add_option("--samples", sim_samples, "trace sample count");
    sim->add_option("--trace-out", sim_trace_out, "write mean-density trace CSV");
    sim->add_option("--profile-out", sim_profile_out, "write time-averaged profile CSV");

    // stationary-exact
    auto* stat = app.add_subcommand("stationary-exact",
                                    "finite-N stationary profile (tridiagonal solve)");
    ModelArgs stat_model;
    stat_model.attach(stat, /*with_gamma=*/false);
    std::string stat_out;
    stat->add_option("--out", stat_out, "profile CSV path");

    // brute-force
    auto* brute = app.add_subcommand("brute-force",
                                     "exact stationary law of the full generator (N<=12)");
    ModelArgs brute_model;
    brute_model.attach(brute, /*with_gamma=*/false);

    // pde
    auto* pde = app.add_subcommand("pde", "heat-equation solve on [0,1]");
    std::string pde_bc = "dirichlet", pde_init = "step", pde_out;
    double pde_alpha = 0.2, pde_beta = 0.8, pde_c = 1.0, pde_dt = 1e-4, pde_t = 0.1;
    int pde_m = 256;
    pde->add_option("--bc", pde_bc, "dirichlet|robin|neumann");
    pde->add_option("--alpha", pde_alpha);
    pde->add_option("--beta", pde_beta);
    pde->add_option("--c", pde_c, "Robin coupling");
    pde->add_option("--M", pde_m, "grid resolution");
    pde->add_option("--dt", pde_dt, "time step");
    pde->add_option("--t", pde_t, "final time");
    pde->add_option("--init", pde_init, "affine|step|sine|const:<v>");
    pde->add_option("--out", pde_out, "profile CSV path");

    // verify
    auto* verify =
        app.add_subcommand("verify", "run a named acceptance experiment (exit 1 on fail)");
    std::string verify_which = "all", verify_csv, verify_json;
    std::uint64_t verify_seed = 20240901;
    verify->add_option("id", verify_which, "OR|HS|HD|LT|RL|QV|all");
    verify->add_option("--seed", verify_seed, "master seed");
    verify->add_option("--out-csv", verify_csv);
    verify->add_option("--out-json", verify_json);

    // sweep
    auto* sweep = app.add_subcommand("sweep", "run an experiment spec from a config file");
    std::string sweep_config;
    sweep->add_option("config", sweep_config, "JSON run configuration")->required();

    // plot
    auto* plot = app.add_subcommand("plot", "render a ssep CSV file to SVG");
    std::string plot_in, plot_out;
    plot->add_option("--in", plot_in, "input CSV")->required();
    plot->add_option("--out", plot_out, "output SVG")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (sim->parsed())
            return cmd_simulate(sim_model, sim_t, sim_seed, sim_init, sim_samples,
                                sim_trace_out, sim_profile_out);
        if (stat->parsed()) return cmd_stationary_exact(stat_model, stat_out);
        if (brute->parsed()) return cmd_brute_force(brute_model);
        if (pde->parsed())
            return cmd_pde(pde_bc, pde_alpha, pde_beta, pde_c, pde_m, pde_dt, pde_t,
                           pde_init, pde_out);
        if (verify->parsed())
            return cmd_verify(verify_which, verify_seed, verify_csv, verify_json);
        if (sweep->parsed()) return cmd_sweep(sweep_config);
        if (plot->parsed()) return cmd_plot(plot_in, plot_out);
    } catch (const ssep::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const CLI::Error& e) {
        std::cerr << "usage error: " << e.get_name() << ": " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 2;
    }
    return 2;
}
