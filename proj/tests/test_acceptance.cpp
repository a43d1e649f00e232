// Acceptance suite: ten criteria, one verdict line each. Exits nonzero if
// any criterion fails, so the whole gate shows up as a single ctest entry.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "ssep/engine.hpp"
#include "ssep/harness.hpp"
#include "ssep/io.hpp"
#include "ssep/observables.hpp"
#include "ssep/pde.hpp"
#include "ssep/theory.hpp"

using namespace ssep;

namespace {

constexpr std::uint64_t kMasterSeed = 20240901;
constexpr double kPi = 3.14159265358979323846;
int failures = 0;

void verdict(int idx, const std::string& name, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d %-28s %s\n", pass ? "PASS" : "FAIL", idx,
                name.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!pass) ++failures;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

// 1. Tiny-N exactness: empirical occupation law vs brute force, TV < 0.01.
void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const ExperimentReport report = run_experiment(acceptance_spec(ExperimentId::orc),
                                                   kMasterSeed);
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const double tv = report.points.at(0).aggregates.at("tv_pooled").mean;
    verdict(1, "tiny-N oracle (OR)", report.pass && secs < 10.0,
            "tv=" + fmt(tv) + " (<0.01), " + fmt(secs) + "s (<10s)");
}

// 2. Cross-oracle identity to 1e-10 over the full small grid.
void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    double worst = 0.0;
    bool ok = true;
    for (int n = 2; n <= 10; ++n)
        for (double theta : {0.0, 0.5, 1.0, 2.0})
            for (double c : {0.5, 1.0, 2.0}) {
                const Params p = Params::make(n, c, theta, 0.3, 0.7);
                const StationaryLaw law = brute_force_stationary(p);
                if (!law.ok) { ok = false; continue; }
                const auto prof = exact_stationary_profile(p);
                for (int x = 0; x < n - 1; ++x)
                    worst = std::max(worst, std::abs(law.marginals[x] - prof[x]));
            }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    verdict(2, "cross-oracle identity", ok && worst < 1e-10 && secs < 5.0,
            "max|marginal-profile|=" + fmt(worst) + " (<1e-10), " + fmt(secs) +
                "s (<5s)");
}

// 3. Hydrostatics: pooled profile L1 vs rho_bar, decreasing in N, tail < 0.05.
void criterion_3() {
    const ExperimentReport report =
        run_experiment(acceptance_spec(ExperimentId::hs), kMasterSeed + 3);
    std::string detail;
    double prev_theta = -1.0;
    for (const auto& pt : report.points) {
        if (pt.theta != prev_theta) {
            detail += "theta=" + fmt(pt.theta) + ":";
            prev_theta = pt.theta;
        }
        detail += fmt(pt.aggregates.at("l1").mean) + " ";
    }
    verdict(3, "hydrostatic profile (HS)", report.pass, detail + "(decreasing, <0.05)");
}

// 4. Hydrodynamics: pairing vs the heat-equation oracle at t=0.1.
void criterion_4() {
    const ExperimentReport report =
        run_experiment(acceptance_spec(ExperimentId::hd), kMasterSeed + 4);
    std::string detail;
    for (const auto& pt : report.points) {
        detail += "theta=" + fmt(pt.theta) + ":";
        for (const auto& g : {"1", "u", "sin(1piu)"})
            detail += fmt(pt.aggregates.at(std::string("err:") + g).mean) + "/";
        detail += " ";
    }
    verdict(4, "hydrodynamic limit (HD)", report.pass, detail + "(each <0.03)");
}

// 5. Long-time supercritical regimes at theta=2, N=64, m0=1.
void criterion_5() {
    const char* tag[] = {"5a frozen gamma=0.5", "5b relaxing gamma=1",
                         "5c equilibrated gamma=1.5"};
    const double gammas[] = {0.5, 1.0, 1.5};
    for (int i = 0; i < 3; ++i) {
        const ExperimentReport report =
            run_experiment(acceptance_lt_spec(gammas[i]), kMasterSeed + 50 + i);
        const auto& pt = report.points.at(0);
        verdict(5, tag[i], report.pass,
                pt.note);
    }
}

// 6. Subcritical long-time profile.
void criterion_6() {
    const ExperimentReport report =
        run_experiment(acceptance_lt_subcritical_spec(), kMasterSeed + 6);
    verdict(6, "subcritical long-time (LT)", report.pass, report.points.at(0).note);
}

// 7. Replacement-lemma decay, monotone over the N ladder.
void criterion_7() {
    const ExperimentReport report =
        run_experiment(acceptance_spec(ExperimentId::rl), kMasterSeed + 7);
    std::string detail;
    for (const auto& pt : report.points)
        detail += "N=" + std::to_string(pt.n) + ":" +
                  fmt(pt.aggregates.at("abs_integral").mean) + " ";
    verdict(7, "replacement-lemma decay (RL)", report.pass, detail + "(decreasing)");
}

// 8. QV scaling: fitted slope = gamma - theta within 0.3.
void criterion_8() {
    const ExperimentReport report =
        run_experiment(acceptance_spec(ExperimentId::qv), kMasterSeed + 8);
    const std::string detail =
        report.fit ? "slope=" + fmt(report.fit->slope) + " vs -1 +- 0.3" : "no fit";
    verdict(8, "martingale QV scaling (QV)", report.pass, detail);
}

// 9. PDE self-tests: eigenmode rate, mass conservation, convergence order.
void criterion_9() {
    const auto t0 = std::chrono::steady_clock::now();
    // eigenmode decay rate within 1% of pi^2 at M=256
    const double t = 0.1;
    const GridFunction eig =
        solve_heat(BoundaryCondition::dirichlet(0.0, 0.0),
                   grid_from_function(256, [](double u) { return std::sin(kPi * u); }),
                   t, 1e-5);
    const double rate = -std::log(eig.at(0.5)) / t;
    const bool rate_ok = std::abs(rate - kPi * kPi) / (kPi * kPi) < 0.01;

    // Neumann mass drift < 1e-10 over t=1
    GridFunction rho0 = grid_from_function(
        128, [](double u) { return u < 0.5 ? 1.0 : (u > 0.5 ? 0.0 : 0.5); });
    const double mass0 = grid_mass(rho0);
    const double drift =
        std::abs(grid_mass(solve_heat(BoundaryCondition::neumann(), rho0, 1.0, 1e-3)) -
                 mass0);
    const bool mass_ok = drift < 1e-10;

    // spatial convergence order >= 1.8
    auto error_at = [&](int m) {
        const double dt = t / std::ceil(10.0 * m * m * t);
        const GridFunction sol = solve_heat(
            BoundaryCondition::dirichlet(0.0, 0.0),
            grid_from_function(m, [](double u) { return std::sin(kPi * u); }), t, dt);
        double worst = 0.0;
        for (int j = 0; j <= m; ++j)
            worst = std::max(worst,
                             std::abs(sol.values[j] -
                                      std::exp(-kPi * kPi * t) * std::sin(kPi * sol.u(j))));
        return worst;
    };
    const double order = std::log2(error_at(16) / error_at(32));
    const bool order_ok = order >= 1.8;
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    verdict(9, "PDE self-tests", rate_ok && mass_ok && order_ok && secs < 30.0,
            "rate=" + fmt(rate) + " (pi^2 +-1%), mass drift=" + fmt(drift) +
                " (<1e-10), order=" + fmt(order) + " (>=1.8)");
}

// 10. Property suites: bookkeeping recount, alpha=beta product invariance,
// determinism byte-equality.
void criterion_10() {
    // (a) bookkeeping recount over 1e5 random events, N <= 64
    bool recount_ok = true;
    {
        Xoshiro256pp rng(kMasterSeed);
        int events = 0;
        while (events < 100000 && recount_ok) {
            const int n = 2 + static_cast<int>(rng.below(63));
            Configuration cfg(n);
            for (int x = 1; x < n; ++x) cfg.set_site(x, static_cast<int>(rng.next() & 1));
            for (int k = 0; k < 250 && events < 100000; ++k, ++events) {
                const int choice = static_cast<int>(rng.below(3));
                if (choice == 0 && cfg.active_bond_count() > 0)
                    apply_event(cfg, Event{Event::Kind::bulk_exchange,
                                           cfg.active_bond(static_cast<int>(rng.below(
                                               cfg.active_bond_count()))),
                                           0.0});
                else if (choice == 1)
                    apply_event(cfg, Event{Event::Kind::left_flip, 1, 0.0});
                else
                    apply_event(cfg, Event{Event::Kind::right_flip, cfg.num_sites(), 0.0});
            }
            int particles = 0, active = 0;
            for (int x = 1; x < n; ++x) particles += cfg.site(x);
            for (int x = 1; x < n - 1; ++x) {
                active += cfg.site(x) != cfg.site(x + 1);
                if (cfg.bond_active(x) != (cfg.site(x) != cfg.site(x + 1)))
                    recount_ok = false;
            }
            if (cfg.particle_count() != particles || cfg.active_bond_count() != active)
                recount_ok = false;
        }
    }

    // (b) alpha=beta product-measure invariance via the criterion-1 machinery
    bool product_ok = true;
    double worst_tv = 0.0;
    for (double rho : {0.25, 0.5, 0.75}) {
        ExperimentSpec spec = acceptance_spec(ExperimentId::orc);
        spec.n_values = {4};
        spec.theta_values = {1.0};
        spec.alpha = spec.beta = rho;
        const ExperimentReport report = run_experiment(spec, kMasterSeed + 10);
        worst_tv = std::max(worst_tv,
                            report.points.at(0).aggregates.at("tv_pooled").mean);
        product_ok = product_ok && report.pass;
        // the brute-force law itself must be the product measure
        const StationaryLaw law =
            brute_force_stationary(Params::make(4, 1.0, 1.0, rho, rho));
        for (std::size_t s = 0; s < law.probabilities.size(); ++s) {
            const int bits = __builtin_popcountll(s);
            const double expect =
                std::pow(rho, bits) * std::pow(1.0 - rho, 3 - bits);
            if (std::abs(law.probabilities[s] - expect) > 1e-12) product_ok = false;
        }
    }

    // (c) determinism byte-equality for repeated seeds
    ExperimentSpec spec = acceptance_spec(ExperimentId::orc);
    spec.min_events = 200000;
    const bool deterministic = report_to_json(run_experiment(spec, 13)) ==
                               report_to_json(run_experiment(spec, 13));

    verdict(10, "property suites", recount_ok && product_ok && deterministic,
            std::string("recount=") + (recount_ok ? "ok" : "BAD") +
                " product tv_max=" + fmt(worst_tv) + " determinism=" +
                (deterministic ? "ok" : "BAD"));
}

}  // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_8();
    criterion_9();
    criterion_10();
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("acceptance: %d criterion failure(s), %.1fs total\n", failures, secs);
    return failures == 0 ? 0 : 1;
}
