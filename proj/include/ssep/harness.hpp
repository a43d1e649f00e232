#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ssep/numerics.hpp"
#include "ssep/params.hpp"

namespace ssep {

enum class ExperimentId {
    hd,   // hydrodynamics: empirical pairing vs heat-equation oracle
    hs,   // hydrostatics: time-averaged profile vs rho_bar
    lt,   // long-time: mean-density trajectory (theta>1) or profile (theta<1)
    rl,   // replacement-lemma decay of E|int (eta(1)-alpha)|
    qv,   // martingale quadratic-variation scaling in N
    orc,  // tiny-N oracle: occupation frequencies vs brute-force law
};

ExperimentId experiment_by_name(const std::string& name);
std::string experiment_name(ExperimentId id);

struct ExperimentSpec {
    ExperimentId id = ExperimentId::orc;
    std::vector<int> n_values;
    std::vector<double> theta_values;
    std::vector<double> gamma_values{0.0};
    double c = 1.0;
    double alpha = 0.2;
    double beta = 0.8;
    int replicas = 32;
    double t_end = 1.0;
    // Initial condition: "full", "empty", "step", "stationary-mean"
    // (fixed count at round(rho_bar mean * (N-1))), "bernoulli-rhobar",
    // or "count:<fraction>".
    std::string init = "stationary-mean";
    std::vector<std::string> test_functions{"1", "u", "sin(1piu)"};  // HD
    int trace_samples = 21;                // LT sampling grid on [0, t_end]
    double window_start = 0.0;             // LT profile / RL integration start
    std::uint64_t min_events = 1'000'000;  // OR
    // Burn-in, microscopic time units; < 0 selects the harness rule.
    double burn_in_micro = -1.0;
    // Pass thresholds; keys depend on the experiment (see harness.cpp).
    std::map<std::string, double> thresholds;
    // Grid points whose estimated event count exceeds this are skipped with
    // a diagnostic, never silently dropped.
    double max_events_per_point = 5e9;
};

// Default burn-in rule: diffusive relaxation 10 N^2 when the initial mean
// density already sits at the stationary value, otherwise
// max(10 N^(theta+1)/c, 10 N^2), the boundary-relaxation heuristic.
double burn_in_rule(const Params& p, bool mean_is_stationary);

struct ReplicaRecord {
    int replica = 0;
    std::string observable;
    double value = 0.0;
};

struct GridPointResult {
    int n = 0;
    double theta = 0.0;
    double gamma = 0.0;
    bool skipped = false;
    std::string note;  // skip diagnostic or pass/fail detail
    bool pass = true;
    std::map<std::string, Stats> aggregates;
    std::vector<ReplicaRecord> raw;
};

struct ExperimentReport {
    ExperimentId id = ExperimentId::orc;
    std::uint64_t master_seed = 0;
    bool pass = false;
    std::vector<GridPointResult> points;
    std::optional<LinearFit> fit;  // scaling experiments
    std::vector<std::string> diagnostics;
};

// Deterministic function of (spec, master_seed): replicas run on independent
// streams keyed by (master_seed, grid*1000+replica) and are reduced in
// replica order, so thread scheduling never leaks into the report.
ExperimentReport run_experiment(const ExperimentSpec& spec, std::uint64_t master_seed);

// Least-squares fit of log(value) against log(N). Nonpositive values are
// excluded (with a warning pushed to *warnings when given). Needs >= 3
// usable points.
LinearFit fit_scaling(const std::vector<std::pair<double, double>>& points,
                      std::vector<std::string>* warnings = nullptr);

// Acceptance presets, one per criterion family; `verify` and the acceptance
// suite share them.
ExperimentSpec acceptance_spec(ExperimentId id);
// The three long-time regimes of the acceptance suite, keyed by gamma.
ExperimentSpec acceptance_lt_spec(double gamma);
// Subcritical long-time profile check (theta < 1).
ExperimentSpec acceptance_lt_subcritical_spec();

// Worker threads for replica execution: SSEP_THREADS env var if set,
// otherwise hardware concurrency.
int harness_thread_count();

}  // namespace ssep
