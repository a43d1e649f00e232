#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdlib>

#include "ssep/harness.hpp"
#include "ssep/io.hpp"

using namespace ssep;

namespace {

// Cheap OR spec used by the reproducibility checks.
ExperimentSpec small_or_spec() {
    ExperimentSpec spec;
    spec.id = ExperimentId::orc;
    spec.n_values = {3};
    spec.theta_values = {0.5};
    spec.alpha = 0.3;
    spec.beta = 0.7;
    spec.replicas = 3;
    spec.min_events = 50000;
    return spec;
}

}  // namespace

TEST_CASE("fit_scaling exact power laws") {
    CHECK(fit_scaling({{10.0, 1.0}, {100.0, 0.1}, {1000.0, 0.01}}).slope ==
          doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(fit_scaling({{10.0, 1.0}, {100.0, 1.0}, {1000.0, 1.0}}).slope ==
          doctest::Approx(0.0));
    std::vector<std::string> warnings;
    CHECK_THROWS_AS(fit_scaling({{10.0, 1.0}, {100.0, 0.0}, {1000.0, 0.01}}, &warnings),
                    std::invalid_argument);
    CHECK(warnings.size() == 1);
}

TEST_CASE("burn-in rule") {
    const Params diff = Params::make(32, 1.0, 0.5, 0.3, 0.7);
    CHECK(burn_in_rule(diff, false) == doctest::Approx(10.0 * 32 * 32));
    const Params slow = Params::make(32, 2.0, 2.0, 0.3, 0.7);
    CHECK(burn_in_rule(slow, false) == doctest::Approx(10.0 * std::pow(32.0, 3.0) / 2.0));
    // stationary-mean initial data only needs the diffusive relaxation
    CHECK(burn_in_rule(slow, true) == doctest::Approx(10.0 * 32 * 32));
}

TEST_CASE("spec validation") {
    ExperimentSpec spec = small_or_spec();
    spec.n_values.clear();
    CHECK_THROWS_AS(run_experiment(spec, 1), std::invalid_argument);
    spec = small_or_spec();
    spec.replicas = 1;
    CHECK_THROWS_AS(run_experiment(spec, 1), std::invalid_argument);
}

TEST_CASE("reproducibility: identical (spec, seed) gives byte-identical reports") {
    const ExperimentSpec spec = small_or_spec();
    const std::string a = report_to_json(run_experiment(spec, 4242));
    const std::string b = report_to_json(run_experiment(spec, 4242));
    CHECK(a == b);
    const std::string c = report_to_json(run_experiment(spec, 4243));
    CHECK(a != c);
}

TEST_CASE("thread count does not leak into the report") {
    const ExperimentSpec spec = small_or_spec();
    setenv("SSEP_THREADS", "1", 1);
    CHECK(harness_thread_count() == 1);
    const std::string serial = report_to_json(run_experiment(spec, 7));
    setenv("SSEP_THREADS", "3", 1);
    CHECK(harness_thread_count() == 3);
    const std::string parallel = report_to_json(run_experiment(spec, 7));
    unsetenv("SSEP_THREADS");
    CHECK(serial == parallel);
}

TEST_CASE("OR experiment passes on the tiny oracle") {
    const ExperimentReport report = run_experiment(small_or_spec(), 99);
    REQUIRE(report.points.size() == 1);
    CHECK(report.pass);
    CHECK(report.points[0].aggregates.count("tv_pooled") == 1);
    CHECK(report.points[0].aggregates.at("tv_pooled").mean < 0.02);
}

TEST_CASE("infeasible grid points are skipped with a diagnostic and fail the run") {
    ExperimentSpec spec = small_or_spec();
    spec.id = ExperimentId::hs;
    spec.n_values = {512};
    spec.theta_values = {0.0};
    spec.max_events_per_point = 1e6;  // far below the requirement at N=512
    const ExperimentReport report = run_experiment(spec, 5);
    REQUIRE(report.points.size() == 1);
    CHECK(report.points[0].skipped);
    CHECK_FALSE(report.pass);
    REQUIRE(!report.diagnostics.empty());
    CHECK(report.diagnostics[0].find("infeasible") != std::string::npos);
}
