#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <chrono>
#include <cmath>

#include "ssep/engine.hpp"
#include "ssep/observables.hpp"
#include "ssep/theory.hpp"

using namespace ssep;

TEST_CASE("zero horizon is a no-op") {
    const Params p = Params::make(8, 1.0, 0.0, 0.3, 0.7);
    Simulation sim(p, make_left_step(8), SeedSpec{1, 0});
    PathIntegral integral(p, Integrand::left_minus_alpha);
    Observer* obs[] = {&integral};
    sim.run_until(0.0, obs);
    CHECK(sim.event_count() == 0);
    CHECK(sim.clock().macro_time() == 0.0);
    CHECK(sim.config() == make_left_step(8));
    CHECK(integral.value() == 0.0);
}

TEST_CASE("horizon overflow is refused") {
    const Params p = Params::make(64, 1.0, 0.0, 0.3, 0.7, 2.0);
    Simulation sim(p, make_all_empty(64), SeedSpec{1, 0});
    CHECK_THROWS_AS(sim.run_until(1e305), HorizonOverflow);
}

TEST_CASE("determinism: fixed seed gives identical event lists") {
    const Params p = Params::make(16, 1.0, 0.5, 0.3, 0.7);
    EventLog log_a, log_b;
    {
        Simulation sim(p, make_left_step(16), SeedSpec{77, 3});
        Observer* obs[] = {&log_a};
        sim.run_until(0.25, obs);
    }
    {
        Simulation sim(p, make_left_step(16), SeedSpec{77, 3});
        Observer* obs[] = {&log_b};
        sim.run_until(0.25, obs);
    }
    REQUIRE(log_a.entries().size() == log_b.entries().size());
    REQUIRE(log_a.entries().size() > 100);
    for (std::size_t i = 0; i < log_a.entries().size(); ++i) {
        const auto& ea = log_a.entries()[i].event;
        const auto& eb = log_b.entries()[i].event;
        REQUIRE(ea.kind == eb.kind);
        REQUIRE(ea.bond == eb.bond);
        REQUIRE(ea.micro_time == eb.micro_time);
    }
}

TEST_CASE("distinct replica streams differ") {
    const Params p = Params::make(16, 1.0, 0.5, 0.3, 0.7);
    Simulation a(p, make_left_step(16), SeedSpec{77, 0});
    Simulation b(p, make_left_step(16), SeedSpec{77, 1});
    a.run_until(0.05);
    b.run_until(0.05);
    CHECK(a.event_count() != b.event_count());
}

TEST_CASE("time exactness: holding intervals sum to the clock") {
    struct DtSum : Observer {
        KahanSum s;
        void on_interval(const Configuration&, double, double dt) override { s.add(dt); }
    } dt_sum;
    const Params p = Params::make(32, 1.0, 1.0, 0.3, 0.7, 0.5);
    Simulation sim(p, make_left_step(32), SeedSpec{5, 0});
    Observer* obs[] = {&dt_sum};
    sim.run_until(0.7, obs);
    CHECK(sim.clock().macro_time() == doctest::Approx(0.7).epsilon(1e-12));
    CHECK(dt_sum.s.value() == doctest::Approx(sim.clock().macro_time()).epsilon(1e-9));
}

TEST_CASE("first-event law from the vacuum: left 0.2, right 0.8") {
    // eta=(0,0,0), N=4, theta=0, c=1: total rate 1.0, split 0.2 / 0.8.
    const Params p = Params::make(4, 1.0, 0.0, 0.2, 0.8);
    const int trials = 20000;
    int left = 0;
    for (int i = 0; i < trials; ++i) {
        Simulation sim(p, make_all_empty(4), SeedSpec{900, static_cast<std::uint64_t>(i)});
        const Event ev = sim.step_once();
        REQUIRE(ev.kind != Event::Kind::bulk_exchange);
        left += ev.kind == Event::Kind::left_flip;
    }
    // 3 sigma for Bernoulli(0.2) over 20000 trials
    const double phat = static_cast<double>(left) / trials;
    CHECK(std::abs(phat - 0.2) < 3.0 * std::sqrt(0.2 * 0.8 / trials));
}

TEST_CASE("vanishing boundary rates make the active bond certain") {
    // eta=(1,0,0): the left channel would annihilate at rate 1-alpha, the
    // right create at rate beta; push both to ~1e-12.
    const Params p = Params::make(4, 1.0, 0.0, 1.0 - 1e-12, 1e-12);
    Configuration cfg(4);
    cfg.set_site(1, 1);  // single active bond at 1
    for (int i = 0; i < 200; ++i) {
        Simulation sim(p, cfg, SeedSpec{17, static_cast<std::uint64_t>(i)});
        const Event ev = sim.step_once();
        REQUIRE(ev.kind == Event::Kind::bulk_exchange);
        REQUIRE(ev.bond == 1);
    }
}

TEST_CASE("N=2 two-state balance: occupied fraction (alpha+beta)/2") {
    const Params p = Params::make(2, 1.0, 0.0, 0.3, 0.7);
    StateOccupation occ(2);
    Simulation sim(p, make_all_empty(2), SeedSpec{31, 0});
    Observer* obs[] = {&occ};
    sim.run_until(20000.0, obs);  // ~8e4 events
    CHECK(occ.frequencies()[1] == doctest::Approx(0.5).epsilon(0.02));
}

TEST_CASE("N=3, alpha=beta: product Bernoulli(0.4) occupation law") {
    const Params p = Params::make(3, 1.0, 1.0, 0.4, 0.4);
    StateOccupation occ(3);
    Simulation sim(p, make_all_empty(3), SeedSpec{32, 0});
    Observer* obs[] = {&occ};
    sim.run_until(40000.0, obs);
    const auto freq = occ.frequencies();
    const double expected[4] = {0.36, 0.24, 0.24, 0.16};
    for (int s = 0; s < 4; ++s) CHECK(freq[s] == doctest::Approx(expected[s]).epsilon(0.05));
}

TEST_CASE("tiny-N law vs brute-force stationary distribution") {
    const Params p = Params::make(4, 1.0, 0.5, 0.3, 0.7);
    const StationaryLaw law = brute_force_stationary(p);
    REQUIRE(law.ok);
    StateOccupation occ(4);
    Simulation sim(p, make_all_empty(4), SeedSpec{33, 0});
    Observer* obs[] = {&occ};
    sim.run_until(50000.0, obs);  // >= 1e6 events for N=4
    CHECK(sim.event_count() >= 1000000);
    CHECK(total_variation(occ.frequencies(), law.probabilities) < 0.01);
}

TEST_CASE("throughput: at least 1e7 events per second") {
    const Params p = Params::make(64, 1.0, 0.0, 0.3, 0.7);
    Simulation sim(p, make_left_step(64), SeedSpec{99, 0});
    sim.run_until(0.01);  // warm-up
    const auto start = std::chrono::steady_clock::now();
    sim.run_until(2.0);
    const auto stop = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(stop - start).count();
    const double rate = static_cast<double>(sim.event_count()) / secs;
    INFO("events/s: ", rate);
    CHECK(rate >= 1e7);
}
