#pragma once

#include <cstdint>
#include <span>
#include <stdexcept>

#include "ssep/configuration.hpp"
#include "ssep/numerics.hpp"
#include "ssep/params.hpp"
#include "ssep/rng.hpp"

namespace ssep {

// Microscopic clock with compensated accumulation; macroscopic time is the
// derived quantity micro/speedup, matching the time change between the
// generators L_N and N^(2+gamma) L_N.
struct SimClock {
    double speedup = 1.0;

    double micro_time() const { return acc.value(); }
    double macro_time() const { return acc.value() / speedup; }
    void advance(double dt_micro) { acc.add(dt_micro); }

    KahanSum acc;
};

// Observers receive every holding interval (state, start, length), in
// macroscopic time, before the closing event is applied. Piecewise-constant
// time integrals computed this way are exact, with no discretization error.
class Observer {
public:
    virtual ~Observer() = default;
    virtual void on_interval(const Configuration& cfg, double t_macro, double dt_macro) = 0;
    // Called after the interval, before the event is applied to cfg.
    virtual void on_event(const Event& ev, const Configuration& before) { (void)ev; (void)before; }
};

class HorizonOverflow : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Exact continuous-time simulation of the chain with generator
// N^(2+gamma) L_N. Category-based sampling: the waiting time is exponential
// with the total microscopic rate, the category (bulk / left / right) is
// chosen proportionally to (|active bonds|, left rate, right rate) and the
// bond uniformly within the active set. No-op exchanges at inactive bonds
// are excluded from the event set; the transition they represent is the
// identity, so the law is unchanged.
class Simulation {
public:
    Simulation(const Params& params, Configuration init, SeedSpec seed);

    // Advances to absolute macroscopic time t_macro, delivering every holding
    // interval (including the final truncated one) to the observers.
    // Throws HorizonOverflow if the microscopic horizon is not representable.
    void run_until(double t_macro, std::span<Observer* const> observers = {});

    // Samples and applies a single event; used by low-level tests.
    Event step_once();

    const Params& params() const { return params_; }
    const Configuration& config() const { return cfg_; }
    const SimClock& clock() const { return clock_; }
    std::uint64_t event_count() const { return events_; }

private:
    Event sample_event(double bulk, double left, double right, double u);

    Params params_;
    Configuration cfg_;
    SimClock clock_;
    Xoshiro256pp rng_;
    std::uint64_t events_ = 0;
    // Flip-rate table indexed by occupancy, premultiplied by c N^-theta.
    double left_rate_[2];
    double right_rate_[2];
};

}  // namespace ssep
