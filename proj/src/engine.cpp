#include "ssep/engine.hpp"

#include <cmath>

namespace ssep {

Simulation::Simulation(const Params& params, Configuration init, SeedSpec seed)
    : params_(params), cfg_(std::move(init)), rng_(seed.make_rng()) {
    if (cfg_.scaling_n() != params_.n)
        throw std::invalid_argument("Simulation: configuration size mismatch");
    clock_.speedup = params_.speedup;
    left_rate_[0] = params_.boundary_scale * params_.alpha;
    left_rate_[1] = params_.boundary_scale * (1.0 - params_.alpha);
    right_rate_[0] = params_.boundary_scale * params_.beta;
    right_rate_[1] = params_.boundary_scale * (1.0 - params_.beta);
}

Event Simulation::sample_event(double bulk, double left, double right, double u) {
    Event ev;
    ev.micro_time = clock_.micro_time();
    if (u < bulk) {
        // Conditioned on the bulk category, u is uniform on [0, bulk), so its
        // integer part is a uniform active-bond index; one draw serves both
        // the category and the bond.
        int idx = static_cast<int>(u);
        if (idx >= cfg_.active_bond_count()) idx = cfg_.active_bond_count() - 1;
        ev.kind = Event::Kind::bulk_exchange;
        ev.bond = cfg_.active_bond(idx);
    } else if (u < bulk + left) {
        ev.kind = Event::Kind::left_flip;
        ev.bond = 1;
    } else {
        ev.kind = Event::Kind::right_flip;
        ev.bond = cfg_.num_sites();
    }
    return ev;
}

Event Simulation::step_once() {
    const double left = left_rate_[cfg_.site(1)];
    const double right = right_rate_[cfg_.site(cfg_.num_sites())];
    const double bulk = static_cast<double>(cfg_.active_bond_count());
    const double total = bulk + left + right;
    clock_.advance(rng_.exponential() / total);
    const Event ev = sample_event(bulk, left, right, rng_.u01() * total);
    apply_event(cfg_, ev);
    ++events_;
    return ev;
}

void Simulation::run_until(double t_macro, std::span<Observer* const> observers) {
    const double micro_end = t_macro * params_.speedup;
    if (!std::isfinite(micro_end))
        throw HorizonOverflow("simulation horizon overflows the microscopic clock: t_macro=" +
                              std::to_string(t_macro) + ", speedup=" +
                              std::to_string(params_.speedup));
    if (micro_end <= clock_.micro_time()) return;

    const int last_site = cfg_.num_sites();
    const double inv_speedup = 1.0 / params_.speedup;

    while (true) {
        const double left = left_rate_[cfg_.site(1)];
        const double right = right_rate_[cfg_.site(last_site)];
        const double bulk = static_cast<double>(cfg_.active_bond_count());
        const double total = bulk + left + right;
        const double micro_now = clock_.micro_time();
        const double dt = rng_.exponential() / total;

        if (micro_now + dt >= micro_end) {
            // Truncated final interval; the pending event falls beyond the
            // horizon and is discarded.
            const double rest = micro_end - micro_now;
            for (Observer* ob : observers)
                ob->on_interval(cfg_, micro_now * inv_speedup, rest * inv_speedup);
            clock_.advance(rest);
            return;
        }

        for (Observer* ob : observers)
            ob->on_interval(cfg_, micro_now * inv_speedup, dt * inv_speedup);
        clock_.advance(dt);

        const Event ev = sample_event(bulk, left, right, rng_.u01() * total);
        for (Observer* ob : observers) ob->on_event(ev, cfg_);
        apply_event(cfg_, ev);
        ++events_;
    }
}

}  // namespace ssep
