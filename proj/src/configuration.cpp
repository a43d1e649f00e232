#include "ssep/configuration.hpp"

#include <algorithm>
#include <stdexcept>

namespace ssep {

Configuration::Configuration(int n) : n_(n) {
    if (n < 2) throw std::invalid_argument("Configuration: N must be >= 2");
    occ_.assign(n - 1, 0);
    pos_.assign(std::max(n - 2, 0), -1);
}

void Configuration::update_bond(int x) {
    const bool should = occ_[x - 1] != occ_[x];
    std::int32_t& p = pos_[x - 1];
    if (should && p < 0) {
        p = static_cast<std::int32_t>(active_.size());
        active_.push_back(x);
    } else if (!should && p >= 0) {
        // swap-remove; keep the moved entry's index in sync
        const std::int32_t last = active_.back();
        active_[p] = last;
        pos_[last - 1] = p;
        active_.pop_back();
        p = -1;
    }
}

void Configuration::set_site(int x, int value) {
    const std::uint8_t v = value ? 1 : 0;
    if (occ_[x - 1] == v) return;
    particles_ += v ? 1 : -1;
    occ_[x - 1] = v;
    if (x - 1 >= 1) update_bond(x - 1);
    if (x <= num_bonds()) update_bond(x);
}

void Configuration::exchange(int bond) {
    if (bond < 1 || bond > num_bonds() || pos_[bond - 1] < 0)
        throw std::logic_error("Configuration::exchange at inactive bond");
    std::swap(occ_[bond - 1], occ_[bond]);
    // The bond itself stays active (values still differ); only the
    // neighbors can change state.
    if (bond - 1 >= 1) update_bond(bond - 1);
    if (bond + 1 <= num_bonds()) update_bond(bond + 1);
}

void Configuration::flip(int x) {
    set_site(x, 1 - occ_[x - 1]);
}

std::uint64_t Configuration::state_index() const {
    std::uint64_t s = 0;
    for (int x = num_sites(); x >= 1; --x) s = (s << 1) | occ_[x - 1];
    return s;
}

std::pair<double, double> boundary_flip_rates(const Params& p, const Configuration& cfg) {
    const double left =
        p.boundary_scale * (cfg.site(1) ? 1.0 - p.alpha : p.alpha);
    const double right =
        p.boundary_scale * (cfg.site(cfg.num_sites()) ? 1.0 - p.beta : p.beta);
    return {left, right};
}

double total_rate(const Params& p, const Configuration& cfg) {
    const auto [left, right] = boundary_flip_rates(p, cfg);
    return static_cast<double>(cfg.active_bond_count()) + left + right;
}

void apply_event(Configuration& cfg, const Event& ev) {
    switch (ev.kind) {
        case Event::Kind::bulk_exchange:
            cfg.exchange(ev.bond);
            break;
        case Event::Kind::left_flip:
            cfg.flip(1);
            break;
        case Event::Kind::right_flip:
            cfg.flip(cfg.num_sites());
            break;
    }
}

Configuration make_all_occupied(int n) {
    Configuration cfg(n);
    for (int x = 1; x <= n - 1; ++x) cfg.set_site(x, 1);
    return cfg;
}

Configuration make_all_empty(int n) { return Configuration(n); }

Configuration make_left_step(int n) {
    Configuration cfg(n);
    for (int x = 1; x <= n - 1; ++x)
        if (2 * x <= n) cfg.set_site(x, 1);
    return cfg;
}

Configuration make_bernoulli_profile(int n, const std::function<double(double)>& rho0,
                                     Xoshiro256pp& rng) {
    Configuration cfg(n);
    for (int x = 1; x <= n - 1; ++x)
        if (rng.u01() < rho0(static_cast<double>(x) / n)) cfg.set_site(x, 1);
    return cfg;
}

Configuration make_fixed_count(int n, int k, Xoshiro256pp& rng) {
    const int sites = n - 1;
    if (k < 0 || k > sites)
        throw std::invalid_argument("make_fixed_count: k out of range");
    // Fisher-Yates prefix over site labels.
    std::vector<int> labels(sites);
    for (int i = 0; i < sites; ++i) labels[i] = i + 1;
    Configuration cfg(n);
    for (int i = 0; i < k; ++i) {
        const int j = i + static_cast<int>(rng.below(sites - i));
        std::swap(labels[i], labels[j]);
        cfg.set_site(labels[i], 1);
    }
    return cfg;
}

}  // namespace ssep
