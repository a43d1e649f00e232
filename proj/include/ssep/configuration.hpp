#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "ssep/params.hpp"
#include "ssep/rng.hpp"

namespace ssep {

struct Event {
    enum class Kind : std::uint8_t { bulk_exchange, left_flip, right_flip };
    Kind kind = Kind::left_flip;
    int bond = 0;              // for bulk_exchange: bond x in 1..N-2
    double micro_time = 0.0;   // time of occurrence, microscopic units
};

// Occupancies on sites 1..N-1 with incremental bookkeeping: the cached
// particle count and the set of active bonds (x with eta(x) != eta(x+1)).
// The active set is an array with a position index so that membership test,
// insert, swap-remove and uniform sampling are all O(1).
class Configuration {
public:
    explicit Configuration(int n);

    int scaling_n() const { return n_; }
    int num_sites() const { return n_ - 1; }
    int num_bonds() const { return n_ - 2; }

    int site(int x) const { return occ_[x - 1]; }  // x in 1..N-1
    int particle_count() const { return particles_; }
    double mean_density() const {
        return static_cast<double>(particles_) / (n_ - 1);
    }

    int active_bond_count() const { return static_cast<int>(active_.size()); }
    int active_bond(int idx) const { return active_[idx]; }  // idx in [0, count)
    bool bond_active(int x) const { return pos_[x - 1] >= 0; }

    // Sets eta(x) and repairs the adjacent bond bookkeeping.
    void set_site(int x, int value);

    // eta -> eta^{x,x+1}. Throws std::logic_error at an inactive bond: such a
    // call signals engine corruption, never a legal transition.
    void exchange(int bond);

    // eta -> eta^x for x = 1 or x = N-1.
    void flip(int x);

    // State index (bit x-1 holds eta(x)); only meaningful for N <= 20 or so.
    std::uint64_t state_index() const;

    bool operator==(const Configuration&) const = default;

private:
    void update_bond(int x);  // recompute activity of bond x after a change

    int n_;
    std::vector<std::uint8_t> occ_;   // occ_[x-1] = eta(x)
    int particles_ = 0;
    std::vector<std::int32_t> active_;  // active bond list
    std::vector<std::int32_t> pos_;     // pos_[x-1] = index in active_, -1 if inactive
};

// r_alpha / r_beta flip rates with the cN^-theta prefactor applied:
//   left  = c N^-theta * (alpha if eta(1)=0 else 1-alpha)
//   right = c N^-theta * (beta  if eta(N-1)=0 else 1-beta)
std::pair<double, double> boundary_flip_rates(const Params& p, const Configuration& cfg);

// |active bonds| + left + right. Strictly positive: the boundary channels
// never vanish for reservoir densities in (0,1).
double total_rate(const Params& p, const Configuration& cfg);

// Applies the event to the configuration (the event's micro_time is ignored
// here; time lives in the clock).
void apply_event(Configuration& cfg, const Event& ev);

// Initial-configuration generators.
Configuration make_all_occupied(int n);
Configuration make_all_empty(int n);
Configuration make_left_step(int n);  // eta(x) = 1 iff x/N <= 1/2
Configuration make_bernoulli_profile(int n, const std::function<double(double)>& rho0,
                                     Xoshiro256pp& rng);
// Exactly k particles placed uniformly at random; kills initialization
// variance of the mean density.
Configuration make_fixed_count(int n, int k, Xoshiro256pp& rng);

}  // namespace ssep
