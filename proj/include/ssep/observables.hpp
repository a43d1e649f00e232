#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ssep/engine.hpp"

namespace ssep {

// Continuous test function G on [0,1].
struct TestFunction {
    std::string name;
    std::function<double(double)> f;
    double operator()(double u) const { return f(u); }
};

TestFunction tf_constant(double value = 1.0);
TestFunction tf_identity();              // u
TestFunction tf_square();                // u^2
TestFunction tf_sin(int k);              // sin(k pi u)
TestFunction tf_cos(int k);              // cos(k pi u)
TestFunction tf_bump(double center, double width);  // smoothed indicator
// Lookup by the names above ("1", "u", "u^2", "sin(1piu)", ...).
TestFunction tf_by_name(const std::string& name);

// <pi^N, G> = (1/N) sum_x eta(x) G(x/N).
double pair_empirical(const Configuration& cfg, const TestFunction& g);

// m^N = particle_count / (N-1).
double mean_density(const Configuration& cfg);

// Integrand menu for the path integrals; targets (when present) enter
// through their closed-form antiderivative, not through sampling.
enum class Integrand {
    left_minus_alpha,      // eta(1) - alpha
    right_minus_beta,      // eta(N-1) - beta
    left_minus_mean,       // eta(1) - m^N
    right_minus_mean,      // eta(N-1) - m^N
    mean_minus_target,     // m^N - target(t)
    pairing_minus_target,  // <pi,G> - target(t)
};

Integrand integrand_by_name(const std::string& name);

// Exact Lebesgue integral of the chosen piecewise-constant integrand over
// the macroscopic window it is attached for. The state part is accumulated
// interval by interval (compensated); the target part is evaluated once as
// F(t_end) - F(t_start) from the supplied antiderivative F.
class PathIntegral : public Observer {
public:
    PathIntegral(const Params& params, Integrand id, TestFunction g = {},
                 std::function<double(double)> target_antiderivative = {});

    void on_interval(const Configuration& cfg, double t, double dt) override;

    double value() const;
    double window_start() const { return t_start_; }
    double window_end() const { return t_end_; }

private:
    Params params_;
    Integrand id_;
    TestFunction g_;
    std::function<double(double)> target_antiderivative_;
    KahanSum state_part_;
    double t_start_ = -1.0;  // first interval start, < 0 until seen
    double t_end_ = 0.0;
};

// Antiderivative of m_s = (alpha+beta)/2 + (m0-(alpha+beta)/2) e^{-2cs}.
std::function<double(double)> m_closed_antiderivative(double c, double m0,
                                                      double alpha, double beta);

// Per-site time average of the occupancy over the window seen. Bookkeeping
// is event-incremental: occupied time is settled per site when its occupancy
// changes, so the per-event cost is O(1), not O(N).
class ProfileAverage : public Observer {
public:
    explicit ProfileAverage(int n);
    void on_interval(const Configuration& cfg, double t, double dt) override;
    void on_event(const Event& ev, const Configuration& before) override;
    std::vector<double> profile() const;  // length N-1
    double total_time() const { return started_ ? t_end_ - t_begin_ : 0.0; }

private:
    void settle(int x);  // x in 1..N-1; credit occupied time up to t_end_

    bool started_ = false;
    double t_begin_ = 0.0;
    double t_end_ = 0.0;
    std::vector<std::uint8_t> occ_;
    std::vector<double> since_;      // last settle time per site
    std::vector<double> site_time_;
};

// Records f(config) at fixed macroscopic sample times. The recorded value at
// time s is the state on the holding interval containing s (cadlag path).
class TraceSampler : public Observer {
public:
    TraceSampler(std::vector<double> times, std::function<double(const Configuration&)> f);
    void on_interval(const Configuration& cfg, double t, double dt) override;
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<double> times_;
    std::function<double(const Configuration&)> f_;
    std::vector<double> values_;
    std::size_t next_ = 0;
};

// Time spent in each configuration, indexed by state bitmask. Tiny N only.
class StateOccupation : public Observer {
public:
    explicit StateOccupation(int n);
    void on_interval(const Configuration& cfg, double t, double dt) override;
    // Occupation fractions, normalized to sum 1.
    std::vector<double> frequencies() const;

private:
    std::vector<double> time_in_state_;
};

// Boundary-flip counter and realized quadratic variation. Every boundary
// event jumps m^N by exactly +-1/(N-1), so the realized QV of m^N is
// (flip count)/(N-1)^2. With a test function H, also accumulates the jump
// sum of <pi,H> (bulk jumps contribute ((H(x/N)-H((x+1)/N))/N)^2).
class JumpCounter : public Observer {
public:
    explicit JumpCounter(const Params& params, std::optional<TestFunction> h = {});
    void on_interval(const Configuration&, double, double) override {}
    void on_event(const Event& ev, const Configuration& before) override;

    std::uint64_t left_flips() const { return left_; }
    std::uint64_t right_flips() const { return right_; }
    std::uint64_t boundary_flips() const { return left_ + right_; }
    double qv_mean_density() const;
    double qv_pairing() const { return qv_h_.value(); }

private:
    int n_;
    std::uint64_t left_ = 0;
    std::uint64_t right_ = 0;
    bool has_h_ = false;
    std::vector<double> bulk_jump_sq_;   // per bond
    double left_jump_sq_ = 0.0;
    double right_jump_sq_ = 0.0;
    KahanSum qv_h_;
};

// Verbatim event log; cross-check oracle for the jump-sum formulas.
class EventLog : public Observer {
public:
    void on_interval(const Configuration&, double, double) override {}
    void on_event(const Event& ev, const Configuration& before) override;
    struct Entry {
        Event event;
        int delta_particles;  // particle-count change of the event
    };
    const std::vector<Entry>& entries() const { return entries_; }

private:
    std::vector<Entry> entries_;
};

}  // namespace ssep
