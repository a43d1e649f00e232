#include "ssep/observables.hpp"

#include <cmath>
#include <stdexcept>

namespace ssep {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TestFunction tf_constant(double value) {
    return {value == 1.0 ? "1" : "const:" + std::to_string(value),
            [value](double) { return value; }};
}

TestFunction tf_identity() {
    return {"u", [](double u) { return u; }};
}

TestFunction tf_square() {
    return {"u^2", [](double u) { return u * u; }};
}

TestFunction tf_sin(int k) {
    return {"sin(" + std::to_string(k) + "piu)",
            [k](double u) { return std::sin(k * kPi * u); }};
}

TestFunction tf_cos(int k) {
    return {"cos(" + std::to_string(k) + "piu)",
            [k](double u) { return std::cos(k * kPi * u); }};
}

TestFunction tf_bump(double center, double width) {
    // C^1 cosine-smoothed indicator of [center-width, center+width].
    return {"bump(" + std::to_string(center) + "," + std::to_string(width) + ")",
            [center, width](double u) {
                const double d = std::abs(u - center);
                if (d >= width) return 0.0;
                return 0.5 * (1.0 + std::cos(kPi * d / width));
            }};
}

TestFunction tf_by_name(const std::string& name) {
    if (name == "1") return tf_constant();
    if (name == "u") return tf_identity();
    if (name == "u^2") return tf_square();
    if (name.rfind("sin(", 0) == 0 && name.back() == ')') {
        const auto p = name.find("piu)");
        if (p != std::string::npos) return tf_sin(std::stoi(name.substr(4, p - 4)));
    }
    if (name.rfind("cos(", 0) == 0 && name.back() == ')') {
        const auto p = name.find("piu)");
        if (p != std::string::npos) return tf_cos(std::stoi(name.substr(4, p - 4)));
    }
    if (name.rfind("bump(", 0) == 0 && name.back() == ')') {
        const auto comma = name.find(',');
        if (comma != std::string::npos)
            return tf_bump(std::stod(name.substr(5, comma - 5)),
                           std::stod(name.substr(comma + 1)));
    }
    throw std::invalid_argument("unknown test function: " + name);
}

double pair_empirical(const Configuration& cfg, const TestFunction& g) {
    const int n = cfg.scaling_n();
    double sum = 0.0;
    for (int x = 1; x <= cfg.num_sites(); ++x)
        if (cfg.site(x)) sum += g(static_cast<double>(x) / n);
    return sum / n;
}

double mean_density(const Configuration& cfg) { return cfg.mean_density(); }

Integrand integrand_by_name(const std::string& name) {
    if (name == "left-minus-alpha") return Integrand::left_minus_alpha;
    if (name == "right-minus-beta") return Integrand::right_minus_beta;
    if (name == "left-minus-mean") return Integrand::left_minus_mean;
    if (name == "right-minus-mean") return Integrand::right_minus_mean;
    if (name == "mean-minus-target") return Integrand::mean_minus_target;
    if (name == "pairing-minus-target") return Integrand::pairing_minus_target;
    throw std::invalid_argument("unknown integrand: " + name);
}

PathIntegral::PathIntegral(const Params& params, Integrand id, TestFunction g,
                           std::function<double(double)> target_antiderivative)
    : params_(params), id_(id), g_(std::move(g)),
      target_antiderivative_(std::move(target_antiderivative)) {
    if (id_ == Integrand::pairing_minus_target && !g_.f)
        throw std::invalid_argument("PathIntegral: pairing integrand needs a test function");
}

void PathIntegral::on_interval(const Configuration& cfg, double t, double dt) {
    if (t_start_ < 0.0) t_start_ = t;
    t_end_ = t + dt;
    double v = 0.0;
    switch (id_) {
        case Integrand::left_minus_alpha:
            v = cfg.site(1) - params_.alpha;
            break;
        case Integrand::right_minus_beta:
            v = cfg.site(cfg.num_sites()) - params_.beta;
            break;
        case Integrand::left_minus_mean:
            v = cfg.site(1) - cfg.mean_density();
            break;
        case Integrand::right_minus_mean:
            v = cfg.site(cfg.num_sites()) - cfg.mean_density();
            break;
        case Integrand::mean_minus_target:
            v = cfg.mean_density();
            break;
        case Integrand::pairing_minus_target:
            v = pair_empirical(cfg, g_);
            break;
    }
    state_part_.add(v * dt);
}

double PathIntegral::value() const {
    double v = state_part_.value();
    if (target_antiderivative_ && t_start_ >= 0.0)
        v -= target_antiderivative_(t_end_) - target_antiderivative_(t_start_);
    return v;
}

std::function<double(double)> m_closed_antiderivative(double c, double m0,
                                                      double alpha, double beta) {
    const double mbar = 0.5 * (alpha + beta);
    const double amp = m0 - mbar;
    return [=](double t) { return mbar * t - amp / (2.0 * c) * std::exp(-2.0 * c * t); };
}

ProfileAverage::ProfileAverage(int n)
    : occ_(n - 1, 0), since_(n - 1, 0.0), site_time_(n - 1, 0.0) {}

void ProfileAverage::on_interval(const Configuration& cfg, double t, double dt) {
    if (!started_) {
        started_ = true;
        t_begin_ = t;
        for (std::size_t i = 0; i < occ_.size(); ++i) {
            occ_[i] = static_cast<std::uint8_t>(cfg.site(static_cast<int>(i) + 1));
            since_[i] = t;
        }
    }
    t_end_ = t + dt;
}

void ProfileAverage::settle(int x) {
    if (occ_[x - 1]) site_time_[x - 1] += t_end_ - since_[x - 1];
    since_[x - 1] = t_end_;
}

void ProfileAverage::on_event(const Event& ev, const Configuration&) {
    // The event closes the interval just delivered, so it happens at t_end_.
    switch (ev.kind) {
        case Event::Kind::bulk_exchange:
            settle(ev.bond);
            settle(ev.bond + 1);
            occ_[ev.bond - 1] ^= 1;
            occ_[ev.bond] ^= 1;
            break;
        case Event::Kind::left_flip:
            settle(1);
            occ_[0] ^= 1;
            break;
        case Event::Kind::right_flip: {
            const int last = static_cast<int>(occ_.size());
            settle(last);
            occ_[last - 1] ^= 1;
            break;
        }
    }
}

std::vector<double> ProfileAverage::profile() const {
    std::vector<double> p(site_time_.size(), 0.0);
    const double t = total_time();
    if (t > 0.0)
        for (std::size_t i = 0; i < p.size(); ++i) {
            double acc = site_time_[i];
            if (occ_[i]) acc += t_end_ - since_[i];  // settle the open stretch
            p[i] = acc / t;
        }
    return p;
}

TraceSampler::TraceSampler(std::vector<double> times,
                           std::function<double(const Configuration&)> f)
    : times_(std::move(times)), f_(std::move(f)) {
    values_.reserve(times_.size());
}

void TraceSampler::on_interval(const Configuration& cfg, double t, double dt) {
    // Sample times falling in [t, t+dt) see the current configuration. A
    // trailing sample exactly at the horizon end is picked up here too,
    // since the final truncated interval is the last one delivered.
    while (next_ < times_.size() && times_[next_] <= t + dt) {
        values_.push_back(f_(cfg));
        ++next_;
    }
}

StateOccupation::StateOccupation(int n) {
    if (n > 21) throw std::invalid_argument("StateOccupation: N too large");
    time_in_state_.assign(std::size_t{1} << (n - 1), 0.0);
}

void StateOccupation::on_interval(const Configuration& cfg, double, double dt) {
    time_in_state_[cfg.state_index()] += dt;
}

std::vector<double> StateOccupation::frequencies() const {
    double total = 0.0;
    for (double v : time_in_state_) total += v;
    std::vector<double> f(time_in_state_.size(), 0.0);
    if (total > 0.0)
        for (std::size_t i = 0; i < f.size(); ++i) f[i] = time_in_state_[i] / total;
    return f;
}

JumpCounter::JumpCounter(const Params& params, std::optional<TestFunction> h)
    : n_(params.n) {
    if (h) {
        has_h_ = true;
        const int n = params.n;
        bulk_jump_sq_.resize(std::max(params.num_bonds(), 0));
        for (int x = 1; x <= params.num_bonds(); ++x) {
            const double d = ((*h)(static_cast<double>(x) / n) -
                              (*h)(static_cast<double>(x + 1) / n)) / n;
            bulk_jump_sq_[x - 1] = d * d;
        }
        const double hl = (*h)(1.0 / n) / n;
        const double hr = (*h)(static_cast<double>(n - 1) / n) / n;
        left_jump_sq_ = hl * hl;
        right_jump_sq_ = hr * hr;
    }
}

void JumpCounter::on_event(const Event& ev, const Configuration&) {
    switch (ev.kind) {
        case Event::Kind::bulk_exchange:
            if (has_h_) qv_h_.add(bulk_jump_sq_[ev.bond - 1]);
            break;
        case Event::Kind::left_flip:
            ++left_;
            if (has_h_) qv_h_.add(left_jump_sq_);
            break;
        case Event::Kind::right_flip:
            ++right_;
            if (has_h_) qv_h_.add(right_jump_sq_);
            break;
    }
}

double JumpCounter::qv_mean_density() const {
    const double sites = n_ - 1;
    return static_cast<double>(left_ + right_) / (sites * sites);
}

void EventLog::on_event(const Event& ev, const Configuration& before) {
    int delta = 0;
    if (ev.kind == Event::Kind::left_flip)
        delta = before.site(1) ? -1 : 1;
    else if (ev.kind == Event::Kind::right_flip)
        delta = before.site(before.num_sites()) ? -1 : 1;
    entries_.push_back({ev, delta});
}

}  // namespace ssep
