#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

namespace ssep {

// Neumaier-compensated accumulator. Long runs add ~1e9 holding intervals;
// plain summation loses several digits there.
class KahanSum {
public:
    void add(double x) noexcept {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }
    void reset() noexcept { sum_ = comp_ = 0.0; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

// Thomas algorithm for a tridiagonal system. lower[0] and upper[n-1] are
// unused. No pivoting; callers only pass diagonally dominant systems.
std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double residual_rms = 0.0;
};

// Ordinary least squares y = slope*x + intercept. Needs >= 2 points.
LinearFit fit_line(std::span<const double> x, std::span<const double> y);

struct Stats {
    double mean = 0.0;
    double stddev = 0.0;     // sample standard deviation
    double ci_half = 0.0;    // 95% normal-approximation half width
    std::size_t count = 0;
};

Stats summarize(std::span<const double> values);

}  // namespace ssep
