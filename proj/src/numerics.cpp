#include "ssep/numerics.hpp"

#include <cassert>
#include <stdexcept>

namespace ssep {

std::vector<double> solve_tridiagonal(std::span<const double> lower,
                                      std::span<const double> diag,
                                      std::span<const double> upper,
                                      std::span<const double> rhs) {
    const std::size_t n = diag.size();
    if (n == 0 || lower.size() != n || upper.size() != n || rhs.size() != n)
        throw std::invalid_argument("solve_tridiagonal: inconsistent sizes");

    std::vector<double> c_star(n), d_star(n), x(n);
    c_star[0] = upper[0] / diag[0];
    d_star[0] = rhs[0] / diag[0];
    for (std::size_t i = 1; i < n; ++i) {
        const double m = diag[i] - lower[i] * c_star[i - 1];
        c_star[i] = upper[i] / m;
        d_star[i] = (rhs[i] - lower[i] * d_star[i - 1]) / m;
    }
    x[n - 1] = d_star[n - 1];
    for (std::size_t i = n - 1; i-- > 0;) x[i] = d_star[i] - c_star[i] * x[i + 1];
    return x;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    const std::size_t n = x.size();
    if (n < 2 || y.size() != n)
        throw std::invalid_argument("fit_line: need >= 2 matching points");

    double sx = 0, sy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sx += x[i];
        sy += y[i];
    }
    const double mx = sx / n, my = sy / n;
    double sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("fit_line: degenerate abscissae");

    LinearFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual_rms = std::sqrt(ss / n);
    return fit;
}

Stats summarize(std::span<const double> values) {
    Stats s;
    s.count = values.size();
    if (s.count == 0) return s;
    double sum = 0;
    for (double v : values) sum += v;
    s.mean = sum / s.count;
    if (s.count >= 2) {
        double ss = 0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(ss / (s.count - 1));
        s.ci_half = 1.959963984540054 * s.stddev / std::sqrt(double(s.count));
    }
    return s;
}

}  // namespace ssep
