#include "ssep/theory.hpp"

#include <cmath>
#include <stdexcept>

#include "ssep/numerics.hpp"

namespace ssep {

namespace {
constexpr double kRegimeTol = 1e-12;
}

Regime classify_regime(double theta, double gamma) {
    if (std::abs(theta - 1.0) <= kRegimeTol) return Regime::robin;
    if (theta < 1.0) return Regime::dirichlet;
    const double crit = theta - 1.0;
    if (std::abs(gamma - crit) <= kRegimeTol) return Regime::neumann_relaxing;
    return gamma < crit ? Regime::neumann_frozen : Regime::neumann_equilibrated;
}

bool near_regime_boundary(double theta, double gamma) {
    const double d_theta = std::abs(theta - 1.0);
    if (d_theta > kRegimeTol && d_theta < 1e-6) return true;
    if (theta > 1.0) {
        const double d_gamma = std::abs(gamma - (theta - 1.0));
        if (d_gamma > kRegimeTol && d_gamma < 1e-6) return true;
    }
    return false;
}

std::string regime_name(Regime r) {
    switch (r) {
        case Regime::dirichlet: return "dirichlet";
        case Regime::robin: return "robin";
        case Regime::neumann_frozen: return "neumann-frozen";
        case Regime::neumann_relaxing: return "neumann-relaxing";
        case Regime::neumann_equilibrated: return "neumann-equilibrated";
    }
    return "?";
}

double rho_bar(double theta, double c, double alpha, double beta, double u) {
    if (std::abs(theta - 1.0) <= kRegimeTol)
        return c * (beta - alpha) / (2.0 + c) * u + alpha + (beta - alpha) / (2.0 + c);
    if (theta < 1.0) return (beta - alpha) * u + alpha;
    return 0.5 * (alpha + beta);
}

double m_closed(double t, double c, double m0, double alpha, double beta) {
    const double mbar = 0.5 * (alpha + beta);
    return mbar + (m0 - mbar) * std::exp(-2.0 * c * t);
}

double rho_theta_gamma(double theta, double gamma, double c, double alpha,
                       double beta, std::optional<double> m0, double t, double u) {
    switch (classify_regime(theta, gamma)) {
        case Regime::dirichlet:
        case Regime::robin:
            return rho_bar(theta, c, alpha, beta, u);
        case Regime::neumann_frozen:
            if (!m0)
                throw std::invalid_argument(
                    "rho_theta_gamma: m0 required for theta>1, gamma<theta-1");
            return *m0;
        case Regime::neumann_equilibrated:
            return 0.5 * (alpha + beta);
        case Regime::neumann_relaxing:
            if (!m0)
                throw std::invalid_argument(
                    "rho_theta_gamma: m0 required for theta>1, gamma=theta-1");
            return m_closed(t, c, *m0, alpha, beta);
    }
    throw std::logic_error("rho_theta_gamma: unreachable");
}

std::vector<double> exact_stationary_profile(const Params& p) {
    const int sites = p.num_sites();
    const double s = p.boundary_scale;  // c N^-theta
    if (sites == 1) return {0.5 * (p.alpha + p.beta)};

    std::vector<double> lower(sites, 0.0), diag(sites, 0.0), upper(sites, 0.0),
        rhs(sites, 0.0);
    diag[0] = -(s + 1.0);
    upper[0] = 1.0;
    rhs[0] = -s * p.alpha;
    for (int i = 1; i + 1 < sites; ++i) {
        lower[i] = 1.0;
        diag[i] = -2.0;
        upper[i] = 1.0;
    }
    lower[sites - 1] = 1.0;
    diag[sites - 1] = -(s + 1.0);
    rhs[sites - 1] = -s * p.beta;
    return solve_tridiagonal(lower, diag, upper, rhs);
}

StationaryLaw brute_force_stationary(const Params& p) {
    StationaryLaw out;
    if (p.n > 12) {
        out.error = "brute_force_stationary: N=" + std::to_string(p.n) +
                    " exceeds the N<=12 state-space cap";
        return out;
    }
    const int sites = p.num_sites();
    const std::size_t states = std::size_t{1} << sites;

    // A = L_N^T with the first row replaced by the normalization sum(pi)=1.
    std::vector<double> a(states * states, 0.0);
    auto at = [&](std::size_t r, std::size_t col) -> double& {
        return a[r * states + col];
    };
    for (std::size_t s = 0; s < states; ++s) {
        double diag = 0.0;
        auto add = [&](std::size_t to, double rate) {
            at(to, s) += rate;  // transposed: column = from-state
            diag -= rate;
        };
        for (int x = 1; x <= p.num_bonds(); ++x) {
            const int b0 = (s >> (x - 1)) & 1, b1 = (s >> x) & 1;
            if (b0 != b1) add(s ^ ((std::size_t{1} << (x - 1)) | (std::size_t{1} << x)), 1.0);
        }
        const int eta1 = s & 1;
        add(s ^ 1, p.boundary_scale * (eta1 ? 1.0 - p.alpha : p.alpha));
        const std::size_t rbit = std::size_t{1} << (sites - 1);
        const int etaR = (s & rbit) ? 1 : 0;
        add(s ^ rbit, p.boundary_scale * (etaR ? 1.0 - p.beta : p.beta));
        at(s, s) += diag;
    }
    std::vector<double> rhs(states, 0.0);
    for (std::size_t j = 0; j < states; ++j) at(0, j) = 1.0;
    rhs[0] = 1.0;

    // Gaussian elimination with partial pivoting.
    std::vector<std::size_t> perm(states);
    for (std::size_t i = 0; i < states; ++i) perm[i] = i;
    for (std::size_t k = 0; k < states; ++k) {
        std::size_t piv = k;
        double best = std::abs(at(k, k));
        for (std::size_t r = k + 1; r < states; ++r) {
            const double v = std::abs(at(r, k));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-13) {
            out.error = "brute_force_stationary: numerically rank-deficient system "
                        "(non-unique stationary law?)";
            return out;
        }
        if (piv != k) {
            for (std::size_t j = 0; j < states; ++j) std::swap(at(k, j), at(piv, j));
            std::swap(rhs[k], rhs[piv]);
        }
        for (std::size_t r = k + 1; r < states; ++r) {
            const double f = at(r, k) / at(k, k);
            if (f == 0.0) continue;
            at(r, k) = 0.0;
            for (std::size_t j = k + 1; j < states; ++j) at(r, j) -= f * at(k, j);
            rhs[r] -= f * rhs[k];
        }
    }
    std::vector<double> pi(states, 0.0);
    for (std::size_t i = states; i-- > 0;) {
        double v = rhs[i];
        for (std::size_t j = i + 1; j < states; ++j) v -= at(i, j) * pi[j];
        pi[i] = v / at(i, i);
    }

    out.ok = true;
    out.probabilities = std::move(pi);
    out.marginals.assign(sites, 0.0);
    for (std::size_t s = 0; s < states; ++s)
        for (int x = 1; x <= sites; ++x)
            if ((s >> (x - 1)) & 1) out.marginals[x - 1] += out.probabilities[s];
    return out;
}

double total_variation(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size())
        throw std::invalid_argument("total_variation: size mismatch");
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += std::abs(a[i] - b[i]);
    return 0.5 * s;
}

}  // namespace ssep
