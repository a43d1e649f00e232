#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ssep/params.hpp"

namespace ssep {

// Limit-profile regime as a function of (theta, gamma).
enum class Regime {
    dirichlet,              // theta < 1
    robin,                  // theta = 1
    neumann_frozen,         // theta > 1, gamma < theta-1 : profile stays at m0
    neumann_relaxing,       // theta > 1, gamma = theta-1 : exponential relaxation
    neumann_equilibrated,   // theta > 1, gamma > theta-1 : (alpha+beta)/2
};

// Dispatch uses exact comparisons with tolerance 1e-12 on the measure-zero
// boundaries theta=1 and gamma=theta-1.
Regime classify_regime(double theta, double gamma);
// True when (theta, gamma) is within 1e-6 of a regime boundary without being
// on it; callers may want to warn, since the closed forms are discontinuous
// across the boundary.
bool near_regime_boundary(double theta, double gamma);
std::string regime_name(Regime r);

// Hydrostatic profile rho_bar(u).
double rho_bar(double theta, double c, double alpha, double beta, double u);

// Long-time profile rho_{theta,gamma}(t,u); space-independent whenever
// theta > 1. m0 is required exactly in the frozen and relaxing regimes.
// Throws std::invalid_argument when a required m0 is absent.
double rho_theta_gamma(double theta, double gamma, double c, double alpha,
                       double beta, std::optional<double> m0, double t, double u);

// m_t = (alpha+beta)/2 + (m0 - (alpha+beta)/2) e^{-2ct}.
double m_closed(double t, double c, double m0, double alpha, double beta);

// Finite-N stationary one-point profile from the closed linear system
//   bulk:  rho_{x-1} - 2 rho_x + rho_{x+1} = 0
//   left:  c N^-theta (alpha - rho_1) + (rho_2 - rho_1) = 0
//   right: c N^-theta (beta - rho_{N-1}) + (rho_{N-2} - rho_{N-1}) = 0
// Affine in x; N=2 degenerates to the scalar balance (alpha+beta)/2.
std::vector<double> exact_stationary_profile(const Params& p);

struct StationaryLaw {
    bool ok = false;
    std::string error;
    std::vector<double> probabilities;  // over 2^(N-1) states, bit x-1 = eta(x)
    std::vector<double> marginals;      // P(eta(x)=1), length N-1
};

// Exact stationary law of the full generator, N <= 12. Solves pi L_N = 0
// with a normalization row by dense elimination; a rank-deficient system is
// reported as a failure flag (irreducibility guarantees uniqueness, so
// deficiency signals a generator-construction bug).
StationaryLaw brute_force_stationary(const Params& p);

// (1/2) sum |a_i - b_i| for probability vectors.
double total_variation(std::span<const double> a, std::span<const double> b);

}  // namespace ssep
