#pragma once

#include <functional>
#include <vector>

#include "ssep/observables.hpp"

namespace ssep {

struct BoundaryCondition {
    enum class Kind { dirichlet, robin, neumann };
    Kind kind = Kind::dirichlet;
    double alpha = 0.0;  // unused for neumann
    double beta = 0.0;
    double c = 0.0;      // robin only

    static BoundaryCondition dirichlet(double alpha, double beta);
    static BoundaryCondition robin(double c, double alpha, double beta);
    static BoundaryCondition neumann();
};

// Values on the uniform grid u_j = j/M, j = 0..M.
struct GridFunction {
    std::vector<double> values;
    double t = 0.0;

    int resolution() const { return static_cast<int>(values.size()) - 1; }
    double u(int j) const { return static_cast<double>(j) / resolution(); }
    // Piecewise-linear evaluation.
    double at(double u) const;
};

GridFunction grid_from_function(int m, const std::function<double(double)>& f);

// Backward-Euler heat solver, second order in space. Robin and Neumann
// boundary rows come from central ghost points, so the boundary truncation
// error is O(1/M^2) as well. Robin sign convention:
//   d_u rho(t,0) = c (rho(t,0) - alpha),  d_u rho(t,1) = c (beta - rho(t,1)).
// Throws std::invalid_argument on non-finite input or M < 8.
GridFunction solve_heat(const BoundaryCondition& bc, GridFunction rho0,
                        double t_end, double dt);

struct StationaryResult {
    GridFunction profile;
    bool unique = true;  // false for Neumann: any constant is stationary;
                         // the profile holds the representative (alpha+beta)/2
};

StationaryResult stationary_solution(const BoundaryCondition& bc, int m,
                                     double alpha_for_neumann = 0.0,
                                     double beta_for_neumann = 0.0);

// Trapezoid quadrature of rho * g over [0,1].
double grid_pair(const GridFunction& rho, const TestFunction& g);
// Trapezoid mass, i.e. grid_pair with g = 1.
double grid_mass(const GridFunction& rho);

}  // namespace ssep
