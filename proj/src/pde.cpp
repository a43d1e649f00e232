#include "ssep/pde.hpp"

#include <cmath>
#include <stdexcept>

#include "ssep/numerics.hpp"
#include "ssep/theory.hpp"

namespace ssep {

BoundaryCondition BoundaryCondition::dirichlet(double alpha, double beta) {
    return {Kind::dirichlet, alpha, beta, 0.0};
}

BoundaryCondition BoundaryCondition::robin(double c, double alpha, double beta) {
    if (!(c > 0.0)) throw std::invalid_argument("robin: c must be > 0");
    return {Kind::robin, alpha, beta, c};
}

BoundaryCondition BoundaryCondition::neumann() { return {Kind::neumann, 0, 0, 0}; }

double GridFunction::at(double u) const {
    const int m = resolution();
    if (u <= 0.0) return values.front();
    if (u >= 1.0) return values.back();
    const double s = u * m;
    const int j = static_cast<int>(s);
    const double w = s - j;
    return (1.0 - w) * values[j] + w * values[j + 1];
}

GridFunction grid_from_function(int m, const std::function<double(double)>& f) {
    GridFunction g;
    g.values.resize(m + 1);
    for (int j = 0; j <= m; ++j) g.values[j] = f(static_cast<double>(j) / m);
    return g;
}

GridFunction solve_heat(const BoundaryCondition& bc, GridFunction rho0,
                        double t_end, double dt) {
    const int m = rho0.resolution();
    if (m < 8) throw std::invalid_argument("solve_heat: M must be >= 8");
    if (!(dt > 0.0) || !std::isfinite(t_end) || t_end < 0.0)
        throw std::invalid_argument("solve_heat: bad time parameters");
    for (double v : rho0.values)
        if (!std::isfinite(v)) throw std::invalid_argument("solve_heat: non-finite input");

    const double h = 1.0 / m;
    const std::size_t rows = m + 1;
    std::vector<double> lower(rows), diag(rows), upper(rows), rhs(rows);

    double t = rho0.t;
    while (t < t_end - 1e-15 * std::max(1.0, t_end)) {
        const double step = std::min(dt, t_end - t);
        const double r = step / (h * h);

        for (int j = 1; j < m; ++j) {
            lower[j] = -r;
            diag[j] = 1.0 + 2.0 * r;
            upper[j] = -r;
            rhs[j] = rho0.values[j];
        }
        switch (bc.kind) {
            case BoundaryCondition::Kind::dirichlet:
                diag[0] = 1.0; upper[0] = 0.0; rhs[0] = bc.alpha;
                lower[m] = 0.0; diag[m] = 1.0; rhs[m] = bc.beta;
                break;
            case BoundaryCondition::Kind::neumann:
                // ghost rho_{-1} = rho_1
                diag[0] = 1.0 + 2.0 * r; upper[0] = -2.0 * r; rhs[0] = rho0.values[0];
                lower[m] = -2.0 * r; diag[m] = 1.0 + 2.0 * r; rhs[m] = rho0.values[m];
                break;
            case BoundaryCondition::Kind::robin:
                // ghost rho_{-1} = rho_1 - 2h c (rho_0 - alpha)
                diag[0] = 1.0 + 2.0 * r * (1.0 + h * bc.c);
                upper[0] = -2.0 * r;
                rhs[0] = rho0.values[0] + 2.0 * r * h * bc.c * bc.alpha;
                // ghost rho_{M+1} = rho_{M-1} + 2h c (beta - rho_M)
                lower[m] = -2.0 * r;
                diag[m] = 1.0 + 2.0 * r * (1.0 + h * bc.c);
                rhs[m] = rho0.values[m] + 2.0 * r * h * bc.c * bc.beta;
                break;
        }
        rho0.values = solve_tridiagonal(lower, diag, upper, rhs);
        t += step;
    }
    rho0.t = t;
    return rho0;
}

StationaryResult stationary_solution(const BoundaryCondition& bc, int m,
                                     double alpha_for_neumann,
                                     double beta_for_neumann) {
    StationaryResult out;
    switch (bc.kind) {
        case BoundaryCondition::Kind::dirichlet:
            out.profile = grid_from_function(
                m, [&](double u) { return (bc.beta - bc.alpha) * u + bc.alpha; });
            break;
        case BoundaryCondition::Kind::robin:
            out.profile = grid_from_function(m, [&](double u) {
                return rho_bar(1.0, bc.c, bc.alpha, bc.beta, u);
            });
            break;
        case BoundaryCondition::Kind::neumann: {
            // Every constant is stationary; the exclusion process selects
            // (alpha+beta)/2, which we return as the representative.
            out.unique = false;
            const double rep = 0.5 * (alpha_for_neumann + beta_for_neumann);
            out.profile = grid_from_function(m, [rep](double) { return rep; });
            break;
        }
    }
    return out;
}

double grid_pair(const GridFunction& rho, const TestFunction& g) {
    const int m = rho.resolution();
    KahanSum s;
    for (int j = 0; j <= m; ++j) {
        const double w = (j == 0 || j == m) ? 0.5 : 1.0;
        s.add(w * rho.values[j] * g(rho.u(j)));
    }
    return s.value() / m;
}

double grid_mass(const GridFunction& rho) { return grid_pair(rho, tf_constant()); }

}  // namespace ssep
