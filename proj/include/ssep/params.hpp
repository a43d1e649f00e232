#pragma once

#include <cmath>
#include <stdexcept>
#include <string>

namespace ssep {

// Model tuple (N, c, theta, alpha, beta, gamma). Single source of truth for
// all transition rates; the derived constants are computed once here and
// never recomputed in the event loop.
struct Params {
    int n = 2;             // scaling parameter N; sites are 1..N-1
    double c = 1.0;        // boundary rate constant, > 0
    double theta = 0.0;    // reservoir-coupling exponent, >= 0
    double alpha = 0.5;    // left reservoir density, in (0,1)
    double beta = 0.5;     // right reservoir density, in (0,1)
    double gamma = 0.0;    // extra time-scaling exponent, >= 0

    double boundary_scale = 1.0;  // c * N^-theta
    double speedup = 1.0;         // N^(2+gamma)

    static Params make(int n, double c, double theta, double alpha, double beta,
                       double gamma = 0.0) {
        if (n < 2) throw std::invalid_argument("Params: N must be >= 2");
        if (!(c > 0.0)) throw std::invalid_argument("Params: c must be > 0");
        if (!(theta >= 0.0)) throw std::invalid_argument("Params: theta must be >= 0");
        if (!(alpha > 0.0 && alpha < 1.0))
            throw std::invalid_argument("Params: alpha must lie in (0,1)");
        if (!(beta > 0.0 && beta < 1.0))
            throw std::invalid_argument("Params: beta must lie in (0,1)");
        if (!(gamma >= 0.0)) throw std::invalid_argument("Params: gamma must be >= 0");
        Params p;
        p.n = n;
        p.c = c;
        p.theta = theta;
        p.alpha = alpha;
        p.beta = beta;
        p.gamma = gamma;
        p.boundary_scale = c * std::pow(static_cast<double>(n), -theta);
        p.speedup = std::pow(static_cast<double>(n), 2.0 + gamma);
        return p;
    }

    int num_sites() const { return n - 1; }
    int num_bonds() const { return n - 2; }
};

}  // namespace ssep
