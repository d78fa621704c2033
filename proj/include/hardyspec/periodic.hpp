#pragma once

#include <utility>
#include <vector>

#include "hardyspec/radial.hpp"
#include "hardyspec/weight.hpp"

namespace hs {

struct PeriodicState {
    int N = 3;
    double gamma = 2.0;
    int n_cell = 256;
    double lambda_circ = 0.0;   // principal periodic eigenvalue on one cell
    std::vector<double> psi;    // positive cell eigenvector, max entry 1
    double sandwich_c = 1.0;    // max(psi)/min(psi) >= 1
    double residual = 0.0;
    int iterations = 0;
};

// Principal periodic eigenvalue for a gamma-periodic nonnegative weight:
// pencil on one cell [0, log gamma) with wrap-around coupling.  The
// eigenvector must be strictly positive (Perron state); a sign change is
// a solver failure.
PeriodicState lambda_circ(const WeightProfile& m, double gamma, int N,
                          int n_cell = 256, double tol = 1e-10,
                          long max_iter = 200000);

// Multiplicatively periodic extension of the cell eigenvector to all of
// (0, inf): log-profile psi-hat(t) continued with period log gamma.
RadialFunction extend(const PeriodicState& state);

// Energies Q_k of the dilation-cutoff family built on the extended ground
// state, one per entry of k_list (ascending positive integers).  k*Q_k
// stays bounded while Q_k -> 0.
std::vector<std::pair<long, double>> null_energy_decay(
    const PeriodicState& state, const std::vector<long>& k_list);

}  // namespace hs
