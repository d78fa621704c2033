#pragma once

#include <functional>
#include <utility>
#include <vector>

#include "hardyspec/grid.hpp"

namespace hs {

// Radial function u(x) = u(|x|) on R^N represented through its bounded
// log-profile w(t) = u(e^t) * e^{t(N-2)/2}, which stays finite where a
// direct evaluation of u would under- or overflow.
struct RadialFunction {
    int N = 3;
    std::function<double(double)> log_profile;

    // u(r) = e^{t(2-N)/2} * log_profile(t) at t = log r; requires r > 0.
    double eval(double r) const;
};

// Interprets psi as nodal values of the log-profile on the grid (zero
// outside the grid range, linear between nodes).
RadialFunction to_physical(const LogGrid& grid, std::vector<double> psi,
                           int N);

// Energy pair (gradient_energy, transformed_energy) of the radial function
// with log-profile psi on the grid, psi vanishing at both grid ends:
//   gradient:    int |grad u|^2 dx, via refined secant slopes in r
//   transformed: omega_N * psi^T (K + hardy*M) psi on the same grid
// The two agree as the grid refines.
std::pair<double, double> physical_energy(const LogGrid& grid,
                                          const std::vector<double>& psi,
                                          int N);

// Hardy-scale energy of the dilation-cutoff family applied to v: the
// k-th member concentrates v near r = 1 with logarithmic cutoff width k.
// Quadrature runs over t in [t_lo, t_hi] (must contain 0) with analytic
// exponential tails beyond; throws when the truncation uncertainty cannot
// be certified below 1e-3 of the total.
double null_sequence_energy(const RadialFunction& v, long k, double t_lo,
                            double t_hi);

}  // namespace hs
