#pragma once

#include <map>
#include <vector>

#include "hardyspec/grid.hpp"
#include "hardyspec/weight.hpp"

namespace hs {

struct SigmaPoint {
    double lambda = 0.0;
    double sigma = 0.0;
    bool feasible = false;
};

// Largest perturbation scale sigma(lambda) keeping
//   K + hardy*M - lambda*M_base - lambda*sigma*M_w
// nonnegative with natural (free) ends: sigma = Lambda(lambda)/lambda where
// Lambda is the principal value of (K + hardy*M - lambda*M_base, M_w).
// base == nullptr means no base weight.  Requires 0 < lambda strictly
// below the base problem's own principal value.
SigmaPoint sigma_threshold(const LogGrid& grid, const WeightProfile* base,
                           const WeightProfile& w, double lambda, int N,
                           double tol = 1e-10, long max_iter = 200000);

// sigma_threshold over a strictly ascending lambda grid; enforces strict
// decrease of sigma along the curve.
std::vector<SigmaPoint> sigma_curve(const LogGrid& grid,
                                    const WeightProfile* base,
                                    const WeightProfile& w,
                                    const std::vector<double>& lambdas, int N,
                                    double tol = 1e-10,
                                    long max_iter = 200000);

struct ThresholdResult {
    int N = 0;
    double a_level = 0.0;
    double lambda_circ = 0.0;  // hardy/a_level, the unperturbed level
    double gap_tol = 0.0;      // 0.02 * lambda_circ
    double bracket_tol = 0.0;
    double b_low = 0.0;   // largest amplitude seen NOT crossing
    double b_high = 0.0;  // smallest amplitude seen crossing
    bool converged = false;
    std::map<double, double> lambda_at;  // amplitude -> sector-0 lambda
};

// Smallest bump amplitude B for which m = a_level + B*bump drags the
// principal value below hardy/a_level by more than gap_tol: doubling
// search from B = 1 (at most 60 doublings), then bisection until
// b_high/b_low <= 1 + bracket_tol.  The recorded amplitude->lambda map
// must be nonincreasing; a violation is an internal fault.
ThresholdResult bump_threshold(double a_level, const WeightProfile& bump,
                               int N, const LogGrid& grid,
                               double bracket_tol = 0.01, double tol = 1e-10,
                               long max_iter = 200000);

// True when m_pert, which must dominate the periodic extension of m_base
// (nonnegative excess vanishing at both ends, positive total mass), pulls
// the sector-0 principal value strictly below the periodic level:
// Lambda_1(m_pert) < lambda_circ(m_base) * (1 - 1e-6).
bool strict_gap_check(const WeightProfile& m_base,
                      const WeightProfile& m_pert, double gamma, int N,
                      const LogGrid& grid, int n_cell = 256,
                      double tol = 1e-10, long max_iter = 200000);

}  // namespace hs
