#pragma once

#include <string>
#include <vector>

#include "hardyspec/grid.hpp"
#include "hardyspec/solver.hpp"
#include "hardyspec/weight.hpp"

namespace hs {

enum class Classification { MinimizerExists, HardySaturated, Inconclusive };

const char* classification_name(Classification c);

struct SectorSolve {
    int l = 0;
    double lambda = 0.0;
    double residual = 0.0;
    int iterations = 0;
};

struct SpectralReport {
    int N = 3;
    LogGrid grid;
    std::vector<SectorSolve> sectors;  // ascending l, 0..l_max
    double lambda_m = 0.0;
    double lambda_plus = 0.0;   // hardy/m(inf), +inf when m(inf) <= 0
    double lambda_minus = 0.0;  // hardy/m(0),   +inf when m(0)  <= 0
    double lambda_star = 0.0;   // min(lambda_plus, lambda_minus)
    double gap = 0.0;           // lambda_star - lambda_m
    Classification classification = Classification::Inconclusive;
    int winning_l = 0;
    std::vector<double> psi;  // log-profile on all grid nodes, zero ends
    double classification_tol = 1e-3;
    double tol = 1e-10;
    // Retained so downstream fits can re-evaluate the weight.
    const WeightProfile* profile = nullptr;
};

struct LambdaOptions {
    int l_max = 3;
    double tol = 1e-10;
    long max_iter = 200000;
    double classification_tol = 1e-3;
    int jobs = 1;
};

// Minimizes the Rayleigh quotient over sectors l = 0..l_max and classifies
// the spectral gap.  For nonnegative weights the sector values must be
// nondecreasing in l and the minimum must sit in sector 0; a violation is
// reported as an internal fault.
SpectralReport compute_lambda_m(const WeightProfile& m, int N,
                                const LogGrid& grid,
                                const LambdaOptions& opts = {});

struct LimitBoundCheck {
    double lambda_m = 0.0;
    double lambda_plus = 0.0;
    double lambda_minus = 0.0;
    bool holds = false;
};

// Upper-bound property of the infimum: lambda_m never exceeds the better
// of min(lambda_plus, lambda_minus) and a discrete certificate built from
// the constant end plateaus of the profile (test functions supported where
// the weight already equals its limit).
LimitBoundCheck check_limit_bound(const WeightProfile& m, int N,
                                  const LogGrid& grid);

struct DecayFit {
    double r_lo = 0.0, r_hi = 0.0;
    double fitted_s = 0.0;
    double s_lower = 0.0, s_upper = 0.0;
    double band_margin = 0.05;
    double band_r = 0.0;
    double lambda_m = 0.0;
    bool pass = false;
};

// Fits the near-origin decay exponent of the computed minimizer,
// u ~ r^{-sqrt(hardy) + s}, by least squares on -log u against log r over
// the window [r_lo, r_hi], and compares with the band predicted from the
// weight extrema on the ball of radius band_r:
//   s(m#) = sqrt(hardy) - sqrt(hardy - lambda_m * m#).
DecayFit decay_fit(const SpectralReport& report, double r_lo, double r_hi,
                   double band_r, double band_margin = 0.05);

struct BallBoundReport {
    int N = 0;
    double r = 0.0, d = 0.0;
    double m_origin = 0.0, m_infinity = 0.0, m_peak = 0.0;
    double criterion_rhs = 0.0;
    bool criterion_holds = false;
    double apriori_bound = 0.0;
    double sharp_bound = 0.0;
    bool use_sharp = false;
};

// Existence bounds for a weight concentrated on the annulus-free ball
// picture: peak value m_peak on a ball of radius r at distance d from the
// origin, limits m_origin / m_infinity elsewhere.
BallBoundReport ball_bound(int N, double r, double d, double m_origin,
                           double m_infinity, double m_peak, bool use_sharp);

// First Dirichlet eigenvalue of the Laplacian on the unit ball of R^N,
// radial part only, on an n-node grid in r (natural at 0, Dirichlet at 1).
double ball_dirichlet_lambda1(int N, int n);

}  // namespace hs
