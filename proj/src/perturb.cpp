#include "hardyspec/perturb.hpp"

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "hardyspec/common.hpp"
#include "hardyspec/pencil.hpp"
#include "hardyspec/periodic.hpp"
#include "hardyspec/solver.hpp"

namespace hs {
namespace {

// Discrete principal value of the base problem (K + hardy*M, M_base) with
// free ends; +infinity when there is no base weight or the base mass form
// admits no positive direction.
double base_principal(const LogGrid& grid, const WeightProfile* base, int N,
                      double tol, long max_iter) {
    if (!base) return std::numeric_limits<double>::infinity();
    Pencil p = assemble_perturbation(grid, nullptr, *base, 0.0, N);
    try {
        return principal(p, tol, max_iter).lambda;
    } catch (const HsError& e) {
        if (e.kind() == ErrorKind::SolverFailure &&
            std::strstr(e.what(), "no admissible") != nullptr) {
            return std::numeric_limits<double>::infinity();
        }
        throw;
    }
}

SigmaPoint sigma_point_impl(const LogGrid& grid, const WeightProfile* base,
                            const WeightProfile& w, double lambda, int N,
                            double tol, long max_iter, double base_level,
                            const char* label) {
    std::string ctx = label ? std::string(label) : std::string();
    if (!(lambda > 0.0) || !std::isfinite(lambda)) {
        fail_invalid(ctx + "lambda must be finite and > 0");
    }
    if (!(lambda < base_level * (1.0 - 1e-9))) {
        fail_invalid(ctx +
                     "infeasible lambda: must lie strictly below the base "
                     "problem's principal value");
    }
    Pencil p = assemble_perturbation(grid, base, w, lambda, N);
    if (!factor_a(p).ok) {
        fail_invalid(ctx +
                     "infeasible lambda: numerator form is not positive "
                     "definite");
    }
    EigResult r = principal(p, tol, max_iter);
    return {lambda, r.lambda / lambda, true};
}

}  // namespace

SigmaPoint sigma_threshold(const LogGrid& grid, const WeightProfile* base,
                           const WeightProfile& w, double lambda, int N,
                           double tol, long max_iter) {
    double level = base_principal(grid, base, N, tol, max_iter);
    return sigma_point_impl(grid, base, w, lambda, N, tol, max_iter, level,
                            nullptr);
}

std::vector<SigmaPoint> sigma_curve(const LogGrid& grid,
                                    const WeightProfile* base,
                                    const WeightProfile& w,
                                    const std::vector<double>& lambdas, int N,
                                    double tol, long max_iter) {
    if (lambdas.empty()) fail_invalid("lambda grid must be nonempty");
    for (size_t i = 0; i < lambdas.size(); ++i) {
        if (!std::isfinite(lambdas[i]) || !(lambdas[i] > 0.0)) {
            fail_invalid("lambda grid entries must be finite and > 0");
        }
        if (i > 0 && !(lambdas[i] > lambdas[i - 1])) {
            fail_invalid("lambda grid must be strictly ascending");
        }
    }
    double level = base_principal(grid, base, N, tol, max_iter);
    std::vector<SigmaPoint> out;
    out.reserve(lambdas.size());
    for (size_t i = 0; i < lambdas.size(); ++i) {
        std::string label = "lambda_grid[" + std::to_string(i) + "]: ";
        out.push_back(sigma_point_impl(grid, base, w, lambdas[i], N, tol,
                                       max_iter, level, label.c_str()));
    }
    for (size_t i = 1; i < out.size(); ++i) {
        if (!(out[i - 1].sigma > out[i].sigma)) {
            fail_internal("sigma curve is not strictly decreasing");
        }
    }
    return out;
}

ThresholdResult bump_threshold(double a_level, const WeightProfile& bump,
                               int N, const LogGrid& grid, double bracket_tol,
                               double tol, long max_iter) {
    double lam_n = hardy_constant(N);
    if (!(a_level > 0.0) || !std::isfinite(a_level)) {
        fail_invalid("base level must be positive and finite");
    }
    if (!(bracket_tol > 0.0) || !(bracket_tol < 1.0)) {
        fail_invalid("bracket_tol must lie in (0, 1)");
    }
    if (bump.limit_origin() != 0.0 || bump.limit_infinity() != 0.0) {
        fail_invalid(
            "bump weight must have limits (0, 0): compact support in the "
            "log variable");
    }
    double bmin, bmax;
    bump.global_extrema(bmin, bmax);
    if (bmin < 0.0) fail_invalid("bump weight must be nonnegative");
    if (!(bmax > 0.0)) {
        fail_invalid("bump weight must not be identically zero");
    }

    ThresholdResult res;
    res.N = N;
    res.a_level = a_level;
    res.lambda_circ = lam_n / a_level;
    res.gap_tol = 0.02 * res.lambda_circ;
    res.bracket_tol = bracket_tol;

    auto lambda1 = [&](double B) {
        WeightProfile prof = scale_add(bump, B, a_level);
        Pencil p = assemble_sector(grid, prof, N, make_sector(0, N));
        double v = principal(p, tol, max_iter).lambda;
        res.lambda_at[B] = v;
        return v;
    };
    auto crossed = [&](double B) {
        return lambda1(B) < res.lambda_circ - res.gap_tol;
    };

    double b_low = 0.0;
    double b_high = 1.0;
    if (!crossed(1.0)) {
        b_low = 1.0;
        double B = 2.0;
        int doublings = 0;
        while (true) {
            if (doublings >= 60) {
                fail_invalid(
                    "bump threshold search exceeded 60 doublings (bump too "
                    "weak at this grid)");
            }
            ++doublings;
            if (crossed(B)) {
                b_high = B;
                b_low = B / 2.0;
                break;
            }
            b_low = B;
            B *= 2.0;
        }
    }
    for (int it = 0; it < 200; ++it) {
        if (b_low > 0.0 && b_high / b_low <= 1.0 + bracket_tol) break;
        double mid = (b_low > 0.0) ? 0.5 * (b_low + b_high) : 0.5 * b_high;
        if (crossed(mid)) {
            b_high = mid;
        } else {
            b_low = mid;
        }
    }
    res.b_low = b_low;
    res.b_high = b_high;
    res.converged = b_low > 0.0 && b_high / b_low <= 1.0 + bracket_tol;

    double prev = std::numeric_limits<double>::infinity();
    for (const auto& kv : res.lambda_at) {
        if (kv.second > prev + 1e-10) {
            fail_internal(
                "recorded principal values are not nonincreasing in the "
                "bump amplitude");
        }
        prev = kv.second;
    }
    return res;
}

bool strict_gap_check(const WeightProfile& m_base,
                      const WeightProfile& m_pert, double gamma, int N,
                      const LogGrid& grid, int n_cell, double tol,
                      long max_iter) {
    hardy_constant(N);
    if (!(gamma > 1.0) || !std::isfinite(gamma)) {
        fail_invalid("gamma must be finite and > 1");
    }
    if (!m_base.check_periodic(gamma, 1e-9)) {
        fail_invalid("base weight is not gamma-periodic");
    }
    double L = std::log(gamma);
    double anchor = m_base.t_lo();
    auto base_periodic = [&](double t) {
        double tau = std::fmod(t - anchor, L);
        if (tau < 0.0) tau += L;
        return m_base.eval(anchor + tau);
    };

    const int probes = 20001;
    double step = (grid.t_max - grid.t_min) / (probes - 1);
    double excess_min = std::numeric_limits<double>::infinity();
    double sum = 0.0;
    double ends_max = 0.0;
    for (int j = 0; j < probes; ++j) {
        double t = grid.t_min + j * step;
        double e = m_pert.eval(t) - base_periodic(t);
        excess_min = std::min(excess_min, e);
        sum += (j == 0 || j + 1 == probes) ? 0.5 * e : e;
        if (j < 100 || j >= probes - 100) {
            ends_max = std::max(ends_max, std::fabs(e));
        }
    }
    double integral = sum * step;
    if (excess_min < -1e-12) {
        fail_invalid(
            "perturbed weight must dominate the periodic base weight "
            "pointwise");
    }
    if (!(integral > 1e-12)) {
        fail_invalid(
            "perturbation must have positive total excess over the base "
            "weight");
    }
    if (ends_max > 1e-9) {
        fail_invalid(
            "perturbation excess must vanish toward the ends of the grid "
            "range");
    }

    double level = lambda_circ(m_base, gamma, N, n_cell, tol, max_iter)
                       .lambda_circ;
    Pencil p = assemble_sector(grid, m_pert, N, make_sector(0, N));
    double lam1 = principal(p, tol, max_iter).lambda;
    return lam1 < level - 1e-6 * level;
}

}  // namespace hs
