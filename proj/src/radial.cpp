#include "hardyspec/radial.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "hardyspec/common.hpp"
#include "hardyspec/pencil.hpp"

namespace hs {

double RadialFunction::eval(double r) const {
    if (N < 3) fail_invalid("dimension must be >= 3");
    if (!(r > 0.0) || !std::isfinite(r)) {
        fail_invalid("radius must be positive and finite");
    }
    double t = std::log(r);
    return std::exp(0.5 * (2 - N) * t) * log_profile(t);
}

RadialFunction to_physical(const LogGrid& grid, std::vector<double> psi,
                           int N) {
    if (N < 3) fail_invalid("dimension must be >= 3");
    if (static_cast<int>(psi.size()) != grid.n) {
        fail_invalid("psi length must equal the grid node count");
    }
    for (double v : psi) {
        if (!std::isfinite(v)) fail_invalid("psi values must be finite");
    }
    LogGrid g = grid;
    auto prof = [g, values = std::move(psi)](double t) -> double {
        if (t < g.t_min || t > g.t_max) return 0.0;
        double s = (t - g.t_min) / g.h();
        int idx = static_cast<int>(s);
        if (idx > g.n - 2) idx = g.n - 2;
        double f = s - idx;
        return values[idx] * (1.0 - f) + values[idx + 1] * f;
    };
    return RadialFunction{N, prof};
}

std::pair<double, double> physical_energy(const LogGrid& grid,
                                          const std::vector<double>& psi,
                                          int N) {
    double lam_n = hardy_constant(N);
    if (static_cast<int>(psi.size()) != grid.n) {
        fail_invalid("psi length must equal the grid node count");
    }
    for (double v : psi) {
        if (!std::isfinite(v)) fail_invalid("psi values must be finite");
    }
    if (psi.front() != 0.0 || psi.back() != 0.0) {
        fail_invalid("psi must vanish at both grid ends");
    }
    double w_n = sphere_measure(N);
    int n = grid.n;
    double h = grid.h();
    double inv_h = 1.0 / h;

    std::vector<double> kd(n, 0.0), ke(n - 1, 0.0);
    std::vector<double> md(n, 0.0), me(n - 1, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        accumulate_element_stiffness(kd[i], kd[i + 1], ke[i], inv_h);
        accumulate_element_mass(md[i], md[i + 1], me[i], h, 1.0, 1.0);
    }
    double quad = 0.0;
    for (int i = 0; i < n; ++i) {
        quad += (kd[i] + lam_n * md[i]) * psi[i] * psi[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        quad += 2.0 * (ke[i] + lam_n * me[i]) * psi[i] * psi[i + 1];
    }
    double transformed = w_n * quad;

    // Gradient energy: secant slopes of u(r) on a 10x refined t-sampling,
    // each squared slope weighted by r^{N-1} at the interval midpoint.
    RadialFunction u = to_physical(grid, psi, N);
    const int refine = 10;
    long steps = static_cast<long>(n - 1) * refine;
    double sub = h / refine;
    double grad = 0.0;
    double t_prev = grid.t_min;
    double r_prev = std::exp(t_prev);
    double u_prev = std::exp(0.5 * (2 - N) * t_prev) * u.log_profile(t_prev);
    for (long j = 1; j <= steps; ++j) {
        double t = grid.t_min + j * sub;
        double r = std::exp(t);
        double uv = std::exp(0.5 * (2 - N) * t) * u.log_profile(t);
        double dr = r - r_prev;
        double g = (uv - u_prev) / dr;
        double t_mid = 0.5 * (t_prev + t);
        double rp = std::exp(0.5 * (N - 1) * t_mid);
        grad += (g * rp) * (g * rp) * dr;
        t_prev = t;
        r_prev = r;
        u_prev = uv;
    }
    grad *= w_n;
    return {grad, transformed};
}

double null_sequence_energy(const RadialFunction& v, long k, double t_lo,
                            double t_hi) {
    if (k < 1) fail_invalid("cutoff scale k must be a positive integer");
    if (!std::isfinite(t_lo) || !std::isfinite(t_hi) || !(t_lo < 0.0) ||
        !(t_hi > 0.0)) {
        fail_invalid(
            "quadrature range must contain r = 1 (need t_lo < 0 < t_hi)");
    }
    double w_n = sphere_measure(v.N);
    double kd = static_cast<double>(k);
    auto w2 = [&](double t) {
        double w = v.log_profile(t);
        return w * w;
    };

    // One side: integral of w(t)^2 e^{-2|t|/k} for |t| in [0, len].
    auto side = [&](double len, double sgn) {
        long npts = std::max<long>(
            50001, static_cast<long>(std::ceil(len / 0.005)) + 1);
        double step = len / (npts - 1);
        double sum = 0.0;
        for (long j = 0; j < npts; ++j) {
            double a = j * step;
            double f = w2(sgn * a) * std::exp(-2.0 * a / kd);
            sum += (j == 0 || j + 1 == npts) ? 0.5 * f : f;
        }
        return sum * step;
    };
    double len_lo = -t_lo;
    double len_hi = t_hi;
    double i_lo = side(len_lo, -1.0);
    double i_hi = side(len_hi, +1.0);
    // Closed-form tails assuming w^2 frozen at its end value.
    double tail_lo = w2(t_lo) * (kd / 2.0) * std::exp(-2.0 * len_lo / kd);
    double tail_hi = w2(t_hi) * (kd / 2.0) * std::exp(-2.0 * len_hi / kd);
    double total = i_lo + i_hi + tail_lo + tail_hi;

    // Truncation certificate: the freeze error is bounded by the spread of
    // w^2 over the outermost 10% of each side times the full tail mass.
    auto spread = [&](double len, double sgn) {
        double mn = std::numeric_limits<double>::infinity();
        double mx = -mn;
        const int probes = 1000;
        for (int j = 0; j <= probes; ++j) {
            double a = len * (0.9 + 0.1 * j / probes);
            double val = w2(sgn * a);
            mn = std::min(mn, val);
            mx = std::max(mx, val);
        }
        return (mx - mn) * (kd / 2.0) * std::exp(-2.0 * 0.9 * len / kd);
    };
    double uncertainty = spread(len_lo, -1.0) + spread(len_hi, +1.0);
    if (uncertainty > 1e-3 * total) {
        fail_invalid(
            "quadrature range too short: cutoff tail cannot be certified "
            "below 0.1% of the total energy");
    }
    return w_n * total / (kd * kd);
}

}  // namespace hs
