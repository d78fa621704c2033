#include "hardyspec/spectra.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>
#include <vector>

#include "hardyspec/common.hpp"
#include "hardyspec/pencil.hpp"

namespace hs {

const char* classification_name(Classification c) {
    switch (c) {
        case Classification::MinimizerExists:
            return "MinimizerExists";
        case Classification::HardySaturated:
            return "HardySaturated";
        case Classification::Inconclusive:
            return "Inconclusive";
    }
    return "Inconclusive";
}

namespace {

double limit_level(double lim, double lam_n) {
    return lim > 0.0 ? lam_n / lim : std::numeric_limits<double>::infinity();
}

}  // namespace

SpectralReport compute_lambda_m(const WeightProfile& m, int N,
                                const LogGrid& grid,
                                const LambdaOptions& opts) {
    double lam_n = hardy_constant(N);
    if (grid.n < 4) fail_invalid("grid must have at least 4 nodes");
    if (opts.l_max < 0) fail_invalid("l_max must be >= 0");
    if (opts.jobs < 1) fail_invalid("jobs must be >= 1");
    if (!(opts.classification_tol > 0.0) ||
        !(opts.classification_tol < 1.0)) {
        fail_invalid("classification_tol must lie in (0, 1)");
    }

    int l_top = opts.l_max;
    std::vector<EigResult> results(l_top + 1);
    std::vector<std::exception_ptr> errs(l_top + 1);
    auto solve_one = [&](int l) {
        try {
            Pencil p = assemble_sector(grid, m, N, make_sector(l, N));
            results[l] = principal(p, opts.tol, opts.max_iter);
        } catch (...) {
            errs[l] = std::current_exception();
        }
    };
    int workers = std::min(opts.jobs, l_top + 1);
    if (workers <= 1) {
        for (int l = 0; l <= l_top; ++l) solve_one(l);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int t = 0; t < workers; ++t) {
            pool.emplace_back([&] {
                int l;
                while ((l = next.fetch_add(1)) <= l_top) solve_one(l);
            });
        }
        for (auto& th : pool) th.join();
    }
    for (int l = 0; l <= l_top; ++l) {
        if (errs[l]) std::rethrow_exception(errs[l]);
    }

    SpectralReport rep;
    rep.N = N;
    rep.grid = grid;
    rep.classification_tol = opts.classification_tol;
    rep.tol = opts.tol;
    rep.profile = &m;
    rep.sectors.resize(l_top + 1);
    int win = 0;
    for (int l = 0; l <= l_top; ++l) {
        rep.sectors[l] = {l, results[l].lambda, results[l].residual,
                          results[l].iterations};
        if (results[l].lambda < results[win].lambda) win = l;
    }
    rep.winning_l = win;
    rep.lambda_m = results[win].lambda;

    double g_min, g_max;
    m.global_extrema(g_min, g_max);
    if (g_min >= 0.0) {
        for (int l = 0; l + 1 <= l_top; ++l) {
            double slack = 1e-10 * (1.0 + std::fabs(results[l].lambda));
            if (results[l + 1].lambda < results[l].lambda - slack) {
                fail_internal(
                    "sector values are not nondecreasing for a nonnegative "
                    "weight");
            }
        }
        if (win != 0) {
            fail_internal(
                "minimum over sectors did not occur in sector 0 for a "
                "nonnegative weight");
        }
    }

    rep.lambda_plus = limit_level(m.limit_infinity(), lam_n);
    rep.lambda_minus = limit_level(m.limit_origin(), lam_n);
    rep.lambda_star = std::min(rep.lambda_plus, rep.lambda_minus);
    rep.gap = rep.lambda_star - rep.lambda_m;

    if (!std::isfinite(rep.lambda_star)) {
        rep.classification = Classification::MinimizerExists;
    } else if (rep.gap > opts.classification_tol * rep.lambda_star) {
        rep.classification = Classification::MinimizerExists;
    } else {
        bool from_origin = m.limit_origin() > 0.0;
        bool from_infinity = m.limit_infinity() > 0.0;
        for (int i = 0; i < grid.n && (from_origin || from_infinity); ++i) {
            double wv = m.eval(grid.node(i));
            if (wv > m.limit_origin() + 1e-12) from_origin = false;
            if (wv > m.limit_infinity() + 1e-12) from_infinity = false;
        }
        rep.classification = (from_origin || from_infinity)
                                 ? Classification::HardySaturated
                                 : Classification::Inconclusive;
    }

    rep.psi.assign(grid.n, 0.0);
    const std::vector<double>& v = results[win].vector;
    for (int i = 0; i < static_cast<int>(v.size()); ++i) rep.psi[i + 1] = v[i];
    return rep;
}

LimitBoundCheck check_limit_bound(const WeightProfile& m, int N,
                                  const LogGrid& grid) {
    LambdaOptions opts;
    SpectralReport rep = compute_lambda_m(m, N, grid, opts);
    double bound = std::min(rep.lambda_plus, rep.lambda_minus);
    double slack = 1e-8 * (1.0 + std::fabs(rep.lambda_m));
    bool holds = rep.lambda_m <= bound + slack;

    if (!holds) {
        // Discrete certificate: restrict to the constant plateau at either
        // end, where the weight equals its limit exactly; the restricted
        // principal value is a provable upper bound for lambda_m.
        double cert = std::numeric_limits<double>::infinity();
        double lim0 = m.limit_origin();
        if (lim0 > 0.0) {
            int j = -1;
            for (int i = 0; i < grid.n; ++i) {
                if (grid.node(i) < m.t_lo()) {
                    j = i;
                } else {
                    break;
                }
            }
            if (j >= 3) {
                LogGrid sub{grid.t_min, grid.node(j), j + 1};
                Pencil p = assemble_sector(sub, constant_profile(lim0), N,
                                           make_sector(0, N));
                cert = std::min(cert, principal(p, 1e-10, 200000).lambda);
            }
        }
        double limi = m.limit_infinity();
        if (limi > 0.0) {
            int j = grid.n;
            for (int i = grid.n - 1; i >= 0; --i) {
                if (grid.node(i) > m.t_hi()) {
                    j = i;
                } else {
                    break;
                }
            }
            if (grid.n - j >= 4) {
                LogGrid sub{grid.node(j), grid.t_max, grid.n - j};
                Pencil p = assemble_sector(sub, constant_profile(limi), N,
                                           make_sector(0, N));
                cert = std::min(cert, principal(p, 1e-10, 200000).lambda);
            }
        }
        holds = rep.lambda_m <= cert + slack;
    }
    return {rep.lambda_m, rep.lambda_plus, rep.lambda_minus, holds};
}

DecayFit decay_fit(const SpectralReport& rep, double r_lo, double r_hi,
                   double band_r, double band_margin) {
    if (rep.classification != Classification::MinimizerExists) {
        fail_invalid(
            "decay fit requires classification MinimizerExists (no "
            "minimizer to fit otherwise)");
    }
    if (!(r_lo > 0.0) || !(r_hi > r_lo) || !std::isfinite(r_hi)) {
        fail_invalid("fit window must satisfy 0 < r_lo < r_hi");
    }
    if (!(band_r > 0.0) || !std::isfinite(band_r)) {
        fail_invalid("band radius must be positive and finite");
    }
    if (!(r_hi <= band_r)) {
        fail_invalid("fit window must lie inside the band ball (r_hi <= "
                     "band_r)");
    }
    if (!(band_margin >= 0.0)) fail_invalid("band margin must be >= 0");
    if (!rep.profile) {
        fail_internal("spectral report does not retain its weight profile");
    }
    double lam_n = hardy_constant(rep.N);
    double t_lo = std::log(r_lo);
    double t_hi = std::log(r_hi);
    if (t_lo < rep.grid.t_min || t_hi > rep.grid.t_max) {
        fail_invalid("fit window must lie inside the grid range");
    }

    std::vector<double> xs, ys;
    for (int i = 0; i < rep.grid.n; ++i) {
        double t = rep.grid.node(i);
        if (t < t_lo || t > t_hi) continue;
        double psi = rep.psi[i];
        if (!(psi > 0.0)) {
            fail_solver("eigenfunction is not positive on the fit window");
        }
        xs.push_back(t);
        ys.push_back(0.5 * (rep.N - 2) * t - std::log(psi));
    }
    if (xs.size() < 8) {
        fail_invalid("fit window contains fewer than 8 grid nodes");
    }
    double xm = 0.0, ym = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        xm += xs[i];
        ym += ys[i];
    }
    xm /= xs.size();
    ym /= ys.size();
    double sxx = 0.0, sxy = 0.0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sxx += (xs[i] - xm) * (xs[i] - xm);
        sxy += (xs[i] - xm) * (ys[i] - ym);
    }
    double fitted = sxy / sxx;

    BallExtrema ex = rep.profile->ball_extrema(band_r);
    auto s_of = [&](double mv) {
        double disc = lam_n - rep.lambda_m * mv;
        if (disc < -1e-12 * lam_n) {
            fail_invalid(
                "band radius too large: lambda_m times the ball maximum of "
                "the weight exceeds the Hardy constant");
        }
        if (disc < 0.0) disc = 0.0;
        return std::sqrt(lam_n) - std::sqrt(disc);
    };
    DecayFit out;
    out.r_lo = r_lo;
    out.r_hi = r_hi;
    out.fitted_s = fitted;
    out.s_upper = s_of(ex.m_upper);
    out.s_lower = std::max(0.0, s_of(ex.m_lower));
    out.band_margin = band_margin;
    out.band_r = band_r;
    out.lambda_m = rep.lambda_m;
    out.pass = fitted >= out.s_lower - band_margin &&
               fitted <= out.s_upper + band_margin;
    return out;
}

BallBoundReport ball_bound(int N, double r, double d, double m_origin,
                           double m_infinity, double m_peak, bool use_sharp) {
    hardy_constant(N);  // validates N >= 3
    if (!(r > 0.0) || !std::isfinite(r)) {
        fail_invalid("ball radius r must be positive and finite");
    }
    if (!std::isfinite(d) || !(d > r)) {
        fail_invalid(
            "the ball must stay away from the origin: require d > r");
    }
    if (!(m_peak > 0.0) || !std::isfinite(m_peak)) {
        fail_invalid("m_peak must be positive and finite");
    }
    if (!std::isfinite(m_origin) || !std::isfinite(m_infinity)) {
        fail_invalid("m_origin and m_infinity must be finite");
    }

    BallBoundReport rep;
    rep.N = N;
    rep.r = r;
    rep.d = d;
    rep.m_origin = m_origin;
    rep.m_infinity = m_infinity;
    rep.m_peak = m_peak;
    rep.use_sharp = use_sharp;

    double rp = r + d;
    rep.criterion_rhs = (r * r * (N - 2.0) * (N - 2.0)) /
                        (2.0 * rp * rp * (N + 1.0) * (N + 2.0));
    rep.criterion_holds = (m_origin / m_peak < rep.criterion_rhs) &&
                          (m_infinity / m_peak < rep.criterion_rhs);
    rep.apriori_bound =
        ((N + 1.0) * (N + 2.0) * rp * rp) / (2.0 * r * r * m_peak);
    if (use_sharp) {
        double lam1 = ball_dirichlet_lambda1(N, 2001);
        rep.sharp_bound = (lam1 * rp * rp) / (r * r * m_peak);
    } else {
        rep.sharp_bound = rep.apriori_bound;
    }
    return rep;
}

double ball_dirichlet_lambda1(int N, int n) {
    hardy_constant(N);  // validates N >= 3
    if (n < 100) fail_invalid("ball grid must have at least 100 nodes");

    double h = 1.0 / (n - 1);
    auto ipow = [](double x, int k) {
        double v = 1.0;
        for (int i = 0; i < k; ++i) v *= x;
        return v;
    };
    // Exact moment integrals S_p = int_a^b r^p dr on each element.
    std::vector<double> kd(n, 0.0), ke(n - 1, 0.0);
    std::vector<double> bd(n, 0.0), be(n - 1, 0.0);
    for (int i = 0; i + 1 < n; ++i) {
        double a = i * h;
        double b = (i + 1) * h;
        double s0 = (ipow(b, N) - ipow(a, N)) / N;              // r^{N-1}
        double s1 = (ipow(b, N + 1) - ipow(a, N + 1)) / (N + 1.0);
        double s2 = (ipow(b, N + 2) - ipow(a, N + 2)) / (N + 2.0);
        double inv_h2 = 1.0 / (h * h);
        kd[i] += s0 * inv_h2;
        kd[i + 1] += s0 * inv_h2;
        ke[i] += -s0 * inv_h2;
        // Mass with hat products: phi_i = (b-r)/h, phi_{i+1} = (r-a)/h.
        bd[i] += (b * b * s0 - 2.0 * b * s1 + s2) * inv_h2;
        bd[i + 1] += (s2 - 2.0 * a * s1 + a * a * s0) * inv_h2;
        be[i] += (-a * b * s0 + (a + b) * s1 - s2) * inv_h2;
    }
    // Natural at r = 0 (node 0 kept), Dirichlet at r = 1 (last node
    // dropped).
    int dim = n - 1;
    Pencil p;
    p.topology = Topology::Line;
    p.dimension = dim;
    p.a_diag.assign(kd.begin(), kd.begin() + dim);
    p.b_diag.assign(bd.begin(), bd.begin() + dim);
    p.a_off.assign(ke.begin(), ke.begin() + (dim - 1));
    p.b_off.assign(be.begin(), be.begin() + (dim - 1));
    return principal(p, 1e-11, 200000).lambda;
}

}  // namespace hs
