#include "hardyspec.h"

#include <cmath>
#include <exception>
#include <string>
#include <utility>
#include <vector>

#include "hardyspec/common.hpp"
#include "hardyspec/grid.hpp"
#include "hardyspec/pencil.hpp"
#include "hardyspec/periodic.hpp"
#include "hardyspec/perturb.hpp"
#include "hardyspec/report.hpp"
#include "hardyspec/solver.hpp"
#include "hardyspec/spectra.hpp"
#include "hardyspec/weight.hpp"

struct hs_weight {
    hs::WeightProfile profile;
};

struct hs_result {
    std::string json;
    std::string csv;
    bool has_csv = false;
};

namespace {

thread_local std::string g_error;

hs_status status_of(hs::ErrorKind kind) {
    switch (kind) {
        case hs::ErrorKind::InvalidInput:
            return HS_ERR_INVALID;
        case hs::ErrorKind::SolverFailure:
            return HS_ERR_SOLVER;
        case hs::ErrorKind::Internal:
            return HS_ERR_INTERNAL;
    }
    return HS_ERR_INTERNAL;
}

template <typename Fn>
hs_status wrap(Fn&& fn) {
    g_error.clear();
    try {
        fn();
        return HS_OK;
    } catch (const hs::HsError& e) {
        g_error = e.what();
        return status_of(e.kind());
    } catch (const std::exception& e) {
        g_error = e.what();
        return HS_ERR_INTERNAL;
    } catch (...) {
        g_error = "unknown failure";
        return HS_ERR_INTERNAL;
    }
}

hs_status null_arg(const char* name) {
    g_error = std::string("null pointer argument: ") + name;
    return HS_ERR_INVALID;
}

hs_run_opts resolve_opts(const hs_run_opts* opts) {
    hs_run_opts o;
    hs_run_opts_default(&o);
    if (opts) o = *opts;
    return o;
}

void check_opts(const hs_run_opts& o) {
    if (!(o.tol > 0.0) || !std::isfinite(o.tol)) {
        hs::fail_invalid("tol must be positive and finite");
    }
    if (o.max_iter < 1) hs::fail_invalid("max_iter must be at least 1");
    if (o.jobs < 1) hs::fail_invalid("jobs must be at least 1");
    if (o.l_max < 0) hs::fail_invalid("l_max must be nonnegative");
    if (!(o.classification_tol >= 0.0) ||
        !std::isfinite(o.classification_tol)) {
        hs::fail_invalid("classification_tol must be nonnegative and finite");
    }
}

hs::Provenance base_provenance(double tol, long max_iter) {
    hs::Provenance p;
    p.version = hs::kLibraryVersion;
    p.tol = tol;
    p.max_iter = max_iter;
    return p;
}

hs::Provenance grid_provenance(const hs_run_opts& o, const hs::LogGrid& g) {
    hs::Provenance p = base_provenance(o.tol, o.max_iter);
    p.has_grid = true;
    p.grid = g;
    return p;
}

hs_result* make_result(const nlohmann::json& j) {
    return new hs_result{hs::dump_json(j), std::string(), false};
}

}  // namespace

extern "C" {

const char* hs_version(void) { return hs::kLibraryVersion; }

const char* hs_last_error(void) { return g_error.c_str(); }

void hs_run_opts_default(hs_run_opts* opts) {
    if (!opts) return;
    opts->dim = 3;
    opts->t_min = -30.0;
    opts->t_max = 30.0;
    opts->n = 6001;
    opts->l_max = 3;
    opts->tol = 1e-10;
    opts->max_iter = 200000;
    opts->jobs = 1;
    opts->classification_tol = 1e-3;
}

/* --- weights ------------------------------------------------------------ */

hs_status hs_weight_from_json(const char* json_text, hs_weight** out) {
    if (out) *out = nullptr;
    if (!json_text) return null_arg("json_text");
    if (!out) return null_arg("out");
    return wrap([&] {
        *out = new hs_weight{hs::weight_from_json_text(json_text)};
    });
}

hs_status hs_weight_from_file(const char* path, hs_weight** out) {
    if (out) *out = nullptr;
    if (!path) return null_arg("path");
    if (!out) return null_arg("out");
    return wrap(
        [&] { *out = new hs_weight{hs::weight_from_json_file(path)}; });
}

void hs_weight_free(hs_weight* w) { delete w; }

hs_status hs_weight_eval(const hs_weight* w, double t, double* out) {
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    return wrap([&] {
        if (!std::isfinite(t)) hs::fail_invalid("evaluation point must be finite");
        *out = w->profile.eval(t);
    });
}

hs_status hs_weight_limits(const hs_weight* w, double* limit_origin,
                           double* limit_infinity) {
    if (!w) return null_arg("w");
    if (!limit_origin) return null_arg("limit_origin");
    if (!limit_infinity) return null_arg("limit_infinity");
    g_error.clear();
    *limit_origin = w->profile.limit_origin();
    *limit_infinity = w->profile.limit_infinity();
    return HS_OK;
}

hs_status hs_weight_sup_norm(const hs_weight* w, double* out) {
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    g_error.clear();
    *out = w->profile.sup_norm();
    return HS_OK;
}

hs_status hs_weight_ball_extrema(const hs_weight* w, double r,
                                 double* m_lower, double* m_upper) {
    if (!w) return null_arg("w");
    if (!m_lower) return null_arg("m_lower");
    if (!m_upper) return null_arg("m_upper");
    return wrap([&] {
        hs::BallExtrema be = w->profile.ball_extrema(r);
        *m_lower = be.m_lower;
        *m_upper = be.m_upper;
    });
}

hs_status hs_weight_check_periodic(const hs_weight* w, double gamma,
                                   double tol, int* out) {
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    return wrap([&] { *out = w->profile.check_periodic(gamma, tol) ? 1 : 0; });
}

/* --- computations -------------------------------------------------------- */

hs_status hs_eigen(const hs_weight* w, const hs_run_opts* opts,
                   hs_result** out) {
    if (out) *out = nullptr;
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        const hs::LogGrid grid = hs::make_grid(o.t_min, o.t_max, o.n);
        hs::LambdaOptions lo{o.l_max, o.tol, o.max_iter, o.classification_tol,
                             o.jobs};
        hs::SpectralReport rep =
            hs::compute_lambda_m(w->profile, o.dim, grid, lo);
        hs::Provenance prov = grid_provenance(o, grid);
        for (const auto& s : rep.sectors) {
            prov.iterations.emplace_back("l" + std::to_string(s.l),
                                         s.iterations);
        }
        *out = make_result(hs::spectral_json(rep, true, prov));
    });
}

hs_status hs_classify(const hs_weight* w, const hs_run_opts* opts,
                      hs_result** out) {
    if (out) *out = nullptr;
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        const hs::LogGrid grid = hs::make_grid(o.t_min, o.t_max, o.n);
        hs::LambdaOptions lo{o.l_max, o.tol, o.max_iter, o.classification_tol,
                             o.jobs};
        hs::SpectralReport rep =
            hs::compute_lambda_m(w->profile, o.dim, grid, lo);
        hs::Provenance prov = grid_provenance(o, grid);
        for (const auto& s : rep.sectors) {
            prov.iterations.emplace_back("l" + std::to_string(s.l),
                                         s.iterations);
        }
        *out = make_result(hs::spectral_json(rep, false, prov));
    });
}

hs_status hs_oracle(const hs_weight* w, const hs_run_opts* opts,
                    hs_result** out) {
    if (out) *out = nullptr;
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        const hs::LogGrid grid = hs::make_grid(o.t_min, o.t_max, o.n);
        if (grid.n - 2 > 400) {
            hs::fail_invalid(
                "oracle cross-check requires an interior dimension of at "
                "most 400 (grid n <= 402)");
        }
        hs::Pencil p = hs::assemble_sector(grid, w->profile, o.dim,
                                           hs::make_sector(0, o.dim));
        hs::EigResult r = hs::principal(p, o.tol, o.max_iter);
        double oracle = hs::dense_oracle(p);
        hs::Provenance prov = grid_provenance(o, grid);
        prov.iterations.emplace_back("l0", r.iterations);
        *out = make_result(hs::oracle_json(o.dim, r.lambda, oracle, prov));
    });
}

hs_status hs_periodic(const hs_weight* w, double gamma, int n_cell,
                      const hs_run_opts* opts, hs_result** out) {
    if (out) *out = nullptr;
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        hs::PeriodicState state = hs::lambda_circ(w->profile, gamma, o.dim,
                                                  n_cell, o.tol, o.max_iter);
        hs::Provenance prov = base_provenance(o.tol, o.max_iter);
        prov.iterations.emplace_back("cell", state.iterations);
        *out = make_result(hs::periodic_json(state, prov));
    });
}

hs_status hs_nullseq(const hs_weight* w, double gamma, int n_cell,
                     const long* k_list, size_t k_count,
                     const hs_run_opts* opts, hs_result** out) {
    if (out) *out = nullptr;
    if (!w) return null_arg("w");
    if (!k_list && k_count > 0) return null_arg("k_list");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        hs::PeriodicState state = hs::lambda_circ(w->profile, gamma, o.dim,
                                                  n_cell, o.tol, o.max_iter);
        std::vector<long> ks(k_list, k_list + k_count);
        auto pts = hs::null_energy_decay(state, ks);
        hs::Provenance prov = base_provenance(o.tol, o.max_iter);
        prov.iterations.emplace_back("cell", state.iterations);
        *out = make_result(hs::nullseq_json(state, pts, prov));
    });
}

hs_status hs_sigma(const hs_weight* base, const hs_weight* w,
                   const double* lambdas, size_t count,
                   const hs_run_opts* opts, hs_result** out) {
    if (out) *out = nullptr;
    if (!w) return null_arg("w");
    if (!lambdas && count > 0) return null_arg("lambdas");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        const hs::LogGrid grid = hs::make_grid(o.t_min, o.t_max, o.n);
        std::vector<double> ls(lambdas, lambdas + count);
        auto pts = hs::sigma_curve(grid, base ? &base->profile : nullptr,
                                   w->profile, ls, o.dim, o.tol, o.max_iter);
        hs::Provenance prov = grid_provenance(o, grid);
        nlohmann::json j = hs::sigma_json(pts, o.dim, prov);
        *out = new hs_result{hs::dump_json(j), hs::sigma_csv(pts), true};
    });
}

hs_status hs_threshold(const hs_weight* bump, double a_level,
                       double bracket_tol, const hs_run_opts* opts,
                       hs_result** out) {
    if (out) *out = nullptr;
    if (!bump) return null_arg("bump");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        const hs::LogGrid grid = hs::make_grid(o.t_min, o.t_max, o.n);
        hs::ThresholdResult res =
            hs::bump_threshold(a_level, bump->profile, o.dim, grid,
                               bracket_tol, o.tol, o.max_iter);
        hs::Provenance prov = grid_provenance(o, grid);
        prov.iterations.emplace_back("evaluations",
                                     static_cast<int>(res.lambda_at.size()));
        *out = make_result(hs::threshold_json(res, prov));
    });
}

hs_status hs_ballbound(int dim, double r, double d, double m_origin,
                       double m_infinity, double m_peak, int use_sharp,
                       hs_result** out) {
    if (out) *out = nullptr;
    if (!out) return null_arg("out");
    return wrap([&] {
        hs::BallBoundReport rep = hs::ball_bound(dim, r, d, m_origin,
                                                 m_infinity, m_peak,
                                                 use_sharp != 0);
        hs::Provenance prov =
            base_provenance(use_sharp ? 1e-11 : 0.0, use_sharp ? 200000 : 0);
        *out = make_result(hs::ballbound_json(rep, prov));
    });
}

hs_status hs_decay(const hs_weight* w, double r_lo, double r_hi,
                   double band_r, double band_margin,
                   const hs_run_opts* opts, hs_result** out) {
    if (out) *out = nullptr;
    if (!w) return null_arg("w");
    if (!out) return null_arg("out");
    return wrap([&] {
        const hs_run_opts o = resolve_opts(opts);
        check_opts(o);
        const hs::LogGrid grid = hs::make_grid(o.t_min, o.t_max, o.n);
        hs::LambdaOptions lo{o.l_max, o.tol, o.max_iter, o.classification_tol,
                             o.jobs};
        hs::SpectralReport rep =
            hs::compute_lambda_m(w->profile, o.dim, grid, lo);
        hs::DecayFit fit =
            hs::decay_fit(rep, r_lo, r_hi, band_r, band_margin);
        hs::Provenance prov = grid_provenance(o, grid);
        for (const auto& s : rep.sectors) {
            prov.iterations.emplace_back("l" + std::to_string(s.l),
                                         s.iterations);
        }
        *out = make_result(hs::decay_json(fit, o.dim, prov));
    });
}

/* --- results -------------------------------------------------------------- */

const char* hs_result_json(const hs_result* r) {
    return r ? r->json.c_str() : nullptr;
}

const char* hs_result_csv(const hs_result* r) {
    return (r && r->has_csv) ? r->csv.c_str() : nullptr;
}

void hs_result_free(hs_result* r) { delete r; }

}  // extern "C"
