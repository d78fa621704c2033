// hardyspec CLI: batch front end over the C API.  One subcommand per
// invocation; reports are deterministic JSON (CSV for sigma curves).
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hardyspec.h"

namespace {

struct Common {
    std::string weight;
    std::string weight2;
    std::string out;
    std::string format = "json";
    std::string k_list = "16,64,256,1024";
    std::string lambda_grid;
    int dim = 3;
    int n = 6001;
    int lmax = 3;
    int jobs = 1;
    double tmin = -30.0;
    double tmax = 30.0;
    double tol = 1e-10;
    double gamma = 2.0;
    double lambda = 0.0;
    double r = 0.0;
    double d = 0.0;
    double m_peak = 0.0;
    double m0 = 0.0;
    double minf = 0.0;
    bool sharp = false;
};

int status_exit(hs_status st) { return st == HS_ERR_INVALID ? 2 : 3; }

int fail_status(hs_status st) {
    std::cerr << hs_last_error() << "\n";
    return status_exit(st);
}

int write_text(const char* text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return 0;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        std::cerr << "cannot open output file: " << path << "\n";
        return 2;
    }
    f << text;
    f.flush();
    if (!f) {
        std::cerr << "failed writing output file: " << path << "\n";
        return 2;
    }
    return 0;
}

int emit_result(const Common& c, const hs_result* res) {
    const char* text =
        c.format == "csv" ? hs_result_csv(res) : hs_result_json(res);
    if (!text) {
        std::cerr << "no " << c.format << " rendering for this subcommand\n";
        return 2;
    }
    return write_text(text, c.out);
}

int reject_csv(const Common& c) {
    if (c.format == "csv") {
        std::cerr << "csv output is only available for the sigma subcommand\n";
        return 2;
    }
    return 0;
}

int load_weight(const std::string& path, hs_weight** out) {
    hs_status st = hs_weight_from_file(path.c_str(), out);
    if (st != HS_OK) return fail_status(st);
    return 0;
}

hs_run_opts opts_from(const Common& c) {
    hs_run_opts o;
    hs_run_opts_default(&o);
    o.dim = c.dim;
    o.t_min = c.tmin;
    o.t_max = c.tmax;
    o.n = c.n;
    o.l_max = c.lmax;
    o.tol = c.tol;
    o.jobs = c.jobs;
    return o;
}

bool parse_doubles(const std::string& text, std::vector<double>& out) {
    out.clear();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            double v = std::stod(item, &pos);
            if (pos != item.size()) return false;
            out.push_back(v);
        } catch (...) {
            return false;
        }
    }
    return !out.empty();
}

bool parse_longs(const std::string& text, std::vector<long>& out) {
    out.clear();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t pos = 0;
            long v = std::stol(item, &pos);
            if (pos != item.size()) return false;
            out.push_back(v);
        } catch (...) {
            return false;
        }
    }
    return !out.empty();
}

int run_spectral(const Common& c, bool include_psi) {
    if (int rc = reject_csv(c)) return rc;
    hs_weight* w = nullptr;
    if (int rc = load_weight(c.weight, &w)) return rc;
    hs_run_opts o = opts_from(c);
    hs_result* res = nullptr;
    hs_status st =
        include_psi ? hs_eigen(w, &o, &res) : hs_classify(w, &o, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    hs_weight_free(w);
    return rc;
}

int run_oracle(const Common& c) {
    if (int rc = reject_csv(c)) return rc;
    hs_weight* w = nullptr;
    if (int rc = load_weight(c.weight, &w)) return rc;
    hs_run_opts o = opts_from(c);
    hs_result* res = nullptr;
    hs_status st = hs_oracle(w, &o, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    hs_weight_free(w);
    return rc;
}

int run_periodic(const Common& c) {
    if (int rc = reject_csv(c)) return rc;
    hs_weight* w = nullptr;
    if (int rc = load_weight(c.weight, &w)) return rc;
    hs_run_opts o = opts_from(c);
    hs_result* res = nullptr;
    hs_status st = hs_periodic(w, c.gamma, c.n, &o, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    hs_weight_free(w);
    return rc;
}

int run_nullseq(const Common& c) {
    if (int rc = reject_csv(c)) return rc;
    std::vector<long> ks;
    if (!parse_longs(c.k_list, ks)) {
        std::cerr << "invalid --k-list: expected comma-separated integers\n";
        return 2;
    }
    hs_weight* w = nullptr;
    if (int rc = load_weight(c.weight, &w)) return rc;
    hs_run_opts o = opts_from(c);
    hs_result* res = nullptr;
    hs_status st =
        hs_nullseq(w, c.gamma, c.n, ks.data(), ks.size(), &o, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    hs_weight_free(w);
    return rc;
}

int run_sigma(const Common& c, bool has_lambda, bool has_grid_list) {
    if (has_lambda == has_grid_list) {
        std::cerr << "exactly one of --lambda and --lambda-grid is required\n";
        return 2;
    }
    std::vector<double> ls;
    if (has_lambda) {
        ls.push_back(c.lambda);
    } else if (!parse_doubles(c.lambda_grid, ls)) {
        std::cerr << "invalid --lambda-grid: expected comma-separated reals\n";
        return 2;
    }
    hs_weight* base = nullptr;
    if (!c.weight.empty()) {
        if (int rc = load_weight(c.weight, &base)) return rc;
    }
    hs_weight* w = nullptr;
    if (int rc = load_weight(c.weight2, &w)) {
        hs_weight_free(base);
        return rc;
    }
    hs_run_opts o = opts_from(c);
    hs_result* res = nullptr;
    hs_status st = hs_sigma(base, w, ls.data(), ls.size(), &o, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    hs_weight_free(w);
    hs_weight_free(base);
    return rc;
}

int run_threshold(const Common& c) {
    if (int rc = reject_csv(c)) return rc;
    hs_weight* bump = nullptr;
    if (int rc = load_weight(c.weight, &bump)) return rc;
    hs_run_opts o = opts_from(c);
    hs_result* res = nullptr;
    hs_status st = hs_threshold(bump, c.m0, 0.01, &o, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    hs_weight_free(bump);
    return rc;
}

int run_ballbound(const Common& c) {
    if (int rc = reject_csv(c)) return rc;
    hs_result* res = nullptr;
    hs_status st = hs_ballbound(c.dim, c.r, c.d, c.m0, c.minf, c.m_peak,
                                c.sharp ? 1 : 0, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    return rc;
}

int run_decay(const Common& c, bool has_d) {
    if (int rc = reject_csv(c)) return rc;
    hs_weight* w = nullptr;
    if (int rc = load_weight(c.weight, &w)) return rc;
    double r_hi = c.r;
    double r_lo = has_d ? c.d : c.r * std::exp(-7.0);
    hs_run_opts o = opts_from(c);
    hs_result* res = nullptr;
    hs_status st = hs_decay(w, r_lo, r_hi, r_hi, 0.05, &o, &res);
    int rc = st == HS_OK ? emit_result(c, res) : fail_status(st);
    hs_result_free(res);
    hs_weight_free(w);
    return rc;
}

void add_output_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--out", c.out, "output file (default: stdout)");
    cmd->add_option("--format", c.format, "output format (default json)")
        ->check(CLI::IsMember({"json", "csv"}));
}

void add_grid_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--tmin", c.tmin, "log-radial grid lower end (default -30)");
    cmd->add_option("--tmax", c.tmax, "log-radial grid upper end (default 30)");
}

void add_dim_tol_flags(CLI::App* cmd, Common& c) {
    cmd->add_option("--dim", c.dim, "ambient dimension N >= 3 (default 3)");
    cmd->add_option("--tol", c.tol, "eigensolver tolerance (default 1e-10)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "hardyspec: principal eigenvalues, ground states and perturbation "
        "thresholds of the radial Hardy-type quotient on R^N"};
    app.require_subcommand(1);
    int exit_code = 0;

    Common ce;
    auto* eigen = app.add_subcommand(
        "eigen", "sector minimization, classification and eigenfunction");
    eigen->add_option("--weight", ce.weight, "weight profile JSON file")
        ->required();
    add_dim_tol_flags(eigen, ce);
    add_grid_flags(eigen, ce);
    eigen->add_option("--n", ce.n, "grid node count (default 6001)");
    eigen->add_option("--lmax", ce.lmax, "highest angular sector (default 3)");
    eigen->add_option("--jobs", ce.jobs, "sector-solve parallelism (default 1)");
    add_output_flags(eigen, ce);
    eigen->callback([&] { exit_code = run_spectral(ce, true); });

    Common cc;
    auto* classify = app.add_subcommand(
        "classify", "sector minimization and classification summary");
    classify->add_option("--weight", cc.weight, "weight profile JSON file")
        ->required();
    add_dim_tol_flags(classify, cc);
    add_grid_flags(classify, cc);
    classify->add_option("--n", cc.n, "grid node count (default 6001)");
    classify->add_option("--lmax", cc.lmax,
                         "highest angular sector (default 3)");
    classify->add_option("--jobs", cc.jobs,
                         "sector-solve parallelism (default 1)");
    add_output_flags(classify, cc);
    classify->callback([&] { exit_code = run_spectral(cc, false); });

    Common co;
    co.n = 402;
    auto* oracle = app.add_subcommand(
        "oracle", "iterative vs dense principal value on the sector-0 pencil");
    oracle->add_option("--weight", co.weight, "weight profile JSON file")
        ->required();
    add_dim_tol_flags(oracle, co);
    add_grid_flags(oracle, co);
    oracle->add_option("--n", co.n,
                       "grid node count, at most 402 (default 402)");
    add_output_flags(oracle, co);
    oracle->callback([&] { exit_code = run_oracle(co); });

    Common cp;
    cp.n = 256;
    auto* periodic = app.add_subcommand(
        "periodic", "periodic ground state on one cell of a periodic weight");
    periodic->add_option("--weight", cp.weight, "weight profile JSON file")
        ->required();
    add_dim_tol_flags(periodic, cp);
    periodic->add_option("--gamma", cp.gamma,
                         "multiplicative period gamma > 1 (default 2)");
    periodic->add_option("--n", cp.n, "cell node count (default 256)");
    add_output_flags(periodic, cp);
    periodic->callback([&] { exit_code = run_periodic(cp); });

    Common cn;
    cn.n = 256;
    auto* nullseq = app.add_subcommand(
        "nullseq", "null-sequence energies on the periodic ground state");
    nullseq->add_option("--weight", cn.weight, "weight profile JSON file")
        ->required();
    add_dim_tol_flags(nullseq, cn);
    nullseq->add_option("--gamma", cn.gamma,
                        "multiplicative period gamma > 1 (default 2)");
    nullseq->add_option("--n", cn.n, "cell node count (default 256)");
    nullseq->add_option("--k-list", cn.k_list,
                        "cutoff scales (default 16,64,256,1024)");
    add_output_flags(nullseq, cn);
    nullseq->callback([&] { exit_code = run_nullseq(cn); });

    Common cs;
    auto* sigma = app.add_subcommand(
        "sigma", "perturbation scale curve sigma(lambda)");
    sigma->add_option("--weight", cs.weight,
                      "base weight JSON file (optional)");
    sigma->add_option("--weight2", cs.weight2,
                      "perturbation weight JSON file")
        ->required();
    add_dim_tol_flags(sigma, cs);
    add_grid_flags(sigma, cs);
    sigma->add_option("--n", cs.n, "grid node count (default 6001)");
    auto* lopt = sigma->add_option("--lambda", cs.lambda,
                                   "single coupling value");
    auto* gopt = sigma->add_option("--lambda-grid", cs.lambda_grid,
                                   "comma-separated coupling values");
    add_output_flags(sigma, cs);
    sigma->callback([&] {
        exit_code = run_sigma(cs, lopt->count() > 0, gopt->count() > 0);
    });

    Common ct;
    ct.m0 = 1.0;
    auto* threshold = app.add_subcommand(
        "threshold", "critical bump amplitude over a constant level");
    threshold->add_option("--weight", ct.weight, "bump profile JSON file")
        ->required();
    add_dim_tol_flags(threshold, ct);
    add_grid_flags(threshold, ct);
    threshold->add_option("--n", ct.n, "grid node count (default 6001)");
    threshold->add_option("--m0", ct.m0,
                          "constant background level (default 1)");
    add_output_flags(threshold, ct);
    threshold->callback([&] { exit_code = run_threshold(ct); });

    Common cb;
    auto* ballbound = app.add_subcommand(
        "ballbound", "existence bounds for a ball-concentrated weight");
    ballbound->add_option("--dim", cb.dim,
                          "ambient dimension N >= 3 (default 3)");
    ballbound->add_option("--r", cb.r, "ball radius")->required();
    ballbound->add_option("--d", cb.d, "ball distance from the origin")
        ->required();
    ballbound->add_option("--m-peak", cb.m_peak, "peak weight value")
        ->required();
    ballbound->add_option("--m0", cb.m0, "weight limit at the origin");
    ballbound->add_option("--minf", cb.minf, "weight limit at infinity");
    ballbound->add_flag("--sharp", cb.sharp,
                        "also compute the sharp Dirichlet bound");
    add_output_flags(ballbound, cb);
    ballbound->callback([&] { exit_code = run_ballbound(cb); });

    Common cd;
    cd.r = std::exp(-7.0);
    auto* decay = app.add_subcommand(
        "decay", "near-origin decay exponent fit of the minimizer");
    decay->add_option("--weight", cd.weight, "weight profile JSON file")
        ->required();
    add_dim_tol_flags(decay, cd);
    add_grid_flags(decay, cd);
    decay->add_option("--n", cd.n, "grid node count (default 6001)");
    decay->add_option("--lmax", cd.lmax, "highest angular sector (default 3)");
    decay->add_option("--jobs", cd.jobs,
                      "sector-solve parallelism (default 1)");
    decay->add_option("--r", cd.r,
                      "fit window upper radius = band radius (default e^-7)");
    auto* dopt = decay->add_option(
        "--d", cd.d, "fit window lower radius (default r*e^-7)");
    add_output_flags(decay, cd);
    decay->callback(
        [&] { exit_code = run_decay(cd, dopt->count() > 0); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    return exit_code;
}
