#include "hardyspec/pencil.hpp"

#include <cmath>

#include "hardyspec/common.hpp"

namespace hs {
namespace {

void tri_mul(const std::vector<double>& diag, const std::vector<double>& off,
             double corner, Topology topo, int d, const double* x,
             double* y) {
    for (int i = 0; i < d; ++i) y[i] = diag[i] * x[i];
    for (int i = 0; i + 1 < d; ++i) {
        y[i] += off[i] * x[i + 1];
        y[i + 1] += off[i] * x[i];
    }
    if (topo == Topology::Cycle && d > 1) {
        y[0] += corner * x[d - 1];
        y[d - 1] += corner * x[0];
    }
}

}  // namespace

void Pencil::mul_a(const double* x, double* y) const {
    tri_mul(a_diag, a_off, a_corner, topology, dimension, x, y);
}

void Pencil::mul_b(const double* x, double* y) const {
    tri_mul(b_diag, b_off, b_corner, topology, dimension, x, y);
}

SectorIndex make_sector(int l, int N) {
    if (N < 3) fail_invalid("dimension must be >= 3");
    if (l < 0) fail_invalid("sector index must be >= 0");
    double ld = static_cast<double>(l);
    return SectorIndex{l, ld * (ld + (N - 2))};
}

void accumulate_element_mass(double& di, double& dj, double& off, double h,
                             double wi, double wj) {
    di += h * (wi / 4.0 + wj / 12.0);
    dj += h * (wi / 12.0 + wj / 4.0);
    off += h * (wi + wj) / 12.0;
}

void accumulate_element_stiffness(double& di, double& dj, double& off,
                                  double inv_h) {
    di += inv_h;
    dj += inv_h;
    off += -inv_h;
}

Pencil assemble_sector(const LogGrid& grid, const WeightProfile& m, int N,
                       SectorIndex sector) {
    double lam_n = hardy_constant(N);
    if (grid.n < 4) fail_invalid("grid must have at least 4 nodes");
    if (sector.l < 0) fail_invalid("sector index must be >= 0");
    int n = grid.n;
    double h = grid.h();
    if (!(h > 0.0) || !std::isfinite(h)) {
        fail_invalid("grid range must satisfy t_min < t_max with both finite");
    }
    double inv_h = 1.0 / h;

    std::vector<double> kd(n, 0.0), ke(n - 1, 0.0);
    std::vector<double> md(n, 0.0), me(n - 1, 0.0);
    std::vector<double> bd(n, 0.0), be(n - 1, 0.0);
    std::vector<double> w(n);
    for (int i = 0; i < n; ++i) w[i] = m.eval(grid.node(i));
    for (int i = 0; i + 1 < n; ++i) {
        accumulate_element_stiffness(kd[i], kd[i + 1], ke[i], inv_h);
        accumulate_element_mass(md[i], md[i + 1], me[i], h, 1.0, 1.0);
        accumulate_element_mass(bd[i], bd[i + 1], be[i], h, w[i], w[i + 1]);
    }

    int d = n - 2;
    Pencil p;
    p.topology = Topology::Line;
    p.dimension = d;
    p.a_diag.resize(d);
    p.b_diag.resize(d);
    p.a_off.resize(d - 1);
    p.b_off.resize(d - 1);
    double shift = sector.shift;
    for (int i = 0; i < d; ++i) {
        double base = kd[i + 1] + lam_n * md[i + 1];
        p.a_diag[i] = base + shift * md[i + 1];
        p.b_diag[i] = bd[i + 1];
    }
    for (int i = 0; i + 1 < d; ++i) {
        double base = ke[i + 1] + lam_n * me[i + 1];
        p.a_off[i] = base + shift * me[i + 1];
        p.b_off[i] = be[i + 1];
    }

    if (!factor_a(p).ok) {
        fail_internal("sector pencil numerator is not positive definite");
    }
    return p;
}

Pencil assemble_periodic(const WeightProfile& m, double gamma, int N, int n) {
    double lam_n = hardy_constant(N);
    if (!(gamma > 1.0) || !std::isfinite(gamma)) {
        fail_invalid("gamma must be finite and > 1");
    }
    if (n < 3) fail_invalid("periodic cell must have at least 3 nodes");
    if (!m.check_periodic(gamma, 1e-9)) {
        fail_invalid(
            "weight is not log-periodic with the requested gamma "
            "(tolerance 1e-9)");
    }
    double L = std::log(gamma);
    double h = L / n;
    double inv_h = 1.0 / h;

    std::vector<double> w(n);
    bool has_positive = false;
    for (int i = 0; i < n; ++i) {
        w[i] = m.eval(i * h);
        if (w[i] < 0.0) {
            fail_invalid("periodic weight must be nonnegative on the cell");
        }
        if (w[i] > 0.0) has_positive = true;
    }
    if (!has_positive) {
        fail_invalid("periodic weight must have positive mass on the cell");
    }

    std::vector<double> kd(n, 0.0), ke(n - 1, 0.0);
    std::vector<double> md(n, 0.0), me(n - 1, 0.0);
    std::vector<double> bd(n, 0.0), be(n - 1, 0.0);
    double kc = 0.0, mc = 0.0, bc = 0.0;
    for (int i = 0; i + 1 < n; ++i) {
        accumulate_element_stiffness(kd[i], kd[i + 1], ke[i], inv_h);
        accumulate_element_mass(md[i], md[i + 1], me[i], h, 1.0, 1.0);
        accumulate_element_mass(bd[i], bd[i + 1], be[i], h, w[i], w[i + 1]);
    }
    // Wrap element from the last node back to node 0 (t = L).
    accumulate_element_stiffness(kd[n - 1], kd[0], kc, inv_h);
    accumulate_element_mass(md[n - 1], md[0], mc, h, 1.0, 1.0);
    accumulate_element_mass(bd[n - 1], bd[0], bc, h, w[n - 1], w[0]);

    Pencil p;
    p.topology = Topology::Cycle;
    p.dimension = n;
    p.a_diag.resize(n);
    p.b_diag.resize(n);
    p.a_off.resize(n - 1);
    p.b_off.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        p.a_diag[i] = kd[i] + lam_n * md[i];
        p.b_diag[i] = bd[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        p.a_off[i] = ke[i] + lam_n * me[i];
        p.b_off[i] = be[i];
    }
    p.a_corner = kc + lam_n * mc;
    p.b_corner = bc;

    if (!factor_a(p).ok) {
        fail_internal("periodic pencil numerator is not positive definite");
    }
    return p;
}

Pencil assemble_perturbation(const LogGrid& grid, const WeightProfile* base,
                             const WeightProfile& w, double lambda, int N) {
    double lam_n = hardy_constant(N);
    if (grid.n < 4) fail_invalid("grid must have at least 4 nodes");
    if (!(lambda >= 0.0) || !std::isfinite(lambda)) {
        fail_invalid("lambda must be finite and >= 0");
    }
    int n = grid.n;
    double h = grid.h();
    double inv_h = 1.0 / h;

    std::vector<double> kd(n, 0.0), ke(n - 1, 0.0);
    std::vector<double> md(n, 0.0), me(n - 1, 0.0);
    std::vector<double> bd(n, 0.0), be(n - 1, 0.0);
    std::vector<double> cd(n, 0.0), ce(n - 1, 0.0);
    std::vector<double> wv(n), bv(n, 0.0);
    for (int i = 0; i < n; ++i) {
        wv[i] = w.eval(grid.node(i));
        if (base) bv[i] = base->eval(grid.node(i));
    }
    for (int i = 0; i + 1 < n; ++i) {
        accumulate_element_stiffness(kd[i], kd[i + 1], ke[i], inv_h);
        accumulate_element_mass(md[i], md[i + 1], me[i], h, 1.0, 1.0);
        accumulate_element_mass(bd[i], bd[i + 1], be[i], h, wv[i], wv[i + 1]);
        if (base) {
            accumulate_element_mass(cd[i], cd[i + 1], ce[i], h, bv[i],
                                    bv[i + 1]);
        }
    }

    Pencil p;
    p.topology = Topology::Line;
    p.dimension = n;
    p.a_diag.resize(n);
    p.b_diag.resize(n);
    p.a_off.resize(n - 1);
    p.b_off.resize(n - 1);
    for (int i = 0; i < n; ++i) {
        double a0 = kd[i] + lam_n * md[i];
        p.a_diag[i] = base ? a0 - lambda * cd[i] : a0;
        p.b_diag[i] = bd[i];
    }
    for (int i = 0; i + 1 < n; ++i) {
        double a0 = ke[i] + lam_n * me[i];
        p.a_off[i] = base ? a0 - lambda * ce[i] : a0;
        p.b_off[i] = be[i];
    }
    return p;
}

TriFactor tridiag_ldlt(const std::vector<double>& diag,
                       const std::vector<double>& off) {
    int d = static_cast<int>(diag.size());
    TriFactor f;
    f.d.assign(d, 0.0);
    f.l.assign(d > 0 ? d - 1 : 0, 0.0);
    f.ok = false;
    if (d == 0) return f;
    f.d[0] = diag[0];
    for (int i = 1; i < d; ++i) {
        if (!(f.d[i - 1] > 0.0)) return f;
        f.l[i - 1] = off[i - 1] / f.d[i - 1];
        f.d[i] = diag[i] - off[i - 1] * f.l[i - 1];
    }
    if (!(f.d[d - 1] > 0.0)) return f;
    f.ok = true;
    return f;
}

void tridiag_solve(const TriFactor& f, const double* r, double* x) {
    int d = static_cast<int>(f.d.size());
    if (d == 0) return;
    x[0] = r[0];
    for (int i = 1; i < d; ++i) x[i] = r[i] - f.l[i - 1] * x[i - 1];
    for (int i = 0; i < d; ++i) x[i] /= f.d[i];
    for (int i = d - 2; i >= 0; --i) x[i] -= f.l[i] * x[i + 1];
}

PencilFactor factor_a(const Pencil& p) {
    PencilFactor f;
    f.topology = p.topology;
    f.dimension = p.dimension;
    int d = p.dimension;
    if (d < 1) fail_invalid("pencil dimension must be >= 1");

    if (p.topology == Topology::Line || d == 1) {
        f.lead = tridiag_ldlt(p.a_diag, p.a_off);
        f.ok = f.lead.ok;
        return f;
    }

    std::vector<double> lead_diag(p.a_diag.begin(), p.a_diag.end() - 1);
    std::vector<double> lead_off(p.a_off.begin(), p.a_off.end() - 1);
    f.lead = tridiag_ldlt(lead_diag, lead_off);
    if (!f.lead.ok) {
        f.ok = false;
        return f;
    }
    f.border.assign(d - 1, 0.0);
    f.border[0] = p.a_corner;
    f.border[d - 2] += p.a_off[d - 2];
    f.lead_inv_b.assign(d - 1, 0.0);
    tridiag_solve(f.lead, f.border.data(), f.lead_inv_b.data());
    double dot = 0.0;
    for (int i = 0; i < d - 1; ++i) dot += f.border[i] * f.lead_inv_b[i];
    f.schur = p.a_diag[d - 1] - dot;
    f.ok = f.schur > 0.0;
    return f;
}

void PencilFactor::solve(const double* r, double* x) const {
    int d = dimension;
    if (topology == Topology::Line || d == 1) {
        tridiag_solve(lead, r, x);
        return;
    }
    std::vector<double> y(d - 1);
    tridiag_solve(lead, r, y.data());
    double dot = 0.0;
    for (int i = 0; i < d - 1; ++i) dot += border[i] * y[i];
    double x_last = (r[d - 1] - dot) / schur;
    for (int i = 0; i < d - 1; ++i) x[i] = y[i] - lead_inv_b[i] * x_last;
    x[d - 1] = x_last;
}

}  // namespace hs
