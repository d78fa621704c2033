#include "hardyspec/solver.hpp"

#include <cmath>
#include <cstddef>
#include <vector>

#include "hardyspec/common.hpp"

namespace hs {
namespace {

double dot(const std::vector<double>& x, const std::vector<double>& y) {
    double s = 0.0;
    for (size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
}

double norm2(const std::vector<double>& x) { return std::sqrt(dot(x, x)); }

// Eigen-decomposition of a small (m <= 3) symmetric matrix by cyclic
// Jacobi; values in vals, eigenvectors in the columns of vecs.
void jacobi3(double a[3][3], int m, double vals[3], double vecs[3][3]) {
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) vecs[i][j] = (i == j) ? 1.0 : 0.0;
    }
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) off += a[p][q] * a[p][q];
        }
        if (off <= 1e-30) break;
        for (int p = 0; p < m; ++p) {
            for (int q = p + 1; q < m; ++q) {
                double apq = a[p][q];
                if (apq == 0.0) continue;
                double tau = (a[q][q] - a[p][p]) / (2.0 * apq);
                double t = (tau >= 0.0)
                               ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                               : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < m; ++k) {
                    double akp = a[k][p], akq = a[k][q];
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for (int k = 0; k < m; ++k) {
                    double apk = a[p][k], aqk = a[q][k];
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for (int k = 0; k < m; ++k) {
                    double vkp = vecs[k][p], vkq = vecs[k][q];
                    vecs[k][p] = c * vkp - s * vkq;
                    vecs[k][q] = s * vkp + c * vkq;
                }
            }
        }
    }
    for (int i = 0; i < m; ++i) vals[i] = a[i][i];
}

}  // namespace

EigResult principal(const Pencil& p, double tol, long max_iter) {
    int d = p.dimension;
    if (d < 1) fail_invalid("pencil dimension must be >= 1");
    if (!(tol > 0.0) || !std::isfinite(tol)) {
        fail_invalid("tolerance must be positive and finite");
    }
    if (max_iter < 1) fail_invalid("max_iter must be >= 1");

    PencilFactor fac = factor_a(p);
    if (!fac.ok) fail_invalid("numerator form is not positive definite");

    auto mul_a = [&](const std::vector<double>& x, std::vector<double>& y) {
        p.mul_a(x.data(), y.data());
    };
    auto mul_b = [&](const std::vector<double>& x, std::vector<double>& y) {
        p.mul_b(x.data(), y.data());
    };

    std::vector<double> x(d, 1.0), ax(d), bx(d);
    mul_a(x, ax);
    double s = std::sqrt(dot(x, ax));
    for (int i = 0; i < d; ++i) {
        x[i] /= s;
        ax[i] /= s;
    }
    mul_b(x, bx);
    double nu = dot(x, bx);  // x is A-normalized

    std::vector<double> w(d), pdir;
    std::vector<std::vector<double>> V, AV;
    std::vector<double> scratch(d), bv0(d), bv1(d), bv2(d);
    std::vector<double>* bvs[3] = {&bv0, &bv1, &bv2};

    int it = 0;
    int stagnant = 0;
    int restarts = 0;
    double res = 0.0;

    while (it < max_iter) {
        ++it;
        // w = A^{-1} B x - nu x
        fac.solve(bx.data(), w.data());
        for (int i = 0; i < d; ++i) w[i] -= nu * x[i];

        V.clear();
        AV.clear();
        V.push_back(x);
        AV.push_back(ax);
        auto try_add = [&](const std::vector<double>& cand) {
            std::vector<double> u = cand;
            std::vector<double> au(d);
            mul_a(u, au);
            double scale0 = dot(u, au);
            if (!(scale0 > 0.0) || !std::isfinite(scale0)) return;
            // Two projection passes: a single pass can leave a rounding
            // residue parallel to V, which would poison the subspace.
            for (int pass = 0; pass < 2; ++pass) {
                for (size_t j = 0; j < V.size(); ++j) {
                    double c = dot(AV[j], u);
                    for (int i = 0; i < d; ++i) u[i] -= c * V[j][i];
                }
                mul_a(u, au);
            }
            double nrm2 = dot(u, au);
            // Candidates that lose essentially their whole A-norm to the
            // projection are cancellation noise, not new directions.
            if (!(nrm2 > 0.0) || !(nrm2 > 1e-20 * scale0)) return;
            double sc = std::sqrt(nrm2);
            for (int i = 0; i < d; ++i) {
                u[i] /= sc;
                au[i] /= sc;
            }
            V.push_back(std::move(u));
            AV.push_back(std::move(au));
        };
        try_add(w);
        if (!pdir.empty()) try_add(pdir);

        int m = static_cast<int>(V.size());
        double bt[3][3] = {{0}};
        for (int j = 0; j < m; ++j) mul_b(V[j], *bvs[j]);
        for (int i = 0; i < m; ++i) {
            for (int j = i; j < m; ++j) {
                bt[i][j] = bt[j][i] = dot(V[i], *bvs[j]);
            }
        }

        double vals[3], vecs[3][3];
        jacobi3(bt, m, vals, vecs);
        int best = 0;
        for (int j = 1; j < m; ++j) {
            if (vals[j] > vals[best]) best = j;
        }
        double y[3];
        for (int i = 0; i < m; ++i) y[i] = vecs[i][best];
        if (y[0] < 0.0) {
            for (int i = 0; i < m; ++i) y[i] = -y[i];
        }

        std::vector<double> xn(d, 0.0), axn(d, 0.0), pn(d, 0.0);
        for (int j = 0; j < m; ++j) {
            for (int i = 0; i < d; ++i) {
                xn[i] += y[j] * V[j][i];
                axn[i] += y[j] * AV[j][i];
            }
        }
        for (int j = 1; j < m; ++j) {
            for (int i = 0; i < d; ++i) pn[i] += y[j] * V[j][i];
        }
        double sn = std::sqrt(dot(xn, axn));
        if (!(sn > 0.0) || !std::isfinite(sn)) {
            fail_solver("eigenvalue iteration lost the search direction");
        }
        for (int i = 0; i < d; ++i) {
            xn[i] /= sn;
            axn[i] /= sn;
        }
        double cp = dot(axn, pn);
        for (int i = 0; i < d; ++i) pn[i] -= cp * xn[i];
        pdir = std::move(pn);

        double nu_new = vals[best];
        mul_b(xn, bx);
        double inv2 = 1.0 / norm2(xn);
        double rn = 0.0;
        for (int i = 0; i < d; ++i) {
            double r = (bx[i] - nu_new * axn[i]) * inv2;
            rn += r * r;
        }
        res = std::sqrt(rn);
        double dl = std::fabs(nu_new - nu);
        x = std::move(xn);
        ax = std::move(axn);
        nu = nu_new;

        bool value_settled = dl <= tol * std::fabs(nu);
        if (value_settled && res <= 10.0 * tol) break;
        if (value_settled) {
            if (++stagnant >= 40 && restarts < 5) {
                // Deterministic perturbed restart to escape a stagnating
                // invariant pair.
                for (int i = 0; i < d; ++i) {
                    x[i] *= 1.0 + 1e-3 * ((i % 17) - 8) / 8.0;
                }
                mul_a(x, ax);
                double sr = std::sqrt(dot(x, ax));
                for (int i = 0; i < d; ++i) {
                    x[i] /= sr;
                    ax[i] /= sr;
                }
                mul_b(x, bx);
                nu = dot(x, bx);
                pdir.clear();
                stagnant = 0;
                ++restarts;
            }
        } else {
            stagnant = 0;
        }
        if (it == max_iter) {
            fail_solver(
                "principal eigenvalue iteration exceeded max_iter without "
                "converging");
        }
    }

    if (!(nu > 0.0)) {
        fail_solver(
            "no admissible test function: the weighted form is nonpositive "
            "on this space");
    }

    EigResult out;
    out.lambda = 1.0 / nu;
    out.iterations = it;
    out.residual = res;
    int imax = 0;
    for (int i = 1; i < d; ++i) {
        if (std::fabs(x[i]) > std::fabs(x[imax])) imax = i;
    }
    double scale = 1.0 / x[imax];
    out.vector.resize(d);
    for (int i = 0; i < d; ++i) out.vector[i] = x[i] * scale;
    return out;
}

double dense_oracle(const Pencil& p) {
    int d = p.dimension;
    if (d < 1) fail_invalid("pencil dimension must be >= 1");
    if (d > 400) {
        fail_invalid("dense oracle is limited to dimension <= 400");
    }

    std::vector<double> A(static_cast<size_t>(d) * d, 0.0);
    std::vector<double> B(static_cast<size_t>(d) * d, 0.0);
    auto at = [d](std::vector<double>& M, int i, int j) -> double& {
        return M[static_cast<size_t>(i) * d + j];
    };
    for (int i = 0; i < d; ++i) {
        at(A, i, i) = p.a_diag[i];
        at(B, i, i) = p.b_diag[i];
    }
    for (int i = 0; i + 1 < d; ++i) {
        at(A, i, i + 1) = at(A, i + 1, i) = p.a_off[i];
        at(B, i, i + 1) = at(B, i + 1, i) = p.b_off[i];
    }
    if (p.topology == Topology::Cycle && d > 1) {
        at(A, 0, d - 1) += p.a_corner;
        at(A, d - 1, 0) += p.a_corner;
        at(B, 0, d - 1) += p.b_corner;
        at(B, d - 1, 0) += p.b_corner;
    }

    // Cholesky A = L L^T (L overwrites the lower triangle of A).
    for (int j = 0; j < d; ++j) {
        double s = at(A, j, j);
        for (int k = 0; k < j; ++k) s -= at(A, j, k) * at(A, j, k);
        if (!(s > 0.0)) {
            fail_invalid("numerator form is not positive definite");
        }
        double ljj = std::sqrt(s);
        at(A, j, j) = ljj;
        for (int i = j + 1; i < d; ++i) {
            double v = at(A, i, j);
            for (int k = 0; k < j; ++k) v -= at(A, i, k) * at(A, j, k);
            at(A, i, j) = v / ljj;
        }
    }
    auto forward_col = [&](double* col) {
        for (int i = 0; i < d; ++i) {
            double v = col[i];
            for (int k = 0; k < i; ++k) v -= at(A, i, k) * col[k];
            col[i] = v / at(A, i, i);
        }
    };

    // C = L^{-1} B L^{-T}: forward-substitute the columns, transpose, and
    // forward-substitute again.
    std::vector<double> Y(static_cast<size_t>(d) * d);
    std::vector<double> col(d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) col[i] = at(B, i, j);
        forward_col(col.data());
        for (int i = 0; i < d; ++i) Y[static_cast<size_t>(i) * d + j] = col[i];
    }
    std::vector<double> C(static_cast<size_t>(d) * d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) col[i] = Y[static_cast<size_t>(j) * d + i];
        forward_col(col.data());
        for (int i = 0; i < d; ++i) C[static_cast<size_t>(i) * d + j] = col[i];
    }
    for (int i = 0; i < d; ++i) {
        for (int j = i + 1; j < d; ++j) {
            double v = 0.5 * (C[static_cast<size_t>(i) * d + j] +
                              C[static_cast<size_t>(j) * d + i]);
            C[static_cast<size_t>(i) * d + j] = v;
            C[static_cast<size_t>(j) * d + i] = v;
        }
    }

    double fro = 0.0;
    for (double v : C) fro += v * v;
    fro = std::sqrt(fro);
    double stop = 1e-13 * std::max(1.0, fro);

    auto cat = [&](int i, int j) -> double& {
        return C[static_cast<size_t>(i) * d + j];
    };
    bool done = false;
    for (int sweep = 0; sweep < 100 && !done; ++sweep) {
        double off = 0.0;
        for (int i = 0; i < d; ++i) {
            for (int j = i + 1; j < d; ++j) off += cat(i, j) * cat(i, j);
        }
        if (std::sqrt(2.0 * off) <= stop) {
            done = true;
            break;
        }
        for (int pi = 0; pi < d; ++pi) {
            for (int q = pi + 1; q < d; ++q) {
                double apq = cat(pi, q);
                if (apq == 0.0) continue;
                double tau = (cat(q, q) - cat(pi, pi)) / (2.0 * apq);
                double t = (tau >= 0.0)
                               ? 1.0 / (tau + std::sqrt(1.0 + tau * tau))
                               : -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                double c = 1.0 / std::sqrt(1.0 + t * t);
                double s = t * c;
                for (int k = 0; k < d; ++k) {
                    double akp = cat(k, pi), akq = cat(k, q);
                    cat(k, pi) = c * akp - s * akq;
                    cat(k, q) = s * akp + c * akq;
                }
                for (int k = 0; k < d; ++k) {
                    double apk = cat(pi, k), aqk = cat(q, k);
                    cat(pi, k) = c * apk - s * aqk;
                    cat(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    if (!done) {
        fail_internal("dense oracle Jacobi sweep did not converge");
    }

    double nu_max = cat(0, 0);
    for (int i = 1; i < d; ++i) nu_max = std::max(nu_max, cat(i, i));
    if (!(nu_max > 0.0)) {
        fail_solver(
            "no admissible test function: the weighted form is nonpositive "
            "on this space");
    }
    return 1.0 / nu_max;
}

double residual_norm(const Pencil& p, double lambda,
                     const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != p.dimension) {
        fail_invalid("candidate vector length must match the pencil");
    }
    if (!std::isfinite(lambda)) fail_invalid("lambda must be finite");
    double nx = norm2(x);
    if (!(nx > 0.0)) fail_invalid("candidate vector must be nonzero");
    int d = p.dimension;
    std::vector<double> ax(d), bx(d);
    p.mul_a(x.data(), ax.data());
    p.mul_b(x.data(), bx.data());
    double s = 0.0;
    for (int i = 0; i < d; ++i) {
        double r = ax[i] - lambda * bx[i];
        s += r * r;
    }
    return std::sqrt(s) / nx;
}

}  // namespace hs
