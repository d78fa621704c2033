#pragma once

#include <vector>

#include "hardyspec/grid.hpp"
#include "hardyspec/weight.hpp"

namespace hs {

enum class Topology { Line, Cycle };

// Symmetric tridiagonal pencil (A, B), optionally with a cyclic corner
// coupling between the first and last index.  A is the quadratic-form
// numerator, B the weighted mass form.
struct Pencil {
    Topology topology = Topology::Line;
    int dimension = 0;
    std::vector<double> a_diag, a_off;  // off has dimension-1 entries
    std::vector<double> b_diag, b_off;
    double a_corner = 0.0;  // (0, dimension-1) coupling, Cycle only
    double b_corner = 0.0;

    void mul_a(const double* x, double* y) const;
    void mul_b(const double* x, double* y) const;
};

struct SectorIndex {
    int l = 0;
    double shift = 0.0;  // l*(l+N-2)
};

SectorIndex make_sector(int l, int N);

// Dirichlet pencil on the interior nodes of the grid for the angular
// sector l.  The diagonal is assembled as (K + hardy*M) + shift*M in that
// exact floating-point order, so equal grids give bitwise-reproducible
// sector shifts.  Throws when the numerator form is not positive definite.
Pencil assemble_sector(const LogGrid& grid, const WeightProfile& m, int N,
                       SectorIndex sector);

// Periodic pencil on one cell [0, log gamma) with n nodes, sector l = 0.
Pencil assemble_periodic(const WeightProfile& m, double gamma, int N, int n);

// Free-end (natural) pencil on all grid nodes:
//   A = K + hardy*M - lambda*M_base,  B = M_w
// with M_base omitted when base == nullptr.  No definiteness check here;
// callers test feasibility through the factorization.
Pencil assemble_perturbation(const LogGrid& grid, const WeightProfile* base,
                             const WeightProfile& w, double lambda, int N);

// LDL^T of a symmetric tridiagonal matrix.  ok is false when a pivot is
// not strictly positive (matrix not positive definite).
struct TriFactor {
    std::vector<double> d, l;
    bool ok = false;
};

TriFactor tridiag_ldlt(const std::vector<double>& diag,
                       const std::vector<double>& off);
void tridiag_solve(const TriFactor& f, const double* r, double* x);

// Factorization of A for either topology.  For a cycle the last row and
// column are bordered out: the leading block is tridiagonal and the
// Schur complement is a scalar; A is positive definite exactly when the
// leading pivots and the Schur complement are positive.
struct PencilFactor {
    Topology topology = Topology::Line;
    int dimension = 0;
    TriFactor lead;
    std::vector<double> border;      // sparse border column (Cycle)
    std::vector<double> lead_inv_b;  // lead^{-1} * border (Cycle)
    double schur = 0.0;
    bool ok = false;

    void solve(const double* r, double* x) const;
};

PencilFactor factor_a(const Pencil& p);

// One linear element of width h with nodal weights (wi, wj): contributions
// to the two diagonal entries and the coupling entry of the weighted mass
// form (exact integration of the nodally interpolated weight) and of the
// stiffness form.
void accumulate_element_mass(double& di, double& dj, double& off, double h,
                             double wi, double wj);
void accumulate_element_stiffness(double& di, double& dj, double& off,
                                  double inv_h);

}  // namespace hs
