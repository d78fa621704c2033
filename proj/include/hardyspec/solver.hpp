#pragma once

#include <vector>

#include "hardyspec/pencil.hpp"

namespace hs {

struct EigResult {
    double lambda = 0.0;          // min of x^T A x / x^T B x over x^T B x > 0
    std::vector<double> vector;   // scaled so the max-magnitude entry is +1
    double residual = 0.0;        // ||B x - nu A x||_2 at the 2-normalized x
    int iterations = 0;
};

// Principal generalized eigenvalue of the pencil (A, B): the smallest
// positive lambda with A x = lambda B x restricted to the B-positive cone,
// computed as 1/nu_max of B y = nu A y via a locally optimal block of
// {current, preconditioned residual, previous step}.  Deterministic:
// all-ones start, fixed restart schedule.  Throws SolverFailure when no
// admissible test function exists (B nonpositive on the whole space) or
// when max_iter is exceeded.
EigResult principal(const Pencil& p, double tol = 1e-10,
                    long max_iter = 200000);

// Dense cross-check for dimension <= 400: Cholesky A = L L^T, then a
// Jacobi eigensolve of L^{-1} B L^{-T}.  Returns the same principal value.
double dense_oracle(const Pencil& p);

// ||A x - lambda B x||_2 / ||x||_2 for a candidate pair.
double residual_norm(const Pencil& p, double lambda,
                     const std::vector<double>& x);

}  // namespace hs
