#include "hardyspec/periodic.hpp"

#include <cmath>
#include <limits>
#include <utility>
#include <vector>

#include "hardyspec/common.hpp"
#include "hardyspec/pencil.hpp"
#include "hardyspec/solver.hpp"

namespace hs {

PeriodicState lambda_circ(const WeightProfile& m, double gamma, int N,
                          int n_cell, double tol, long max_iter) {
    Pencil p = assemble_periodic(m, gamma, N, n_cell);
    EigResult r = principal(p, tol, max_iter);

    PeriodicState st;
    st.N = N;
    st.gamma = gamma;
    st.n_cell = n_cell;
    st.lambda_circ = r.lambda;
    st.psi = std::move(r.vector);
    st.residual = r.residual;
    st.iterations = r.iterations;

    double mn = std::numeric_limits<double>::infinity();
    double mx = -mn;
    for (double v : st.psi) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    if (!(mn > 0.0)) {
        fail_solver(
            "periodic ground state is not strictly positive on the cell");
    }
    st.sandwich_c = mx / mn;
    return st;
}

RadialFunction extend(const PeriodicState& state) {
    if (state.psi.empty()) fail_invalid("periodic state has no eigenvector");
    if (!(state.gamma > 1.0)) fail_invalid("gamma must be > 1");
    double L = std::log(state.gamma);
    int n = state.n_cell;
    double hc = L / n;
    std::vector<double> psi = state.psi;
    auto prof = [L, n, hc, psi = std::move(psi)](double t) -> double {
        double j = std::floor(t / L);
        double tau = t - j * L;
        if (tau < 0.0) tau = 0.0;
        if (tau >= L) tau -= L;
        double s = tau / hc;
        int idx = static_cast<int>(s);
        if (idx > n - 1) idx = n - 1;
        double f = s - idx;
        return psi[idx] * (1.0 - f) + psi[(idx + 1) % n] * f;
    };
    return RadialFunction{state.N, prof};
}

std::vector<std::pair<long, double>> null_energy_decay(
    const PeriodicState& state, const std::vector<long>& k_list) {
    if (k_list.empty()) fail_invalid("k_list must be nonempty");
    for (size_t i = 0; i < k_list.size(); ++i) {
        if (k_list[i] < 1) {
            fail_invalid("k_list entries must be positive integers");
        }
        if (i > 0 && !(k_list[i] > k_list[i - 1])) {
            fail_invalid("k_list must be strictly ascending");
        }
    }
    RadialFunction v = extend(state);
    std::vector<std::pair<long, double>> out;
    out.reserve(k_list.size());
    for (long k : k_list) {
        // The cutoff decays over |t| ~ k; +-10k keeps the certified tail
        // below one part in 10^8 of the total.
        double range = 10.0 * static_cast<double>(k);
        out.emplace_back(k, null_sequence_energy(v, k, -range, range));
    }
    return out;
}

}  // namespace hs
