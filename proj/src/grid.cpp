#include "hardyspec/grid.hpp"

#include <cmath>

#include "hardyspec/common.hpp"

namespace hs {

LogGrid make_grid(double t_min, double t_max, int n) {
    if (!std::isfinite(t_min) || !std::isfinite(t_max) || !(t_min < t_max)) {
        fail_invalid("grid range must satisfy t_min < t_max with both finite");
    }
    if (n < 4) fail_invalid("grid must have at least 4 nodes");
    return LogGrid{t_min, t_max, n};
}

double hardy_constant(int N) {
    if (N < 3) fail_invalid("dimension must be >= 3");
    double half = (N - 2) / 2.0;
    return half * half;
}

double sphere_measure(int N) {
    if (N < 2) fail_invalid("sphere measure requires dimension >= 2");
    const double pi = 3.14159265358979323846;
    double w2 = 2.0 * pi;
    double w3 = 4.0 * pi;
    if (N == 2) return w2;
    if (N == 3) return w3;
    double w = (N % 2 == 0) ? w2 : w3;
    for (int k = (N % 2 == 0) ? 2 : 3; k + 2 <= N; k += 2) {
        w = 2.0 * pi * w / k;
    }
    return w;
}

}  // namespace hs
