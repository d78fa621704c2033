#pragma once

namespace hs {

// Uniform grid in the logarithmic variable t = log r.
struct LogGrid {
    double t_min = -30.0;
    double t_max = 30.0;
    int n = 6001;  // node count, nodes t_min + i*h, i = 0..n-1

    double h() const { return (t_max - t_min) / (n - 1); }
    double node(int i) const { return t_min + i * h(); }
};

// Validates and constructs a grid: t_min < t_max finite, n >= 4.
LogGrid make_grid(double t_min, double t_max, int n);

// ((N-2)/2)^2 for dimension N >= 3.
double hardy_constant(int N);

// Surface measure of the unit sphere in R^N (N >= 2), via the recurrence
// omega_N = 2*pi*omega_{N-2}/(N-2) anchored at omega_2 = 2*pi, omega_3 = 4*pi.
double sphere_measure(int N);

}  // namespace hs
