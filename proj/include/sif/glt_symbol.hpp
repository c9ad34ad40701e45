#pragma once

#include <complex>
#include <vector>

namespace sif {

// a_{t,s}(x2) = 6 sin(pi x2) (m - sqrt(s^2 + 4 t^2 sin^2(pi x2)))^+ / (m^3 pi)
double diagonal_function(int t, int s, double x2, double m);

// kappa(x2, theta) = sum_{t,s} a_{t,s}(x2) exp(i (t theta1 + s theta2)), finite support
std::complex<double> symbol(double x2, double theta1, double theta2, double m);

// Support of the sum for given x2: |s| <= s_max, |t| <= t_max. Both zero when
// sin(pi x2) vanishes (the symbol is defined as 0 there).
struct SymbolSupport {
    int s_max = 0;
    int t_max = 0;
};
SymbolSupport symbol_support(double x2, double m);

// N^2 quantiles of kappa sampled on an N x L x L midpoint lattice,
// L = ceil(sqrt(oversample N)), ascending by real part then imaginary part
std::vector<std::complex<double>> symbol_eig_approx(int n, double m, int oversample = 4);

// limit of kappa(x2, (0, pi)) as x2 -> 0+, from the integrals of the a_{t,s} rows
double symbol_edge_limit(double m);

// (3/(2 pi)) (pi/4 - 1), the constant usually quoted for the m = 2 limit
double quoted_edge_constant();

struct CounterexampleRow {
    double x2 = 0.0;
    double kappa = 0.0;
    bool negative = false;
};

struct CounterexampleScan {
    double m = 2.0;
    std::vector<CounterexampleRow> rows;
    double edge_limit = 0.0;
    double quoted_constant = 0.0;
    // largest x2 such that every scanned point in (0, x2] is negative, 0 if none
    double negative_up_to = 0.0;
};

// x2 descending geometrically from x2_max to x2_min
CounterexampleScan counterexample_scan(double m = 2.0, double x2_max = 0.5, double x2_min = 1e-4,
                                       int resolution = 200);

} // namespace sif
