#include "sif/glt_symbol.hpp"

#include "sif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sif {

namespace {
constexpr double pi = std::numbers::pi;

void check_m(double m)
{
    if (!(m > 0.0) || !std::isfinite(m))
        throw InvalidArgument("symbol needs m > 0, got " + std::to_string(m));
}

// sin(pi x) on [0, 1], reflected so x = 1 gives exactly 0
double sin_pi(double x) { return std::sin(pi * (x > 0.5 ? 1.0 - x : x)); }

bool complex_less(const std::complex<double>& a, const std::complex<double>& b)
{
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
}
} // namespace

double diagonal_function(int t, int s, double x2, double m)
{
    check_m(m);
    const double sx = sin_pi(x2);
    if (sx == 0.0)
        return 0.0;
    const double r = std::sqrt(double(s) * s + 4.0 * t * t * sx * sx);
    return r < m ? 6.0 * sx * (m - r) / (m * m * m * pi) : 0.0;
}

SymbolSupport symbol_support(double x2, double m)
{
    check_m(m);
    const double sx = sin_pi(x2);
    if (!(sx > 0.0))
        return {};
    return {int(std::ceil(m)), int(std::ceil(m / (2.0 * sx)))};
}

std::complex<double> symbol(double x2, double theta1, double theta2, double m)
{
    const SymbolSupport sup = symbol_support(x2, m);
    if (sup.s_max == 0 && sup.t_max == 0)
        return {0.0, 0.0};
    std::complex<double> sum = 0.0;
    for (int s = -sup.s_max; s <= sup.s_max; ++s)
        for (int t = -sup.t_max; t <= sup.t_max; ++t) {
            const double a = diagonal_function(t, s, x2, m);
            if (a != 0.0)
                sum += a * std::polar(1.0, t * theta1 + s * theta2);
        }
    return sum;
}

std::vector<std::complex<double>> symbol_eig_approx(int n, double m, int oversample)
{
    check_m(m);
    if (n < 2)
        throw InvalidArgument("symbol sampling needs N >= 2");
    if (oversample < 1)
        throw InvalidArgument("oversample must be >= 1");
    const int L = int(std::ceil(std::sqrt(double(oversample) * n)));
    std::vector<double> theta(L);
    for (int k = 0; k < L; ++k)
        theta[k] = -pi + 2 * pi * (k + 0.5) / L;

    // a_{t,s} is even in t and s, so kappa = sum_s cos(s th2) sum_t a cos(t th1)
    std::vector<double> samples(std::size_t(n) * L * L);
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
        const double x2 = (k + 0.5) / n;
        const SymbolSupport sup = symbol_support(x2, m);
        std::vector<double> inner(std::size_t(sup.s_max + 1) * L, 0.0);
        for (int s = 0; s <= sup.s_max; ++s)
            for (int t = -sup.t_max; t <= sup.t_max; ++t) {
                const double a = diagonal_function(t, s, x2, m);
                if (a == 0.0)
                    continue;
                for (int u = 0; u < L; ++u)
                    inner[s * L + u] += a * std::cos(t * theta[u]);
            }
        for (int u = 0; u < L; ++u)
            for (int v = 0; v < L; ++v) {
                double val = inner[u];
                for (int s = 1; s <= sup.s_max; ++s)
                    val += 2.0 * std::cos(s * theta[v]) * inner[s * L + u];
                samples[(std::size_t(k) * L + u) * L + v] = val;
            }
    }
    std::sort(samples.begin(), samples.end());
    const std::size_t total = samples.size();
    const std::size_t want = std::size_t(n) * n;
    std::vector<std::complex<double>> out(want);
    for (std::size_t q = 0; q < want; ++q) {
        const auto idx = std::min(total - 1, std::size_t((q + 0.5) * double(total) / double(want)));
        out[q] = samples[idx];
    }
    std::sort(out.begin(), out.end(), complex_less);
    return out;
}

double symbol_edge_limit(double m)
{
    check_m(m);
    // sum_t a_{t,s}(x2) -> (6/(pi m^3)) int (m - sqrt(s^2 + 4u^2))^+ du
    double sum = 0.0;
    for (int s = -int(std::ceil(m)); s <= int(std::ceil(m)); ++s) {
        if (std::abs(s) >= m)
            continue;
        const double c = std::sqrt(m * m - double(s) * s);
        double row = 0.5 * m * c;
        if (s != 0)
            row -= 0.25 * double(s) * s * std::log((m + c) / (m - c));
        sum += (s % 2 == 0 ? 1.0 : -1.0) * row;
    }
    return 6.0 / (pi * m * m * m) * sum;
}

double quoted_edge_constant() { return 3.0 / (2.0 * pi) * (pi / 4.0 - 1.0); }

CounterexampleScan counterexample_scan(double m, double x2_max, double x2_min, int resolution)
{
    check_m(m);
    if (!(x2_min > 0.0 && x2_max > x2_min && x2_max <= 1.0))
        throw InvalidArgument("counterexample scan needs 0 < x2_min < x2_max <= 1");
    if (resolution < 2)
        throw InvalidArgument("counterexample scan needs resolution >= 2");
    CounterexampleScan scan;
    scan.m = m;
    scan.edge_limit = symbol_edge_limit(m);
    scan.quoted_constant = quoted_edge_constant();
    const double ratio = std::log(x2_min / x2_max) / (resolution - 1);
    for (int k = 0; k < resolution; ++k) {
        const double x2 = k == resolution - 1 ? x2_min : x2_max * std::exp(ratio * k);
        const double kappa = symbol(x2, 0.0, pi, m).real();
        scan.rows.push_back({x2, kappa, kappa < 0.0});
    }
    for (auto it = scan.rows.rbegin(); it != scan.rows.rend() && it->negative; ++it)
        scan.negative_up_to = it->x2;
    return scan;
}

} // namespace sif
