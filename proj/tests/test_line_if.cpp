#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sif/errors.hpp"
#include "sif/line_if.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <random>

using namespace sif;
using std::numbers::pi;

namespace {
std::vector<double> random_vec(int n, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> v(n);
    for (double& x : v)
        x = nd(rng);
    return v;
}

double dist(const std::vector<double>& a, const std::vector<double>& b)
{
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i)
        s += (a[i] - b[i]) * (a[i] - b[i]);
    return std::sqrt(s);
}

double norm(const std::vector<double>& a) { return dist(a, std::vector<double>(a.size(), 0.0)); }

// O(n^2) DFT of the first row
std::vector<double> naive_spectrum(const std::vector<double>& row)
{
    const int n = int(row.size());
    std::vector<double> out(n);
    for (int k = 0; k < n; ++k) {
        std::complex<double> s = 0.0;
        for (int i = 0; i < n; ++i)
            s += row[i] * std::polar(1.0, -2 * pi * k * i / n);
        out[k] = s.real();
    }
    return out;
}

std::vector<double> sinusoid(int n, int cycles, double amp = 1.0)
{
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i)
        v[i] = amp * std::sin(2 * pi * cycles * i / n);
    return v;
}
} // namespace

TEST_CASE("circulant construction")
{
    const CirculantFilter f = build_circulant(32, {1, 2, 3, 2, 1});
    CHECK(f.half_width() == 2);
    const auto row = f.first_row();
    CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(row[0] == doctest::Approx(3.0 / 9));
    CHECK(row[1] == row[31]);
    CHECK(row[2] == row[30]);
    CHECK_FALSE(f.double_convolution());

    const CirculantFilter t = triangle_filter(32, 4);
    CHECK(t.double_convolution());
    CHECK(t.half_width() == 4);
    const auto trow = t.first_row();
    CHECK(std::abs(std::accumulate(trow.begin(), trow.end(), 0.0) - 1.0) <= 1e-15);

    CHECK_THROWS_AS(build_circulant(32, {1, 2, 3}), InvalidArgument);
    CHECK_THROWS_AS(build_circulant(32, {1, 2}), InvalidArgument);
    CHECK_THROWS_AS(build_circulant(32, {1, -1, 1}), InvalidArgument);
    CHECK_THROWS_AS(build_circulant(32, std::vector<double>(13, 1.0)), InvalidArgument);
    CHECK_THROWS_AS(triangle_filter(32, 3), InvalidArgument);
    CHECK_THROWS_AS(if_limit_imf(f, random_vec(32, 1)), InvalidArgument);
    CHECK_THROWS_AS(if_limit_imf(t, random_vec(31, 1)), DimensionError);
}

TEST_CASE("filter application against the dense circulant")
{
    const int n = 40;
    const CirculantFilter f = build_circulant(n, {0.5, 1, 4, 1, 0.5});
    const auto row = f.first_row();
    const auto g = random_vec(n, 2);
    const auto fg = f.apply(g);
    const auto sg = f.sift(g);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int p = 0; p < n; ++p)
            s += row[(p - i + n) % n] * g[p];
        CHECK(fg[i] == doctest::Approx(s).epsilon(1e-14));
        CHECK(sg[i] == doctest::Approx(g[i] - s).epsilon(1e-13).scale(1.0));
    }
    const auto spec = f.spectrum();
    const auto ref = naive_spectrum(row);
    for (int k = 0; k < n; ++k)
        CHECK(spec[k] == doctest::Approx(ref[k]).epsilon(1e-13).scale(1.0));
}

TEST_CASE("double-convolution spectra lie in [0, 1]")
{
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        std::vector<double> base(1 + 2 * (trial % 5));
        for (std::size_t k = 0; k < base.size() / 2 + 1; ++k)
            base[k] = base[base.size() - 1 - k] = u(rng) + 0.1;
        const CirculantFilter f = double_convolution_filter(96, base);
        for (double v : f.spectrum()) {
            CHECK(v >= -1e-15);
            CHECK(v <= 1.0 + 1e-15);
        }
        CHECK(f.spectrum()[0] == doctest::Approx(1.0).epsilon(1e-15));
    }
}

TEST_CASE("delta filter")
{
    const CirculantFilter f = build_circulant(16, {2.0});
    const auto g = random_vec(16, 3);
    CHECK(f.apply(g) == g);
    for (double v : sift_power(f, g, 1))
        CHECK(v == 0.0);
    for (double v : sift_power(f, g, 5))
        CHECK(v == 0.0);
    for (double v : if_limit_imf(double_convolution_filter(16, {1.0}), g))
        CHECK(std::abs(v) <= 1e-15);
}

TEST_CASE("limit formula")
{
    const int n = 64;
    // constants are removed
    const CirculantFilter t = triangle_filter(n, 4);
    const auto c = if_limit_imf(t, std::vector<double>(n, 3.0));
    for (double v : c)
        CHECK(std::abs(v) <= 1e-13);

    // box of 8 ones: conv(w, w) has exact spectral zeros at multiples of 8
    const CirculantFilter f = double_convolution_filter(n, std::vector<double>(8, 1.0));
    const auto spec = f.spectrum();
    for (int k = 8; k < n; k += 8)
        CHECK(std::abs(spec[k]) <= 1e-12);

    // a mode in the zero set is left alone by every iteration
    const auto mode = sinusoid(n, 16);
    CHECK(dist(if_limit_imf(f, mode), mode) <= 1e-12);
    CHECK(dist(sift_power(f, mode, 50), mode) <= 1e-12);

    // power iteration approaches the DFT limit
    const auto g = random_vec(n, 7);
    const auto lim = if_limit_imf(f, g);
    CHECK(norm(lim) > 0.1);
    double prev = 1e300;
    for (int m : {10, 100, 1000, 10000}) {
        const double d = dist(sift_power(f, g, m), lim);
        CHECK(d < prev);
        prev = d;
    }
    CHECK(prev <= 1e-8);

    // triangle filter: distances shrink monotonically after the first step
    const auto lt = if_limit_imf(t, g);
    double last = 1e300;
    for (int m : {10, 100, 1000}) {
        const double d = dist(sift_power(t, g, m), lt);
        CHECK(d < last);
        last = d;
    }
}

TEST_CASE("extrema and half width")
{
    CHECK(count_extrema_1d(std::vector<double>(10, 1.0)) == 0);
    CHECK(count_extrema_1d(sinusoid(100, 5)) == 10);
    // periodic wrap: a peak at index 0
    std::vector<double> v(10, 0.0);
    v[0] = 1.0;
    CHECK(count_extrema_1d(v) == 1);
    CHECK(line_filter_half_width(1000, 20, 1.6) == 160);
    CHECK(line_filter_half_width(1000, 20, 2.0) == 200);
}

TEST_CASE("two separated sinusoids")
{
    const int n = 1024;
    const auto fast = sinusoid(n, 40), slow = sinusoid(n, 5, 0.8);
    std::vector<double> g(n);
    for (int i = 0; i < n; ++i)
        g[i] = fast[i] + slow[i];
    const LineResult r = dif_decompose(g);
    REQUIRE(!r.imfs.empty());
    const double e1 = dist(r.imfs[0], fast) / norm(fast);
    const double e2 = dist(r.remainder, slow) / norm(slow);
    MESSAGE("imfs " << r.imfs.size() << " stop " << r.stop << " err " << e1 << " " << e2 << " hw "
                    << r.diagnostics[0].half_width << " it " << r.diagnostics[0].iterations);
    CHECK(e1 <= 0.1);
    CHECK(e2 <= 0.1);

    std::vector<double> sum = r.remainder;
    for (const auto& imf : r.imfs)
        for (int i = 0; i < n; ++i)
            sum[i] += imf[i];
    CHECK(dist(sum, g) <= 1e-12);

    CHECK(dif_decompose(std::vector<double>(n, 2.0)).imfs.empty());
    LineConfig bad;
    bad.delta = 0.0;
    CHECK_THROWS_AS(dif_decompose(g, bad), InvalidArgument);
}
