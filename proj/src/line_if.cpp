#include "sif/line_if.hpp"

#include "sif/errors.hpp"

#include <unsupported/Eigen/FFT>

#include <cmath>
#include <numeric>
#include <string>

namespace sif {

std::vector<double> CirculantFilter::first_row() const
{
    std::vector<double> row(n_, 0.0);
    for (int k = -half_width_; k <= half_width_; ++k)
        row[(k + n_) % n_] += taps_[k + half_width_];
    return row;
}

std::vector<double> CirculantFilter::spectrum() const
{
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> hat;
    fft.fwd(hat, first_row());
    std::vector<double> out(n_);
    for (int k = 0; k < n_; ++k)
        out[k] = hat[k].real();
    return out;
}

std::vector<double> CirculantFilter::apply(const std::vector<double>& g) const
{
    if (int(g.size()) != n_)
        throw DimensionError("signal length " + std::to_string(g.size()) + " != filter length " + std::to_string(n_));
    std::vector<double> out(n_, 0.0);
    for (int i = 0; i < n_; ++i) {
        double acc = 0.0;
        for (int k = -half_width_; k <= half_width_; ++k)
            acc += taps_[k + half_width_] * g[((i + k) % n_ + n_) % n_];
        out[i] = acc;
    }
    return out;
}

std::vector<double> CirculantFilter::sift(const std::vector<double>& g) const
{
    std::vector<double> out = apply(g);
    for (int i = 0; i < n_; ++i)
        out[i] = g[i] - out[i];
    return out;
}

CirculantFilter build_circulant(int n, std::vector<double> samples)
{
    if (n < 3)
        throw InvalidArgument("circulant filter needs n >= 3");
    if (samples.size() % 2 != 1)
        throw InvalidArgument("filter samples must have odd length (centred)");
    const int L = int(samples.size() / 2);
    if (L >= n / 6 && L > 0)
        throw InvalidArgument("filter support " + std::to_string(L) + " too wide for n=" + std::to_string(n)
                              + " (needs < n/6 per side)");
    double sum = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) {
        if (!(samples[k] >= 0.0) || !std::isfinite(samples[k]))
            throw InvalidArgument("filter samples must be finite and nonnegative");
        if (samples[k] != samples[samples.size() - 1 - k])
            throw InvalidArgument("filter samples must be even");
        sum += samples[k];
    }
    if (!(sum > 0.0))
        throw InvalidArgument("filter samples sum to zero");
    for (double& x : samples)
        x /= sum;
    CirculantFilter f;
    f.n_ = n;
    f.half_width_ = L;
    f.taps_ = std::move(samples);
    return f;
}

CirculantFilter double_convolution_filter(int n, const std::vector<double>& base)
{
    if (base.empty())
        throw InvalidArgument("empty base window");
    std::vector<double> c(2 * base.size() - 1, 0.0);
    for (std::size_t a = 0; a < base.size(); ++a)
        for (std::size_t b = 0; b < base.size(); ++b)
            c[a + b] += base[a] * base[b];
    CirculantFilter f = build_circulant(n, std::move(c));
    f.double_conv_ = true;
    return f;
}

CirculantFilter triangle_filter(int n, int half_width)
{
    if (half_width < 0 || half_width % 2 != 0)
        throw InvalidArgument("triangle half width must be even and >= 0");
    return double_convolution_filter(n, std::vector<double>(std::size_t(half_width + 1), 1.0));
}

std::vector<double> sift_power(const CirculantFilter& f, std::vector<double> g, int m)
{
    for (int k = 0; k < m; ++k)
        g = f.sift(g);
    return g;
}

std::vector<double> if_limit_imf(const CirculantFilter& f, const std::vector<double>& g, double tol)
{
    if (!f.double_convolution())
        throw InvalidArgument("limit formula needs a double-convolution filter");
    if (int(g.size()) != f.n())
        throw DimensionError("signal length does not match filter");
    const std::vector<double> fh = f.spectrum();
    Eigen::FFT<double> fft;
    std::vector<std::complex<double>> gh;
    fft.fwd(gh, g);
    for (int k = 0; k < f.n(); ++k)
        if (std::abs(fh[k]) > tol)
            gh[k] = 0.0;
    std::vector<double> out;
    fft.inv(out, gh);
    return out;
}

std::size_t count_extrema_1d(const std::vector<double>& g)
{
    const std::size_t n = g.size();
    if (n < 3)
        return 0;
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i) {
        const double a = g[(i + n - 1) % n], b = g[(i + 1) % n];
        if ((g[i] > a && g[i] > b) || (g[i] < a && g[i] < b))
            ++c;
    }
    return c;
}

int line_filter_half_width(int n, std::size_t extrema, double chi)
{
    if (extrema == 0)
        throw InvalidArgument("radius rule needs at least one extremum");
    return 2 * int(std::floor(chi * n / double(extrema)));
}

LineResult dif_decompose(const std::vector<double>& g, const LineConfig& cfg)
{
    if (!(cfg.delta > 0.0) || cfg.max_inner_iterations < 1 || !(cfg.chi > 0.0))
        throw InvalidArgument("invalid 1D decomposition config");
    const int n = int(g.size());
    LineResult res;
    res.remainder = g;
    res.stop = "few_extrema";
    auto norm = [](const std::vector<double>& v) {
        return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
    };
    while (true) {
        const std::size_t e = count_extrema_1d(res.remainder);
        if (e < 2) {
            res.stop = "few_extrema";
            break;
        }
        if (int(res.imfs.size()) >= cfg.max_imfs) {
            res.stop = "max_imfs";
            break;
        }
        const int l = line_filter_half_width(n, e, cfg.chi);
        if (l >= n / 6) {
            res.stop = "filter_too_wide";
            break;
        }
        const CirculantFilter f = triangle_filter(n, l);
        LineImfDiagnostics d;
        d.half_width = l;
        std::vector<double> cur = res.remainder;
        for (int it = 1; it <= cfg.max_inner_iterations; ++it) {
            std::vector<double> next = f.sift(cur);
            double diff = 0.0;
            for (int i = 0; i < n; ++i)
                diff += (next[i] - cur[i]) * (next[i] - cur[i]);
            const double den = norm(cur);
            cur = std::move(next);
            d.iterations = it;
            if (den == 0.0 || std::sqrt(diff) / den <= cfg.delta) {
                d.converged = true;
                break;
            }
        }
        for (int i = 0; i < n; ++i)
            res.remainder[i] -= cur[i];
        res.imfs.push_back(std::move(cur));
        res.diagnostics.push_back(d);
    }
    return res;
}

} // namespace sif
