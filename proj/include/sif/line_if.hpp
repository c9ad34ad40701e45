#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

namespace sif {

// Symmetric circulant moving average on periodic signals of length n.
// (F g)_i = sum_{|k| <= half_width} taps[k + half_width] g_{(i+k) mod n}
class CirculantFilter {
public:
    int n() const noexcept { return n_; }
    int half_width() const noexcept { return half_width_; }
    const std::vector<double>& taps() const noexcept { return taps_; }
    // first row of the circulant matrix
    std::vector<double> first_row() const;
    bool double_convolution() const noexcept { return double_conv_; }

    // real DFT of the first row, the eigenvalues of F
    std::vector<double> spectrum() const;

    std::vector<double> apply(const std::vector<double>& g) const;
    // (I - F) g
    std::vector<double> sift(const std::vector<double>& g) const;

    friend CirculantFilter build_circulant(int n, std::vector<double> samples);
    friend CirculantFilter double_convolution_filter(int n, const std::vector<double>& base);

private:
    int n_ = 0;
    int half_width_ = 0;
    std::vector<double> taps_;
    bool double_conv_ = false;
};

// samples: 2L+1 nonnegative even values centred on offset 0; normalized to sum 1
CirculantFilter build_circulant(int n, std::vector<double> samples);
// conv(w, w) of a base window, the only filters accepted by if_limit_imf
CirculantFilter double_convolution_filter(int n, const std::vector<double>& base);
// box base of 2a+1 ones, a = half_width/2 (so the result has the given half width)
CirculantFilter triangle_filter(int n, int half_width);

std::vector<double> sift_power(const CirculantFilter& f, std::vector<double> g, int m);

// lim (I - F)^m g: keep the frequencies where F's spectrum vanishes (|.| <= tol)
std::vector<double> if_limit_imf(const CirculantFilter& f, const std::vector<double>& g, double tol = 1e-12);

std::size_t count_extrema_1d(const std::vector<double>& g);

// l = 2 floor(chi n / k)
int line_filter_half_width(int n, std::size_t extrema, double chi);

struct LineConfig {
    double delta = 1e-3;
    int max_inner_iterations = 200;
    int max_imfs = 8;
    double chi = 2.0;
};

struct LineImfDiagnostics {
    int iterations = 0;
    int half_width = 0;
    bool converged = false;
};

struct LineResult {
    std::vector<std::vector<double>> imfs;
    std::vector<double> remainder;
    std::vector<LineImfDiagnostics> diagnostics;
    // why the outer loop ended: "few_extrema", "max_imfs" or "filter_too_wide"
    std::string stop;
};

LineResult dif_decompose(const std::vector<double>& g, const LineConfig& cfg = {});

} // namespace sif
