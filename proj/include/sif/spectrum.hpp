#pragma once

#include "sif/sift_operator.hpp"

#include <Eigen/Dense>

#include <complex>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace sif {

enum class SpectrumMethod { dense, block_circulant, glt_symbol };
// which matrix built from B: B, I - B, B^T B, I - B^T B
enum class SpectralTarget { average, sifting, normal, stabilized_sifting };

std::string to_string(SpectrumMethod m);
std::string to_string(SpectralTarget t);
SpectrumMethod parse_spectrum_method(const std::string& s);
SpectralTarget parse_spectral_target(const std::string& s);

inline constexpr const char* spectrum_sort_key = "real ascending, ties by imaginary ascending";

struct SpectrumReport {
    SpectrumMethod method = SpectrumMethod::dense;
    SpectralTarget target = SpectralTarget::average;
    int n = 0;
    double radius = 0.0;
    std::optional<double> cells;
    std::optional<OperatorKind> kind;
    int quad_level = 0;
    double seconds = 0.0;
    std::vector<std::complex<double>> eigenvalues;

    double min_real() const;
    double max_real() const;
    double max_abs_imag() const;
    std::vector<double> real_parts() const;
};

void sort_spectrum(std::vector<std::complex<double>>& v);

inline constexpr int default_dense_cap = 40;

SpectrumReport eig_dense(const SiftOperator& op, SpectralTarget target = SpectralTarget::average,
                         int dense_cap = default_dense_cap);

// latitude blocks H_k, (H_k)_{j,q} = sum_t band(t, j-q)[j] exp(-2 pi i t k / N)
std::vector<Eigen::MatrixXcd> longitude_blocks(const SiftOperator& op);
SpectrumReport eig_block_circulant(const SiftOperator& op, SpectralTarget target = SpectralTarget::average);

SpectrumReport eig_symbol(int n, double m, int oversample = 4);

struct SpectrumComparison {
    int n = 0;
    double radius = 0.0;
    double m = 0.0;
    int quad_level = 0;
    int oversample = 4;
    std::vector<double> exact_re;
    std::vector<double> op_re;
    std::vector<double> symbol_re;
    // first zoom_count indices = lowest 20%
    std::size_t zoom_count = 0;
    double seconds_exact = 0.0, seconds_op = 0.0, seconds_symbol = 0.0;
};

SpectrumComparison spectrum_compare(int n, const ConeFilter& filter, int quad_level, int oversample = 4);

struct ZeroDistributionRow {
    int n = 0;
    double frobenius_sq = 0.0;
    std::vector<double> eps;
    std::vector<std::size_t> count_above;
};

std::vector<ZeroDistributionRow> zero_distribution_check(double radius, std::span<const int> sizes,
                                                         std::span<const double> eps = {});

// Frobenius norm squared of the full N^2 x N^2 matrix
double frobenius_sq(const SiftOperator& op);

// two-sample Kolmogorov-Smirnov statistic
double max_cdf_gap(std::vector<double> a, std::vector<double> b);

// greedy nearest matching, max distance over matched pairs; sizes must agree
double spectral_match_distance(const std::vector<std::complex<double>>& a,
                               const std::vector<std::complex<double>>& b);

bool conjugate_symmetric(const std::vector<std::complex<double>>& v, double tol);

} // namespace sif
