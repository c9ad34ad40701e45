#pragma once

#include "sif/conic_filter.hpp"
#include "sif/sphere_grid.hpp"
#include "sif/spherical_signal.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <filesystem>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace sif {

enum class OperatorKind : std::uint8_t { exact_b = 0, approx_op = 1 };

std::string to_string(OperatorKind k);
OperatorKind parse_operator_kind(const std::string& s);

// Diagonal of entries ((i,j),(i-t,j-s)), values[j-1] for latitude j. t is
// kept in the canonical range (-N/2, N/2].
struct Band {
    int t = 0;
    int s = 0;
    std::vector<double> values;
};

int canonical_offset(int t, int n) noexcept;

struct AssemblyOptions {
    int quad_level = 8;
    bool renormalize_rows = false;
    // cap on cone evaluations for the quadrature
    double max_kernel_evaluations = 4e11;
};

// Longitude-invariant banded N^2 x N^2 moving-average operator.
class SiftOperator {
public:
    SiftOperator(const SphereGrid& grid, const ConeFilter& filter, OperatorKind kind, int quad_level,
                 bool renormalized, std::vector<Band> bands);

    const SphereGrid& grid() const noexcept { return grid_; }
    const ConeFilter& filter() const noexcept { return filter_; }
    OperatorKind kind() const noexcept { return kind_; }
    int quad_level() const noexcept { return quad_level_; }
    bool renormalized() const noexcept { return renormalized_; }
    const std::vector<Band>& bands() const noexcept { return bands_; }

    // 1-based dense lookup, zero outside the stored bands
    double entry(int i, int j, int p, int q) const;
    // band (t, s) at latitude j, zero if absent
    double band_value(int t, int s, int j) const;
    bool has_band(int t, int s) const;

    std::vector<double> row_sums() const;
    std::size_t nonzeros_per_longitude() const;

    SphericalSignal apply(const SphericalSignal& g) const;
    SphericalSignal apply_transpose(const SphericalSignal& g) const;
    // (I - B) g
    SphericalSignal sift(const SphericalSignal& g) const;
    // (I - B^T B) g
    SphericalSignal sift_stabilized(const SphericalSignal& g) const;

    // row index (j-1) N + (i-1), same for columns
    Eigen::MatrixXd to_dense(int max_n = 64) const;

private:
    struct RowEntry {
        int shift; // t mod N in [0, N)
        int other; // 0-based partner latitude
        double value;
    };

    void index();
    void gather(const std::vector<std::vector<RowEntry>>& rows, const SphericalSignal& g, SphericalSignal& out,
                int sign) const;

    SphereGrid grid_;
    ConeFilter filter_;
    OperatorKind kind_;
    int quad_level_;
    bool renormalized_;
    std::vector<Band> bands_;
    std::map<std::pair<int, int>, std::size_t> lookup_;
    std::vector<std::vector<RowEntry>> rows_;  // by output latitude, partner = source latitude
    std::vector<std::vector<RowEntry>> trows_; // transpose rows
};

SiftOperator build_exact_b(const SphereGrid& grid, const ConeFilter& filter, const AssemblyOptions& opt = {});
SiftOperator build_approx_op(const SphereGrid& grid, const ConeFilter& filter);
SiftOperator build_operator(const SphereGrid& grid, const ConeFilter& filter, OperatorKind kind,
                            const AssemblyOptions& opt = {});

// binary container, see operator_io.cpp
inline constexpr std::uint32_t operator_format_version = 1;
void save_operator(const SiftOperator& op, const std::filesystem::path& path);
SiftOperator load_operator(const std::filesystem::path& path);

} // namespace sif
