#pragma once

#include "sif/sphere_grid.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace sif {

// N x N samples at cell centres. Storage is latitude-major:
// values()[(j-1) N + (i-1)] holds g(z_{i,j}).
class SphericalSignal {
public:
    explicit SphericalSignal(const SphereGrid& grid, double fill = 0.0);
    SphericalSignal(const SphereGrid& grid, std::vector<double> values);

    const SphereGrid& grid() const noexcept { return grid_; }
    int n() const noexcept { return grid_.n(); }

    double& at(int i, int j);
    double at(int i, int j) const;

    std::span<double> values() noexcept { return v_; }
    std::span<const double> values() const noexcept { return v_; }
    std::span<double> row(int j) noexcept { return {v_.data() + std::size_t(j - 1) * n(), std::size_t(n())}; }
    std::span<const double> row(int j) const noexcept
    {
        return {v_.data() + std::size_t(j - 1) * n(), std::size_t(n())};
    }

    // sqrt(sum sigma_j g_ij^2)
    double norm() const noexcept;
    bool all_finite() const noexcept;

    SphericalSignal& operator+=(const SphericalSignal& o);
    SphericalSignal& operator-=(const SphericalSignal& o);
    SphericalSignal& operator*=(double c) noexcept;

private:
    SphereGrid grid_;
    std::vector<double> v_;
};

SphericalSignal operator+(SphericalSignal a, const SphericalSignal& b);
SphericalSignal operator-(SphericalSignal a, const SphericalSignal& b);
SphericalSignal operator*(double c, SphericalSignal a);

// area-weighted inner product
double inner(const SphericalSignal& a, const SphericalSignal& b);

void require_same_grid(const SphereGrid& a, const SphereGrid& b, const char* what);

} // namespace sif
