#include "sif/spherical_signal.hpp"

#include "sif/errors.hpp"

#include <cmath>
#include <string>

namespace sif {

void require_same_grid(const SphereGrid& a, const SphereGrid& b, const char* what)
{
    if (!(a == b))
        throw DimensionError(std::string(what) + ": grid mismatch (N=" + std::to_string(a.n())
                             + " vs N=" + std::to_string(b.n()) + ")");
}

SphericalSignal::SphericalSignal(const SphereGrid& grid, double fill) : grid_(grid), v_(grid.size(), fill)
{
    if (!std::isfinite(fill))
        throw InvalidArgument("signal fill value must be finite");
}

SphericalSignal::SphericalSignal(const SphereGrid& grid, std::vector<double> values)
    : grid_(grid), v_(std::move(values))
{
    if (v_.size() != grid_.size())
        throw DimensionError("signal has " + std::to_string(v_.size()) + " samples, grid needs "
                             + std::to_string(grid_.size()));
    if (!all_finite())
        throw InvalidArgument("signal contains NaN or Inf");
}

double& SphericalSignal::at(int i, int j)
{
    if (i < 1 || i > n() || j < 1 || j > n())
        throw IndexError("signal index (" + std::to_string(i) + "," + std::to_string(j) + ") out of range");
    return v_[std::size_t(j - 1) * n() + (i - 1)];
}

double SphericalSignal::at(int i, int j) const { return const_cast<SphericalSignal*>(this)->at(i, j); }

double SphericalSignal::norm() const noexcept { return std::sqrt(inner(*this, *this)); }

bool SphericalSignal::all_finite() const noexcept
{
    for (double x : v_)
        if (!std::isfinite(x))
            return false;
    return true;
}

SphericalSignal& SphericalSignal::operator+=(const SphericalSignal& o)
{
    require_same_grid(grid_, o.grid_, "signal addition");
    for (std::size_t k = 0; k < v_.size(); ++k)
        v_[k] += o.v_[k];
    return *this;
}

SphericalSignal& SphericalSignal::operator-=(const SphericalSignal& o)
{
    require_same_grid(grid_, o.grid_, "signal subtraction");
    for (std::size_t k = 0; k < v_.size(); ++k)
        v_[k] -= o.v_[k];
    return *this;
}

SphericalSignal& SphericalSignal::operator*=(double c) noexcept
{
    for (double& x : v_)
        x *= c;
    return *this;
}

SphericalSignal operator+(SphericalSignal a, const SphericalSignal& b) { return a += b; }
SphericalSignal operator-(SphericalSignal a, const SphericalSignal& b) { return a -= b; }
SphericalSignal operator*(double c, SphericalSignal a) { return a *= c; }

double inner(const SphericalSignal& a, const SphericalSignal& b)
{
    require_same_grid(a.grid(), b.grid(), "inner product");
    const int n = a.n();
    double sum = 0.0;
    for (int j = 1; j <= n; ++j) {
        const auto ra = a.row(j);
        const auto rb = b.row(j);
        double acc = 0.0;
        for (int i = 0; i < n; ++i)
            acc += ra[i] * rb[i];
        sum += a.grid().areas()[j - 1] * acc;
    }
    return sum;
}

} // namespace sif
