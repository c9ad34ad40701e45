#include "sif/sphere_grid.hpp"

#include "sif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sif {

namespace {
constexpr double pi = std::numbers::pi;
}

SphereGrid::SphereGrid(int n) : n_(n), h_(0.0)
{
    if (n < 2)
        throw InvalidArgument("grid needs N >= 2, got " + std::to_string(n));
    h_ = pi / n;
    area_.resize(n);
    for (int j = 1; j <= n; ++j)
        area_[j - 1] = h_ / (2 * pi) * (std::cos((j - 1) * h_) - std::cos(j * h_));
}

SphereGrid make_grid(int n) { return SphereGrid(n); }

void SphereGrid::check_i(int i) const
{
    if (i < 1 || i > n_)
        throw IndexError("longitude index " + std::to_string(i) + " outside 1.." + std::to_string(n_));
}

void SphereGrid::check_j(int j) const
{
    if (j < 1 || j > n_)
        throw IndexError("latitude index " + std::to_string(j) + " outside 1.." + std::to_string(n_));
}

double SphereGrid::longitude(int i) const
{
    check_i(i);
    return (2 * i - 1) * h_;
}

double SphereGrid::latitude(int j) const
{
    check_j(j);
    return -pi / 2 + (j - 0.5) * h_;
}

GridPoint SphereGrid::center(int i, int j) const { return {longitude(i), latitude(j)}; }

Cell SphereGrid::cell(int i, int j) const
{
    check_i(i);
    check_j(j);
    Cell c;
    c.i = i;
    c.j = j;
    c.theta_lo = 2 * (i - 1) * h_;
    c.theta_hi = 2 * i * h_;
    c.phi_lo = -pi / 2 + (j - 1) * h_;
    c.phi_hi = -pi / 2 + j * h_;
    return c;
}

double SphereGrid::cell_area(int j) const
{
    check_j(j);
    return area_[j - 1];
}

double SphereGrid::cell_area_leading(int j) const
{
    check_j(j);
    return h_ * h_ * std::sin(j * h_) / (2 * pi);
}

double SphereGrid::cell_diameter(int j) const
{
    const Cell c = cell(1, j);
    return arc_distance({c.theta_lo, c.phi_lo}, {c.theta_hi, c.phi_hi});
}

double SphereGrid::cell_diameter_leading(int j) const
{
    check_j(j);
    const double sj = std::sin(j * h_);
    return h_ * std::sqrt(1 + 4 * sj * sj);
}

double SphereGrid::max_cell_diameter() const
{
    double d = 0.0;
    for (int j = 1; j <= n_; ++j)
        d = std::max(d, cell_diameter(j));
    return d;
}

double SphereGrid::approx_distance(int j, int t, int s) const
{
    const double sj = std::sin(j * h_);
    return h_ * std::sqrt(double(s) * s + 4.0 * t * t * sj * sj);
}

double SphereGrid::total_area() const
{
    double sum = 0.0;
    for (double a : area_)
        sum += a;
    return sum * n_;
}

double SphereGrid::min_cell_area() const { return *std::min_element(area_.begin(), area_.end()); }

double SphereGrid::max_cell_area() const { return *std::max_element(area_.begin(), area_.end()); }

double wrap_longitude(double theta)
{
    double t = std::fmod(theta, 2 * pi);
    if (t < 0)
        t += 2 * pi;
    if (t >= 2 * pi)
        t = 0.0;
    return t;
}

// atan2 form of the great-circle distance. Same value as the arccos of the
// clamped dot product but without the ~1e-8 floor near coincident points.
double arc_distance(const GridPoint& a, const GridPoint& b)
{
    // fixed argument order keeps d(a, b) == d(b, a) bit for bit
    const bool swap = a.phi > b.phi || (a.phi == b.phi && a.theta > b.theta);
    const GridPoint& p = swap ? b : a;
    const GridPoint& q = swap ? a : b;
    const double dtheta = std::fmod(p.theta - q.theta, 2 * pi);
    const double sp = std::sin(p.phi), cp = std::cos(p.phi);
    const double sq = std::sin(q.phi), cq = std::cos(q.phi);
    const double cd = std::cos(dtheta), sd = std::sin(dtheta);
    const double x = cq * sd;
    const double y = cp * sq - sp * cq * cd;
    const double dot = std::clamp(sp * sq + cp * cq * cd, -1.0, 1.0);
    return std::atan2(std::sqrt(x * x + y * y), dot);
}

} // namespace sif
