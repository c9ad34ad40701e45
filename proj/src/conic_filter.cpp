#include "sif/conic_filter.hpp"

#include "sif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <string>

namespace sif {

namespace {
constexpr double pi = std::numbers::pi;
}

ConeFilter ConeFilter::from_radius(double radius)
{
    if (!(radius > 0.0 && radius < pi))
        throw InvalidArgument("filter radius must lie in (0, pi), got " + std::to_string(radius));
    return ConeFilter(radius, std::nullopt);
}

ConeFilter ConeFilter::from_cells(double m, const SphereGrid& grid)
{
    if (!(m > 0.0))
        throw InvalidArgument("filter width m must be positive, got " + std::to_string(m));
    const double r = m * grid.h();
    if (!(r < pi))
        throw InvalidArgument("filter radius m*h must be below pi, got " + std::to_string(r));
    return ConeFilter(r, m);
}

double ConeFilter::cells_on(const SphereGrid& grid) const noexcept
{
    return cells_ ? *cells_ : radius_ / grid.h();
}

double ConeFilter::value_at_distance(double d) const noexcept
{
    return d < radius_ ? scale_ * (radius_ - d) : 0.0;
}

double ConeFilter::value(const GridPoint& center, const GridPoint& w) const
{
    return value_at_distance(arc_distance(center, w));
}

double verify_unit_mass(const ConeFilter& f, int level)
{
    if (level < 1)
        throw InvalidArgument("quadrature level must be >= 1");
    // centred at the pole the integrand depends on phi only, but integrate in
    // both angles so the rule matches the one used for operator entries
    const int np = level;
    const int nt = 2 * level;
    const double dphi = f.radius() / np;
    const double dtheta = 2 * pi / nt;
    const GridPoint pole{0.0, pi / 2};
    double mass = 0.0;
    for (int a = 0; a < np; ++a) {
        const double phi = pi / 2 - (a + 0.5) * dphi;
        double ring = 0.0;
        for (int b = 0; b < nt; ++b)
            ring += f.value(pole, {(b + 0.5) * dtheta, phi});
        mass += ring * std::cos(phi);
    }
    return mass * dphi * dtheta / (4 * pi);
}

bool support_overlap_cells(double m, const SphereGrid& grid, int j, int t, int s)
{
    const int n = grid.n();
    const double h = grid.h();
    int tt = std::abs(t) % n;
    tt = std::min(tt, n - tt);
    const double lhs = double(s) * s + std::sin(j * h) * std::sin((j - s) * h) * double(tt) * tt;
    // a little slack so rounding never prunes a boundary entry
    return 3.0 * m * m * (1 + 1e-12) + 1e-12 > lhs;
}

bool support_overlap(const ConeFilter& f, const SphereGrid& grid, int j, int t, int s)
{
    return support_overlap_cells(f.cells_on(grid), grid, j, t, s);
}

} // namespace sif
