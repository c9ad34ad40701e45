#pragma once

#include "sif/sphere_grid.hpp"

#include <cmath>
#include <optional>

namespace sif {

// Truncated cone f(w) = 2 (R - d(c, w))^+ / (R - sin R), unit mass under the
// normalized area measure.
class ConeFilter {
public:
    static ConeFilter from_radius(double radius);
    // R = m h on the given grid
    static ConeFilter from_cells(double m, const SphereGrid& grid);

    double radius() const noexcept { return radius_; }
    std::optional<double> cells() const noexcept { return cells_; }
    // m for the given grid, pinned value if present
    double cells_on(const SphereGrid& grid) const noexcept;
    double normalization() const noexcept { return 0.5 * (radius_ - std::sin(radius_)); }

    double peak() const noexcept { return 2.0 * radius_ / (radius_ - std::sin(radius_)); }
    double value_at_distance(double d) const noexcept;
    double value(const GridPoint& center, const GridPoint& w) const;

private:
    ConeFilter(double r, std::optional<double> m) : radius_(r), cells_(m), scale_(2.0 / (r - std::sin(r))) {}

    double radius_;
    std::optional<double> cells_;
    double scale_;
};

// Mass of the filter centred at the north pole, composite midpoint rule with
// `level` x (2 level) cells in (phi, theta) over the polar cap phi >= pi/2 - R.
double verify_unit_mass(const ConeFilter& f, int level);

// false when the entry ((i,j),(i-t,j-s)) is guaranteed zero for centre samples
bool support_overlap(const ConeFilter& f, const SphereGrid& grid, int j, int t, int s);
bool support_overlap_cells(double m, const SphereGrid& grid, int j, int t, int s);

} // namespace sif
