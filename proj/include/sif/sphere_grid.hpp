#pragma once

#include <cstddef>
#include <vector>

namespace sif {

// theta in [0, 2pi), phi in [-pi/2, pi/2]
struct GridPoint {
    double theta = 0.0;
    double phi = 0.0;
};

struct Cell {
    int i = 1;
    int j = 1;
    double theta_lo = 0.0, theta_hi = 0.0;
    double phi_lo = 0.0, phi_hi = 0.0;
};

// Equiangular latitude-longitude grid with N x N cells. Longitude cells are
// 2h wide, latitude cells h tall, h = pi/N. Indices are 1-based.
class SphereGrid {
public:
    explicit SphereGrid(int n);

    int n() const noexcept { return n_; }
    double h() const noexcept { return h_; }
    std::size_t size() const noexcept { return static_cast<std::size_t>(n_) * n_; }

    double longitude(int i) const;
    double latitude(int j) const;
    GridPoint center(int i, int j) const;
    Cell cell(int i, int j) const;

    // normalized area, the whole sphere has area 1
    double cell_area(int j) const;
    double cell_area_leading(int j) const;
    const std::vector<double>& areas() const noexcept { return area_; }

    // corner to corner arc length
    double cell_diameter(int j) const;
    double cell_diameter_leading(int j) const;
    double max_cell_diameter() const;

    double approx_distance(int j, int t, int s) const;

    double total_area() const;
    double min_cell_area() const;
    double max_cell_area() const;

    bool operator==(const SphereGrid& o) const noexcept { return n_ == o.n_; }

private:
    void check_i(int i) const;
    void check_j(int j) const;

    int n_;
    double h_;
    std::vector<double> area_;
};

SphereGrid make_grid(int n);

double arc_distance(const GridPoint& p, const GridPoint& q);

// wrap to [0, 2pi)
double wrap_longitude(double theta);

} // namespace sif
