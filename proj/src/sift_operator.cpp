#include "sif/sift_operator.hpp"

#include "sif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

namespace sif {

namespace {
constexpr double pi = std::numbers::pi;

struct Triple {
    int t;
    int s;
    double v;
};

std::vector<Band> merge_rows(int n, std::vector<std::vector<Triple>>& per_row)
{
    std::map<std::pair<int, int>, std::vector<double>> acc;
    for (int j0 = 0; j0 < n; ++j0)
        for (const Triple& e : per_row[j0]) {
            auto& vals = acc[{e.s, e.t}];
            if (vals.empty())
                vals.assign(n, 0.0);
            vals[j0] = e.v;
        }
    std::vector<Band> bands;
    bands.reserve(acc.size());
    for (auto& [key, vals] : acc)
        bands.push_back({key.second, key.first, std::move(vals)});
    return bands;
}

void check_radius(const ConeFilter& f)
{
    if (!(f.radius() < pi / 2))
        throw InvalidArgument("operator assembly needs R < pi/2, got R=" + std::to_string(f.radius()));
}
} // namespace

std::string to_string(OperatorKind k) { return k == OperatorKind::exact_b ? "exact" : "approx"; }

OperatorKind parse_operator_kind(const std::string& s)
{
    if (s == "exact" || s == "exact_b" || s == "B")
        return OperatorKind::exact_b;
    if (s == "approx" || s == "approx_op" || s == "Op")
        return OperatorKind::approx_op;
    throw InvalidArgument("unknown operator kind '" + s + "' (expected exact or approx)");
}

int canonical_offset(int t, int n) noexcept
{
    int r = t % n;
    if (r < 0)
        r += n;
    if (r > n / 2)
        r -= n;
    return r;
}

SiftOperator::SiftOperator(const SphereGrid& grid, const ConeFilter& filter, OperatorKind kind, int quad_level,
                           bool renormalized, std::vector<Band> bands)
    : grid_(grid), filter_(filter), kind_(kind), quad_level_(quad_level), renormalized_(renormalized),
      bands_(std::move(bands))
{
    const int n = grid_.n();
    for (std::size_t b = 0; b < bands_.size(); ++b) {
        Band& band = bands_[b];
        if (band.t != canonical_offset(band.t, n))
            throw InvalidArgument("band offset t=" + std::to_string(band.t) + " is not canonical");
        if (std::abs(band.s) >= n)
            throw InvalidArgument("band offset s=" + std::to_string(band.s) + " exceeds grid");
        if (band.values.size() != std::size_t(n))
            throw DimensionError("band length " + std::to_string(band.values.size()) + " != N");
        for (int j0 = 0; j0 < n; ++j0) {
            const double v = band.values[j0];
            if (!std::isfinite(v))
                throw InvalidArgument("band contains a non-finite value");
            const int q0 = j0 - band.s;
            if ((q0 < 0 || q0 >= n) && v != 0.0)
                throw InvalidArgument("band value points outside the latitude range");
        }
        if (!lookup_.emplace(std::make_pair(band.t, band.s), b).second)
            throw InvalidArgument("duplicate band (" + std::to_string(band.t) + "," + std::to_string(band.s) + ")");
    }
    index();
}

void SiftOperator::index()
{
    const int n = grid_.n();
    rows_.assign(n, {});
    trows_.assign(n, {});
    for (int j0 = 0; j0 < n; ++j0)
        for (const Band& band : bands_) {
            const double v = band.values[j0];
            const int q0 = j0 - band.s;
            if (v == 0.0 || q0 < 0 || q0 >= n)
                continue;
            const int shift = (band.t % n + n) % n;
            rows_[j0].push_back({shift, q0, v});
            trows_[q0].push_back({shift, j0, v});
        }
}

double SiftOperator::band_value(int t, int s, int j) const
{
    if (j < 1 || j > grid_.n())
        throw IndexError("latitude index " + std::to_string(j) + " out of range");
    const auto it = lookup_.find({canonical_offset(t, grid_.n()), s});
    return it == lookup_.end() ? 0.0 : bands_[it->second].values[j - 1];
}

bool SiftOperator::has_band(int t, int s) const
{
    return lookup_.count({canonical_offset(t, grid_.n()), s}) != 0;
}

double SiftOperator::entry(int i, int j, int p, int q) const
{
    const int n = grid_.n();
    if (i < 1 || i > n || j < 1 || j > n || p < 1 || p > n || q < 1 || q > n)
        throw IndexError("operator entry index out of range");
    return band_value(i - p, j - q, j);
}

std::vector<double> SiftOperator::row_sums() const
{
    std::vector<double> sums(grid_.n(), 0.0);
    for (int j0 = 0; j0 < grid_.n(); ++j0)
        for (const RowEntry& e : rows_[j0])
            sums[j0] += e.value;
    return sums;
}

std::size_t SiftOperator::nonzeros_per_longitude() const
{
    std::size_t c = 0;
    for (const auto& r : rows_)
        c += r.size();
    return c;
}

void SiftOperator::gather(const std::vector<std::vector<RowEntry>>& rows, const SphericalSignal& g,
                          SphericalSignal& out, int sign) const
{
    const int n = grid_.n();
#pragma omp parallel for schedule(static)
    for (int j0 = 0; j0 < n; ++j0) {
        double* o = out.values().data() + std::size_t(j0) * n;
        for (const RowEntry& e : rows[j0]) {
            const double* src = g.values().data() + std::size_t(e.other) * n;
            // source longitude is i - t (apply) or i + t (transpose)
            const int off = sign < 0 ? (n - e.shift) % n : e.shift;
            const double v = e.value;
            for (int i = 0; i < n - off; ++i)
                o[i] += v * src[i + off];
            for (int i = n - off; i < n; ++i)
                o[i] += v * src[i + off - n];
        }
    }
}

SphericalSignal SiftOperator::apply(const SphericalSignal& g) const
{
    require_same_grid(grid_, g.grid(), "operator apply");
    SphericalSignal out(grid_);
    gather(rows_, g, out, -1);
    return out;
}

SphericalSignal SiftOperator::apply_transpose(const SphericalSignal& g) const
{
    require_same_grid(grid_, g.grid(), "operator transpose apply");
    SphericalSignal out(grid_);
    gather(trows_, g, out, +1);
    return out;
}

SphericalSignal SiftOperator::sift(const SphericalSignal& g) const { return g - apply(g); }

SphericalSignal SiftOperator::sift_stabilized(const SphericalSignal& g) const
{
    return g - apply_transpose(apply(g));
}

Eigen::MatrixXd SiftOperator::to_dense(int max_n) const
{
    const int n = grid_.n();
    if (n > max_n)
        throw ResourceError("dense materialization capped at N=" + std::to_string(max_n) + ", got N="
                            + std::to_string(n));
    const int dim = n * n;
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(dim, dim);
    for (int j0 = 0; j0 < n; ++j0)
        for (const RowEntry& e : rows_[j0])
            for (int i0 = 0; i0 < n; ++i0) {
                const int p0 = ((i0 - e.shift) % n + n) % n;
                a(j0 * n + i0, e.other * n + p0) += e.value;
            }
    return a;
}

SiftOperator build_approx_op(const SphereGrid& grid, const ConeFilter& filter)
{
    check_radius(filter);
    const int n = grid.n();
    const int smax = std::min(n - 1, int(std::ceil(std::sqrt(3.0) * filter.cells_on(grid))) + 1);
    std::vector<std::vector<Triple>> per_row(n);
#pragma omp parallel for schedule(dynamic)
    for (int j = 1; j <= n; ++j) {
        const GridPoint zc = grid.center(1, j);
        for (int s = -smax; s <= smax; ++s) {
            const int q = j - s;
            if (q < 1 || q > n)
                continue;
            const double area = grid.cell_area(q);
            for (int t = n / 2 - n + 1; t <= n / 2; ++t) {
                if (!support_overlap(filter, grid, j, t, s))
                    continue;
                const int p = ((1 - t - 1) % n + n) % n + 1;
                const double v = area * filter.value(zc, grid.center(p, q));
                if (v > 0.0)
                    per_row[j - 1].push_back({t, s, v});
            }
        }
    }
    return SiftOperator(grid, filter, OperatorKind::approx_op, 0, false, merge_rows(n, per_row));
}

SiftOperator build_exact_b(const SphereGrid& grid, const ConeFilter& filter, const AssemblyOptions& opt)
{
    check_radius(filter);
    const int Q = opt.quad_level;
    if (Q < 2)
        throw InvalidArgument("quadrature level must be >= 2, got " + std::to_string(Q));
    const int n = grid.n();
    const double h = grid.h();
    const double R = filter.radius();
    // haversine of R; distances below come from the haversine form, acos loses ~1e-8 near zero
    const double havR = std::pow(std::sin(R / 2), 2);

    // sub-band latitudes and exact sub-cell areas (theta width 2h/Q included)
    std::vector<double> mphi(std::size_t(n) * Q), cphi(std::size_t(n) * Q), w(std::size_t(n) * Q);
    for (int j0 = 0; j0 < n; ++j0)
        for (int a = 0; a < Q; ++a) {
            const double lo = -pi / 2 + (j0 + double(a) / Q) * h;
            const double hi = -pi / 2 + (j0 + double(a + 1) / Q) * h;
            const double mid = -pi / 2 + (j0 + (a + 0.5) / Q) * h;
            mphi[j0 * Q + a] = mid;
            cphi[j0 * Q + a] = std::cos(mid);
            w[j0 * Q + a] = (2 * h / Q) * (std::sin(hi) - std::sin(lo)) / (4 * pi);
        }

    // candidates: centre distance below R plus both cell diameters
    std::vector<double> diam(n);
    for (int j = 1; j <= n; ++j)
        diam[j - 1] = grid.cell_diameter(j);
    const double dmax = *std::max_element(diam.begin(), diam.end());
    const double m_eff = (R + 2 * dmax) / h;
    const int smax = std::min(n - 1, int(std::ceil(std::sqrt(3.0) * m_eff)) + 1);

    std::vector<std::vector<std::tuple<int, int>>> cand(n);
    double evaluations = 0.0;
    for (int j = 1; j <= n; ++j) {
        const GridPoint zc = grid.center(1, j);
        for (int s = -smax; s <= smax; ++s) {
            const int q = j - s;
            if (q < 1 || q > n)
                continue;
            for (int t = n / 2 - n + 1; t <= n / 2; ++t) {
                if (!support_overlap_cells(m_eff, grid, j, t, s))
                    continue;
                const int p = ((-t) % n + n) % n + 1;
                if (arc_distance(zc, grid.center(p, q)) >= R + diam[j - 1] + diam[q - 1])
                    continue;
                cand[j - 1].emplace_back(t, s);
            }
        }
        evaluations += double(cand[j - 1].size()) * Q * Q * (2 * Q - 1);
    }
    if (evaluations > opt.max_kernel_evaluations)
        throw ResourceError("quadrature needs " + std::to_string(evaluations) + " kernel evaluations, budget is "
                            + std::to_string(opt.max_kernel_evaluations) + "; lower N or the quadrature level");

    const double scale = 2.0 / (R - std::sin(R));
    std::vector<std::vector<Triple>> per_row(n);
#pragma omp parallel for schedule(dynamic)
    for (int j0 = 0; j0 < n; ++j0) {
        std::vector<double> havd(2 * Q - 1);
        for (const auto& [t, s] : cand[j0]) {
            const int q0 = j0 - s;
            // theta offsets between sub-cells only enter through a - b
            for (int d = -(Q - 1); d <= Q - 1; ++d)
                havd[d + Q - 1] = std::pow(std::sin((2 * h * t + d * 2 * h / Q) / 2), 2);
            double total = 0.0;
            for (int a = 0; a < Q; ++a) {
                const double pa = mphi[j0 * Q + a], ca = cphi[j0 * Q + a];
                for (int b = 0; b < Q; ++b) {
                    const double hp = std::pow(std::sin((pa - mphi[q0 * Q + b]) / 2), 2);
                    const double cc = ca * cphi[q0 * Q + b];
                    double acc = 0.0;
                    for (int d = -(Q - 1); d <= Q - 1; ++d) {
                        const double hav = hp + cc * havd[d + Q - 1];
                        if (hav >= havR)
                            continue;
                        const double dist = 2 * std::asin(std::sqrt(hav));
                        acc += (Q - std::abs(d)) * (R - dist);
                    }
                    total += w[j0 * Q + a] * w[q0 * Q + b] * acc;
                }
            }
            const double v = scale * total / grid.areas()[j0];
            if (v > 0.0)
                per_row[j0].push_back({t, s, v});
        }
        if (opt.renormalize_rows) {
            double sum = 0.0;
            for (const Triple& e : per_row[j0])
                sum += e.v;
            if (sum > 0.0)
                for (Triple& e : per_row[j0])
                    e.v /= sum;
        }
    }
    return SiftOperator(grid, filter, OperatorKind::exact_b, Q, opt.renormalize_rows, merge_rows(n, per_row));
}

SiftOperator build_operator(const SphereGrid& grid, const ConeFilter& filter, OperatorKind kind,
                            const AssemblyOptions& opt)
{
    return kind == OperatorKind::exact_b ? build_exact_b(grid, filter, opt) : build_approx_op(grid, filter);
}

} // namespace sif
