#include "sif/signal_synth.hpp"

#include "sif/errors.hpp"

#include <cmath>
#include <numbers>

namespace sif {

namespace {
constexpr double pi = std::numbers::pi;
constexpr double taper_fraction = 0.15;
} // namespace

double taper(double d, double support)
{
    const double start = (1.0 - taper_fraction) * support;
    if (d <= start)
        return 1.0;
    if (d >= support)
        return 0.0;
    return 0.5 * (1.0 + std::cos(pi * (d - start) / (support - start)));
}

SphericalSignal circular_wave(const SphereGrid& grid, const WaveSpec& spec)
{
    if (!(spec.angular_frequency > 0.0) || !std::isfinite(spec.angular_frequency))
        throw InvalidArgument("wave frequency must be positive");
    if (!std::isfinite(spec.amplitude))
        throw InvalidArgument("wave amplitude must be finite");
    if (spec.support_radius && !(*spec.support_radius > 0.0 && *spec.support_radius <= pi))
        throw InvalidArgument("wave support radius must lie in (0, pi]");
    if (!(spec.center.phi >= -pi / 2 && spec.center.phi <= pi / 2))
        throw InvalidArgument("wave centre latitude outside [-pi/2, pi/2]");
    SphericalSignal g(grid);
    const int n = grid.n();
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            const double d = arc_distance(grid.center(i, j), spec.center);
            const double w = spec.support_radius ? taper(d, *spec.support_radius) : 1.0;
            g.values()[std::size_t(j - 1) * n + (i - 1)] = spec.amplitude * std::cos(spec.angular_frequency * d) * w;
        }
    return g;
}

TwoWavePreset two_wave_preset()
{
    TwoWavePreset p;
    p.fast = {{pi / 2, pi / 6}, 12.0, 1.0, pi / 3};
    p.slow = {{3 * pi / 2, -pi / 6}, 6.0, 1.0, pi / 3};
    return p;
}

SphericalSignal preset_signal(const SphereGrid& grid, const std::string& name)
{
    if (name != "two-wave")
        throw InvalidArgument("unknown preset '" + name + "' (available: two-wave)");
    const TwoWavePreset p = two_wave_preset();
    return circular_wave(grid, p.fast) + circular_wave(grid, p.slow);
}

double weighted_l2_error(const SphericalSignal& a, const SphericalSignal& b) { return (a - b).norm(); }

SphericalSignal error_map(const SphericalSignal& a, const SphericalSignal& b)
{
    SphericalSignal e = a - b;
    for (double& x : e.values())
        x = std::abs(x);
    return e;
}

std::vector<double> error_curve(const SphericalSignal& g, const SphericalSignal& truth, const SiftOperator& op,
                                bool stabilized, int iterations)
{
    if (iterations < 0)
        throw InvalidArgument("iteration count must be >= 0");
    require_same_grid(g.grid(), truth.grid(), "error curve");
    require_same_grid(g.grid(), op.grid(), "error curve");
    std::vector<double> curve;
    curve.reserve(iterations + 1);
    SphericalSignal cur = g;
    curve.push_back(weighted_l2_error(cur, truth));
    for (int p = 0; p < iterations; ++p) {
        cur = stabilized ? op.sift_stabilized(cur) : op.sift(cur);
        curve.push_back(weighted_l2_error(cur, truth));
    }
    return curve;
}

} // namespace sif
