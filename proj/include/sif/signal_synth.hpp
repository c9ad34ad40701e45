#pragma once

#include "sif/sift_operator.hpp"
#include "sif/sphere_grid.hpp"
#include "sif/spherical_signal.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sif {

struct WaveSpec {
    GridPoint center;
    double angular_frequency = 1.0; // k in cos(k d)
    double amplitude = 1.0;
    std::optional<double> support_radius; // unbounded when empty
};

// amplitude cos(k d) w(d), w a raised-cosine taper over the outer 15% of the support
SphericalSignal circular_wave(const SphereGrid& grid, const WaveSpec& spec);
double taper(double d, double support);

struct TwoWavePreset {
    WaveSpec fast;
    WaveSpec slow;
};
TwoWavePreset two_wave_preset();
SphericalSignal preset_signal(const SphereGrid& grid, const std::string& name);

double weighted_l2_error(const SphericalSignal& a, const SphericalSignal& b);
SphericalSignal error_map(const SphericalSignal& a, const SphericalSignal& b);

// errors vs ground truth for p = 0..iterations (p = 0 is the input itself)
std::vector<double> error_curve(const SphericalSignal& g, const SphericalSignal& truth, const SiftOperator& op,
                                bool stabilized, int iterations);

} // namespace sif
