#pragma once

#include "sif/sift_operator.hpp"
#include "sif/spherical_signal.hpp"

#include <string>
#include <utility>
#include <vector>

namespace sif {

struct RadiusRule {
    enum class Kind { fixed, extrema_scaled };
    Kind kind = Kind::extrema_scaled;
    double value = 1.6; // R for fixed, chi for extrema_scaled

    static RadiusRule fixed(double r) { return {Kind::fixed, r}; }
    static RadiusRule extrema_scaled(double chi = 1.6) { return {Kind::extrema_scaled, chi}; }
};

struct DecompositionConfig {
    double delta = 1e-3;
    int max_inner_iterations = 200;
    int max_imfs = 8;
    RadiusRule radius_rule = RadiusRule::extrema_scaled();
    bool stabilized = true;
    OperatorKind kind = OperatorKind::approx_op;
    int quad_level = 4;

    void validate() const;
};

enum class StopReason { converged, iteration_cap };
std::string to_string(StopReason r);

struct ImfDiagnostics {
    int iterations = 0;
    double radius = 0.0;
    StopReason reason = StopReason::iteration_cap;
    double final_ratio = 0.0;
    std::size_t extrema = 0;
};

struct DecompositionResult {
    std::vector<SphericalSignal> imfs;
    SphericalSignal remainder;
    std::vector<ImfDiagnostics> diagnostics;
};

// strict maxima plus strict minima over the 8-neighbourhood, longitude wraps,
// no neighbours across the poles
std::size_t count_extrema(const SphericalSignal& g);

double select_radius(const SphericalSignal& g, const DecompositionConfig& cfg);

// ||next - curr|| / ||curr||, area weighted
double stopping_ratio(const SphericalSignal& next, const SphericalSignal& curr);

std::pair<SphericalSignal, ImfDiagnostics> extract_imf(const SphericalSignal& g, const DecompositionConfig& cfg);
// same iteration with a prebuilt operator
std::pair<SphericalSignal, ImfDiagnostics> extract_imf(const SphericalSignal& g, const SiftOperator& op,
                                                       const DecompositionConfig& cfg);

DecompositionResult decompose(const SphericalSignal& g, const DecompositionConfig& cfg);

} // namespace sif
