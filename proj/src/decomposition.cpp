#include "sif/decomposition.hpp"

#include "sif/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sif {

namespace {
constexpr double pi = std::numbers::pi;
}

void DecompositionConfig::validate() const
{
    if (!(delta > 0.0))
        throw InvalidArgument("delta must be positive");
    if (max_inner_iterations < 1)
        throw InvalidArgument("max_inner_iterations must be >= 1");
    if (max_imfs < 0)
        throw InvalidArgument("max_imfs must be >= 0");
    if (!(radius_rule.value > 0.0))
        throw InvalidArgument(radius_rule.kind == RadiusRule::Kind::fixed ? "fixed radius must be positive"
                                                                            : "chi must be positive");
}

std::string to_string(StopReason r) { return r == StopReason::converged ? "converged" : "iteration_cap"; }

std::size_t count_extrema(const SphericalSignal& g)
{
    const int n = g.n();
    const auto v = g.values();
    std::size_t count = 0;
    for (int j0 = 0; j0 < n; ++j0)
        for (int i0 = 0; i0 < n; ++i0) {
            const double c = v[std::size_t(j0) * n + i0];
            bool is_max = true, is_min = true, any = false;
            for (int dj = -1; dj <= 1; ++dj) {
                const int q0 = j0 + dj;
                if (q0 < 0 || q0 >= n)
                    continue;
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0)
                        continue;
                    const int p0 = (i0 + di + n) % n;
                    if (p0 == i0 && q0 == j0)
                        continue;
                    const double x = v[std::size_t(q0) * n + p0];
                    any = true;
                    if (x >= c)
                        is_max = false;
                    if (x <= c)
                        is_min = false;
                }
            }
            if (any && (is_max || is_min))
                ++count;
        }
    return count;
}

double select_radius(const SphericalSignal& g, const DecompositionConfig& cfg)
{
    if (cfg.radius_rule.kind == RadiusRule::Kind::fixed)
        return cfg.radius_rule.value;
    const std::size_t e = count_extrema(g);
    if (e < 2)
        throw InvalidArgument("signal has " + std::to_string(e) + " extrema, radius rule needs at least 2");
    const double h = g.grid().h();
    const double r = cfg.radius_rule.value * 2.0 * std::sqrt(4 * pi / double(e));
    return std::clamp(r, 3 * h, pi / 2 - h);
}

double stopping_ratio(const SphericalSignal& next, const SphericalSignal& curr)
{
    require_same_grid(next.grid(), curr.grid(), "stopping ratio");
    const double den = curr.norm();
    if (!(den > 0.0))
        throw NumericalError("stopping ratio undefined for a zero iterate");
    return (next - curr).norm() / den;
}

std::pair<SphericalSignal, ImfDiagnostics> extract_imf(const SphericalSignal& g, const SiftOperator& op,
                                                       const DecompositionConfig& cfg)
{
    cfg.validate();
    require_same_grid(g.grid(), op.grid(), "imf extraction");
    ImfDiagnostics d;
    d.radius = op.filter().radius();
    d.extrema = count_extrema(g);
    SphericalSignal cur = g;
    for (int it = 1; it <= cfg.max_inner_iterations; ++it) {
        SphericalSignal next = cfg.stabilized ? op.sift_stabilized(cur) : op.sift(cur);
        if (!next.all_finite())
            throw NumericalError("sifting iterate became non-finite at iteration " + std::to_string(it));
        d.final_ratio = stopping_ratio(next, cur);
        d.iterations = it;
        cur = std::move(next);
        if (d.final_ratio <= cfg.delta) {
            d.reason = StopReason::converged;
            return {std::move(cur), d};
        }
    }
    d.reason = StopReason::iteration_cap;
    return {std::move(cur), d};
}

std::pair<SphericalSignal, ImfDiagnostics> extract_imf(const SphericalSignal& g, const DecompositionConfig& cfg)
{
    cfg.validate();
    const double r = select_radius(g, cfg);
    AssemblyOptions opt;
    opt.quad_level = cfg.quad_level;
    const SiftOperator op = build_operator(g.grid(), ConeFilter::from_radius(r), cfg.kind, opt);
    return extract_imf(g, op, cfg);
}

DecompositionResult decompose(const SphericalSignal& g, const DecompositionConfig& cfg)
{
    cfg.validate();
    DecompositionResult res{{}, g, {}};
    while (int(res.imfs.size()) < cfg.max_imfs && count_extrema(res.remainder) >= 2) {
        if (!(res.remainder.norm() > 0.0))
            break;
        auto [imf, diag] = extract_imf(res.remainder, cfg);
        res.remainder -= imf;
        res.imfs.push_back(std::move(imf));
        res.diagnostics.push_back(diag);
    }
    return res;
}

} // namespace sif
