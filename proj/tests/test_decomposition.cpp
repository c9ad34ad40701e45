#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sif/decomposition.hpp"
#include "sif/errors.hpp"
#include "sif/signal_synth.hpp"
#include "sif/spectrum.hpp"

#include <cmath>
#include <cstring>
#include <numbers>
#include <random>

using namespace sif;
using std::numbers::pi;

namespace {
// explicit neighbourhood scan, written independently of the library
std::size_t brute_extrema(const SphericalSignal& g)
{
    const int n = g.grid().n();
    std::size_t count = 0;
    for (int j = 1; j <= n; ++j)
        for (int i = 1; i <= n; ++i) {
            const double v = g.at(i, j);
            bool is_max = true, is_min = true;
            for (int dj = -1; dj <= 1; ++dj) {
                const int q = j + dj;
                if (q < 1 || q > n)
                    continue;
                for (int di = -1; di <= 1; ++di) {
                    if (di == 0 && dj == 0)
                        continue;
                    int p = i + di;
                    if (p < 1)
                        p += n;
                    if (p > n)
                        p -= n;
                    const double w = g.at(p, q);
                    if (!(v > w))
                        is_max = false;
                    if (!(v < w))
                        is_min = false;
                }
            }
            count += is_max ? 1 : 0;
            count += is_min ? 1 : 0;
        }
    return count;
}

SphericalSignal random_signal(const SphereGrid& g, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> nd;
    std::vector<double> v(g.size());
    for (double& x : v)
        x = nd(rng);
    return SphericalSignal(g, v);
}

bool same_bits(const SphericalSignal& a, const SphericalSignal& b)
{
    return a.values().size() == b.values().size()
        && std::memcmp(a.values().data(), b.values().data(), a.values().size() * sizeof(double)) == 0;
}
} // namespace

TEST_CASE("extrema counting")
{
    const SphereGrid g(16);
    CHECK(count_extrema(SphericalSignal(g, 3.0)) == 0);

    SphericalSignal spike(g);
    spike.at(4, 9) = 1.0;
    CHECK(count_extrema(spike) == 1);
    // longitude wrap: a spike on i = 1 sees i = N as a neighbour
    SphericalSignal edge(g);
    edge.at(1, 5) = 1.0;
    edge.at(16, 5) = 2.0;
    CHECK(count_extrema(edge) == 1);
    // two cells in the polar rows at opposite longitudes are not neighbours
    SphericalSignal poles(g);
    poles.at(1, 16) = 1.0;
    poles.at(9, 16) = 1.0;
    CHECK(count_extrema(poles) == 2);

    for (unsigned seed = 1; seed <= 20; ++seed) {
        const SphericalSignal r = random_signal(SphereGrid(5 + int(seed)), seed);
        CHECK(count_extrema(r) == brute_extrema(r));
    }
    const SphereGrid g64(64);
    for (double k : {6.0, 10.0, 17.0}) {
        const SphericalSignal w = circular_wave(g64, {{1.0, 0.3}, k});
        const std::size_t e = count_extrema(w);
        CHECK(e == brute_extrema(w));
        CHECK(e >= 1);
    }
}

TEST_CASE("radius selection")
{
    const SphereGrid g(40);
    DecompositionConfig cfg;
    cfg.radius_rule = RadiusRule::fixed(pi / 20);
    CHECK(select_radius(SphericalSignal(g, 1.0), cfg) == pi / 20);
    CHECK(select_radius(random_signal(g, 3), cfg) == pi / 20);

    // sixteen isolated spikes: E = 16, 3.2 sqrt(pi/4) exceeds pi/2 - h
    SphericalSignal spikes(g);
    for (int k = 0; k < 16; ++k)
        spikes.at(1 + 10 * (k % 4), 5 + 10 * (k / 4)) = 1.0;
    REQUIRE(count_extrema(spikes) == 16);
    cfg.radius_rule = RadiusRule::extrema_scaled(1.6);
    CHECK(1.6 * 2 * std::sqrt(4 * pi / 16) == doctest::Approx(2.835).epsilon(1e-3));
    CHECK(select_radius(spikes, cfg) == doctest::Approx(pi / 2 - g.h()).epsilon(1e-15));

    // unclamped case
    const SphericalSignal r = random_signal(g, 8);
    const double e = double(count_extrema(r));
    const double expect = 1.6 * 2 * std::sqrt(4 * pi / e);
    REQUIRE(expect > 3 * g.h());
    CHECK(select_radius(r, cfg) == doctest::Approx(expect).epsilon(1e-15));
    // lower clamp
    cfg.radius_rule = RadiusRule::extrema_scaled(0.01);
    CHECK(select_radius(r, cfg) == doctest::Approx(3 * g.h()).epsilon(1e-15));

    CHECK_THROWS_AS(select_radius(SphericalSignal(g, 1.0), cfg), InvalidArgument);
    SphericalSignal one(g);
    one.at(3, 3) = 1.0;
    CHECK_THROWS_AS(select_radius(one, cfg), InvalidArgument);
}

TEST_CASE("stopping ratio")
{
    const SphereGrid g(12);
    const SphericalSignal a = random_signal(g, 1);
    CHECK(stopping_ratio(a, a) == 0.0);
    CHECK(stopping_ratio(2.0 * a, a) == doctest::Approx(1.0).epsilon(1e-15));
    const SphericalSignal e = random_signal(g, 2);
    const double delta = 1e-3;
    const SphericalSignal next = a + (delta * a.norm() / e.norm()) * e;
    CHECK(stopping_ratio(next, a) == doctest::Approx(delta).epsilon(1e-12));
    CHECK_THROWS_AS(stopping_ratio(a, SphericalSignal(g)), NumericalError);
    CHECK_THROWS_AS(stopping_ratio(a, SphericalSignal(SphereGrid(13))), DimensionError);
}

TEST_CASE("configuration checks")
{
    DecompositionConfig cfg;
    CHECK_NOTHROW(cfg.validate());
    cfg.delta = 0.0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = {};
    cfg.max_inner_iterations = 0;
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    cfg = {};
    cfg.radius_rule = RadiusRule::fixed(-1.0);
    CHECK_THROWS_AS(cfg.validate(), InvalidArgument);
    CHECK(to_string(StopReason::converged) == "converged");
    CHECK(to_string(StopReason::iteration_cap) == "iteration_cap");
}

TEST_CASE("inner loop")
{
    const SphereGrid g(24);
    const SiftOperator op = build_approx_op(g, ConeFilter::from_radius(pi / 8));
    const SphericalSignal x = random_signal(g, 4);
    DecompositionConfig cfg;
    cfg.delta = 1e-4;
    cfg.max_inner_iterations = 30;
    for (bool stab : {true, false}) {
        cfg.stabilized = stab;
        const auto [imf, d] = extract_imf(x, op, cfg);
        // replay by hand
        SphericalSignal cur = x;
        int it = 0;
        double ratio = 0.0;
        while (it < cfg.max_inner_iterations) {
            const SphericalSignal next = stab ? op.sift_stabilized(cur) : op.sift(cur);
            ratio = (next - cur).norm() / cur.norm();
            cur = next;
            ++it;
            if (ratio <= cfg.delta)
                break;
        }
        CHECK(d.iterations == it);
        CHECK(d.final_ratio == ratio);
        CHECK(same_bits(imf, cur));
        CHECK(d.reason == (ratio <= cfg.delta ? StopReason::converged : StopReason::iteration_cap));
        CHECK(d.radius == pi / 8);
        CHECK(d.extrema == count_extrema(x));
    }

    // a zero operator leaves every signal fixed
    const SiftOperator zero(g, ConeFilter::from_radius(0.3), OperatorKind::approx_op, 0, false, {});
    const auto [imf, d] = extract_imf(x, zero, cfg);
    CHECK(d.iterations == 1);
    CHECK(d.final_ratio == 0.0);
    CHECK(d.reason == StopReason::converged);
    CHECK(same_bits(imf, x));

    CHECK_THROWS_AS(extract_imf(random_signal(SphereGrid(10), 1), op, cfg), DimensionError);
}

TEST_CASE("stabilized iterates do not grow once the cone spans a couple of cells")
{
    // I - Op^T Op is non-expansive exactly when lambda_max(Op^T Op) <= 2; below about
    // 1.5 cells the diagonal dominates and that fails
    for (int n : {16, 32}) {
        const SphereGrid g(n);
        for (double m : {1.33, 2.0, 3.0, 5.0}) {
            const SiftOperator op = build_approx_op(g, ConeFilter::from_cells(m, g));
            const double top = eig_block_circulant(op, SpectralTarget::normal).max_real();
            SphericalSignal cur = random_signal(g, unsigned(n));
            double prev = cur.norm(), worst = 0.0;
            for (int it = 0; it < 60; ++it) {
                cur = op.sift_stabilized(cur);
                worst = std::max(worst, cur.norm() / prev - 1.0);
                prev = cur.norm();
            }
            if (m >= 2.0) {
                CHECK(top <= 2.0);
                CHECK(worst <= 1e-12);
            } else {
                CHECK(top > 2.0);
                CHECK(worst > 0.1);
            }
        }
    }
}

TEST_CASE("decomposition bookkeeping")
{
    const SphereGrid g(20);
    DecompositionConfig cfg;
    cfg.radius_rule = RadiusRule::fixed(pi / 8);
    cfg.max_imfs = 3;
    cfg.max_inner_iterations = 20;

    const DecompositionResult c = decompose(SphericalSignal(g, 2.0), cfg);
    CHECK(c.imfs.empty());
    CHECK(same_bits(c.remainder, SphericalSignal(g, 2.0)));

    const SphericalSignal x = random_signal(g, 6);
    const DecompositionResult r = decompose(x, cfg);
    CHECK(r.imfs.size() == 3);
    CHECK(r.diagnostics.size() == r.imfs.size());
    SphericalSignal sum = r.remainder;
    for (const auto& imf : r.imfs)
        sum += imf;
    for (std::size_t k = 0; k < sum.values().size(); ++k)
        CHECK(std::abs(sum.values()[k] - x.values()[k]) <= 1e-12);

    const DecompositionResult again = decompose(x, cfg);
    for (std::size_t k = 0; k < r.imfs.size(); ++k)
        CHECK(same_bits(r.imfs[k], again.imfs[k]));
    CHECK(same_bits(r.remainder, again.remainder));

    cfg.max_imfs = 0;
    CHECK(decompose(x, cfg).imfs.empty());
}

TEST_CASE("single wave over a constant offset")
{
    const SphereGrid g(64);
    const SphericalSignal wave = circular_wave(g, {{pi / 2, 0.0}, 12.0});
    const SphericalSignal offset(g, 0.5);
    DecompositionConfig cfg;
    cfg.radius_rule = RadiusRule::extrema_scaled(1.6);
    const DecompositionResult r = decompose(wave + offset, cfg);
    REQUIRE(!r.imfs.empty());
    const double imf_err = weighted_l2_error(r.imfs[0], wave) / wave.norm();
    const double rem_err = weighted_l2_error(r.remainder, offset) / offset.norm();
    double later = 0.0;
    for (std::size_t k = 1; k < r.imfs.size(); ++k)
        later = std::max(later, r.imfs[k].norm() / wave.norm());
    MESSAGE("imfs " << r.imfs.size() << ", imf1 err " << imf_err << ", remainder err " << rem_err
                    << ", largest later imf " << later);
    CHECK(imf_err <= 0.2);
    CHECK(rem_err <= 0.2);
    CHECK(later <= 0.2);
}
