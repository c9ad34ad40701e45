#include "sif/spectrum.hpp"

#include "sif/errors.hpp"
#include "sif/glt_symbol.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <numbers>

namespace sif {

namespace {
constexpr double pi = std::numbers::pi;

using steady = std::chrono::steady_clock;

double since(steady::time_point t0) { return std::chrono::duration<double>(steady::now() - t0).count(); }

SpectrumReport base_report(const SiftOperator& op, SpectrumMethod method, SpectralTarget target)
{
    SpectrumReport r;
    r.method = method;
    r.target = target;
    r.n = op.grid().n();
    r.radius = op.filter().radius();
    r.cells = op.filter().cells();
    r.kind = op.kind();
    r.quad_level = op.quad_level();
    return r;
}

bool symmetric_target(SpectralTarget t) { return t == SpectralTarget::normal || t == SpectralTarget::stabilized_sifting; }
} // namespace

std::string to_string(SpectrumMethod m)
{
    switch (m) {
    case SpectrumMethod::dense: return "dense";
    case SpectrumMethod::block_circulant: return "block";
    case SpectrumMethod::glt_symbol: return "symbol";
    }
    return "?";
}

std::string to_string(SpectralTarget t)
{
    switch (t) {
    case SpectralTarget::average: return "B";
    case SpectralTarget::sifting: return "I-B";
    case SpectralTarget::normal: return "BtB";
    case SpectralTarget::stabilized_sifting: return "I-BtB";
    }
    return "?";
}

SpectrumMethod parse_spectrum_method(const std::string& s)
{
    if (s == "dense")
        return SpectrumMethod::dense;
    if (s == "block" || s == "block_circulant")
        return SpectrumMethod::block_circulant;
    if (s == "symbol" || s == "glt")
        return SpectrumMethod::glt_symbol;
    throw InvalidArgument("unknown spectrum method '" + s + "' (expected dense, block or symbol)");
}

SpectralTarget parse_spectral_target(const std::string& s)
{
    if (s == "B")
        return SpectralTarget::average;
    if (s == "I-B")
        return SpectralTarget::sifting;
    if (s == "BtB")
        return SpectralTarget::normal;
    if (s == "I-BtB")
        return SpectralTarget::stabilized_sifting;
    throw InvalidArgument("unknown spectral target '" + s + "' (expected B, I-B, BtB or I-BtB)");
}

double SpectrumReport::min_real() const
{
    double v = std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues)
        v = std::min(v, z.real());
    return v;
}

double SpectrumReport::max_real() const
{
    double v = -std::numeric_limits<double>::infinity();
    for (const auto& z : eigenvalues)
        v = std::max(v, z.real());
    return v;
}

double SpectrumReport::max_abs_imag() const
{
    double v = 0.0;
    for (const auto& z : eigenvalues)
        v = std::max(v, std::abs(z.imag()));
    return v;
}

std::vector<double> SpectrumReport::real_parts() const
{
    std::vector<double> r(eigenvalues.size());
    for (std::size_t k = 0; k < r.size(); ++k)
        r[k] = eigenvalues[k].real();
    return r;
}

void sort_spectrum(std::vector<std::complex<double>>& v)
{
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
        return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
    });
}

SpectrumReport eig_dense(const SiftOperator& op, SpectralTarget target, int dense_cap)
{
    const auto t0 = steady::now();
    SpectrumReport r = base_report(op, SpectrumMethod::dense, target);
    const Eigen::MatrixXd b = op.to_dense(dense_cap);
    const Eigen::Index dim = b.rows();
    if (symmetric_target(target)) {
        Eigen::MatrixXd a = b.transpose() * b;
        if (target == SpectralTarget::stabilized_sifting)
            a = Eigen::MatrixXd::Identity(dim, dim) - a;
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(a, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success)
            throw NumericalError("symmetric eigensolver failed");
        for (Eigen::Index k = 0; k < dim; ++k)
            r.eigenvalues.emplace_back(es.eigenvalues()(k), 0.0);
    } else {
        Eigen::MatrixXd a = b;
        if (target == SpectralTarget::sifting)
            a = Eigen::MatrixXd::Identity(dim, dim) - b;
        Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
        if (es.info() != Eigen::Success)
            throw NumericalError("nonsymmetric eigensolver failed");
        r.eigenvalues.assign(es.eigenvalues().begin(), es.eigenvalues().end());
    }
    sort_spectrum(r.eigenvalues);
    r.seconds = since(t0);
    return r;
}

std::vector<Eigen::MatrixXcd> longitude_blocks(const SiftOperator& op)
{
    const int n = op.grid().n();
    std::vector<std::complex<double>> tw(n);
    for (int r = 0; r < n; ++r)
        tw[r] = std::polar(1.0, -2 * pi * r / n);
    std::vector<Eigen::MatrixXcd> blocks(n, Eigen::MatrixXcd::Zero(n, n));
#pragma omp parallel for schedule(static)
    for (int k = 0; k < n; ++k) {
        Eigen::MatrixXcd& hk = blocks[k];
        for (const Band& band : op.bands()) {
            const int shift = (band.t % n + n) % n;
            const std::complex<double> w = tw[(std::int64_t(shift) * k) % n];
            for (int j0 = 0; j0 < n; ++j0) {
                const int q0 = j0 - band.s;
                if (q0 < 0 || q0 >= n || band.values[j0] == 0.0)
                    continue;
                hk(j0, q0) += band.values[j0] * w;
            }
        }
    }
    return blocks;
}

SpectrumReport eig_block_circulant(const SiftOperator& op, SpectralTarget target)
{
    const auto t0 = steady::now();
    SpectrumReport r = base_report(op, SpectrumMethod::block_circulant, target);
    const int n = op.grid().n();
    const auto blocks = longitude_blocks(op);
    std::vector<std::vector<std::complex<double>>> parts(n);
    bool failed = false;
#pragma omp parallel for schedule(dynamic)
    for (int k = 0; k < n; ++k) {
        const Eigen::MatrixXcd& hk = blocks[k];
        const Eigen::MatrixXcd id = Eigen::MatrixXcd::Identity(n, n);
        if (symmetric_target(target)) {
            Eigen::MatrixXcd a = hk.adjoint() * hk;
            if (target == SpectralTarget::stabilized_sifting)
                a = id - a;
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(a, Eigen::EigenvaluesOnly);
            if (es.info() != Eigen::Success) {
#pragma omp atomic write
                failed = true;
                continue;
            }
            for (int q = 0; q < n; ++q)
                parts[k].emplace_back(es.eigenvalues()(q), 0.0);
        } else {
            const Eigen::MatrixXcd a = target == SpectralTarget::sifting ? Eigen::MatrixXcd(id - hk) : hk;
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(a, false);
            if (es.info() != Eigen::Success) {
#pragma omp atomic write
                failed = true;
                continue;
            }
            parts[k].assign(es.eigenvalues().begin(), es.eigenvalues().end());
        }
    }
    if (failed)
        throw NumericalError("block eigensolver failed");
    for (const auto& p : parts)
        r.eigenvalues.insert(r.eigenvalues.end(), p.begin(), p.end());
    sort_spectrum(r.eigenvalues);
    r.seconds = since(t0);
    return r;
}

SpectrumReport eig_symbol(int n, double m, int oversample)
{
    const auto t0 = steady::now();
    SpectrumReport r;
    r.method = SpectrumMethod::glt_symbol;
    r.n = n;
    r.cells = m;
    r.radius = m * pi / n;
    r.eigenvalues = symbol_eig_approx(n, m, oversample);
    r.seconds = since(t0);
    return r;
}

SpectrumComparison spectrum_compare(int n, const ConeFilter& filter, int quad_level, int oversample)
{
    const SphereGrid grid(n);
    SpectrumComparison c;
    c.n = n;
    c.radius = filter.radius();
    c.m = filter.cells_on(grid);
    c.quad_level = quad_level;
    c.oversample = oversample;

    AssemblyOptions opt;
    opt.quad_level = quad_level;
    auto t0 = steady::now();
    const auto exact = eig_block_circulant(build_exact_b(grid, filter, opt));
    c.seconds_exact = since(t0);
    t0 = steady::now();
    const auto approx = eig_block_circulant(build_approx_op(grid, filter));
    c.seconds_op = since(t0);
    t0 = steady::now();
    const auto sym = eig_symbol(n, c.m, oversample);
    c.seconds_symbol = since(t0);

    c.exact_re = exact.real_parts();
    c.op_re = approx.real_parts();
    c.symbol_re = sym.real_parts();
    std::sort(c.exact_re.begin(), c.exact_re.end());
    std::sort(c.op_re.begin(), c.op_re.end());
    std::sort(c.symbol_re.begin(), c.symbol_re.end());
    c.zoom_count = std::size_t(std::ceil(0.2 * double(n) * n));
    return c;
}

double frobenius_sq(const SiftOperator& op)
{
    double sum = 0.0;
    for (const Band& b : op.bands())
        for (double v : b.values)
            sum += v * v;
    return sum * op.grid().n();
}

std::vector<ZeroDistributionRow> zero_distribution_check(double radius, std::span<const int> sizes,
                                                         std::span<const double> eps)
{
    static const double default_eps[] = {0.1, 0.01};
    if (eps.empty())
        eps = default_eps;
    const ConeFilter filter = ConeFilter::from_radius(radius);
    std::vector<ZeroDistributionRow> rows;
    for (int n : sizes) {
        const SiftOperator op = build_approx_op(SphereGrid(n), filter);
        const auto spec = eig_block_circulant(op);
        ZeroDistributionRow row;
        row.n = n;
        row.frobenius_sq = frobenius_sq(op);
        row.eps.assign(eps.begin(), eps.end());
        for (double e : eps) {
            std::size_t c = 0;
            for (const auto& z : spec.eigenvalues)
                if (std::abs(z) > e)
                    ++c;
            row.count_above.push_back(c);
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

double max_cdf_gap(std::vector<double> a, std::vector<double> b)
{
    if (a.empty() || b.empty())
        throw InvalidArgument("CDF gap needs two non-empty samples");
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    std::size_t i = 0, j = 0;
    double gap = 0.0;
    while (i < a.size() && j < b.size()) {
        const double x = std::min(a[i], b[j]);
        while (i < a.size() && a[i] <= x)
            ++i;
        while (j < b.size() && b[j] <= x)
            ++j;
        gap = std::max(gap, std::abs(double(i) / a.size() - double(j) / b.size()));
    }
    return gap;
}

double spectral_match_distance(const std::vector<std::complex<double>>& a, const std::vector<std::complex<double>>& b)
{
    if (a.size() != b.size())
        throw DimensionError("spectra of different sizes");
    std::vector<char> used(b.size(), 0);
    double worst = 0.0;
    for (const auto& z : a) {
        std::size_t best = b.size();
        double bd = std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < b.size(); ++k)
            if (!used[k] && std::abs(z - b[k]) < bd) {
                bd = std::abs(z - b[k]);
                best = k;
            }
        used[best] = 1;
        worst = std::max(worst, bd);
    }
    return worst;
}

bool conjugate_symmetric(const std::vector<std::complex<double>>& v, double tol)
{
    std::vector<std::complex<double>> c(v.size());
    for (std::size_t k = 0; k < v.size(); ++k)
        c[k] = std::conj(v[k]);
    return spectral_match_distance(v, c) <= tol;
}

} // namespace sif
