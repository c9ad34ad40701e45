#include "sif/experiments.hpp"

#include "sif/errors.hpp"
#include "sif/io.hpp"
#include "sif/signal_synth.hpp"

#include <algorithm>
#include <chrono>

namespace sif {

namespace fs = std::filesystem;

void require_directory(const fs::path& dir)
{
    std::error_code ec;
    if (!fs::is_directory(dir, ec))
        throw IoError("output directory '" + dir.string() + "' does not exist");
}

namespace {
std::string sorted_column_csv(const std::vector<double>& re)
{
    const double total = double(re.size());
    std::string out = "index,normalized_index,re\n";
    for (std::size_t k = 0; k < re.size(); ++k)
        out += std::to_string(k + 1) + "," + format_double((k + 0.5) / total) + "," + format_double(re[k]) + "\n";
    return out;
}

void check_test1(const Test1Params& p)
{
    if (p.n < 2)
        throw InvalidArgument("test1 needs n >= 2");
    if (!(p.radius > 0.0 && p.radius < std::numbers::pi / 2))
        throw InvalidArgument("test1 radius must lie in (0, pi/2)");
    if (p.quad_level < 2 || p.oversample < 1)
        throw InvalidArgument("test1 needs quad >= 2 and oversample >= 1");
}

void check_test2(const Test2Params& p)
{
    if (p.n < 2)
        throw InvalidArgument("test2 needs n >= 2");
    if (!(p.radius > 0.0 && p.radius < std::numbers::pi / 2))
        throw InvalidArgument("test2 radius must lie in (0, pi/2)");
    if (!(p.delta > 0.0) || p.iterations < 1)
        throw InvalidArgument("test2 needs delta > 0 and iterations >= 1");
}
} // namespace

Test1Summary run_test1(const Test1Params& p, const fs::path& outdir)
{
    check_test1(p);
    require_directory(outdir);
    RunManifest man("test1");
    man.params() = {{"n", p.n}, {"radius", p.radius}, {"quad_level", p.quad_level}, {"oversample", p.oversample}};

    Test1Summary s;
    s.comparison = spectrum_compare(p.n, ConeFilter::from_radius(p.radius), p.quad_level, p.oversample);
    const auto& c = s.comparison;
    s.min_exact = c.exact_re.front();
    s.min_op = c.op_re.front();
    s.min_symbol = c.symbol_re.front();

    const std::pair<const char*, const std::vector<double>*> cols[] = {
        {"eigs_exact.csv", &c.exact_re}, {"eigs_op.csv", &c.op_re}, {"eigs_symbol.csv", &c.symbol_re}};
    for (const auto& [name, re] : cols) {
        write_file_atomic(outdir / name, sorted_column_csv(*re));
        man.add_output(outdir / name);
    }
    std::string zoom = "index,normalized_index,exactB_re,op_re,symbol_re\n";
    const double total = double(c.exact_re.size());
    for (std::size_t k = 0; k < c.zoom_count; ++k)
        zoom += std::to_string(k + 1) + "," + format_double((k + 0.5) / total) + "," + format_double(c.exact_re[k])
                + "," + format_double(c.op_re[k]) + "," + format_double(c.symbol_re[k]) + "\n";
    write_file_atomic(outdir / "zoom.csv", zoom);
    man.add_output(outdir / "zoom.csv");

    man.results() = {{"m", c.m},
                     {"min_real_exact", s.min_exact},
                     {"min_real_op", s.min_op},
                     {"min_real_symbol", s.min_symbol},
                     {"zoom_count", c.zoom_count},
                     {"sort_key", spectrum_sort_key},
                     {"spectral_route", "block_circulant (exact, op), symbol quantiles"}};
    man.add_timing("exact_seconds", c.seconds_exact);
    man.add_timing("op_seconds", c.seconds_op);
    man.add_timing("symbol_seconds", c.seconds_symbol);
    man.write(outdir / "manifest.json");
    return s;
}

namespace {
struct Test2Run {
    SphericalSignal g, truth, imf_naive, imf_sif;
    Test2Summary s;
};

Test2Run execute_test2(const Test2Params& p)
{
    check_test2(p);
    const SphereGrid grid(p.n);
    const TwoWavePreset preset = two_wave_preset();
    SphericalSignal truth = circular_wave(grid, preset.fast);
    SphericalSignal g = truth + circular_wave(grid, preset.slow);
    AssemblyOptions opt;
    opt.quad_level = p.quad_level;
    const SiftOperator op = build_operator(grid, ConeFilter::from_radius(p.radius), p.kind, opt);

    DecompositionConfig cfg;
    cfg.delta = p.delta;
    cfg.max_inner_iterations = p.iterations;
    cfg.radius_rule = RadiusRule::fixed(p.radius);
    cfg.kind = p.kind;
    cfg.stabilized = false;
    auto [imf_naive, dn] = extract_imf(g, op, cfg);
    cfg.stabilized = true;
    auto [imf_sif, ds] = extract_imf(g, op, cfg);

    Test2Summary s;
    s.naive = dn;
    s.sif = ds;
    s.imf_error_naive = weighted_l2_error(imf_naive, truth);
    s.imf_error_sif = weighted_l2_error(imf_sif, truth);
    s.naive_curve = error_curve(g, truth, op, false, p.iterations);
    s.sif_curve = error_curve(g, truth, op, true, p.iterations);
    const double e0 = s.naive_curve.front();
    s.naive_final_over_initial = s.naive_curve.back() / e0;
    s.naive_max_over_initial = *std::max_element(s.naive_curve.begin(), s.naive_curve.end()) / e0;
    s.sif_max_over_initial = *std::max_element(s.sif_curve.begin(), s.sif_curve.end()) / s.sif_curve.front();
    s.sif_argmin = int(std::min_element(s.sif_curve.begin(), s.sif_curve.end()) - s.sif_curve.begin());
    return {std::move(g), std::move(truth), std::move(imf_naive), std::move(imf_sif), std::move(s)};
}
} // namespace

Test2Summary compute_test2(const Test2Params& p) { return execute_test2(p).s; }

Test2Summary run_test2(const Test2Params& p, const fs::path& outdir)
{
    check_test2(p);
    require_directory(outdir);
    RunManifest man("test2");
    man.params() = {{"n", p.n},          {"radius", p.radius},           {"delta", p.delta},
                    {"iterations", p.iterations}, {"kind", to_string(p.kind)}, {"quad_level", p.quad_level},
                    {"preset", "two-wave"}};

    const Test2Run run = execute_test2(p);
    const Test2Summary& s = run.s;
    const auto& g = run.g;
    const auto& truth = run.truth;

    auto emit = [&](const char* name, const std::string& text) {
        write_file_atomic(outdir / name, text);
        man.add_output(outdir / name);
    };
    emit("signal.csv", signal_to_csv(g));
    emit("imf1_naive.csv", signal_to_csv(run.imf_naive));
    emit("imf1_sif.csv", signal_to_csv(run.imf_sif));
    emit("err_map_naive.csv", signal_to_csv(error_map(run.imf_naive, truth)));
    emit("err_map_sif.csv", signal_to_csv(error_map(run.imf_sif, truth)));
    std::string curves = "iteration,naive_l2_error,sif_l2_error\n";
    for (std::size_t k = 0; k < s.naive_curve.size(); ++k)
        curves += std::to_string(k) + "," + format_double(s.naive_curve[k]) + "," + format_double(s.sif_curve[k]) + "\n";
    emit("err_curves.csv", curves);

    auto diag = [](const ImfDiagnostics& d) {
        return nlohmann::json{{"iterations", d.iterations},
                              {"stop_reason", to_string(d.reason)},
                              {"final_ratio", d.final_ratio},
                              {"radius", d.radius}};
    };
    man.results() = {{"naive", diag(s.naive)},
                     {"sif", diag(s.sif)},
                     {"naive_final_over_initial", s.naive_final_over_initial},
                     {"naive_max_over_initial", s.naive_max_over_initial},
                     {"sif_max_over_initial", s.sif_max_over_initial},
                     {"sif_error_argmin", s.sif_argmin},
                     {"imf_error_naive", s.imf_error_naive},
                     {"imf_error_sif", s.imf_error_sif},
                     {"error_maps", "absolute difference to the fast preset wave"}};
    man.write(outdir / "manifest.json");
    return s;
}

} // namespace sif
