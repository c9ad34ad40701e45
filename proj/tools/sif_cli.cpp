// sif: command line front end. Exit codes 0 ok, 1 I/O, 2 usage, 3 resource, 4 numerical.
#include "sif/conic_filter.hpp"
#include "sif/decomposition.hpp"
#include "sif/errors.hpp"
#include "sif/experiments.hpp"
#include "sif/glt_symbol.hpp"
#include "sif/io.hpp"
#include "sif/line_if.hpp"
#include "sif/signal_synth.hpp"
#include "sif/spectrum.hpp"

#include <CLI11.hpp>
#include <omp.h>

#include <iostream>
#include <numbers>
#include <optional>

namespace fs = std::filesystem;
using namespace sif;

namespace {

struct Globals {
    int threads = 0;
    std::uint64_t seed = 0;
    std::string out;
};

struct FilterFlags {
    std::optional<double> radius;
    std::optional<double> m;
};

void add_filter_flags(CLI::App* cmd, FilterFlags& f)
{
    auto* r = cmd->add_option("--radius", f.radius, "filter radius in radians");
    auto* m = cmd->add_option("--m", f.m, "filter radius in grid steps h");
    r->excludes(m);
}

ConeFilter make_filter(const FilterFlags& f, const SphereGrid& grid, double fallback)
{
    if (f.m)
        return ConeFilter::from_cells(*f.m, grid);
    return ConeFilter::from_radius(f.radius.value_or(fallback));
}

fs::path resolve(const Globals& g, const std::string& p)
{
    fs::path path(p);
    if (path.is_relative() && !g.out.empty())
        path = fs::path(g.out) / path;
    return path;
}

fs::path manifest_for_file(const fs::path& out) { return fs::path(out.string() + ".manifest.json"); }

void finish_file(RunManifest& man, const fs::path& out)
{
    man.add_output(out);
    man.write(manifest_for_file(out));
}

nlohmann::json filter_json(const ConeFilter& f)
{
    nlohmann::json j = {{"radius", f.radius()}};
    if (f.cells())
        j["m"] = *f.cells();
    return j;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spherical iterative filtering toolkit"};
    app.require_subcommand(1);
    Globals g;
    app.add_option("--threads", g.threads, "worker threads (0 = OpenMP default)")->check(CLI::NonNegativeNumber);
    app.add_option("--seed", g.seed, "reserved, recorded in manifests");
    app.add_option("--out", g.out, "base directory for relative outputs");

    // grid-info
    auto* grid_cmd = app.add_subcommand("grid-info", "grid summary as JSON");
    int grid_n = 0;
    std::string grid_o;
    grid_cmd->add_option("--n", grid_n, "points per axis")->required();
    grid_cmd->add_option("-o,--output", grid_o, "also write the JSON to this file");

    // build-operator
    auto* build_cmd = app.add_subcommand("build-operator", "assemble and save an operator");
    int build_n = 0, build_q = 8;
    std::string build_kind = "approx", build_o;
    bool build_renorm = false;
    FilterFlags build_f;
    build_cmd->add_option("--n", build_n)->required();
    add_filter_flags(build_cmd, build_f);
    build_cmd->add_option("--kind", build_kind, "exact|approx");
    build_cmd->add_option("--quad", build_q, "quadrature points per axis (exact)");
    build_cmd->add_flag("--renormalize", build_renorm, "rescale exact rows to sum 1");
    build_cmd->add_option("-o,--output", build_o)->required();

    // spectrum
    auto* spec_cmd = app.add_subcommand("spectrum", "eigenvalues of one operator");
    int spec_n = 0, spec_q = 8, spec_os = 4, spec_cap = default_dense_cap;
    std::string spec_kind = "approx", spec_method = "block", spec_target = "B", spec_o, spec_in;
    bool spec_force = false;
    FilterFlags spec_f;
    spec_cmd->add_option("--n", spec_n);
    add_filter_flags(spec_cmd, spec_f);
    spec_cmd->add_option("--kind", spec_kind, "exact|approx");
    spec_cmd->add_option("--method", spec_method, "dense|block|symbol");
    spec_cmd->add_option("--target", spec_target, "B|I-B|BtB|I-BtB");
    spec_cmd->add_option("--quad", spec_q);
    spec_cmd->add_option("--oversample", spec_os);
    spec_cmd->add_option("--dense-cap", spec_cap);
    spec_cmd->add_option("--operator", spec_in, "read a saved operator instead of assembling");
    spec_cmd->add_flag("--force", spec_force, "allow block route above N=400");
    spec_cmd->add_option("-o,--output", spec_o)->required();

    // spectrum-compare
    auto* cmp_cmd = app.add_subcommand("spectrum-compare", "sorted real parts: exact B, Op, symbol");
    int cmp_n = 0, cmp_q = 8, cmp_os = 4;
    std::string cmp_o;
    FilterFlags cmp_f;
    cmp_cmd->add_option("--n", cmp_n)->required();
    add_filter_flags(cmp_cmd, cmp_f);
    cmp_cmd->add_option("--quad", cmp_q);
    cmp_cmd->add_option("--oversample", cmp_os);
    cmp_cmd->add_option("-o,--output", cmp_o)->required();

    // symbol
    auto* sym_cmd = app.add_subcommand("symbol", "symbol quantiles as eigenvalue estimates");
    int sym_n = 0, sym_os = 4;
    double sym_m = 0.0;
    std::string sym_o;
    sym_cmd->add_option("--n", sym_n)->required();
    sym_cmd->add_option("--m", sym_m)->required();
    sym_cmd->add_option("--oversample", sym_os);
    sym_cmd->add_option("-o,--output", sym_o)->required();

    // counterexample
    auto* ce_cmd = app.add_subcommand("counterexample", "scan kappa(x2, (0, pi)) towards x2 = 0");
    double ce_m = 2.0, ce_max = 0.5, ce_min = 1e-4;
    int ce_res = 200;
    std::string ce_o;
    ce_cmd->add_option("--m", ce_m);
    ce_cmd->add_option("--x2-max", ce_max);
    ce_cmd->add_option("--x2-min", ce_min);
    ce_cmd->add_option("--resolution", ce_res);
    ce_cmd->add_option("-o,--output", ce_o)->required();

    // synth
    auto* syn_cmd = app.add_subcommand("synth", "synthetic test signal");
    int syn_n = 0;
    std::string syn_preset = "two-wave", syn_o;
    syn_cmd->add_option("--n", syn_n)->required();
    syn_cmd->add_option("--preset", syn_preset);
    syn_cmd->add_option("-o,--output", syn_o)->required();

    // decompose
    auto* dec_cmd = app.add_subcommand("decompose", "spherical iterative filtering");
    std::string dec_in, dec_o, dec_kind = "approx";
    int dec_n = 0;
    std::optional<double> dec_radius, dec_chi;
    bool dec_naive = false;
    DecompositionConfig dec_cfg;
    dec_cmd->add_option("--input", dec_in)->required();
    dec_cmd->add_option("--n", dec_n, "expected grid size (checked against the file)");
    auto* dr = dec_cmd->add_option("--radius", dec_radius, "fixed filter radius");
    auto* dc = dec_cmd->add_option("--auto-chi", dec_chi, "extrema-scaled radius with this chi");
    dr->excludes(dc);
    dec_cmd->add_flag("--naive", dec_naive, "iterate I - B instead of I - B^T B");
    dec_cmd->add_option("--delta", dec_cfg.delta);
    dec_cmd->add_option("--max-iter", dec_cfg.max_inner_iterations);
    dec_cmd->add_option("--max-imfs", dec_cfg.max_imfs);
    dec_cmd->add_option("--kind", dec_kind);
    dec_cmd->add_option("--quad", dec_cfg.quad_level);
    dec_cmd->add_option("-o,--output", dec_o, "output directory");

    // dif
    auto* dif_cmd = app.add_subcommand("dif", "1D discrete iterative filtering");
    std::string dif_in, dif_o;
    LineConfig dif_cfg;
    dif_cmd->add_option("--input", dif_in)->required();
    dif_cmd->add_option("--delta", dif_cfg.delta);
    dif_cmd->add_option("--max-iter", dif_cfg.max_inner_iterations);
    dif_cmd->add_option("--chi", dif_cfg.chi);
    dif_cmd->add_option("-o,--output", dif_o, "output directory");

    // test1 / test2
    auto* t1_cmd = app.add_subcommand("test1", "spectra of B, Op and the symbol");
    Test1Params t1;
    std::string t1_o;
    t1_cmd->add_option("--n", t1.n);
    t1_cmd->add_option("--radius", t1.radius);
    t1_cmd->add_option("--quad", t1.quad_level);
    t1_cmd->add_option("--oversample", t1.oversample);
    t1_cmd->add_option("-o,--output", t1_o, "output directory");

    auto* t2_cmd = app.add_subcommand("test2", "naive vs stabilized sifting on the two-wave signal");
    Test2Params t2;
    std::string t2_o, t2_kind = "approx";
    t2_cmd->add_option("--n", t2.n);
    t2_cmd->add_option("--radius", t2.radius);
    t2_cmd->add_option("--delta", t2.delta);
    t2_cmd->add_option("--iterations", t2.iterations);
    t2_cmd->add_option("--kind", t2_kind);
    t2_cmd->add_option("--quad", t2.quad_level);
    t2_cmd->add_option("-o,--output", t2_o, "output directory");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (g.threads > 0)
            omp_set_num_threads(g.threads);
        auto dir_of = [&](const std::string& o) {
            const fs::path d = o.empty() ? fs::path(g.out.empty() ? "." : g.out) : resolve(g, o);
            require_directory(d);
            return d;
        };
        auto common = [&](RunManifest& man) {
            man.params()["threads"] = g.threads;
            man.params()["seed"] = g.seed;
        };

        if (*grid_cmd) {
            const SphereGrid grid(grid_n);
            const nlohmann::json j = {{"N", grid.n()},
                                      {"h", grid.h()},
                                      {"total_area", grid.total_area()},
                                      {"min_cell_area", grid.min_cell_area()},
                                      {"max_cell_area", grid.max_cell_area()},
                                      {"max_cell_diameter", grid.max_cell_diameter()}};
            std::cout << j.dump(2) << "\n";
            if (!grid_o.empty()) {
                RunManifest man("grid-info");
                common(man);
                man.params()["n"] = grid_n;
                const fs::path out = resolve(g, grid_o);
                write_file_atomic(out, j.dump(2) + "\n");
                finish_file(man, out);
            }
        } else if (*build_cmd) {
            const SphereGrid grid(build_n);
            const ConeFilter f = make_filter(build_f, grid, std::numbers::pi / 10);
            AssemblyOptions opt;
            opt.quad_level = build_q;
            opt.renormalize_rows = build_renorm;
            const auto t0 = std::chrono::steady_clock::now();
            const SiftOperator op = build_operator(grid, f, parse_operator_kind(build_kind), opt);
            RunManifest man("build-operator");
            common(man);
            man.params() = {{"n", build_n}, {"filter", filter_json(f)}, {"kind", build_kind},
                            {"quad_level", op.quad_level()}, {"renormalize", build_renorm}};
            man.add_timing("assembly_seconds",
                           std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
            man.results() = {{"bands", op.bands().size()}, {"nonzeros_per_longitude", op.nonzeros_per_longitude()}};
            const fs::path out = resolve(g, build_o);
            save_operator(op, out);
            finish_file(man, out);
        } else if (*spec_cmd) {
            const SpectrumMethod method = parse_spectrum_method(spec_method);
            const SpectralTarget target = parse_spectral_target(spec_target);
            RunManifest man("spectrum");
            common(man);
            SpectrumReport rep;
            if (method == SpectrumMethod::glt_symbol) {
                if (spec_n < 2)
                    throw InvalidArgument("--n is required for the symbol route");
                const SphereGrid grid(spec_n);
                const ConeFilter f = make_filter(spec_f, grid, std::numbers::pi / 10);
                if (target != SpectralTarget::average)
                    throw InvalidArgument("the symbol route only describes B");
                rep = eig_symbol(spec_n, f.cells_on(grid), spec_os);
            } else {
                std::optional<SiftOperator> op;
                if (!spec_in.empty()) {
                    op.emplace(load_operator(resolve(g, spec_in)));
                } else {
                    if (spec_n < 2)
                        throw InvalidArgument("--n or --operator is required");
                    const SphereGrid grid(spec_n);
                    AssemblyOptions opt;
                    opt.quad_level = spec_q;
                    op.emplace(build_operator(grid, make_filter(spec_f, grid, std::numbers::pi / 10),
                                              parse_operator_kind(spec_kind), opt));
                }
                if (method == SpectrumMethod::block_circulant && op->grid().n() > 400) {
                    if (!spec_force)
                        throw ResourceError("block route above N=400 needs --force (or use --method symbol)");
                    std::cerr << "warning: block route at N=" << op->grid().n() << " will be slow\n";
                }
                rep = method == SpectrumMethod::dense ? eig_dense(*op, target, spec_cap)
                                                      : eig_block_circulant(*op, target);
            }
            man.params() = {{"n", rep.n},           {"radius", rep.radius},  {"method", to_string(method)},
                            {"target", to_string(target)}, {"quad_level", rep.quad_level}, {"oversample", spec_os}};
            if (rep.kind)
                man.params()["kind"] = to_string(*rep.kind);
            man.results() = {{"count", rep.eigenvalues.size()},
                             {"min_real", rep.min_real()},
                             {"max_real", rep.max_real()},
                             {"max_abs_imag", rep.max_abs_imag()},
                             {"sort_key", spectrum_sort_key}};
            man.add_timing("eigen_seconds", rep.seconds);
            const fs::path out = resolve(g, spec_o);
            write_file_atomic(out, complex_to_csv(rep.eigenvalues));
            finish_file(man, out);
        } else if (*cmp_cmd) {
            const SphereGrid grid(cmp_n);
            const ConeFilter f = make_filter(cmp_f, grid, std::numbers::pi / 10);
            const SpectrumComparison c = spectrum_compare(cmp_n, f, cmp_q, cmp_os);
            std::string csv = "index,exactB_re,op_re,symbol_re\n";
            for (std::size_t k = 0; k < c.exact_re.size(); ++k)
                csv += std::to_string(k + 1) + "," + format_double(c.exact_re[k]) + "," + format_double(c.op_re[k])
                       + "," + format_double(c.symbol_re[k]) + "\n";
            RunManifest man("spectrum-compare");
            common(man);
            man.params() = {{"n", cmp_n}, {"filter", filter_json(f)}, {"quad_level", cmp_q}, {"oversample", cmp_os}};
            man.results() = {{"zoom_count", c.zoom_count}, {"sort_key", spectrum_sort_key},
                             {"min_real_exact", c.exact_re.front()}, {"min_real_op", c.op_re.front()},
                             {"min_real_symbol", c.symbol_re.front()}};
            man.add_timing("exact_seconds", c.seconds_exact);
            man.add_timing("op_seconds", c.seconds_op);
            man.add_timing("symbol_seconds", c.seconds_symbol);
            const fs::path out = resolve(g, cmp_o);
            write_file_atomic(out, csv);
            finish_file(man, out);
        } else if (*sym_cmd) {
            const SpectrumReport rep = eig_symbol(sym_n, sym_m, sym_os);
            RunManifest man("symbol");
            common(man);
            man.params() = {{"n", sym_n}, {"m", sym_m}, {"oversample", sym_os}};
            man.results() = {{"count", rep.eigenvalues.size()}, {"min_real", rep.min_real()},
                             {"sort_key", spectrum_sort_key}};
            man.add_timing("symbol_seconds", rep.seconds);
            const fs::path out = resolve(g, sym_o);
            write_file_atomic(out, complex_to_csv(rep.eigenvalues));
            finish_file(man, out);
        } else if (*ce_cmd) {
            const CounterexampleScan scan = counterexample_scan(ce_m, ce_max, ce_min, ce_res);
            std::string csv = "x2,kappa_real\n";
            for (const auto& r : scan.rows)
                csv += format_double(r.x2) + "," + format_double(r.kappa) + "\n";
            RunManifest man("counterexample");
            common(man);
            man.params() = {{"m", ce_m}, {"x2_max", ce_max}, {"x2_min", ce_min}, {"resolution", ce_res}};
            man.results() = {{"edge_limit", scan.edge_limit},
                             {"quoted_constant", scan.quoted_constant},
                             {"negative_up_to", scan.negative_up_to}};
            const fs::path out = resolve(g, ce_o);
            write_file_atomic(out, csv);
            finish_file(man, out);
        } else if (*syn_cmd) {
            const SphereGrid grid(syn_n);
            const SphericalSignal s = preset_signal(grid, syn_preset);
            RunManifest man("synth");
            common(man);
            man.params() = {{"n", syn_n}, {"preset", syn_preset}};
            const fs::path out = resolve(g, syn_o);
            write_signal(out, s);
            finish_file(man, out);
        } else if (*dec_cmd) {
            const SphericalSignal sig = read_signal(resolve(g, dec_in));
            if (dec_n != 0 && dec_n != sig.n())
                throw DimensionError("--n " + std::to_string(dec_n) + " but the file holds N=" + std::to_string(sig.n()));
            dec_cfg.stabilized = !dec_naive;
            dec_cfg.kind = parse_operator_kind(dec_kind);
            if (dec_radius)
                dec_cfg.radius_rule = RadiusRule::fixed(*dec_radius);
            else if (dec_chi)
                dec_cfg.radius_rule = RadiusRule::extrema_scaled(*dec_chi);
            const fs::path dir = dir_of(dec_o);
            const DecompositionResult res = decompose(sig, dec_cfg);
            RunManifest man("decompose");
            common(man);
            man.params() = {{"input", dec_in},
                            {"n", sig.n()},
                            {"delta", dec_cfg.delta},
                            {"max_inner_iterations", dec_cfg.max_inner_iterations},
                            {"max_imfs", dec_cfg.max_imfs},
                            {"radius_rule", dec_cfg.radius_rule.kind == RadiusRule::Kind::fixed ? "fixed" : "extrema_scaled"},
                            {"radius_rule_value", dec_cfg.radius_rule.value},
                            {"stabilized", dec_cfg.stabilized},
                            {"kind", dec_kind},
                            {"quad_level", dec_cfg.quad_level}};
            nlohmann::json diag = nlohmann::json::array();
            for (std::size_t k = 0; k < res.imfs.size(); ++k) {
                const std::string name = "imf_" + std::to_string(k + 1) + ".csv";
                write_signal(dir / name, res.imfs[k]);
                man.add_output(dir / name);
                const auto& d = res.diagnostics[k];
                diag.push_back({{"imf", k + 1},
                                {"iterations", d.iterations},
                                {"radius", d.radius},
                                {"stop_reason", to_string(d.reason)},
                                {"final_ratio", d.final_ratio},
                                {"extrema", d.extrema}});
            }
            write_signal(dir / "remainder.csv", res.remainder);
            man.add_output(dir / "remainder.csv");
            write_file_atomic(dir / "diagnostics.json", diag.dump(2) + "\n");
            man.add_output(dir / "diagnostics.json");
            man.results() = {{"imfs", res.imfs.size()}};
            man.write(dir / "manifest.json");
        } else if (*dif_cmd) {
            const std::vector<double> sig = read_series(resolve(g, dif_in));
            const fs::path dir = dir_of(dif_o);
            const LineResult res = dif_decompose(sig, dif_cfg);
            RunManifest man("dif");
            common(man);
            man.params() = {{"input", dif_in}, {"n", sig.size()}, {"delta", dif_cfg.delta},
                            {"max_inner_iterations", dif_cfg.max_inner_iterations}, {"chi", dif_cfg.chi}};
            nlohmann::json diag = nlohmann::json::array();
            for (std::size_t k = 0; k < res.imfs.size(); ++k) {
                const std::string name = "imf_" + std::to_string(k + 1) + ".csv";
                write_file_atomic(dir / name, series_to_csv(res.imfs[k], "value"));
                man.add_output(dir / name);
                diag.push_back({{"imf", k + 1},
                                {"iterations", res.diagnostics[k].iterations},
                                {"half_width", res.diagnostics[k].half_width},
                                {"converged", res.diagnostics[k].converged}});
            }
            write_file_atomic(dir / "remainder.csv", series_to_csv(res.remainder, "value"));
            man.add_output(dir / "remainder.csv");
            write_file_atomic(dir / "diagnostics.json", diag.dump(2) + "\n");
            man.add_output(dir / "diagnostics.json");
            man.results() = {{"imfs", res.imfs.size()}, {"stop", res.stop}};
            man.write(dir / "manifest.json");
        } else if (*t1_cmd) {
            const fs::path dir = dir_of(t1_o);
            const Test1Summary s = run_test1(t1, dir);
            std::cout << "min real part  exact B " << s.min_exact << "  Op " << s.min_op << "  symbol "
                      << s.min_symbol << "\n";
        } else if (*t2_cmd) {
            t2.kind = parse_operator_kind(t2_kind);
            const fs::path dir = dir_of(t2_o);
            const Test2Summary s = run_test2(t2, dir);
            std::cout << "naive: " << to_string(s.naive.reason) << " after " << s.naive.iterations
                      << " iterations, final/initial error " << s.naive_final_over_initial << "\n"
                      << "sif:   " << to_string(s.sif.reason) << " after " << s.sif.iterations
                      << " iterations, max/initial error " << s.sif_max_over_initial << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e);
    }
    return 0;
}
