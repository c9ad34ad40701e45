#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "sif/errors.hpp"
#include "sif/experiments.hpp"
#include "sif/io.hpp"
#include "sif/signal_synth.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

using namespace sif;
namespace fs = std::filesystem;

namespace {
struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name)
    {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

bool same(const SphericalSignal& a, const SphericalSignal& b) { return std::ranges::equal(a.values(), b.values()); }

std::size_t data_rows(const fs::path& p)
{
    std::istringstream in(read_file(p));
    std::string line;
    std::size_t rows = 0;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#')
            continue;
        if (!header) {
            header = true;
            continue;
        }
        ++rows;
    }
    return rows;
}
} // namespace

TEST_CASE("checksums and number formatting")
{
    CHECK(crc32_of("123456789") == 0xCBF43926u);
    CHECK(crc32_of("") == 0u);

    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> u(-1e6, 1e6);
    for (int k = 0; k < 2000; ++k) {
        const double x = u(rng) * std::pow(10.0, double(k % 40 - 20));
        CHECK(std::stod(format_double(x)) == x);
    }
    CHECK(format_double(0.5) == "0.5");
    const std::string tiny = format_double(std::numeric_limits<double>::denorm_min());
    double back = 0.0;
    std::from_chars(tiny.data(), tiny.data() + tiny.size(), back);
    CHECK(back == std::numeric_limits<double>::denorm_min());
}

TEST_CASE("atomic writes")
{
    TempDir dir("sif_io_write");
    const fs::path p = dir.path / "a.txt";
    write_file_atomic(p, "hello\n");
    CHECK(read_file(p) == "hello\n");
    write_file_atomic(p, "second");
    CHECK(read_file(p) == "second");
    CHECK(file_crc32(p) == crc32_of("second"));
    std::size_t entries = 0;
    for ([[maybe_unused]] const auto& e : fs::directory_iterator(dir.path))
        ++entries;
    CHECK(entries == 1);
    CHECK_THROWS_AS(write_file_atomic(dir.path / "missing" / "a.txt", "x"), IoError);
    CHECK_THROWS_AS(read_file(dir.path / "nope.txt"), IoError);
}

TEST_CASE("signal CSV")
{
    const SphereGrid g(9);
    const SphericalSignal s = preset_signal(g, "two-wave") + SphericalSignal(g, 1.0 / 3.0);
    const std::string text = signal_to_csv(s);
    CHECK(text.rfind("# N=9\ni,j,value\n", 0) == 0);
    const SphericalSignal back = signal_from_csv(text);
    CHECK(back.grid() == g);
    CHECK(same(back, s));

    // rows may come in any order
    std::istringstream in(text);
    std::string l1, l2, rest;
    std::getline(in, l1);
    std::getline(in, l2);
    std::vector<std::string> rows;
    for (std::string r; std::getline(in, r);)
        rows.push_back(r);
    std::reverse(rows.begin(), rows.end());
    std::string shuffled = l1 + "\n" + l2 + "\n";
    for (const auto& r : rows)
        shuffled += r + "\n";
    CHECK(same(signal_from_csv(shuffled), s));

    CHECK_THROWS_AS(signal_from_csv("i,j,value\n1,1,0\n"), FormatError);
    CHECK_THROWS_AS(signal_from_csv("# N=2\ni,j,value\n1,1,0\n1,2,0\n2,1,0\n"), FormatError);
    CHECK_THROWS_AS(signal_from_csv("# N=2\ni,j,value\n1,1,0\n1,1,0\n2,1,0\n2,2,0\n"), FormatError);
    CHECK_THROWS_AS(signal_from_csv("# N=2\ni,j,value\n1,1,0\n1,2,0\n2,1,0\n3,2,0\n"), FormatError);
    CHECK_THROWS_AS(signal_from_csv("# N=2\ni,j,value\n1,1,0\n1,2,x\n2,1,0\n2,2,0\n"), FormatError);
    CHECK_THROWS_AS(signal_from_csv("# N=2\ni,j,value\n1,1,0\n1,2,nan\n2,1,0\n2,2,0\n"), Error);

    TempDir dir("sif_io_signal");
    write_signal(dir.path / "s.csv", s);
    CHECK(same(read_signal(dir.path / "s.csv"), s));
}

TEST_CASE("series and complex tables")
{
    TempDir dir("sif_io_series");
    const std::vector<double> v{1.5, -2.25, 1e-300, 7.0};
    write_file_atomic(dir.path / "v.csv", series_to_csv(v, "value"));
    CHECK(read_file(dir.path / "v.csv").rfind("index,value\n", 0) == 0);
    CHECK(read_series(dir.path / "v.csv") == v);
    write_file_atomic(dir.path / "w.csv", "# comment\n3\n4.5\n");
    CHECK(read_series(dir.path / "w.csv") == std::vector<double>{3.0, 4.5});
    CHECK(complex_to_csv({{1.0, -0.5}}) == "re,im\n1,-0.5\n");
}

TEST_CASE("manifests")
{
    TempDir dir("sif_io_manifest");
    write_file_atomic(dir.path / "a.csv", "x\n1\n");
    write_file_atomic(dir.path / "b.csv", "y\n2\n");
    RunManifest m("unit");
    m.params()["n"] = 4;
    m.results()["ok"] = true;
    m.add_timing("step", 0.25);
    m.add_output(dir.path / "a.csv");
    m.add_output(dir.path / "b.csv");
    const nlohmann::json j = m.to_json();
    CHECK(j["command"] == "unit");
    CHECK(j["tool_version"] == tool_version);
    CHECK(j["params"]["n"] == 4);
    CHECK(j["timings"].contains("total_seconds"));
    CHECK(j["format_versions"].is_object());
    REQUIRE(j["outputs"].size() == 2);
    CHECK(j["outputs"][0]["crc32"] == file_crc32(dir.path / "a.csv"));
    CHECK(j["outputs"][0]["bytes"] == 4);

    m.write(dir.path / "manifest.json");
    CHECK(verify_manifest(dir.path / "manifest.json").empty());
    write_file_atomic(dir.path / "b.csv", "y\n3\n");
    CHECK(verify_manifest(dir.path / "manifest.json") == std::vector<std::string>{"b.csv"});
    fs::remove(dir.path / "a.csv");
    CHECK(verify_manifest(dir.path / "manifest.json").size() == 2);
}

TEST_CASE("test1 recipe at a tiny size")
{
    TempDir dir("sif_io_test1");
    Test1Params p;
    p.n = 3;
    p.radius = std::numbers::pi / 10;
    const Test1Summary s = run_test1(p, dir.path);
    for (const char* f : {"eigs_exact.csv", "eigs_op.csv", "eigs_symbol.csv"})
        CHECK(data_rows(dir.path / f) == 9);
    CHECK(data_rows(dir.path / "zoom.csv") == 2);
    CHECK(verify_manifest(dir.path / "manifest.json").empty());
    CHECK(s.comparison.exact_re.size() == 9);

    p.radius = std::numbers::pi / 2;
    CHECK_THROWS_AS(run_test1(p, dir.path), InvalidArgument);
    p.radius = 0.3;
    CHECK_THROWS_AS(run_test1(p, dir.path / "missing"), IoError);
}

TEST_CASE("test2 recipe: truncated curves and repeatable files")
{
    TempDir a("sif_io_test2a"), b("sif_io_test2b");
    Test2Params p;
    p.n = 20;
    p.radius = std::numbers::pi / 8;
    p.iterations = 10;
    const Test2Summary s = run_test2(p, a.path);
    run_test2(p, b.path);
    CHECK(s.naive_curve.size() == 11);
    CHECK(s.sif_curve.size() == 11);
    CHECK(data_rows(a.path / "err_curves.csv") == 11);
    for (const char* f : {"signal.csv", "imf1_naive.csv", "imf1_sif.csv", "err_map_naive.csv", "err_map_sif.csv",
                          "err_curves.csv"}) {
        CHECK(fs::exists(a.path / f));
        CHECK(read_file(a.path / f) == read_file(b.path / f));
    }
    CHECK(verify_manifest(a.path / "manifest.json").empty());
    CHECK(same(read_signal(a.path / "signal.csv"), preset_signal(SphereGrid(20), "two-wave")));
    CHECK_THROWS_AS(run_test2(p, a.path / "missing"), IoError);
}

TEST_CASE("exit codes")
{
    CHECK(exit_code_for(InvalidArgument("x")) == 2);
    CHECK(exit_code_for(IndexError("x")) == 2);
    CHECK(exit_code_for(DimensionError("x")) == 2);
    CHECK(exit_code_for(ResourceError("x")) == 3);
    CHECK(exit_code_for(NumericalError("x")) == 4);
    CHECK(exit_code_for(IoError("x")) == 1);
    CHECK(exit_code_for(ChecksumError("x")) == 1);
}
