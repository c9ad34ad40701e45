#pragma once

#include "sif/decomposition.hpp"
#include "sif/spectrum.hpp"

#include <filesystem>
#include <numbers>
#include <vector>

namespace sif {

struct Test1Params {
    int n = 100;
    double radius = std::numbers::pi / 10;
    int quad_level = 8;
    int oversample = 4;
};

struct Test1Summary {
    SpectrumComparison comparison;
    double min_exact = 0.0, min_op = 0.0, min_symbol = 0.0;
};

// eigs_exact.csv, eigs_op.csv, eigs_symbol.csv, zoom.csv, manifest.json
Test1Summary run_test1(const Test1Params& p, const std::filesystem::path& outdir);

struct Test2Params {
    int n = 100;
    double radius = std::numbers::pi / 20;
    double delta = 1e-3;
    int iterations = 200;
    OperatorKind kind = OperatorKind::approx_op;
    int quad_level = 4;
};

struct Test2Summary {
    ImfDiagnostics naive, sif;
    std::vector<double> naive_curve, sif_curve;
    double naive_final_over_initial = 0.0;
    double naive_max_over_initial = 0.0;
    double sif_max_over_initial = 0.0;
    int sif_argmin = 0;
    double imf_error_naive = 0.0, imf_error_sif = 0.0;
};

// computes everything without touching the filesystem
Test2Summary compute_test2(const Test2Params& p);
// signal.csv, imf1_naive.csv, imf1_sif.csv, err_map_naive.csv, err_map_sif.csv,
// err_curves.csv, manifest.json
Test2Summary run_test2(const Test2Params& p, const std::filesystem::path& outdir);

void require_directory(const std::filesystem::path& dir);

} // namespace sif
