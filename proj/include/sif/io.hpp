#pragma once

#include "sif/spherical_signal.hpp"

#include <json.hpp>

#include <chrono>
#include <complex>
#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace sif {

inline constexpr const char* tool_version = "0.1.0";
inline constexpr int signal_csv_version = 1;
inline constexpr int manifest_version = 1;

std::uint32_t crc32_of(std::string_view bytes);
std::uint32_t file_crc32(const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
// temp file in the same directory, then rename
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

// shortest round-trip decimal form
std::string format_double(double x);

// "# N=<N>", "i,j,value", then N^2 rows
std::string signal_to_csv(const SphericalSignal& g);
SphericalSignal signal_from_csv(const std::string& text);
void write_signal(const std::filesystem::path& path, const SphericalSignal& g);
SphericalSignal read_signal(const std::filesystem::path& path);

// "re,im" rows
std::string complex_to_csv(const std::vector<std::complex<double>>& values);

// one value per line; '#' lines and a non-numeric header are skipped
std::vector<double> read_series(const std::filesystem::path& path);
std::string series_to_csv(const std::vector<double>& v, const std::string& column);

class RunManifest {
public:
    explicit RunManifest(std::string command);

    nlohmann::json& params() { return params_; }
    nlohmann::json& results() { return results_; }
    void add_timing(const std::string& name, double seconds) { timings_[name] = seconds; }
    // records size and crc32 of a written output
    void add_output(const std::filesystem::path& path);

    nlohmann::json to_json() const;
    void write(const std::filesystem::path& path) const;

private:
    std::string command_;
    nlohmann::json params_ = nlohmann::json::object();
    nlohmann::json results_ = nlohmann::json::object();
    nlohmann::json timings_ = nlohmann::json::object();
    nlohmann::json outputs_ = nlohmann::json::array();
    std::chrono::steady_clock::time_point start_;
};

// checks every output listed in a manifest; returns the mismatching names
std::vector<std::string> verify_manifest(const std::filesystem::path& manifest_path);

} // namespace sif
