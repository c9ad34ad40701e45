#include "sif/io.hpp"

#include "sif/errors.hpp"
#include "sif/sift_operator.hpp"

#include <zlib.h>

#include <charconv>
#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

namespace sif {

namespace fs = std::filesystem;

std::uint32_t crc32_of(std::string_view bytes)
{
    uLong crc = crc32(0L, Z_NULL, 0);
    // zlib takes uInt lengths, feed in chunks
    std::size_t pos = 0;
    while (pos < bytes.size()) {
        const std::size_t k = std::min<std::size_t>(bytes.size() - pos, 1u << 30);
        crc = crc32(crc, reinterpret_cast<const Bytef*>(bytes.data() + pos), uInt(k));
        pos += k;
    }
    return std::uint32_t(crc);
}

std::uint32_t file_crc32(const fs::path& path) { return crc32_of(read_file(path)); }

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open '" + path.string() + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad())
        throw IoError("read failure on '" + path.string() + "'");
    return ss.str();
}

void write_file_atomic(const fs::path& path, std::string_view content)
{
    const fs::path dir = path.has_parent_path() ? path.parent_path() : fs::path(".");
    if (!fs::is_directory(dir))
        throw IoError("output directory '" + dir.string() + "' does not exist");
    std::random_device rd;
    const fs::path tmp = dir / ("." + path.filename().string() + ".tmp" + std::to_string(rd()));
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw IoError("cannot open '" + tmp.string() + "' for writing");
        out.write(content.data(), std::streamsize(content.size()));
        out.flush();
        if (!out) {
            std::error_code ec;
            fs::remove(tmp, ec);
            throw IoError("write failure on '" + tmp.string() + "'");
        }
    }
    std::error_code ec;
    fs::rename(tmp, path, ec);
    if (ec) {
        fs::remove(tmp, ec);
        throw IoError("cannot move output into place at '" + path.string() + "'");
    }
}

std::string format_double(double x)
{
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, x);
    return std::string(buf, res.ptr);
}

std::string signal_to_csv(const SphericalSignal& g)
{
    const int n = g.n();
    std::string out = "# N=" + std::to_string(n) + "\ni,j,value\n";
    out.reserve(out.size() + g.grid().size() * 28);
    for (int i = 1; i <= n; ++i)
        for (int j = 1; j <= n; ++j) {
            out += std::to_string(i);
            out += ',';
            out += std::to_string(j);
            out += ',';
            out += format_double(g.values()[std::size_t(j - 1) * n + (i - 1)]);
            out += '\n';
        }
    return out;
}

namespace {
double parse_number(std::string_view s, int line)
{
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t'))
        s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r'))
        s.remove_suffix(1);
    double x = 0.0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), x);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw FormatError("line " + std::to_string(line) + ": cannot parse number '" + std::string(s) + "'");
    return x;
}
} // namespace

SphericalSignal signal_from_csv(const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int n = -1;
    int lineno = 0;
    std::vector<double> vals;
    std::vector<char> seen;
    std::size_t filled = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line[0] == '#') {
            const auto p = line.find("N=");
            if (p != std::string::npos && n < 0) {
                n = int(parse_number(std::string_view(line).substr(p + 2), lineno));
                if (n < 2)
                    throw FormatError("signal header declares N=" + std::to_string(n));
                vals.assign(std::size_t(n) * n, 0.0);
                seen.assign(std::size_t(n) * n, 0);
            }
            continue;
        }
        if (line.rfind("i,", 0) == 0)
            continue;
        if (n < 0)
            throw FormatError("signal CSV lacks the '# N=<N>' header");
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 == std::string::npos ? c1 : c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw FormatError("line " + std::to_string(lineno) + ": expected i,j,value");
        const std::string_view sv(line);
        const int i = int(parse_number(sv.substr(0, c1), lineno));
        const int j = int(parse_number(sv.substr(c1 + 1, c2 - c1 - 1), lineno));
        const double v = parse_number(sv.substr(c2 + 1), lineno);
        if (i < 1 || i > n || j < 1 || j > n)
            throw FormatError("line " + std::to_string(lineno) + ": cell index out of range");
        const std::size_t k = std::size_t(j - 1) * n + (i - 1);
        if (seen[k])
            throw FormatError("line " + std::to_string(lineno) + ": duplicate cell");
        seen[k] = 1;
        vals[k] = v;
        ++filled;
    }
    if (n < 0)
        throw FormatError("signal CSV lacks the '# N=<N>' header");
    if (filled != vals.size())
        throw FormatError("signal CSV has " + std::to_string(filled) + " of " + std::to_string(vals.size())
                          + " cells");
    return SphericalSignal(SphereGrid(n), std::move(vals));
}

void write_signal(const fs::path& path, const SphericalSignal& g) { write_file_atomic(path, signal_to_csv(g)); }

SphericalSignal read_signal(const fs::path& path) { return signal_from_csv(read_file(path)); }

std::string complex_to_csv(const std::vector<std::complex<double>>& values)
{
    std::string out = "re,im\n";
    for (const auto& z : values)
        out += format_double(z.real()) + "," + format_double(z.imag()) + "\n";
    return out;
}

std::vector<double> read_series(const fs::path& path)
{
    const std::string text = read_file(path);
    std::istringstream in(text);
    std::string line;
    std::vector<double> out;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty() || line[0] == '#')
            continue;
        // take the last column so "index,value" files also work
        const auto c = line.rfind(',');
        const std::string_view cell = c == std::string::npos ? std::string_view(line) : std::string_view(line).substr(c + 1);
        if (out.empty()) {
            double x;
            const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), x);
            if (res.ec != std::errc())
                continue; // header
        }
        out.push_back(parse_number(cell, lineno));
    }
    return out;
}

std::string series_to_csv(const std::vector<double>& v, const std::string& column)
{
    std::string out = "index," + column + "\n";
    for (std::size_t k = 0; k < v.size(); ++k)
        out += std::to_string(k) + "," + format_double(v[k]) + "\n";
    return out;
}

RunManifest::RunManifest(std::string command) : command_(std::move(command)), start_(std::chrono::steady_clock::now())
{
}

void RunManifest::add_output(const fs::path& path)
{
    const std::string bytes = read_file(path);
    outputs_.push_back({{"file", path.filename().string()},
                        {"bytes", bytes.size()},
                        {"crc32", crc32_of(bytes)}});
}

nlohmann::json RunManifest::to_json() const
{
    nlohmann::json t = timings_;
    t["total_seconds"] =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    return {{"command", command_},
            {"tool_version", tool_version},
            {"format_versions",
             {{"manifest", manifest_version}, {"signal_csv", signal_csv_version}, {"operator", operator_format_version}}},
            {"params", params_},
            {"results", results_},
            {"timings", t},
            {"outputs", outputs_}};
}

void RunManifest::write(const fs::path& path) const { write_file_atomic(path, to_json().dump(2) + "\n"); }

std::vector<std::string> verify_manifest(const fs::path& manifest_path)
{
    const auto j = nlohmann::json::parse(read_file(manifest_path));
    const fs::path dir = manifest_path.parent_path();
    std::vector<std::string> bad;
    for (const auto& o : j.at("outputs")) {
        const std::string name = o.at("file");
        std::error_code ec;
        if (!fs::exists(dir / name, ec) || file_crc32(dir / name) != o.at("crc32").get<std::uint32_t>())
            bad.push_back(name);
    }
    return bad;
}

} // namespace sif
