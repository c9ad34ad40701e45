// Operator container, little-endian:
//   "SIFOPER\0", u32 version, i32 N, f64 R, u8 has_m, f64 m, u8 kind,
//   i32 quad_level, u8 renormalized, u64 band count,
//   per band: i32 t, i32 s, f64[N] values,
//   u32 crc32 of everything above.
#include "sif/errors.hpp"
#include "sif/io.hpp"
#include "sif/sift_operator.hpp"

#include <zlib.h>

#include <bit>
#include <cstring>
#include <fstream>
#include <iterator>

namespace sif {

static_assert(std::endian::native == std::endian::little, "operator files assume a little-endian host");

namespace {
constexpr char magic[8] = {'S', 'I', 'F', 'O', 'P', 'E', 'R', '\0'};

template <class T>
void put(std::string& buf, const T& x)
{
    const char* p = reinterpret_cast<const char*>(&x);
    buf.append(p, p + sizeof(T));
}

class Reader {
public:
    explicit Reader(const std::string& b) : buf_(b) {}

    template <class T>
    T get()
    {
        T x;
        need(sizeof(T));
        std::memcpy(&x, buf_.data() + pos_, sizeof(T));
        pos_ += sizeof(T);
        return x;
    }

    void need(std::size_t k) const
    {
        if (pos_ + k > buf_.size())
            throw ChecksumError("operator file is truncated");
    }

    std::size_t pos() const { return pos_; }

private:
    const std::string& buf_;
    std::size_t pos_ = 0;
};
} // namespace

void save_operator(const SiftOperator& op, const std::filesystem::path& path)
{
    std::string buf(magic, magic + 8);
    put(buf, operator_format_version);
    put(buf, std::int32_t(op.grid().n()));
    put(buf, op.filter().radius());
    const auto m = op.filter().cells();
    put(buf, std::uint8_t(m.has_value()));
    put(buf, m.value_or(0.0));
    put(buf, std::uint8_t(op.kind()));
    put(buf, std::int32_t(op.quad_level()));
    put(buf, std::uint8_t(op.renormalized()));
    put(buf, std::uint64_t(op.bands().size()));
    for (const Band& b : op.bands()) {
        put(buf, std::int32_t(b.t));
        put(buf, std::int32_t(b.s));
        buf.append(reinterpret_cast<const char*>(b.values.data()), b.values.size() * sizeof(double));
    }
    put(buf, std::uint32_t(crc32_of(buf)));
    write_file_atomic(path, buf);
}

SiftOperator load_operator(const std::filesystem::path& path)
{
    const std::string buf = read_file(path);
    if (buf.size() < 12 || std::memcmp(buf.data(), magic, 8) != 0)
        throw FormatError("'" + path.string() + "' is not an operator file");
    Reader r(buf);
    for (int k = 0; k < 8; ++k)
        r.get<char>();
    const auto version = r.get<std::uint32_t>();
    if (version != operator_format_version)
        throw VersionError("operator file version " + std::to_string(version) + ", this build reads version "
                           + std::to_string(operator_format_version));
    if (buf.size() < 16 || crc32_of(std::string_view(buf).substr(0, buf.size() - 4)) != [&] {
            std::uint32_t c;
            std::memcpy(&c, buf.data() + buf.size() - 4, 4);
            return c;
        }())
        throw ChecksumError("operator file checksum mismatch (corrupt or truncated)");

    const int n = r.get<std::int32_t>();
    const double radius = r.get<double>();
    const bool has_m = r.get<std::uint8_t>() != 0;
    const double m = r.get<double>();
    const auto kind_raw = r.get<std::uint8_t>();
    const int quad = r.get<std::int32_t>();
    const bool renorm = r.get<std::uint8_t>() != 0;
    const auto count = r.get<std::uint64_t>();
    if (kind_raw > 1)
        throw FormatError("operator file has unknown kind " + std::to_string(kind_raw));

    const SphereGrid grid(n);
    const ConeFilter filter = has_m ? ConeFilter::from_cells(m, grid) : ConeFilter::from_radius(radius);
    std::vector<Band> bands;
    bands.reserve(count);
    for (std::uint64_t b = 0; b < count; ++b) {
        Band band;
        band.t = r.get<std::int32_t>();
        band.s = r.get<std::int32_t>();
        band.values.resize(n);
        for (int j = 0; j < n; ++j)
            band.values[j] = r.get<double>();
        bands.push_back(std::move(band));
    }
    if (r.pos() + 4 != buf.size())
        throw FormatError("operator file has trailing bytes");
    return SiftOperator(grid, filter, OperatorKind(kind_raw), quad, renorm, std::move(bands));
}

} // namespace sif
