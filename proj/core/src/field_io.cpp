#include "af/field_io.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "af/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "AFLD writer assumes a little-endian host");

namespace af {
namespace {

constexpr char kMagic[4] = {'A', 'F', 'L', 'D'};
constexpr std::uint32_t kVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
    os.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <typename T>
T get(std::istream& is) {
    T v{};
    is.read(reinterpret_cast<char*>(&v), sizeof(T));
    return v;
}

}  // namespace

void write_field(std::ostream& os, const ComplexField& u) {
    os.write(kMagic, 4);
    put<std::uint32_t>(os, kVersion);
    put<std::uint32_t>(os, static_cast<std::uint32_t>(u.grid.nx));
    put<std::uint32_t>(os, static_cast<std::uint32_t>(u.grid.ny));
    put<double>(os, u.grid.origin.x);
    put<double>(os, u.grid.origin.y);
    put<double>(os, u.grid.spacing.x);
    put<double>(os, u.grid.spacing.y);
    put<std::uint8_t>(os, static_cast<std::uint8_t>(u.grid.bc));
    for (const auto& v : u.values) {
        put<double>(os, v.real());
        put<double>(os, v.imag());
    }
    if (!os) throw Error(ErrorKind::Resource, "write_field: stream write failed");
}

void write_field(const std::string& path, const ComplexField& u) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw Error(ErrorKind::Resource, "write_field: cannot open " + path);
    write_field(os, u);
}

ComplexField read_field(std::istream& is) {
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, kMagic, 4) != 0)
        throw Error(ErrorKind::Io, "read_field: bad magic, not an AFLD file");
    const auto version = get<std::uint32_t>(is);
    if (version != kVersion)
        throw Error(ErrorKind::Io, "read_field: unsupported AFLD version " + std::to_string(version));
    Grid2D g;
    g.nx = static_cast<int>(get<std::uint32_t>(is));
    g.ny = static_cast<int>(get<std::uint32_t>(is));
    g.origin.x = get<double>(is);
    g.origin.y = get<double>(is);
    g.spacing.x = get<double>(is);
    g.spacing.y = get<double>(is);
    const auto tag = get<std::uint8_t>(is);
    if (tag > 2) throw Error(ErrorKind::Io, "read_field: bad boundary tag");
    g.bc = static_cast<BoundaryCondition>(tag);
    if (g.nx < 8 || g.ny < 8 || !(g.spacing.x > 0.0) || !(g.spacing.y > 0.0))
        throw Error(ErrorKind::Io, "read_field: invalid grid header");
    ComplexField u(g);
    for (auto& v : u.values) {
        double re = get<double>(is);
        double im = get<double>(is);
        v = {re, im};
    }
    if (!is) throw Error(ErrorKind::Io, "read_field: truncated AFLD payload");
    return u;
}

ComplexField read_field(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Io, "read_field: cannot open " + path);
    return read_field(is);
}

}  // namespace af
