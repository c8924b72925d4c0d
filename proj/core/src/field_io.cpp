#include "waveorbit/field_io.hpp"

#include <bit>
#include <cstdint>
#include <fstream>
#include <stdexcept>

namespace waveorbit {

static_assert(std::endian::native == std::endian::little,
              "field records are little-endian; byte swapping is not implemented");

namespace {
void put_i64(std::ostream& os, std::int64_t v) { os.write(reinterpret_cast<const char*>(&v), 8); }
void put_f64(std::ostream& os, double v) { os.write(reinterpret_cast<const char*>(&v), 8); }
std::int64_t get_i64(std::istream& is) {
    std::int64_t v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
double get_f64(std::istream& is) {
    double v;
    is.read(reinterpret_cast<char*>(&v), 8);
    return v;
}
}  // namespace

void write_field(const std::filesystem::path& path, const ComplexField& u) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("write_field: cannot open " + path.string());
    const Grid& g = u.grid();
    put_i64(os, g.dim());
    for (int d = 0; d < g.dim(); ++d) put_f64(os, g.extent(d));
    for (int d = 0; d < g.dim(); ++d) put_i64(os, g.points(d));
    os.write(reinterpret_cast<const char*>(u.values().data()),
             static_cast<std::streamsize>(sizeof(cplx) * u.size()));
    if (!os) throw std::runtime_error("write_field: short write to " + path.string());
}

ComplexField read_field(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw std::runtime_error("read_field: cannot open " + path.string());
    const std::int64_t dim = get_i64(is);
    if (dim < 1 || dim > 3) throw std::runtime_error("read_field: bad dimension in header");
    std::array<double, 3> extent{0, 0, 0};
    std::array<std::int64_t, 3> points{1, 1, 1};
    for (int d = 0; d < dim; ++d) extent[static_cast<std::size_t>(d)] = get_f64(is);
    for (int d = 0; d < dim; ++d) points[static_cast<std::size_t>(d)] = get_i64(is);
    auto grid = std::make_shared<const Grid>(static_cast<int>(dim), extent, points);
    std::vector<cplx> vals(static_cast<std::size_t>(grid->point_count()));
    is.read(reinterpret_cast<char*>(vals.data()),
            static_cast<std::streamsize>(sizeof(cplx) * vals.size()));
    if (!is) throw std::runtime_error("read_field: truncated record in " + path.string());
    return ComplexField(std::move(grid), std::move(vals));
}

}  // namespace waveorbit
