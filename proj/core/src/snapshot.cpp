#include "peterlin/snapshot.hpp"

#include <bit>
#include <cstdint>
#include <cstring>
#include <fstream>

#include "peterlin/errors.hpp"

static_assert(std::endian::native == std::endian::little,
              "snapshot formats are little-endian; byte swapping is not implemented");

namespace peterlin {

namespace {

void write_u32(std::ofstream& os, uint32_t v) {
    os.write(reinterpret_cast<const char*>(&v), 4);
}

uint32_t read_u32(std::ifstream& is) {
    uint32_t v = 0;
    is.read(reinterpret_cast<char*>(&v), 4);
    return v;
}

void write_f64(std::ofstream& os, const double* p, size_t n) {
    os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(8 * n));
}

void read_f64(std::ifstream& is, double* p, size_t n) {
    is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(8 * n));
}

}  // namespace

const std::vector<double>* FieldSnapshot::find(const std::string& name) const {
    for (const auto& [n, v] : fields)
        if (n == name) return &v;
    return nullptr;
}

void write_pkf(const std::string& path, const FieldSnapshot& snap) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write("PKF1", 4);
    write_u32(os, static_cast<uint32_t>(snap.nx));
    write_u32(os, static_cast<uint32_t>(snap.ny));
    write_u32(os, static_cast<uint32_t>(snap.fields.size()));
    const size_t ncell = static_cast<size_t>(snap.nx) * snap.ny;
    for (const auto& [name, values] : snap.fields) {
        if (name.size() > 32) throw IoError("field name longer than 32 bytes: " + name);
        if (values.size() != ncell) throw IoError("field size mismatch for: " + name);
        char buf[32] = {0};
        std::memcpy(buf, name.data(), name.size());
        os.write(buf, 32);
        write_f64(os, values.data(), values.size());
    }
    if (!os) throw IoError("write failed: " + path);
}

FieldSnapshot read_pkf(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "PKF1", 4) != 0)
        throw IoError("not a PKF1 snapshot: " + path);
    FieldSnapshot snap;
    snap.nx = static_cast<int>(read_u32(is));
    snap.ny = static_cast<int>(read_u32(is));
    const uint32_t nf = read_u32(is);
    if (!is || snap.nx <= 0 || snap.ny <= 0) throw IoError("corrupt PKF1 header: " + path);
    const size_t ncell = static_cast<size_t>(snap.nx) * snap.ny;
    for (uint32_t f = 0; f < nf; ++f) {
        char buf[33] = {0};
        is.read(buf, 32);
        std::vector<double> values(ncell);
        read_f64(is, values.data(), ncell);
        if (!is) throw IoError("truncated PKF1 snapshot: " + path);
        snap.fields.emplace_back(std::string(buf), std::move(values));
    }
    return snap;
}

void add_field(FieldSnapshot& snap, const std::string& name, const ScalarField& f) {
    if (snap.nx == 0) {
        snap.nx = f.nx();
        snap.ny = f.ny();
    } else if (snap.nx != f.nx() || snap.ny != f.ny()) {
        throw ShapeError("snapshot: field shape differs from snapshot shape");
    }
    snap.fields.emplace_back(name,
                             std::vector<double>(f.data(), f.data() + f.size()));
}

ScalarField extract_field(const FieldSnapshot& snap, const std::string& name) {
    const std::vector<double>* v = snap.find(name);
    if (!v) throw IoError("snapshot has no field named '" + name + "'");
    ScalarField f(TorusGrid2D{snap.nx, snap.ny});
    std::memcpy(f.data(), v->data(), sizeof(double) * v->size());
    return f;
}

void write_pkh(const std::string& path, const HermiteField& field, const HermiteBasis& basis) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw IoError("cannot open for writing: " + path);
    os.write("PKH1", 4);
    write_u32(os, static_cast<uint32_t>(field.nx()));
    write_u32(os, static_cast<uint32_t>(field.ny()));
    write_u32(os, static_cast<uint32_t>(basis.max_degree()));
    const double a = basis.a();
    write_f64(os, &a, 1);
    const int nm = field.n_modes();
    std::vector<double> cell(nm);
    for (long i = 0; i < field.n_cells(); ++i) {
        field.gather_cell(i, cell);
        write_f64(os, cell.data(), cell.size());
    }
    if (!os) throw IoError("write failed: " + path);
}

KineticSnapshot read_pkh(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open: " + path);
    char magic[4];
    is.read(magic, 4);
    if (!is || std::memcmp(magic, "PKH1", 4) != 0)
        throw IoError("not a PKH1 snapshot: " + path);
    KineticSnapshot snap;
    snap.nx = static_cast<int>(read_u32(is));
    snap.ny = static_cast<int>(read_u32(is));
    snap.max_degree = static_cast<int>(read_u32(is));
    read_f64(is, &snap.a, 1);
    if (!is || snap.nx <= 0 || snap.ny <= 0 || snap.max_degree < 0)
        throw IoError("corrupt PKH1 header: " + path);
    const long nm = static_cast<long>(snap.max_degree + 1) * (snap.max_degree + 2) / 2;
    const long total = static_cast<long>(snap.nx) * snap.ny * nm;
    snap.coeffs.resize(total);
    read_f64(is, snap.coeffs.data(), static_cast<size_t>(total));
    if (!is) throw IoError("truncated PKH1 snapshot: " + path);
    return snap;
}

}  // namespace peterlin
