#pragma once

#include <string>
#include <utility>
#include <vector>

#include "peterlin/grid.hpp"
#include "peterlin/hermite.hpp"

namespace peterlin {

/// Field snapshot ("PKF1"): magic bytes "PKF1", little-endian u32 nx, ny,
/// n_fields, then per field a 32-byte zero-padded ASCII name followed by
/// nx*ny float64 values in row-major (y-outer) order.
struct FieldSnapshot {
    int nx = 0;
    int ny = 0;
    std::vector<std::pair<std::string, std::vector<double>>> fields;

    const std::vector<double>* find(const std::string& name) const;
};

void write_pkf(const std::string& path, const FieldSnapshot& snap);
FieldSnapshot read_pkf(const std::string& path);

/// Builds a snapshot entry from a scalar field (cells are already stored
/// y-outer row-major).
void add_field(FieldSnapshot& snap, const std::string& name, const ScalarField& f);
ScalarField extract_field(const FieldSnapshot& snap, const std::string& name);

/// Kinetic snapshot ("PKH1"): magic "PKH1", little-endian u32 nx, ny, u32
/// degree bound N_H, float64 a, then per cell the coefficient vector in
/// lexicographic (k1,k2) order, row-major over cells, float64.
void write_pkh(const std::string& path, const HermiteField& field, const HermiteBasis& basis);

struct KineticSnapshot {
    int nx = 0;
    int ny = 0;
    int max_degree = 0;
    double a = 1.0;
    std::vector<double> coeffs;  ///< cell-major, n_modes per cell
};
KineticSnapshot read_pkh(const std::string& path);

}  // namespace peterlin
