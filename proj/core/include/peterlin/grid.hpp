#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "peterlin/errors.hpp"
#include "peterlin/tensor.hpp"

namespace peterlin {

/// Uniform periodic grid on [0,2pi)^2. Cell (ix,iy) sits at
/// (2pi ix/nx, 2pi iy/ny); storage is row-major with y outer,
/// i.e. cell index = iy*nx + ix.
struct TorusGrid2D {
    int nx = 0;
    int ny = 0;

    TorusGrid2D(int nx_, int ny_) : nx(nx_), ny(ny_) {
        if (nx < 8 || ny < 8 || nx % 2 != 0 || ny % 2 != 0)
            throw InvalidParameterError("grid: nx, ny must be even and >= 8");
    }

    long size() const { return static_cast<long>(nx) * ny; }
    double x(int ix) const { return 2.0 * M_PI * ix / nx; }
    double y(int iy) const { return 2.0 * M_PI * iy / ny; }
    double hx() const { return 2.0 * M_PI / nx; }
    double hy() const { return 2.0 * M_PI / ny; }
    double h_min() const { return hx() < hy() ? hx() : hy(); }

    bool operator==(const TorusGrid2D&) const = default;
};

/// Real scalar field sampled at cell centers.
class ScalarField {
public:
    ScalarField() = default;
    explicit ScalarField(const TorusGrid2D& g, double fill = 0.0)
        : nx_(g.nx), ny_(g.ny), v_(g.size(), fill) {}

    int nx() const { return nx_; }
    int ny() const { return ny_; }
    long size() const { return static_cast<long>(v_.size()); }

    double& operator[](long cell) { return v_[cell]; }
    double operator[](long cell) const { return v_[cell]; }
    double& at(int ix, int iy) { return v_[static_cast<long>(iy) * nx_ + ix]; }
    double at(int ix, int iy) const { return v_[static_cast<long>(iy) * nx_ + ix]; }

    double* data() { return v_.data(); }
    const double* data() const { return v_.data(); }
    std::span<double> values() { return v_; }
    std::span<const double> values() const { return v_; }

    void fill(double c) { v_.assign(v_.size(), c); }
    bool same_shape(const ScalarField& o) const { return nx_ == o.nx_ && ny_ == o.ny_; }

private:
    int nx_ = 0, ny_ = 0;
    std::vector<double> v_;
};

/// Fixed-order reductions. Serial ascending-cell-index loops so results are
/// bitwise reproducible for any thread count.
double field_sum(const ScalarField& f);
double field_mean(const ScalarField& f);
double field_min(const ScalarField& f);
double field_max(const ScalarField& f);
double field_max_abs(const ScalarField& f);
bool field_all_finite(const ScalarField& f, long* first_bad_cell = nullptr);

struct VectorField {
    ScalarField x, y;

    VectorField() = default;
    explicit VectorField(const TorusGrid2D& g) : x(g), y(g) {}
};

/// Symmetric 2x2 tensor field; the off-diagonal entry is stored once.
struct TensorField {
    ScalarField xx, xy, yy;

    TensorField() = default;
    explicit TensorField(const TorusGrid2D& g) : xx(g), xy(g), yy(g) {}

    SymMat2 cell(long i) const { return SymMat2{xx[i], xy[i], yy[i]}; }
    void set_cell(long i, const SymMat2& m) {
        xx[i] = m.xx;
        xy[i] = m.xy;
        yy[i] = m.yy;
    }
};

/// General (non-symmetric) 2x2 matrix field, used for velocity gradients.
struct Matrix2Field {
    ScalarField xx, xy, yx, yy;

    Matrix2Field() = default;
    explicit Matrix2Field(const TorusGrid2D& g) : xx(g), xy(g), yx(g), yy(g) {}

    Mat2 cell(long i) const { return Mat2{xx[i], xy[i], yx[i], yy[i]}; }
};

inline void require_same_shape(const ScalarField& a, const ScalarField& b, const char* where) {
    if (!a.same_shape(b)) throw ShapeError(std::string(where) + ": field shapes differ");
}

/// tr C as a scalar field.
ScalarField trace_field(const TensorField& c);

/// Smallest conformation eigenvalue over all cells (positivity monitor).
double min_conformation_eigenvalue(const TensorField& c);

}  // namespace peterlin
