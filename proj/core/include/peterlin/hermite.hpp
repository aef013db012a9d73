#pragma once

#include <span>
#include <vector>

#include "peterlin/constitutive.hpp"
#include "peterlin/grid.hpp"

namespace peterlin {

/// Gauss-Hermite rule for the normalized Gaussian weight
/// exp(-x^2/2)/sqrt(2 pi): sum of weights is 1, polynomials of degree
/// <= 2n-1 are integrated exactly.
struct GaussHermite {
    std::vector<double> nodes;    ///< ascending, symmetric about 0
    std::vector<double> weights;  ///< positive, sum 1

    static GaussHermite compute(int n);
};

/// One mode of the 2D weighted Hermite basis.
struct HermiteMode {
    int k1 = 0;
    int k2 = 0;
    int degree() const { return k1 + k2; }
};

/// Orthonormal Maxwellian-weighted Hermite basis on R^2 with weight
/// M(R) = (2 pi a)^{-1} exp(-|R|^2/(2a)):
///
///   h_{k1,k2}(R) = He_{k1}(R1/sqrt(a)) He_{k2}(R2/sqrt(a)) / sqrt(k1! k2!),
///
/// restricted to total degree k1+k2 <= max_degree. Stores the tensor
/// Gauss-Hermite rule rescaled to weight M and the basis/derivative value
/// tables at its nodes.
class HermiteBasis {
public:
    /// Quadrature order defaults to max_degree + 3 per dimension.
    HermiteBasis(double a, int max_degree);
    HermiteBasis(double a, int max_degree, int n_quad);

    double a() const { return a_; }
    int max_degree() const { return max_degree_; }
    int n_quad() const { return n_quad_; }
    long n_nodes() const { return static_cast<long>(n_quad_) * n_quad_; }
    int n_modes() const { return static_cast<int>(modes_.size()); }
    const std::vector<HermiteMode>& modes() const { return modes_; }
    const HermiteMode& mode(int m) const { return modes_[m]; }

    /// Index of mode (k1,k2), or -1 when outside the truncation.
    int mode_index(int k1, int k2) const;

    /// Eigenvalue of -(1/M) div_R (M grad_R .) on mode m: (k1+k2)/a.
    double ou_eigenvalue(int m) const { return static_cast<double>(modes_[m].degree()) / a_; }

    // 1D rule in the scaled variable u = R/sqrt(a)
    const std::vector<double>& nodes_u() const { return gh_.nodes; }
    const std::vector<double>& weights_1d() const { return gh_.weights; }
    /// Physical node coordinate R = sqrt(a) * u_q.
    double node_r(int q) const { return node_r_[q]; }

    // tensor-node tables; node index q = q1 * n_quad + q2
    double weight(long q) const { return w2_[q]; }
    double node_r1(long q) const { return node_r_[q / n_quad_]; }
    double node_r2(long q) const { return node_r_[q % n_quad_]; }
    /// h_m at node q.
    double value(int m, long q) const { return val_[m][q]; }
    /// d h_m / d R1 and / d R2 at node q.
    double deriv_r1(int m, long q) const { return dr1_[m][q]; }
    double deriv_r2(int m, long q) const { return dr2_[m][q]; }
    std::span<const double> values(int m) const { return val_[m]; }

    /// Evaluates sum_m c[m] h_m at node q.
    double eval_at_node(std::span<const double> c, long q) const;

private:
    double a_;
    int max_degree_;
    int n_quad_;
    GaussHermite gh_;
    std::vector<double> node_r_;
    std::vector<HermiteMode> modes_;
    std::vector<int> index_;  // (k1*(max_degree+1)+k2) -> mode index or -1
    std::vector<double> w2_;
    std::vector<std::vector<double>> val_, dr1_, dr2_;
};

/// Values of the normalized 1D Hermite polynomials He_n(x)/sqrt(n!) for
/// n <= nmax at the given points, via the stable normalized recurrence.
/// Row n, column i.
std::vector<std::vector<double>> hermite_normalized_table(int nmax, std::span<const double> x);

/// psi-hat = psi/M represented per grid cell by coefficients in the
/// orthonormal basis. Modes are stored as whole scalar fields so spatial
/// transport acts on contiguous data; the per-cell coefficient vector is
/// gathered on demand.
class HermiteField {
public:
    HermiteField(const TorusGrid2D& grid, const HermiteBasis& basis);

    int n_modes() const { return static_cast<int>(modes_.size()); }
    long n_cells() const { return modes_.empty() ? 0 : modes_[0].size(); }
    int nx() const { return modes_[0].nx(); }
    int ny() const { return modes_[0].ny(); }

    ScalarField& mode(int m) { return modes_[m]; }
    const ScalarField& mode(int m) const { return modes_[m]; }

    /// Mass per cell is the coefficient of the (0,0) mode.
    const ScalarField& mass() const { return modes_[0]; }

    void gather_cell(long cell, std::span<double> out) const;
    void scatter_cell(long cell, std::span<const double> in);

    /// Sets every cell to the same coefficient vector.
    void fill_uniform(std::span<const double> coeffs);

    bool all_finite(long* bad_cell = nullptr, int* bad_mode = nullptr) const;

private:
    std::vector<ScalarField> modes_;
};

}  // namespace peterlin
