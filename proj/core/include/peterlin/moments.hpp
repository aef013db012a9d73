#pragma once

#include <span>
#include <vector>

#include "peterlin/constitutive.hpp"
#include "peterlin/hermite.hpp"
#include "peterlin/spectral.hpp"

namespace peterlin {

/// Conformation tensor C(M psi-hat) = integral of R (x) R against M psi-hat,
/// exactly from the degree <= 2 coefficients:
///   C11 = a (c00 + sqrt(2) c20),  C22 = a (c00 + sqrt(2) c02),  C12 = a c11.
/// Linear in the coefficients; symmetric by construction.
TensorField conformation_from_psi(const HermiteField& field, const HermiteBasis& basis);

/// Cell-local version on one coefficient vector.
SymMat2 conformation_from_coeffs(std::span<const double> coeffs, const HermiteBasis& basis);

/// Radial moment integral of M |R|^r psi-hat per cell, by Gauss-Hermite
/// quadrature. r must be even and within the exactness range of the rule
/// (r <= 2 n_quad - 2).
ScalarField radial_moment(const HermiteField& field, int r, const HermiteBasis& basis);

/// Relative entropy integral of M F(psi-hat) per cell with
/// F(s) = s (log s - 1) + 1, evaluated over quadrature nodes where the
/// reconstructed psi-hat is positive. Negative-node mass is reported
/// separately (reconstruction_stats).
ScalarField relative_entropy(const HermiteField& field, const HermiteBasis& basis);

/// Fisher information 4 * integral of M |grad_R sqrt(psi-hat)|^2 per cell,
/// from nodal values and the spectral R-derivative tables, over positive
/// nodes.
ScalarField fisher_information(const HermiteField& field, const HermiteBasis& basis);

/// Pointwise reconstruction diagnostics: per-cell minimum nodal value of
/// psi-hat and the quadrature mass of its negative part.
struct NodalStats {
    ScalarField min_psi;
    ScalarField negativity_mass;
};
NodalStats reconstruction_stats(const HermiteField& field, const HermiteBasis& basis);

/// Discrete strong-form residual of the conformation equation evaluated on
/// a time series of C (and u) with spacing dt:
///   (C^{n+1}-C^n)/dt + (u.grad)C - (grad u)C - C(grad u)^T
///     - reaction(C) - eps Lap C   at time level n,
/// measured in discrete L2 over space-time and normalized by ||C||.
/// Series must have equal lengths (>= 2 for C, matching u per level).
double closure_residual(const std::vector<TensorField>& c_series,
                        const std::vector<VectorField>& u_series,
                        const GammaSpec& gamma1, const GammaSpec& gamma2,
                        const NondimParams& params, double dt, SpectralWorkspace& ws);

/// Transport-free residual for a space-homogeneous series with a frozen
/// velocity gradient: (C^{n+1}-C^n)/dt - stretching - reaction at level n,
/// in the same normalized space-time norm.
double closure_residual_homogeneous(const std::vector<SymMat2>& c_series, const Mat2& grad_u,
                                    const GammaSpec& gamma1, const GammaSpec& gamma2,
                                    const NondimParams& params, double dt);

/// Streaming form of the same residual: feed consecutive (C, u) levels.
class ClosureResidualAccumulator {
public:
    ClosureResidualAccumulator(const GammaSpec& gamma1, const GammaSpec& gamma2,
                               const NondimParams& params, double dt);

    void push(const TensorField& c, const VectorField& u, SpectralWorkspace& ws);
    double value() const;
    long levels() const { return count_; }

private:
    GammaSpec gamma1_, gamma2_;
    NondimParams params_;
    double dt_;
    bool has_prev_ = false;
    TensorField prev_c_;
    VectorField prev_u_;
    double num_ = 0.0, den_ = 0.0;
    long count_ = 0;
};

}  // namespace peterlin
