#pragma once

#include <optional>
#include <span>
#include <vector>

#include "peterlin/constitutive.hpp"
#include "peterlin/hermite.hpp"
#include "peterlin/spectral.hpp"

namespace peterlin {

/// How the coefficient Gamma(tr C) is evaluated inside a kinetic step.
enum class GammaSource {
    given_field,      ///< tr C supplied by the caller (problem (FP))
    self_consistent,  ///< tr C(M psi-hat) of the field itself, lagged one step
};

struct FPConfig {
    double dt = 0.0;
    std::optional<double> cutoff_L;  ///< drift cut-off level L > 1
    GammaSource gamma_source = GammaSource::self_consistent;
    NondimParams params;
    GammaSpec gamma2 = GammaSpec::constant(1.0);

    /// Enforces the L > 1 and dt <= 1/(4 L^2) coupling.
    void validate() const;
};

/// Drift regularization: min(s, L). Continuous, non-decreasing in s.
double cutoff_beta(double s, double L);

/// Coefficients of psi-hat_0 = N(0, C0) density / M in the weighted basis,
/// in closed form (Gaussian moments of Hermite polynomials). Requires C0
/// symmetric positive definite with largest eigenvalue < 2a so the ratio
/// lies in the weighted L2 space. The mass coefficient is exactly 1.
std::vector<double> gaussian_psi_hat(const SymMat2& c0, const HermiteBasis& basis);

/// Backward-Euler solve of the Ornstein-Uhlenbeck term: per cell and mode,
/// c_k /= 1 + dt * Gamma(x) * (k1+k2)/a. The mass mode is untouched.
/// Requires Gamma > 0 everywhere.
void ou_implicit_solve(HermiteField& field, const ScalarField& gamma_coef, double dt,
                       const HermiteBasis& basis);

/// Galerkin image of -(1/M) div_R[(grad u) R M psi-hat], i.e. the rate
/// contributed by the configuration-space drift. Without a cut-off the
/// image is assembled exactly from the Hermite recurrences; with a
/// cut-off, psi-hat is reconstructed at the tensor quadrature nodes,
/// beta^L applied pointwise, and the weak form projected back. Either way
/// the (0,0) row vanishes identically, so mass is never touched.
HermiteField drift_apply(const HermiteField& field, const Matrix2Field& grad_u,
                         std::optional<double> cutoff_L, const HermiteBasis& basis);

/// Cell-local drift rate for a single coefficient vector (recurrence path).
void drift_apply_local(std::span<const double> coeffs, const Mat2& grad_u,
                       const HermiteBasis& basis, std::span<double> rate_out);

/// One IMEX Euler step of the kinetic equation: explicit x-advection
/// (pseudo-spectral per mode) and drift, then implicit OU (diagonal per
/// cell) and implicit eps*Laplacian (diagonal per mode in Fourier space).
/// trc_given must be non-null when cfg.gamma_source == given_field.
void fp_step(HermiteField& field, const VectorField& u, const ScalarField* trc_given,
             const FPConfig& cfg, const HermiteBasis& basis, SpectralWorkspace& ws);

/// Space-homogeneous kinetic step (drift + OU only) on one coefficient
/// vector with a frozen velocity gradient. Used for relaxation and
/// frozen-shear studies where the gradient is not realizable on the torus.
void fp_step_homogeneous(std::span<double> coeffs, const Mat2& grad_u,
                         const FPConfig& cfg, const HermiteBasis& basis);

}  // namespace peterlin
