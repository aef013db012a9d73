#pragma once

#include "peterlin/constitutive.hpp"
#include "peterlin/grid.hpp"
#include "peterlin/spectral.hpp"

namespace peterlin {

/// Macroscopic conformation-tensor state. Positivity is monitored, not
/// enforced: min_eigenvalue is refreshed every step and tr C <= 0 raises
/// the positivity_lost flag without altering the field.
struct MPState {
    TensorField c;
    double time = 0.0;
    double min_eigenvalue = 0.0;
    bool positivity_lost = false;

    explicit MPState(const TorusGrid2D& g) : c(g) {}
};

/// Cell-local right-hand side of the conformation equation without the
/// transport terms: stretching (grad u)C + C(grad u)^T plus the reaction
/// (gamma_2(trC)/lambda) I - (gamma_1(trC)/(lambda gamma_M)) C.
/// With spatially constant data the full scheme reduces to explicit Euler
/// on this function.
SymMat2 conformation_local_rhs(const SymMat2& c, const Mat2& grad_u,
                               const GammaSpec& gamma1, const GammaSpec& gamma2,
                               const NondimParams& params);

/// One IMEX Euler step: advection, stretching and reaction explicit,
/// eps*Laplacian implicit in Fourier space. Symmetry of C is preserved
/// exactly (single stored off-diagonal, symmetric stretching assembly).
/// Throws BlowupError with the first offending cell on non-finite values.
void mp_step(MPState& state, const VectorField& u, const GammaSpec& gamma1,
             const GammaSpec& gamma2, const NondimParams& params, double dt,
             SpectralWorkspace& ws);

}  // namespace peterlin
