#pragma once

#include "peterlin/constitutive.hpp"
#include "peterlin/grid.hpp"
#include "peterlin/spectral.hpp"

namespace peterlin {

/// Velocity/pressure state. The velocity is divergence-free to 1e-10 in
/// max norm after every step (Leray projection is the last stage).
struct NSState {
    VectorField u;
    ScalarField p;
    double time = 0.0;

    explicit NSState(const TorusGrid2D& g) : u(g), p(g) {}
};

struct NSConfig {
    double nu = 1.0;  ///< viscosity (reciprocal Reynolds number)
    double dt = 0.0;

    void validate() const {
        if (!(nu > 0.0)) throw InvalidParameterError("ns: nu must be positive");
        if (!(dt > 0.0)) throw InvalidParameterError("ns: dt must be positive");
    }
};

/// Kramers elastic stress T = n gamma_3(tr C) C - I, cell-wise.
/// Throws BlowupError when tr C < 0 anywhere (loss of positivity).
TensorField kramers_stress(const TensorField& c, const GammaSpec& gamma3, double n_density);

/// One IMEX Euler step of the momentum equation: advection and div T
/// explicit (dealiased), diffusion implicit in Fourier space, then Leray
/// projection. The pressure is recovered from the projection potential.
/// Throws CflError when u_max*dt/h exceeds 0.5.
void ns_step(NSState& state, const TensorField& stress, const NSConfig& cfg,
             SpectralWorkspace& ws);

/// 0.5 * integral of |u|^2 over the torus.
double kinetic_energy(const VectorField& u);

}  // namespace peterlin
