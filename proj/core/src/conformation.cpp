#include "peterlin/conformation.hpp"

#include <cmath>

#include "peterlin/parallel.hpp"

namespace peterlin {

SymMat2 conformation_local_rhs(const SymMat2& c, const Mat2& grad_u,
                               const GammaSpec& gamma1, const GammaSpec& gamma2,
                               const NondimParams& params) {
    const double tr = c.trace();
    const double source = gamma_eval(gamma2, tr) / params.lambda;
    const double relax = gamma_eval(gamma1, tr) / (params.lambda * params.gamma_M);
    SymMat2 s = stretch(grad_u, c);
    s.xx += source - relax * c.xx;
    s.xy += -relax * c.xy;
    s.yy += source - relax * c.yy;
    return s;
}

void mp_step(MPState& state, const VectorField& u, const GammaSpec& gamma1,
             const GammaSpec& gamma2, const NondimParams& params, double dt,
             SpectralWorkspace& ws) {
    if (!(dt > 0.0)) throw InvalidParameterError("mp_step: dt must be positive");
    const TorusGrid2D& g = ws.grid();
    const long n = g.size();

    Matrix2Field grad = ws.velocity_gradient(u);
    TensorField adv = ws.advect(u, state.c);

    TensorField e(g);
    parallel_for(n, [&](long i) {
        const SymMat2 rhs = conformation_local_rhs(state.c.cell(i), grad.cell(i),
                                                   gamma1, gamma2, params);
        e.xx[i] = state.c.xx[i] + dt * (rhs.xx - adv.xx[i]);
        e.xy[i] = state.c.xy[i] + dt * (rhs.xy - adv.xy[i]);
        e.yy[i] = state.c.yy[i] + dt * (rhs.yy - adv.yy[i]);
    });

    state.c.xx = ws.helmholtz_solve(e.xx, dt * params.eps);
    state.c.xy = ws.helmholtz_solve(e.xy, dt * params.eps);
    state.c.yy = ws.helmholtz_solve(e.yy, dt * params.eps);
    state.time += dt;

    long bad = -1;
    if (!field_all_finite(state.c.xx, &bad) || !field_all_finite(state.c.xy, &bad) ||
        !field_all_finite(state.c.yy, &bad))
        throw BlowupError("mp_step: non-finite conformation value", -1, bad);

    state.min_eigenvalue = min_conformation_eigenvalue(state.c);
    double min_tr = state.c.xx[0] + state.c.yy[0];
    for (long i = 1; i < n; ++i) min_tr = std::min(min_tr, state.c.xx[i] + state.c.yy[i]);
    if (min_tr <= 0.0) state.positivity_lost = true;
}

}  // namespace peterlin
