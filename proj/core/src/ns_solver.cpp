#include "peterlin/ns_solver.hpp"

#include <cmath>

#include "peterlin/parallel.hpp"

namespace peterlin {

TensorField kramers_stress(const TensorField& c, const GammaSpec& gamma3, double n_density) {
    if (!(n_density > 0.0)) throw InvalidParameterError("kramers_stress: n must be positive");
    const long n = c.xx.size();
    for (long i = 0; i < n; ++i) {
        if (c.xx[i] + c.yy[i] < 0.0)
            throw BlowupError("kramers_stress: tr C < 0 (positivity lost)", -1, i);
    }
    TensorField t(TorusGrid2D{c.xx.nx(), c.xx.ny()});
    parallel_for(n, [&](long i) {
        const double g = n_density * gamma_eval(gamma3, c.xx[i] + c.yy[i]);
        t.xx[i] = g * c.xx[i] - 1.0;
        t.xy[i] = g * c.xy[i];
        t.yy[i] = g * c.yy[i] - 1.0;
    });
    return t;
}

void ns_step(NSState& state, const TensorField& stress, const NSConfig& cfg,
             SpectralWorkspace& ws) {
    cfg.validate();
    const TorusGrid2D& g = ws.grid();

    const double umax = std::max(field_max_abs(state.u.x), field_max_abs(state.u.y));
    const double cfl = umax * cfg.dt / g.h_min();
    if (cfl > 0.5) throw CflError(cfl);

    VectorField adv = ws.advect(state.u, state.u);
    VectorField ft = ws.divergence_dealiased(stress);

    VectorField e(g);
    for (long i = 0; i < g.size(); ++i) {
        e.x[i] = state.u.x[i] + cfg.dt * (ft.x[i] - adv.x[i]);
        e.y[i] = state.u.y[i] + cfg.dt * (ft.y[i] - adv.y[i]);
    }
    e.x = ws.helmholtz_solve(e.x, cfg.dt * cfg.nu);
    e.y = ws.helmholtz_solve(e.y, cfg.dt * cfg.nu);

    ScalarField phi;
    state.u = ws.leray_project(e, phi);
    for (long i = 0; i < g.size(); ++i) state.p[i] = phi[i] / cfg.dt;
    state.time += cfg.dt;

    long bad = -1;
    if (!field_all_finite(state.u.x, &bad) || !field_all_finite(state.u.y, &bad))
        throw BlowupError("ns_step: non-finite velocity", -1, bad);
    const double div = field_max_abs(ws.divergence(state.u));
    if (div > 1e-10)
        throw BlowupError("ns_step: divergence constraint violated: " + std::to_string(div));
}

double kinetic_energy(const VectorField& u) {
    double s = 0.0;
    for (long i = 0; i < u.x.size(); ++i) s += u.x[i] * u.x[i] + u.y[i] * u.y[i];
    const double area = 4.0 * M_PI * M_PI;
    return 0.5 * area * s / static_cast<double>(u.x.size());
}

}  // namespace peterlin
