#include <benchmark/benchmark.h>

#include <cmath>
#include <optional>
#include <vector>

#include "peterlin/fokker_planck.hpp"

using namespace peterlin;

namespace {

FPConfig fp_config(double dt) {
    FPConfig cfg;
    cfg.dt = dt;
    cfg.params = derive_nondim(1.0, 4.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
    cfg.gamma2 = GammaSpec::power_law(1.0, 1.0);
    return cfg;
}

HermiteField sheared_state(const TorusGrid2D& g, const HermiteBasis& basis) {
    HermiteField f(g, basis);
    f.fill_uniform(gaussian_psi_hat(SymMat2{1.2, 0.1, 0.85}, basis));
    return f;
}

VectorField taylor_green(const TorusGrid2D& g) {
    VectorField u(g);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            u.x.at(ix, iy) = std::sin(g.x(ix)) * std::cos(g.y(iy));
            u.y.at(ix, iy) = -std::cos(g.x(ix)) * std::sin(g.y(iy));
        }
    return u;
}

void bm_fp_step(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    HermiteBasis basis(1.0, static_cast<int>(state.range(1)));
    SpectralWorkspace ws(g);
    HermiteField f = sheared_state(g, basis);
    VectorField u = taylor_green(g);
    FPConfig cfg = fp_config(1e-4);
    for (auto _ : state) fp_step(f, u, nullptr, cfg, basis, ws);
}

void bm_fp_step_cutoff(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    HermiteBasis basis(1.0, static_cast<int>(state.range(1)));
    SpectralWorkspace ws(g);
    HermiteField f = sheared_state(g, basis);
    VectorField u = taylor_green(g);
    FPConfig cfg = fp_config(1e-4);
    cfg.cutoff_L = 20.0;
    for (auto _ : state) fp_step(f, u, nullptr, cfg, basis, ws);
}

void bm_drift_recurrence(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    HermiteBasis basis(1.0, 8);
    HermiteField f = sheared_state(g, basis);
    Matrix2Field grad(g);
    grad.xx.fill(0.4);
    grad.xy.fill(0.2);
    grad.yx.fill(-0.1);
    grad.yy.fill(-0.4);
    for (auto _ : state) {
        HermiteField out = drift_apply(f, grad, std::nullopt, basis);
        benchmark::DoNotOptimize(out.mode(0).data());
    }
}

void bm_drift_collocation(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    HermiteBasis basis(1.0, 8);
    HermiteField f = sheared_state(g, basis);
    Matrix2Field grad(g);
    grad.xx.fill(0.4);
    grad.xy.fill(0.2);
    grad.yx.fill(-0.1);
    grad.yy.fill(-0.4);
    for (auto _ : state) {
        HermiteField out = drift_apply(f, grad, 20.0, basis);
        benchmark::DoNotOptimize(out.mode(0).data());
    }
}

}  // namespace

BENCHMARK(bm_fp_step)->Args({64, 8})->Args({32, 8})->Args({64, 6});
BENCHMARK(bm_fp_step_cutoff)->Args({64, 8});
BENCHMARK(bm_drift_recurrence)->Arg(64);
BENCHMARK(bm_drift_collocation)->Arg(64);
