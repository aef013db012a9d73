#include <benchmark/benchmark.h>

#include <cmath>

#include "peterlin/ns_solver.hpp"
#include "peterlin/spectral.hpp"

using namespace peterlin;

namespace {

VectorField taylor_green(const TorusGrid2D& g) {
    VectorField u(g);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) {
            u.x.at(ix, iy) = std::sin(g.x(ix)) * std::cos(g.y(iy));
            u.y.at(ix, iy) = -std::cos(g.x(ix)) * std::sin(g.y(iy));
        }
    return u;
}

void bm_transform_roundtrip(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    SpectralWorkspace ws(g);
    ScalarField f(g);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) f.at(ix, iy) = std::sin(g.x(ix) + 2 * g.y(iy));
    for (auto _ : state) {
        ScalarField back = ws.inverse(ws.forward(f));
        benchmark::DoNotOptimize(back.data());
    }
}

void bm_advect(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    SpectralWorkspace ws(g);
    VectorField u = taylor_green(g);
    ScalarField f(g);
    for (int iy = 0; iy < g.ny; ++iy)
        for (int ix = 0; ix < g.nx; ++ix) f.at(ix, iy) = std::cos(2 * g.x(ix)) * std::sin(g.y(iy));
    for (auto _ : state) {
        ScalarField adv = ws.advect(u, f);
        benchmark::DoNotOptimize(adv.data());
    }
}

void bm_leray_project(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    SpectralWorkspace ws(g);
    VectorField u = taylor_green(g);
    for (auto _ : state) {
        VectorField p = ws.leray_project(u);
        benchmark::DoNotOptimize(p.x.data());
    }
}

void bm_ns_step(benchmark::State& state) {
    TorusGrid2D g(static_cast<int>(state.range(0)), static_cast<int>(state.range(0)));
    SpectralWorkspace ws(g);
    NSState s(g);
    s.u = taylor_green(g);
    TensorField stress(g);
    stress.xx.fill(1.0);
    stress.yy.fill(1.0);
    const NSConfig cfg{0.1, 1e-4};
    for (auto _ : state) ns_step(s, stress, cfg, ws);
}

}  // namespace

BENCHMARK(bm_transform_roundtrip)->Arg(64)->Arg(128);
BENCHMARK(bm_advect)->Arg(64)->Arg(128);
BENCHMARK(bm_leray_project)->Arg(64)->Arg(128);
BENCHMARK(bm_ns_step)->Arg(64)->Arg(128);
