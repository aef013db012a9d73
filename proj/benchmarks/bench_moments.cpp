#include <benchmark/benchmark.h>

#include "peterlin/fokker_planck.hpp"
#include "peterlin/moments.hpp"

using namespace peterlin;

namespace {

void bm_conformation(benchmark::State& state) {
    TorusGrid2D g(64, 64);
    HermiteBasis basis(1.0, static_cast<int>(state.range(0)));
    HermiteField f(g, basis);
    f.fill_uniform(gaussian_psi_hat(SymMat2{1.2, 0.1, 0.85}, basis));
    for (auto _ : state) {
        TensorField c = conformation_from_psi(f, basis);
        benchmark::DoNotOptimize(c.xx.data());
    }
}

void bm_relative_entropy(benchmark::State& state) {
    TorusGrid2D g(64, 64);
    HermiteBasis basis(1.0, static_cast<int>(state.range(0)));
    HermiteField f(g, basis);
    f.fill_uniform(gaussian_psi_hat(SymMat2{1.2, 0.1, 0.85}, basis));
    for (auto _ : state) {
        ScalarField e = relative_entropy(f, basis);
        benchmark::DoNotOptimize(e.data());
    }
}

void bm_radial_moment4(benchmark::State& state) {
    TorusGrid2D g(64, 64);
    HermiteBasis basis(1.0, static_cast<int>(state.range(0)));
    HermiteField f(g, basis);
    f.fill_uniform(gaussian_psi_hat(SymMat2{1.2, 0.1, 0.85}, basis));
    for (auto _ : state) {
        ScalarField m = radial_moment(f, 4, basis);
        benchmark::DoNotOptimize(m.data());
    }
}

}  // namespace

BENCHMARK(bm_conformation)->Arg(8);
BENCHMARK(bm_relative_entropy)->Arg(8);
BENCHMARK(bm_radial_moment4)->Arg(8);
