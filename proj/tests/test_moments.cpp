#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "peterlin/conformation.hpp"
#include "peterlin/fokker_planck.hpp"
#include "peterlin/moments.hpp"
#include "peterlin/ns_solver.hpp"

using namespace peterlin;

namespace {

NondimParams unit_params() {
    return derive_nondim(1.0, 4.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
}

HermiteField uniform_field(const TorusGrid2D& g, const HermiteBasis& b,
                           const std::vector<double>& c) {
    HermiteField f(g, b);
    f.fill_uniform(c);
    return f;
}

std::vector<double> flat_state(const HermiteBasis& b) {
    std::vector<double> c(b.n_modes(), 0.0);
    c[b.mode_index(0, 0)] = 1.0;
    return c;
}

}  // namespace

TEST_CASE("conformation from coefficients") {
    TorusGrid2D g(8, 8);

    SUBCASE("flat distribution gives a*I with trace d*a") {
        for (double a : {1.0, 2.0}) {
            HermiteBasis b(a, 4);
            HermiteField f = uniform_field(g, b, flat_state(b));
            TensorField c = conformation_from_psi(f, b);
            CHECK(c.xx[0] == a);
            CHECK(c.xy[0] == 0.0);
            CHECK(c.yy[0] == a);
            CHECK(c.xx[0] + c.yy[0] == 2.0 * a);
        }
    }
    SUBCASE("gaussian data round-trips through the moment map") {
        HermiteBasis b(1.0, 8);
        const SymMat2 c0{1.5, 0.0, 0.5};
        HermiteField f = uniform_field(g, b, gaussian_psi_hat(c0, b));
        TensorField c = conformation_from_psi(f, b);
        CHECK(std::abs(c.xx[17] - 1.5) <= 1e-10);
        CHECK(std::abs(c.xy[17]) <= 1e-10);
        CHECK(std::abs(c.yy[17] - 0.5) <= 1e-10);
    }
    SUBCASE("the (1,1) mode maps to the off-diagonal with weight a") {
        const double a = 1.7;
        HermiteBasis b(a, 4);
        std::vector<double> c = flat_state(b);
        c[b.mode_index(1, 1)] = 0.1;
        const SymMat2 m = conformation_from_coeffs(c, b);
        CHECK(m.xy == doctest::Approx(0.1 * a).epsilon(1e-14));
        // quadrature confirmation: integral of R1 R2 M h11 equals a
        double q = 0.0;
        const int i11 = b.mode_index(1, 1);
        for (long node = 0; node < b.n_nodes(); ++node)
            q += b.weight(node) * b.node_r1(node) * b.node_r2(node) * b.value(i11, node);
        CHECK(std::abs(q - a) <= 1e-12 * a);
    }
    SUBCASE("linearity in the coefficients") {
        HermiteBasis b(1.0, 6);
        std::mt19937 rng(3);
        std::uniform_real_distribution<double> d(-0.5, 0.5);
        std::vector<double> x(b.n_modes()), y(b.n_modes()), sum(b.n_modes());
        for (int m = 0; m < b.n_modes(); ++m) {
            x[m] = d(rng);
            y[m] = d(rng);
            sum[m] = x[m] + 2.0 * y[m];
        }
        const SymMat2 mx = conformation_from_coeffs(x, b);
        const SymMat2 my = conformation_from_coeffs(y, b);
        const SymMat2 ms = conformation_from_coeffs(sum, b);
        CHECK(ms.xx == doctest::Approx(mx.xx + 2.0 * my.xx).epsilon(1e-14));
        CHECK(ms.xy == doctest::Approx(mx.xy + 2.0 * my.xy).epsilon(1e-14));
        CHECK(ms.yy == doctest::Approx(mx.yy + 2.0 * my.yy).epsilon(1e-14));
    }
}

TEST_CASE("radial moments") {
    TorusGrid2D g(8, 8);
    HermiteBasis b(1.0, 8);
    HermiteField f = uniform_field(g, b, flat_state(b));

    SUBCASE("gaussian moments of the flat state") {
        CHECK(std::abs(radial_moment(f, 0, b)[0] - 1.0) <= 1e-12);
        CHECK(std::abs(radial_moment(f, 2, b)[0] - 2.0) <= 1e-12);
        // a^2 d (d+2) = 8 at a=1, d=2; cross-check by direct quadrature
        double oracle = 0.0;
        for (long q = 0; q < b.n_nodes(); ++q) {
            const double r2 = b.node_r1(q) * b.node_r1(q) + b.node_r2(q) * b.node_r2(q);
            oracle += b.weight(q) * r2 * r2;
        }
        CHECK(std::abs(oracle - 8.0) <= 1e-10);
        CHECK(std::abs(radial_moment(f, 4, b)[0] - 8.0) <= 1e-10);
    }
    SUBCASE("domain guards") {
        CHECK_THROWS_AS(radial_moment(f, 3, b), DomainError);
        CHECK_THROWS_AS(radial_moment(f, -2, b), DomainError);
        CHECK_THROWS_AS(radial_moment(f, 2 * b.n_quad(), b), DomainError);
    }
    SUBCASE("second radial moment equals the trace of the moment map") {
        std::mt19937 rng(11);
        std::uniform_real_distribution<double> d(-0.3, 0.3);
        std::vector<double> c = flat_state(b);
        for (int m = 1; m < b.n_modes(); ++m) c[m] = d(rng);
        HermiteField h = uniform_field(g, b, c);
        const ScalarField m2 = radial_moment(h, 2, b);
        const TensorField conf = conformation_from_psi(h, b);
        for (long i = 0; i < m2.size(); ++i)
            CHECK(std::abs(m2[i] - (conf.xx[i] + conf.yy[i])) <= 1e-12);
    }
}

TEST_CASE("relative entropy and fisher information") {
    TorusGrid2D g(8, 8);
    HermiteBasis b(1.0, 8);

    SUBCASE("equilibrium has exactly zero entropy and fisher information") {
        HermiteField f = uniform_field(g, b, flat_state(b));
        CHECK(relative_entropy(f, b)[0] == 0.0);
        CHECK(fisher_information(f, b)[0] == 0.0);
    }
    SUBCASE("constant psi-hat = 2 has entropy F(2) = 2 ln 2 - 1") {
        std::vector<double> c(b.n_modes(), 0.0);
        c[0] = 2.0;
        HermiteField f = uniform_field(g, b, c);
        const double expect = 2.0 * std::log(2.0) - 1.0;
        CHECK(std::abs(relative_entropy(f, b)[0] - expect) <= 1e-12);
    }
    SUBCASE("gaussian entropy matches the closed-form relative entropy") {
        // KL(N(0,C0) || N(0,I)) = (tr C0 - d - log det C0)/2
        const SymMat2 c0{1.15, 0.05, 0.9};
        HermiteField f = uniform_field(g, b, gaussian_psi_hat(c0, b));
        const double kl = 0.5 * (c0.trace() - 2.0 - std::log(c0.det()));
        CHECK(std::abs(relative_entropy(f, b)[0] - kl) <= 1e-5);
        // fisher for a centered gaussian: tr(A^2 C0) with A = C0^{-1} - I
        const double det = c0.det();
        const double a11 = c0.yy / det - 1.0, a12 = -c0.xy / det, a22 = c0.xx / det - 1.0;
        const double fisher_exact = (a11 * a11 + a12 * a12) * c0.xx +
                                    2.0 * (a11 + a22) * a12 * c0.xy +
                                    (a22 * a22 + a12 * a12) * c0.yy;
        CHECK(std::abs(fisher_information(f, b)[0] - fisher_exact) <= 1e-4);
    }
    SUBCASE("strongly anisotropic data: truncation error stays below 1e-3 relative") {
        const SymMat2 c0{1.5, 0.0, 0.5};
        HermiteField f = uniform_field(g, b, gaussian_psi_hat(c0, b));
        const double kl = 0.5 * (c0.trace() - 2.0 - std::log(c0.det()));
        const double ent = relative_entropy(f, b)[0];
        CHECK(std::abs(ent - kl) <= 1.5e-3 * kl);
    }
    SUBCASE("entropy is never negative") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> d(-0.2, 0.2);
        for (int trial = 0; trial < 10; ++trial) {
            std::vector<double> c = flat_state(b);
            for (int m = 1; m < b.n_modes(); ++m) c[m] = d(rng);
            HermiteField f = uniform_field(g, b, c);
            CHECK(relative_entropy(f, b)[0] >= -1e-12);
        }
    }
}

TEST_CASE("reconstruction statistics") {
    TorusGrid2D g(8, 8);
    HermiteBasis b(1.0, 8);

    SUBCASE("positive data reports no negativity") {
        HermiteField f = uniform_field(g, b, gaussian_psi_hat(SymMat2{1.15, 0.05, 0.9}, b));
        const NodalStats st = reconstruction_stats(f, b);
        CHECK(st.min_psi[0] > 0.0);
        CHECK(st.negativity_mass[0] == 0.0);
    }
    SUBCASE("oscillatory data reports negative nodes and their mass") {
        std::vector<double> c = flat_state(b);
        c[b.mode_index(4, 0)] = 1.5;  // strong oscillation goes negative
        HermiteField f = uniform_field(g, b, c);
        const NodalStats st = reconstruction_stats(f, b);
        CHECK(st.min_psi[0] < 0.0);
        CHECK(st.negativity_mass[0] > 0.0);
    }
}

TEST_CASE("closure residual") {
    TorusGrid2D g(16, 16);
    SpectralWorkspace ws(g);
    GammaSpec one_pl = GammaSpec::power_law(1.0, 1.0);
    const NondimParams p = unit_params();

    SUBCASE("equilibrium series has zero residual") {
        TensorField eq(g);
        eq.xx.fill(1.0);
        eq.yy.fill(1.0);
        VectorField rest(g);
        std::vector<TensorField> cs(4, eq);
        std::vector<VectorField> us(4, rest);
        CHECK(closure_residual(cs, us, one_pl, one_pl, p, 1e-3, ws) <= 1e-12);
    }
    SUBCASE("misaligned series are rejected") {
        TensorField eq(g);
        std::vector<TensorField> cs(3, eq);
        std::vector<VectorField> us(2, VectorField(g));
        CHECK_THROWS_AS(closure_residual(cs, us, one_pl, one_pl, p, 1e-3, ws), ShapeError);
        std::vector<TensorField> single(1, eq);
        std::vector<VectorField> usingle(1, VectorField(g));
        CHECK_THROWS_AS(closure_residual(single, usingle, one_pl, one_pl, p, 1e-3, ws),
                        ShapeError);
    }
    SUBCASE("homogeneous frozen-shear kinetic series stays below 1e-3") {
        HermiteBasis b(1.0, 8);
        const double kappa = 0.1, dt = 1e-3;
        FPConfig cfg;
        cfg.dt = dt;
        cfg.params = p;
        cfg.gamma2 = one_pl;
        const Mat2 shear{kappa, 0.0, 0.0, -kappa};
        std::vector<double> c(b.n_modes(), 0.0);
        c[b.mode_index(0, 0)] = 1.0;
        std::vector<SymMat2> series;
        const long n = 1000;
        for (long i = 0; i <= n; ++i) {
            series.push_back(conformation_from_coeffs(c, b));
            if (i < n) fp_step_homogeneous(c, shear, cfg, b);
        }
        const double res = closure_residual_homogeneous(series, shear, one_pl, one_pl, p, dt);
        CHECK(res <= 1e-3);
        // and the residual shrinks linearly under dt halving
        std::vector<double> c2(b.n_modes(), 0.0);
        c2[b.mode_index(0, 0)] = 1.0;
        FPConfig cfg2 = cfg;
        cfg2.dt = dt / 2.0;
        std::vector<SymMat2> series2;
        for (long i = 0; i <= 2 * n; ++i) {
            series2.push_back(conformation_from_coeffs(c2, b));
            if (i < 2 * n) fp_step_homogeneous(c2, shear, cfg2, b);
        }
        const double res2 =
            closure_residual_homogeneous(series2, shear, one_pl, one_pl, p, dt / 2.0);
        CHECK(res / res2 >= 1.6);
    }

    SUBCASE("the macroscopic solver's own series reproduces its truncation error") {
        // residual of an MP run against the all-explicit discretization is
        // the implicit-diffusion mismatch, first order in dt
        MPState s(g);
        s.c.xx.fill(1.0);
        s.c.yy.fill(1.0);
        NSState flow(g);
        for (int iy = 0; iy < g.ny; ++iy)
            for (int ix = 0; ix < g.nx; ++ix) {
                flow.u.x.at(ix, iy) = std::sin(g.x(ix)) * std::cos(g.y(iy));
                flow.u.y.at(ix, iy) = -std::cos(g.x(ix)) * std::sin(g.y(iy));
            }
        const double dt = 1e-3;
        std::vector<TensorField> cs;
        std::vector<VectorField> us;
        for (int i = 0; i <= 100; ++i) {
            cs.push_back(s.c);
            us.push_back(flow.u);
            if (i < 100) {
                TensorField stress = kramers_stress(s.c, one_pl, 1.0);
                ns_step(flow, stress, NSConfig{0.1, dt}, ws);
                mp_step(s, flow.u, one_pl, one_pl, p, dt, ws);
            }
        }
        const double res = closure_residual(cs, us, one_pl, one_pl, p, dt, ws);
        CHECK(res > 0.0);
        CHECK(res <= 0.05);  // first-order small, not machine-zero
    }
}
