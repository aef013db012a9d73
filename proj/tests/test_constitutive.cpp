#include <doctest.h>

#include <cmath>
#include <random>

#include "peterlin/constitutive.hpp"
#include "peterlin/hermite.hpp"

using namespace peterlin;

TEST_CASE("maxwellian construction") {
    // ratio condition at equilibrium forces a = 1
    Maxwellian m = make_maxwellian(1.0, 1.0, 1.0, 2);
    CHECK(m.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.b == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));

    m = make_maxwellian(2.0, 2.0, 1.0, 2);
    CHECK(m.a == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(m.b == doctest::Approx(1.0 / (2.0 * M_PI)).epsilon(1e-14));

    m = make_maxwellian(1.0, 1.0, 2.0, 2);
    CHECK(m.a == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(m.b == doctest::Approx(1.0 / (4.0 * M_PI)).epsilon(1e-14));

    CHECK_THROWS_AS(make_maxwellian(-1.0, 1.0, 1.0, 2), InvalidParameterError);
    CHECK_THROWS_AS(make_maxwellian(1.0, 0.0, 1.0, 2), InvalidParameterError);
    CHECK_THROWS_AS(make_maxwellian(1.0, 1.0, 1.0, 4), InvalidParameterError);
}

TEST_CASE("maxwellian quadrature normalization and second moment") {
    for (double a : {1.0, 2.0, 0.5}) {
        HermiteBasis basis(a, 4, 24);
        double mass = 0.0, second = 0.0;
        for (long q = 0; q < basis.n_nodes(); ++q) {
            const double r1 = basis.node_r1(q), r2 = basis.node_r2(q);
            mass += basis.weight(q);
            second += basis.weight(q) * (r1 * r1 + r2 * r2);
        }
        CHECK(std::abs(mass - 1.0) <= 1e-12);
        CHECK(std::abs(second - 2.0 * a) <= 1e-10);
    }
}

TEST_CASE("gamma evaluation") {
    CHECK(gamma_eval(GammaSpec::power_law(1.0, 1.0), 2.0) == doctest::Approx(2.0));
    CHECK(gamma_eval(GammaSpec::constant(3.0), 100.0) == doctest::Approx(3.0));
    CHECK(gamma_eval(GammaSpec::power_law(2.0, 2.0), 3.0) == doctest::Approx(18.0));
    CHECK(gamma_eval(GammaSpec::affine(2.0), 3.0) == doctest::Approx(6.0));
    CHECK_THROWS_AS(gamma_eval(GammaSpec::constant(1.0), -0.5), DomainError);
}

TEST_CASE("gamma spec invariants") {
    CHECK_THROWS_AS(GammaSpec::power_law(-1.0, 1.0), InvalidParameterError);
    CHECK_THROWS_AS(GammaSpec::power_law(1.0, -0.5), InvalidParameterError);
    CHECK_THROWS_AS(GammaSpec::power_law(1.0, 1.0, 2.0, 3.0), InvalidParameterError);
    // positivity for s > 0
    auto g = GammaSpec::power_law(0.3, 1.7, 0.1, 0.5);
    for (double s : {1e-6, 0.1, 1.0, 50.0}) CHECK(gamma_eval(g, s) > 0.0);
}

TEST_CASE("growth envelope holds for s >= 1") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> expd(0.0, 2.5);
    for (int trial = 0; trial < 50; ++trial) {
        const double e = expd(rng);
        const double lo = 0.2 + 0.8 * std::generate_canonical<double, 53>(rng);
        const double hi = lo + std::generate_canonical<double, 53>(rng);
        const double coeff = lo + (hi - lo) * std::generate_canonical<double, 53>(rng);
        GammaSpec g = GammaSpec::power_law(coeff, e, lo, hi);
        for (double s = 1.0; s <= 100.0; s *= 1.9) {
            const double v = gamma_eval(g, s);
            CHECK(v >= lo * std::pow(s, e) * (1.0 - 1e-12));
            CHECK(v <= hi * std::pow(s, e) * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("big gamma") {
    CHECK(big_gamma(GammaSpec::power_law(1.0, 1.0), 0.5, 2.0) == doctest::Approx(2.0));
    CHECK(big_gamma(GammaSpec::constant(1.0), 0.5, 17.0) == doctest::Approx(1.0));
    CHECK(big_gamma(GammaSpec::power_law(1.0, 1.0), 1.0, 2.0) == doctest::Approx(1.0));
    CHECK_THROWS_AS(big_gamma(GammaSpec::constant(1.0), 0.0, 1.0), InvalidParameterError);
}

TEST_CASE("ratio condition") {
    CHECK(check_ratio_condition(GammaSpec::power_law(2.0, 1.0), GammaSpec::power_law(1.0, 1.0),
                                2.0));
    CHECK_FALSE(check_ratio_condition(GammaSpec::power_law(1.0, 2.0),
                                      GammaSpec::power_law(1.0, 1.0), 1.0));
    CHECK(check_ratio_condition(GammaSpec::constant(1.0), GammaSpec::constant(1.0), 1.0));
    // affine and power_law with exponent 1 are the same structure
    CHECK(check_ratio_condition(GammaSpec::affine(3.0), GammaSpec::power_law(1.0, 1.0), 3.0));
}

TEST_CASE("ratio condition implies pointwise proportionality") {
    GammaSpec g2 = GammaSpec::power_law(0.7, 1.3);
    GammaSpec g1 = GammaSpec::power_law(0.7 * 2.5, 1.3);
    const double k_tau = 2.5;
    REQUIRE(check_ratio_condition(g1, g2, k_tau));
    for (double s : {0.04, 0.3, 1.0, 7.0, 123.0}) {
        const double lhs = gamma_eval(g1, s);
        const double rhs = k_tau * gamma_eval(g2, s);
        CHECK(std::abs(lhs - rhs) <= 1e-12 * std::abs(rhs));
    }
}

TEST_CASE("nondimensional parameter derivation") {
    NondimParams p = derive_nondim(1.0, 4.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0);
    CHECK(p.lambda == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(p.eps == doctest::Approx(0.125).epsilon(1e-15));
    CHECK(p.gamma_M == 1.0);

    p = derive_nondim(2.0, 8.0, 1.0, 2.0, 2.0, 1.0, 1.0, 1.0, 2.0, 1.0);
    CHECK(p.lambda == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(p.eps == doctest::Approx(0.25).epsilon(1e-15));
    CHECK(p.gamma_M == 2.0);

    // defining formulas hold to 1e-12 relative
    const double lam = (p.zeta / (4.0 * p.gamma_M)) * (p.U0 / p.L0);
    const double eps = (p.l0 / p.L0) * (p.l0 / p.L0) / (8.0 * lam);
    CHECK(std::abs(p.lambda - lam) <= 1e-12 * lam);
    CHECK(std::abs(p.eps - eps) <= 1e-12 * eps);

    CHECK_THROWS_AS(derive_nondim(0.0, 4.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0, 1.0),
                    InvalidParameterError);
}

TEST_CASE("admissibility worked examples") {
    // classical theorem: alpha=2, beta=0.5, gamma=1 admissible
    auto v = check_admissibility(2.0, 0.5, 1.0, 1, 1, 1, 1, 1, 1, 2,
                                 TheoremFamily::classical_thm31);
    CHECK(v.admissible);
    CHECK(v.violated_rules.empty());

    // alpha+beta+1 > 2 fails at alpha=1, beta=0
    v = check_admissibility(1.0, 0.0, 1.0, 1, 1, 1, 1, 1, 1, 2,
                            TheoremFamily::classical_thm31);
    CHECK_FALSE(v.admissible);
    REQUIRE(v.violated_rules.size() >= 1);
    CHECK(v.violated_rules[0] == "alpha_beta_sum");

    // boundary case gamma = alpha+1 needs d*B2*C2 < A1*B1
    v = check_admissibility(1.0, 0.0, 2.0, 1, 1, 1, 1, 1, 1, 2,
                            TheoremFamily::regular_thm32_cor33);
    CHECK_FALSE(v.admissible);
    REQUIRE(v.violated_rules.size() == 1);
    CHECK(v.violated_rules[0] == "gamma_boundary_product");

    // the alpha = 0, gamma = 1 exceptional branch
    v = check_admissibility(0.0, 0.0, 1.0, 1, 1, 1, 1, 1, 1, 2,
                            TheoremFamily::regular_thm32_cor33);
    CHECK(v.admissible);
}

TEST_CASE("admissibility is pure") {
    for (int rep = 0; rep < 3; ++rep) {
        auto a = check_admissibility(3.0, 2.5, 5.0, 1, 2, 1, 2, 1, 2, 3,
                                     TheoremFamily::classical_thm31);
        auto b = check_admissibility(3.0, 2.5, 5.0, 1, 2, 1, 2, 1, 2, 3,
                                     TheoremFamily::classical_thm31);
        CHECK(a.admissible == b.admissible);
        CHECK(a.violated_rules == b.violated_rules);
    }
}

TEST_CASE("classical theorem carries the unverified-growth warning") {
    auto v = check_admissibility(2.0, 0.5, 1.0, 1, 1, 1, 1, 1, 1, 2,
                                 TheoremFamily::classical_thm31);
    REQUIRE(v.warnings.size() == 1);
    CHECK(v.warnings[0] == "psi_prime_growth_unverified");
    auto w = check_admissibility(1.0, 0.0, 1.0, 1, 1, 1, 1, 1, 1, 2,
                                 TheoremFamily::regular_thm32_cor33);
    CHECK(w.warnings.empty());
}
