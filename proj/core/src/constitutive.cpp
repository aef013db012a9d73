#include "peterlin/constitutive.hpp"

#include <cmath>

namespace peterlin {

GammaSpec GammaSpec::power_law(double coeff, double exponent) {
    return power_law(coeff, exponent, coeff, coeff);
}

GammaSpec GammaSpec::power_law(double coeff, double exponent, double lower, double upper) {
    GammaSpec s{GammaKind::power_law, exponent, lower, upper, coeff};
    s.validate();
    return s;
}

GammaSpec GammaSpec::constant(double coeff) { return constant(coeff, coeff, coeff); }

GammaSpec GammaSpec::constant(double coeff, double lower, double upper) {
    GammaSpec s{GammaKind::constant, 0.0, lower, upper, coeff};
    s.validate();
    return s;
}

GammaSpec GammaSpec::affine(double coeff) {
    GammaSpec s{GammaKind::affine, 1.0, coeff, coeff, coeff};
    s.validate();
    return s;
}

double GammaSpec::structural_exponent() const {
    switch (kind) {
        case GammaKind::constant: return 0.0;
        case GammaKind::affine: return 1.0;
        case GammaKind::power_law: return exponent;
    }
    return exponent;
}

void GammaSpec::validate() const {
    if (!(eval_coeff > 0.0) || !(lower_const > 0.0) || !(upper_const > 0.0))
        throw InvalidParameterError("gamma spec: all constants must be strictly positive");
    if (!(exponent >= 0.0))
        throw InvalidParameterError("gamma spec: exponent must be >= 0");
    if (!(lower_const <= eval_coeff && eval_coeff <= upper_const))
        throw InvalidParameterError("gamma spec: requires lower_const <= eval_coeff <= upper_const");
    if (kind == GammaKind::constant && exponent != 0.0)
        throw InvalidParameterError("gamma spec: constant kind must have exponent 0");
    if (kind == GammaKind::affine && exponent != 1.0)
        throw InvalidParameterError("gamma spec: affine kind must have exponent 1");
}

double gamma_eval(const GammaSpec& spec, double s) {
    if (s < 0.0) throw DomainError("gamma_eval: argument must be non-negative");
    switch (spec.kind) {
        case GammaKind::constant: return spec.eval_coeff;
        case GammaKind::affine: return spec.eval_coeff * s;
        case GammaKind::power_law:
            if (spec.exponent == 0.0) return spec.eval_coeff;
            if (spec.exponent == 1.0) return spec.eval_coeff * s;
            return spec.eval_coeff * std::pow(s, spec.exponent);
    }
    return spec.eval_coeff;
}

double big_gamma(const GammaSpec& gamma2, double lambda, double tr_c) {
    if (!(lambda > 0.0)) throw InvalidParameterError("big_gamma: lambda must be positive");
    if (tr_c < 0.0) throw DomainError("big_gamma: tr C must be non-negative");
    return gamma_eval(gamma2, tr_c) / (2.0 * lambda);
}

bool check_ratio_condition(const GammaSpec& gamma1, const GammaSpec& gamma2, double k_tau) {
    gamma1.validate();
    gamma2.validate();
    if (gamma1.structural_exponent() != gamma2.structural_exponent()) return false;
    double ratio = gamma1.eval_coeff / gamma2.eval_coeff;
    return std::abs(ratio - k_tau) <= 1e-12 * std::abs(k_tau);
}

Maxwellian make_maxwellian(double k_tau, double gamma1_at_eq, double gamma2_at_eq, int d) {
    if (!(k_tau > 0.0) || !(gamma1_at_eq > 0.0) || !(gamma2_at_eq > 0.0))
        throw InvalidParameterError("make_maxwellian: inputs must be positive");
    if (d != 2 && d != 3)
        throw InvalidParameterError("make_maxwellian: dimension must be 2 or 3");
    Maxwellian m;
    m.a = k_tau * gamma2_at_eq / gamma1_at_eq;
    m.b = std::pow(2.0 * M_PI * m.a, -0.5 * d);
    m.d = d;
    return m;
}

NondimParams derive_nondim(double k_tau, double zeta, double U0, double L0,
                           double l0, double d0, double nu, double n_density,
                           double gamma1_eq, double gamma2_eq) {
    for (double v : {k_tau, zeta, U0, L0, l0, d0, nu, n_density, gamma1_eq, gamma2_eq})
        if (!(v > 0.0))
            throw InvalidParameterError("derive_nondim: all primitives must be positive");
    NondimParams p;
    p.k_tau = k_tau;
    p.zeta = zeta;
    p.U0 = U0;
    p.L0 = L0;
    p.l0 = l0;
    p.d0 = d0;
    p.gamma_M = k_tau;
    p.lambda = (zeta / (4.0 * p.gamma_M)) * (U0 / L0);
    p.eps = (l0 / L0) * (l0 / L0) / (8.0 * p.lambda);
    p.nu = nu;
    p.n_density = n_density;
    return p;
}

namespace {

// Shared boundary rule: gamma = alpha+1 is admissible only with d*B2*C2 < A1*B1.
bool boundary_product_ok(double d, double A1, double B1, double B2, double C2) {
    return d * B2 * C2 < A1 * B1;
}

}  // namespace

AdmissibilityVerdict check_admissibility(double alpha, double beta, double gamma_exp,
                                         double A1, double A2, double B1, double B2,
                                         double C1, double C2, int d,
                                         TheoremFamily theorem) {
    for (double v : {A1, A2, B1, B2, C1, C2})
        if (!(v > 0.0))
            throw InvalidParameterError("check_admissibility: growth constants must be positive");
    if (d != 2 && d != 3)
        throw InvalidParameterError("check_admissibility: dimension must be 2 or 3");

    AdmissibilityVerdict v;
    v.theorem = theorem;

    if (theorem == TheoremFamily::classical_thm31) {
        if (!(alpha + beta + 1.0 > 2.0)) v.violated_rules.push_back("alpha_beta_sum");
        if (!(alpha > beta + 1.0)) v.violated_rules.push_back("alpha_gt_beta_plus_one");
        if (!(beta >= 0.0)) v.violated_rules.push_back("beta_nonneg");
        if (gamma_exp < alpha + 1.0) {
            // strict inequality branch, no further constraint
        } else if (gamma_exp == alpha + 1.0) {
            if (!boundary_product_ok(d, A1, B1, B2, C2))
                v.violated_rules.push_back("gamma_boundary_product");
        } else {
            v.violated_rules.push_back("gamma_upper");
        }
        // The extra psi'-growth hypothesis of the classical family is
        // ambiguous; record it as a warning instead of a rule.
        v.warnings.push_back("psi_prime_growth_unverified");
    } else {
        bool exceptional = (alpha == 0.0 && gamma_exp == 1.0);
        if (!exceptional) {
            if (!(alpha > 0.0 && alpha <= 2.0)) v.violated_rules.push_back("alpha_range");
            if (gamma_exp >= 1.0 && gamma_exp < alpha + 1.0) {
                // interior branch
            } else if (gamma_exp == alpha + 1.0) {
                if (!boundary_product_ok(d, A1, B1, B2, C2))
                    v.violated_rules.push_back("gamma_boundary_product");
            } else {
                v.violated_rules.push_back("gamma_range");
            }
        }
    }

    v.admissible = v.violated_rules.empty();
    return v;
}

const char* to_string(TheoremFamily t) {
    return t == TheoremFamily::classical_thm31 ? "classical_thm31" : "regular_thm32_cor33";
}

}  // namespace peterlin
