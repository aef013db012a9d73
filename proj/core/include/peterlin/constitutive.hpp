#pragma once

#include <string>
#include <vector>

#include "peterlin/errors.hpp"

namespace peterlin {

/// Constitutive function family. Functions are restricted to power laws
/// c*s^e (plus the constant and affine special cases) so that the ratio
/// and admissibility checks are decidable.
enum class GammaKind { power_law, constant, affine };

/// One constitutive function gamma_i together with the growth envelope
/// lower*s^e <= gamma(s) <= upper*s^e it is required to satisfy for s >= 1.
struct GammaSpec {
    GammaKind kind = GammaKind::constant;
    double exponent = 0.0;     ///< growth exponent (alpha, beta or gamma)
    double lower_const = 1.0;  ///< lower envelope constant (A1/B1/C1)
    double upper_const = 1.0;  ///< upper envelope constant (A2/B2/C2)
    double eval_coeff = 1.0;   ///< coefficient of the evaluated power law

    static GammaSpec power_law(double coeff, double exponent);
    static GammaSpec power_law(double coeff, double exponent, double lower, double upper);
    static GammaSpec constant(double coeff);
    static GammaSpec constant(double coeff, double lower, double upper);
    static GammaSpec affine(double coeff);

    /// Exponent used for structural comparisons: 0 for constants, 1 for
    /// affine, the stored exponent otherwise.
    double structural_exponent() const;

    /// Throws InvalidParameterError if any invariant is violated.
    void validate() const;
};

/// Evaluates gamma(s). Throws DomainError for s < 0.
double gamma_eval(const GammaSpec& spec, double s);

/// Gamma(tr C) = gamma_2(tr C) / (2 lambda), the configuration-space
/// diffusion coefficient of the kinetic equation.
double big_gamma(const GammaSpec& gamma2, double lambda, double tr_c);

/// True iff gamma_1(s)/gamma_2(s) is identically the constant k_tau,
/// decided structurally: equal structural exponents and coefficient ratio
/// equal to k_tau within 1e-12 relative.
bool check_ratio_condition(const GammaSpec& gamma1, const GammaSpec& gamma2, double k_tau);

/// Equilibrium Gaussian weight M(R) = b exp(-|R|^2 / (2a)).
struct Maxwellian {
    double a = 1.0;  ///< variance scale, a = k_tau * gamma2_eq / gamma1_eq
    double b = 0.0;  ///< normalizer, b = (2 pi a)^(-d/2)
    int d = 2;       ///< configuration-space dimension
};

/// Builds the equilibrium Maxwellian from the stochastic-force magnitude
/// and the equilibrium values of gamma_1, gamma_2. All inputs must be
/// positive and d must be 2 or 3.
Maxwellian make_maxwellian(double k_tau, double gamma1_at_eq, double gamma2_at_eq, int d);

/// All non-dimensional model parameters, derived from the physical
/// primitives. lambda is the Deborah number, eps the center-of-mass
/// diffusion coefficient, nu the reciprocal Reynolds number.
struct NondimParams {
    double k_tau = 1.0;
    double zeta = 4.0;
    double U0 = 1.0, L0 = 1.0, l0 = 1.0, d0 = 1.0;
    double gamma_M = 1.0;  ///< = k_tau by the ratio condition
    double lambda = 1.0;   ///< (zeta / (4 gamma_M)) * (U0 / L0)
    double eps = 0.125;    ///< (l0/L0)^2 / (8 lambda)
    double nu = 1.0;
    double n_density = 1.0;
};

NondimParams derive_nondim(double k_tau, double zeta, double U0, double L0,
                           double l0, double d0, double nu, double n_density,
                           double gamma1_eq, double gamma2_eq);

/// Exponent hypotheses checked by the admissibility validator.
enum class TheoremFamily {
    classical_thm31,     ///< alpha+beta+1>2, alpha>beta+1, beta>=0, gamma rule
    regular_thm32_cor33  ///< 0<alpha<=2 with 1<=gamma<alpha+1 (or boundary), or alpha=0 and gamma=1
};

/// Result of the admissibility check. `admissible` holds exactly when
/// `violated_rules` is empty; `warnings` lists hypotheses that are noted
/// but not enforced.
struct AdmissibilityVerdict {
    TheoremFamily theorem = TheoremFamily::classical_thm31;
    bool admissible = false;
    std::vector<std::string> violated_rules;
    std::vector<std::string> warnings;
};

/// Evaluates the exponent rule set of the selected theorem family.
/// Rule identifiers (in emission order):
///   classical_thm31:      alpha_beta_sum, alpha_gt_beta_plus_one,
///                          beta_nonneg, gamma_upper, gamma_boundary_product
///   regular_thm32_cor33:  alpha_range, gamma_range, gamma_boundary_product
AdmissibilityVerdict check_admissibility(double alpha, double beta, double gamma_exp,
                                         double A1, double A2, double B1, double B2,
                                         double C1, double C2, int d,
                                         TheoremFamily theorem);

const char* to_string(TheoremFamily t);

}  // namespace peterlin
