#pragma once

#include <optional>
#include <string>

#include "peterlin/constitutive.hpp"
#include "peterlin/fokker_planck.hpp"
#include "peterlin/tensor.hpp"

namespace peterlin {

enum class RunMode { mp, fp_given, kp, closure_compare };
enum class InitVelocity { rest, taylor_green };

/// A fully validated run configuration. Parsed from flat key=value text
/// ('#' starts a comment); see parse_config for the key set.
struct RunConfig {
    RunMode mode = RunMode::mp;
    int nx = 64, ny = 64;
    int n_hermite = 8;
    double dt = 0.0;
    double t_end = 0.0;
    long output_every = 1;
    long snapshot_every = 0;  ///< 0 = final snapshot only

    double k_tau = 1.0, zeta = 4.0;
    double U0 = 1.0, L0 = 1.0, l0 = 1.0, d0 = 1.0;
    double nu = 1.0, n_density = 1.0;
    GammaSpec gamma1 = GammaSpec::constant(1.0);
    GammaSpec gamma2 = GammaSpec::constant(1.0);
    GammaSpec gamma3 = GammaSpec::constant(1.0);

    std::optional<double> cutoff_L;
    GammaSource gamma_source = GammaSource::self_consistent;
    bool compare_self_consistent = false;  ///< kinetic leg of the comparison uses its own C

    InitVelocity init_u = InitVelocity::rest;
    SymMat2 init_c0;  ///< Gaussian initial data; defaults to a*I

    std::string output_dir = "out";
    std::string u_star_path, c_star_path;  ///< fp_given inputs (PKF1)

    int threads = 1;  ///< worker count; never part of the config file

    // derived at parse time
    NondimParams params;
    Maxwellian maxwellian;

    long n_steps() const { return static_cast<long>(t_end / dt + 0.5); }
};

/// Parses and validates configuration text.
///
/// Recognized keys: mode, nx, ny, n_hermite, dt, t_end, output_every,
/// snapshot_every, k_tau, zeta, U0, L0, l0, d0, nu, n_density,
/// gamma{1,2,3}_{kind,coeff,exponent,lower,upper}, cutoff_L, gamma_source,
/// init_u, init_c0_{11,12,22}, output_dir, u_star_path, c_star_path.
///
/// Throws ConfigError (with the offending 1-based line number where one
/// exists) on unknown keys, duplicate keys, malformed values, missing
/// required keys, violation of the dt <= 1/(4 L^2) cut-off guard, or a
/// violated ratio condition (fatal unless mode == mp with constant
/// gamma_1, gamma_2).
RunConfig parse_config(const std::string& text);

RunConfig load_config_file(const std::string& path);

/// Admissibility verdicts for both theorem families, from the configured
/// growth envelopes (gamma_1 -> alpha/A, gamma_3 -> beta/B, gamma_2 ->
/// gamma/C).
struct AdmissibilityReport {
    AdmissibilityVerdict classical;
    AdmissibilityVerdict regular;
    bool ratio_ok = false;
};
AdmissibilityReport admissibility_report(const RunConfig& cfg);

const char* to_string(RunMode m);

}  // namespace peterlin
