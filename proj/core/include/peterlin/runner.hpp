#pragma once

#include <string>

#include "peterlin/config.hpp"
#include "peterlin/diagnostics.hpp"

namespace peterlin {

/// Outcome of a completed run. Diagnostics rows are written to
/// <output_dir>/diagnostics.csv at every output_every-th step (plus the
/// initial and final states); a final field snapshot is always written.
struct RunSummary {
    long steps = 0;
    DiagnosticsRow first;
    DiagnosticsRow last;
    std::string diagnostics_path;
};

/// Macroscopic Peterlin run: Navier-Stokes forced by the Kramers stress of
/// the evolving conformation field.
RunSummary run_mp(const RunConfig& cfg);

/// Kinetic solve for given, time-independent (u*, C*) read from the PKF1
/// files named in the config (fields u_x/u_y and C_11/C_12/C_22).
RunSummary run_fp_given(const RunConfig& cfg);

/// Fully coupled kinetic run: stress from the kinetic conformation tensor,
/// then the Navier-Stokes step, then the kinetic step with the new
/// velocity.
RunSummary run_kp(const RunConfig& cfg);

/// Closure-verification experiment. Runs the macroscopic and kinetic
/// systems side by side from identical initial data and identical
/// parameters and reports how far the kinetic second moments drift from
/// the macroscopic conformation field.
struct ClosureReport {
    double max_rel_C_error = 0.0;
    double final_rel_C_error = 0.0;
    double residual_kinetic = 0.0;
    double residual_macro = 0.0;
    std::string error_series_path;
    std::string report_path;
};
ClosureReport compare_closure(const RunConfig& cfg);

}  // namespace peterlin
