#pragma once

#include <optional>
#include <string>

namespace peterlin {

/// One row of the run diagnostics. Columns that do not apply to a run mode
/// (kinetic observables in a macroscopic run, closure error outside the
/// comparison experiment) serialize as empty cells.
struct DiagnosticsRow {
    long step = 0;
    double time = 0.0;
    double kinetic_energy = 0.0;
    double trC_mean = 0.0;
    std::optional<double> mass_min;
    std::optional<double> mass_max;
    std::optional<double> entropy;
    std::optional<double> fisher;
    std::optional<double> moment4_max;
    std::optional<double> min_psi_node;
    std::optional<double> negativity_mass;
    std::optional<double> closure_err;
};

/// Fixed CSV header.
const char* diagnostics_csv_header();

/// Serializes one row. Doubles are printed with %.17g so identical values
/// produce identical bytes.
std::string to_csv(const DiagnosticsRow& row);

/// Round-trip double formatting used for all text output.
std::string format_double(double v);

}  // namespace peterlin
