#pragma once

#include <string>
#include <vector>

#include "casimir/config.hpp"
#include "casimir/engine.hpp"

namespace casimir::cli {

/// Plot-ready numeric table with '#'-prefixed header lines naming units.
struct Table {
    std::vector<std::string> comments;  // emitted with a leading "# "
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;
};

/// Deterministic CSV rendering (%.12g); bit-stable for identical inputs.
std::string to_csv(const Table& table);

/// Dielectric functions of the three media on a log grid 1e11..1e18 rad/s,
/// plus a marker row at the first Matsubara frequency.
Table cmd_epsilon(const RunConfig& config);

/// All reflection block amplitudes for both surfaces at Matsubara order n over
/// a log-spaced k grid; n = 0 rows hold the zero-frequency closed forms.
Table cmd_reflect(const RunConfig& config, int n, double k_min, double k_max,
                  int k_count);

/// Full energy breakdown at the configured separation.
EnergyBreakdown cmd_energy(const RunConfig& config);
std::string energy_to_json(const RunConfig& config, const EnergyBreakdown& breakdown);

/// Hamaker function sweep: columns (L_nm, H_total, H_minus_f0tm, H_zero_freq,
/// H_asymptote). Sweep points are dispatched to config.jobs workers and
/// assembled in grid order.
Table cmd_hamaker(const RunConfig& config);

struct CheckResult {
    std::string name;
    bool pass = false;
    double measured = 0.0;
    double tolerance = 0.0;
    std::string note;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool all_pass = false;
};

/// Cross-validation suite: logdet vs decoupled formulas, the xi -> 0 sequence,
/// slab thickness independence, the zero-frequency TM prefactor report, the
/// no-ion reduction, the dispersion-relation identity, quadrature substitution
/// invariance and Matsubara truncation soundness.
ValidationReport cmd_validate(const RunConfig& config);
std::string validation_to_json(const ValidationReport& report);

}  // namespace casimir::cli
