#pragma once

#include <iosfwd>
#include <string>

#include "metastab/config.hpp"
#include "metastab/report.hpp"

namespace metastab {

/// Computes the metastability rate for the configured u, d, eps, g, norm
/// bound. In exact mode a digit-budget overflow is reported as a failure
/// (re-run with --mode log2); log2 mode always produces a finite bound.
RunReport run_bounds(const ExperimentConfig& cfg);

/// Runs the configured property suite; ok iff every property passes.
RunReport run_verify(const ExperimentConfig& cfg);

/// Writes the trajectory CSV (header plus one row per n in [0, n_cap]:
/// n, norm_xn, pairwise_osc over the window [n, n+g(n)]) to `csv`.
RunReport run_simulate(const ExperimentConfig& cfg, std::ostream& csv);

/// Searches for an empirical metastability witness, computes the rate
/// (falling back to the log2 upper bound when the exact value overflows the
/// digit budget), and renders the verdict:
///   CONFIRMED  witness found and <= the exact rate
///   CONSISTENT nothing contradicts the rate (witness vs a log2-only bound,
///              or no witness <= n_cap while the rate exceeds n_cap)
///   FAIL       the rate is contradicted (witness above it, or no witness
///              though the rate lies within the searched range) — an
///              implementation bug by definition
RunReport run_metastable(const ExperimentConfig& cfg);

/// Runs one subcommand end to end under the configured runtime limits and
/// routes the outputs: the report JSON always goes to stdout; simulate sends
/// its CSV to --out (stdout when absent), the other commands duplicate the
/// report JSON to --out. Returns the process exit code (0 success,
/// 1 property/verdict failure).
int execute_command(const std::string& command, const ExperimentConfig& cfg);

}  // namespace metastab
