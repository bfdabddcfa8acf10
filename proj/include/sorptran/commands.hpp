#pragma once

#include <string>

namespace sorptran {

// Exit codes shared by the CLI and the command implementations.
inline constexpr int kExitOk = 0;
inline constexpr int kExitCheckFailure = 1;
inline constexpr int kExitInvalidInput = 2;
inline constexpr int kExitSolverFailure = 3;

struct CommandOptions {
    std::string out_dir;  // overrides the config's output directory when set
    bool quiet = false;
};

/// Single simulation: writes snapshots.csv, diagnostics.csv, report.txt and
/// the effective-config echo into the output directory.
int cmd_run(const std::string& config_path, const CommandOptions& opts);

/// Convergence study against the exact profile: writes errors.csv, rates.csv,
/// report.txt and the effective-config echo; prints a log-log table.
int cmd_converge(const std::string& config_path, const CommandOptions& opts);

/// Built-in identity checks (gradient vs finite differences, conjugate
/// density identity, monotonicity, conjugate-bound inequality, profile mass
/// conservation). The perturbation hook exists for tests only: it offsets one
/// computed gradient so the failure path is exercised.
int cmd_validate(const CommandOptions& opts, bool perturb_gradient_for_test = false);

}  // namespace sorptran
