#pragma once

#include <filesystem>

#include "fkpp/config.hpp"

namespace fkpp::cli {

// Exit codes shared by every subcommand.
inline constexpr int kOk = 0;
inline constexpr int kConfigError = 2;
inline constexpr int kHypothesisViolation = 3;
inline constexpr int kNonConvergence = 4;

/// solve: one instance -> summary.json, profile.csv, profile.json,
/// trajectory.csv under out_dir.
int run_solve(const RunConfig& config, const std::filesystem::path& out_dir);

/// verify: property suite on the configured instance plus the built-in
/// manufactured matrix (quick = matrix only) -> report.json; exit 0 iff the
/// aggregate passes.
int run_verify(const RunConfig& config, const std::filesystem::path& out_dir,
               bool quick);

/// sweep: cartesian grid over sweep_p x sweep_values, one subdirectory per
/// instance, index.json summarizing per-instance status.
int run_sweep(const RunConfig& config, const std::filesystem::path& out_dir);

/// export-plot: xi-u and r-y tables for external plotting.
int run_export_plot(const RunConfig& config, const std::filesystem::path& out_dir);

}  // namespace fkpp::cli
