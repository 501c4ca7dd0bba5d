#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "config.hpp"

namespace qfloquet::cli {

inline constexpr const char* kToolName = "qfloquet";
inline constexpr const char* kToolVersion = "0.1.0";

/// Runs the analysis selected by cfg.mode (not sweep) and returns the
/// "result" object of the report. Library errors propagate.
nlohmann::json analyze(const AnalysisConfig& cfg);

/// One grid point of a sweep.
struct SweepRow {
  double p = 0.0;
  double re_trace = 0.0;
  double frob_sq = 0.0;
  double rho1 = 0.0;  ///< larger multiplier modulus
  double rho2 = 0.0;
  std::string verdict_trace;
  std::string verdict_frobenius;
  std::string verdict_multipliers;
  /// False when the trace or Frobenius verdict says unstable and the
  /// multipliers disagree.
  bool consistent = true;
  std::string error;  ///< empty on success; numeric columns are then unset
};

std::vector<double> sweep_grid(const SweepRange& range);

/// Evaluates every grid point, up to cfg.jobs at a time. Rows come back in
/// grid order; per-point failures are recorded in SweepRow::error.
std::vector<SweepRow> run_sweep(const AnalysisConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows);
nlohmann::json sweep_json(const std::vector<SweepRow>& rows);

/// {tool, version, config, result}.
nlohmann::json make_report(const AnalysisConfig& cfg, nlohmann::json result);

/// Shortest decimal string that reads back to the same double.
std::string shortest(double x);

/// Paper-style tables for a single-analysis report.
std::string render_text(const nlohmann::json& report);
/// Flattened `path,value` rows.
std::string render_csv(const nlohmann::json& report);

/// Walks two results side by side. Numbers must agree within
/// tol * max(1, |x|), everything else exactly. Returns the first differing
/// JSON path, or an empty string when they agree.
std::string first_mismatch(const nlohmann::json& expected, const nlohmann::json& actual,
                           double tol = 1e-12);

}  // namespace qfloquet::cli
