#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qfloquet/integrator.hpp"

namespace qfloquet::cli {

enum class Mode { Constant, Periodic, Hill, Sweep };
enum class Format { Text, Json, Csv };

struct SweepRange {
  double from = 0.0;
  double to = 0.0;
  double step = 1.0;
};

struct AnalysisConfig {
  Mode mode = Mode::Constant;
  std::optional<double> period;
  std::vector<std::vector<std::string>> entries;  ///< constant / periodic
  std::string a;                                  ///< hill / sweep
  IntegratorConfig integrator;
  Format format = Format::Text;
  std::string out_path;         ///< empty: stdout
  std::string trajectory_path;  ///< periodic: CSV of M(t) samples; not serialized
  SweepRange sweep;
  unsigned jobs = 1;
};

std::string to_string(Mode mode);
std::string to_string(Format format);
Mode parse_mode(const std::string& s);
Format parse_format(const std::string& s);

/// Numeric flag value: a plain number or an expression without t, where the
/// word `pi` stands for 3.141592653589793.
double parse_number(const std::string& text);

/// Groups --entry tokens into rows. A ";" token ends a row; without any,
/// the token count must be a perfect square and is read row-major.
std::vector<std::vector<std::string>> group_entries(const std::vector<std::string>& tokens);

/// Throws Error(InvalidArgument) / (DimensionMismatch) for unusable configs.
void validate(const AnalysisConfig& cfg);

AnalysisConfig config_from_json(const nlohmann::json& j);
nlohmann::json config_to_json(const AnalysisConfig& cfg);

}  // namespace qfloquet::cli
