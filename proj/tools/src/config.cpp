#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <regex>

#include "qfloquet/error.hpp"
#include "qfloquet/time_expr.hpp"

namespace qfloquet::cli {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorCode::InvalidArgument, msg); }

std::string method_name(Method m) { return m == Method::RK4Fixed ? "rk4" : "dp54"; }

Method parse_method(const std::string& s) {
  if (s == "dp54") return Method::DP54Adaptive;
  if (s == "rk4") return Method::RK4Fixed;
  bad("unknown integrator method '" + s + "' (expected dp54 or rk4)");
}

}  // namespace

std::string to_string(Mode mode) {
  switch (mode) {
    case Mode::Constant:
      return "constant";
    case Mode::Periodic:
      return "periodic";
    case Mode::Hill:
      return "hill";
    case Mode::Sweep:
      return "sweep";
  }
  return "constant";
}

std::string to_string(Format format) {
  switch (format) {
    case Format::Text:
      return "text";
    case Format::Json:
      return "json";
    case Format::Csv:
      return "csv";
  }
  return "text";
}

Mode parse_mode(const std::string& s) {
  if (s == "constant") return Mode::Constant;
  if (s == "periodic") return Mode::Periodic;
  if (s == "hill") return Mode::Hill;
  if (s == "sweep") return Mode::Sweep;
  bad("unknown mode '" + s + "'");
}

Format parse_format(const std::string& s) {
  if (s == "text") return Format::Text;
  if (s == "json") return Format::Json;
  if (s == "csv") return Format::Csv;
  bad("unknown format '" + s + "' (expected text, json or csv)");
}

double parse_number(const std::string& text) {
  static const std::regex pi_word(R"(\bpi\b)");
  const std::string normalized = std::regex_replace(text, pi_word, "3.141592653589793");
  const TimeExpr e = parse(normalized);
  if (e.depends_on_time()) bad("numeric value '" + text + "' must not depend on t");
  const Quaternion q = e.eval(0.0);
  if (vec_norm(q) != 0.0 || !std::isfinite(q.w)) bad("'" + text + "' is not a finite real number");
  return q.w;
}

std::vector<std::vector<std::string>> group_entries(const std::vector<std::string>& raw) {
  // ";" may arrive as its own token or glued to an entry ("1;").
  std::vector<std::string> tokens;
  bool has_separator = false;
  for (const auto& tok : raw) {
    std::size_t start = 0;
    for (std::size_t pos; (pos = tok.find(';', start)) != std::string::npos; start = pos + 1) {
      if (pos > start) tokens.push_back(tok.substr(start, pos - start));
      tokens.emplace_back(";");
      has_separator = true;
    }
    if (start < tok.size()) tokens.push_back(tok.substr(start));
  }
  std::vector<std::vector<std::string>> rows;
  if (has_separator) {
    rows.emplace_back();
    for (const auto& tok : tokens) {
      if (tok == ";")
        rows.emplace_back();
      else
        rows.back().push_back(tok);
    }
    if (rows.back().empty()) rows.pop_back();  // trailing ";"
    return rows;
  }
  const auto n = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(tokens.size()))));
  if (n * n != tokens.size() || n == 0) {
    throw Error(ErrorCode::DimensionMismatch,
                std::to_string(tokens.size()) +
                    " entries do not form a square matrix; separate rows with \";\"");
  }
  for (std::size_t r = 0; r < n; ++r) {
    rows.emplace_back(tokens.begin() + static_cast<long>(r * n),
                      tokens.begin() + static_cast<long>((r + 1) * n));
  }
  return rows;
}

void validate(const AnalysisConfig& cfg) {
  cfg.integrator.validate();
  if (cfg.mode == Mode::Constant || cfg.mode == Mode::Periodic) {
    const std::size_t n = cfg.entries.size();
    if (n == 0) bad("no matrix entries given");
    for (const auto& row : cfg.entries) {
      if (row.size() != n) {
        throw Error(ErrorCode::DimensionMismatch,
                    "matrix is not square: " + std::to_string(n) + " rows, a row has " +
                        std::to_string(row.size()) + " entries");
      }
    }
  } else if (cfg.a.empty()) {
    bad("no Hill coefficient given (--a)");
  }
  if (cfg.mode != Mode::Constant) {
    if (!cfg.period) bad(to_string(cfg.mode) + " mode needs --period");
    if (!(*cfg.period > 0.0)) bad("period must be positive");
  }
  if (cfg.mode == Mode::Sweep && !(cfg.sweep.step > 0.0)) bad("sweep step must be positive");
}

AnalysisConfig config_from_json(const nlohmann::json& j) {
  if (!j.is_object()) bad("config must be a JSON object");
  AnalysisConfig cfg;
  auto number = [](const nlohmann::json& v, const char* key) {
    if (v.is_number()) return v.get<double>();
    if (v.is_string()) return parse_number(v.get<std::string>());
    bad(std::string("'") + key + "' must be a number or a numeric string");
  };
  cfg.mode = parse_mode(j.value("mode", std::string("constant")));
  if (j.contains("period") && !j["period"].is_null()) cfg.period = number(j["period"], "period");
  if (j.contains("entries")) {
    for (const auto& row : j["entries"]) {
      std::vector<std::string> r;
      for (const auto& e : row) {
        if (e.is_string())
          r.push_back(e.get<std::string>());
        else if (e.is_number())
          r.push_back(e.dump());
        else
          bad("matrix entries must be expression strings");
      }
      cfg.entries.push_back(std::move(r));
    }
  }
  if (j.contains("a")) cfg.a = j["a"].get<std::string>();
  if (j.contains("integrator")) {
    const auto& in = j["integrator"];
    if (in.contains("rtol")) cfg.integrator.rel_tol = number(in["rtol"], "rtol");
    if (in.contains("atol")) cfg.integrator.abs_tol = number(in["atol"], "atol");
    if (in.contains("method")) cfg.integrator.method = parse_method(in["method"].get<std::string>());
    if (in.contains("step")) cfg.integrator.step = number(in["step"], "step");
  }
  if (j.contains("output")) {
    const auto& out = j["output"];
    if (out.contains("format")) cfg.format = parse_format(out["format"].get<std::string>());
    if (out.contains("path")) cfg.out_path = out["path"].get<std::string>();
  }
  if (j.contains("sweep")) {
    const auto& s = j["sweep"];
    cfg.sweep.from = number(s.at("from"), "from");
    cfg.sweep.to = number(s.at("to"), "to");
    cfg.sweep.step = number(s.at("step"), "step");
  }
  return cfg;
}

nlohmann::json config_to_json(const AnalysisConfig& cfg) {
  nlohmann::json j;
  j["mode"] = to_string(cfg.mode);
  if (cfg.period) j["period"] = *cfg.period;
  if (cfg.mode == Mode::Constant || cfg.mode == Mode::Periodic)
    j["entries"] = cfg.entries;
  else
    j["a"] = cfg.a;
  j["integrator"] = {{"rtol", cfg.integrator.rel_tol},
                     {"atol", cfg.integrator.abs_tol},
                     {"method", method_name(cfg.integrator.method)}};
  if (cfg.integrator.method == Method::RK4Fixed) j["integrator"]["step"] = cfg.integrator.step;
  j["output"] = {{"format", to_string(cfg.format)}};
  if (!cfg.out_path.empty()) j["output"]["path"] = cfg.out_path;
  if (cfg.mode == Mode::Sweep) {
    j["sweep"] = {{"from", cfg.sweep.from}, {"to", cfg.sweep.to}, {"step", cfg.sweep.step}};
  }
  return j;
}

}  // namespace qfloquet::cli
