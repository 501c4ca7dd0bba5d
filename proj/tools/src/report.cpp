#include "report.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <thread>

#include "qfloquet/error.hpp"
#include "qfloquet/floquet.hpp"
#include "qfloquet/hill.hpp"
#include "qfloquet/integrator.hpp"
#include "qfloquet/stability.hpp"
#include "qfloquet/time_expr.hpp"

namespace qfloquet::cli {

using nlohmann::json;

namespace {

json to_json(const Quaternion& q) { return json::array({q.w, q.x, q.y, q.z}); }
json to_json(ComplexPair c) { return json::array({c.real(), c.imag()}); }

json to_json(const QMatrix& m) {
  json rows = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    json row = json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(to_json(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

json to_json(const StandardSpectrum& s) {
  json out = json::array();
  for (const auto& e : s.entries) {
    out.push_back({{"value", to_json(e.value)},
                   {"modulus", std::abs(e.value)},
                   {"algebraic", e.algebraic},
                   {"geometric", e.geometric}});
  }
  return out;
}

json to_json(const StabilityVerdict& v) {
  json evidence = json::array();
  for (const auto& e : v.evidence) {
    evidence.push_back({{"quantity", e.quantity},
                        {"value", to_json(e.value)},
                        {"threshold", e.threshold},
                        {"margin", e.margin}});
  }
  return {{"kind", std::string(to_string(v.kind))}, {"evidence", std::move(evidence)}};
}

json to_json(const GrowthProfile& g) {
  return {{"norms", g.norms}, {"suggests", std::string(to_string(g.suggests))}};
}

std::vector<std::string> flatten_entries(const AnalysisConfig& cfg) {
  std::vector<std::string> flat;
  for (const auto& row : cfg.entries) flat.insert(flat.end(), row.begin(), row.end());
  return flat;
}

json analyze_constant(const AnalysisConfig& cfg) {
  const MatrixSpec spec = MatrixSpec::parse(cfg.entries.size(), flatten_entries(cfg));
  if (spec.depends_on_time()) {
    throw Error(ErrorCode::InvalidArgument,
                "constant mode entries must not depend on t; use the periodic mode");
  }
  const QMatrix a = spec.eval(0.0);
  return {{"matrix", to_json(a)},
          {"qdet", qdet(a)},
          {"eigenvalues", to_json(standard_eigenvalues(a))},
          {"growth", to_json(growth_profile_constant(a))},
          {"verdict", to_json(classify_constant(a))}};
}

// t, then the four components of every entry in row-major order.
void write_trajectory(const std::string& path, const Trajectory& traj) {
  std::ofstream os(path);
  if (!os) throw Error(ErrorCode::InvalidArgument, "cannot open trajectory file '" + path + "'");
  const std::size_t n = traj.states.front().rows();
  os << 't';
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t c = 0; c < n; ++c)
      for (const char* part : {"w", "x", "y", "z"})
        os << ",m" << r << c << '_' << part;
  os << '\n';
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    os << shortest(traj.times[k]);
    for (const auto& q : traj.states[k].entries())
      os << ',' << shortest(q.w) << ',' << shortest(q.x) << ',' << shortest(q.y) << ','
         << shortest(q.z);
    os << '\n';
  }
}

json analyze_periodic(const AnalysisConfig& cfg) {
  const MatrixSpec spec = MatrixSpec::parse(cfg.entries.size(), flatten_entries(cfg), cfg.period);
  const FloquetData fd = normal_form(spec, cfg.integrator);
  const ProductCheck pc = multiplier_product_check(fd, spec);
  Trajectory traj{fd.times, fd.fundamental};
  if (!cfg.trajectory_path.empty()) write_trajectory(cfg.trajectory_path, traj);

  json exponents = json::array();
  for (ComplexPair mu : fd.exponents) exponents.push_back(to_json(mu));
  json solutions = json::array();
  for (const auto& s : periodic_solutions(fd)) {
    json eta = json::array();
    for (const auto& q : s.initial) eta.push_back(to_json(q));
    solutions.push_back({{"kind", s.kind == PeriodicKind::TPeriodic ? "T" : "2T"},
                         {"multiplier", to_json(s.multiplier)},
                         {"initial", std::move(eta)},
                         {"residual", s.residual}});
  }
  return {{"period", fd.period},
          {"periodicity_residual_a", periodicity_residual(spec)},
          {"monodromy", to_json(fd.monodromy)},
          {"multipliers", to_json(fd.multipliers)},
          {"exponents", std::move(exponents)},
          {"b", to_json(fd.b)},
          {"b_spectrum", to_json(fd.b_spectrum)},
          {"log_residual", fd.log_residual},
          {"branch_adjusted", fd.branch_adjusted},
          {"periodicity_residual", fd.periodicity_residual},
          {"periodicity_bound", fd.periodicity_bound},
          {"product_residual", pc.product_residual},
          {"exponent_sum_residual", pc.exponent_sum_residual},
          {"liouville_residual", liouville_residual(traj, spec)},
          {"periodic_solutions", std::move(solutions)},
          {"growth", to_json(growth_profile_periodic(fd.monodromy))},
          {"verdict", to_json(classify_periodic(fd))}};
}

// A trace or Frobenius Unstable should be confirmed by the multipliers.
bool verdicts_consistent(const HillReport& r) {
  const bool side_unstable = r.verdict_trace.kind == VerdictKind::Unstable ||
                             r.verdict_frobenius.kind == VerdictKind::Unstable;
  return !side_unstable || r.verdict_multipliers.kind == VerdictKind::Unstable;
}

json analyze_hill(const AnalysisConfig& cfg) {
  const HillProblem p = HillProblem::parse(cfg.a, *cfg.period);
  const HillReport r = qfloquet::analyze(p, cfg.integrator);
  json out = {{"monodromy", to_json(r.monodromy)},
              {"re_trace", r.re_trace},
              {"frob_sq", r.frob_sq},
              {"qdet", r.qdet},
              {"multipliers", to_json(r.multipliers)},
              {"k_matrix",
               {{"kappa1", r.k.kappa1},
                {"kappa2", r.k.kappa2},
                {"root_residual", r.k.root_residual},
                {"kappa_modulus_gap", r.kappa_modulus_gap}}},
              {"trace_sum_residual", r.trace_sum_residual},
              {"product_residual", r.product_residual},
              {"verdict_trace", to_json(r.verdict_trace)},
              {"verdict_frobenius", to_json(r.verdict_frobenius)},
              {"verdict_multipliers", to_json(r.verdict_multipliers)},
              {"verdicts_consistent", verdicts_consistent(r)}};
  try {
    out["verdict_real"] = to_json(classify_real(p, cfg.integrator));
  } catch (const Error& e) {
    if (e.code() != ErrorCode::NotRealCoefficient) throw;
  }
  return out;
}

}  // namespace

json analyze(const AnalysisConfig& cfg) {
  validate(cfg);
  switch (cfg.mode) {
    case Mode::Constant:
      return analyze_constant(cfg);
    case Mode::Periodic:
      return analyze_periodic(cfg);
    case Mode::Hill:
      return analyze_hill(cfg);
    case Mode::Sweep:
      break;
  }
  throw Error(ErrorCode::InvalidArgument, "sweep mode produces rows, not a single result");
}

// ---------------------------------------------------------------------------
// Sweeps

std::vector<double> sweep_grid(const SweepRange& range) {
  std::vector<double> grid;
  if (range.to < range.from) return grid;
  const auto count = static_cast<long>(std::floor((range.to - range.from) / range.step + 1e-9));
  for (long k = 0; k <= count; ++k) grid.push_back(range.from + static_cast<double>(k) * range.step);
  return grid;
}

std::vector<SweepRow> run_sweep(const AnalysisConfig& cfg) {
  validate(cfg);
  ParseOptions options;
  options.allow_parameter = true;
  const HillProblem base = HillProblem::parse(cfg.a, *cfg.period, options);
  const std::vector<double> grid = sweep_grid(cfg.sweep);
  std::vector<SweepRow> rows(grid.size());

  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < grid.size(); i = next++) {
      SweepRow& row = rows[i];
      row.p = grid[i];
      try {
        const HillReport r =
            qfloquet::analyze(HillProblem{base.a.substitute_parameter(grid[i]), base.period}, cfg.integrator);
        std::vector<ComplexPair> rho = r.multipliers.flattened();
        std::sort(rho.begin(), rho.end(),
                  [](ComplexPair a, ComplexPair b) { return std::abs(a) > std::abs(b); });
        row.re_trace = r.re_trace;
        row.frob_sq = r.frob_sq;
        row.rho1 = std::abs(rho[0]);
        row.rho2 = std::abs(rho[1]);
        row.verdict_trace = to_string(r.verdict_trace.kind);
        row.verdict_frobenius = to_string(r.verdict_frobenius.kind);
        row.verdict_multipliers = to_string(r.verdict_multipliers.kind);
        row.consistent = verdicts_consistent(r);
      } catch (const Error& e) {
        row.error = std::string(to_string(e.code())) + ": " + e.what();
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(cfg.jobs, static_cast<unsigned>(grid.size())));
  std::vector<std::jthread> pool;
  for (unsigned w = 1; w < jobs; ++w) pool.emplace_back(worker);
  worker();
  return rows;
}

namespace {

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

}  // namespace

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream os;
  os << "p,re_trace,frob_sq,|rho1|,|rho2|,verdict_trace,verdict_frobenius,verdict_multipliers,"
        "consistent,error\n";
  for (const auto& r : rows) {
    os << shortest(r.p) << ',';
    if (r.error.empty()) {
      os << shortest(r.re_trace) << ',' << shortest(r.frob_sq) << ',' << shortest(r.rho1) << ','
         << shortest(r.rho2) << ',' << r.verdict_trace << ',' << r.verdict_frobenius << ','
         << r.verdict_multipliers << ',' << (r.consistent ? "true" : "false") << ",\n";
    } else {
      os << ",,,,,,,," << csv_field(r.error) << '\n';
    }
  }
  return os.str();
}

json sweep_json(const std::vector<SweepRow>& rows) {
  json out = json::array();
  for (const auto& r : rows) {
    if (!r.error.empty()) {
      out.push_back({{"p", r.p}, {"error", r.error}});
      continue;
    }
    out.push_back({{"p", r.p},
                   {"re_trace", r.re_trace},
                   {"frob_sq", r.frob_sq},
                   {"rho1_modulus", r.rho1},
                   {"rho2_modulus", r.rho2},
                   {"verdict_trace", r.verdict_trace},
                   {"verdict_frobenius", r.verdict_frobenius},
                   {"verdict_multipliers", r.verdict_multipliers},
                   {"consistent", r.consistent}});
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rendering

json make_report(const AnalysisConfig& cfg, json result) {
  return {{"tool", kToolName},
          {"version", kToolVersion},
          {"config", config_to_json(cfg)},
          {"result", std::move(result)}};
}

std::string shortest(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, res.ptr);
}

namespace {

std::string num(const json& v) {
  if (v.is_null()) return "nan";
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return shortest(v.get<double>());
}

std::string complex_text(const json& c) {
  const double im = c[1].get<double>();
  return num(c[0]) + (std::signbit(im) ? "-" : "+") + shortest(std::abs(im)) + "i";
}

std::string quaternion_text(const json& q) {
  std::string s = num(q[0]);
  const char* units[] = {"i", "j", "k"};
  for (int u = 0; u < 3; ++u) {
    const double v = q[u + 1].get<double>();
    if (v == 0.0) continue;
    s += (std::signbit(v) ? "-" : "+") + shortest(std::abs(v)) + units[u];
  }
  return s;
}

class Table {
 public:
  explicit Table(std::vector<std::string> header) { rows_.push_back(std::move(header)); }
  void add(std::vector<std::string> row) { rows_.push_back(std::move(row)); }

  void print(std::ostream& os) const {
    std::vector<std::size_t> width(rows_.front().size(), 0);
    for (const auto& row : rows_)
      for (std::size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      os << "  ";
      for (std::size_t c = 0; c < rows_[r].size(); ++c) {
        os << rows_[r][c];
        if (c + 1 < rows_[r].size()) os << std::string(width[c] - rows_[r][c].size() + 2, ' ');
      }
      os << '\n';
      if (r == 0) {
        std::size_t total = 0;
        for (auto w : width) total += w + 2;
        os << "  " << std::string(total - 2, '-') << '\n';
      }
    }
  }

 private:
  std::vector<std::vector<std::string>> rows_;
};

void print_matrix(std::ostream& os, const char* title, const json& m) {
  os << title << ":\n";
  for (const auto& row : m) {
    os << "  [";
    for (std::size_t c = 0; c < row.size(); ++c) os << (c ? ", " : " ") << quaternion_text(row[c]);
    os << " ]\n";
  }
}

void print_spectrum(std::ostream& os, const char* title, const char* symbol, const json& s) {
  os << title << ":\n";
  Table t({symbol, "|.|", "am", "gm"});
  for (const auto& e : s)
    t.add({complex_text(e["value"]), num(e["modulus"]), num(e["algebraic"]), num(e["geometric"])});
  t.print(os);
}

void print_verdict(std::ostream& os, const char* title, const json& v) {
  os << title << ": " << v["kind"].get<std::string>() << '\n';
  for (const auto& e : v["evidence"]) {
    os << "  " << e["quantity"].get<std::string>() << " at " << complex_text(e["value"])
       << ": margin " << num(e["margin"]) << " (tol " << num(e["threshold"]) << ")\n";
  }
}

std::string growth_text(const json& g) {
  const auto& n = g["norms"];
  return "||.|| " + num(n.front()) + " -> " + num(n.back()) + " over " +
         std::to_string(n.size() - 1) + " steps, suggests " + g["suggests"].get<std::string>();
}

}  // namespace

std::string render_text(const json& report) {
  std::ostringstream os;
  const json& cfg = report["config"];
  const json& r = report["result"];
  const std::string mode = cfg["mode"].get<std::string>();
  os << kToolName << ' ' << kToolVersion << ": " << mode << " analysis\n\n";

  if (mode == "constant") {
    print_matrix(os, "A", r["matrix"]);
    os << "qdet A: " << num(r["qdet"]) << "\n\n";
    Table t({"lambda", "Re", "am", "gm"});
    for (const auto& e : r["eigenvalues"])
      t.add({complex_text(e["value"]), num(e["value"][0]), num(e["algebraic"]),
             num(e["geometric"])});
    os << "Standard eigenvalues:\n";
    t.print(os);
    os << "\nFundamental matrix expm(tA): " << growth_text(r["growth"]) << "\n\n";
    print_verdict(os, "Verdict", r["verdict"]);
  } else if (mode == "periodic") {
    os << "Period T: " << num(r["period"]) << "\n";
    os << "Periodicity residual of A: " << num(r["periodicity_residual_a"]) << "\n\n";
    print_matrix(os, "Monodromy M(T)", r["monodromy"]);
    os << '\n';
    print_spectrum(os, "Characteristic multipliers", "rho", r["multipliers"]);
    os << "\nCharacteristic exponents:\n";
    for (const auto& mu : r["exponents"]) os << "  " << complex_text(mu) << '\n';
    os << '\n';
    print_matrix(os, "B (expm(T B) = M(T))", r["b"]);
    print_spectrum(os, "Spectrum of B", "beta", r["b_spectrum"]);
    os << "\nResiduals:\n";
    Table t({"check", "value"});
    t.add({"expm(T B) vs M(T)", num(r["log_residual"])});
    t.add({"P(t+T) vs P(t)", num(r["periodicity_residual"])});
    t.add({"P bound", num(r["periodicity_bound"])});
    t.add({"multiplier product", num(r["product_residual"])});
    t.add({"exponent sum", num(r["exponent_sum_residual"])});
    t.add({"Liouville", num(r["liouville_residual"])});
    t.print(os);
    if (r["branch_adjusted"].get<bool>()) os << "  (logarithm branch adjusted)\n";
    if (!r["periodic_solutions"].empty()) {
      os << "\nPeriodic solutions:\n";
      Table s({"kind", "rho", "residual"});
      for (const auto& p : r["periodic_solutions"])
        s.add({p["kind"].get<std::string>() + "-periodic", complex_text(p["multiplier"]),
               num(p["residual"])});
      s.print(os);
    }
    os << "\nFundamental matrix M(kT): " << growth_text(r["growth"]) << "\n\n";
    print_verdict(os, "Verdict", r["verdict"]);
  } else {
    print_matrix(os, "Monodromy M(T)", r["monodromy"]);
    os << '\n';
    Table t({"quantity", "value"});
    t.add({"Re tr M(T)", num(r["re_trace"])});
    t.add({"||M(T)||_F^2", num(r["frob_sq"])});
    t.add({"qdet M(T)", num(r["qdet"])});
    t.add({"kappa1", num(r["k_matrix"]["kappa1"])});
    t.add({"kappa2", num(r["k_matrix"]["kappa2"])});
    t.add({"kappa root residual", num(r["k_matrix"]["root_residual"])});
    t.add({"kappa vs |rho|^2 gap", num(r["k_matrix"]["kappa_modulus_gap"])});
    t.add({"trace sum residual", num(r["trace_sum_residual"])});
    t.add({"|rho1||rho2| - 1", num(r["product_residual"])});
    t.print(os);
    os << '\n';
    print_spectrum(os, "Characteristic multipliers", "rho", r["multipliers"]);
    os << '\n';
    print_verdict(os, "Verdict (trace)", r["verdict_trace"]);
    print_verdict(os, "Verdict (Frobenius)", r["verdict_frobenius"]);
    print_verdict(os, "Verdict (multipliers)", r["verdict_multipliers"]);
    if (r.contains("verdict_real")) print_verdict(os, "Verdict (real coefficient)", r["verdict_real"]);
    if (!r["verdicts_consistent"].get<bool>())
      os << "\nFinding: a trace or Frobenius verdict says unstable but the multipliers do not.\n";
  }
  return os.str();
}

namespace {

void flatten(const json& v, const std::string& path, std::ostream& os) {
  if (v.is_object()) {
    for (const auto& [key, child] : v.items()) flatten(child, path.empty() ? key : path + "." + key, os);
  } else if (v.is_array()) {
    for (std::size_t i = 0; i < v.size(); ++i) flatten(v[i], path + "[" + std::to_string(i) + "]", os);
  } else if (v.is_number()) {
    os << path << ',' << num(v) << '\n';
  } else if (v.is_string()) {
    os << path << ',' << csv_field(v.get<std::string>()) << '\n';
  } else if (v.is_boolean()) {
    os << path << ',' << (v.get<bool>() ? "true" : "false") << '\n';
  } else {
    os << path << ",\n";
  }
}

}  // namespace

std::string render_csv(const json& report) {
  std::ostringstream os;
  os << "path,value\n";
  flatten(report["result"], "", os);
  return os.str();
}

std::string first_mismatch(const json& expected, const json& actual, double tol) {
  if (expected.is_number() && actual.is_number()) {
    const double a = expected.get<double>();
    const double b = actual.get<double>();
    if (a == b || std::abs(a - b) <= tol * std::max(1.0, std::abs(a))) return {};
    return "/ (" + shortest(a) + " vs " + shortest(b) + ")";
  }
  if (expected.type() != actual.type()) return "/ (type differs)";
  if (expected.is_object()) {
    if (expected.size() != actual.size()) return "/ (key set differs)";
    for (const auto& [key, child] : expected.items()) {
      if (!actual.contains(key)) return "/" + key + " (missing)";
      if (auto sub = first_mismatch(child, actual[key], tol); !sub.empty()) return "/" + key + sub;
    }
    return {};
  }
  if (expected.is_array()) {
    if (expected.size() != actual.size()) return "/ (length differs)";
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (auto sub = first_mismatch(expected[i], actual[i], tol); !sub.empty())
        return "/" + std::to_string(i) + sub;
    }
    return {};
  }
  return expected == actual ? std::string() : "/ (value differs)";
}

}  // namespace qfloquet::cli
