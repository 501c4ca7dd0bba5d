#include "run.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "config.hpp"
#include "qfloquet/error.hpp"
#include "report.hpp"

namespace qfloquet::cli {

namespace {

struct Flags {
  std::string config_path;
  std::string replay_path;
  std::string period;
  std::vector<std::string> entries;
  std::string a;
  double rtol = 0.0;
  double atol = 0.0;
  std::string method;
  std::string rk4_step;
  std::string format;
  std::string out;
  std::string trajectory;
  unsigned jobs = 1;
  std::string from;
  std::string to;
  std::string step;
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  return nlohmann::json::parse(in);
}

void write_output(const std::string& path, const std::string& text, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream file(path);
  if (!file || !(file << text)) throw Error(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
}

std::string render(const AnalysisConfig& cfg, const nlohmann::json& report) {
  switch (cfg.format) {
    case Format::Json:
      return report.dump(2) + "\n";
    case Format::Csv:
      return render_csv(report);
    case Format::Text:
      break;
  }
  return render_text(report);
}

std::string render_sweep(const AnalysisConfig& cfg, const std::vector<SweepRow>& rows,
                         const nlohmann::json& report) {
  if (cfg.format == Format::Json) return report.dump(2) + "\n";
  // Text and CSV share the column layout; CSV is the primary sweep format.
  return sweep_csv(rows);
}

// Expressions such as "-i+k" or "-pi" look like short options to the parser.
// Values of the options below are glued to their flag ("--a=-i+k"), and every
// token up to the next "--" flag after --entry becomes its own "--entry=x".
std::vector<std::string> normalize_args(int argc, const char* const* argv) {
  static const std::set<std::string> valued = {"--period", "--a", "--from", "--to", "--step",
                                               "--rk4-step", "--rtol", "--atol"};
  std::vector<std::string> args;
  bool in_entry = false;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    const bool is_long = arg.rfind("--", 0) == 0;
    if (is_long) in_entry = arg == "--entry";
    if (arg == "--entry") continue;
    if (in_entry) {
      args.push_back("--entry=" + arg);
      continue;
    }
    if (valued.count(arg) && i + 1 < argc && argv[i + 1][0] == '-' &&
        std::string_view(argv[i + 1]).rfind("--", 0) != 0) {
      args.push_back(arg + "=" + argv[++i]);
      continue;
    }
    args.push_back(arg);
  }
  // CLI11 consumes the vector back to front.
  std::reverse(args.begin(), args.end());
  return args;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Floquet analysis of quaternion-valued linear differential equations", "qfloquet"};
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  Flags f;

  app.add_option("--config", f.config_path, "JSON config file")->check(CLI::ExistingFile);
  app.add_option("--replay", f.replay_path, "Re-run a JSON report and compare its result")
      ->check(CLI::ExistingFile);
  app.add_option("--period", f.period, "Period T (accepts pi, e.g. 2*pi)");
  app.add_option("--entry", f.entries,
                 "Matrix entries row-major; a \";\" token ends a row");
  app.add_option("--a", f.a, "Hill coefficient a(t); sweeps may use the parameter p");
  app.add_option("--rtol", f.rtol, "Integrator relative tolerance")->check(CLI::PositiveNumber);
  app.add_option("--atol", f.atol, "Integrator absolute tolerance")->check(CLI::PositiveNumber);
  app.add_option("--method", f.method, "Integrator: dp54 (adaptive) or rk4 (fixed step)")
      ->check(CLI::IsMember({"dp54", "rk4"}));
  app.add_option("--rk4-step", f.rk4_step, "Nominal step for --method rk4");
  app.add_option("--format", f.format, "Output format")->check(CLI::IsMember({"text", "json", "csv"}));
  app.add_option("--out", f.out, "Write the report to a file instead of stdout");
  app.add_option("--trajectory", f.trajectory,
                 "Periodic mode: write M(t) samples on [0, 2T] as CSV");
  app.add_option("--jobs", f.jobs, "Parallel sweep points (0: hardware threads)");
  app.add_option("--from", f.from, "Sweep: first parameter value");
  app.add_option("--to", f.to, "Sweep: last parameter value");
  app.add_option("--step", f.step, "Sweep: parameter step");

  app.add_subcommand("constant", "Constant system x' = A x");
  app.add_subcommand("periodic", "T-periodic system x' = A(t) x");
  app.add_subcommand("hill", "Quaternion Hill equation u'' + a(t) u = 0");
  app.add_subcommand("sweep", "Hill analysis over a parameter range, one CSV row per point");
  app.require_subcommand(0, 1);

  try {
    auto args = normalize_args(argc, argv);
    app.parse(args);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    AnalysisConfig cfg;
    nlohmann::json replayed;
    if (!f.replay_path.empty()) {
      replayed = read_json(f.replay_path);
      if (!replayed.contains("config") || !replayed.contains("result"))
        throw Error(ErrorCode::InvalidArgument, "'" + f.replay_path + "' is not a report");
      cfg = config_from_json(replayed["config"]);
      cfg.out_path.clear();
    } else if (!f.config_path.empty()) {
      cfg = config_from_json(read_json(f.config_path));
    }

    const auto subs = app.get_subcommands();
    if (!subs.empty()) {
      cfg.mode = parse_mode(subs.front()->get_name());
    } else if (f.replay_path.empty() && f.config_path.empty()) {
      err << "error: choose a mode (constant, periodic, hill, sweep), --config or --replay\n"
          << app.help();
      return kExitUsage;
    }

    auto given = [&](const char* name) { return app.count(name) > 0; };
    if (given("--period")) cfg.period = parse_number(f.period);
    if (given("--entry")) cfg.entries = group_entries(f.entries);
    if (given("--a")) cfg.a = f.a;
    if (given("--rtol")) cfg.integrator.rel_tol = f.rtol;
    if (given("--atol")) cfg.integrator.abs_tol = f.atol;
    if (given("--method"))
      cfg.integrator.method = f.method == "rk4" ? Method::RK4Fixed : Method::DP54Adaptive;
    if (given("--rk4-step")) cfg.integrator.step = parse_number(f.rk4_step);
    if (given("--format")) cfg.format = parse_format(f.format);
    if (given("--out")) cfg.out_path = f.out;
    if (given("--from")) cfg.sweep.from = parse_number(f.from);
    if (given("--to")) cfg.sweep.to = parse_number(f.to);
    if (given("--step")) cfg.sweep.step = parse_number(f.step);
    cfg.trajectory_path = f.trajectory;
    cfg.jobs = f.jobs == 0 ? std::max(1u, std::thread::hardware_concurrency()) : f.jobs;

    nlohmann::json report;
    std::string text;
    if (cfg.mode == Mode::Sweep) {
      const auto rows = run_sweep(cfg);
      report = make_report(cfg, sweep_json(rows));
      text = render_sweep(cfg, rows, report);
    } else {
      report = make_report(cfg, analyze(cfg));
      text = render(cfg, report);
    }

    if (!replayed.is_null()) {
      if (const std::string diff = first_mismatch(replayed["result"], report["result"]);
          !diff.empty()) {
        err << "error: replay of '" << f.replay_path << "' differs at result" << diff << '\n';
        return kExitNumerical;
      }
      err << "replay of '" << f.replay_path << "' matches\n";
    }
    write_output(cfg.out_path, text, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "error: " << to_string(e.code()) << ": " << e.what();
    if (e.offset() && std::string_view(e.what()).find("offset") == std::string_view::npos) err << " (at offset " << *e.offset() << ')';
    err << '\n';
    return is_input_error(e.code()) ? kExitUsage : kExitNumerical;
  } catch (const nlohmann::json::exception& e) {
    err << "error: invalid JSON: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace qfloquet::cli
