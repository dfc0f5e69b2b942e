#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "abscissa/hierarchy.hpp"
#include "abscissa/log.hpp"
#include "abscissa/oracle.hpp"
#include "abscissa/poly_parse.hpp"
#include "abscissa/problem_io.hpp"

namespace abscissa::cli {
namespace {

struct Options {
  std::string problem;
  std::string d_text;
  int dprime = -1;
  int grid = 0;
  std::string plot_csv;
  bool strict = false;
  double gap_tol = 0.0;
  double feas_tol = 0.0;
  std::string out;
  std::string approx;
  std::string method = "upper";
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

int parse_int(const std::string& text, const char* what) {
  std::size_t pos = 0;
  int value = 0;
  try {
    value = std::stoi(text, &pos);
  } catch (const std::exception&) {
    pos = 0;
  }
  if (pos == 0 || pos != text.size()) {
    throw UsageError(std::string("invalid ") + what + " '" + text + "'");
  }
  return value;
}

/// "5" or "2..5".
std::vector<int> parse_levels(const std::string& text) {
  const auto dots = text.find("..");
  if (dots == std::string::npos) return {parse_int(text, "--d")};
  const int lo = parse_int(text.substr(0, dots), "--d");
  const int hi = parse_int(text.substr(dots + 2), "--d");
  if (hi < lo) throw UsageError("empty level range '" + text + "'");
  std::vector<int> levels;
  for (int d = lo; d <= hi; ++d) levels.push_back(d);
  return levels;
}

SolverConfig solver_config(const Options& o) {
  SolverConfig cfg = hierarchy_solver_config();
  if (o.gap_tol > 0) cfg.gap_tol = o.gap_tol;
  if (o.feas_tol > 0) cfg.feas_tol = o.feas_tol;
  return cfg;
}

GridSpec grid_spec(const Options& o, int n) {
  GridSpec g = GridSpec::defaults(n);
  if (o.grid > 0) {
    if (o.grid < 2) throw UsageError("--grid needs at least 2 points");
    g.points = o.grid;
  }
  return g;
}

Certificate run_method(Method method, const ProblemFile& pf, int d, std::optional<int> dprime,
                       const SolverConfig& cfg) {
  switch (method) {
    case Method::Upper:
      return upper_abscissa(pf.polynomial(), d, cfg);
    case Method::NaiveLower:
      return lower_minrealpart(pf.polynomial(), d, cfg);
    case Method::LowerEsf:
      return lower_abscissa_esf(pf.polynomial(), d, cfg);
    case Method::LowerGL:
      if (!dprime) throw UsageError("lower-gl needs --dprime");
      return lower_abscissa_gl(pf.polynomial(), d, *dprime, cfg);
    case Method::Hermite:
      return hermite_inner(pf.hermite(), d, cfg);
  }
  throw UsageError("unknown method");
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

void write_plot_csv(const std::string& path, const NumericPoly& approx, Direction direction,
                    const ParamPolynomial& p, const GridSpec& grid) {
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write '" + path + "'");
  const bool with_min = direction == Direction::LowerOnMinRealPart;
  for (int k = 1; k <= grid.n; ++k) f << 'q' << k << ',';
  f << "abscissa,approx" << (with_min ? ",min_realpart" : "") << '\n';
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto q = grid.point(i);
    for (double qk : q) f << fmt(qk) << ',';
    f << fmt(abscissa_oracle(p, q)) << ',' << fmt(approx.eval(q));
    if (with_min) f << ',' << fmt(min_realpart_oracle(p, q));
    f << '\n';
  }
}

void summary_line(std::ostream& os, const RunResult& r) {
  os << to_string(r.method) << " d=" << r.d;
  if (r.dprime) os << " dprime=" << *r.dprime;
  os << " objective=" << fmt(r.objective) << " status=" << to_string(r.solver.status);
  if (r.gap) {
    os << " l1_gap=" << fmt(r.gap->l1_gap) << " linf_gap=" << fmt(r.gap->linf_gap)
       << " violations=" << r.gap->violation_count;
  }
  os << '\n';
}

int cmd_solve(Method method, const Options& o, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = read_problem(o.problem);
  const int d = parse_int(o.d_text, "--d");
  std::optional<int> dprime;
  if (o.dprime >= 0) dprime = o.dprime;
  const auto t0 = std::chrono::steady_clock::now();
  const Certificate cert = run_method(method, pf, d, dprime, solver_config(o));
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  const ParamPolynomial p = pf.polynomial();
  const GridSpec grid = grid_spec(o, pf.n);
  const GapReport report = gap_report(cert.approx, p, grid);
  RunResult result = make_run_result(pf.name, cert);
  result.gap = summarize(report);

  if (o.out.empty()) {
    out << to_json(result) << '\n';
  } else {
    write_file(o.out, to_json(result));
    summary_line(out, result);
  }
  if (!o.plot_csv.empty()) write_plot_csv(o.plot_csv, cert.approx.poly, cert.approx.direction, p, grid);
  log_message(LogLevel::Info, "solved in " + fmt(secs) + " s");

  if (o.strict && report.violation_count > 0) {
    err << "error: " << report.violation_count << " validity violations (max "
        << fmt(report.max_violation) << ")\n";
    return kExitViolations;
  }
  return kExitOk;
}

int cmd_verify(const Options& o, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = read_problem(o.problem);
  const RunResult result = read_run_result(o.approx);
  const ParamPolynomial p = pf.polynomial();
  if (result.approx.vars() != param_names(pf.n)) {
    throw FormatError("approximation variables do not match the problem's parameters");
  }
  const GridSpec grid = grid_spec(o, pf.n);
  const GapReport report = gap_report(result.approx, result.direction, p, grid);
  if (o.out.empty()) {
    out << to_json(report) << '\n';
  } else {
    write_file(o.out, to_json(report));
    out << "l1_gap=" << fmt(report.l1_gap) << " linf_gap=" << fmt(report.linf_gap)
        << " violations=" << report.violation_count << '\n';
  }
  if (!o.plot_csv.empty()) write_plot_csv(o.plot_csv, result.approx, result.direction, p, grid);
  if (o.strict && report.violation_count > 0) {
    err << "error: " << report.violation_count << " validity violations\n";
    return kExitViolations;
  }
  return kExitOk;
}

int cmd_sweep(const Options& o, std::ostream& out, std::ostream& err) {
  const ProblemFile pf = read_problem(o.problem);
  Method method;
  try {
    method = method_from_string(o.method);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const auto levels = parse_levels(o.d_text);
  std::optional<int> dprime;
  if (o.dprime >= 0) dprime = o.dprime;
  const ParamPolynomial p = pf.polynomial();
  const GridSpec grid = grid_spec(o, pf.n);
  const SolverConfig cfg = solver_config(o);

  std::ostringstream json_out;
  json_out << "[\n";
  int status = kExitOk;
  char line[256];
  std::snprintf(line, sizeof line, "%4s %22s %12s %12s %10s  %s\n", "d", "objective", "l1_gap",
                "linf_gap", "violations", "status");
  out << line;
  bool first = true;
  for (int d : levels) {
    try {
      const Certificate cert = run_method(method, pf, d, dprime, cfg);
      const GapReport report = gap_report(cert.approx, p, grid);
      RunResult r = make_run_result(pf.name, cert);
      r.gap = summarize(report);
      std::snprintf(line, sizeof line, "%4d %22.15g %12.4e %12.4e %10d  %s\n", d, r.objective,
                    report.l1_gap, report.linf_gap, report.violation_count,
                    to_string(r.solver.status).c_str());
      out << line;
      if (o.strict && report.violation_count > 0 && status == kExitOk) status = kExitViolations;
      json_out << (first ? "" : ",\n") << to_json(r);
      first = false;
    } catch (const SolverFailure& e) {
      std::snprintf(line, sizeof line, "%4d %22s %12s %12s %10s  %s\n", d, "-", "-", "-", "-",
                    to_string(e.status()).c_str());
      out << line;
      err << "error: " << e.what() << '\n';
      status = kExitSolver;
    }
  }
  json_out << "\n]\n";
  if (!o.out.empty()) write_file(o.out, json_out.str());
  return status;
}

void add_solver_flags(CLI::App* sub, Options& o, bool needs_d) {
  sub->add_option("--problem", o.problem, "Problem file (JSON)")->required();
  auto* d = sub->add_option("--d", o.d_text, "Relaxation level");
  if (needs_d) d->required();
  sub->add_option("--dprime", o.dprime, "Stage-1 level for lower-gl");
  sub->add_option("--grid", o.grid, "Verification grid points per axis");
  sub->add_option("--plot-csv", o.plot_csv, "Write q, abscissa and approximation samples");
  sub->add_flag("--strict", o.strict, "Exit 3 when validity violations are found");
  sub->add_option("--gap-tol", o.gap_tol, "Solver relative duality-gap tolerance");
  sub->add_option("--feas-tol", o.feas_tol, "Solver feasibility tolerance");
  sub->add_option("--out", o.out, "Output file (default: standard output)");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Polynomial approximations of the abscissa of a parametric polynomial"};
  app.require_subcommand(1);
  Options o;

  const std::vector<std::pair<std::string, Method>> solvers = {
      {"upper", Method::Upper},
      {"lower-esf", Method::LowerEsf},
      {"lower-gl", Method::LowerGL},
      {"naive-lower", Method::NaiveLower},
      {"hermite", Method::Hermite}};
  std::vector<std::pair<CLI::App*, Method>> solver_cmds;
  for (const auto& [name, method] : solvers) {
    auto* sub = app.add_subcommand(name, "Run the " + name + " hierarchy at one level");
    add_solver_flags(sub, o, true);
    solver_cmds.emplace_back(sub, method);
  }
  auto* verify = app.add_subcommand("verify", "Check a stored result against the root oracle");
  verify->add_option("--problem", o.problem, "Problem file (JSON)")->required();
  verify->add_option("--approx", o.approx, "Result file written by a solver command")->required();
  verify->add_option("--grid", o.grid, "Verification grid points per axis");
  verify->add_option("--plot-csv", o.plot_csv, "Write q, abscissa and approximation samples");
  verify->add_flag("--strict", o.strict, "Exit 3 when validity violations are found");
  verify->add_option("--out", o.out, "Gap report file (default: standard output)");

  auto* sweep = app.add_subcommand("sweep", "Run one method over a range of levels");
  add_solver_flags(sweep, o, true);
  sweep->add_option("--method", o.method, "upper, lower-esf, lower-gl, naive-lower or hermite");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  }

  try {
    for (const auto& [sub, method] : solver_cmds) {
      if (sub->parsed()) return cmd_solve(method, o, out, err);
    }
    if (verify->parsed()) return cmd_verify(o, out, err);
    if (sweep->parsed()) return cmd_sweep(o, out, err);
  } catch (const ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const FormatError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitParse;
  } catch (const SolverFailure& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  } catch (const Stage1Failed& e) {
    err << "error: " << e.what() << '\n';
    return kExitSolver;
  }
  return kExitParse;
}

}  // namespace abscissa::cli
