#include "abscissa/problem_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "abscissa/poly_parse.hpp"

namespace abscissa {

using nlohmann::json;

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw FormatError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
}

template <typename T>
T field(const json& j, const char* key) {
  if (!j.contains(key)) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

json poly_to_json(const NumericPoly& p) {
  json monomials = json::array();
  json coeffs = json::array();
  for (const auto& [e, c] : p.terms()) {
    monomials.push_back(e);
    coeffs.push_back(c);
  }
  return {{"variables", p.vars()},
          {"monomials", monomials},
          {"coefficients", coeffs},
          {"text", to_string(p)}};
}

NumericPoly poly_from_json(const json& j) {
  NumericPoly p(field<std::vector<std::string>>(j, "variables"));
  const auto monomials = field<std::vector<Exponent>>(j, "monomials");
  const auto coeffs = field<std::vector<double>>(j, "coefficients");
  if (monomials.size() != coeffs.size()) throw FormatError("monomial/coefficient count mismatch");
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (monomials[k].size() != p.num_vars()) throw FormatError("monomial has wrong length");
    p.add_term(monomials[k], coeffs[k]);
  }
  return p;
}

}  // namespace

ParamPolynomial ProblemFile::polynomial() const {
  if (static_cast<int>(coefficients.size()) != m) {
    throw FormatError("expected " + std::to_string(m) + " coefficients, got " +
                      std::to_string(coefficients.size()));
  }
  std::vector<MultiPoly> lower;
  const auto vars = param_names(n);
  std::map<std::string, std::string> aliases;
  if (n == 1) aliases["q"] = "q1";
  for (const auto& text : coefficients) lower.push_back(parse_poly(text, vars, aliases));
  return ParamPolynomial::from_lower(n, std::move(lower));
}

PolyMatrix ProblemFile::hermite() const {
  if (!hermite_matrix) throw FormatError("problem '" + name + "' has no hermite_matrix");
  const auto vars = param_names(n);
  std::map<std::string, std::string> aliases;
  if (n == 1) aliases["q"] = "q1";
  PolyMatrix H;
  for (const auto& row : *hermite_matrix) {
    if (row.size() != hermite_matrix->size()) throw FormatError("hermite_matrix is not square");
    std::vector<MultiPoly> prow;
    for (const auto& text : row) prow.push_back(parse_poly(text, vars, aliases));
    H.push_back(std::move(prow));
  }
  return H;
}

ProblemFile parse_problem(std::string_view text) {
  const json j = parse_json(text);
  ProblemFile pf;
  pf.name = j.value("name", std::string("unnamed"));
  pf.n = field<int>(j, "n");
  pf.m = field<int>(j, "m");
  if (pf.n < 1) throw FormatError("n must be positive");
  if (pf.m < 1) throw FormatError("m must be positive");
  pf.coefficients = field<std::vector<std::string>>(j, "coefficients");
  if (j.contains("hermite_matrix")) {
    pf.hermite_matrix = field<std::vector<std::vector<std::string>>>(j, "hermite_matrix");
  }
  pf.polynomial();
  if (pf.hermite_matrix) pf.hermite();
  return pf;
}

ProblemFile read_problem(const std::string& path) { return parse_problem(slurp(path)); }

std::string to_json(const ProblemFile& pf) {
  json j = {{"name", pf.name}, {"n", pf.n}, {"m", pf.m}, {"coefficients", pf.coefficients}};
  if (pf.hermite_matrix) j["hermite_matrix"] = *pf.hermite_matrix;
  return j.dump(2);
}

GapSummary summarize(const GapReport& r) {
  return {static_cast<int>(r.grid.size()), r.l1_gap, r.linf_gap, r.violation_count,
          r.coarse_violation_count, r.max_violation};
}

RunResult make_run_result(const std::string& problem, const Certificate& cert) {
  RunResult r;
  r.problem = problem;
  r.method = cert.approx.method;
  r.direction = cert.approx.direction;
  r.d = cert.approx.level_d;
  r.dprime = cert.approx.aux_level_dprime;
  r.objective = cert.approx.objective;
  r.approx = cert.approx.poly;
  r.solver = cert.approx.solver_stats;
  r.identity_residual = cert.identity_residual;
  return r;
}

std::string to_json(const RunResult& r) {
  json j;
  j["problem"] = r.problem;
  j["method"] = to_string(r.method);
  j["direction"] = to_string(r.direction);
  j["d"] = r.d;
  j["dprime"] = r.dprime ? json(*r.dprime) : json(nullptr);
  j["objective"] = r.objective;
  j["approx"] = poly_to_json(r.approx);
  j["identity_residual"] = r.identity_residual;
  j["solver"] = {{"status", to_string(r.solver.status)},
                 {"iterations", r.solver.iterations},
                 {"attempts", r.solver.attempts},
                 {"objective_primal", r.solver.objective_primal},
                 {"objective_dual", r.solver.objective_dual},
                 {"primal_residual", r.solver.residuals.primal},
                 {"dual_residual", r.solver.residuals.dual},
                 {"gap", r.solver.residuals.gap},
                 {"rows", r.solver.rows},
                 {"block_dims", r.solver.block_dims},
                 {"num_free", r.solver.num_free}};
  if (r.gap) {
    j["gap_report"] = {{"grid_points", r.gap->grid_points},
                       {"l1_gap", r.gap->l1_gap},
                       {"linf_gap", r.gap->linf_gap},
                       {"violation_count", r.gap->violation_count},
                       {"coarse_violation_count", r.gap->coarse_violation_count},
                       {"max_violation", r.gap->max_violation}};
  }
  return j.dump(2);
}

namespace {

SolverStatus status_from_string(const std::string& s) {
  for (auto st : {SolverStatus::Optimal, SolverStatus::NearOptimal, SolverStatus::Infeasible,
                  SolverStatus::Unbounded, SolverStatus::Stalled, SolverStatus::MaxIterations}) {
    if (to_string(st) == s) return st;
  }
  throw FormatError("unknown solver status '" + s + "'");
}

}  // namespace

RunResult parse_run_result(std::string_view text) {
  const json j = parse_json(text);
  RunResult r;
  try {
    r.problem = field<std::string>(j, "problem");
    r.method = method_from_string(field<std::string>(j, "method"));
    r.direction = direction_from_string(field<std::string>(j, "direction"));
  } catch (const std::invalid_argument& e) {
    throw FormatError(e.what());
  }
  r.d = field<int>(j, "d");
  if (j.contains("dprime") && !j["dprime"].is_null()) r.dprime = j["dprime"].get<int>();
  r.objective = field<double>(j, "objective");
  r.approx = poly_from_json(field<json>(j, "approx"));
  r.identity_residual = j.value("identity_residual", 0.0);
  if (j.contains("solver")) {
    const json& s = j["solver"];
    r.solver.status = status_from_string(field<std::string>(s, "status"));
    r.solver.iterations = s.value("iterations", 0);
    r.solver.attempts = s.value("attempts", 1);
    r.solver.objective_primal = s.value("objective_primal", 0.0);
    r.solver.objective_dual = s.value("objective_dual", 0.0);
    r.solver.residuals.primal = s.value("primal_residual", 0.0);
    r.solver.residuals.dual = s.value("dual_residual", 0.0);
    r.solver.residuals.gap = s.value("gap", 0.0);
    r.solver.rows = s.value("rows", 0);
    r.solver.block_dims = s.value("block_dims", std::vector<int>{});
    r.solver.num_free = s.value("num_free", 0);
  }
  if (j.contains("gap_report")) {
    const json& g = j["gap_report"];
    r.gap = GapSummary{g.value("grid_points", 0),         g.value("l1_gap", 0.0),
                       g.value("linf_gap", 0.0),          g.value("violation_count", 0),
                       g.value("coarse_violation_count", 0), g.value("max_violation", 0.0)};
  }
  return r;
}

RunResult read_run_result(const std::string& path) { return parse_run_result(slurp(path)); }

std::string to_json(const GapReport& r) {
  json j;
  j["grid"] = {{"n", r.grid.n}, {"points", r.grid.points}, {"lo", r.grid.lo}, {"hi", r.grid.hi}};
  j["direction"] = to_string(r.direction);
  j["l1_gap"] = r.l1_gap;
  j["linf_gap"] = r.linf_gap;
  j["linf_point"] = r.linf_point;
  j["tolerance"] = r.tolerance;
  j["coarse_tolerance"] = r.coarse_tolerance;
  j["violation_count"] = r.violation_count;
  j["coarse_violation_count"] = r.coarse_violation_count;
  j["max_violation"] = r.max_violation;
  j["violation_points"] = r.violation_points;
  auto region = [](const RegionDescription& reg) {
    json out = {{"volume", reg.volume}};
    if (reg.n == 1) {
      json ivs = json::array();
      for (const auto& iv : reg.intervals) ivs.push_back({iv.lo, iv.hi});
      out["intervals"] = ivs;
    } else {
      std::string bits;
      bits.reserve(reg.mask.size());
      for (bool b : reg.mask) bits.push_back(b ? '1' : '0');
      out["mask"] = bits;
    }
    return out;
  };
  j["sublevel_approx"] = region(r.sublevel_approx);
  j["sublevel_oracle"] = region(r.sublevel_oracle);
  return j.dump(2);
}

}  // namespace abscissa
