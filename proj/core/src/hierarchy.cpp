#include "abscissa/hierarchy.hpp"

#include <chrono>
#include <sstream>

#include "abscissa/esf.hpp"
#include "abscissa/log.hpp"
#include "abscissa/moments.hpp"

namespace abscissa {

std::string to_string(Direction d) {
  switch (d) {
    case Direction::UpperOnAbscissa: return "upper_on_abscissa";
    case Direction::LowerOnAbscissa: return "lower_on_abscissa";
    case Direction::LowerOnMinRealPart: return "lower_on_min_real_part";
    case Direction::HermiteInner: return "hermite_inner";
  }
  return "unknown";
}

std::string to_string(Method m) {
  switch (m) {
    case Method::Upper: return "upper";
    case Method::LowerEsf: return "lower-esf";
    case Method::LowerGL: return "lower-gl";
    case Method::NaiveLower: return "naive-lower";
    case Method::Hermite: return "hermite";
  }
  return "unknown";
}

Direction direction_from_string(const std::string& s) {
  for (auto d : {Direction::UpperOnAbscissa, Direction::LowerOnAbscissa,
                 Direction::LowerOnMinRealPart, Direction::HermiteInner}) {
    if (to_string(d) == s) return d;
  }
  throw std::invalid_argument("unknown direction '" + s + "'");
}

Method method_from_string(const std::string& s) {
  for (auto m : {Method::Upper, Method::LowerEsf, Method::LowerGL, Method::NaiveLower,
                 Method::Hermite}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown method '" + s + "'");
}

Direction direction_of(Method m) {
  switch (m) {
    case Method::Upper: return Direction::UpperOnAbscissa;
    case Method::LowerEsf:
    case Method::LowerGL: return Direction::LowerOnAbscissa;
    case Method::NaiveLower: return Direction::LowerOnMinRealPart;
    case Method::Hermite: return Direction::HermiteInner;
  }
  return Direction::UpperOnAbscissa;
}

SolverFailure::SolverFailure(Method method, int level, SolverStatus status,
                             const std::string& detail)
    : std::runtime_error(to_string(method) + " at level d=" + std::to_string(level) +
                         " failed (" + to_string(status) + "): " + detail),
      method_(method),
      level_(level),
      status_(status) {}

SolverConfig hierarchy_solver_config() {
  SolverConfig cfg;
  cfg.trace_weight = 1e-6;
  return cfg;
}

namespace {

std::vector<Generator> box_generators(const std::vector<std::string>& vars, int n) {
  std::vector<Generator> gens;
  gens.push_back({"0", MultiPoly::constant(vars, 1)});
  for (int j = 1; j <= n; ++j) {
    const auto qj = MultiPoly::variable(vars, "q" + std::to_string(j));
    gens.push_back({"q" + std::to_string(j), MultiPoly::constant(vars, 1) - qj * qj});
  }
  return gens;
}

CertificateTemplate xy_template(const ParamPolynomial& p, int sign) {
  const int n = p.num_params();
  const ComplexSplit split = complex_split(p);
  CertificateTemplate tpl;
  tpl.variables = split.re.vars();
  tpl.num_params = static_cast<std::size_t>(n);
  tpl.decision_sign = sign;
  const auto x = MultiPoly::variable(tpl.variables, "x");
  tpl.fixed_part = sign > 0 ? -x : x;
  tpl.sense = sign > 0 ? ObjectiveSense::Minimize : ObjectiveSense::Maximize;
  tpl.inequalities = box_generators(tpl.variables, n);
  tpl.equalities = {{"re", split.re}, {"im", split.im}};
  return tpl;
}

}  // namespace

CertificateTemplate upper_template(const ParamPolynomial& p) { return xy_template(p, +1); }

CertificateTemplate naive_lower_template(const ParamPolynomial& p) { return xy_template(p, -1); }

CertificateTemplate esf_template(const ParamPolynomial& p) {
  const EsfSystem sys = esf_constraints(p);
  CertificateTemplate tpl;
  tpl.variables = sys.vars;
  tpl.num_params = static_cast<std::size_t>(sys.n);
  tpl.decision_sign = -1;
  tpl.fixed_part = MultiPoly::variable(sys.vars, "x" + std::to_string(sys.m));
  tpl.sense = ObjectiveSense::Maximize;
  tpl.inequalities = box_generators(sys.vars, sys.n);
  for (int k = 1; k < sys.m; ++k) {
    tpl.inequalities.push_back({"x" + std::to_string(k),
                                sys.order_constraints[static_cast<std::size_t>(k - 1)]});
  }
  for (int k = 1; k <= sys.m; ++k) {
    tpl.equalities.push_back({"re" + std::to_string(k),
                              sys.real_equalities[static_cast<std::size_t>(k - 1)]});
  }
  for (std::size_t i = 0; i < sys.imag_equalities.size(); ++i) {
    tpl.equalities.push_back({"im" + std::to_string(sys.imag_orders[i]), sys.imag_equalities[i]});
  }
  return tpl;
}

CertificateTemplate gl_template(const ParamPolynomial& p, const NumericPoly& vhat) {
  CertificateTemplate tpl = naive_lower_template(p);
  const auto x = MultiPoly::variable(tpl.variables, "x");
  tpl.inequalities.push_back({"vhat", x - to_exact(vhat).embed(tpl.variables)});
  return tpl;
}

CertificateTemplate hermite_template(const PolyMatrix& H) {
  const std::size_t k = H.size();
  if (k == 0) throw std::invalid_argument("Hermite matrix is empty");
  for (const auto& row : H) {
    if (row.size() != k) throw std::invalid_argument("Hermite matrix is not square");
  }
  const int n = static_cast<int>(H[0][0].num_vars());
  const auto params = param_names(n);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (H[i][j].vars() != params) {
        throw VariableSpaceMismatch("Hermite entries must be polynomials in q1..qn");
      }
      if (!(H[i][j] == H[j][i])) throw std::invalid_argument("Hermite matrix is not symmetric");
    }
  }
  CertificateTemplate tpl;
  tpl.variables = params;
  for (std::size_t i = 1; i <= k; ++i) tpl.variables.push_back("u" + std::to_string(i));
  tpl.num_params = static_cast<std::size_t>(n);
  tpl.decision_sign = -1;
  tpl.sense = ObjectiveSense::Maximize;
  std::vector<MultiPoly> u;
  for (std::size_t i = 1; i <= k; ++i) {
    u.push_back(MultiPoly::variable(tpl.variables, "u" + std::to_string(i)));
  }
  tpl.fixed_part = MultiPoly(tpl.variables);
  MultiPoly norm = MultiPoly::constant(tpl.variables, 1);
  for (std::size_t i = 0; i < k; ++i) {
    norm -= u[i] * u[i];
    for (std::size_t j = 0; j < k; ++j) {
      tpl.fixed_part += H[i][j].embed(tpl.variables) * u[i] * u[j];
    }
  }
  tpl.inequalities = box_generators(tpl.variables, n);
  tpl.equalities = {{"sphere", norm}};
  return tpl;
}

namespace {

// Settings tried after `base` fails: heavier and lighter trace weights and a
// shorter step to the boundary.
std::vector<SolverConfig> retry_ladder(const SolverConfig& base) {
  std::vector<SolverConfig> ladder{base};
  const double w = base.trace_weight > 0 ? base.trace_weight : 1e-6;
  SolverConfig heavier = base;
  heavier.trace_weight = 10 * w;
  SolverConfig shorter = base;
  shorter.trace_weight = 0.1 * w;
  shorter.step_frac = std::min(base.step_frac, 0.9);
  SolverConfig heaviest = base;
  heaviest.trace_weight = 100 * w;
  heaviest.step_frac = std::min(base.step_frac, 0.9);
  ladder.insert(ladder.end(), {heavier, shorter, heaviest});
  return ladder;
}

}  // namespace

Certificate run_template(const CertificateTemplate& tpl, int d, Method method,
                         const SolverConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const SdpProblem sdp = compile(tpl, d);
  SdpSolution sol;
  ExtractedCertificate ext;
  double residual = 0.0;
  bool accepted = false;
  int attempts = 0;
  for (const SolverConfig& cfg : retry_ladder(config)) {
    ++attempts;
    sol = solve(sdp, cfg);
    if (sol.status == SolverStatus::Infeasible || sol.status == SolverStatus::Unbounded) break;
    if (sol.status == SolverStatus::Optimal || sol.status == SolverStatus::NearOptimal) {
      ext = extract_certificate(sdp, sol.psd_values, sol.free_values);
      residual = identity_residual(tpl, ext);
      if (residual <= kMaxIdentityResidual) {
        accepted = true;
        break;
      }
    }
    log_message(LogLevel::Info, to_string(method) + " d=" + std::to_string(d) + " attempt " +
                                    std::to_string(attempts) + " ended " + to_string(sol.status) +
                                    " residual=" + std::to_string(residual));
  }
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  {
    std::ostringstream msg;
    msg << to_string(method) << " d=" << d << " rows=" << sdp.num_rows << " free=" << sdp.num_free
        << " status=" << to_string(sol.status) << " iters=" << sol.iterations
        << " obj=" << sol.objective_primal << " p_res=" << sol.residuals.primal
        << " d_res=" << sol.residuals.dual << " gap=" << sol.residuals.gap << " time=" << seconds
        << "s";
    log_message(LogLevel::Info, msg.str());
  }
  if (!accepted) {
    std::ostringstream detail;
    if (sol.status == SolverStatus::Optimal || sol.status == SolverStatus::NearOptimal) {
      detail << "certificate identity residual " << residual;
    } else {
      detail << "p_res=" << sol.residuals.primal << " d_res=" << sol.residuals.dual
             << " gap=" << sol.residuals.gap << " after " << sol.iterations << " iterations";
    }
    throw SolverFailure(method, d, sol.status, detail.str());
  }

  Certificate cert;
  cert.identity_residual = residual;
  cert.gram_multipliers = ext.sos;
  cert.free_multipliers = ext.free;
  AbscissaApprox& a = cert.approx;
  a.poly = ext.decision;
  a.method = method;
  a.direction = direction_of(method);
  a.level_d = d;
  a.objective = integrate_over_box(a.poly);
  a.solver_stats.status = sol.status;
  a.solver_stats.iterations = sol.iterations;
  a.solver_stats.objective_primal = sol.objective_primal;
  a.solver_stats.objective_dual = sol.objective_dual;
  a.solver_stats.residuals = sol.residuals;
  a.solver_stats.seconds = seconds;
  a.solver_stats.rows = sdp.num_rows;
  a.solver_stats.block_dims = sdp.block_dims;
  a.solver_stats.num_free = sdp.num_free;
  a.solver_stats.attempts = attempts;
  return cert;
}

Certificate upper_abscissa(const ParamPolynomial& p, int d, const SolverConfig& config) {
  return run_template(upper_template(p), d, Method::Upper, config);
}

Certificate lower_minrealpart(const ParamPolynomial& p, int d, const SolverConfig& config) {
  return run_template(naive_lower_template(p), d, Method::NaiveLower, config);
}

Certificate lower_abscissa_esf(const ParamPolynomial& p, int d, const SolverConfig& config) {
  return run_template(esf_template(p), d, Method::LowerEsf, config);
}

Certificate lower_abscissa_gl(const ParamPolynomial& p, int d, int dprime,
                              const SolverConfig& config) {
  if (p.degree() < 2) throw DegreeTooLow("Gauss-Lucas bound needs m >= 2");
  std::shared_ptr<const Certificate> stage1;
  try {
    stage1 = std::make_shared<const Certificate>(upper_abscissa(derivative_in_s(p), dprime, config));
  } catch (const SolverFailure& e) {
    throw Stage1Failed(std::string("stage 1 on the derivative: ") + e.what());
  } catch (const LevelTooLow& e) {
    throw Stage1Failed(std::string("stage 1 on the derivative: ") + e.what());
  }
  Certificate cert = run_template(gl_template(p, stage1->approx.poly), d, Method::LowerGL, config);
  cert.approx.aux_level_dprime = dprime;
  cert.stage1 = std::move(stage1);
  return cert;
}

Certificate hermite_inner(const PolyMatrix& H, int d, const SolverConfig& config) {
  return run_template(hermite_template(H), d, Method::Hermite, config);
}

}  // namespace abscissa
