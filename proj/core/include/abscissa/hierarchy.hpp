#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "abscissa/multi_poly.hpp"
#include "abscissa/param_polynomial.hpp"
#include "abscissa/sdp_solver.hpp"
#include "abscissa/sos_gram.hpp"

namespace abscissa {

enum class Direction { UpperOnAbscissa, LowerOnAbscissa, LowerOnMinRealPart, HermiteInner };
enum class Method { Upper, LowerEsf, LowerGL, NaiveLower, Hermite };

std::string to_string(Direction d);
std::string to_string(Method m);
Direction direction_from_string(const std::string& s);
Method method_from_string(const std::string& s);
Direction direction_of(Method m);

struct SolverStats {
  SolverStatus status = SolverStatus::Stalled;
  int iterations = 0;
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  Residuals residuals;
  double seconds = 0.0;
  int rows = 0;
  std::vector<int> block_dims;
  int num_free = 0;
  /// Number of solver configurations tried (see run_template).
  int attempts = 1;
};

struct AbscissaApprox {
  /// Polynomial in q1..qn.
  NumericPoly poly;
  Direction direction = Direction::UpperOnAbscissa;
  Method method = Method::Upper;
  int level_d = 0;
  std::optional<int> aux_level_dprime;
  /// Integral of poly over the box.
  double objective = 0.0;
  SolverStats solver_stats;
};

struct Certificate {
  AbscissaApprox approx;
  std::vector<GramMultiplier> gram_multipliers;
  std::vector<FreeMultiplier> free_multipliers;
  double identity_residual = 0.0;
  /// Stage-1 upper certificate on the derivative (Gauss-Lucas runs only).
  std::shared_ptr<const Certificate> stage1;
};

class SolverFailure : public std::runtime_error {
 public:
  SolverFailure(Method method, int level, SolverStatus status, const std::string& detail);
  Method method() const { return method_; }
  int level() const { return level_; }
  SolverStatus status() const { return status_; }

 private:
  Method method_;
  int level_;
  SolverStatus status_;
};

class Stage1Failed : public std::runtime_error {
 public:
  explicit Stage1Failed(const std::string& what) : std::runtime_error(what) {}
};

/// Largest coefficientwise identity residual tolerated for an accepted result.
inline constexpr double kMaxIdentityResidual = 1e-6;

/// Solver settings used by the drivers unless the caller passes its own:
/// defaults plus trace_weight = 1e-6.
SolverConfig hierarchy_solver_config();

using PolyMatrix = std::vector<std::vector<MultiPoly>>;

// Templates, exposed for testing.
CertificateTemplate upper_template(const ParamPolynomial& p);
CertificateTemplate naive_lower_template(const ParamPolynomial& p);
CertificateTemplate esf_template(const ParamPolynomial& p);
/// Naive-lower template plus the generator x - vhat(q); vhat is over q1..qn.
CertificateTemplate gl_template(const ParamPolynomial& p, const NumericPoly& vhat);
CertificateTemplate hermite_template(const PolyMatrix& H);

/// Compiles, solves and packages one level. When `config` fails the solve is
/// repeated with a few perturbed trace weights and step fractions. Throws
/// SolverFailure unless some attempt reports Optimal or NearOptimal and the
/// identity residual is small.
Certificate run_template(const CertificateTemplate& tpl, int d, Method method,
                         const SolverConfig& config = hierarchy_solver_config());

Certificate upper_abscissa(const ParamPolynomial& p, int d, const SolverConfig& config = hierarchy_solver_config());
Certificate lower_minrealpart(const ParamPolynomial& p, int d, const SolverConfig& config = hierarchy_solver_config());
Certificate lower_abscissa_esf(const ParamPolynomial& p, int d, const SolverConfig& config = hierarchy_solver_config());
Certificate lower_abscissa_gl(const ParamPolynomial& p, int d, int dprime,
                              const SolverConfig& config = hierarchy_solver_config());
/// H must be square and symmetric with entries over q1..qn.
Certificate hermite_inner(const PolyMatrix& H, int d, const SolverConfig& config = hierarchy_solver_config());

}  // namespace abscissa
