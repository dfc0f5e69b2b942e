#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "abscissa/hierarchy.hpp"
#include "abscissa/oracle.hpp"
#include "abscissa/param_polynomial.hpp"

namespace abscissa {

/// Malformed problem or result file (bad JSON, missing fields, inconsistent sizes).
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// {"name": ..., "n": 1, "m": 2, "coefficients": ["1 - 2*q1", "2*q1"],
///  "hermite_matrix": [["4*q1 - 8*q1^2", "0"], ["0", "4*q1"]]}
/// coefficients are p_0..p_{m-1}; the leading 1 is implied.
struct ProblemFile {
  std::string name;
  int n = 1;
  int m = 1;
  std::vector<std::string> coefficients;
  std::optional<std::vector<std::vector<std::string>>> hermite_matrix;

  ParamPolynomial polynomial() const;
  PolyMatrix hermite() const;
};

ProblemFile parse_problem(std::string_view json_text);
ProblemFile read_problem(const std::string& path);
std::string to_json(const ProblemFile& problem);

struct GapSummary {
  int grid_points = 0;
  double l1_gap = 0.0;
  double linf_gap = 0.0;
  int violation_count = 0;
  int coarse_violation_count = 0;
  double max_violation = 0.0;
};

GapSummary summarize(const GapReport& report);

struct RunResult {
  std::string problem;
  Method method = Method::Upper;
  Direction direction = Direction::UpperOnAbscissa;
  int d = 0;
  std::optional<int> dprime;
  double objective = 0.0;
  NumericPoly approx;
  SolverStats solver;
  double identity_residual = 0.0;
  std::optional<GapSummary> gap;
};

RunResult make_run_result(const std::string& problem, const Certificate& cert);

/// Approximation polynomial as {"variables", "monomials", "coefficients"};
/// doubles are written with round-trip precision. Wall-clock time is left out
/// so repeated runs produce identical files.
std::string to_json(const RunResult& result);
RunResult parse_run_result(std::string_view json_text);
RunResult read_run_result(const std::string& path);

std::string to_json(const GapReport& report);

}  // namespace abscissa
