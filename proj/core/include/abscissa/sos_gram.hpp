#pragma once

#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abscissa/multi_poly.hpp"
#include "abscissa/sdp_problem.hpp"

namespace abscissa {

/// All exponents of total degree <= `degree` in `num_vars` variables, sorted
/// graded-lex (degree first, then lexicographically larger exponent first).
std::vector<Exponent> monomial_basis(std::size_t num_vars, int degree);

enum class ObjectiveSense { Minimize, Maximize };

struct Generator {
  std::string name;
  MultiPoly poly;
};

/// Putinar-type identity
///   decision_sign * v(q) + fixed_part = sum_i sigma_i g_i + sum_j tau_j h_j
/// with sigma_i SOS and tau_j free, at relaxation level d. The objective is
/// the box integral of v (or of nothing when has_decision is false).
struct CertificateTemplate {
  std::vector<std::string> variables;
  /// The first num_params variables are the parameters q1..qn.
  std::size_t num_params = 0;
  bool has_decision = true;
  int decision_sign = 1;
  MultiPoly fixed_part;
  ObjectiveSense sense = ObjectiveSense::Minimize;
  /// The first inequality generator must be the constant 1.
  std::vector<Generator> inequalities;
  std::vector<Generator> equalities;

  /// Smallest d for which every multiplier degree bound is nonnegative and the
  /// fixed part fits, i.e. max ceil(deg/2) over fixed part and generators.
  int minimal_level() const;
};

class LevelTooLow : public std::invalid_argument {
 public:
  LevelTooLow(int requested, int minimal);
  int minimal_level() const { return minimal_; }

 private:
  int minimal_;
};

/// Coefficient matching over all monomials of degree <= 2d. SOS multiplier
/// of g_i uses a Gram basis of degree floor((2d - deg g_i)/2); the free
/// multiplier of h_j has degree 2d - deg h_j.
SdpProblem compile(const CertificateTemplate& tpl, int d);

struct GramMultiplier {
  std::string name;
  std::vector<Exponent> basis;
  Eigen::MatrixXd gram;
};

struct FreeMultiplier {
  std::string name;
  NumericPoly poly;
};

struct ExtractedCertificate {
  /// Over the parameter variables only.
  NumericPoly decision;
  std::vector<GramMultiplier> sos;
  std::vector<FreeMultiplier> free;
};

/// Reads the multipliers back out of a solved compiled problem.
ExtractedCertificate extract_certificate(const SdpProblem& problem,
                                         std::span<const Eigen::MatrixXd> psd_values,
                                         const Eigen::VectorXd& free_values);

NumericPoly gram_to_poly(const std::vector<std::string>& vars, const GramMultiplier& g);

/// max |coefficient| of lhs - rhs of the identity, expanded in floating point
/// without going through the compiled rows.
double identity_residual(const CertificateTemplate& tpl, const ExtractedCertificate& cert);

}  // namespace abscissa
