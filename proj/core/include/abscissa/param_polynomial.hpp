#pragma once

#include <span>
#include <stdexcept>
#include <string_view>
#include <vector>

#include "abscissa/multi_poly.hpp"

namespace abscissa {

/// Raised when a construction needs more roots than the polynomial has.
class DegreeTooLow : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Monic polynomial p(q,s) = sum_k p_k(q) s^k of degree m > 0 in s, whose
/// coefficients are polynomials in the parameters q1..qn.
class ParamPolynomial {
 public:
  /// `coeffs` holds p_0..p_m over the indeterminates q1..qn; p_m must be 1.
  ParamPolynomial(int n, std::vector<MultiPoly> coeffs);

  /// Builds from p_0..p_{m-1}; the leading coefficient 1 is implied.
  static ParamPolynomial from_lower(int n, std::vector<MultiPoly> lower);

  /// Parses text such as `s^2 + 2*q1*s + 1 - 2*q1`. For n == 1 the bare name
  /// `q` is accepted as an alias of `q1`.
  static ParamPolynomial parse(std::string_view text, int n);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  int num_params() const { return n_; }
  const MultiPoly& coeff(int k) const { return coeffs_.at(static_cast<std::size_t>(k)); }
  const std::vector<MultiPoly>& coeffs() const { return coeffs_; }
  std::vector<std::string> param_vars() const { return param_names(n_); }

  /// Positive factor c with (original polynomial) = c * (*this). It is 1 except
  /// for polynomials produced by monic renormalization.
  const Rational& scale() const { return scale_; }
  void set_scale(Rational s) { scale_ = std::move(s); }

  /// Numeric coefficients p_0(q)..p_m(q) at a parameter point.
  std::vector<double> coefficients_at(std::span<const double> q) const;

  friend bool operator==(const ParamPolynomial& a, const ParamPolynomial& b) {
    return a.n_ == b.n_ && a.coeffs_ == b.coeffs_;
  }

 private:
  int n_;
  std::vector<MultiPoly> coeffs_;
  Rational scale_ = 1;
};

/// p(q, x + iy) = re(q,x,y) + i im(q,x,y), over indeterminates (q1..qn, x, y).
struct ComplexSplit {
  MultiPoly re;
  MultiPoly im;
};

ComplexSplit complex_split(const ParamPolynomial& p);

/// dp/ds divided by m so that the result is monic again; scale() records m.
/// Throws DegreeTooLow for m == 1.
ParamPolynomial derivative_in_s(const ParamPolynomial& p);

std::string to_string(const ParamPolynomial& p);

}  // namespace abscissa
