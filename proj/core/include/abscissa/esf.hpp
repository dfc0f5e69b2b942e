#pragma once

#include <complex>
#include <span>
#include <string>
#include <vector>

#include "abscissa/multi_poly.hpp"
#include "abscissa/param_polynomial.hpp"

namespace abscissa {

/// Root set of p written through the elementary symmetric functions of its
/// roots s_l = x_l + i y_l, with conjugate-pair eliminations applied:
///   m even: y_{k-1} = -y_k for k = 2, 4, ..., m
///   m odd:  y_{k-1} = -y_k for k = 2, 4, ..., m-3 and y_{m-2} = -y_{m-1} - y_m
/// Indeterminates are (q1..qn, x1..xm, y2, y4, ..., y_m).
struct EsfSystem {
  int m = 0;
  int n = 0;
  std::vector<std::string> vars;
  /// (-1)^k p_{m-k}(q) - Re e_k for k = 1..m.
  std::vector<MultiPoly> real_equalities;
  /// Im e_k for the surviving orders k = floor(m/2)+1..m.
  std::vector<MultiPoly> imag_equalities;
  std::vector<int> imag_orders;
  /// x_m - x_k >= 0 for k = 1..m-1.
  std::vector<MultiPoly> order_constraints;
  /// 1-based indices l of the retained y_l.
  std::vector<int> retained_y;

  std::vector<MultiPoly> equalities() const;
  std::size_t x_index(int l) const { return static_cast<std::size_t>(n + l - 1); }
};

/// Requires m >= 2.
EsfSystem esf_constraints(const ParamPolynomial& p);

/// Places the roots of p(q, .) into the slots of `sys`: the root of maximal
/// real part goes last, its conjugate (if complex) into slot m-1, remaining
/// conjugate pairs fill the (y_{k-1}, y_k) slots and real roots get y = 0.
/// Returns the full point (q, x_1..x_m, retained y).
std::vector<double> esf_point(const EsfSystem& sys, std::span<const double> q,
                              std::span<const std::complex<double>> roots);

}  // namespace abscissa
