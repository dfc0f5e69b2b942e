#pragma once

#include <map>
#include <shared_mutex>

#include "abscissa/multi_poly.hpp"

namespace abscissa {

/// Lebesgue moment z_alpha = prod_j int_{-1}^{1} q_j^{alpha_j} dq_j of the box
/// [-1,1]^n, i.e. prod_j 2/(alpha_j+1) for even alpha_j and 0 otherwise.
Rational box_moment(const Exponent& alpha);

/// Memoized box moments of a fixed dimension. Safe for concurrent use.
class MomentTable {
 public:
  explicit MomentTable(int n) : n_(n) {}

  int dimension() const { return n_; }
  Rational moment(const Exponent& alpha) const;

 private:
  int n_;
  mutable std::shared_mutex mutex_;
  mutable std::map<Exponent, Rational> cache_;
};

/// Exact integral of f over [-1,1]^n where n is the number of parameter
/// indeterminates (q, q1, q2, ...) of f. Throws std::invalid_argument when f
/// depends on any other indeterminate.
Rational integrate_over_box(const MultiPoly& f);

/// Floating-point counterpart for solved polynomials.
double integrate_over_box(const NumericPoly& f);

}  // namespace abscissa
