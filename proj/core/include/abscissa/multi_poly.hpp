#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <span>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

#include "abscissa/rational.hpp"

namespace abscissa {

/// Exponent vector of a monomial; its length equals the number of
/// indeterminates of the owning polynomial.
using Exponent = std::vector<int>;

inline int total_degree(const Exponent& e) {
  return std::accumulate(e.begin(), e.end(), 0);
}

/// Graded lexicographic order: lower total degree first, and within one
/// degree the lexicographically larger exponent first, so that over (q,x,y)
/// the order is 1, q, x, y, q^2, qx, qy, x^2, xy, y^2, ...
struct GradedLexLess {
  bool operator()(const Exponent& a, const Exponent& b) const {
    const int da = total_degree(a);
    const int db = total_degree(b);
    if (da != db) return da < db;
    return std::lexicographical_compare(b.begin(), b.end(), a.begin(), a.end());
  }
};

/// Thrown when two polynomials over different indeterminate lists are
/// combined without an explicit embedding.
class VariableSpaceMismatch : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Sparse multivariate polynomial keyed by exponent vectors. Coefficients are
/// exact rationals during symbolic work (MultiPoly) and doubles after a solve
/// (NumericPoly). No stored term has a zero coefficient.
template <typename Coeff>
class BasicMultiPoly {
 public:
  using Terms = std::map<Exponent, Coeff, GradedLexLess>;

  BasicMultiPoly() = default;
  explicit BasicMultiPoly(std::vector<std::string> vars) : vars_(std::move(vars)) {}

  static BasicMultiPoly constant(std::vector<std::string> vars, const Coeff& c) {
    BasicMultiPoly p(std::move(vars));
    p.add_term(Exponent(p.num_vars(), 0), c);
    return p;
  }

  static BasicMultiPoly monomial(std::vector<std::string> vars, Exponent e,
                                 const Coeff& c) {
    BasicMultiPoly p(std::move(vars));
    if (e.size() != p.num_vars()) {
      throw VariableSpaceMismatch("monomial exponent length does not match variables");
    }
    p.add_term(e, c);
    return p;
  }

  static BasicMultiPoly variable(std::vector<std::string> vars, std::string_view name) {
    BasicMultiPoly p(std::move(vars));
    Exponent e(p.num_vars(), 0);
    e[p.index_of(name)] = 1;
    p.add_term(e, Coeff(1));
    return p;
  }

  const std::vector<std::string>& vars() const { return vars_; }
  std::size_t num_vars() const { return vars_.size(); }
  const Terms& terms() const { return terms_; }
  std::size_t num_terms() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  std::size_t index_of(std::string_view name) const {
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      if (vars_[i] == name) return i;
    }
    throw VariableSpaceMismatch("unknown indeterminate '" + std::string(name) + "'");
  }

  bool has_var(std::string_view name) const {
    return std::find(vars_.begin(), vars_.end(), name) != vars_.end();
  }

  /// Total degree; the zero polynomial has degree 0.
  int degree() const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, total_degree(e));
    return d;
  }

  int degree_in(std::size_t var) const {
    int d = 0;
    for (const auto& [e, c] : terms_) d = std::max(d, e.at(var));
    return d;
  }

  Coeff coeff(const Exponent& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? Coeff(0) : it->second;
  }

  void add_term(const Exponent& e, const Coeff& c) {
    if (e.size() != vars_.size()) {
      throw VariableSpaceMismatch("exponent length does not match variables");
    }
    if (abscissa::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(e, c);
    if (!inserted) {
      it->second += c;
      if (abscissa::is_zero(it->second)) terms_.erase(it);
    }
  }

  BasicMultiPoly& operator+=(const BasicMultiPoly& o) {
    require_same_space(o);
    for (const auto& [e, c] : o.terms_) add_term(e, c);
    return *this;
  }

  BasicMultiPoly& operator-=(const BasicMultiPoly& o) {
    require_same_space(o);
    for (const auto& [e, c] : o.terms_) add_term(e, Coeff(-c));
    return *this;
  }

  BasicMultiPoly& operator*=(const BasicMultiPoly& o) {
    *this = *this * o;
    return *this;
  }

  BasicMultiPoly scaled(const Coeff& s) const {
    BasicMultiPoly r(vars_);
    if (abscissa::is_zero(s)) return r;
    for (const auto& [e, c] : terms_) r.terms_.emplace(e, Coeff(c * s));
    return r;
  }

  friend BasicMultiPoly operator+(BasicMultiPoly a, const BasicMultiPoly& b) {
    a += b;
    return a;
  }
  friend BasicMultiPoly operator-(BasicMultiPoly a, const BasicMultiPoly& b) {
    a -= b;
    return a;
  }
  friend BasicMultiPoly operator-(const BasicMultiPoly& a) { return a.scaled(Coeff(-1)); }

  friend BasicMultiPoly operator*(const BasicMultiPoly& a, const BasicMultiPoly& b) {
    a.require_same_space(b);
    BasicMultiPoly r(a.vars_);
    Exponent e(a.num_vars());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
        r.add_term(e, Coeff(ca * cb));
      }
    }
    return r;
  }

  friend bool operator==(const BasicMultiPoly& a, const BasicMultiPoly& b) {
    return a.vars_ == b.vars_ && a.terms_ == b.terms_;
  }

  BasicMultiPoly pow(int k) const {
    if (k < 0) throw std::invalid_argument("negative polynomial power");
    BasicMultiPoly r = constant(vars_, Coeff(1));
    for (int i = 0; i < k; ++i) r *= *this;
    return r;
  }

  /// Re-expresses the polynomial over `new_vars`, which must contain every
  /// indeterminate that appears with a positive exponent.
  BasicMultiPoly embed(const std::vector<std::string>& new_vars) const {
    std::vector<std::ptrdiff_t> target(vars_.size(), -1);
    for (std::size_t i = 0; i < vars_.size(); ++i) {
      auto it = std::find(new_vars.begin(), new_vars.end(), vars_[i]);
      if (it != new_vars.end()) target[i] = it - new_vars.begin();
    }
    BasicMultiPoly r(new_vars);
    Exponent ne(new_vars.size());
    for (const auto& [e, c] : terms_) {
      std::fill(ne.begin(), ne.end(), 0);
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] == 0) continue;
        if (target[i] < 0) {
          throw VariableSpaceMismatch("cannot embed: indeterminate '" + vars_[i] +
                                      "' missing from target space");
        }
        ne[static_cast<std::size_t>(target[i])] += e[i];
      }
      r.add_term(ne, c);
    }
    return r;
  }

  /// Replaces indeterminate `var` by `value` (a polynomial over the same space).
  BasicMultiPoly substitute(std::size_t var, const BasicMultiPoly& value) const {
    require_same_space(value);
    std::vector<BasicMultiPoly> powers{constant(vars_, Coeff(1))};
    BasicMultiPoly r(vars_);
    for (const auto& [e, c] : terms_) {
      const int k = e[var];
      while (static_cast<int>(powers.size()) <= k) powers.push_back(powers.back() * value);
      Exponent rest = e;
      rest[var] = 0;
      r += monomial(vars_, rest, c) * powers[static_cast<std::size_t>(k)];
    }
    return r;
  }

  /// True when every indeterminate with a positive exponent is in `names`.
  bool uses_only(const std::vector<std::string>& names) const {
    for (const auto& [e, c] : terms_) {
      for (std::size_t i = 0; i < e.size(); ++i) {
        if (e[i] > 0 && std::find(names.begin(), names.end(), vars_[i]) == names.end()) {
          return false;
        }
      }
    }
    return true;
  }

  template <typename T>
  T evaluate(std::span<const T> point) const {
    if (point.size() != vars_.size()) {
      throw VariableSpaceMismatch("evaluation point has wrong dimension");
    }
    T sum(0);
    for (const auto& [e, c] : terms_) {
      T term = coeff_as<T>(c);
      for (std::size_t i = 0; i < e.size(); ++i) {
        for (int k = 0; k < e[i]; ++k) term *= point[i];
      }
      sum += term;
    }
    return sum;
  }

  double eval(std::span<const double> point) const { return evaluate<double>(point); }
  double eval(std::initializer_list<double> point) const {
    return evaluate<double>(std::span<const double>(point.begin(), point.size()));
  }

  void require_same_space(const BasicMultiPoly& o) const {
    if (vars_ != o.vars_) {
      throw VariableSpaceMismatch("polynomials live in different indeterminate spaces");
    }
  }

 private:
  template <typename T>
  static T coeff_as(const Coeff& c) {
    if constexpr (std::is_same_v<T, double>) {
      return to_double(c);
    } else {
      return T(c);
    }
  }

  std::vector<std::string> vars_;
  Terms terms_;
};

using MultiPoly = BasicMultiPoly<Rational>;
using NumericPoly = BasicMultiPoly<double>;

NumericPoly to_numeric(const MultiPoly& p);

/// Exact conversion: every double is a dyadic rational.
MultiPoly to_exact(const NumericPoly& p);

std::string to_string(const MultiPoly& p);
std::string to_string(const NumericPoly& p);

/// Names q1..qn used for the parameter indeterminates.
std::vector<std::string> param_names(int n);

}  // namespace abscissa
