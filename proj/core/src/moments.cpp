#include "abscissa/moments.hpp"

#include <mutex>
#include <regex>
#include <stdexcept>

namespace abscissa {

Rational box_moment(const Exponent& alpha) {
  Rational z = 1;
  for (int a : alpha) {
    if (a < 0) throw std::invalid_argument("negative exponent in moment");
    if (a % 2 == 1) return 0;
    Rational factor(2, a + 1);
    factor.canonicalize();
    z *= factor;
  }
  return z;
}

Rational MomentTable::moment(const Exponent& alpha) const {
  if (static_cast<int>(alpha.size()) != n_) {
    throw std::invalid_argument("moment exponent has wrong dimension");
  }
  {
    std::shared_lock lock(mutex_);
    if (auto it = cache_.find(alpha); it != cache_.end()) return it->second;
  }
  Rational z = box_moment(alpha);
  std::unique_lock lock(mutex_);
  cache_.emplace(alpha, z);
  return z;
}

namespace {

bool is_param_name(const std::string& name) {
  static const std::regex pattern("q[0-9]*");
  return std::regex_match(name, pattern);
}

template <typename Coeff>
std::vector<std::size_t> param_positions(const BasicMultiPoly<Coeff>& f) {
  std::vector<std::size_t> pos;
  for (std::size_t i = 0; i < f.num_vars(); ++i) {
    if (is_param_name(f.vars()[i])) {
      pos.push_back(i);
    } else if (f.degree_in(i) > 0) {
      throw std::invalid_argument("integrand depends on non-parameter indeterminate '" +
                                  f.vars()[i] + "'");
    }
  }
  return pos;
}

template <typename Coeff>
Exponent restrict_to(const Exponent& e, const std::vector<std::size_t>& pos) {
  Exponent r;
  r.reserve(pos.size());
  for (std::size_t i : pos) r.push_back(e[i]);
  return r;
}

}  // namespace

Rational integrate_over_box(const MultiPoly& f) {
  const auto pos = param_positions(f);
  Rational sum = 0;
  for (const auto& [e, c] : f.terms()) sum += c * box_moment(restrict_to<Rational>(e, pos));
  return sum;
}

double integrate_over_box(const NumericPoly& f) {
  const auto pos = param_positions(f);
  double sum = 0.0;
  for (const auto& [e, c] : f.terms()) {
    sum += c * box_moment(restrict_to<double>(e, pos)).get_d();
  }
  return sum;
}

}  // namespace abscissa
