#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <string>
#include <vector>

#include "abscissa/param_polynomial.hpp"
#include "abscissa/problem_io.hpp"

namespace abscissa::testing {

inline std::string data_path(const std::string& file) {
  return std::string(ABSCISSA_DATA_DIR) + "/problems/" + file;
}

inline ParamPolynomial damped() {
  return ParamPolynomial::parse("s^2 + 2*q*s + 1 - 2*q", 1);
}

inline ParamPolynomial cubic() {
  return ParamPolynomial::parse("s^3 + 1/2*s^2 + q^2*s + (q - 1/2)*q*(q + 1/2)", 1);
}

inline ParamPolynomial cubic_2param() {
  return ParamPolynomial::parse("s^3 + (q1 + 3/2)*s^2 + q1^2*s + q1*q2", 2);
}

inline ParamPolynomial explgl1() {
  return ParamPolynomial::parse("s^2 + (20*q^2 - 1)*s + q + 1/2", 1);
}

inline ParamPolynomial assumption1() {
  return ParamPolynomial::parse("s^4 + (q^2 + 1)*s + q", 1);
}

inline std::vector<std::string> bundled_problem_files() {
  return {"damped.json", "cubic.json", "cubic_2param.json", "explgl1.json", "assumption1.json"};
}

inline std::vector<double> random_point(std::mt19937& rng, int n) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> q(static_cast<std::size_t>(n));
  for (auto& v : q) v = u(rng);
  return q;
}

/// Horner evaluation of a monic polynomial given c_0..c_m.
inline std::complex<double> eval_coeffs(const std::vector<double>& c, std::complex<double> z) {
  std::complex<double> acc = 0.0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * z + *it;
  return acc;
}

}  // namespace abscissa::testing
