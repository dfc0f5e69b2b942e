#include "abscissa/param_polynomial.hpp"

#include <map>
#include <string>

#include "abscissa/poly_parse.hpp"

namespace abscissa {

ParamPolynomial::ParamPolynomial(int n, std::vector<MultiPoly> coeffs)
    : n_(n), coeffs_(std::move(coeffs)) {
  if (n_ < 0) throw std::invalid_argument("negative number of parameters");
  if (coeffs_.size() < 2) throw DegreeTooLow("parameterized polynomial needs degree m > 0");
  const auto names = param_names(n_);
  for (auto& c : coeffs_) {
    if (c.vars() != names) {
      if (!c.uses_only(names)) {
        throw std::invalid_argument("coefficient uses indeterminates other than q1..qn");
      }
      c = c.embed(names);
    }
  }
  if (!(coeffs_.back() == MultiPoly::constant(names, 1))) {
    throw std::invalid_argument("parameterized polynomial must be monic in s");
  }
}

ParamPolynomial ParamPolynomial::from_lower(int n, std::vector<MultiPoly> lower) {
  lower.push_back(MultiPoly::constant(param_names(n), 1));
  return ParamPolynomial(n, std::move(lower));
}

ParamPolynomial ParamPolynomial::parse(std::string_view text, int n) {
  auto vars = param_names(n);
  vars.push_back("s");
  std::map<std::string, std::string> aliases;
  if (n == 1) aliases["q"] = "q1";
  const MultiPoly full = parse_poly(text, vars, aliases);
  const std::size_t s_index = vars.size() - 1;
  const int m = full.degree_in(s_index);
  const auto names = param_names(n);
  std::vector<MultiPoly> coeffs(static_cast<std::size_t>(m) + 1, MultiPoly(names));
  for (const auto& [e, c] : full.terms()) {
    Exponent qe(e.begin(), e.end() - 1);
    coeffs[static_cast<std::size_t>(e[s_index])].add_term(qe, c);
  }
  return ParamPolynomial(n, std::move(coeffs));
}

std::vector<double> ParamPolynomial::coefficients_at(std::span<const double> q) const {
  std::vector<double> out;
  out.reserve(coeffs_.size());
  for (const auto& c : coeffs_) out.push_back(c.eval(q));
  return out;
}

ComplexSplit complex_split(const ParamPolynomial& p) {
  const int n = p.num_params();
  auto vars = param_names(n);
  vars.push_back("x");
  vars.push_back("y");
  const std::size_t ix = vars.size() - 2;
  const std::size_t iy = vars.size() - 1;

  ComplexSplit out{MultiPoly(vars), MultiPoly(vars)};
  for (int k = 0; k <= p.degree(); ++k) {
    const MultiPoly pk = p.coeff(k).embed(vars);
    // (x + iy)^k = sum_j C(k,j) x^{k-j} (iy)^j, with i^j cycling 1, i, -1, -i.
    mpz_class binom = 1;
    for (int j = 0; j <= k; ++j) {
      if (j > 0) {
        binom = binom * (k - j + 1) / j;
      }
      Exponent e(vars.size(), 0);
      e[ix] = k - j;
      e[iy] = j;
      const int phase = j % 4;
      Rational c(binom);
      if (phase >= 2) c = -c;
      const MultiPoly term = pk * MultiPoly::monomial(vars, e, c);
      if (phase % 2 == 0) {
        out.re += term;
      } else {
        out.im += term;
      }
    }
  }
  return out;
}

ParamPolynomial derivative_in_s(const ParamPolynomial& p) {
  const int m = p.degree();
  if (m < 2) {
    throw DegreeTooLow("derivative of a degree-1 polynomial is constant and has no roots");
  }
  std::vector<MultiPoly> coeffs;
  coeffs.reserve(static_cast<std::size_t>(m));
  for (int k = 1; k <= m; ++k) {
    Rational factor(k, m);
    factor.canonicalize();
    coeffs.push_back(p.coeff(k).scaled(factor));
  }
  ParamPolynomial d(p.num_params(), std::move(coeffs));
  d.set_scale(p.scale() * m);
  return d;
}

std::string to_string(const ParamPolynomial& p) {
  std::string out;
  for (int k = p.degree(); k >= 0; --k) {
    if (p.coeff(k).is_zero()) continue;
    if (!out.empty()) out += " + ";
    const std::string c = to_string(p.coeff(k));
    if (k == 0) {
      out += "(" + c + ")";
    } else {
      if (c != "1") out += "(" + c + ")*";
      out += k == 1 ? std::string("s") : "s^" + std::to_string(k);
    }
  }
  return out;
}

}  // namespace abscissa
