#include "abscissa/sos_gram.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <ostream>

#include "abscissa/moments.hpp"

namespace abscissa {

namespace {

void exponents_of_degree(std::size_t num_vars, int degree, std::size_t pos, Exponent& cur,
                         std::vector<Exponent>& out) {
  if (pos + 1 == num_vars) {
    cur[pos] = degree;
    out.push_back(cur);
    return;
  }
  for (int a = degree; a >= 0; --a) {
    cur[pos] = a;
    exponents_of_degree(num_vars, degree - a, pos + 1, cur, out);
  }
  cur[pos] = 0;
}

int ceil_half(int k) { return (k + 1) / 2; }

Exponent add_exponents(const Exponent& a, const Exponent& b) {
  Exponent r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

}  // namespace

std::vector<Exponent> monomial_basis(std::size_t num_vars, int degree) {
  std::vector<Exponent> out;
  if (degree < 0) return out;
  if (num_vars == 0) {
    out.emplace_back();
    return out;
  }
  Exponent cur(num_vars, 0);
  for (int k = 0; k <= degree; ++k) exponents_of_degree(num_vars, k, 0, cur, out);
  return out;
}

int CertificateTemplate::minimal_level() const {
  int d0 = ceil_half(fixed_part.degree());
  for (const auto& g : inequalities) d0 = std::max(d0, ceil_half(g.poly.degree()));
  for (const auto& h : equalities) d0 = std::max(d0, ceil_half(h.poly.degree()));
  return d0;
}

LevelTooLow::LevelTooLow(int requested, int minimal)
    : std::invalid_argument("relaxation level " + std::to_string(requested) +
                            " is below the minimal level " + std::to_string(minimal)),
      minimal_(minimal) {}

SdpProblem compile(const CertificateTemplate& tpl, int d) {
  const std::size_t nv = tpl.variables.size();
  if (tpl.num_params > nv) throw std::invalid_argument("num_params exceeds variable count");
  if (tpl.inequalities.empty() || tpl.inequalities.front().poly.degree() != 0 ||
      tpl.inequalities.front().poly.coeff(Exponent(nv, 0)) != 1) {
    throw std::invalid_argument("first inequality generator must be the constant 1");
  }
  auto check_space = [&](const MultiPoly& f, const std::string& what) {
    if (f.vars() != tpl.variables) {
      throw VariableSpaceMismatch(what + " is not over the template variables");
    }
  };
  check_space(tpl.fixed_part, "fixed part");
  for (const auto& g : tpl.inequalities) check_space(g.poly, "generator " + g.name);
  for (const auto& h : tpl.equalities) check_space(h.poly, "equality " + h.name);
  const int d0 = tpl.minimal_level();
  if (d < d0) throw LevelTooLow(d, d0);

  SdpProblem prob;
  SdpLayout& lay = prob.layout;
  lay.variables = tpl.variables;
  lay.num_params = tpl.num_params;
  lay.level = d;
  lay.row_monomials = monomial_basis(nv, 2 * d);
  std::map<Exponent, int> row_of;
  for (std::size_t r = 0; r < lay.row_monomials.size(); ++r) {
    row_of.emplace(lay.row_monomials[r], static_cast<int>(r));
  }
  auto row = [&](const Exponent& e) {
    auto it = row_of.find(e);
    if (it == row_of.end()) throw std::logic_error("monomial outside the matching range");
    return it->second;
  };
  prob.num_rows = static_cast<int>(lay.row_monomials.size());
  prob.maximize = tpl.sense == ObjectiveSense::Maximize;
  const double obj_sign = prob.maximize ? -1.0 : 1.0;

  std::vector<double> free_cost;
  if (tpl.has_decision) {
    lay.decision_monomials = monomial_basis(tpl.num_params, 2 * d);
    lay.decision_offset = 0;
    for (const auto& a : lay.decision_monomials) {
      Exponent full(nv, 0);
      std::copy(a.begin(), a.end(), full.begin());
      const int col = prob.num_free++;
      prob.entries.push_back({row(full), -1, col, 0, -static_cast<double>(tpl.decision_sign)});
      free_cost.push_back(obj_sign * box_moment(a).get_d());
    }
  }

  for (std::size_t gi = 0; gi < tpl.inequalities.size(); ++gi) {
    const auto& g = tpl.inequalities[gi];
    const int t = (2 * d - g.poly.degree()) / 2;
    MultiplierSlot slot;
    slot.name = "sigma_" + g.name;
    slot.sos = true;
    slot.generator = static_cast<int>(gi);
    slot.degree_bound = 2 * t;
    slot.monomials = monomial_basis(nv, t);
    slot.block = static_cast<int>(prob.block_dims.size());
    prob.block_dims.push_back(static_cast<int>(slot.monomials.size()));
    const auto& basis = slot.monomials;
    for (std::size_t a = 0; a < basis.size(); ++a) {
      for (std::size_t b = a; b < basis.size(); ++b) {
        const Exponent ab = add_exponents(basis[a], basis[b]);
        for (const auto& [beta, c] : g.poly.terms()) {
          prob.entries.push_back({row(add_exponents(ab, beta)), slot.block, static_cast<int>(a),
                                  static_cast<int>(b), c.get_d()});
        }
      }
    }
    lay.multipliers.push_back(std::move(slot));
  }

  for (std::size_t hi = 0; hi < tpl.equalities.size(); ++hi) {
    const auto& h = tpl.equalities[hi];
    MultiplierSlot slot;
    slot.name = "tau_" + h.name;
    slot.sos = false;
    slot.generator = static_cast<int>(hi);
    slot.degree_bound = 2 * d - h.poly.degree();
    slot.monomials = monomial_basis(nv, slot.degree_bound);
    slot.first_free = prob.num_free;
    for (const auto& gamma : slot.monomials) {
      const int col = prob.num_free++;
      free_cost.push_back(0.0);
      for (const auto& [beta, c] : h.poly.terms()) {
        prob.entries.push_back({row(add_exponents(gamma, beta)), -1, col, 0, c.get_d()});
      }
    }
    lay.multipliers.push_back(std::move(slot));
  }

  prob.rhs = Eigen::VectorXd::Zero(prob.num_rows);
  for (const auto& [e, c] : tpl.fixed_part.terms()) prob.rhs(row(e)) = c.get_d();
  prob.free_cost = Eigen::Map<Eigen::VectorXd>(free_cost.data(),
                                               static_cast<Eigen::Index>(free_cost.size()));
  prob.validate();
  return prob;
}

ExtractedCertificate extract_certificate(const SdpProblem& problem,
                                         std::span<const Eigen::MatrixXd> psd_values,
                                         const Eigen::VectorXd& free_values) {
  const SdpLayout& lay = problem.layout;
  if (psd_values.size() != problem.block_dims.size() || free_values.size() != problem.num_free) {
    throw std::invalid_argument("solution does not match the compiled problem");
  }
  ExtractedCertificate cert;
  const auto params = std::vector<std::string>(
      lay.variables.begin(), lay.variables.begin() + static_cast<std::ptrdiff_t>(lay.num_params));
  cert.decision = NumericPoly(params);
  if (lay.decision_offset >= 0) {
    for (std::size_t k = 0; k < lay.decision_monomials.size(); ++k) {
      cert.decision.add_term(lay.decision_monomials[k],
                             free_values(lay.decision_offset + static_cast<Eigen::Index>(k)));
    }
  }
  for (const auto& slot : lay.multipliers) {
    if (slot.sos) {
      cert.sos.push_back({slot.name, slot.monomials, psd_values[static_cast<std::size_t>(slot.block)]});
    } else {
      NumericPoly tau(lay.variables);
      for (std::size_t k = 0; k < slot.monomials.size(); ++k) {
        tau.add_term(slot.monomials[k], free_values(slot.first_free + static_cast<Eigen::Index>(k)));
      }
      cert.free.push_back({slot.name, std::move(tau)});
    }
  }
  return cert;
}

NumericPoly gram_to_poly(const std::vector<std::string>& vars, const GramMultiplier& g) {
  NumericPoly sigma(vars);
  for (std::size_t a = 0; a < g.basis.size(); ++a) {
    for (std::size_t b = 0; b < g.basis.size(); ++b) {
      sigma.add_term(add_exponents(g.basis[a], g.basis[b]),
                     g.gram(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)));
    }
  }
  return sigma;
}

double identity_residual(const CertificateTemplate& tpl, const ExtractedCertificate& cert) {
  if (cert.sos.size() != tpl.inequalities.size() || cert.free.size() != tpl.equalities.size()) {
    throw std::invalid_argument("certificate does not match template");
  }
  const auto& vars = tpl.variables;
  NumericPoly diff = to_numeric(tpl.fixed_part);
  if (tpl.has_decision) {
    diff += cert.decision.embed(vars).scaled(static_cast<double>(tpl.decision_sign));
  }
  for (std::size_t i = 0; i < cert.sos.size(); ++i) {
    diff -= gram_to_poly(vars, cert.sos[i]) * to_numeric(tpl.inequalities[i].poly);
  }
  for (std::size_t j = 0; j < cert.free.size(); ++j) {
    diff -= cert.free[j].poly * to_numeric(tpl.equalities[j].poly);
  }
  double worst = 0.0;
  for (const auto& [e, c] : diff.terms()) worst = std::max(worst, std::abs(c));
  return worst;
}

void SdpProblem::validate() const {
  for (int dim : block_dims) {
    if (dim <= 0) throw std::invalid_argument("block dimension must be positive");
  }
  if (rhs.size() != num_rows) throw std::invalid_argument("rhs size mismatch");
  if (free_cost.size() != num_free) throw std::invalid_argument("free cost size mismatch");
  const int nb = static_cast<int>(block_dims.size());
  for (const auto& e : entries) {
    if (e.row < 0 || e.row >= num_rows) throw std::invalid_argument("entry row out of range");
    if (e.block == -1) {
      if (e.i < 0 || e.i >= num_free) throw std::invalid_argument("free column out of range");
    } else if (e.block < 0 || e.block >= nb || e.i < 0 || e.j < e.i ||
               e.j >= block_dims[static_cast<std::size_t>(e.block)]) {
      throw std::invalid_argument("block entry out of range");
    }
  }
  for (const auto& e : block_cost) {
    if (e.block < 0 || e.block >= nb || e.i < 0 || e.j < e.i ||
        e.j >= block_dims[static_cast<std::size_t>(e.block)]) {
      throw std::invalid_argument("cost entry out of range");
    }
  }
}

void write_sdp_text(std::ostream& os, const SdpProblem& p) {
  const auto old_precision = os.precision(17);
  os << "SDP blocks=" << p.block_dims.size() << " free=" << p.num_free << " rows=" << p.num_rows
     << '\n';
  os << "dims";
  for (int dim : p.block_dims) os << ' ' << dim;
  os << '\n';
  for (const auto& e : p.entries) {
    os << e.row << ' ' << e.block << ' ' << e.i << ' ' << e.j << ' ' << e.value << '\n';
  }
  for (Eigen::Index k = 0; k < p.free_cost.size(); ++k) {
    if (p.free_cost(k) != 0.0) os << "objective -1 " << k << " 0 " << p.free_cost(k) << '\n';
  }
  for (const auto& e : p.block_cost) {
    os << "objective " << e.block << ' ' << e.i << ' ' << e.j << ' ' << e.value << '\n';
  }
  for (Eigen::Index r = 0; r < p.rhs.size(); ++r) {
    if (p.rhs(r) != 0.0) os << "rhs " << r << ' ' << p.rhs(r) << '\n';
  }
  os.precision(old_precision);
}

}  // namespace abscissa
