#include "abscissa/esf.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace abscissa {

namespace {

struct ComplexPoly {
  MultiPoly re;
  MultiPoly im;
};

ComplexPoly multiply(const ComplexPoly& a, const ComplexPoly& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

bool is_real_root(const std::complex<double>& z) {
  return std::abs(z.imag()) <= 1e-14 * (1.0 + std::abs(z));
}

}  // namespace

std::vector<MultiPoly> EsfSystem::equalities() const {
  std::vector<MultiPoly> all = real_equalities;
  all.insert(all.end(), imag_equalities.begin(), imag_equalities.end());
  return all;
}

EsfSystem esf_constraints(const ParamPolynomial& p) {
  const int m = p.degree();
  const int n = p.num_params();
  if (m < 2) throw DegreeTooLow("root-ordering encoding needs m >= 2");

  EsfSystem sys;
  sys.m = m;
  sys.n = n;
  sys.vars = param_names(n);
  for (int l = 1; l <= m; ++l) sys.vars.push_back("x" + std::to_string(l));
  if (m % 2 == 0) {
    for (int l = 2; l <= m; l += 2) sys.retained_y.push_back(l);
  } else {
    for (int l = 2; l <= m - 3; l += 2) sys.retained_y.push_back(l);
    sys.retained_y.push_back(m - 1);
    sys.retained_y.push_back(m);
  }
  for (int l : sys.retained_y) sys.vars.push_back("y" + std::to_string(l));
  const auto& vars = sys.vars;

  // y_l for every l, as a linear form in the retained y variables.
  std::vector<MultiPoly> y(static_cast<std::size_t>(m) + 1, MultiPoly(vars));
  for (int l : sys.retained_y) {
    y[static_cast<std::size_t>(l)] = MultiPoly::variable(vars, "y" + std::to_string(l));
  }
  if (m % 2 == 0) {
    for (int k = 2; k <= m; k += 2) {
      y[static_cast<std::size_t>(k - 1)] = -y[static_cast<std::size_t>(k)];
    }
  } else {
    for (int k = 2; k <= m - 3; k += 2) {
      y[static_cast<std::size_t>(k - 1)] = -y[static_cast<std::size_t>(k)];
    }
    y[static_cast<std::size_t>(m - 2)] =
        -y[static_cast<std::size_t>(m - 1)] - y[static_cast<std::size_t>(m)];
  }

  // e_0..e_m via e_k <- e_k + s_l e_{k-1}.
  std::vector<ComplexPoly> e(static_cast<std::size_t>(m) + 1,
                             ComplexPoly{MultiPoly(vars), MultiPoly(vars)});
  e[0].re = MultiPoly::constant(vars, 1);
  for (int l = 1; l <= m; ++l) {
    const ComplexPoly s{MultiPoly::variable(vars, "x" + std::to_string(l)),
                        y[static_cast<std::size_t>(l)]};
    for (int k = l; k >= 1; --k) {
      const ComplexPoly prod = multiply(s, e[static_cast<std::size_t>(k - 1)]);
      e[static_cast<std::size_t>(k)].re += prod.re;
      e[static_cast<std::size_t>(k)].im += prod.im;
    }
  }

  for (int k = 1; k <= m; ++k) {
    MultiPoly coeff = p.coeff(m - k).embed(vars);
    if (k % 2 == 1) coeff = -coeff;
    sys.real_equalities.push_back(coeff - e[static_cast<std::size_t>(k)].re);
  }
  for (int k = m / 2 + 1; k <= m; ++k) {
    sys.imag_equalities.push_back(e[static_cast<std::size_t>(k)].im);
    sys.imag_orders.push_back(k);
  }
  const MultiPoly xm = MultiPoly::variable(vars, "x" + std::to_string(m));
  for (int k = 1; k < m; ++k) {
    sys.order_constraints.push_back(xm - MultiPoly::variable(vars, "x" + std::to_string(k)));
  }
  return sys;
}

std::vector<double> esf_point(const EsfSystem& sys, std::span<const double> q,
                              std::span<const std::complex<double>> roots) {
  const int m = sys.m;
  if (static_cast<int>(roots.size()) != m) throw std::invalid_argument("expected m roots");
  if (static_cast<int>(q.size()) != sys.n) throw std::invalid_argument("wrong parameter count");

  std::vector<std::complex<double>> pool(roots.begin(), roots.end());
  std::sort(pool.begin(), pool.end(), [](const auto& a, const auto& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });

  auto take_at = [&](std::size_t i) {
    const auto z = pool[i];
    pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(i));
    return z;
  };
  auto take_conjugate = [&](std::complex<double> z) {
    std::size_t best = 0;
    for (std::size_t i = 1; i < pool.size(); ++i) {
      if (std::abs(pool[i] - std::conj(z)) < std::abs(pool[best] - std::conj(z))) best = i;
    }
    return take_at(best);
  };
  // Largest real root; falls back to the root closest to the real axis.
  auto take_real = [&]() {
    std::size_t best = pool.size();
    for (std::size_t i = pool.size(); i-- > 0;) {
      if (is_real_root(pool[i])) {
        best = i;
        break;
      }
    }
    if (best == pool.size()) {
      best = 0;
      for (std::size_t i = 1; i < pool.size(); ++i) {
        if (std::abs(pool[i].imag()) < std::abs(pool[best].imag())) best = i;
      }
    }
    const auto z = take_at(best);
    return std::complex<double>(z.real(), 0.0);
  };

  std::vector<std::complex<double>> slot(static_cast<std::size_t>(m) + 1);
  const auto top = take_at(pool.size() - 1);
  const std::size_t um = static_cast<std::size_t>(m);
  if (!is_real_root(top)) {
    slot[um] = top;
    slot[um - 1] = take_conjugate(top);
    if (m % 2 == 1) slot[um - 2] = take_real();
  } else {
    slot[um] = {top.real(), 0.0};
    if (m % 2 == 0) {
      slot[um - 1] = take_real();
    } else {
      auto it = std::find_if(pool.rbegin(), pool.rend(),
                             [](const auto& z) { return z.imag() > 0 && !is_real_root(z); });
      if (it != pool.rend()) {
        const auto z = take_at(static_cast<std::size_t>(pool.rend() - it - 1));
        slot[um - 1] = z;
        slot[um - 2] = take_conjugate(z);
      } else {
        slot[um - 1] = take_real();
        slot[um - 2] = take_real();
      }
    }
  }

  // Remaining roots fill the pair slots (k-1, k) from the bottom.
  const int paired_top = (m % 2 == 0) ? m - 2 : m - 3;
  for (int k = 2; k <= paired_top; k += 2) {
    auto it = std::find_if(pool.rbegin(), pool.rend(),
                           [](const auto& z) { return z.imag() > 0 && !is_real_root(z); });
    if (it != pool.rend()) {
      const auto z = take_at(static_cast<std::size_t>(pool.rend() - it - 1));
      slot[static_cast<std::size_t>(k)] = z;
      slot[static_cast<std::size_t>(k - 1)] = take_conjugate(z);
    } else {
      slot[static_cast<std::size_t>(k)] = take_real();
      slot[static_cast<std::size_t>(k - 1)] = take_real();
    }
  }

  std::vector<double> point(q.begin(), q.end());
  for (int l = 1; l <= m; ++l) point.push_back(slot[static_cast<std::size_t>(l)].real());
  for (int l : sys.retained_y) point.push_back(slot[static_cast<std::size_t>(l)].imag());
  return point;
}

}  // namespace abscissa
