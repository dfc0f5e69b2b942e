#include "abscissa/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace abscissa {

namespace {

using cplx = std::complex<double>;

// Diagonal similarity scaling by powers of two so that row and column norms
// of every index are comparable.
void balance(Eigen::MatrixXd& A) {
  const Eigen::Index n = A.rows();
  bool converged = false;
  while (!converged) {
    converged = true;
    for (Eigen::Index i = 0; i < n; ++i) {
      double c = 0.0;
      double r = 0.0;
      for (Eigen::Index j = 0; j < n; ++j) {
        if (j == i) continue;
        c += std::abs(A(j, i));
        r += std::abs(A(i, j));
      }
      if (c == 0.0 || r == 0.0) continue;
      const double s = c + r;
      double f = 1.0;
      while (c < r / 2) {
        c *= 2;
        r /= 2;
        f *= 2;
      }
      while (c >= r * 2) {
        c /= 2;
        r *= 2;
        f /= 2;
      }
      if ((c + r) / f < 0.95 * s) {
        converged = false;
        A.row(i) /= f;
        A.col(i) *= f;
      }
    }
  }
}

// p(z) and p'(z) for monic coefficients c_0..c_{m-1}.
template <typename T>
std::pair<T, T> horner(std::span<const double> c, T z) {
  T value(1.0);
  T deriv(0.0);
  for (std::size_t k = c.size(); k-- > 0;) {
    deriv = deriv * z + value;
    value = value * z + c[k];
  }
  return {value, deriv};
}

template <typename T>
T polish(std::span<const double> c, T z) {
  const auto [v, dv] = horner(c, z);
  if (dv == T(0.0)) return z;
  const T candidate = z - v / dv;
  const auto [v2, dv2] = horner(c, candidate);
  (void)dv2;
  return std::abs(v2) < std::abs(v) ? candidate : z;
}

double trapezoid_axis_weight(int i, int points, double h) {
  return (i == 0 || i == points - 1) ? h / 2 : h;
}

using Scalar1D = std::function<double(double)>;

double bisect(const Scalar1D& f, double a, double b, double fa) {
  while (b - a > 1e-10) {
    const double mid = 0.5 * (a + b);
    const double fm = f(mid);
    if ((fm < 0) == (fa < 0)) {
      a = mid;
      fa = fm;
    } else {
      b = mid;
    }
  }
  return 0.5 * (a + b);
}

RegionDescription sublevel_1d(const Scalar1D& f, const GridSpec& grid,
                              const std::vector<double>& samples) {
  RegionDescription region;
  region.n = 1;
  const std::size_t N = samples.size();
  double start = grid.lo;
  bool open = false;
  for (std::size_t i = 0; i < N; ++i) {
    const double q = grid.point(i)[0];
    const bool neg = samples[i] < 0;
    if (i == 0) {
      open = neg;
      continue;
    }
    const bool prev_neg = samples[i - 1] < 0;
    if (neg == prev_neg) continue;
    const double q0 = grid.point(i - 1)[0];
    const double crossing = bisect(f, q0, q, samples[i - 1]);
    if (neg) {
      start = crossing;
      open = true;
    } else {
      region.intervals.push_back({start, crossing});
      open = false;
    }
  }
  if (open) region.intervals.push_back({start, grid.hi});
  for (const auto& iv : region.intervals) region.volume += iv.hi - iv.lo;
  return region;
}

RegionDescription sublevel_mask(const GridSpec& grid, const std::vector<double>& samples) {
  RegionDescription region;
  region.n = grid.n;
  region.mask.resize(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    region.mask[i] = samples[i] < 0;
    if (region.mask[i]) region.volume += grid.weight(i);
  }
  return region;
}

}  // namespace

std::vector<cplx> roots_of_monic(std::span<const double> c) {
  const auto m = static_cast<Eigen::Index>(c.size());
  if (m == 0) return {};
  if (m == 1) return {cplx(-c[0], 0.0)};
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(m, m);
  for (Eigen::Index j = 0; j < m; ++j) A(0, j) = -c[static_cast<std::size_t>(m - 1 - j)];
  for (Eigen::Index i = 1; i < m; ++i) A(i, i - 1) = 1.0;
  balance(A);
  Eigen::EigenSolver<Eigen::MatrixXd> es(A, false);
  if (es.info() != Eigen::Success) throw std::runtime_error("companion eigensolver failed");
  const Eigen::VectorXcd ev = es.eigenvalues();

  std::vector<cplx> roots;
  roots.reserve(static_cast<std::size_t>(m));
  for (Eigen::Index k = 0; k < m; ++k) {
    const cplx z = ev(k);
    if (z.imag() == 0.0) {
      roots.emplace_back(polish<double>(c, z.real()), 0.0);
    } else if (z.imag() > 0.0) {
      cplx w = polish<cplx>(c, z);
      if (w.imag() <= 0.0) w = z;
      roots.push_back(w);
      roots.push_back(std::conj(w));
    }
  }
  if (static_cast<Eigen::Index>(roots.size()) != m) {
    throw std::runtime_error("companion eigenvalues are not closed under conjugation");
  }
  return roots;
}

std::vector<cplx> roots_at(const ParamPolynomial& p, std::span<const double> q) {
  std::vector<double> c = p.coefficients_at(q);
  c.pop_back();
  return roots_of_monic(c);
}

double abscissa_oracle(const ParamPolynomial& p, std::span<const double> q) {
  double a = -std::numeric_limits<double>::infinity();
  for (const auto& z : roots_at(p, q)) a = std::max(a, z.real());
  return a;
}

double min_realpart_oracle(const ParamPolynomial& p, std::span<const double> q) {
  double a = std::numeric_limits<double>::infinity();
  for (const auto& z : roots_at(p, q)) a = std::min(a, z.real());
  return a;
}

GridSpec GridSpec::defaults(int n) {
  GridSpec g;
  g.n = n;
  g.points = n == 1 ? 1001 : 201;
  return g;
}

std::size_t GridSpec::size() const {
  std::size_t total = 1;
  for (int j = 0; j < n; ++j) total *= static_cast<std::size_t>(points);
  return total;
}

std::vector<double> GridSpec::point(std::size_t index) const {
  std::vector<double> q(static_cast<std::size_t>(n));
  const double h = step();
  for (int j = n; j-- > 0;) {
    const auto i = static_cast<int>(index % static_cast<std::size_t>(points));
    index /= static_cast<std::size_t>(points);
    q[static_cast<std::size_t>(j)] = i == points - 1 ? hi : lo + i * h;
  }
  return q;
}

double GridSpec::weight(std::size_t index) const {
  double w = 1.0;
  const double h = step();
  for (int j = 0; j < n; ++j) {
    const auto i = static_cast<int>(index % static_cast<std::size_t>(points));
    index /= static_cast<std::size_t>(points);
    w *= trapezoid_axis_weight(i, points, h);
  }
  return w;
}

GapReport gap_report(const AbscissaApprox& approx, const ParamPolynomial& p,
                     const GridSpec& grid) {
  return gap_report(approx.poly, approx.direction, p, grid);
}

GapReport gap_report(const NumericPoly& poly, Direction direction, const ParamPolynomial& p,
                     const GridSpec& grid) {
  if (grid.n != p.num_params() || static_cast<int>(poly.num_vars()) != p.num_params()) {
    throw std::invalid_argument("approximation, polynomial and grid dimensions differ");
  }
  if (grid.points < 2) throw std::invalid_argument("grid needs at least two points per axis");
  GapReport rep;
  rep.grid = grid;
  rep.direction = direction;
  const double sign = direction == Direction::HermiteInner ? -1.0 : 1.0;

  const std::size_t N = grid.size();
  std::vector<double> f_approx(N), f_oracle(N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto q = grid.point(i);
    const auto roots = roots_at(p, q);
    double a = -std::numeric_limits<double>::infinity();
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& z : roots) {
      a = std::max(a, z.real());
      lo = std::min(lo, z.real());
    }
    const double v = poly.eval(q);
    f_approx[i] = sign * v;
    f_oracle[i] = a;

    const double dev = std::abs(v - a);
    rep.l1_gap += grid.weight(i) * dev;
    if (dev > rep.linf_gap || rep.linf_point.empty()) {
      rep.linf_gap = dev;
      rep.linf_point = q;
    }

    double excess = 0.0;
    switch (direction) {
      case Direction::UpperOnAbscissa: excess = a - v; break;
      case Direction::LowerOnAbscissa: excess = v - a; break;
      case Direction::LowerOnMinRealPart: excess = v - lo; break;
      case Direction::HermiteInner: excess = 0.0; break;
    }
    rep.max_violation = std::max(rep.max_violation, excess);
    if (excess > rep.tolerance) {
      ++rep.violation_count;
      if (rep.violation_points.size() < kMaxViolationPoints) rep.violation_points.push_back(q);
    }
    if (excess > rep.coarse_tolerance) ++rep.coarse_violation_count;
  }

  if (grid.n == 1) {
    rep.sublevel_approx = sublevel_1d(
        [&](double q) { return sign * poly.eval({q}); }, grid, f_approx);
    rep.sublevel_oracle = sublevel_1d(
        [&](double q) { return abscissa_oracle(p, std::span<const double>(&q, 1)); }, grid,
        f_oracle);
  } else {
    rep.sublevel_approx = sublevel_mask(grid, f_approx);
    rep.sublevel_oracle = sublevel_mask(grid, f_oracle);
  }
  return rep;
}

double hausdorff_distance(const std::vector<Interval>& a, const std::vector<Interval>& b) {
  if (a.empty() && b.empty()) return 0.0;
  if (a.empty() || b.empty()) return std::numeric_limits<double>::infinity();
  auto dist_to = [](double x, const std::vector<Interval>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& iv : set) {
      const double d = x < iv.lo ? iv.lo - x : (x > iv.hi ? x - iv.hi : 0.0);
      best = std::min(best, d);
    }
    return best;
  };
  // sup over `from` of the distance to `to`: attained at endpoints of `from`
  // or at midpoints of gaps of `to` that fall inside `from`.
  auto directed = [&](const std::vector<Interval>& from, const std::vector<Interval>& to) {
    std::vector<Interval> sorted = to;
    std::sort(sorted.begin(), sorted.end(), [](auto x, auto y) { return x.lo < y.lo; });
    std::vector<double> candidates;
    for (const auto& iv : from) {
      candidates.push_back(iv.lo);
      candidates.push_back(iv.hi);
      for (std::size_t k = 0; k + 1 < sorted.size(); ++k) {
        const double mid = 0.5 * (sorted[k].hi + sorted[k + 1].lo);
        if (mid > iv.lo && mid < iv.hi) candidates.push_back(mid);
      }
    }
    double worst = 0.0;
    for (double x : candidates) worst = std::max(worst, dist_to(x, to));
    return worst;
  };
  return std::max(directed(a, b), directed(b, a));
}

std::vector<std::vector<double>> check_assumption1(const ParamPolynomial& p,
                                                   const GridSpec& grid) {
  std::vector<std::vector<double>> offenders;
  if (p.degree() < 2) return offenders;
  constexpr double tol = 1e-7;
  const ParamPolynomial dp = derivative_in_s(p);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const auto q = grid.point(i);
    const auto roots = roots_at(p, q);
    double a = -std::numeric_limits<double>::infinity();
    for (const auto& z : roots) a = std::max(a, z.real());
    const double a_prime = abscissa_oracle(dp, q);
    const bool bad = std::any_of(roots.begin(), roots.end(), [&](const cplx& z) {
      return z.real() > a_prime + tol && z.real() < a - tol;
    });
    if (bad) offenders.push_back(q);
  }
  return offenders;
}

std::vector<std::vector<double>> check_assumption2_grid(const ParamPolynomial& p,
                                                        const NumericPoly& vhat,
                                                        const GridSpec& grid) {
  std::vector<std::vector<double>> offenders;
  if (p.degree() < 2) return offenders;
  constexpr double tol = 1e-6;
  const ParamPolynomial dp = derivative_in_s(p);
  const std::size_t N = grid.size();
  std::vector<double> gap(N);
  for (std::size_t i = 0; i < N; ++i) {
    const auto q = grid.point(i);
    const double a_prime = abscissa_oracle(dp, q);
    gap[i] = abscissa_oracle(p, q) - a_prime;
    if (std::abs(gap[i]) <= tol && vhat.eval(q) - a_prime > tol) offenders.push_back(q);
  }
  if (grid.n != 1) return offenders;

  // a_p - a_p' >= 0 touches zero between nodes at multiple roots; refine each
  // grid-local minimum by golden-section search.
  const auto h = [&](double t) {
    const double q[] = {t};
    return abscissa_oracle(p, q) - abscissa_oracle(dp, q);
  };
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  for (std::size_t i = 1; i + 1 < N; ++i) {
    if (gap[i] <= tol || gap[i] > gap[i - 1] || gap[i] > gap[i + 1]) continue;
    double lo = grid.point(i - 1)[0];
    double hi = grid.point(i + 1)[0];
    double c = hi - ratio * (hi - lo), d = lo + ratio * (hi - lo);
    double hc = h(c), hd = h(d);
    while (hi - lo > 1e-14) {
      if (hc < hd) {
        hi = d;
        d = c;
        hd = hc;
        c = hi - ratio * (hi - lo);
        hc = h(c);
      } else {
        lo = c;
        c = d;
        hc = hd;
        d = lo + ratio * (hi - lo);
        hd = h(d);
      }
    }
    const std::vector<double> q = {0.5 * (lo + hi)};
    if (h(q[0]) > tol) continue;
    if (vhat.eval(q) - abscissa_oracle(dp, q) > tol) offenders.push_back(q);
  }
  std::sort(offenders.begin(), offenders.end());
  return offenders;
}

}  // namespace abscissa
