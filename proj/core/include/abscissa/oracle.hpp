#pragma once

#include <complex>
#include <limits>
#include <span>
#include <vector>

#include "abscissa/hierarchy.hpp"
#include "abscissa/multi_poly.hpp"
#include "abscissa/param_polynomial.hpp"

namespace abscissa {

/// All m roots of p(q, .) from the eigenvalues of the balanced companion
/// matrix, with one Newton step kept only when it lowers |p|. Complex roots
/// come out as exact conjugate pairs.
std::vector<std::complex<double>> roots_at(const ParamPolynomial& p, std::span<const double> q);
/// Roots of s^m + c_{m-1} s^{m-1} + ... + c_0 from c_0..c_{m-1}.
std::vector<std::complex<double>> roots_of_monic(std::span<const double> coeffs);

double abscissa_oracle(const ParamPolynomial& p, std::span<const double> q);
double min_realpart_oracle(const ParamPolynomial& p, std::span<const double> q);

/// Tensor grid on [lo, hi]^n with `points` nodes per axis. Points are listed
/// with the last coordinate varying fastest.
struct GridSpec {
  int n = 1;
  int points = 1001;
  double lo = -1.0;
  double hi = 1.0;

  static GridSpec defaults(int n);
  std::size_t size() const;
  double step() const { return (hi - lo) / (points - 1); }
  std::vector<double> point(std::size_t index) const;
  /// Trapezoid weight of a point.
  double weight(std::size_t index) const;
};

struct Interval {
  double lo;
  double hi;
};

struct RegionDescription {
  int n = 1;
  /// n = 1: sorted disjoint intervals.
  std::vector<Interval> intervals;
  /// n >= 2: membership per grid point, and the trapezoid-weighted volume.
  std::vector<bool> mask;
  double volume = 0.0;
};

struct GapReport {
  GridSpec grid;
  Direction direction = Direction::UpperOnAbscissa;
  /// Trapezoid integral and maximum of |approx - abscissa|.
  double l1_gap = 0.0;
  double linf_gap = 0.0;
  /// Location of linf_gap.
  std::vector<double> linf_point;
  /// Validity failures against the direction's reference (abscissa for
  /// upper/lower-on-abscissa, minimal real part for the naive lower bound).
  /// Hermite approximations are never counted.
  double tolerance = 1e-5;
  double coarse_tolerance = 1e-2;
  int violation_count = 0;
  int coarse_violation_count = 0;
  double max_violation = 0.0;
  std::vector<std::vector<double>> violation_points;
  /// {approx < 0} ({g > 0} for Hermite) and {abscissa < 0}.
  RegionDescription sublevel_approx;
  RegionDescription sublevel_oracle;
};

inline constexpr std::size_t kMaxViolationPoints = 1000;

GapReport gap_report(const AbscissaApprox& approx, const ParamPolynomial& p,
                     const GridSpec& grid);
GapReport gap_report(const NumericPoly& poly, Direction direction, const ParamPolynomial& p,
                     const GridSpec& grid);

/// Hausdorff distance of two finite unions of closed intervals; 0 when both
/// are empty and +inf when exactly one is.
double hausdorff_distance(const std::vector<Interval>& a, const std::vector<Interval>& b);

/// Grid points where a root's real part lies strictly between a_{p'} + 1e-7
/// and a_p - 1e-7. Empty for m = 1.
std::vector<std::vector<double>> check_assumption1(const ParamPolynomial& p,
                                                   const GridSpec& grid);

/// Points with |a_p - a_{p'}| <= 1e-6 where vhat exceeds a_{p'} by more than
/// 1e-6. Grid nodes are tested directly; for n = 1 every grid-local minimum of
/// a_p - a_{p'} is also refined, so isolated touching points between nodes are
/// found.
std::vector<std::vector<double>> check_assumption2_grid(const ParamPolynomial& p,
                                                        const NumericPoly& vhat,
                                                        const GridSpec& grid);

}  // namespace abscissa
