#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <random>

#include "abscissa/hierarchy.hpp"
#include "abscissa/oracle.hpp"
#include "abscissa/poly_parse.hpp"
#include "test_support.hpp"

namespace abscissa {
namespace {

using C = std::complex<double>;

std::vector<C> sorted_roots(const ParamPolynomial& p, std::vector<double> q) {
  auto r = roots_at(p, q);
  std::sort(r.begin(), r.end(), [](C a, C b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
  return r;
}

NumericPoly poly1(const std::string& text) { return to_numeric(parse_poly(text, {"q1"})); }

TEST(RootsAt, Examples) {
  auto r = sorted_roots(testing::damped(), {0.0});
  ASSERT_EQ(r.size(), 2u);
  EXPECT_NEAR(std::abs(r[0] - C(0, -1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r[1] - C(0, 1)), 0.0, 1e-12);

  r = sorted_roots(testing::damped(), {0.5});
  EXPECT_NEAR(std::abs(r[0] - C(-1, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r[1]), 0.0, 1e-12);

  // Double root at 0: companion eigenvalues are accurate to sqrt(eps).
  r = sorted_roots(testing::cubic(), {0.0});
  ASSERT_EQ(r.size(), 3u);
  EXPECT_NEAR(std::abs(r[0] - C(-0.5, 0)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r[1]), 0.0, 1e-7);
  EXPECT_NEAR(std::abs(r[2]), 0.0, 1e-7);
}

TEST(RootsOfMonic, LowDegreeCases) {
  EXPECT_TRUE(roots_of_monic(std::vector<double>{}).empty());
  const auto r1 = roots_of_monic(std::vector<double>{0.25});
  ASSERT_EQ(r1.size(), 1u);
  EXPECT_EQ(r1[0], C(-0.25, 0.0));
  // s^2 + 2: the pair is exactly conjugate.
  const auto r2 = roots_of_monic(std::vector<double>{2.0, 0.0});
  ASSERT_EQ(r2.size(), 2u);
  EXPECT_EQ(r2[0], std::conj(r2[1]));
  EXPECT_NEAR(std::abs(r2[0].imag()), std::sqrt(2.0), 1e-14);
}

TEST(AbscissaOracle, Examples) {
  const auto p = testing::damped();
  const double m1[] = {-1.0}, half[] = {0.5}, zero[] = {0.0};
  EXPECT_NEAR(abscissa_oracle(p, m1), 1.0, 1e-12);
  EXPECT_NEAR(abscissa_oracle(p, half), 0.0, 1e-12);
  EXPECT_NEAR(min_realpart_oracle(p, zero), 0.0, 1e-12);
  EXPECT_NEAR(min_realpart_oracle(p, half), -1.0, 1e-12);

  const auto lin = ParamPolynomial::parse("s + q", 1);
  for (double t : {-1.0, -0.3, 0.0, 0.7, 1.0}) {
    const double q[] = {t};
    EXPECT_NEAR(abscissa_oracle(lin, q), -t, 1e-15);
    EXPECT_NEAR(min_realpart_oracle(lin, q), -t, 1e-15);
  }
}

TEST(AbscissaOracle, RootResidualAndConjugateSymmetry) {
  std::mt19937 rng(11);
  for (const auto& file : testing::bundled_problem_files()) {
    const auto p = read_problem(testing::data_path(file)).polynomial();
    for (int trial = 0; trial < 200; ++trial) {
      const auto q = testing::random_point(rng, p.num_params());
      const auto c = p.coefficients_at(q);
      double cmax = 0.0;
      for (double v : c) cmax = std::max(cmax, std::abs(v));
      const auto r = roots_at(p, q);
      ASSERT_EQ(static_cast<int>(r.size()), p.degree());
      std::vector<double> im;
      for (const C& z : r) {
        EXPECT_LE(std::abs(testing::eval_coeffs(c, z)), 1e-8 * (1.0 + cmax)) << file;
        im.push_back(z.imag());
      }
      std::vector<double> neg = im;
      for (double& v : neg) v = -v;
      std::sort(im.begin(), im.end());
      std::sort(neg.begin(), neg.end());
      for (std::size_t k = 0; k < im.size(); ++k) EXPECT_NEAR(im[k], neg[k], 1e-9) << file;
      EXPECT_LE(min_realpart_oracle(p, q), abscissa_oracle(p, q));
    }
  }
}

TEST(AbscissaOracle, MinEqualsMaxForSharedRealPart) {
  const auto p = ParamPolynomial::parse("s^2 + q^2 + 1/4", 1);
  for (double t : {-1.0, -0.5, 0.0, 0.5, 1.0}) {
    const double q[] = {t};
    EXPECT_NEAR(min_realpart_oracle(p, q), abscissa_oracle(p, q), 1e-14);
  }
  const double q[] = {0.3};
  EXPECT_LT(min_realpart_oracle(testing::cubic(), q), abscissa_oracle(testing::cubic(), q) - 0.1);
}

TEST(GridSpec, OrderingAndWeights) {
  const GridSpec g{2, 3, -1.0, 1.0};
  ASSERT_EQ(g.size(), 9u);
  EXPECT_EQ(g.point(1), (std::vector<double>{-1.0, 0.0}));
  EXPECT_EQ(g.point(3), (std::vector<double>{0.0, -1.0}));
  double total = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) total += g.weight(i);
  EXPECT_NEAR(total, 4.0, 1e-14);
  EXPECT_EQ(GridSpec::defaults(1).points, 1001);
  EXPECT_EQ(GridSpec::defaults(2).points, 201);
}

TEST(GapReport, ExactPolynomialAbscissa) {
  const auto p = ParamPolynomial::parse("s + q", 1);
  const auto rep = gap_report(poly1("-q1"), Direction::UpperOnAbscissa, p, GridSpec::defaults(1));
  EXPECT_LE(rep.l1_gap, 1e-8);
  EXPECT_LE(rep.linf_gap, 1e-8);
  EXPECT_EQ(rep.violation_count, 0);
  ASSERT_EQ(rep.sublevel_oracle.intervals.size(), 1u);
  EXPECT_NEAR(rep.sublevel_oracle.intervals[0].lo, 0.0, 1e-9);
  EXPECT_NEAR(rep.sublevel_oracle.intervals[0].hi, 1.0, 1e-9);
}

TEST(GapReport, CountsViolationsByDirection) {
  const auto p = ParamPolynomial::parse("s + q", 1);
  const GridSpec g{1, 101, -1.0, 1.0};
  // -q - 0.001 is below the abscissa everywhere by 1e-3.
  const auto below = poly1("-q1 - 1/1000");
  const auto up = gap_report(below, Direction::UpperOnAbscissa, p, g);
  EXPECT_EQ(up.violation_count, 101);
  EXPECT_EQ(up.coarse_violation_count, 0);
  EXPECT_NEAR(up.max_violation, 1e-3, 1e-12);
  EXPECT_EQ(static_cast<int>(up.violation_points.size()), up.violation_count);
  EXPECT_EQ(gap_report(below, Direction::LowerOnAbscissa, p, g).violation_count, 0);
  EXPECT_EQ(gap_report(below, Direction::HermiteInner, p, g).violation_count, 0);
  EXPECT_NEAR(up.l1_gap, 2e-3, 1e-12);
}

TEST(GapReport, MinRealPartReference) {
  // Roots q and -1: the naive lower bound is measured against min(q, -1) = -1.
  const auto p = ParamPolynomial::parse("(s - q)*(s + 1)", 1);
  const GridSpec g{1, 201, -1.0, 1.0};
  const auto w = poly1("-1");
  EXPECT_EQ(gap_report(w, Direction::LowerOnMinRealPart, p, g).violation_count, 0);
  EXPECT_EQ(gap_report(poly1("-1/2"), Direction::LowerOnMinRealPart, p, g).violation_count, 201);
}

TEST(GapReport, DimensionMismatchThrows) {
  const NumericPoly v2 = to_numeric(parse_poly("q1 + q2", {"q1", "q2"}));
  EXPECT_ANY_THROW(gap_report(v2, Direction::UpperOnAbscissa, testing::damped(),
                              GridSpec::defaults(1)));
}

TEST(GapReport, OracleSublevelOfDampedOscillator) {
  const auto rep = gap_report(poly1("2"), Direction::UpperOnAbscissa, testing::damped(),
                              GridSpec::defaults(1));
  ASSERT_EQ(rep.sublevel_oracle.intervals.size(), 1u);
  EXPECT_NEAR(rep.sublevel_oracle.intervals[0].lo, 0.0, 1e-9);
  EXPECT_NEAR(rep.sublevel_oracle.intervals[0].hi, 0.5, 1e-9);
  EXPECT_TRUE(rep.sublevel_approx.intervals.empty());
  EXPECT_EQ(rep.violation_count, 0);
}

TEST(GapReport, RegionInvariants) {
  // Sublevel of a polynomial with three sign changes.
  const auto p = ParamPolynomial::parse("s + q", 1);
  const auto rep = gap_report(poly1("q1^3 - 1/4*q1"), Direction::UpperOnAbscissa, p,
                              GridSpec::defaults(1));
  const auto& iv = rep.sublevel_approx.intervals;
  ASSERT_EQ(iv.size(), 2u);
  for (std::size_t k = 0; k < iv.size(); ++k) {
    EXPECT_LT(iv[k].lo, iv[k].hi);
    if (k > 0) EXPECT_LT(iv[k - 1].hi, iv[k].lo);
  }
  EXPECT_NEAR(iv[0].lo, -1.0, 1e-12);
  EXPECT_NEAR(iv[0].hi, -0.5, 1e-9);
  EXPECT_NEAR(iv[1].lo, 0.0, 1e-9);
  EXPECT_NEAR(iv[1].hi, 0.5, 1e-9);

  const GridSpec g2{2, 51, -1.0, 1.0};
  const auto rep2 = gap_report(to_numeric(parse_poly("q1^2 + q2^2 - 1/2", {"q1", "q2"})),
                               Direction::UpperOnAbscissa, testing::cubic_2param(), g2);
  const auto& mask = rep2.sublevel_approx;
  ASSERT_EQ(mask.mask.size(), g2.size());
  EXPECT_GE(mask.volume, 0.0);
  EXPECT_LE(mask.volume, 4.0);
  EXPECT_NEAR(mask.volume, M_PI / 2.0, 0.05);
  EXPECT_GE(rep2.sublevel_oracle.volume, 0.0);
  EXPECT_LE(rep2.sublevel_oracle.volume, 4.0);
}

TEST(GapReport, LinfBoundsSampledDeviation) {
  const auto p = testing::cubic();
  const GridSpec g{1, 301, -1.0, 1.0};
  const auto v = poly1("1/2 - q1^2");
  const auto rep = gap_report(v, Direction::UpperOnAbscissa, p, g);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    const auto q = g.point(i);
    worst = std::max(worst, std::abs(v.eval(q) - abscissa_oracle(p, q)));
  }
  EXPECT_GE(rep.linf_gap, worst);
  EXPECT_GE(rep.l1_gap, 0.0);
  EXPECT_NEAR(std::abs(v.eval(rep.linf_point) - abscissa_oracle(p, rep.linf_point)),
              rep.linf_gap, 1e-12);
}

TEST(GapReport, GridDoublingChangesL1Slightly) {
  for (const auto& file : testing::bundled_problem_files()) {
    const auto p = read_problem(testing::data_path(file)).polynomial();
    const int n = p.num_params();
    const auto cert = upper_abscissa(p, 3);
    const GridSpec coarse{n, n == 1 ? 1001 : 101, -1.0, 1.0};
    const GridSpec fine{n, n == 1 ? 2001 : 201, -1.0, 1.0};
    const double a = gap_report(cert.approx, p, coarse).l1_gap;
    const double b = gap_report(cert.approx, p, fine).l1_gap;
    EXPECT_LE(std::abs(a - b), 0.05 * b) << file;
  }
}

TEST(Hausdorff, Examples) {
  EXPECT_EQ(hausdorff_distance({}, {}), 0.0);
  EXPECT_TRUE(std::isinf(hausdorff_distance({{0, 1}}, {})));
  EXPECT_NEAR(hausdorff_distance({{0, 0.5}}, {{0.01, 0.48}}), 0.02, 1e-15);
  EXPECT_NEAR(hausdorff_distance({{0, 1}}, {{0, 0.2}, {0.8, 1}}), 0.3, 1e-15);
  EXPECT_NEAR(hausdorff_distance({{0, 0.2}, {0.8, 1}}, {{0, 1}}), 0.3, 1e-15);
}

TEST(Assumption1, Detector) {
  const auto off = check_assumption1(testing::assumption1(), GridSpec::defaults(1));
  ASSERT_FALSE(off.empty());
  EXPECT_TRUE(std::any_of(off.begin(), off.end(),
                          [](const auto& q) { return q[0] >= -1.0 && q[0] <= -0.4; }));
  EXPECT_TRUE(check_assumption1(testing::damped(), GridSpec::defaults(1)).empty());
  EXPECT_TRUE(check_assumption1(ParamPolynomial::parse("s + q", 1), GridSpec::defaults(1)).empty());
}

TEST(Assumption2, ExactDerivativeAbscissaIsTight) {
  EXPECT_TRUE(check_assumption2_grid(testing::damped(), poly1("-q1"), GridSpec::defaults(1)).empty());
  EXPECT_TRUE(check_assumption2_grid(testing::explgl1(), poly1("-10*q1^2 + 1/2"),
                                     GridSpec::defaults(1))
                  .empty());
}

TEST(Assumption2, LooseStageOneIsFlagged) {
  // a_p = a_p' = -q on the complex-pair region q < sqrt(2) - 1 only.
  const auto off = check_assumption2_grid(testing::damped(), poly1("-q1 + 1/100"),
                                          GridSpec::defaults(1));
  ASSERT_FALSE(off.empty());
  for (const auto& q : off) {
    EXPECT_GT(q[0], -1.0 - 1e-12);
    EXPECT_LT(q[0], std::sqrt(2.0) - 1.0 + 1e-3);
  }
}

TEST(Assumption2, CubicStageOneOffenders) {
  const auto p = testing::cubic();
  const auto stage1 = upper_abscissa(derivative_in_s(p), 4);
  const auto off = check_assumption2_grid(p, stage1.approx.poly, GridSpec::defaults(1));
  const auto near = [&](double c, double r) {
    return std::any_of(off.begin(), off.end(), [&](const auto& q) { return std::abs(q[0] - c) <= r; });
  };
  EXPECT_TRUE(near(-0.5, 0.1));
  EXPECT_TRUE(near(0.0, 0.01));
}

}  // namespace
}  // namespace abscissa
