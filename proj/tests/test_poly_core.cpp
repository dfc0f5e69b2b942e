#include <gtest/gtest.h>

#include <random>

#include "abscissa/esf.hpp"
#include "abscissa/multi_poly.hpp"
#include "abscissa/oracle.hpp"
#include "abscissa/param_polynomial.hpp"
#include "abscissa/poly_parse.hpp"
#include "esf_fixtures.hpp"
#include "test_support.hpp"

namespace abscissa {
namespace {

using testing::cubic;
using testing::cubic_2param;
using testing::damped;

const std::vector<std::string> kQ = {"q1"};
const std::map<std::string, std::string> kAlias = {{"q", "q1"}};

MultiPoly P(const std::string& text, const std::vector<std::string>& vars = kQ) {
  return parse_poly(text, vars, kAlias);
}

TEST(MultiPoly, DifferenceOfSquares) {
  EXPECT_EQ(P("q + 1") * P("q - 1"), P("q^2 - 1"));
}

TEST(MultiPoly, Eval) {
  EXPECT_DOUBLE_EQ(P("q^2 + 2*q - 1").eval({0.5}), 0.25);
}

TEST(MultiPoly, ExactRationalArithmetic) {
  const MultiPoly a = P("1/3*q + 2/7");
  const MultiPoly b = P("3*q - 1/2");
  EXPECT_EQ(a * b, P("q^2 + (6/7 - 1/6)*q - 1/7"));
  EXPECT_EQ((a - a).num_terms(), 0u);
  EXPECT_EQ(a.scaled(Rational(3)), P("q + 6/7"));
}

TEST(MultiPoly, MismatchedVariableSpacesThrow) {
  const MultiPoly a = P("q1");
  const MultiPoly b = parse_poly("x", {"x"});
  EXPECT_THROW(a + b, VariableSpaceMismatch);
  EXPECT_THROW(a * b, VariableSpaceMismatch);
  const auto both = a.embed({"q1", "x"}) + b.embed({"q1", "x"});
  EXPECT_EQ(both, parse_poly("q1 + x", {"q1", "x"}));
}

TEST(MultiPoly, Substitute) {
  const std::vector<std::string> v = {"q1", "x"};
  const MultiPoly f = parse_poly("x^2 + q1*x", v);
  const MultiPoly g = f.substitute(1, parse_poly("q1 + 1", v));
  EXPECT_EQ(g, parse_poly("2*q1^2 + 3*q1 + 1", v));
}

TEST(MultiPoly, GradedLexOrder) {
  GradedLexLess less;
  EXPECT_TRUE(less({0, 0}, {1, 0}));
  EXPECT_TRUE(less({1, 0}, {0, 2}));
}

TEST(PolyParse, AcceptsRationalsDecimalsAndParentheses) {
  EXPECT_EQ(P("0.5*q^2 - 3/4"), P("1/2*q*q - 0.75"));
  EXPECT_EQ(P("(q + 1)^2"), P("q^2 + 2*q + 1"));
  EXPECT_EQ(P(" 2 * q1 "), P("2*q"));
}

TEST(PolyParse, RejectsMalformedInput) {
  EXPECT_THROW(P("q +"), ParseError);
  EXPECT_THROW(P("q^"), ParseError);
  EXPECT_THROW(P("z"), ParseError);
  EXPECT_THROW(P("1/q"), ParseError);
  EXPECT_THROW(P("(q + 1"), ParseError);
}

TEST(ParamPolynomial, ParseAndCoefficients) {
  const auto p = damped();
  EXPECT_EQ(p.degree(), 2);
  const double q[] = {0.25};
  const auto c = p.coefficients_at(q);
  ASSERT_EQ(c.size(), 3u);
  EXPECT_DOUBLE_EQ(c[0], 0.5);
  EXPECT_DOUBLE_EQ(c[1], 0.5);
  EXPECT_DOUBLE_EQ(c[2], 1.0);
}

TEST(ParamPolynomial, RejectsNonMonic) {
  EXPECT_THROW(ParamPolynomial::parse("2*s^2 + 1", 1), std::invalid_argument);
  EXPECT_THROW(ParamPolynomial::parse("q*s^2 + s", 1), std::invalid_argument);
}

TEST(ComplexSplit, DampedOscillator) {
  const auto cs = complex_split(damped());
  const std::vector<std::string> v = {"q1", "x", "y"};
  EXPECT_EQ(cs.re, parse_poly("x^2 - y^2 + 2*q1*x + 1 - 2*q1", v));
  EXPECT_EQ(cs.im, parse_poly("2*x*y + 2*q1*y", v));
}

TEST(ComplexSplit, Identity) {
  const auto cs = complex_split(ParamPolynomial::parse("s", 1));
  const std::vector<std::string> v = {"q1", "x", "y"};
  EXPECT_EQ(cs.re, parse_poly("x", v));
  EXPECT_EQ(cs.im, parse_poly("y", v));
}

TEST(ComplexSplit, TwoParameterCubic) {
  const auto cs = complex_split(cubic_2param());
  const std::vector<std::string> v = {"q1", "q2", "x", "y"};
  EXPECT_EQ(cs.re, parse_poly("x^3 - 3*x*y^2 + (q1 + 3/2)*x^2 - (q1 + 3/2)*y^2 + q1^2*x + q1*q2", v));
  EXPECT_EQ(cs.im, parse_poly("-y^3 + 3*x^2*y + 2*(q1 + 3/2)*x*y + q1^2*y", v));
}

// p(q, x+iy) == re + i im exactly at random rational points.
TEST(ComplexSplit, ExactIdentityAtRandomRationalPoints) {
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> num(-20, 20);
  std::uniform_int_distribution<int> den(1, 9);
  for (const auto& p : {damped(), cubic(), cubic_2param(), testing::assumption1()}) {
    const auto cs = complex_split(p);
    const int n = p.num_params();
    for (int trial = 0; trial < 100; ++trial) {
      std::vector<Rational> pt;
      for (int k = 0; k < n + 2; ++k) {
        Rational r(num(rng), den(rng));
        r.canonicalize();
        pt.push_back(r);
      }
      const Rational x = pt[static_cast<std::size_t>(n)];
      const Rational y = pt[static_cast<std::size_t>(n + 1)];
      // Direct complex evaluation with rational real/imaginary parts.
      Rational re = 0, im = 0;
      for (int k = p.degree(); k >= 0; --k) {
        const Rational nre = re * x - im * y;
        const Rational nim = re * y + im * x;
        re = nre + p.coeff(k).evaluate<Rational>(std::span<const Rational>(pt.data(), static_cast<std::size_t>(n)));
        im = nim;
      }
      EXPECT_EQ(cs.re.evaluate<Rational>(pt), re);
      EXPECT_EQ(cs.im.evaluate<Rational>(pt), im);
    }
  }
}

TEST(ComplexSplit, DegreeBookkeeping) {
  for (const auto& p : {damped(), cubic(), cubic_2param(), testing::assumption1()}) {
    const auto cs = complex_split(p);
    const std::size_t n = static_cast<std::size_t>(p.num_params());
    int deg_xy = 0;
    for (const auto* f : {&cs.re, &cs.im}) {
      for (const auto& [e, c] : f->terms()) deg_xy = std::max(deg_xy, e[n] + e[n + 1]);
    }
    EXPECT_EQ(deg_xy, p.degree());
  }
}

TEST(Derivative, DampedOscillator) {
  const auto d = derivative_in_s(damped());
  EXPECT_EQ(d, ParamPolynomial::parse("s + q", 1));
  EXPECT_EQ(d.scale(), Rational(2));
}

TEST(Derivative, Explgl1) {
  EXPECT_EQ(derivative_in_s(testing::explgl1()), ParamPolynomial::parse("s + (20*q^2 - 1)/2", 1));
}

TEST(Derivative, Cubic) {
  const auto d = derivative_in_s(cubic());
  EXPECT_EQ(d, ParamPolynomial::parse("s^2 + 1/3*s + q^2/3", 1));
  EXPECT_EQ(d.degree(), 2);
  EXPECT_EQ(d.scale(), Rational(3));
}

TEST(Derivative, DegreeOneThrows) {
  EXPECT_THROW(derivative_in_s(ParamPolynomial::parse("s + q", 1)), DegreeTooLow);
}

// Gauss-Lucas: the derivative's abscissa never exceeds the polynomial's.
TEST(Derivative, GaussLucasOrdering) {
  GridSpec grid = GridSpec::defaults(1);
  grid.points = 1000;
  for (const auto& p : {damped(), cubic(), testing::explgl1(), testing::assumption1()}) {
    const auto dp = derivative_in_s(p);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const auto q = grid.point(i);
      EXPECT_LE(abscissa_oracle(dp, q), abscissa_oracle(p, q) + 1e-9) << "q=" << q[0];
    }
  }
}

TEST(Esf, DegreeTwo) {
  const auto sys = esf_constraints(damped());
  ASSERT_EQ(sys.vars, (std::vector<std::string>{"q1", "x1", "x2", "y2"}));
  const auto& v = sys.vars;
  ASSERT_EQ(sys.real_equalities.size(), 2u);
  EXPECT_EQ(sys.real_equalities[0], parse_poly("-2*q1 - (x1 + x2)", v));
  EXPECT_EQ(sys.real_equalities[1], parse_poly("1 - 2*q1 - (x1*x2 + y2^2)", v));
  ASSERT_EQ(sys.imag_equalities.size(), 1u);
  const MultiPoly im = parse_poly("(x1 - x2)*y2", v);
  EXPECT_TRUE(sys.imag_equalities[0] == im || sys.imag_equalities[0] == -im);
  ASSERT_EQ(sys.order_constraints.size(), 1u);
  EXPECT_EQ(sys.order_constraints[0], parse_poly("x2 - x1", v));
}

TEST(Esf, RequiresDegreeTwo) {
  EXPECT_THROW(esf_constraints(ParamPolynomial::parse("s + q", 1)), DegreeTooLow);
}

TEST(Esf, DegreeThreeDisplay) {
  const auto p = testing::generic_esf_polynomial(3);
  const auto sys = esf_constraints(p);
  for (const auto& msg : testing::display_mismatches(sys, testing::displayed_system(p))) ADD_FAILURE() << msg;
  EXPECT_EQ(sys.retained_y, (std::vector<int>{2, 3}));
}

TEST(Esf, DegreeFourDisplay) {
  const auto p = testing::generic_esf_polynomial(4);
  const auto sys = esf_constraints(p);
  for (const auto& msg : testing::display_mismatches(sys, testing::displayed_system(p))) ADD_FAILURE() << msg;
  EXPECT_EQ(sys.retained_y, (std::vector<int>{2, 4}));
}

// ESF root identity at the true roots of every bundled problem.
TEST(Esf, RootIdentityAtOracleRoots) {
  std::mt19937 rng(11);
  for (const auto& p : {damped(), cubic(), cubic_2param(), testing::explgl1(), testing::assumption1()}) {
    const auto sys = esf_constraints(p);
    const auto eqs = sys.equalities();
    for (int trial = 0; trial < 100; ++trial) {
      const auto q = testing::random_point(rng, p.num_params());
      const auto roots = roots_at(p, q);
      const auto pt = esf_point(sys, q, roots);
      for (const auto& e : eqs) EXPECT_LE(std::abs(e.eval(pt)), 1e-8);
      for (const auto& g : sys.order_constraints) EXPECT_GE(g.eval(pt), -1e-10);
    }
  }
}

}  // namespace
}  // namespace abscissa
