// One PASS/FAIL line per acceptance criterion. Exit status is the number of
// failed criteria.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "abscissa/esf.hpp"
#include "abscissa/hierarchy.hpp"
#include "abscissa/oracle.hpp"
#include "abscissa/poly_parse.hpp"
#include "abscissa/problem_io.hpp"
#include "esf_fixtures.hpp"
#include "sdp_fixtures.hpp"
#include "test_support.hpp"

namespace abscissa {
namespace {

struct Verdict {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << what << "] ";
    }
  }
};

struct AcceptedRun {
  std::string label;
  double residual;
};
std::vector<AcceptedRun> g_runs;

Certificate record(const std::string& label, Certificate c) {
  g_runs.push_back({label, c.identity_residual});
  for (auto s = c.stage1; s; s = s->stage1) g_runs.push_back({label + " stage 1", s->identity_residual});
  return c;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

double oracle_integral(const ParamPolynomial& p, const GridSpec& g) {
  double s = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) s += g.weight(i) * abscissa_oracle(p, g.point(i));
  return s;
}

const GridSpec kGrid = GridSpec::defaults(1);
const double kKink = std::sqrt(2.0) - 1.0;

void criterion1(Verdict& v) {
  const auto p = testing::damped();
  const auto t0 = std::chrono::steady_clock::now();
  const auto c = record("upper damped d=5", upper_abscissa(p, 5));
  const double t = seconds_since(t0);
  const auto rep = gap_report(c.approx, p, kGrid);
  const auto& iv = rep.sublevel_approx.intervals;
  v.detail << "violations=" << rep.violation_count << " intervals=" << iv.size();
  if (iv.size() == 1) v.detail << " (" << iv[0].lo << ", " << iv[0].hi << ")";
  v.detail << " time=" << t << "s";
  v.require(rep.violation_count == 0, "v >= a - 1e-5 on grid");
  v.require(iv.size() == 1, "single sublevel interval");
  if (iv.size() == 1) {
    v.require(std::abs(iv[0].lo) <= 0.05 && std::abs(iv[0].hi - 0.5) <= 0.05, "endpoints within 0.05");
  }
  v.require(t <= 60.0, "runtime <= 60 s");
}

void criterion2(Verdict& v) {
  const auto p = testing::damped();
  const double integral = oracle_integral(p, kGrid);
  std::vector<double> obj, l1;
  for (int d = 2; d <= 5; ++d) {
    const auto c = record("upper damped d=" + std::to_string(d), upper_abscissa(p, d));
    obj.push_back(c.approx.objective);
    l1.push_back(gap_report(c.approx, p, kGrid).l1_gap);
  }
  v.detail << "integral(a)=" << integral << " objectives=";
  for (double o : obj) v.detail << o << " ";
  v.detail << "l1(2)=" << l1.front() << " l1(5)=" << l1.back();
  for (std::size_t k = 1; k < obj.size(); ++k) v.require(obj[k] <= obj[k - 1] + 1e-7, "nonincreasing");
  for (double o : obj) v.require(o >= integral - 1e-4, "objective >= integral(a) - 1e-4");
  v.require(l1.back() < l1.front(), "l1 gap d=5 < d=2");
}

void criterion3(Verdict& v) {
  const auto p = testing::damped();
  const auto t0 = std::chrono::steady_clock::now();
  double prev = -std::numeric_limits<double>::infinity();
  for (int d : {3, 5}) {
    const auto c = record("lower-esf damped d=" + std::to_string(d), lower_abscissa_esf(p, d));
    const auto rep = gap_report(c.approx, p, kGrid);
    const double loc = rep.linf_point.at(0);
    v.detail << "d=" << d << ": objective=" << c.approx.objective << " violations=" << rep.violation_count
             << " worst gap " << rep.linf_gap << " at q=" << loc << "; ";
    v.require(rep.violation_count == 0, "w <= a + 1e-5 at d=" + std::to_string(d));
    v.require(c.approx.objective >= prev - 1e-7, "objective nondecreasing");
    v.require(std::abs(loc - kKink) <= 0.1, "worst gap within 0.1 of sqrt(2)-1 at d=" + std::to_string(d));
    prev = c.approx.objective;
  }
  const double t = seconds_since(t0);
  v.detail << "time=" << t << "s";
  v.require(t <= 600.0, "runtime <= 10 min");
}

void criterion4(Verdict& v) {
  const auto p = testing::damped();
  const auto c = record("lower-gl damped d'=2 d=6", lower_abscissa_gl(p, 6, 2));
  const auto rep = gap_report(c.approx, p, kGrid);
  // Trapezoid over the grid nodes in [-1, 0.3].
  double l1 = 0.0;
  double prev_q = 0.0, prev_f = 0.0;
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    const auto q = kGrid.point(i);
    if (q[0] > 0.3 + 1e-12) break;
    const double f = std::abs(c.approx.poly.eval(q) - abscissa_oracle(p, q));
    if (i > 0) l1 += 0.5 * (q[0] - prev_q) * (f + prev_f);
    prev_q = q[0];
    prev_f = f;
  }
  const auto e = record("lower-gl explgl1 d'=1 d=6", lower_abscissa_gl(testing::explgl1(), 6, 1));
  const auto rep2 = gap_report(e.approx, testing::explgl1(), kGrid);
  v.detail << "damped: coarse violations=" << rep.coarse_violation_count << " l1[-1,0.3]=" << l1
           << "; explgl1: violations=" << rep2.violation_count;
  v.require(rep.coarse_violation_count == 0, "no violations at 1e-2 (damped)");
  v.require(l1 <= 0.05, "l1 gap over [-1, 0.3] <= 0.05");
  v.require(rep2.violation_count == 0, "no violations at 1e-5 (explgl1)");
}

void criterion5(Verdict& v) {
  const auto p = testing::cubic();
  const auto c = record("naive-lower cubic d=6", lower_minrealpart(p, 6));
  double over = -std::numeric_limits<double>::infinity();
  double gap = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < kGrid.size(); ++i) {
    const auto q = kGrid.point(i);
    const double w = c.approx.poly.eval(q);
    over = std::max(over, w - min_realpart_oracle(p, q));
    gap = std::max(gap, abscissa_oracle(p, q) - w);
  }
  v.detail << "max(w - min re)=" << over << " max(a - w)=" << gap;
  v.require(over <= 1e-5, "w <= min real part + 1e-5");
  v.require(gap >= 0.05, "max(a - w) >= 0.05");
}

void criterion6(Verdict& v) {
  const auto off = check_assumption1(testing::assumption1(), kGrid);
  int in_range = 0;
  for (const auto& q : off) in_range += (q[0] >= -1.0 && q[0] <= -0.4);
  const auto damped = check_assumption1(testing::damped(), kGrid);
  v.detail << "offenders=" << off.size() << " (in [-1,-0.4]: " << in_range
           << "), damped offenders=" << damped.size();
  v.require(in_range > 0, "nonempty intersection with [-1, -0.4]");
  v.require(damped.empty(), "empty for the damped oscillator");
}

void criterion7(Verdict& v) {
  for (int m : {3, 4}) {
    const auto p = testing::generic_esf_polynomial(m);
    const auto msgs = testing::display_mismatches(esf_constraints(p), testing::displayed_system(p));
    v.detail << "m=" << m << ": " << msgs.size() << " mismatches; ";
    for (const auto& s : msgs) v.require(false, "m=" + std::to_string(m) + " " + s);
  }
}

void criterion8(Verdict& v) {
  std::mt19937 rng(8);
  double worst_eq = 0.0, worst_sym = 0.0;
  for (const auto& file : testing::bundled_problem_files()) {
    const auto p = read_problem(testing::data_path(file)).polynomial();
    const auto sys = esf_constraints(p);
    const auto eqs = sys.equalities();
    for (int trial = 0; trial < 100; ++trial) {
      const auto q = testing::random_point(rng, p.num_params());
      const auto roots = roots_at(p, q);
      const auto pt = esf_point(sys, q, roots);
      for (const auto& e : eqs) worst_eq = std::max(worst_eq, std::abs(e.eval(pt)));
      std::vector<double> im, neg;
      for (const auto& z : roots) {
        im.push_back(z.imag());
        neg.push_back(-z.imag());
      }
      std::sort(im.begin(), im.end());
      std::sort(neg.begin(), neg.end());
      for (std::size_t k = 0; k < im.size(); ++k) worst_sym = std::max(worst_sym, std::abs(im[k] - neg[k]));
    }
  }
  v.detail << "max |Z_o equality|=" << worst_eq << " max conjugate asymmetry=" << worst_sym;
  v.require(worst_eq <= 1e-8, "equalities <= 1e-8");
  v.require(worst_sym <= 1e-9, "conjugate symmetry <= 1e-9");
}

PolyMatrix matrix(const std::vector<std::vector<std::string>>& rows) {
  PolyMatrix H;
  for (const auto& r : rows) {
    H.emplace_back();
    for (const auto& e : r) H.back().push_back(parse_poly(e, {"q1"}));
  }
  return H;
}

void criterion9(Verdict& v) {
  const auto c = record("hermite damped d=6",
                        hermite_inner(matrix({{"4*q1 - 8*q1^2", "0"}, {"0", "4*q1"}}), 6));
  const auto rep = gap_report(c.approx, testing::damped(), kGrid);
  const double h = hausdorff_distance(rep.sublevel_approx.intervals, {{0.0, 0.5}});
  const auto z = record("hermite zero d=3", hermite_inner(matrix({{"0"}}), 3));
  double zmax = 0.0;
  for (std::size_t i = 0; i < kGrid.size(); ++i) zmax = std::max(zmax, std::abs(z.approx.poly.eval(kGrid.point(i))));
  v.detail << "hausdorff=" << h << " max|g| for H=0: " << zmax;
  v.require(h <= 0.05, "{g > 0} within 0.05 Hausdorff of (0, 1/2)");
  v.require(zmax <= 1e-6, "H = 0 gives g = 0");
}

void criterion10(Verdict& v) {
  auto rel = [](double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); };
  const SdpSolution a = solve(testing::scalar_bound());
  const SdpSolution b = solve(testing::sos_of_square());
  const SdpSolution c = solve(testing::max_eigenvalue());
  const double hand = std::max({rel(a.objective_primal, 1.0), rel(b.objective_primal, 0.0),
                                rel(c.objective_primal, 3.0)});
  v.require(a.status == SolverStatus::Optimal && b.status == SolverStatus::Optimal &&
                c.status == SolverStatus::Optimal,
            "hand-checked examples solved");
  v.require(hand <= 1e-6, "hand-checked relative error <= 1e-6");

  std::mt19937 rng(2024);
  double planted = 0.0;
  int planted_ok = 0;
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = testing::planted(rng);
    const SdpSolution s = solve(inst.problem);
    planted_ok += s.status == SolverStatus::Optimal;
    planted = std::max(planted, rel(s.objective_primal, inst.optimum));
  }
  v.require(planted_ok == 20, "planted instances solved");
  v.require(planted <= 1e-6, "planted relative error <= 1e-6");

  double worst = 0.0;
  std::string worst_label;
  for (const auto& r : g_runs) {
    if (r.residual > worst) {
      worst = r.residual;
      worst_label = r.label;
    }
    v.require(r.residual <= 1e-6, "identity residual of " + r.label);
  }
  v.detail << "hand-checked max rel err=" << hand << " planted " << planted_ok << "/20 max rel err=" << planted
           << "; " << g_runs.size() << " hierarchy runs, max identity residual=" << worst << " (" << worst_label
           << ")";
}

void two_parameter(Verdict& v) {
  const auto p = testing::cubic_2param();
  const auto c = record("upper cubic_2param d=3", upper_abscissa(p, 3));
  const GridSpec g{2, 101, -1.0, 1.0};
  const auto rep = gap_report(c.approx, p, g);
  double sym = 0.0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (rep.sublevel_approx.mask[i] != rep.sublevel_oracle.mask[i]) sym += g.weight(i);
  }
  const double vol = rep.sublevel_oracle.volume;
  v.detail << "violations=" << rep.violation_count << " symmetric difference=" << sym
           << " oracle volume=" << vol << " ratio=" << (vol > 0 ? sym / vol : 0.0);
  v.require(rep.violation_count == 0, "v >= a - 1e-5 on 101x101");
  v.require(vol > 0 && sym <= 0.15 * vol, "symmetric difference <= 15% of oracle volume");
}

}  // namespace
}  // namespace abscissa

int main() {
  using namespace abscissa;
  const std::vector<std::pair<std::string, std::function<void(Verdict&)>>> criteria = {
      {"1 upper damped d=5", criterion1},
      {"2 upper sweep d=2..5", criterion2},
      {"3 lower-esf damped d=3,5", criterion3},
      {"4 lower-gl damped and explgl1", criterion4},
      {"5 naive lower cubic d=6", criterion5},
      {"6 assumption-1 detector", criterion6},
      {"7 esf displayed systems", criterion7},
      {"8 root identity and symmetry", criterion8},
      {"9 hermite inner region", criterion9},
      {"2-param upper cubic d=3", two_parameter},
      {"10 sdp solver suite and identity residuals", criterion10},
  };
  int failed = 0;
  for (const auto& [name, fn] : criteria) {
    Verdict v;
    try {
      fn(v);
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail << " [exception: " << e.what() << "]";
    }
    failed += !v.pass;
    std::printf("%s %s: %s\n", v.pass ? "PASS" : "FAIL", name.c_str(), v.detail.str().c_str());
    std::fflush(stdout);
  }
  return failed;
}
