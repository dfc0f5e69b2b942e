#include <benchmark/benchmark.h>

#include "abscissa/esf.hpp"
#include "abscissa/hierarchy.hpp"
#include "abscissa/moments.hpp"
#include "abscissa/oracle.hpp"
#include "abscissa/sdp_solver.hpp"
#include "abscissa/sos_gram.hpp"

namespace {

using namespace abscissa;

const ParamPolynomial& damped() {
  static const ParamPolynomial p = ParamPolynomial::parse("s^2 + 2*q1*s + 1 - 2*q1", 1);
  return p;
}

const ParamPolynomial& cubic() {
  static const ParamPolynomial p =
      ParamPolynomial::parse("s^3 + 1/2*s^2 + q1^2*s + (q1 - 1/2)*q1*(q1 + 1/2)", 1);
  return p;
}

void BM_CompileUpper(benchmark::State& state) {
  const auto tpl = upper_template(damped());
  const int d = static_cast<int>(state.range(0));
  for (auto _ : state) {
    auto problem = compile(tpl, d);
    benchmark::DoNotOptimize(problem.num_rows);
  }
}
BENCHMARK(BM_CompileUpper)->DenseRange(2, 6)->Unit(benchmark::kMillisecond);

void BM_EsfConstraints(benchmark::State& state) {
  const ParamPolynomial p = state.range(0) == 3 ? cubic() : damped();
  for (auto _ : state) {
    auto sys = esf_constraints(p);
    benchmark::DoNotOptimize(sys);
  }
}
BENCHMARK(BM_EsfConstraints)->Arg(2)->Arg(3);

void BM_SolveUpper(benchmark::State& state) {
  const auto problem = compile(upper_template(damped()), static_cast<int>(state.range(0)));
  SolverConfig cfg = hierarchy_solver_config();
  for (auto _ : state) {
    auto sol = solve(problem, cfg);
    benchmark::DoNotOptimize(sol.objective_primal);
  }
  state.counters["rows"] = problem.num_rows;
}
BENCHMARK(BM_SolveUpper)->DenseRange(2, 5)->Unit(benchmark::kMillisecond);

void BM_UpperDriver(benchmark::State& state) {
  for (auto _ : state) {
    auto cert = upper_abscissa(cubic(), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(cert.approx.objective);
  }
}
BENCHMARK(BM_UpperDriver)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_EsfDriver(benchmark::State& state) {
  for (auto _ : state) {
    auto cert = lower_abscissa_esf(damped(), static_cast<int>(state.range(0)));
    benchmark::DoNotOptimize(cert.approx.objective);
  }
}
BENCHMARK(BM_EsfDriver)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_RootsOnGrid(benchmark::State& state) {
  const auto& p = state.range(0) == 3 ? cubic() : damped();
  const GridSpec grid = GridSpec::defaults(1);
  for (auto _ : state) {
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) acc += abscissa_oracle(p, grid.point(i));
    benchmark::DoNotOptimize(acc);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<int64_t>(grid.size()));
}
BENCHMARK(BM_RootsOnGrid)->Arg(2)->Arg(3)->Unit(benchmark::kMillisecond);

void BM_GapReport(benchmark::State& state) {
  static const Certificate cert = upper_abscissa(damped(), 4);
  const GridSpec grid = GridSpec::defaults(1);
  for (auto _ : state) {
    auto report = gap_report(cert.approx, damped(), grid);
    benchmark::DoNotOptimize(report.l1_gap);
  }
}
BENCHMARK(BM_GapReport)->Unit(benchmark::kMillisecond);

void BM_IntegrateOverBox(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const auto basis = monomial_basis(n, 8);
  MultiPoly f(param_names(n));
  for (std::size_t k = 0; k < basis.size(); ++k) f.add_term(basis[k], Rational(static_cast<long>(k % 7) - 3, 5));
  for (auto _ : state) {
    auto v = integrate_over_box(f);
    benchmark::DoNotOptimize(v);
  }
}
BENCHMARK(BM_IntegrateOverBox)->Arg(1)->Arg(2)->Arg(3);

}  // namespace

BENCHMARK_MAIN();
