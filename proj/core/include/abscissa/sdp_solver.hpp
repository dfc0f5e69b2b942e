#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "abscissa/sdp_problem.hpp"

namespace abscissa {

struct SolverConfig {
  int max_iters = 200;
  double gap_tol = 1e-8;
  double feas_tol = 1e-8;
  /// Fraction of the distance to the PSD boundary taken per step.
  double step_frac = 0.98;
  /// X0 = S0 = init_scale * I.
  double init_scale = 1.0;
  /// Adds trace_weight * tr(X_k) to the objective of every block. Zero keeps
  /// the problem as given; a tiny positive value bounds the optimal face when
  /// the dual lacks an interior point.
  double trace_weight = 0.0;
  /// Emit one line per iteration through the library log sink.
  bool log = false;
};

enum class SolverStatus { Optimal, NearOptimal, Infeasible, Unbounded, Stalled, MaxIterations };

std::string to_string(SolverStatus s);

struct Residuals {
  double primal = 0.0;
  double dual = 0.0;
  double gap = 0.0;
};

struct SdpSolution {
  SolverStatus status = SolverStatus::Stalled;
  std::vector<Eigen::MatrixXd> psd_values;
  Eigen::VectorXd free_values;
  Eigen::VectorXd dual_values;
  /// Dual slack matrix per block.
  std::vector<Eigen::MatrixXd> dual_slacks;
  /// Objectives of the problem as stored (minimization form).
  double objective_primal = 0.0;
  double objective_dual = 0.0;
  Residuals residuals;
  int iterations = 0;
};

/// Primal-dual interior point method (HKM direction, Mehrotra predictor-
/// corrector) with free variables handled by a nullspace elimination of the
/// augmented Newton system. Deterministic.
SdpSolution solve(const SdpProblem& problem, const SolverConfig& config = {});

/// Residuals of an arbitrary point, measured on the unscaled problem with the
/// block costs shifted by trace_weight * I.
Residuals measure_residuals(const SdpProblem& problem, const std::vector<Eigen::MatrixXd>& X,
                            const Eigen::VectorXd& x, const Eigen::VectorXd& y,
                            const std::vector<Eigen::MatrixXd>& S, double trace_weight = 0.0);

}  // namespace abscissa
