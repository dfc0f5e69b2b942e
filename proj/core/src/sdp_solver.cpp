#include "abscissa/sdp_solver.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <optional>
#include <stdexcept>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "abscissa/log.hpp"

namespace abscissa {

std::string to_string(SolverStatus s) {
  switch (s) {
    case SolverStatus::Optimal: return "optimal";
    case SolverStatus::NearOptimal: return "near_optimal";
    case SolverStatus::Infeasible: return "infeasible";
    case SolverStatus::Unbounded: return "unbounded";
    case SolverStatus::Stalled: return "stalled";
    case SolverStatus::MaxIterations: return "max_iterations";
  }
  return "unknown";
}

namespace {

using Blocks = std::vector<Eigen::MatrixXd>;

struct Pair {
  int c;
  int d;
  double v;
};

struct BlockEntry {
  int row;
  int i;
  int j;
  double v;
};

// Data after row scaling, in the layout the iteration needs.
struct Data {
  int m = 0;
  int nf = 0;
  std::vector<int> dims;
  Eigen::VectorXd row_scale;
  Eigen::VectorXd b;
  Eigen::MatrixXd B;
  Eigen::VectorXd c;
  Blocks C;
  std::vector<std::vector<BlockEntry>> entries;
  std::vector<std::vector<std::vector<Pair>>> row_pairs;
  std::vector<std::vector<int>> active_rows;
};

Blocks cost_blocks(const SdpProblem& p) {
  Blocks C;
  for (int n : p.block_dims) C.push_back(Eigen::MatrixXd::Zero(n, n));
  for (const auto& e : p.block_cost) {
    auto& Ck = C[static_cast<std::size_t>(e.block)];
    Ck(e.i, e.j) += e.value;
    if (e.i != e.j) Ck(e.j, e.i) += e.value;
  }
  return C;
}

Data prepare(const SdpProblem& p, double trace_weight) {
  Data D;
  D.m = p.num_rows;
  D.nf = p.num_free;
  D.dims = p.block_dims;
  const std::size_t nb = p.block_dims.size();

  Eigen::VectorXd row_max = Eigen::VectorXd::Zero(D.m);
  for (const auto& e : p.entries) row_max(e.row) = std::max(row_max(e.row), std::abs(e.value));
  D.row_scale = Eigen::VectorXd::Ones(D.m);
  for (int r = 0; r < D.m; ++r) {
    if (row_max(r) > 0) D.row_scale(r) = 1.0 / row_max(r);
  }

  D.b = p.rhs.cwiseProduct(D.row_scale);
  D.B = Eigen::MatrixXd::Zero(D.m, D.nf);
  D.c = p.free_cost;
  D.C = cost_blocks(p);
  for (auto& Ck : D.C) Ck.diagonal().array() += trace_weight;
  D.entries.assign(nb, {});
  D.row_pairs.assign(nb, std::vector<std::vector<Pair>>(static_cast<std::size_t>(D.m)));
  for (const auto& e : p.entries) {
    const double v = e.value * D.row_scale(e.row);
    if (e.block < 0) {
      D.B(e.row, e.i) += v;
      continue;
    }
    const auto k = static_cast<std::size_t>(e.block);
    D.entries[k].push_back({e.row, e.i, e.j, v});
    auto& pairs = D.row_pairs[k][static_cast<std::size_t>(e.row)];
    pairs.push_back({e.i, e.j, v});
    if (e.i != e.j) pairs.push_back({e.j, e.i, v});
  }
  D.active_rows.assign(nb, {});
  for (std::size_t k = 0; k < nb; ++k) {
    for (int r = 0; r < D.m; ++r) {
      if (!D.row_pairs[k][static_cast<std::size_t>(r)].empty()) D.active_rows[k].push_back(r);
    }
  }
  return D;
}

// sum_k <A_rk, Y_k> for every row r; Y_k need not be symmetric.
Eigen::VectorXd apply_A(const std::vector<std::vector<BlockEntry>>& entries, int m,
                        const Blocks& Y) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(m);
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const auto& Yk = Y[k];
    for (const auto& e : entries[k]) {
      out(e.row) += e.i == e.j ? e.v * Yk(e.i, e.i) : e.v * (Yk(e.i, e.j) + Yk(e.j, e.i));
    }
  }
  return out;
}

Blocks apply_At(const std::vector<std::vector<BlockEntry>>& entries, const std::vector<int>& dims,
                const Eigen::VectorXd& y) {
  Blocks out;
  for (int n : dims) out.push_back(Eigen::MatrixXd::Zero(n, n));
  for (std::size_t k = 0; k < entries.size(); ++k) {
    auto& Ok = out[k];
    for (const auto& e : entries[k]) {
      const double v = e.v * y(e.row);
      Ok(e.i, e.j) += v;
      if (e.i != e.j) Ok(e.j, e.i) += v;
    }
  }
  return out;
}

double inner(const Blocks& A, const Blocks& B) {
  double s = 0.0;
  for (std::size_t k = 0; k < A.size(); ++k) s += A[k].cwiseProduct(B[k]).sum();
  return s;
}

Eigen::MatrixXd sym(const Eigen::MatrixXd& A) { return 0.5 * (A + A.transpose()); }

// M(r,s) = sum_k tr(A_rk X_k A_sk W_k).
Eigen::MatrixXd schur(const Data& D, const Blocks& X, const Blocks& W) {
  Eigen::MatrixXd M = Eigen::MatrixXd::Zero(D.m, D.m);
  for (std::size_t k = 0; k < D.dims.size(); ++k) {
    const auto& Xk = X[k];
    const auto& Wk = W[k];
    const auto& rows = D.active_rows[k];
    const auto& pairs = D.row_pairs[k];
    for (std::size_t ri = 0; ri < rows.size(); ++ri) {
      const auto& pr = pairs[static_cast<std::size_t>(rows[ri])];
      for (std::size_t si = ri; si < rows.size(); ++si) {
        const auto& ps = pairs[static_cast<std::size_t>(rows[si])];
        double sum = 0.0;
        for (const auto& e : pr) {
          double inner_sum = 0.0;
          for (const auto& f : ps) inner_sum += f.v * Xk(e.d, f.c) * Wk(f.d, e.c);
          sum += e.v * inner_sum;
        }
        M(rows[ri], rows[si]) += sum;
      }
    }
  }
  M.triangularView<Eigen::StrictlyLower>() = M.transpose().triangularView<Eigen::StrictlyLower>();
  return M;
}

// Largest alpha with X + alpha dX PSD, or +inf.
double max_step(const Eigen::LLT<Eigen::MatrixXd>& chol, const Eigen::MatrixXd& dX) {
  const Eigen::MatrixXd L = chol.matrixL();
  Eigen::MatrixXd T = L.triangularView<Eigen::Lower>().solve(dX);
  T = L.triangularView<Eigen::Lower>().solve(T.transpose()).transpose();
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sym(T), Eigen::EigenvaluesOnly);
  const double lmin = es.eigenvalues()(0);
  return lmin < 0 ? -1.0 / lmin : std::numeric_limits<double>::infinity();
}

// Constant part of the nullspace elimination of the free variables.
struct FreeElimination {
  int rank = 0;
  std::vector<int> selected;
  Eigen::MatrixXd Q1;
  Eigen::MatrixXd Q2;
  Eigen::MatrixXd R;
};

FreeElimination eliminate_free(const Data& D) {
  FreeElimination F;
  if (D.nf == 0) {
    F.Q2 = Eigen::MatrixXd::Identity(D.m, D.m);
    F.Q1 = Eigen::MatrixXd(D.m, 0);
    return F;
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(D.B);
  qr.setThreshold(1e-9);
  F.rank = static_cast<int>(qr.rank());
  const Eigen::MatrixXd Q = qr.householderQ();
  F.Q1 = Q.leftCols(F.rank);
  F.Q2 = Q.rightCols(D.m - F.rank);
  F.R = qr.matrixR().topLeftCorner(F.rank, F.rank).triangularView<Eigen::Upper>();
  const auto& perm = qr.colsPermutation().indices();
  for (int i = 0; i < F.rank; ++i) F.selected.push_back(perm(i));
  return F;
}

struct Direction {
  Blocks dX;
  Eigen::VectorXd dx;
  Eigen::VectorXd dy;
  Blocks dS;
};

struct NewtonSystem {
  const Data& D;
  const FreeElimination& F;
  const Blocks& X;
  const Blocks& W;
  const Eigen::MatrixXd& M;
  Eigen::MatrixXd K;
  Eigen::LLT<Eigen::MatrixXd> llt;
  Eigen::VectorXd rs;

  NewtonSystem(const Data& d, const FreeElimination& f, const Blocks& x, const Blocks& w,
               const Eigen::MatrixXd& m, const Eigen::VectorXd& rf)
      : D(d), F(f), X(x), W(w), M(m) {
    K = F.Q2.transpose() * (M * F.Q2);
    K = sym(K);
    llt.compute(K);
    if (llt.info() != Eigen::Success && K.rows() > 0) {
      // Shift until the factorization goes through; refinement against the
      // unshifted K recovers most of the lost accuracy.
      const double base = std::max(K.diagonal().cwiseAbs().maxCoeff(), 1e-300);
      for (double shift = 1e-14; shift < 1.0; shift *= 100.0) {
        Eigen::MatrixXd Ks = K;
        Ks.diagonal().array() += shift * base;
        llt.compute(Ks);
        if (llt.info() == Eigen::Success) break;
      }
    }
    rs.resize(F.rank);
    for (int i = 0; i < F.rank; ++i) rs(i) = rf(F.selected[static_cast<std::size_t>(i)]);
  }

  Eigen::VectorXd solve_reduced(const Eigen::VectorXd& rhs) const {
    Eigen::VectorXd z = llt.solve(rhs);
    for (int round = 0; round < 3; ++round) {
      const Eigen::VectorXd r = rhs - K * z;
      if (r.norm() <= 1e-14 * (1.0 + rhs.norm())) break;
      z += llt.solve(r);
    }
    return z;
  }

  // [M B; B^T 0] [dy; xs] = [h; r] restricted to the selected free columns.
  void solve_augmented(const Eigen::VectorXd& h, const Eigen::VectorXd& r, Eigen::VectorXd& dy,
                       Eigen::VectorXd& xs) const {
    dy = Eigen::VectorXd::Zero(D.m);
    if (F.rank > 0) dy = F.Q1 * F.R.transpose().triangularView<Eigen::Lower>().solve(r);
    if (F.Q2.cols() > 0) dy += F.Q2 * solve_reduced(F.Q2.transpose() * (h - M * dy));
    xs = Eigen::VectorXd::Zero(F.rank);
    if (F.rank > 0) {
      xs = F.R.triangularView<Eigen::Upper>().solve(F.Q1.transpose() * (h - M * dy));
    }
  }

  Direction solve(const Blocks& Rc, const Eigen::VectorXd& Rp, const Blocks& Rd) const {
    const std::size_t nb = D.dims.size();
    Blocks G(nb);
    for (std::size_t k = 0; k < nb; ++k) G[k] = (Rc[k] - X[k] * Rd[k]) * W[k];
    const Eigen::VectorXd h = Rp - apply_A(D.entries, D.m, G);

    Direction dir;
    Eigen::VectorXd xs;
    solve_augmented(h, rs, dir.dy, xs);
    for (int round = 0; round < 2; ++round) {
      Eigen::VectorXd r1 = h - M * dir.dy;
      Eigen::VectorXd r2 = rs;
      if (F.rank > 0) {
        r1 -= F.Q1 * (F.R.triangularView<Eigen::Upper>() * xs);
        r2 -= F.R.transpose().triangularView<Eigen::Lower>() * (F.Q1.transpose() * dir.dy);
      }
      if (r1.norm() + r2.norm() <= 1e-14 * (1.0 + h.norm() + rs.norm())) break;
      Eigen::VectorXd cy, cx;
      solve_augmented(r1, r2, cy, cx);
      dir.dy += cy;
      xs += cx;
    }
    dir.dx = Eigen::VectorXd::Zero(D.nf);
    for (int i = 0; i < F.rank; ++i) dir.dx(F.selected[static_cast<std::size_t>(i)]) = xs(i);

    const Blocks Aty = apply_At(D.entries, D.dims, dir.dy);
    dir.dS.resize(nb);
    dir.dX.resize(nb);
    for (std::size_t k = 0; k < nb; ++k) {
      dir.dS[k] = Rd[k] - Aty[k];
      dir.dX[k] = sym((Rc[k] - X[k] * dir.dS[k]) * W[k]);
    }
    return dir;
  }
};

struct Iterate {
  Blocks X;
  Eigen::VectorXd x;
  Eigen::VectorXd y;
  Blocks S;
};

SdpSolution package(const SdpProblem& p, const Data& D, const Iterate& it, SolverStatus status,
                    int iters, double trace_weight) {
  SdpSolution sol;
  sol.status = status;
  sol.psd_values = it.X;
  sol.free_values = it.x;
  sol.dual_values = it.y.cwiseProduct(D.row_scale);
  sol.dual_slacks = it.S;
  sol.objective_primal = inner(D.C, it.X) + D.c.dot(it.x);
  sol.objective_dual = p.rhs.dot(sol.dual_values);
  sol.residuals = measure_residuals(p, it.X, it.x, sol.dual_values, it.S, trace_weight);
  sol.iterations = iters;
  return sol;
}

}  // namespace

Residuals measure_residuals(const SdpProblem& p, const Blocks& X, const Eigen::VectorXd& x,
                            const Eigen::VectorXd& y, const Blocks& S, double trace_weight) {
  Eigen::VectorXd rp = p.rhs;
  Blocks Rd = cost_blocks(p);
  for (auto& Rk : Rd) Rk.diagonal().array() += trace_weight;
  double cnorm = 0.0;
  for (const auto& Ck : Rd) cnorm += Ck.norm();
  Eigen::VectorXd rf = p.free_cost;
  for (const auto& e : p.entries) {
    if (e.block < 0) {
      rp(e.row) -= e.value * x(e.i);
      rf(e.i) -= e.value * y(e.row);
      continue;
    }
    const auto& Xk = X[static_cast<std::size_t>(e.block)];
    auto& Rk = Rd[static_cast<std::size_t>(e.block)];
    rp(e.row) -= e.i == e.j ? e.value * Xk(e.i, e.i) : e.value * (Xk(e.i, e.j) + Xk(e.j, e.i));
    Rk(e.i, e.j) -= e.value * y(e.row);
    if (e.i != e.j) Rk(e.j, e.i) -= e.value * y(e.row);
  }
  double dnorm = rf.norm();
  for (std::size_t k = 0; k < Rd.size(); ++k) dnorm += (Rd[k] - S[k]).norm();

  double pobj = inner(cost_blocks(p), X) + p.free_cost.dot(x);
  for (const auto& Xk : X) pobj += trace_weight * Xk.trace();
  Residuals r;
  r.primal = rp.norm() / (1.0 + p.rhs.norm());
  r.dual = dnorm / (1.0 + p.free_cost.norm() + cnorm);
  r.gap = std::abs(inner(X, S)) / (1.0 + std::abs(pobj));
  return r;
}

SdpSolution solve(const SdpProblem& problem, const SolverConfig& cfg) {
  problem.validate();
  const Data D = prepare(problem, cfg.trace_weight);
  const std::size_t nb = D.dims.size();
  int N = 0;
  for (int n : D.dims) N += n;
  const FreeElimination F = eliminate_free(D);

  Iterate it;
  for (int n : D.dims) {
    it.X.push_back(cfg.init_scale * Eigen::MatrixXd::Identity(n, n));
    it.S.push_back(cfg.init_scale * Eigen::MatrixXd::Identity(n, n));
  }
  it.x = Eigen::VectorXd::Zero(D.nf);
  it.y = Eigen::VectorXd::Zero(D.m);

  double cost_norm = D.c.norm();
  for (const auto& Ck : D.C) cost_norm += Ck.norm();
  const double rhs_norm = D.b.norm();
  constexpr double kDivergence = 1e8;

  auto score = [&](const Residuals& r) {
    return std::max({r.primal / cfg.feas_tol, r.dual / cfg.feas_tol, r.gap / cfg.gap_tol});
  };
  std::optional<Iterate> best;
  double best_score = std::numeric_limits<double>::infinity();
  SolverStatus status = SolverStatus::MaxIterations;
  int iter = 0;

  for (; iter < cfg.max_iters; ++iter) {
    const Residuals res =
        measure_residuals(problem, it.X, it.x, it.y.cwiseProduct(D.row_scale), it.S,
                          cfg.trace_weight);
    const double sc = score(res);
    const double pobj = inner(D.C, it.X) + D.c.dot(it.x);
    const double dobj = D.b.dot(it.y);
    if (!std::isfinite(sc) || !std::isfinite(pobj) || !std::isfinite(dobj)) {
      status = SolverStatus::Stalled;
      break;
    }
    if (sc < best_score) {
      best_score = sc;
      best = it;
    }
    if (sc <= 1.0) {
      status = SolverStatus::Optimal;
      break;
    }
    // A dual objective growing without bound while the cost stays fixed means
    // y / (b^T y) approaches a Farkas ray; symmetrically for the primal.
    // After 30 iterations a merely large multiplier norm is enough.
    const bool late = iter >= 30;
    const double xnorm = std::sqrt(inner(it.X, it.X)) + it.x.norm();
    if (dobj > kDivergence * (1.0 + cost_norm) ||
        (late && dobj > 1e8 && it.y.norm() > 1e10)) {
      status = SolverStatus::Infeasible;
      break;
    }
    if (pobj < -kDivergence * (1.0 + rhs_norm) || (late && pobj < -1e8 && xnorm > 1e10)) {
      status = SolverStatus::Unbounded;
      break;
    }

    Eigen::VectorXd Rp = D.b - apply_A(D.entries, D.m, it.X) - D.B * it.x;
    const Blocks Aty = apply_At(D.entries, D.dims, it.y);
    Blocks Rd(nb);
    for (std::size_t k = 0; k < nb; ++k) Rd[k] = D.C[k] - Aty[k] - it.S[k];
    const Eigen::VectorXd rf = D.c - D.B.transpose() * it.y;

    std::vector<Eigen::LLT<Eigen::MatrixXd>> cholX(nb), cholS(nb);
    Blocks W(nb);
    bool ok = true;
    for (std::size_t k = 0; k < nb && ok; ++k) {
      cholX[k].compute(it.X[k]);
      cholS[k].compute(it.S[k]);
      ok = cholX[k].info() == Eigen::Success && cholS[k].info() == Eigen::Success;
      if (ok) W[k] = sym(cholS[k].solve(Eigen::MatrixXd::Identity(D.dims[k], D.dims[k])));
    }
    if (!ok) {
      status = SolverStatus::Stalled;
      break;
    }
    const double mu = inner(it.X, it.S) / std::max(N, 1);

    const Eigen::MatrixXd M = schur(D, it.X, W);
    const NewtonSystem sys(D, F, it.X, W, M, rf);

    auto step_lengths = [&](const Direction& dir) {
      double ap = std::numeric_limits<double>::infinity();
      double ad = std::numeric_limits<double>::infinity();
      for (std::size_t k = 0; k < nb; ++k) {
        ap = std::min(ap, max_step(cholX[k], dir.dX[k]));
        ad = std::min(ad, max_step(cholS[k], dir.dS[k]));
      }
      return std::pair{ap, ad};
    };

    Blocks Rc(nb);
    for (std::size_t k = 0; k < nb; ++k) Rc[k] = -it.X[k] * it.S[k];
    const Direction aff = sys.solve(Rc, Rp, Rd);
    auto [ap_aff, ad_aff] = step_lengths(aff);
    ap_aff = std::min(1.0, ap_aff);
    ad_aff = std::min(1.0, ad_aff);
    double mu_aff = 0.0;
    for (std::size_t k = 0; k < nb; ++k) {
      mu_aff += (it.X[k] + ap_aff * aff.dX[k]).cwiseProduct(it.S[k] + ad_aff * aff.dS[k]).sum();
    }
    mu_aff /= std::max(N, 1);
    const double sigma = N > 0 ? std::clamp(std::pow(std::max(mu_aff, 0.0) / mu, 3.0), 0.0, 1.0)
                               : 0.0;

    for (std::size_t k = 0; k < nb; ++k) {
      Rc[k] = sigma * mu * Eigen::MatrixXd::Identity(D.dims[k], D.dims[k]) - it.X[k] * it.S[k] -
              aff.dX[k] * aff.dS[k];
    }
    const Direction dir = sys.solve(Rc, Rp, Rd);
    auto [ap, ad] = step_lengths(dir);
    ap = std::min(1.0, cfg.step_frac * ap);
    ad = std::min(1.0, cfg.step_frac * ad);

    if (log_level() >= LogLevel::Debug || cfg.log) {
      char line[256];
      std::snprintf(line, sizeof line, "iter %3d mu %.3e p_res %.3e d_res %.3e gap %.3e step_p %.3f step_d %.3f",
                    iter, mu, res.primal, res.dual, res.gap, ap, ad);
      if (cfg.log) {
        std::fprintf(stderr, "%s\n", line);
      } else {
        log_message(LogLevel::Debug, line);
      }
    }
    if (ap < 1e-12 && ad < 1e-12) {
      status = SolverStatus::Stalled;
      break;
    }

    for (std::size_t k = 0; k < nb; ++k) {
      it.X[k] = sym(it.X[k] + ap * dir.dX[k]);
      it.S[k] = sym(it.S[k] + ad * dir.dS[k]);
    }
    it.x += ap * dir.dx;
    it.y += ad * dir.dy;
  }

  if (status == SolverStatus::Optimal) return package(problem, D, it, status, iter, cfg.trace_weight);
  if (status == SolverStatus::Infeasible || status == SolverStatus::Unbounded) {
    return package(problem, D, it, status, iter, cfg.trace_weight);
  }
  if (best && best_score <= 100.0) {
    return package(problem, D, *best, SolverStatus::NearOptimal, iter, cfg.trace_weight);
  }
  return package(problem, D, best ? *best : it, status, iter, cfg.trace_weight);
}

}  // namespace abscissa
