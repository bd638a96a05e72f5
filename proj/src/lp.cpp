#include "repgame/lp.hpp"

#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

#include "repgame/errors.hpp"
#include "repgame/tolerances.hpp"

namespace repgame::lp {

namespace {

constexpr double kEps = tol::kLpPivot;

struct Core {
  Eigen::MatrixXd a;       // m x (n + m), artificials appended
  Eigen::VectorXd b;       // >= 0
  std::vector<int> basis;  // size m
  std::vector<bool> flipped;  // rows negated to make b nonnegative
  int n = 0;               // real variables
  int m = 0;

  Eigen::VectorXd x_basic;  // values of basic variables
  Eigen::VectorXd y;        // duals for current costs

  // One simplex run for the given costs.  Artificials may leave but not
  // enter.  Returns kOptimal/kUnbounded/kIterationLimit.
  Status run(const Eigen::VectorXd& costs, int max_iters) {
    for (int iter = 0; iter < max_iters; ++iter) {
      Eigen::MatrixXd bmat(m, m);
      for (int i = 0; i < m; ++i) bmat.col(i) = a.col(basis[i]);
      Eigen::PartialPivLU<Eigen::MatrixXd> lu(bmat);

      x_basic = lu.solve(b);
      Eigen::VectorXd cb(m);
      for (int i = 0; i < m; ++i) cb(i) = costs(basis[i]);
      y = lu.transpose().solve(cb);

      // Bland: lowest-index improving column enters.
      int entering = -1;
      for (int j = 0; j < n; ++j) {
        bool is_basic = false;
        for (int i = 0; i < m; ++i) {
          if (basis[i] == j) {
            is_basic = true;
            break;
          }
        }
        if (is_basic) continue;
        const double reduced = costs(j) - y.dot(a.col(j));
        if (reduced < -kEps) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return Status::kOptimal;

      const Eigen::VectorXd w = lu.solve(a.col(entering));
      int leaving = -1;
      double best_ratio = 0.0;
      for (int i = 0; i < m; ++i) {
        if (w(i) > kEps) {
          const double ratio = std::max(x_basic(i), 0.0) / w(i);
          if (leaving < 0 || ratio < best_ratio - kEps ||
              (ratio < best_ratio + kEps && basis[i] < basis[leaving])) {
            leaving = i;
            best_ratio = ratio;
          }
        }
      }
      if (leaving < 0) return Status::kUnbounded;
      basis[leaving] = entering;
    }
    return Status::kIterationLimit;
  }

  Eigen::VectorXd primal() const {
    Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
    for (int i = 0; i < m; ++i) {
      if (basis[i] < n) x(basis[i]) = std::max(x_basic(i), 0.0);
    }
    return x;
  }

  // Duals in the caller's row orientation.
  Eigen::VectorXd dual_unflipped() const {
    Eigen::VectorXd out = y;
    for (int i = 0; i < m; ++i) {
      if (flipped[i]) out(i) = -out(i);
    }
    return out;
  }
};

Core make_core(const Eigen::MatrixXd& a_in, const Eigen::VectorXd& b_in) {
  if (a_in.rows() != b_in.size() || a_in.rows() < 1 || a_in.cols() < 1) {
    throw DimensionError("lp: inconsistent problem dimensions");
  }
  if (!a_in.allFinite() || !b_in.allFinite()) {
    throw LpFailure("lp: non-finite problem data");
  }
  Core core;
  core.m = static_cast<int>(a_in.rows());
  core.n = static_cast<int>(a_in.cols());
  core.a.resize(core.m, core.n + core.m);
  core.b = b_in;
  core.a.leftCols(core.n) = a_in;
  core.a.rightCols(core.m) = Eigen::MatrixXd::Identity(core.m, core.m);
  core.flipped.assign(core.m, false);
  for (int i = 0; i < core.m; ++i) {
    if (core.b(i) < 0.0) {
      core.b(i) = -core.b(i);
      core.a.row(i).head(core.n) = -core.a.row(i).head(core.n);
      core.flipped[i] = true;
    }
  }
  core.basis.resize(core.m);
  std::iota(core.basis.begin(), core.basis.end(), core.n);
  return core;
}

// Phase 1: drive sum of artificials to zero.  Returns the attained phase-1
// objective, with duals left in core.y.
Status phase_one(Core& core, int max_iters, double* obj) {
  Eigen::VectorXd costs = Eigen::VectorXd::Zero(core.n + core.m);
  costs.tail(core.m).setOnes();
  // During phase 1 every column (real ones) may enter; artificials start
  // basic and are never re-entered because their reduced cost is zero at
  // best once out.
  const Status st = core.run(costs, max_iters);
  *obj = 0.0;
  for (int i = 0; i < core.m; ++i) {
    if (core.basis[i] >= core.n) *obj += std::max(core.x_basic(i), 0.0);
  }
  return st;
}

}  // namespace

Result solve_standard(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                      const Eigen::VectorXd& c, int max_iters) {
  if (c.size() != a.cols()) {
    throw DimensionError("lp: cost vector length mismatch");
  }
  Core core = make_core(a, b);

  Result out;
  double phase1_obj = 0.0;
  Status st = phase_one(core, max_iters, &phase1_obj);
  if (st != Status::kOptimal) {
    out.status = st == Status::kUnbounded ? Status::kInfeasible : st;
    return out;
  }
  const double feas_scale = 1.0 + b.cwiseAbs().maxCoeff();
  if (phase1_obj > 1e-9 * feas_scale) {
    out.status = Status::kInfeasible;
    out.dual = core.dual_unflipped();
    out.objective = phase1_obj;
    return out;
  }

  Eigen::VectorXd costs = Eigen::VectorXd::Zero(core.n + core.m);
  costs.head(core.n) = c;
  st = core.run(costs, max_iters);
  out.status = st;
  if (st == Status::kOptimal) {
    out.x = core.primal();
    out.dual = core.dual_unflipped();
    out.objective = c.dot(out.x);
  }
  return out;
}

FeasResult solve_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             int max_iters) {
  Core core = make_core(a, b);
  FeasResult out;
  double phase1_obj = 0.0;
  const Status st = phase_one(core, max_iters, &phase1_obj);
  if (st != Status::kOptimal) {
    throw LpFailure("lp: feasibility phase did not terminate");
  }
  out.infeasibility = phase1_obj;
  out.dual = core.dual_unflipped();
  const double feas_scale = 1.0 + b.cwiseAbs().maxCoeff();
  out.feasible = phase1_obj <= 1e-9 * feas_scale;
  if (out.feasible) out.x = core.primal();
  return out;
}

}  // namespace repgame::lp
