#pragma once

#include <Eigen/Core>

namespace repgame::lp {

enum class Status { kOptimal, kInfeasible, kUnbounded, kIterationLimit };

struct Result {
  Status status = Status::kIterationLimit;
  Eigen::VectorXd x;     // primal solution, length n
  Eigen::VectorXd dual;  // multipliers of the equality rows, length m
  double objective = 0.0;
};

// min c^T x  subject to  A x = b, x >= 0.
// Dense two-phase primal simplex with Bland's rule; intended for the small
// problems this library produces (tens of rows).  Redundant rows are
// tolerated (their artificials stay basic at zero).
Result solve_standard(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                      const Eigen::VectorXd& c, int max_iters = 50000);

struct FeasResult {
  bool feasible = false;
  Eigen::VectorXd x;           // a feasible point when feasible
  Eigen::VectorXd dual;        // phase-1 duals (Farkas certificate otherwise)
  double infeasibility = 0.0;  // phase-1 objective
};

// Finds x >= 0 with A x = b, or reports the residual infeasibility along
// with duals usable for pricing new columns.
FeasResult solve_feasibility(const Eigen::MatrixXd& a, const Eigen::VectorXd& b,
                             int max_iters = 50000);

}  // namespace repgame::lp
