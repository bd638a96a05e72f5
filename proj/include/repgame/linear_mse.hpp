#pragma once

#include <Eigen/Core>

#include "repgame/rng.hpp"
#include "repgame/spd_matrix.hpp"
#include "repgame/types.hpp"

namespace repgame {

// Rank of the least favorable prior over the ellipsoid, together with the
// candidate game value for every admissible support size.
struct EffectiveDimension {
  int value = 0;  // chosen support size, in (r, d]
  int r = 0;
  Eigen::VectorXd eigenvalues;      // spectrum the choice was made from
  Eigen::VectorXd support_regrets;  // entry k is the value at support r+1+k

  double regret_at(int ell) const { return support_regrets(ell - r - 1); }
  double regret() const { return regret_at(value); }
};

// Scans support sizes l = r+1..d of a positive non-increasing spectrum and
// returns the smallest maximizer of (l - r) / sum_{i<=l} 1/lambda_i.
EffectiveDimension effective_dimension(const Eigen::VectorXd& lambdas, int r);

struct PureSolution {
  Representation rep;       // d x r
  Eigen::VectorXd worst_f;  // ||f||_S = 1
  double regret = 0.0;
};

// Deterministic minimax representation for the linear MSE game over
// ||f||_S <= 1: value is the (r+1)-th eigenvalue of Sx^1/2 S Sx^1/2, the
// representation spans the top-r eigendirections pulled back by Sx^-1/2.
PureSolution solve_pure(const SpdMatrix& sigma_x, const SpdMatrix& s, int r);

struct MixedSolution {
  MixedRepresentation mixture;
  double regret = 0.0;
  Eigen::MatrixXd prior_covariance;  // second moment of the least favorable prior
  EffectiveDimension effective_dim;
  Eigen::VectorXd exclusion_marginals;  // coverage deficit per retained direction
};

// Randomized minimax representation.  The mixture leaves eigendirection i of
// Sx^1/2 S Sx^1/2 uncovered with probability proportional to 1/lambda_i over
// the retained support; its worst-case value improves on the pure solution
// whenever the spectrum is not flat at the cut.
MixedSolution solve_mixed(const SpdMatrix& sigma_x, const SpdMatrix& s, int r);

struct MarginalDecomposition {
  Eigen::MatrixXd columns;  // l x k with 0/1 entries, each column sums to l-r
  Eigen::VectorXd weights;  // convex coefficients
};

// Writes a vector b in [0,1]^l with sum l-r as a convex combination of 0/1
// vectors with exactly l-r ones, using at most l+1 vertices.  Greedy peeling
// first; on numerically stalled inputs falls back to an LP over the columns
// encountered, growing the column set by dual pricing.
MarginalDecomposition decompose_marginals(const Eigen::VectorXd& marginals, int r);

struct PcaSolution {
  Representation rep;  // top-r eigenvectors of sigma_x
  double regret = 0.0;
};

// Degenerate S = sigma_x case in which pure and mixed optima coincide with
// principal components; value is the trailing eigenvalue sum.
PcaSolution pca_solution(const SpdMatrix& sigma_x, int r);

// Draws functions with ||f||_S = 1 surely and E[f f^T] equal to the least
// favorable prior covariance of a mixed solution.
class PriorSampler {
 public:
  PriorSampler(const MixedSolution& sol, const SpdMatrix& s);

  Eigen::VectorXd draw(Rng& rng) const;

 private:
  Eigen::MatrixXd directions_;  // d x rank
  Eigen::VectorXd scales_;      // rank
};

Eigen::VectorXd least_favorable_prior_sample(const MixedSolution& sol,
                                             const SpdMatrix& s, Rng& rng);

}  // namespace repgame
