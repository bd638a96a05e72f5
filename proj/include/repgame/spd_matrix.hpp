#pragma once

#include <Eigen/Core>

namespace repgame {

// Symmetric positive semidefinite matrix with a cached, deterministically
// ordered eigendecomposition.  Eigenvalues are non-increasing; each
// eigenvector is oriented so that its largest-magnitude coordinate is
// positive (first such coordinate on ties).
class SpdMatrix {
 public:
  explicit SpdMatrix(const Eigen::MatrixXd& a);

  static SpdMatrix from_diagonal(const Eigen::VectorXd& diag);
  static SpdMatrix identity(int d);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Eigen::MatrixXd& matrix() const { return mat_; }
  const Eigen::VectorXd& eigenvalues() const { return evals_; }
  const Eigen::MatrixXd& eigenvectors() const { return evecs_; }

  double lambda_max() const { return evals_(0); }
  double lambda_min() const { return evals_(dim() - 1); }
  double trace() const { return mat_.trace(); }

  bool strictly_pd() const;

  Eigen::MatrixXd sqrt() const;
  Eigen::MatrixXd inv_sqrt() const;  // throws IllConditioned near singularity
  Eigen::MatrixXd inverse() const;   // same restriction

 private:
  SpdMatrix() = default;
  void finalize_order_and_signs();
  void validate() const;

  Eigen::MatrixXd mat_;
  Eigen::VectorXd evals_;
  Eigen::MatrixXd evecs_;
};

}  // namespace repgame
