#include "repgame/spd_matrix.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <Eigen/Eigenvalues>

#include "repgame/errors.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

namespace {

void check_symmetry(const Eigen::MatrixXd& a) {
  if (a.rows() != a.cols() || a.rows() < 1) {
    throw DimensionError("SpdMatrix: input must be square and non-empty");
  }
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = i + 1; j < a.cols(); ++j) {
      const double scale = std::max({1.0, std::abs(a(i, j)), std::abs(a(j, i))});
      if (std::abs(a(i, j) - a(j, i)) > tol::kSymmetryRel * scale) {
        throw DimensionError("SpdMatrix: input is not symmetric");
      }
    }
  }
  if (!a.allFinite()) {
    throw DimensionError("SpdMatrix: input has non-finite entries");
  }
}

}  // namespace

SpdMatrix::SpdMatrix(const Eigen::MatrixXd& a) {
  check_symmetry(a);
  mat_ = 0.5 * (a + a.transpose());

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(mat_);
  if (es.info() != Eigen::Success) {
    throw IllConditioned("SpdMatrix: eigendecomposition failed");
  }
  // Eigen returns ascending order; flip to non-increasing.
  evals_ = es.eigenvalues().reverse();
  evecs_ = es.eigenvectors().rowwise().reverse();

  const double top = std::max(evals_(0), 0.0);
  const double floor = -tol::kPsdSlackRel * std::max(top, 1e-300);
  for (Eigen::Index i = 0; i < evals_.size(); ++i) {
    if (evals_(i) < floor) {
      throw IllConditioned("SpdMatrix: input is not positive semidefinite");
    }
    if (evals_(i) < 0.0) evals_(i) = 0.0;
  }

  finalize_order_and_signs();
  validate();
}

SpdMatrix SpdMatrix::from_diagonal(const Eigen::VectorXd& diag) {
  const int d = static_cast<int>(diag.size());
  if (d < 1) throw DimensionError("SpdMatrix: empty diagonal");
  for (int i = 0; i < d; ++i) {
    if (!std::isfinite(diag(i)) || diag(i) < 0.0) {
      throw IllConditioned("SpdMatrix: diagonal must be finite and nonnegative");
    }
  }
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return diag(i) > diag(j); });

  SpdMatrix out;
  out.mat_ = diag.asDiagonal();
  out.evals_.resize(d);
  out.evecs_ = Eigen::MatrixXd::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    out.evals_(k) = diag(order[k]);
    out.evecs_(order[k], k) = 1.0;
  }
  return out;
}

SpdMatrix SpdMatrix::identity(int d) {
  return from_diagonal(Eigen::VectorXd::Ones(d));
}

void SpdMatrix::finalize_order_and_signs() {
  const int d = dim();
  std::vector<int> order(d);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return evals_(i) > evals_(j); });

  Eigen::VectorXd vals(d);
  Eigen::MatrixXd vecs(d, d);
  for (int k = 0; k < d; ++k) {
    vals(k) = evals_(order[k]);
    vecs.col(k) = evecs_.col(order[k]);
    int arg = 0;
    double best = std::abs(vecs(0, k));
    for (int i = 1; i < d; ++i) {
      const double v = std::abs(vecs(i, k));
      if (v > best) {
        best = v;
        arg = i;
      }
    }
    if (vecs(arg, k) < 0.0) vecs.col(k) = -vecs.col(k);
  }
  evals_ = vals;
  evecs_ = vecs;
}

void SpdMatrix::validate() const {
  const int d = dim();
  const double ortho =
      (evecs_.transpose() * evecs_ - Eigen::MatrixXd::Identity(d, d)).norm();
  if (ortho > tol::kOrthonormality) {
    throw IllConditioned("SpdMatrix: eigenbasis lost orthonormality");
  }
  const Eigen::MatrixXd rebuilt =
      evecs_ * evals_.asDiagonal() * evecs_.transpose();
  const double scale = std::max(mat_.norm(), 1e-300);
  if ((rebuilt - mat_).norm() > tol::kReconstructionRel * scale) {
    throw IllConditioned("SpdMatrix: eigendecomposition does not reconstruct");
  }
}

bool SpdMatrix::strictly_pd() const {
  return lambda_min() > tol::kStrictPdRel * std::max(lambda_max(), 0.0);
}

Eigen::MatrixXd SpdMatrix::sqrt() const {
  return evecs_ * evals_.cwiseSqrt().asDiagonal() * evecs_.transpose();
}

Eigen::MatrixXd SpdMatrix::inv_sqrt() const {
  if (!strictly_pd()) {
    throw IllConditioned("SpdMatrix: inverse square root of a near-singular matrix");
  }
  return evecs_ * evals_.cwiseSqrt().cwiseInverse().asDiagonal() *
         evecs_.transpose();
}

Eigen::MatrixXd SpdMatrix::inverse() const {
  if (!strictly_pd()) {
    throw IllConditioned("SpdMatrix: inverse of a near-singular matrix");
  }
  return evecs_ * evals_.cwiseInverse().asDiagonal() * evecs_.transpose();
}

}  // namespace repgame
