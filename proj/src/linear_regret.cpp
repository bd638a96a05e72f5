#include "repgame/linear_regret.hpp"

#include <cmath>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include "repgame/errors.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

void MixedRepresentation::validate() const {
  if (atoms.empty()) {
    throw DimensionError("MixedRepresentation: no atoms");
  }
  if (weights.size() != static_cast<Eigen::Index>(atoms.size())) {
    throw DimensionError("MixedRepresentation: weight/atom count mismatch");
  }
  const auto rows = atoms.front().rows();
  const auto cols = atoms.front().cols();
  for (const auto& a : atoms) {
    if (a.rows() != rows || a.cols() != cols) {
      throw DimensionError("MixedRepresentation: atom shapes disagree");
    }
    if (!a.allFinite()) {
      throw DimensionError("MixedRepresentation: atom has non-finite entries");
    }
  }
  double sum = 0.0;
  for (Eigen::Index j = 0; j < weights.size(); ++j) {
    if (!(weights(j) >= tol::kWeightFloor)) {
      throw DimensionError("MixedRepresentation: negative weight");
    }
    sum += weights(j);
  }
  if (std::abs(sum - 1.0) > tol::kWeightSum) {
    throw DimensionError("MixedRepresentation: weights do not sum to one");
  }
}

namespace {

void check_pair(const Representation& rep, const Eigen::VectorXd& f,
                const SpdMatrix& sigma_x) {
  if (rep.rows() != sigma_x.dim() || f.size() != sigma_x.dim()) {
    throw DimensionError("representation/function dimension mismatch");
  }
  if (rep.cols() < 1 || rep.cols() > rep.rows()) {
    throw DimensionError("representation must have 1 <= r <= d columns");
  }
  if (!rep.allFinite() || !f.allFinite()) {
    throw DimensionError("non-finite input");
  }
}

// Inverse of the (small, symmetric) normal-equation matrix, with an explicit
// conditioning gate.
Eigen::MatrixXd gated_inverse(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.info() != Eigen::Success) {
    throw SingularRepresentation("predictor fit: eigendecomposition failed");
  }
  const Eigen::VectorXd ev = es.eigenvalues();
  const double lo = ev(0);
  const double hi = ev(ev.size() - 1);
  if (!(lo > 0.0) || hi / lo >= tol::kConditionLimit) {
    throw SingularRepresentation("predictor fit: singular normal equations");
  }
  return es.eigenvectors() * ev.cwiseInverse().asDiagonal() *
         es.eigenvectors().transpose();
}

// Orthogonal projector onto the column space of a (possibly rank-deficient)
// matrix.  Evaluation must not reject degenerate atoms: the least-squares
// residual only depends on the column space.
Eigen::MatrixXd column_space_projector(const Eigen::MatrixXd& a) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(a, Eigen::ComputeThinU);
  const Eigen::VectorXd sv = svd.singularValues();
  const double cut = sv.size() > 0 ? sv(0) * tol::kRankRel : 0.0;
  int rank = 0;
  while (rank < sv.size() && sv(rank) > cut) ++rank;
  if (rank == 0) return Eigen::MatrixXd::Zero(a.rows(), a.rows());
  const Eigen::MatrixXd u = svd.matrixU().leftCols(rank);
  return u * u.transpose();
}

}  // namespace

Eigen::VectorXd ls_predictor(const Representation& rep, const Eigen::VectorXd& f,
                             const SpdMatrix& sigma_x) {
  check_pair(rep, f, sigma_x);
  const Eigen::MatrixXd sr = sigma_x.matrix() * rep;
  const Eigen::MatrixXd g = rep.transpose() * sr;
  return gated_inverse(g) * (sr.transpose() * f);
}

double linear_mse_regret(const Representation& rep, const Eigen::VectorXd& f,
                         const SpdMatrix& sigma_x) {
  check_pair(rep, f, sigma_x);
  const Eigen::VectorXd sf = sigma_x.matrix() * f;
  const Eigen::VectorXd b = rep.transpose() * sf;
  const Eigen::MatrixXd g = rep.transpose() * (sigma_x.matrix() * rep);
  return f.dot(sf) - b.dot(gated_inverse(g) * b);
}

RegretReport mixture_regret_linear(const MixedRepresentation& mix,
                                   const QuadraticBall& cls,
                                   const SpdMatrix& sigma_x) {
  mix.validate();
  const int d = sigma_x.dim();
  if (cls.s.dim() != d || mix.atoms.front().rows() != d) {
    throw DimensionError("mixture_regret_linear: dimension mismatch");
  }
  if (!cls.s.strictly_pd()) {
    throw IllConditioned("mixture_regret_linear: S must be strictly positive definite");
  }

  const Eigen::MatrixXd sx_half = sigma_x.sqrt();
  const Eigen::MatrixXd s_half = cls.s.sqrt();

  std::vector<Eigen::MatrixXd> residuals;
  residuals.reserve(mix.atom_count());
  Eigen::MatrixXd mean_residual = Eigen::MatrixXd::Zero(d, d);
  for (int j = 0; j < mix.atom_count(); ++j) {
    residuals.push_back(Eigen::MatrixXd::Identity(d, d) -
                        column_space_projector(sx_half * mix.atoms[j]));
    mean_residual += mix.weights(j) * residuals.back();
  }

  const Eigen::MatrixXd m = s_half * sx_half * mean_residual * sx_half * s_half;
  const SpdMatrix value_matrix(0.5 * (m + m.transpose()));

  RegretReport out;
  out.value = value_matrix.lambda_max();
  Eigen::VectorXd u = value_matrix.eigenvectors().col(0);
  u /= u.norm();
  out.witness_f = s_half * u;

  const Eigen::VectorXd wf = sx_half * out.witness_f;
  out.per_atom_loss.resize(mix.atom_count());
  for (int j = 0; j < mix.atom_count(); ++j) {
    out.per_atom_loss(j) = (residuals[j] * wf).squaredNorm();
  }
  return out;
}

RegretReport mixture_regret_linear(const MixedRepresentation& mix,
                                   const ResponseClass& cls,
                                   const SpdMatrix& sigma_x) {
  if (const auto* ball = std::get_if<QuadraticBall>(&cls)) {
    return mixture_regret_linear(mix, *ball, sigma_x);
  }
  throw DimensionError(
      "mixture_regret_linear: closed-form evaluation needs a quadratic ball");
}

}  // namespace repgame
