#include "repgame/mse_oracle.hpp"

#include <Eigen/Eigenvalues>

#include "repgame/errors.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

MseOracle::MseOracle(SpdMatrix sigma_x, SpdMatrix s)
    : sigma_x_(std::move(sigma_x)), s_(std::move(s)) {
  if (sigma_x_.dim() != s_.dim()) {
    throw DimensionError("MseOracle: sigma_x and S dimensions differ");
  }
  s_inv_half_ = s_.inv_sqrt();
}

double MseOracle::loss(const Representation& rep, const Eigen::VectorXd& f,
                       const Eigen::VectorXd& q) const {
  const Eigen::VectorXd resid = f - rep * q;
  return resid.dot(sigma_x_.matrix() * resid);
}

Eigen::VectorXd MseOracle::fit_predictor(const Representation& rep,
                                         const Eigen::VectorXd& f,
                                         const PredictorFit&,
                                         const Eigen::VectorXd*) const {
  // Closed form regardless of fit mode; iterating would only approximate it.
  const Eigen::MatrixXd sr = sigma_x_.matrix() * rep;
  const Eigen::MatrixXd g = rep.transpose() * sr;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(g);
  if (es.info() != Eigen::Success) {
    throw SingularRepresentation("MseOracle: predictor fit failed");
  }
  const Eigen::VectorXd ev = es.eigenvalues();
  const double cutoff = ev(ev.size() - 1) * 1e-12;
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > cutoff && ev(i) > 0.0) inv(i) = 1.0 / ev(i);
  }
  return es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose() *
         (sr.transpose() * f);
}

Eigen::VectorXd MseOracle::grad_f(const Representation& rep, const Eigen::VectorXd& f,
                                  const Eigen::VectorXd& q) const {
  return 2.0 * (sigma_x_.matrix() * (f - rep * q));
}

Eigen::MatrixXd MseOracle::grad_rep(const Representation& rep, const Eigen::VectorXd& f,
                                    const Eigen::VectorXd& q) const {
  return -2.0 * (sigma_x_.matrix() * (f - rep * q)) * q.transpose();
}

Eigen::VectorXd MseOracle::project_f(const Eigen::VectorXd& f) const {
  const double n = (s_inv_half_ * f).norm();
  if (!(n > tol::kZeroRep)) return f;
  return f / n;
}

}  // namespace repgame
