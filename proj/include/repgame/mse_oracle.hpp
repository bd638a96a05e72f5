#pragma once

#include "repgame/oracle.hpp"
#include "repgame/spd_matrix.hpp"

namespace repgame {

// Squared-error game under x ~ N(0, sigma_x) with the function class
// ||f||_S <= 1.  The baseline is zero, so loss and excess risk coincide at
// the fitted predictor.
//
// Unlike ls_predictor, fits here use an eigenvalue-thresholded pseudoinverse:
// the game is seeded with degenerate (even all-zero) representations and has
// to evaluate them rather than fail.
class MseOracle final : public RegretOracle {
 public:
  MseOracle(SpdMatrix sigma_x, SpdMatrix s);

  int feature_dim() const override { return sigma_x_.dim(); }

  const SpdMatrix& sigma_x() const { return sigma_x_; }
  const SpdMatrix& s() const { return s_; }

  double loss(const Representation& rep, const Eigen::VectorXd& f,
              const Eigen::VectorXd& q) const override;

  Eigen::VectorXd fit_predictor(const Representation& rep, const Eigen::VectorXd& f,
                                const PredictorFit& fit,
                                const Eigen::VectorXd* warm_start) const override;

  Eigen::VectorXd grad_f(const Representation& rep, const Eigen::VectorXd& f,
                         const Eigen::VectorXd& q) const override;

  Eigen::MatrixXd grad_rep(const Representation& rep, const Eigen::VectorXd& f,
                           const Eigen::VectorXd& q) const override;

  // Rescales onto the ellipsoid boundary: f / ||f||_S.
  Eigen::VectorXd project_f(const Eigen::VectorXd& f) const override;

 private:
  SpdMatrix sigma_x_;
  SpdMatrix s_;
  Eigen::MatrixXd s_inv_half_;
};

}  // namespace repgame
