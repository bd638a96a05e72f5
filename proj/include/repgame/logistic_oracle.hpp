#pragma once

#include "repgame/oracle.hpp"
#include "repgame/spd_matrix.hpp"

namespace repgame {

// Numerically safe pieces shared by the sigmoid-based oracles.
double stable_sigmoid(double z);
double stable_softplus(double z);  // log(1 + exp(z))

struct GradientFitParams {
  double step = 0.1;
  int max_iters = 5000;
  double tol = 1e-8;  // stop when one iteration improves less than this
};

// Soft-label cross-entropy game on an empirical sample: the adversary plays
// f and labels each sample with probability sigmoid(f^T x); the predictor
// sees only R^T x.  Loss is mean KL(sigmoid(f^T x) || sigmoid(q^T R^T x)),
// which is exactly the cross-entropy excess over its ideal value, so the
// baseline is zero.
class LogisticOracle final : public RegretOracle {
 public:
  LogisticOracle(EmpiricalDistribution data, SpdMatrix s,
                 GradientFitParams fit_params = {});

  int feature_dim() const override { return static_cast<int>(x_.cols()); }
  int sample_count() const { return static_cast<int>(x_.rows()); }

  double loss(const Representation& rep, const Eigen::VectorXd& f,
              const Eigen::VectorXd& q) const override;

  // Convex in q; fitted by warm-started gradient descent with backtracking.
  Eigen::VectorXd fit_predictor(const Representation& rep, const Eigen::VectorXd& f,
                                const PredictorFit& fit,
                                const Eigen::VectorXd* warm_start) const override;

  Eigen::VectorXd grad_f(const Representation& rep, const Eigen::VectorXd& f,
                         const Eigen::VectorXd& q) const override;

  Eigen::MatrixXd grad_rep(const Representation& rep, const Eigen::VectorXd& f,
                           const Eigen::VectorXd& q) const override;

  Eigen::VectorXd project_f(const Eigen::VectorXd& f) const override;

 private:
  Eigen::VectorXd grad_q(const Representation& rep, const Eigen::VectorXd& f,
                         const Eigen::VectorXd& q) const;

  Eigen::MatrixXd x_;  // B x d
  SpdMatrix s_;
  Eigen::MatrixXd s_inv_half_;
  GradientFitParams fit_params_;
};

}  // namespace repgame
