#pragma once

#include <vector>

#include "repgame/logistic_oracle.hpp"
#include "repgame/oracle.hpp"

namespace repgame {

// Hard-label cross-entropy game over an explicit list of labelings of one
// sample set.  Function i is the vector of +/-1 labels it assigns; excess
// risk nets out the best achievable cross-entropy on the raw features,
// cached per function.
class FiniteClassOracle {
 public:
  FiniteClassOracle(EmpiricalDistribution data,
                    std::vector<Eigen::VectorXd> labelings,
                    GradientFitParams fit_params = {});

  int function_count() const { return static_cast<int>(labels_.size()); }
  int feature_dim() const { return static_cast<int>(x_.cols()); }
  int sample_count() const { return static_cast<int>(x_.rows()); }

  // Mean logistic cross-entropy of predicting labeling i from R^T x with
  // coefficients q.
  double loss(const Representation& rep, int i, const Eigen::VectorXd& q) const;

  Eigen::VectorXd fit_predictor(const Representation& rep, int i,
                                const PredictorFit& fit,
                                const Eigen::VectorXd* warm_start = nullptr) const;

  Eigen::MatrixXd grad_rep(const Representation& rep, int i,
                           const Eigen::VectorXd& q) const;

  // Best cross-entropy achievable from the raw features (fit once, cached).
  double baseline(int i) const;

  // Raw-feature coefficient vector behind baseline(i).
  const Eigen::VectorXd& baseline_predictor(int i) const;

  // loss(best fit) - baseline, clamped to zero from below.
  double regret(const Representation& rep, int i) const;

  // True when some labeling is constant across samples.
  bool degenerate_labels() const { return degenerate_; }
  // True once a regret below tol::kNegativeRegretWarn had to be clamped.
  bool negative_regret_seen() const { return negative_regret_seen_; }

 private:
  Eigen::VectorXd grad_q(const Representation& rep, int i,
                         const Eigen::VectorXd& q) const;

  Eigen::MatrixXd x_;
  std::vector<Eigen::VectorXd> labels_;
  GradientFitParams fit_params_;
  bool degenerate_ = false;
  mutable std::vector<double> baselines_;
  mutable std::vector<Eigen::VectorXd> baseline_w_;
  mutable std::vector<bool> baseline_ready_;
  mutable bool negative_regret_seen_ = false;
};

}  // namespace repgame
