#include "repgame/finite_class_oracle.hpp"

#include <cmath>
#include <cstdio>

#include "repgame/errors.hpp"
#include "repgame/logistic_oracle.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

namespace {

double xent_of_scores(const Eigen::VectorXd& scores, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (Eigen::Index b = 0; b < scores.size(); ++b) {
    total += stable_softplus(-y(b) * scores(b));
  }
  return total / static_cast<double>(scores.size());
}

// d xent / d scores; y in {-1, +1}.
Eigen::VectorXd score_grad(const Eigen::VectorXd& scores, const Eigen::VectorXd& y) {
  Eigen::VectorXd g(scores.size());
  for (Eigen::Index b = 0; b < scores.size(); ++b) {
    g(b) = stable_sigmoid(scores(b)) - 0.5 * (1.0 + y(b));
  }
  return g / static_cast<double>(scores.size());
}

}  // namespace

FiniteClassOracle::FiniteClassOracle(EmpiricalDistribution data,
                                     std::vector<Eigen::VectorXd> labelings,
                                     GradientFitParams fit_params)
    : labels_(std::move(labelings)), fit_params_(fit_params) {
  data.validate();
  if (labels_.empty()) {
    throw DimensionError("FiniteClassOracle: empty function class");
  }
  x_ = std::move(data.samples);
  for (const auto& y : labels_) {
    if (y.size() != x_.rows()) {
      throw DimensionError("FiniteClassOracle: labeling length mismatch");
    }
    bool all_pos = true;
    bool all_neg = true;
    for (Eigen::Index b = 0; b < y.size(); ++b) {
      if (y(b) != 1.0 && y(b) != -1.0) {
        throw DimensionError("FiniteClassOracle: labels must be +/-1");
      }
      all_pos = all_pos && y(b) > 0.0;
      all_neg = all_neg && y(b) < 0.0;
    }
    if (all_pos || all_neg) degenerate_ = true;
  }
  if (degenerate_) {
    std::fprintf(stderr,
                 "warning: finite class contains a constant labeling; its "
                 "excess risk is identically zero\n");
  }
  baselines_.assign(labels_.size(), 0.0);
  baseline_w_.assign(labels_.size(), Eigen::VectorXd());
  baseline_ready_.assign(labels_.size(), false);
}

double FiniteClassOracle::loss(const Representation& rep, int i,
                               const Eigen::VectorXd& q) const {
  return xent_of_scores(x_ * (rep * q), labels_.at(i));
}

Eigen::VectorXd FiniteClassOracle::grad_q(const Representation& rep, int i,
                                          const Eigen::VectorXd& q) const {
  const Eigen::VectorXd g = score_grad(x_ * (rep * q), labels_.at(i));
  return rep.transpose() * (x_.transpose() * g);
}

Eigen::VectorXd FiniteClassOracle::fit_predictor(const Representation& rep, int i,
                                                 const PredictorFit& fit,
                                                 const Eigen::VectorXd* warm_start) const {
  Eigen::VectorXd q = warm_start != nullptr && warm_start->size() == rep.cols()
                          ? *warm_start
                          : Eigen::VectorXd::Zero(rep.cols());
  if (fit.mode == PredictorFit::Mode::kSteps) {
    for (int t = 0; t < fit.steps; ++t) {
      q -= fit_params_.step * grad_q(rep, i, q);
    }
    return q;
  }
  double current = loss(rep, i, q);
  for (int t = 0; t < fit_params_.max_iters; ++t) {
    const Eigen::VectorXd g = grad_q(rep, i, q);
    double step = fit_params_.step;
    Eigen::VectorXd next = q - step * g;
    double next_loss = loss(rep, i, next);
    int halvings = 0;
    while (next_loss > current && halvings < 30) {
      step *= 0.5;
      next = q - step * g;
      next_loss = loss(rep, i, next);
      ++halvings;
    }
    if (next_loss > current) break;
    const double gain = current - next_loss;
    q = next;
    current = next_loss;
    if (gain < fit_params_.tol) break;
  }
  return q;
}

Eigen::MatrixXd FiniteClassOracle::grad_rep(const Representation& rep, int i,
                                            const Eigen::VectorXd& q) const {
  const Eigen::VectorXd g = score_grad(x_ * (rep * q), labels_.at(i));
  return (x_.transpose() * g) * q.transpose();
}

double FiniteClassOracle::baseline(int i) const {
  if (!baseline_ready_.at(i)) {
    // Full-feature fit: same descent as the predictor but on raw x.
    const Eigen::VectorXd& y = labels_.at(i);
    Eigen::VectorXd w = Eigen::VectorXd::Zero(x_.cols());
    double current = xent_of_scores(x_ * w, y);
    for (int t = 0; t < fit_params_.max_iters; ++t) {
      const Eigen::VectorXd g = x_.transpose() * score_grad(x_ * w, y);
      double step = fit_params_.step;
      Eigen::VectorXd next = w - step * g;
      double next_loss = xent_of_scores(x_ * next, y);
      int halvings = 0;
      while (next_loss > current && halvings < 30) {
        step *= 0.5;
        next = w - step * g;
        next_loss = xent_of_scores(x_ * next, y);
        ++halvings;
      }
      if (next_loss > current) break;
      const double gain = current - next_loss;
      w = next;
      current = next_loss;
      if (gain < fit_params_.tol) break;
    }
    baselines_[i] = current;
    baseline_w_[i] = w;
    baseline_ready_[i] = true;
  }
  return baselines_[i];
}

const Eigen::VectorXd& FiniteClassOracle::baseline_predictor(int i) const {
  baseline(i);
  return baseline_w_.at(i);
}

double FiniteClassOracle::regret(const Representation& rep, int i) const {
  const Eigen::VectorXd q = fit_predictor(rep, i, PredictorFit{});
  const double value = loss(rep, i, q) - baseline(i);
  if (value < tol::kNegativeRegretWarn && !negative_regret_seen_) {
    negative_regret_seen_ = true;
    std::fprintf(stderr,
                 "warning: representation beat the raw-feature baseline by "
                 "%.3g; baseline fit may be loose\n",
                 -value);
  }
  return std::max(value, 0.0);
}

}  // namespace repgame
