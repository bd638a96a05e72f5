#include "repgame/logistic_oracle.hpp"

#include <cmath>

#include "repgame/errors.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

double stable_sigmoid(double z) {
  if (z >= 0.0) {
    return 1.0 / (1.0 + std::exp(-z));
  }
  const double e = std::exp(z);
  return e / (1.0 + e);
}

double stable_softplus(double z) {
  return std::max(z, 0.0) + std::log1p(std::exp(-std::abs(z)));
}

LogisticOracle::LogisticOracle(EmpiricalDistribution data, SpdMatrix s,
                               GradientFitParams fit_params)
    : s_(std::move(s)), fit_params_(fit_params) {
  data.validate();
  if (data.dim() != s_.dim()) {
    throw DimensionError("LogisticOracle: sample/ellipsoid dimension mismatch");
  }
  x_ = std::move(data.samples);
  s_inv_half_ = s_.inv_sqrt();
}

double LogisticOracle::loss(const Representation& rep, const Eigen::VectorXd& f,
                            const Eigen::VectorXd& q) const {
  const Eigen::VectorXd a = x_ * f;
  const Eigen::VectorXd b = x_ * (rep * q);
  double total = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    // KL(sigma(a) || sigma(b)) written through softplus differences.
    total += stable_sigmoid(a(i)) * (stable_softplus(-b(i)) - stable_softplus(-a(i))) +
             stable_sigmoid(-a(i)) * (stable_softplus(b(i)) - stable_softplus(a(i)));
  }
  return total / static_cast<double>(a.size());
}

Eigen::VectorXd LogisticOracle::grad_q(const Representation& rep,
                                       const Eigen::VectorXd& f,
                                       const Eigen::VectorXd& q) const {
  const Eigen::VectorXd a = x_ * f;
  const Eigen::VectorXd b = x_ * (rep * q);
  Eigen::VectorXd diff(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    diff(i) = stable_sigmoid(b(i)) - stable_sigmoid(a(i));
  }
  return rep.transpose() * (x_.transpose() * diff) / static_cast<double>(a.size());
}

Eigen::VectorXd LogisticOracle::fit_predictor(const Representation& rep,
                                              const Eigen::VectorXd& f,
                                              const PredictorFit& fit,
                                              const Eigen::VectorXd* warm_start) const {
  Eigen::VectorXd q = warm_start != nullptr && warm_start->size() == rep.cols()
                          ? *warm_start
                          : Eigen::VectorXd::Zero(rep.cols());
  if (fit.mode == PredictorFit::Mode::kSteps) {
    for (int t = 0; t < fit.steps; ++t) {
      q -= fit_params_.step * grad_q(rep, f, q);
    }
    return q;
  }

  double current = loss(rep, f, q);
  for (int t = 0; t < fit_params_.max_iters; ++t) {
    const Eigen::VectorXd g = grad_q(rep, f, q);
    double step = fit_params_.step;
    Eigen::VectorXd next = q - step * g;
    double next_loss = loss(rep, f, next);
    int halvings = 0;
    while (next_loss > current && halvings < 30) {
      step *= 0.5;
      next = q - step * g;
      next_loss = loss(rep, f, next);
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

Eigen::VectorXd LogisticOracle::grad_f(const Representation& rep,
                                       const Eigen::VectorXd& f,
                                       const Eigen::VectorXd& q) const {
  const Eigen::VectorXd a = x_ * f;
  const Eigen::VectorXd b = x_ * (rep * q);
  Eigen::VectorXd w(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    // (logit gap) * sigmoid'(a)
    w(i) = (a(i) - b(i)) * stable_sigmoid(a(i)) * stable_sigmoid(-a(i));
  }
  return x_.transpose() * w / static_cast<double>(a.size());
}

Eigen::MatrixXd LogisticOracle::grad_rep(const Representation& rep,
                                         const Eigen::VectorXd& f,
                                         const Eigen::VectorXd& q) const {
  const Eigen::VectorXd a = x_ * f;
  const Eigen::VectorXd b = x_ * (rep * q);
  Eigen::VectorXd diff(a.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    diff(i) = stable_sigmoid(b(i)) - stable_sigmoid(a(i));
  }
  return (x_.transpose() * diff) * q.transpose() / static_cast<double>(a.size());
}

Eigen::VectorXd LogisticOracle::project_f(const Eigen::VectorXd& f) const {
  const double n = (s_inv_half_ * f).norm();
  if (!(n > tol::kZeroRep)) return f;
  return f / n;
}

}  // namespace repgame
