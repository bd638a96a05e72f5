#pragma once

#include <Eigen/Core>

#include "repgame/rng.hpp"
#include "repgame/types.hpp"

namespace repgame {

// Finite sample set; rows are observations.
struct EmpiricalDistribution {
  Eigen::MatrixXd samples;  // B x d

  int count() const { return static_cast<int>(samples.rows()); }
  int dim() const { return static_cast<int>(samples.cols()); }
  Eigen::RowVectorXd mean() const { return samples.colwise().mean(); }

  void validate() const;  // at least two finite rows
};

// How predictors are refit inside iterative loops: either to convergence or
// with a fixed number of warm-started gradient steps.
struct PredictorFit {
  enum class Mode { kFull, kSteps };
  Mode mode = Mode::kFull;
  int steps = 25;
};

// Frobenius-normalized copy of a representation; rejects near-zero input.
Representation normalize_rep(const Representation& rep);

// Differentiable game between a representation (d x r matrix), an
// adversarial function f, and a task-specific predictor q fitted on top of
// the represented features.  Implementations define the prediction loss and
// its gradients; the game engine only sees this surface.
class RegretOracle {
 public:
  virtual ~RegretOracle() = default;

  virtual int feature_dim() const = 0;

  virtual double loss(const Representation& rep, const Eigen::VectorXd& f,
                      const Eigen::VectorXd& q) const = 0;

  virtual Eigen::VectorXd fit_predictor(const Representation& rep,
                                        const Eigen::VectorXd& f,
                                        const PredictorFit& fit,
                                        const Eigen::VectorXd* warm_start = nullptr) const = 0;

  virtual Eigen::VectorXd grad_f(const Representation& rep, const Eigen::VectorXd& f,
                                 const Eigen::VectorXd& q) const = 0;

  virtual Eigen::MatrixXd grad_rep(const Representation& rep, const Eigen::VectorXd& f,
                                   const Eigen::VectorXd& q) const = 0;

  // Maps an arbitrary vector onto the feasible function class.
  virtual Eigen::VectorXd project_f(const Eigen::VectorXd& f) const = 0;

  // Loss floor subtracted to turn losses into excess risk.
  virtual double baseline(const Eigen::VectorXd& f) const;

  // Excess risk at the fully fitted predictor.
  double regret(const Representation& rep, const Eigen::VectorXd& f) const;

  virtual Eigen::VectorXd random_function(Rng& rng) const;
  virtual Representation random_atom(int r, Rng& rng) const;
};

}  // namespace repgame
