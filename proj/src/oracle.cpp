#include "repgame/oracle.hpp"

#include "repgame/errors.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

void EmpiricalDistribution::validate() const {
  if (samples.rows() < 2 || samples.cols() < 1) {
    throw DimensionError("EmpiricalDistribution: need at least two samples");
  }
  if (!samples.allFinite()) {
    throw DimensionError("EmpiricalDistribution: non-finite sample entries");
  }
}

Representation normalize_rep(const Representation& rep) {
  const double n = rep.norm();
  if (!(n > tol::kZeroRep)) {
    throw ZeroRepresentation("normalize_rep: representation is numerically zero");
  }
  return rep / n;
}

double RegretOracle::baseline(const Eigen::VectorXd&) const { return 0.0; }

double RegretOracle::regret(const Representation& rep, const Eigen::VectorXd& f) const {
  const Eigen::VectorXd q = fit_predictor(rep, f, PredictorFit{});
  return loss(rep, f, q) - baseline(f);
}

Eigen::VectorXd RegretOracle::random_function(Rng& rng) const {
  return project_f(rng.normal_vector(feature_dim()));
}

Representation RegretOracle::random_atom(int r, Rng& rng) const {
  return normalize_rep(rng.normal_matrix(feature_dim(), r));
}

}  // namespace repgame
