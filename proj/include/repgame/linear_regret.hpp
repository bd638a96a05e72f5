#pragma once

#include <Eigen/Core>

#include "repgame/spd_matrix.hpp"
#include "repgame/types.hpp"

namespace repgame {

// Coefficients of the best linear predictor of f^T x from R^T x under
// x ~ N(0, sigma_x): q = (R^T sigma_x R)^{-1} R^T sigma_x f.
// Throws SingularRepresentation when the normal equations are singular or
// conditioned worse than tol::kConditionLimit.
Eigen::VectorXd ls_predictor(const Representation& rep, const Eigen::VectorXd& f,
                             const SpdMatrix& sigma_x);

// Excess risk of predicting f^T x linearly from R^T x:
//   min_q E[(f^T x - q^T R^T x)^2] = f^T sigma_x f - b^T (R^T sigma_x R)^{-1} b,
// with b = R^T sigma_x f.  Nonnegative up to roundoff.
double linear_mse_regret(const Representation& rep, const Eigen::VectorXd& f,
                         const SpdMatrix& sigma_x);

// Worst function in the ellipsoid ||f||_S <= 1 against a mixture of
// representations, together with the attained value:
//   value = lambda_max(S^1/2 Sx^1/2 E[I - P_j] Sx^1/2 S^1/2),
// where P_j projects onto col(Sx^1/2 R_j).  witness_f is scaled to
// ||f||_S = 1 and per_atom_loss[j] = linear_mse_regret(R_j, witness_f).
RegretReport mixture_regret_linear(const MixedRepresentation& mix,
                                   const QuadraticBall& cls,
                                   const SpdMatrix& sigma_x);

// Convenience dispatch; FiniteSet classes are rejected here (the finite game
// path evaluates those directly).
RegretReport mixture_regret_linear(const MixedRepresentation& mix,
                                   const ResponseClass& cls,
                                   const SpdMatrix& sigma_x);

}  // namespace repgame
