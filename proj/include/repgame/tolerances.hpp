#pragma once

// All numeric tolerances used across the library live here so that a bound
// used by a solver and the test asserting it cannot drift apart.

namespace repgame::tol {

// Relative entry-wise asymmetry accepted before a matrix is rejected.
inline constexpr double kSymmetryRel = 1e-12;

// Frobenius bound on V^T V - I for a cached eigenbasis.
inline constexpr double kOrthonormality = 1e-9;

// Relative Frobenius bound on V diag(lambda) V^T - A.
inline constexpr double kReconstructionRel = 1e-8;

// Eigenvalues above -kPsdSlackRel * lambda_max are clamped to zero; anything
// lower means the input was not positive semidefinite.
inline constexpr double kPsdSlackRel = 1e-10;

// A matrix counts as strictly positive definite when
// lambda_min > kStrictPdRel * lambda_max.  Inverse square roots require this.
inline constexpr double kStrictPdRel = 1e-12;

// Condition-number ceiling for small normal-equation solves.
inline constexpr double kConditionLimit = 1e12;

// Relative singular-value cutoff when a column space or pseudo-inverse is
// taken of a possibly rank-deficient matrix.
inline constexpr double kRankRel = 1e-12;

// Simplex weights: entry floor and |sum - 1| ceiling.
inline constexpr double kWeightFloor = -1e-12;
inline constexpr double kWeightSum = 1e-10;

// Mixture regret report: |value - sum_j p_j * per_atom_loss_j|.
inline constexpr double kReportConsistency = 1e-9;

// Observed floor for the (mathematically nonnegative) excess-risk values.
inline constexpr double kRegretFloor = -1e-10;

// Invariance of excess risk under right-multiplication of the
// representation by an invertible matrix.
inline constexpr double kReparam = 1e-8;

// Worst-case function reported by a mixture evaluation attains the value.
inline constexpr double kWitness = 1e-8;

// Distance of argmax of the support-size gains from the returned index.
inline constexpr double kGainArgmax = 1e-12;

// Normalization of returned worst-case functions: | ||f||_S - 1 |.
inline constexpr double kUnitNorm = 1e-10;

// Reconstruction of marginals by a vertex decomposition (sup norm).
inline constexpr double kMarginalResidual = 1e-8;

// |sum of marginals - (l - r)| accepted on input.
inline constexpr double kMarginalSum = 1e-9;

// trace(S^-1 Sigma_f) - 1 for the least favorable prior covariance.
inline constexpr double kPriorTrace = 1e-9;

// Mixture value of the constructed optimal mixture vs the closed form.
inline constexpr double kAchievability = 1e-7;

// Agreement between the two spectra that the closed-form solvers use.
inline constexpr double kSpectraAgree = 1e-9;

// Two-player zero-sum LP: exploitability accepted as optimal,
// scaled by (1 + |value|).
inline constexpr double kDualityGap = 1e-8;

// Generic pivot / feasibility epsilon inside the simplex solver.
inline constexpr double kLpPivot = 1e-10;

// Frobenius norm under which a representation counts as zero.
inline constexpr double kZeroRep = 1e-14;

// Gradient-fit stopping rule: absolute loss improvement per iteration.
inline constexpr double kFitImprovement = 1e-8;

// Adversarial ascent stopping rule: improvement over a 10-iteration window.
inline constexpr double kAscentImprovement = 1e-8;
inline constexpr int kAscentWindow = 10;
inline constexpr int kAscentCap = 10000;

// Excess risk of a finite class more negative than this trips a warning
// before being clamped to zero.
inline constexpr double kNegativeRegretWarn = -1e-6;

}  // namespace repgame::tol
