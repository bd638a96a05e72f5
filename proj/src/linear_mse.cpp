#include "repgame/linear_mse.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <vector>

#include "repgame/errors.hpp"
#include "repgame/lp.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

namespace {

void check_rank_arg(int d, int r) {
  if (r < 1 || r >= d) {
    throw DimensionError("rank must satisfy 1 <= r < d");
  }
}

void check_strictly_pd(const SpdMatrix& m, const char* what) {
  if (!m.strictly_pd()) {
    throw IllConditioned(std::string(what) + " must be strictly positive definite");
  }
}

}  // namespace

EffectiveDimension effective_dimension(const Eigen::VectorXd& lambdas, int r) {
  const int d = static_cast<int>(lambdas.size());
  check_rank_arg(d, r);
  for (int i = 0; i < d; ++i) {
    if (!(lambdas(i) > 0.0)) {
      throw IllConditioned("effective_dimension: spectrum must be positive");
    }
    if (i > 0 && lambdas(i) > lambdas(i - 1) * (1.0 + 1e-12)) {
      throw DimensionError("effective_dimension: spectrum must be non-increasing");
    }
  }

  EffectiveDimension out;
  out.r = r;
  out.eigenvalues = lambdas;
  out.support_regrets.resize(d - r);

  double inv_sum = 0.0;
  for (int i = 0; i < r; ++i) inv_sum += 1.0 / lambdas(i);

  int best = r + 1;
  for (int ell = r + 1; ell <= d; ++ell) {
    inv_sum += 1.0 / lambdas(ell - 1);
    const double gain = (ell - r) / inv_sum;
    out.support_regrets(ell - r - 1) = gain;
    // First maximizer wins, which is the smallest admissible support size.
    if (gain > out.support_regrets(best - r - 1) * (1.0 + 1e-15)) best = ell;
  }
  out.value = best;
  return out;
}

PureSolution solve_pure(const SpdMatrix& sigma_x, const SpdMatrix& s, int r) {
  const int d = sigma_x.dim();
  if (s.dim() != d) throw DimensionError("solve_pure: dimension mismatch");
  check_rank_arg(d, r);
  check_strictly_pd(sigma_x, "solve_pure: sigma_x");
  check_strictly_pd(s, "solve_pure: S");

  const Eigen::MatrixXd sx_half = sigma_x.sqrt();
  const Eigen::MatrixXd sx_inv_half = sigma_x.inv_sqrt();
  const Eigen::MatrixXd m = sx_half * s.matrix() * sx_half;
  const SpdMatrix core(0.5 * (m + m.transpose()));

  PureSolution out;
  out.regret = core.eigenvalues()(r);
  out.rep = sx_inv_half * core.eigenvectors().leftCols(r);
  // The maximizer of f' M_R f over the ellipsoid is the image of the
  // (r+1)-th core direction under S Sx^1/2; dividing by sqrt(lambda) puts it
  // on the boundary and makes the quadratic evaluate to lambda exactly.
  const Eigen::VectorXd w = s.matrix() * sx_half * core.eigenvectors().col(r);
  out.worst_f = w / std::sqrt(out.regret);
  return out;
}

PcaSolution pca_solution(const SpdMatrix& sigma_x, int r) {
  const int d = sigma_x.dim();
  check_rank_arg(d, r);
  PcaSolution out;
  out.rep = sigma_x.eigenvectors().leftCols(r);
  out.regret = sigma_x.eigenvalues().tail(d - r).sum();
  return out;
}

namespace {

// Key for merging identical 0/1 columns.
std::vector<char> column_key(const Eigen::VectorXd& col) {
  std::vector<char> key(col.size());
  for (Eigen::Index i = 0; i < col.size(); ++i) key[i] = col(i) > 0.5 ? 1 : 0;
  return key;
}

MarginalDecomposition assemble(const std::vector<Eigen::VectorXd>& cols,
                               const std::vector<double>& wts, int l) {
  std::map<std::vector<char>, double> merged;
  for (size_t j = 0; j < cols.size(); ++j) {
    if (wts[j] <= 1e-12) continue;
    merged[column_key(cols[j])] += wts[j];
  }
  if (merged.empty()) {
    throw DecompositionFailure("decompose_marginals: empty decomposition");
  }
  MarginalDecomposition out;
  out.columns.resize(l, static_cast<int>(merged.size()));
  out.weights.resize(static_cast<int>(merged.size()));
  int j = 0;
  double total = 0.0;
  for (const auto& [key, w] : merged) {
    for (int i = 0; i < l; ++i) out.columns(i, j) = key[i] ? 1.0 : 0.0;
    out.weights(j) = w;
    total += w;
    ++j;
  }
  out.weights /= total;
  return out;
}

// Indices of the k largest entries of v (stable on ties).
std::vector<int> top_indices(const Eigen::VectorXd& v, int k) {
  std::vector<int> order(v.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](int i, int j) { return v(i) > v(j); });
  order.resize(k);
  return order;
}

}  // namespace

MarginalDecomposition decompose_marginals(const Eigen::VectorXd& marginals, int r) {
  const int l = static_cast<int>(marginals.size());
  check_rank_arg(l, r);
  const int ones = l - r;

  Eigen::VectorXd b = marginals;
  double sum = 0.0;
  for (int i = 0; i < l; ++i) {
    if (b(i) < -1e-12 || b(i) > 1.0 + 1e-12) {
      throw DimensionError("decompose_marginals: entries must lie in [0, 1]");
    }
    b(i) = std::clamp(b(i), 0.0, 1.0);
    sum += b(i);
  }
  if (std::abs(sum - ones) > tol::kMarginalSum) {
    throw DimensionError("decompose_marginals: entries must sum to l - r");
  }

  // Greedy peeling: repeatedly cover the largest residual coordinates with
  // one vertex, stepping as far as the box constraints allow.
  std::vector<Eigen::VectorXd> cols;
  std::vector<double> wts;
  Eigen::VectorXd res = b;
  double mass = 1.0;
  for (int step = 0; step <= l; ++step) {
    if (mass <= 1e-14 && res.cwiseAbs().maxCoeff() <= 1e-10) break;
    if (mass <= 1e-14) break;
    const std::vector<int> top = top_indices(res, ones);
    std::vector<char> in_top(l, 0);
    double w = mass;
    for (int i : top) {
      in_top[i] = 1;
      w = std::min(w, res(i));
    }
    for (int i = 0; i < l; ++i) {
      if (!in_top[i]) w = std::min(w, mass - res(i));
    }
    if (w <= 1e-15) break;
    Eigen::VectorXd col = Eigen::VectorXd::Zero(l);
    for (int i : top) col(i) = 1.0;
    cols.push_back(col);
    wts.push_back(w);
    for (int i : top) res(i) -= w;
    mass -= w;
  }

  const bool greedy_ok = mass <= 1e-12 && res.cwiseAbs().maxCoeff() <= 1e-9;
  if (greedy_ok) {
    MarginalDecomposition out = assemble(cols, wts, l);
    const Eigen::VectorXd rebuilt = out.columns * out.weights;
    if ((rebuilt - b).cwiseAbs().maxCoeff() <= tol::kMarginalResidual) {
      return out;
    }
  }

  // LP fallback over encountered columns, growing the set by pricing vertex
  // columns against the phase-1 duals.  The full vertex set is never formed.
  std::map<std::vector<char>, Eigen::VectorXd> pool;
  for (const auto& c : cols) pool[column_key(c)] = c;
  {
    Eigen::VectorXd seed = Eigen::VectorXd::Zero(l);
    for (int i : top_indices(b, ones)) seed(i) = 1.0;
    pool[column_key(seed)] = seed;
  }

  Eigen::VectorXd rhs(l + 1);
  rhs.head(l) = b;
  rhs(l) = 1.0;
  const int max_rounds = 4 * l + 20;
  for (int round = 0; round < max_rounds; ++round) {
    Eigen::MatrixXd a(l + 1, static_cast<int>(pool.size()));
    std::vector<Eigen::VectorXd> pool_cols;
    int j = 0;
    for (const auto& [key, c] : pool) {
      a.col(j).head(l) = c;
      a(l, j) = 1.0;
      pool_cols.push_back(c);
      ++j;
    }
    const lp::FeasResult feas = lp::solve_feasibility(a, rhs);
    if (feas.feasible) {
      std::vector<double> w(feas.x.data(), feas.x.data() + feas.x.size());
      return assemble(pool_cols, w, l);
    }
    // Best-pricing vertex: ones at the largest dual coordinates.
    const Eigen::VectorXd head = feas.dual.head(l);
    Eigen::VectorXd cand = Eigen::VectorXd::Zero(l);
    double score = feas.dual(l);
    for (int i : top_indices(head, ones)) {
      cand(i) = 1.0;
      score += head(i);
    }
    if (score <= 1e-12 || pool.count(column_key(cand)) > 0) {
      throw DecompositionFailure(
          "decompose_marginals: marginals admit no vertex decomposition");
    }
    pool[column_key(cand)] = cand;
  }
  throw DecompositionFailure("decompose_marginals: column generation stalled");
}

MixedSolution solve_mixed(const SpdMatrix& sigma_x, const SpdMatrix& s, int r) {
  const int d = sigma_x.dim();
  if (s.dim() != d) throw DimensionError("solve_mixed: dimension mismatch");
  check_rank_arg(d, r);
  check_strictly_pd(sigma_x, "solve_mixed: sigma_x");
  check_strictly_pd(s, "solve_mixed: S");

  const Eigen::MatrixXd sx_half = sigma_x.sqrt();
  const Eigen::MatrixXd sx_inv_half = sigma_x.inv_sqrt();
  const Eigen::MatrixXd s_half = s.sqrt();

  // Two congruentorderings of the same spectrum: the atom construction works
  // in the basis of Sx^1/2 S Sx^1/2, the prior in the basis of
  // S^1/2 Sx S^1/2.
  const Eigen::MatrixXd m_atoms_raw = sx_half * s.matrix() * sx_half;
  const SpdMatrix m_atoms(0.5 * (m_atoms_raw + m_atoms_raw.transpose()));
  const Eigen::MatrixXd m_prior_raw = s_half * sigma_x.matrix() * s_half;
  const SpdMatrix m_prior(0.5 * (m_prior_raw + m_prior_raw.transpose()));

  MixedSolution out;
  out.effective_dim = effective_dimension(m_atoms.eigenvalues(), r);
  const int ell = out.effective_dim.value;
  out.regret = out.effective_dim.regret();

  const Eigen::VectorXd lam = m_atoms.eigenvalues().head(ell);
  const double inv_sum = lam.cwiseInverse().sum();
  out.exclusion_marginals.resize(ell);
  for (int i = 0; i < ell; ++i) {
    out.exclusion_marginals(i) =
        std::min(1.0, (ell - r) / (lam(i) * inv_sum));
  }

  const MarginalDecomposition dec = decompose_marginals(out.exclusion_marginals, r);

  out.mixture.weights = dec.weights;
  out.mixture.atoms.reserve(dec.weights.size());
  for (int j = 0; j < dec.weights.size(); ++j) {
    Eigen::MatrixXd basis(d, r);
    int c = 0;
    for (int i = 0; i < ell; ++i) {
      if (dec.columns(i, j) < 0.5) basis.col(c++) = m_atoms.eigenvectors().col(i);
    }
    if (c != r) {
      throw DecompositionFailure("solve_mixed: vertex with wrong support size");
    }
    out.mixture.atoms.push_back(sx_inv_half * basis);
  }
  out.mixture.validate();

  // Least favorable prior: inverse spectrum on the retained directions of
  // S^1/2 Sx S^1/2, normalized to unit trace in the ellipsoid geometry.
  const Eigen::VectorXd lam_prior = m_prior.eigenvalues().head(ell);
  Eigen::VectorXd prior_scales = lam_prior.cwiseInverse();
  prior_scales /= prior_scales.sum();
  const Eigen::MatrixXd v_prior = m_prior.eigenvectors().leftCols(ell);
  out.prior_covariance = s_half * v_prior * prior_scales.asDiagonal() *
                         v_prior.transpose() * s_half;
  out.prior_covariance =
      0.5 * (out.prior_covariance + out.prior_covariance.transpose());
  return out;
}

PriorSampler::PriorSampler(const MixedSolution& sol, const SpdMatrix& s) {
  const Eigen::MatrixXd s_inv_half = s.inv_sqrt();
  const Eigen::MatrixXd whitened =
      s_inv_half * sol.prior_covariance * s_inv_half;
  const SpdMatrix cov(0.5 * (whitened + whitened.transpose()));
  const int rank = sol.effective_dim.value;

  Eigen::VectorXd scales = cov.eigenvalues().head(rank);
  scales = scales.cwiseMax(0.0);
  scales /= scales.sum();  // unit ellipsoid norm surely
  scales_ = scales.cwiseSqrt();
  directions_ = s.sqrt() * cov.eigenvectors().leftCols(rank);
}

Eigen::VectorXd PriorSampler::draw(Rng& rng) const {
  Eigen::VectorXd coeff(scales_.size());
  for (int i = 0; i < scales_.size(); ++i) coeff(i) = rng.rademacher() * scales_(i);
  return directions_ * coeff;
}

Eigen::VectorXd least_favorable_prior_sample(const MixedSolution& sol,
                                             const SpdMatrix& s, Rng& rng) {
  return PriorSampler(sol, s).draw(rng);
}

}  // namespace repgame
