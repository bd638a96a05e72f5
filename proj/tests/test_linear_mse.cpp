#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include <Eigen/Dense>

#include "repgame/errors.hpp"
#include "repgame/linear_mse.hpp"
#include "repgame/linear_regret.hpp"
#include "repgame/rng.hpp"
#include "repgame/tolerances.hpp"

using namespace repgame;

namespace {

SpdMatrix random_spd(int d, Rng& rng, double ridge = 0.05) {
  const Eigen::MatrixXd b = rng.normal_matrix(d, d);
  Eigen::MatrixXd a = b * b.transpose() + ridge * Eigen::MatrixXd::Identity(d, d);
  return SpdMatrix(0.5 * (a + a.transpose()));
}

// Spectrum of Sx^1/2 S Sx^1/2, non-increasing, computed from scratch.
Eigen::VectorXd game_spectrum(const SpdMatrix& sx, const SpdMatrix& s) {
  const Eigen::MatrixXd h = sx.sqrt();
  const Eigen::MatrixXd prod = h * s.matrix() * h;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (prod + prod.transpose()));
  return es.eigenvalues().reverse();
}

// E_f[excess risk of R] when E[f f^T] is the given second moment.
double expected_regret(const Representation& rep, const SpdMatrix& sx,
                       const Eigen::MatrixXd& second_moment) {
  const Eigen::MatrixXd sxm = sx.matrix();
  const Eigen::MatrixXd gram = rep.transpose() * sxm * rep;
  const Eigen::MatrixXd m =
      sxm - sxm * rep * gram.ldlt().solve(rep.transpose() * sxm);
  return (m * second_moment).trace();
}

// Random point of {c in [0,1]^l : sum c = l - r} by proportional filling
// with clamping.
Eigen::VectorXd capped_point(int l, int r, Rng& rng) {
  Eigen::VectorXd u(l);
  for (int i = 0; i < l; ++i) u(i) = 0.05 + rng.uniform();
  Eigen::VectorXd c = Eigen::VectorXd::Zero(l);
  std::vector<bool> fixed(l, false);
  for (int pass = 0; pass < l; ++pass) {
    double remaining = static_cast<double>(l - r);
    double usum = 0.0;
    for (int i = 0; i < l; ++i) {
      if (fixed[i]) remaining -= 1.0;
      else usum += u(i);
    }
    bool clamped = false;
    for (int i = 0; i < l && !clamped; ++i) {
      if (!fixed[i] && u(i) * remaining / usum >= 1.0) {
        fixed[i] = true;
        c(i) = 1.0;
        clamped = true;
      }
    }
    if (clamped) continue;
    for (int i = 0; i < l; ++i) {
      if (!fixed[i]) c(i) = u(i) * remaining / usum;
    }
    break;
  }
  return c;
}

std::vector<Eigen::VectorXd> all_vertices(int l, int r) {
  std::vector<Eigen::VectorXd> out;
  for (int mask = 0; mask < (1 << l); ++mask) {
    if (__builtin_popcount(static_cast<unsigned>(mask)) != l - r) continue;
    Eigen::VectorXd v = Eigen::VectorXd::Zero(l);
    for (int i = 0; i < l; ++i) {
      if (mask & (1 << i)) v(i) = 1.0;
    }
    out.push_back(v);
  }
  return out;
}

}  // namespace

TEST_CASE("support scan on a flat spectrum keeps every direction") {
  const Eigen::VectorXd flat = Eigen::VectorXd::Ones(5);
  const EffectiveDimension ed = effective_dimension(flat, 2);
  CHECK(ed.value == 5);
  CHECK(ed.regret() == doctest::Approx(0.6).epsilon(1e-12));
  // (l - r) / l for each candidate support size.
  CHECK(ed.regret_at(3) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(ed.regret_at(4) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("support scan on a decaying spectrum stops early") {
  Eigen::VectorXd lam(3);
  lam << 4, 2, 1;
  const EffectiveDimension ed = effective_dimension(lam, 1);
  CHECK(ed.value == 2);
  CHECK(ed.regret() == doctest::Approx(4.0 / 3.0).epsilon(1e-12));
  CHECK(ed.regret_at(3) == doctest::Approx(8.0 / 7.0).epsilon(1e-12));
}

TEST_CASE("support scan picks the smallest maximizer on ties") {
  Eigen::VectorXd lam(4);
  lam << 2, 2, 1, 1;
  // Candidate values are 1 at every support size.
  const EffectiveDimension ed = effective_dimension(lam, 1);
  CHECK(ed.value == 2);
  CHECK(ed.regret() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("deterministic solution matches an independent eigensolve") {
  Rng rng(41);
  for (int inst = 0; inst < 40; ++inst) {
    const int d = 2 + rng.uniform_int(7);
    const int r = 1 + rng.uniform_int(d - 1);
    const SpdMatrix sx = random_spd(d, rng);
    const SpdMatrix s = random_spd(d, rng);

    const PureSolution sol = solve_pure(sx, s, r);
    const Eigen::VectorXd lam = game_spectrum(sx, s);
    CHECK(std::abs(sol.regret - lam(r)) < 1e-9 * (1.0 + lam(r)));

    // The witness sits on the ellipsoid boundary and attains the value.
    CHECK(std::abs(std::sqrt(sol.worst_f.dot(s.inverse() * sol.worst_f)) - 1.0) <
          tol::kUnitNorm * 10);
    CHECK(std::abs(linear_mse_regret(sol.rep, sol.worst_f, sx) - sol.regret) <
          1e-8 * (1.0 + sol.regret));

    // No sampled function in the class does better against the solution.
    for (int t = 0; t < 20; ++t) {
      Eigen::VectorXd f = rng.normal_vector(d);
      f /= std::sqrt(f.dot(s.inverse() * f));
      CHECK(linear_mse_regret(sol.rep, f, sx) <=
            sol.regret + 1e-8 * (1.0 + sol.regret));
    }
  }
}

TEST_CASE("identity instance has fully explicit values") {
  for (const int d : {2, 5, 17, 50}) {
    for (int r : {1, d / 2, d - 1}) {
      if (r < 1) continue;
      const SpdMatrix id = SpdMatrix::identity(d);
      const PureSolution pure = solve_pure(id, id, r);
      CHECK(std::abs(pure.regret - 1.0) < 1e-12);
      const MixedSolution mixed = solve_mixed(id, id, r);
      const double want = static_cast<double>(d - r) / d;
      CHECK(std::abs(mixed.regret - want) < 1e-12);
      CHECK(mixed.effective_dim.value == d);
    }
  }
}

TEST_CASE("randomization helps strictly on generic instances") {
  Rng rng(43);
  for (int inst = 0; inst < 30; ++inst) {
    const int d = 3 + rng.uniform_int(5);
    const int r = 1 + rng.uniform_int(d - 1);
    const SpdMatrix sx = random_spd(d, rng);
    const SpdMatrix s = random_spd(d, rng);
    const PureSolution pure = solve_pure(sx, s, r);
    const MixedSolution mixed = solve_mixed(sx, s, r);
    CHECK(mixed.regret < pure.regret);
    // Every candidate support value is bounded by the deterministic value.
    const Eigen::VectorXd vals = mixed.effective_dim.support_regrets;
    for (Eigen::Index k = 0; k < vals.size(); ++k) {
      CHECK(vals(k) <= pure.regret + 1e-10 * (1.0 + pure.regret));
    }
  }
}

TEST_CASE("randomized solution passes both sides of the saddle check") {
  Rng rng(47);
  for (int inst = 0; inst < 20; ++inst) {
    const int d = 2 + rng.uniform_int(7);
    const int r = 1 + rng.uniform_int(d - 1);
    const SpdMatrix sx = random_spd(d, rng);
    const SpdMatrix s = random_spd(d, rng);
    const MixedSolution sol = solve_mixed(sx, s, r);

    // Achievability: the constructed mixture's worst case meets the value.
    const RegretReport rep = mixture_regret_linear(sol.mixture, QuadraticBall{s}, sx);
    CHECK(std::abs(rep.value - sol.regret) <
          tol::kAchievability * (1.0 + sol.regret));

    // Lower bound: no deterministic representation beats the value against
    // the least favorable prior, and every atom is a best response to it.
    const double scale = 1e-7 * (1.0 + sol.regret);
    for (const Representation& atom : sol.mixture.atoms) {
      CHECK(std::abs(expected_regret(atom, sx, sol.prior_covariance) - sol.regret) <
            scale * 10);
    }
    const PureSolution pure = solve_pure(sx, s, r);
    CHECK(expected_regret(pure.rep, sx, sol.prior_covariance) >= sol.regret - scale);
    for (int t = 0; t < 10; ++t) {
      const Representation challenger = rng.normal_matrix(d, r);
      CHECK(expected_regret(challenger, sx, sol.prior_covariance) >=
            sol.regret - scale);
    }

    // Prior covariance is a unit-trace direction budget in the S geometry.
    CHECK(std::abs((s.inverse() * sol.prior_covariance).trace() - 1.0) <
          tol::kPriorTrace * 100);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(sol.prior_covariance);
    CHECK(es.eigenvalues().minCoeff() > -1e-10);
  }
}

TEST_CASE("exclusion marginals follow the inverse-eigenvalue profile") {
  Rng rng(53);
  for (int inst = 0; inst < 20; ++inst) {
    const int d = 2 + rng.uniform_int(7);
    const int r = 1 + rng.uniform_int(d - 1);
    const SpdMatrix sx = random_spd(d, rng);
    const SpdMatrix s = random_spd(d, rng);
    const MixedSolution sol = solve_mixed(sx, s, r);

    const int l = sol.effective_dim.value;
    const Eigen::VectorXd lam = sol.effective_dim.eigenvalues;
    double inv_sum = 0.0;
    for (int i = 0; i < l; ++i) inv_sum += 1.0 / lam(i);

    REQUIRE(sol.exclusion_marginals.size() == l);
    double total = 0.0;
    for (int i = 0; i < l; ++i) {
      const double want = (l - r) / (lam(i) * inv_sum);
      CHECK(std::abs(sol.exclusion_marginals(i) - want) < 1e-9);
      CHECK(sol.exclusion_marginals(i) >= -1e-12);
      CHECK(sol.exclusion_marginals(i) <= 1.0 + 1e-12);
      total += sol.exclusion_marginals(i);
    }
    CHECK(std::abs(total - (l - r)) < 1e-9);
    CHECK(sol.mixture.atom_count() <= l + 1);
  }
}

TEST_CASE("marginal decomposition reconstructs random capped points") {
  Rng rng(59);
  for (int inst = 0; inst < 120; ++inst) {
    const int l = 2 + rng.uniform_int(11);
    const int r = 1 + rng.uniform_int(l - 1);
    const Eigen::VectorXd b = capped_point(l, r, rng);

    const MarginalDecomposition dec = decompose_marginals(b, r);
    REQUIRE(dec.columns.rows() == l);
    REQUIRE(dec.columns.cols() == dec.weights.size());
    CHECK(dec.columns.cols() <= l + 1);
    CHECK(std::abs(dec.weights.sum() - 1.0) < 1e-10);
    CHECK(dec.weights.minCoeff() >= -1e-12);
    for (Eigen::Index j = 0; j < dec.columns.cols(); ++j) {
      double ones = 0.0;
      for (int i = 0; i < l; ++i) {
        const double v = dec.columns(i, j);
        CHECK((v == 0.0 || v == 1.0));
        ones += v;
      }
      CHECK(ones == static_cast<double>(l - r));
    }
    const Eigen::VectorXd back = dec.columns * dec.weights;
    CHECK((back - b).lpNorm<Eigen::Infinity>() < tol::kMarginalResidual);
  }
}

TEST_CASE("decomposition columns come from the vertex set") {
  Rng rng(61);
  for (int inst = 0; inst < 40; ++inst) {
    const int l = 2 + rng.uniform_int(7);
    const int r = 1 + rng.uniform_int(l - 1);
    const Eigen::VectorXd b = capped_point(l, r, rng);
    const MarginalDecomposition dec = decompose_marginals(b, r);
    const std::vector<Eigen::VectorXd> verts = all_vertices(l, r);
    for (Eigen::Index j = 0; j < dec.columns.cols(); ++j) {
      bool found = false;
      for (const Eigen::VectorXd& v : verts) {
        if ((dec.columns.col(j) - v).lpNorm<Eigen::Infinity>() < 1e-12) {
          found = true;
          break;
        }
      }
      CHECK(found);
    }
  }
}

TEST_CASE("decomposition handles vertex and interior-corner inputs") {
  // A vertex decomposes as itself.
  Eigen::VectorXd v(4);
  v << 1, 1, 0, 0;
  const MarginalDecomposition dec = decompose_marginals(v, 2);
  REQUIRE(dec.columns.cols() == 1);
  CHECK((dec.columns.col(0) - v).norm() == 0.0);
  CHECK(dec.weights(0) == doctest::Approx(1.0));

  // Entries pinned at both box faces must be respected exactly.
  Eigen::VectorXd edge(4);
  edge << 1, 0.7, 0.3, 0;
  const MarginalDecomposition full = decompose_marginals(edge, 2);
  const Eigen::VectorXd back = full.columns * full.weights;
  CHECK((back - edge).lpNorm<Eigen::Infinity>() < 1e-12);
  for (Eigen::Index j = 0; j < full.columns.cols(); ++j) {
    CHECK(full.columns(0, j) == 1.0);
    CHECK(full.columns(3, j) == 0.0);
  }

  // Off-polytope sums are rejected.
  Eigen::VectorXd bad(3);
  bad << 0.5, 0.5, 0.5;
  CHECK_THROWS(decompose_marginals(bad, 1));
}

TEST_CASE("principal components are optimal when the class matches the data") {
  Rng rng(67);
  for (int inst = 0; inst < 25; ++inst) {
    const int d = 2 + rng.uniform_int(7);
    const int r = 1 + rng.uniform_int(d - 1);
    const SpdMatrix sx = random_spd(d, rng);
    const PcaSolution sol = pca_solution(sx, r);
    double tail = 0.0;
    for (int i = r; i < d; ++i) tail += sx.eigenvalues()(i);
    CHECK(std::abs(sol.regret - tail) < 1e-9 * (1.0 + tail));
    CHECK((sol.rep.transpose() * sol.rep - Eigen::MatrixXd::Identity(r, r)).norm() <
          1e-9);
    CHECK((sol.rep - sx.eigenvectors().leftCols(r)).norm() == 0.0);
  }
}

TEST_CASE("prior sampler stays on the ellipsoid and matches its second moment") {
  Rng rng(71);
  const SpdMatrix sx = random_spd(4, rng);
  const SpdMatrix s = random_spd(4, rng);
  const MixedSolution sol = solve_mixed(sx, s, 1);
  const PriorSampler sampler(sol, s);

  Rng draws(123);
  Eigen::MatrixXd second = Eigen::MatrixXd::Zero(4, 4);
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const Eigen::VectorXd f = sampler.draw(draws);
    CHECK(std::abs(f.dot(s.inverse() * f) - 1.0) < 1e-9);
    second += f * f.transpose();
  }
  second /= n;
  const double scale = sol.prior_covariance.norm();
  CHECK((second - sol.prior_covariance).norm() < 0.05 * (1.0 + scale));

  // Same seed, same draw.
  Rng a(9), b(9);
  CHECK((least_favorable_prior_sample(sol, s, a) -
         least_favorable_prior_sample(sol, s, b))
            .norm() == 0.0);
}

TEST_CASE("degenerate widths are rejected") {
  const SpdMatrix id = SpdMatrix::identity(3);
  CHECK_THROWS(solve_pure(id, id, 0));
  CHECK_THROWS(solve_pure(id, id, 3));
  CHECK_THROWS(solve_mixed(id, id, 3));
  CHECK_THROWS(pca_solution(id, 0));
}
