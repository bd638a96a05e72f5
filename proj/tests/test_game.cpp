#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include <Eigen/Dense>

#include "repgame/errors.hpp"
#include "repgame/finite_class_oracle.hpp"
#include "repgame/game.hpp"
#include "repgame/logistic_oracle.hpp"
#include "repgame/mse_oracle.hpp"
#include "repgame/rng.hpp"

using namespace repgame;

namespace {

// Simultaneous self-play with strategy averaging; the no-regret guarantee
// puts the averaged pair near the equilibrium.
double mwu_selfplay_value(const Eigen::MatrixXd& losses, int rounds) {
  const int k = static_cast<int>(losses.rows());
  const int t = static_cast<int>(losses.cols());
  Eigen::VectorXd p = Eigen::VectorXd::Constant(k, 1.0 / k);
  Eigen::VectorXd o = Eigen::VectorXd::Constant(t, 1.0 / t);
  Eigen::VectorXd p_bar = Eigen::VectorXd::Zero(k);
  Eigen::VectorXd o_bar = Eigen::VectorXd::Zero(t);
  const double beta_p = 1.0 / (1.0 + std::sqrt(std::log(static_cast<double>(k)) / rounds));
  const double beta_o = 1.0 / (1.0 + std::sqrt(std::log(static_cast<double>(t)) / rounds));
  const LossRange range{losses.minCoeff(), losses.maxCoeff()};
  for (int n = 0; n < rounds; ++n) {
    p_bar += p;
    o_bar += o;
    const Eigen::VectorXd row_losses = losses * o;
    const Eigen::VectorXd col_losses = losses.transpose() * p;
    p = mwu_step(p, row_losses, beta_p, true, range);
    o = mwu_step(o, col_losses, beta_o, false, range);
  }
  p_bar /= rounds;
  o_bar /= rounds;
  return p_bar.dot(losses * o_bar);
}

GameConfig quick_logistic_config() {
  GameConfig cfg = GameConfig::logistic_defaults();
  cfg.t_function = 60;
  cfg.t_representation = 20;
  cfg.t_stop = 16;
  cfg.t_average = 4;
  return cfg;
}

}  // namespace

TEST_CASE("one multiplicative-weights update, worked by hand") {
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(2, 0.5);
  Eigen::VectorXd losses(2);
  losses << 0.0, 1.0;

  const Eigen::VectorXd low = mwu_step(w, losses, 0.5, true);
  CHECK(low(0) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
  CHECK(low(1) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

  const Eigen::VectorXd high = mwu_step(w, losses, 0.5, false);
  CHECK(high(0) == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(high(1) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

  // A wider running envelope halves the effective exponent.
  const Eigen::VectorXd damped = mwu_step(w, losses, 0.5, true, LossRange{0.0, 2.0});
  const double root = std::sqrt(0.5);
  CHECK(damped(0) == doctest::Approx(1.0 / (1.0 + root)).epsilon(1e-12));
  CHECK(damped(1) == doctest::Approx(root / (1.0 + root)).epsilon(1e-12));

  // Constant losses carry no information and change nothing.
  const Eigen::VectorXd flat = mwu_step(w, Eigen::VectorXd::Constant(2, 3.0), 0.5, true);
  CHECK((flat - w).norm() == 0.0);
}

TEST_CASE("repeated updates concentrate on the best action") {
  Eigen::VectorXd losses(3);
  losses << 0.2, 0.9, 0.4;
  Eigen::VectorXd w = Eigen::VectorXd::Constant(3, 1.0 / 3.0);
  for (int n = 0; n < 200; ++n) w = mwu_step(w, losses, 0.9, true);
  CHECK(w(0) > 0.95);
  CHECK(std::abs(w.sum() - 1.0) < 1e-12);
}

TEST_CASE("range envelope bookkeeping") {
  LossRange r = LossRange::of((Eigen::VectorXd(2) << 0.5, 1.5).finished());
  CHECK(r.lo == 0.5);
  CHECK(r.hi == 1.5);
  r.absorb(-1.0);
  r.absorb((Eigen::VectorXd(2) << 0.7, 2.5).finished());
  CHECK(r.lo == -1.0);
  CHECK(r.hi == 2.5);
}

TEST_CASE("exact solutions of tiny matrix games") {
  Eigen::MatrixXd pennies(2, 2);
  pennies << 1, -1, -1, 1;
  const MatrixGameSolution mp = solve_matrix_game(pennies);
  CHECK(std::abs(mp.value) < 1e-9);
  CHECK(mp.row(0) == doctest::Approx(0.5).epsilon(1e-8));
  CHECK(mp.col(0) == doctest::Approx(0.5).epsilon(1e-8));

  Eigen::MatrixXd rps(3, 3);
  rps << 0, 1, -1, -1, 0, 1, 1, -1, 0;
  const MatrixGameSolution sol = solve_matrix_game(rps);
  CHECK(std::abs(sol.value) < 1e-9);
  for (int i = 0; i < 3; ++i) CHECK(sol.row(i) == doctest::Approx(1.0 / 3.0).epsilon(1e-7));

  Eigen::MatrixXd saddle(2, 2);
  saddle << 1, 2, 3, 4;  // row 1 dominates for the minimizer, column 2 for the maximizer
  const MatrixGameSolution ds = solve_matrix_game(saddle);
  CHECK(ds.value == doctest::Approx(2.0).epsilon(1e-9));
  CHECK(ds.row(0) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(ds.col(1) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("equilibrium strategies are unexploitable") {
  Rng rng(111);
  for (int inst = 0; inst < 20; ++inst) {
    const int k = 2 + rng.uniform_int(4);
    const int t = 2 + rng.uniform_int(4);
    Eigen::MatrixXd losses(k, t);
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < t; ++j) losses(i, j) = rng.uniform(-1.0, 1.0);
    const MatrixGameSolution sol = solve_matrix_game(losses);
    const double tolerance = 1e-8 * (1.0 + std::abs(sol.value));
    CHECK((losses.transpose() * sol.row).maxCoeff() <= sol.value + tolerance);
    CHECK((losses * sol.col).minCoeff() >= sol.value - tolerance);
  }
}

TEST_CASE("self-play converges to the exact game value") {
  Rng rng(113);
  for (int inst = 0; inst < 10; ++inst) {
    Eigen::MatrixXd losses(4, 4);
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) losses(i, j) = rng.uniform();
    const double exact = solve_matrix_game(losses).value;
    const double played = mwu_selfplay_value(losses, 20000);
    CHECK(std::abs(played - exact) < 2e-2);
  }
}

TEST_CASE("adversary ascent recovers the exact quadratic maximum") {
  const SpdMatrix sx = SpdMatrix::from_diagonal((Eigen::VectorXd(3) << 3, 2, 1).finished());
  const MseOracle oracle(sx, SpdMatrix::identity(3));
  GameConfig cfg = GameConfig::linear_mse_defaults();

  GameState state;
  state.atoms = {Eigen::MatrixXd::Identity(3, 1)};  // spans e1
  state.rep_weights = Eigen::VectorXd::Ones(1);
  state.losses = Eigen::MatrixXd(1, 0);

  Rng rng(5);
  const Phase1Result res = phase1(state, oracle, cfg, rng);
  // Residual quadratic is diag(0, 2, 1); its top eigenvalue is 2 at e2.
  CHECK(res.regret == doctest::Approx(2.0).epsilon(0.02));
  CHECK(std::abs(res.f(1)) == doctest::Approx(1.0).epsilon(0.02));
  CHECK(res.atom_losses.size() == 1);
  CHECK(res.atom_losses(0) == doctest::Approx(res.regret).epsilon(1e-9));

  // Against a two-atom mixture the objective changes accordingly.
  state.atoms.push_back((Eigen::MatrixXd(3, 1) << 0, 1, 0).finished());
  state.rep_weights = Eigen::VectorXd::Constant(2, 0.5);
  state.losses = Eigen::MatrixXd(2, 0);
  Rng rng2(6);
  const Phase1Result two = phase1(state, oracle, cfg, rng2);
  // Mean residual is diag(1.5, 1, 1); the maximum moves to e1.
  CHECK(two.regret == doctest::Approx(1.5).epsilon(0.02));
}

TEST_CASE("exact argmax over an explicit function list") {
  Rng rng(115);
  EmpiricalDistribution data;
  data.samples = rng.normal_matrix(40, 3);
  Eigen::VectorXd y0(40), y1(40);
  for (int i = 0; i < 40; ++i) {
    y0(i) = data.samples(i, 1) > 0 ? 1.0 : -1.0;  // lives outside the atom
    y1(i) = data.samples(i, 0) > 0 ? 1.0 : -1.0;  // the atom spans this one
  }
  const FiniteClassOracle oracle(data, {y0, y1});
  std::vector<Representation> atoms = {Eigen::MatrixXd::Identity(3, 1)};
  const Eigen::VectorXd w = Eigen::VectorXd::Ones(1);
  const auto [idx, value] = phase1_finite(atoms, w, oracle);
  CHECK(idx == 0);  // the unspanned labeling carries the larger excess risk
  CHECK(oracle.regret(atoms[0], 0) > 10.0 * oracle.regret(atoms[0], 1));
  CHECK(value == doctest::Approx(oracle.regret(atoms[0], 0)).epsilon(1e-12));
}

TEST_CASE("learner turn absorbs the newest adversarial function") {
  const SpdMatrix sx = SpdMatrix::from_diagonal((Eigen::VectorXd(3) << 3, 2, 1).finished());
  const MseOracle oracle(sx, SpdMatrix::identity(3));
  GameConfig cfg = GameConfig::linear_mse_defaults();

  GameState state;
  state.atoms = {Eigen::MatrixXd::Identity(3, 1)};
  state.functions = {Eigen::VectorXd::Unit(3, 1)};
  state.rep_weights = Eigen::VectorXd::Ones(1);
  state.losses = Eigen::MatrixXd(1, 1);
  state.losses(0, 0) = oracle.regret(state.atoms[0], state.functions[0]);

  Rng rng(8);
  const Phase2Result res = phase2(state, oracle, cfg, rng);
  REQUIRE(res.new_atom_losses.size() == 1);
  CHECK(res.new_atom_losses(0) < 1e-3);  // new atom handles e2 nearly perfectly
  CHECK(res.rep_weights.size() == 2);
  CHECK(std::abs(res.rep_weights.sum() - 1.0) < 1e-10);
  CHECK(res.rep_weights.minCoeff() >= 0.0);
  CHECK(res.func_weights.size() == 1);
}

TEST_CASE("full runs are reproducible bit for bit") {
  const MseOracle oracle(SpdMatrix::identity(4), SpdMatrix::identity(4));
  GameConfig cfg = GameConfig::linear_mse_defaults();
  cfg.atom_budget = 4;
  cfg.seed = 77;

  const Representation init = Eigen::MatrixXd::Identity(4, 2);
  const GameResult a = run_game(oracle, cfg, init, {});
  const GameResult b = run_game(oracle, cfg, init, {});
  REQUIRE(a.regret_trace.size() == b.regret_trace.size());
  for (size_t i = 0; i < a.regret_trace.size(); ++i) {
    CHECK(a.regret_trace[i] == b.regret_trace[i]);
  }
  CHECK(a.selected_atoms == b.selected_atoms);
  CHECK((a.mixture.weights - b.mixture.weights).norm() == 0.0);

  // The returned mixture is the best measured prefix.
  double best = a.regret_trace[0];
  int best_k = 0;
  for (size_t k = 1; k < a.regret_trace.size(); ++k) {
    if (a.regret_trace[k] < best) {
      best = a.regret_trace[k];
      best_k = static_cast<int>(k);
    }
  }
  CHECK(a.selected_atoms == best_k + 1);
  CHECK(a.mixture.atom_count() == a.selected_atoms);
}

TEST_CASE("incremental play approaches the known randomized optimum") {
  // Identity instance, d=3, r=1: the randomized value is (d-r)/d = 2/3.
  const MseOracle oracle(SpdMatrix::identity(3), SpdMatrix::identity(3));
  GameConfig cfg = GameConfig::linear_mse_defaults();
  cfg.atom_budget = 8;
  cfg.seed = 100;

  Rng init_rng(100);
  const Representation init = harvest_initial_rep(oracle, 1, cfg, init_rng);
  const GameResult res = run_game(oracle, cfg, init, {});

  double best = res.regret_trace[0];
  for (const double v : res.regret_trace) best = std::min(best, v);
  CHECK(best <= 2.0 / 3.0 + 0.08);
  CHECK(best >= 2.0 / 3.0 - 0.02);
  CHECK_NOTHROW(res.mixture.validate());
}

TEST_CASE("longer runs extend shorter ones without rewriting history") {
  Rng rng(117);
  EmpiricalDistribution data;
  data.samples = rng.normal_matrix(60, 4);
  const LogisticOracle oracle(data, SpdMatrix::identity(4));

  GameConfig cfg = quick_logistic_config();
  cfg.seed = 41;

  Rng ia(41);
  const Representation init_a = fit_initial_rep_single(oracle, 2, cfg, ia);
  Rng ib(41);
  const Representation init_b = fit_initial_rep_single(oracle, 2, cfg, ib);
  CHECK((init_a - init_b).norm() == 0.0);

  GameConfig small = cfg;
  small.atom_budget = 2;
  GameConfig large = cfg;
  large.atom_budget = 3;
  const GameResult a = run_game(oracle, small, init_a, {});
  const GameResult b = run_game(oracle, large, init_b, {});
  REQUIRE(a.regret_trace.size() == 2);
  REQUIRE(b.regret_trace.size() == 3);
  CHECK(a.regret_trace[0] == b.regret_trace[0]);
  CHECK(a.regret_trace[1] == b.regret_trace[1]);
}

TEST_CASE("finite-class game solves the cross-regret table exactly") {
  Rng rng(119);
  EmpiricalDistribution data;
  data.samples = rng.normal_matrix(30, 4);
  Eigen::VectorXd y0(30), y1(30);
  for (int i = 0; i < 30; ++i) {
    y0(i) = data.samples(i, 0) > 0 ? 1.0 : -1.0;
    y1(i) = data.samples(i, 1) > 0 ? 1.0 : -1.0;
  }
  const FiniteClassOracle oracle(data, {y0, y1});

  GameConfig cfg = quick_logistic_config();
  cfg.seed = 9;
  const FiniteGameResult res = run_finite(oracle, 1, cfg);

  REQUIRE(res.regret_table.rows() == 2);
  REQUIRE(res.regret_table.cols() == 2);
  CHECK(res.regret_table.minCoeff() >= 0.0);
  CHECK(res.mixture.atom_count() == 2);
  CHECK(std::abs(res.mixture.weights.sum() - 1.0) < 1e-10);
  CHECK(res.function_weights.minCoeff() >= -1e-12);

  // Equilibrium value equals the mixture's worst column.
  const Eigen::VectorXd col_values = res.regret_table.transpose() * res.mixture.weights;
  CHECK(col_values.maxCoeff() == doctest::Approx(res.value).epsilon(1e-7));
}

TEST_CASE("seed representations are deterministic and well-formed") {
  const MseOracle mse(SpdMatrix::from_diagonal((Eigen::VectorXd(3) << 4, 2, 1).finished()),
                      SpdMatrix::identity(3));
  GameConfig cfg = GameConfig::linear_mse_defaults();
  cfg.seed = 55;
  Rng a(55), b(55);
  const Representation ha = harvest_initial_rep(mse, 2, cfg, a);
  const Representation hb = harvest_initial_rep(mse, 2, cfg, b);
  CHECK((ha - hb).norm() == 0.0);
  CHECK(ha.rows() == 3);
  CHECK(ha.cols() == 2);
  CHECK(ha.norm() > 0.0);
  // Width-r seed already performs no worse than ignoring the data entirely.
  const Eigen::VectorXd worst = Eigen::VectorXd::Unit(3, 0);
  CHECK(mse.regret(ha, worst) <= 4.0 + 1e-9);
}

TEST_CASE("configuration validation rejects inconsistent settings") {
  GameConfig cfg = GameConfig::linear_mse_defaults();
  CHECK_NOTHROW(cfg.validate());
  CHECK_NOTHROW(GameConfig::logistic_defaults().validate());

  GameConfig bad = cfg;
  bad.atom_budget = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.t_stop = cfg.t_representation + 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.t_average = bad.t_stop + 1;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.beta_rep = 1.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.step_f = 0.0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);

  bad = cfg;
  bad.fit.mode = PredictorFit::Mode::kSteps;
  bad.fit.steps = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad.fit.steps = 5;
  CHECK_NOTHROW(bad.validate());
}

TEST_CASE("update-rule guardrails") {
  const Eigen::VectorXd w = Eigen::VectorXd::Constant(2, 0.5);
  Eigen::VectorXd losses(3);
  losses << 0, 1, 2;
  CHECK_THROWS_AS(mwu_step(w, losses, 0.5, true), DimensionError);
  Eigen::VectorXd two(2);
  two << 0, 1;
  CHECK_THROWS_AS(mwu_step(w, two, 1.5, true), ConfigError);
  Eigen::VectorXd nan_losses(2);
  nan_losses << 0.0, std::nan("");
  CHECK_THROWS_AS(mwu_step(w, nan_losses, 0.5, true), NonFiniteGradient);
}
