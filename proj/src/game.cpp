#include "repgame/game.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <string>

#include "repgame/errors.hpp"
#include "repgame/lp.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

void GameConfig::validate() const {
  if (atom_budget < 1) throw ConfigError("game: atom budget must be positive");
  if (initial_functions < 0) throw ConfigError("game: negative function count");
  if (t_function < 0) throw ConfigError("game: negative ascent iterations");
  if (t_representation < 2) throw ConfigError("game: need at least two refinement iterations");
  if (t_stop < 2 || t_stop > t_representation) {
    throw ConfigError("game: weight freeze time must lie in [2, t_representation]");
  }
  if (t_average < 1 || t_average > t_stop) {
    throw ConfigError("game: averaging window must lie in [1, t_stop]");
  }
  if (!(step_f > 0.0) || !(step_rep > 0.0)) {
    throw ConfigError("game: step sizes must be positive");
  }
  if (!(beta_rep > 0.0 && beta_rep < 1.0 && beta_f > 0.0 && beta_f < 1.0)) {
    throw ConfigError("game: multiplicative-weights rates must lie in (0, 1)");
  }
  if (fit.mode == PredictorFit::Mode::kSteps && fit.steps < 1) {
    throw ConfigError("game: predictor fit needs at least one step");
  }
}

GameConfig GameConfig::linear_mse_defaults() {
  GameConfig cfg;
  cfg.t_function = 0;  // run the adversary to convergence
  cfg.t_representation = 100;
  cfg.t_stop = 80;
  cfg.t_average = 10;
  cfg.step_f = 0.944;
  cfg.step_rep = 0.713;
  cfg.beta_rep = 0.94;
  cfg.beta_f = 0.653;
  cfg.fit.mode = PredictorFit::Mode::kFull;
  return cfg;
}

GameConfig GameConfig::logistic_defaults() {
  GameConfig cfg;
  cfg.t_function = 1000;
  cfg.t_representation = 100;
  cfg.t_stop = 50;
  cfg.t_average = 25;
  cfg.step_f = 0.1;
  cfg.step_rep = 1e-3;
  cfg.beta_rep = 0.9;
  cfg.beta_f = 0.9;
  cfg.fit.mode = PredictorFit::Mode::kSteps;
  cfg.fit.steps = 25;
  return cfg;
}

Eigen::VectorXd mwu_step(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& losses, double beta,
                         bool minimize) {
  return mwu_step(weights, losses, beta, minimize, LossRange::of(losses));
}

Eigen::VectorXd mwu_step(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& losses, double beta,
                         bool minimize, const LossRange& range) {
  if (weights.size() != losses.size() || weights.size() == 0) {
    throw DimensionError("mwu_step: weight/loss size mismatch");
  }
  if (!(beta > 0.0 && beta < 1.0)) {
    throw ConfigError("mwu_step: rate must lie in (0, 1)");
  }
  if (!losses.allFinite()) {
    throw NonFiniteGradient("mwu_step: non-finite losses");
  }

  Eigen::VectorXd out = weights;
  const double span = range.hi - range.lo;
  if (span > 1e-15 * std::max(1.0, std::abs(range.hi))) {
    const double sign = minimize ? 1.0 : -1.0;
    const double log_beta = std::log(beta);
    // Work in log domain with a max shift so tiny weights cannot underflow
    // the whole vector.
    Eigen::VectorXd logw(out.size());
    double shift = -std::numeric_limits<double>::infinity();
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      const double scaled =
          std::clamp((losses(i) - range.lo) / span, 0.0, 1.0);
      logw(i) = (out(i) > 0.0 ? std::log(out(i)) : -std::numeric_limits<double>::infinity()) +
                sign * scaled * log_beta;
      shift = std::max(shift, logw(i));
    }
    for (Eigen::Index i = 0; i < out.size(); ++i) {
      out(i) = std::isfinite(logw(i)) ? std::exp(logw(i) - shift) : 0.0;
    }
  }
  const double total = out.sum();
  if (!(total > 0.0)) {
    throw NonFiniteGradient("mwu_step: weights collapsed");
  }
  return out / total;
}

MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& losses) {
  const int k = static_cast<int>(losses.rows());
  const int t = static_cast<int>(losses.cols());
  if (k < 1 || t < 1) throw DimensionError("solve_matrix_game: empty matrix");
  if (!losses.allFinite()) throw LpFailure("solve_matrix_game: non-finite entries");

  // Shift so every entry is >= 1, making the game value strictly positive.
  const double shift = 1.0 - losses.minCoeff();
  const Eigen::MatrixXd pos = losses.array() + shift;

  // Row player: max 1^T x s.t. pos^T x <= 1, x >= 0; then p = x / sum(x).
  Eigen::MatrixXd a(t, k + t);
  a.leftCols(k) = pos.transpose();
  a.rightCols(t) = Eigen::MatrixXd::Identity(t, t);
  Eigen::VectorXd b = Eigen::VectorXd::Ones(t);
  Eigen::VectorXd c = Eigen::VectorXd::Zero(k + t);
  c.head(k).setConstant(-1.0);

  const lp::Result res = lp::solve_standard(a, b, c);
  if (res.status != lp::Status::kOptimal) {
    throw LpFailure("solve_matrix_game: LP did not reach an optimum");
  }
  const double mass = res.x.head(k).sum();
  if (!(mass > 0.0)) throw LpFailure("solve_matrix_game: degenerate LP solution");

  MatrixGameSolution sol;
  sol.row = (res.x.head(k) / mass).cwiseMax(0.0);
  sol.row /= sol.row.sum();
  // Duals of the <= rows are nonpositive here; their negation carries the
  // column player's strategy.
  Eigen::VectorXd y = (-res.dual).cwiseMax(0.0);
  const double ymass = y.sum();
  if (!(ymass > 0.0)) throw LpFailure("solve_matrix_game: degenerate duals");
  sol.col = y / ymass;
  sol.value = 1.0 / mass - shift;

  const double attack = (losses.transpose() * sol.row).maxCoeff();
  const double defend = (losses * sol.col).minCoeff();
  if (attack - defend > tol::kDualityGap * (1.0 + std::abs(sol.value))) {
    throw LpFailure("solve_matrix_game: duality gap above tolerance");
  }
  return sol;
}

namespace {

void check_finite_grad(const Eigen::MatrixXd& g, const char* where) {
  if (!g.allFinite()) {
    throw NonFiniteGradient(std::string(where) + ": gradient has non-finite entries");
  }
}

}  // namespace

Phase1Result phase1(const GameState& state, const RegretOracle& oracle,
                    const GameConfig& cfg, Rng& rng) {
  const int k = static_cast<int>(state.atoms.size());
  if (k < 1 || state.rep_weights.size() != k) {
    throw DimensionError("phase1: state has no weighted atoms");
  }

  Eigen::VectorXd f = oracle.random_function(rng);
  std::vector<Eigen::VectorXd> qs(k);
  Eigen::VectorXd losses(k);
  auto refit = [&](bool warm) {
    for (int j = 0; j < k; ++j) {
      qs[j] = oracle.fit_predictor(state.atoms[j], f, cfg.fit,
                                   warm ? &qs[j] : nullptr);
      losses(j) = oracle.loss(state.atoms[j], f, qs[j]);
    }
  };
  refit(false);

  Phase1Result out;
  out.regret = state.rep_weights.dot(losses);
  out.iterations = 1;

  const int cap = cfg.t_function > 0 ? cfg.t_function : tol::kAscentCap;
  std::deque<double> window{out.regret};
  for (int t = 2; t <= cap; ++t) {
    Eigen::VectorXd grad = Eigen::VectorXd::Zero(f.size());
    for (int j = 0; j < k; ++j) {
      grad += state.rep_weights(j) * oracle.grad_f(state.atoms[j], f, qs[j]);
    }
    check_finite_grad(grad, "phase1");
    f = oracle.project_f(f + cfg.step_f * grad);
    refit(true);
    out.regret = state.rep_weights.dot(losses);
    out.iterations = t;

    if (cfg.t_function == 0) {
      window.push_back(out.regret);
      if (static_cast<int>(window.size()) > tol::kAscentWindow + 1) window.pop_front();
      if (static_cast<int>(window.size()) == tol::kAscentWindow + 1 &&
          out.regret - window.front() < tol::kAscentImprovement) {
        break;
      }
    }
  }
  out.f = f;
  out.atom_losses = losses;
  return out;
}

std::pair<int, double> phase1_finite(const std::vector<Representation>& atoms,
                                     const Eigen::VectorXd& weights,
                                     const FiniteClassOracle& oracle) {
  const int k = static_cast<int>(atoms.size());
  if (k < 1 || weights.size() != k) {
    throw DimensionError("phase1_finite: no weighted atoms");
  }
  int best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < oracle.function_count(); ++i) {
    double value = 0.0;
    for (int j = 0; j < k; ++j) value += weights(j) * oracle.regret(atoms[j], i);
    if (value > best_value) {  // strict: the first maximizer wins
      best_value = value;
      best = i;
    }
  }
  return {best, best_value};
}

Phase2Result phase2(const GameState& state, const RegretOracle& oracle,
                    const GameConfig& cfg, Rng& rng) {
  const int k = static_cast<int>(state.atoms.size());
  const int m = static_cast<int>(state.functions.size());
  if (k < 1 || m < 1) {
    throw DimensionError("phase2: need at least one atom and one function");
  }
  if (state.losses.rows() != k || state.losses.cols() != m) {
    throw DimensionError("phase2: stale loss table");
  }

  const int r = static_cast<int>(state.atoms.front().cols());
  Representation atom = oracle.random_atom(r, rng);
  // Point the first column at the newest adversarial function.  Descent can
  // refine from anywhere, but when the step budget is small the init decides
  // how much of the latest attack the atom can absorb.
  if (state.functions.back().norm() > tol::kZeroRep) {
    atom.col(0) = state.functions.back().normalized();
    atom = normalize_rep(atom);
  }
  std::vector<Eigen::VectorXd> qs(m);
  Eigen::VectorXd new_losses(m);
  auto refit = [&](bool warm) {
    for (int i = 0; i < m; ++i) {
      qs[i] = oracle.fit_predictor(atom, state.functions[i], cfg.fit,
                                   warm ? &qs[i] : nullptr);
      new_losses(i) = oracle.loss(atom, state.functions[i], qs[i]);
    }
  };
  refit(false);

  Eigen::VectorXd p = Eigen::VectorXd::Constant(k + 1, 1.0 / (k + 1));
  Eigen::VectorXd o = Eigen::VectorXd::Constant(m, 1.0 / m);
  Eigen::VectorXd p_acc = Eigen::VectorXd::Zero(k + 1);
  Eigen::VectorXd o_acc = Eigen::VectorXd::Zero(m);
  int acc_n = 0;

  double beta_rep = cfg.beta_rep;
  double beta_f = cfg.beta_f;
  if (cfg.adaptive_beta) {
    beta_rep = 1.0 / (1.0 + std::sqrt(std::log(std::max(2, k + 1)) / cfg.t_stop));
    beta_f = 1.0 / (1.0 + std::sqrt(std::log(std::max(2, m)) / cfg.t_stop));
  }

  // Running loss envelope: keeps the effective update rate constant over the
  // whole inner play instead of amplifying whatever spread one round has.
  LossRange range = LossRange::of(new_losses);
  range.absorb(Eigen::VectorXd(state.losses.reshaped()));

  for (int t = 2; t <= cfg.t_representation; ++t) {
    Eigen::MatrixXd grad = Eigen::MatrixXd::Zero(atom.rows(), atom.cols());
    for (int i = 0; i < m; ++i) {
      grad += o(i) * oracle.grad_rep(atom, state.functions[i], qs[i]);
    }
    check_finite_grad(grad, "phase2");
    atom = normalize_rep(atom - cfg.step_rep * grad);
    refit(true);

    if (t < cfg.t_stop) {
      // Simultaneous update from the same loss snapshot.
      range.absorb(new_losses);
      Eigen::VectorXd atom_losses(k + 1);
      atom_losses.head(k) = state.losses * o;
      atom_losses(k) = new_losses.dot(o);
      Eigen::VectorXd func_losses =
          state.losses.transpose() * p.head(k) + p(k) * new_losses;
      p = mwu_step(p, atom_losses, beta_rep, /*minimize=*/true, range);
      o = mwu_step(o, func_losses, beta_f, /*minimize=*/false, range);
    }
    if (t > cfg.t_stop - cfg.t_average && t <= cfg.t_stop) {
      p_acc += p;
      o_acc += o;
      ++acc_n;
    }
    if (t == cfg.t_stop && acc_n > 0) {
      p = p_acc / acc_n;
      o = o_acc / acc_n;
      p /= p.sum();
      o /= o.sum();
    }
  }

  Phase2Result out;
  out.atom = atom;
  out.rep_weights = p;
  out.func_weights = o;
  out.new_atom_losses = new_losses;
  return out;
}

GameResult run_game(const RegretOracle& oracle, const GameConfig& cfg,
                    const Representation& init_rep,
                    const std::vector<Eigen::VectorXd>& init_functions) {
  cfg.validate();
  if (init_rep.rows() != oracle.feature_dim() || init_rep.cols() < 1) {
    throw DimensionError("run_game: bad initial representation shape");
  }
  if (static_cast<int>(init_functions.size()) != cfg.initial_functions) {
    throw ConfigError("run_game: initial function count does not match config");
  }

  Rng root(cfg.seed);

  GameState state;
  state.atoms.push_back(init_rep);
  state.functions = init_functions;
  state.rep_weights = Eigen::VectorXd::Ones(1);
  state.losses.resize(1, static_cast<int>(init_functions.size()));
  for (int i = 0; i < static_cast<int>(init_functions.size()); ++i) {
    const Eigen::VectorXd q =
        oracle.fit_predictor(init_rep, init_functions[i], cfg.fit, nullptr);
    state.losses(0, i) = oracle.loss(init_rep, init_functions[i], q);
  }

  for (int k = 1; k <= cfg.atom_budget; ++k) {
    Rng rng1 = root.child("phase1/" + std::to_string(k));
    const Phase1Result ph1 = phase1(state, oracle, cfg, rng1);
    state.functions.push_back(ph1.f);
    state.losses.conservativeResize(Eigen::NoChange, state.losses.cols() + 1);
    state.losses.col(state.losses.cols() - 1) = ph1.atom_losses;
    state.regret_trace.push_back(ph1.regret);
    state.weight_history.push_back(state.rep_weights);

    Rng rng2 = root.child("phase2/" + std::to_string(k));
    const Phase2Result ph2 = phase2(state, oracle, cfg, rng2);
    state.atoms.push_back(ph2.atom);
    state.losses.conservativeResize(state.losses.rows() + 1, Eigen::NoChange);
    state.losses.row(state.losses.rows() - 1) = ph2.new_atom_losses;
    state.rep_weights = ph2.rep_weights;
  }

  int best = 0;
  for (int k = 1; k < static_cast<int>(state.regret_trace.size()); ++k) {
    if (state.regret_trace[k] < state.regret_trace[best]) best = k;  // first min wins
  }

  GameResult out;
  out.selected_atoms = best + 1;
  out.regret_trace = state.regret_trace;
  out.mixture.atoms.assign(state.atoms.begin(), state.atoms.begin() + best + 1);
  out.mixture.weights = state.weight_history[best];
  out.mixture.validate();
  out.state = std::move(state);
  return out;
}

Representation fit_atom_finite(const FiniteClassOracle& oracle, int i, int r,
                               const GameConfig& cfg, Rng& rng) {
  Representation atom = rng.normal_matrix(oracle.feature_dim(), r);
  // Columns start at the raw-feature fits of labelings i, i+1, ...  One atom
  // can then cover as many labelings as it has columns; the descent below
  // only refines the fit for labeling i itself.
  const int t = oracle.function_count();
  for (int j = 0; j < r && j < t; ++j) {
    const Eigen::VectorXd& w = oracle.baseline_predictor((i + j) % t);
    if (w.norm() > tol::kZeroRep) atom.col(j) = w.normalized();
  }
  atom = normalize_rep(atom);
  Eigen::VectorXd q = oracle.fit_predictor(atom, i, cfg.fit, nullptr);
  for (int t = 2; t <= cfg.t_representation; ++t) {
    const Eigen::MatrixXd grad = oracle.grad_rep(atom, i, q);
    check_finite_grad(grad, "fit_atom_finite");
    atom = normalize_rep(atom - cfg.step_rep * grad);
    q = oracle.fit_predictor(atom, i, cfg.fit, &q);
  }
  return atom;
}

FiniteGameResult run_finite(const FiniteClassOracle& oracle, int r,
                            const GameConfig& cfg) {
  cfg.validate();
  if (r < 1 || r > oracle.feature_dim()) {
    throw DimensionError("run_finite: bad representation width");
  }
  const int t = oracle.function_count();

  Rng root(cfg.seed);
  std::vector<Representation> atoms;
  atoms.reserve(t);
  for (int i = 0; i < t; ++i) {
    Rng rng = root.child("finite_atom/" + std::to_string(i));
    atoms.push_back(fit_atom_finite(oracle, i, r, cfg, rng));
  }

  Eigen::MatrixXd table(t, t);
  for (int j = 0; j < t; ++j) {
    for (int i = 0; i < t; ++i) table(j, i) = oracle.regret(atoms[j], i);
  }

  const MatrixGameSolution sol = solve_matrix_game(table);

  FiniteGameResult out;
  out.mixture.atoms = std::move(atoms);
  out.mixture.weights = sol.row;
  out.mixture.validate();
  out.regret_table = table;
  out.function_weights = sol.col;
  out.value = sol.value;
  return out;
}

Representation harvest_initial_rep(const RegretOracle& oracle, int r,
                                   const GameConfig& cfg, Rng& rng) {
  if (r < 1) throw DimensionError("harvest_initial_rep: need r >= 1");
  GameConfig sub = cfg;
  sub.atom_budget = r;
  sub.initial_functions = 0;
  sub.seed = rng.child("harvest").next_u64();

  const Representation zero_col = Eigen::MatrixXd::Zero(oracle.feature_dim(), 1);
  const GameResult res = run_game(oracle, sub, zero_col, {});

  Representation init(oracle.feature_dim(), r);
  // Atom 0 is the zero seed; the harvested directions follow it.
  for (int j = 0; j < r; ++j) init.col(j) = res.state.atoms[j + 1].col(0);
  return init;
}

Representation fit_initial_rep_single(const RegretOracle& oracle, int r,
                                      const GameConfig& cfg, Rng& rng) {
  if (r < 1) throw DimensionError("fit_initial_rep_single: need r >= 1");
  // Worst function against an uninformative (zero) representation.
  GameState stub;
  stub.atoms.push_back(Eigen::MatrixXd::Zero(oracle.feature_dim(), 1));
  stub.rep_weights = Eigen::VectorXd::Ones(1);
  Rng rng1 = rng.child("single/phase1");
  const Phase1Result ph1 = phase1(stub, oracle, cfg, rng1);

  // Full-width atom fitted to that function alone.
  Rng rng2 = rng.child("single/fit");
  Representation atom = oracle.random_atom(r, rng2);
  Eigen::VectorXd q = oracle.fit_predictor(atom, ph1.f, cfg.fit, nullptr);
  for (int t = 2; t <= cfg.t_representation; ++t) {
    const Eigen::MatrixXd grad = oracle.grad_rep(atom, ph1.f, q);
    check_finite_grad(grad, "fit_initial_rep_single");
    atom = normalize_rep(atom - cfg.step_rep * grad);
    q = oracle.fit_predictor(atom, ph1.f, cfg.fit, &q);
  }
  return atom;
}

}  // namespace repgame
