#pragma once

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include "repgame/finite_class_oracle.hpp"
#include "repgame/oracle.hpp"
#include "repgame/rng.hpp"
#include "repgame/types.hpp"

namespace repgame {

struct GameConfig {
  int atom_budget = 1;        // mixture atoms to grow
  int initial_functions = 0;  // adversarial functions seeded before play
  int t_function = 0;         // ascent iterations per adversary turn; 0 = to convergence
  int t_representation = 100; // total refinement iterations for a new atom
  int t_stop = 80;            // weights freeze (to a trailing average) here
  int t_average = 10;         // trailing-average window length
  double step_f = 0.944;
  double step_rep = 0.713;
  double beta_rep = 0.94;   // multiplicative-weights rate, atom player
  double beta_f = 0.653;    // multiplicative-weights rate, function player
  bool adaptive_beta = false;  // beta = 1/(1 + sqrt(ln(n)/T)) per player
  std::uint64_t seed = 0;
  PredictorFit fit{};

  void validate() const;

  // Hyperparameters tuned for the two bundled experiment families.
  static GameConfig linear_mse_defaults();
  static GameConfig logistic_defaults();
};

struct GameState {
  std::vector<Representation> atoms;
  std::vector<Eigen::VectorXd> functions;
  Eigen::VectorXd rep_weights;  // distribution over atoms
  Eigen::MatrixXd losses;       // atoms x functions
  std::vector<double> regret_trace;
  std::vector<Eigen::VectorXd> weight_history;  // weights in force per measurement
};

struct GameResult {
  MixedRepresentation mixture;  // best prefix of the atom sequence
  std::vector<double> regret_trace;
  int selected_atoms = 0;
  GameState state;
};

// One multiplicative-weights update.  Losses are affinely rescaled to [0,1]
// before exponentiation; by default the call's own (min, max) sets the range,
// while iterated play passes the running envelope seen so far to keep the
// effective rate fixed across rounds.  A constant loss vector (zero-width
// range) leaves the weights unchanged.  minimize selects whether low or high
// loss gains weight.
struct LossRange {
  double lo = 0.0;
  double hi = 0.0;
  void absorb(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void absorb(const Eigen::VectorXd& v) {
    for (Eigen::Index i = 0; i < v.size(); ++i) absorb(v(i));
  }
  static LossRange of(const Eigen::VectorXd& v) {
    return {v.minCoeff(), v.maxCoeff()};
  }
};

Eigen::VectorXd mwu_step(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& losses, double beta,
                         bool minimize);
Eigen::VectorXd mwu_step(const Eigen::VectorXd& weights,
                         const Eigen::VectorXd& losses, double beta,
                         bool minimize, const LossRange& range);

struct MatrixGameSolution {
  Eigen::VectorXd row;  // minimizing player's mixed strategy
  Eigen::VectorXd col;  // maximizing player's mixed strategy
  double value = 0.0;
};

// Exact equilibrium of the zero-sum game min_p max_o p^T L o by LP, with a
// verified duality gap.
MatrixGameSolution solve_matrix_game(const Eigen::MatrixXd& losses);

struct Phase1Result {
  Eigen::VectorXd f;
  double regret = 0.0;
  Eigen::VectorXd atom_losses;  // loss of each atom at f
  int iterations = 0;
};

// Adversary turn: projected gradient ascent of the mixture loss over f.
Phase1Result phase1(const GameState& state, const RegretOracle& oracle,
                    const GameConfig& cfg, Rng& rng);

// Adversary turn against an explicit function list: exact argmax.
std::pair<int, double> phase1_finite(const std::vector<Representation>& atoms,
                                     const Eigen::VectorXd& weights,
                                     const FiniteClassOracle& oracle);

struct Phase2Result {
  Representation atom;
  Eigen::VectorXd rep_weights;   // over existing atoms plus the new one
  Eigen::VectorXd func_weights;  // the max player's final average
  Eigen::VectorXd new_atom_losses;
};

// Learner turn: fit one more atom by gradient descent against the
// multiplicative-weights function mixture, re-weighting both players.
Phase2Result phase2(const GameState& state, const RegretOracle& oracle,
                    const GameConfig& cfg, Rng& rng);

// Full incremental solver.  Returns the prefix of atoms whose measured
// worst-case regret was smallest, with the weights in force at that point.
GameResult run_game(const RegretOracle& oracle, const GameConfig& cfg,
                    const Representation& init_rep,
                    const std::vector<Eigen::VectorXd>& init_functions);

struct FiniteGameResult {
  MixedRepresentation mixture;
  Eigen::MatrixXd regret_table;  // atoms x functions
  Eigen::VectorXd function_weights;
  double value = 0.0;
};

// Finite classes: one candidate r-column atom fitted per function, then an
// exact matrix-game solve over the cross-regret table.
FiniteGameResult run_finite(const FiniteClassOracle& oracle, int r,
                            const GameConfig& cfg);

// Fits a fresh r-column atom to a single labeled function by normalized
// gradient descent (the inner loop of run_finite, exposed for reuse).
Representation fit_atom_finite(const FiniteClassOracle& oracle, int i, int r,
                               const GameConfig& cfg, Rng& rng);

// Seed representation for the squared-error game: run the engine at width
// one from an all-zero column and collect the atoms it finds, one per worst
// direction.
Representation harvest_initial_rep(const RegretOracle& oracle, int r,
                                   const GameConfig& cfg, Rng& rng);

// Seed representation for non-quadratic games: find the worst function
// against an uninformative representation, then fit a full-width atom to it.
Representation fit_initial_rep_single(const RegretOracle& oracle, int r,
                                      const GameConfig& cfg, Rng& rng);

}  // namespace repgame
