#include "repgame/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <string>
#include <vector>

#include "json.hpp"

#include "repgame/config.hpp"
#include "repgame/csv.hpp"
#include "repgame/data.hpp"
#include "repgame/errors.hpp"
#include "repgame/finite_class_oracle.hpp"
#include "repgame/game.hpp"
#include "repgame/linear_mse.hpp"
#include "repgame/linear_regret.hpp"
#include "repgame/logistic_oracle.hpp"
#include "repgame/mse_oracle.hpp"
#include "repgame/tolerances.hpp"

namespace repgame {

namespace {

namespace fs = std::filesystem;
using nlohmann::json;

fs::path prepare_out(const CliOptions& opt) {
  fs::path out(opt.out_dir.empty() ? "." : opt.out_dir);
  fs::create_directories(out);
  return out;
}

std::uint64_t pick_seed(const ConfigFile& cfg, const std::string& section,
                        const CliOptions& opt) {
  if (opt.seed.has_value()) return *opt.seed;
  return cfg.get_u64(section, "seed", 0);
}

std::vector<double> to_std(const Eigen::VectorXd& v) {
  return std::vector<double>(v.data(), v.data() + v.size());
}

// Shared [game] override block.
const std::set<std::string>& game_keys() {
  static const std::set<std::string> keys = {
      "game.t_function",  "game.t_representation", "game.t_stop",
      "game.t_average",   "game.step_f",           "game.step_rep",
      "game.beta_rep",    "game.beta_f",           "game.adaptive_beta",
      "game.fit_mode",    "game.fit_steps",
  };
  return keys;
}

std::set<std::string> with_game(std::set<std::string> keys) {
  keys.insert(game_keys().begin(), game_keys().end());
  return keys;
}

GameConfig game_overrides(const ConfigFile& cfg, GameConfig base) {
  base.t_function = cfg.get_int("game", "t_function", base.t_function);
  base.t_representation =
      cfg.get_int("game", "t_representation", base.t_representation);
  base.t_stop = cfg.get_int("game", "t_stop", base.t_stop);
  base.t_average = cfg.get_int("game", "t_average", base.t_average);
  base.step_f = cfg.get_double("game", "step_f", base.step_f);
  base.step_rep = cfg.get_double("game", "step_rep", base.step_rep);
  base.beta_rep = cfg.get_double("game", "beta_rep", base.beta_rep);
  base.beta_f = cfg.get_double("game", "beta_f", base.beta_f);
  base.adaptive_beta = cfg.get_bool("game", "adaptive_beta", base.adaptive_beta);
  const std::string mode = cfg.get_string(
      "game", "fit_mode",
      base.fit.mode == PredictorFit::Mode::kFull ? "full" : "steps");
  if (mode == "full") {
    base.fit.mode = PredictorFit::Mode::kFull;
  } else if (mode == "steps") {
    base.fit.mode = PredictorFit::Mode::kSteps;
  } else {
    throw ConfigError("game.fit_mode must be 'full' or 'steps'");
  }
  base.fit.steps = cfg.get_int("game", "fit_steps", base.fit.steps);
  return base;
}

// Spectrum construction for the [problem] block; prefix is "x" or "s".
SpdMatrix covariance_from_config(const ConfigFile& cfg, const std::string& prefix,
                                 int d, Rng rng, const fs::path& base_dir) {
  const std::string kind =
      cfg.get_string("problem", prefix + "_spectrum", "identity");
  if (kind == "identity") {
    return SpdMatrix::identity(d);
  }
  if (kind == "powerlaw") {
    const double alpha = cfg.get_double("problem", prefix + "_alpha", 1.0);
    return make_covariance(d, PowerLawSpectrum{alpha}, rng);
  }
  if (kind == "lognormal") {
    const double sigma0 = cfg.get_double("problem", prefix + "_sigma0", 1.0);
    return make_covariance(d, LogNormalSpectrum{sigma0}, rng);
  }
  if (kind == "rising") {
    // diag(i^p), growing with the coordinate index.
    const double p = cfg.get_double("problem", prefix + "_power", 2.0);
    Eigen::VectorXd diag(d);
    for (int i = 0; i < d; ++i) diag(i) = std::pow(i + 1.0, p);
    return make_covariance(d, ExplicitSpectrum{diag}, rng);
  }
  if (kind == "file") {
    const std::string rel = cfg.get_string("problem", prefix + "_file", "");
    if (rel.empty()) {
      throw ConfigError("problem." + prefix + "_file required for spectrum kind 'file'");
    }
    const fs::path path = fs::path(rel).is_absolute() ? fs::path(rel) : base_dir / rel;
    const Eigen::MatrixXd m = read_matrix_csv(path.string());
    if (m.rows() == 1 || m.cols() == 1) {
      const Eigen::VectorXd diag =
          m.rows() == 1 ? Eigen::VectorXd(m.row(0).transpose())
                        : Eigen::VectorXd(m.col(0));
      if (diag.size() != d) {
        throw ConfigError("spectrum file length does not match problem.d");
      }
      return make_covariance(d, ExplicitSpectrum{diag}, rng);
    }
    if (m.rows() != d || m.cols() != d) {
      throw ConfigError("covariance file shape does not match problem.d");
    }
    return SpdMatrix(m);
  }
  throw ConfigError("unknown spectrum kind '" + kind + "' for " + prefix);
}

const std::set<std::string>& solve_keys() {
  static const std::set<std::string> keys = {
      "problem.d",        "problem.r",        "problem.seed",
      "problem.x_spectrum", "problem.x_alpha", "problem.x_sigma0",
      "problem.x_file",     "problem.x_power",
      "problem.s_spectrum", "problem.s_alpha", "problem.s_sigma0",
      "problem.s_file",     "problem.s_power",
      "sweep.alpha_list",
  };
  return keys;
}

// Optional [sweep] block shared by the two closed-form commands: re-solves
// over a power-law exponent grid for the sample covariance.
void maybe_write_sweep(const ConfigFile& cfg, int d, int r,
                       std::uint64_t seed, const fs::path& base_dir,
                       const fs::path& out) {
  if (!cfg.has("sweep", "alpha_list")) return;
  std::vector<std::vector<double>> rows;
  for (const double alpha : cfg.get_double_list("sweep", "alpha_list")) {
    Rng rng = make_rng(seed, "sweep-cov");
    const SpdMatrix sx = make_covariance(d, PowerLawSpectrum{alpha}, rng);
    const SpdMatrix s =
        covariance_from_config(cfg, "s", d, make_rng(seed, "covariance/s"), base_dir);
    const PureSolution pure = solve_pure(sx, s, r);
    const MixedSolution mixed = solve_mixed(sx, s, r);
    rows.push_back({alpha, pure.regret, mixed.regret,
                    static_cast<double>(mixed.effective_dim.value)});
  }
  write_table_csv((out / "sweep.csv").string(),
                  "alpha,pure_regret,mixed_regret,ell_star", rows);
}

void write_json(const fs::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) throw ConfigError("cannot open for writing: " + path.string());
  out << j.dump(2) << "\n";
}

}  // namespace

int cmd_solve_pure(const CliOptions& opt) {
  ConfigFile cfg = ConfigFile::parse_file(opt.config_path);
  cfg.restrict_to(solve_keys());
  const int d = cfg.require_int("problem", "d");
  const int r = cfg.require_int("problem", "r");
  const std::uint64_t seed = pick_seed(cfg, "problem", opt);
  const fs::path base_dir = fs::path(opt.config_path).parent_path();

  const SpdMatrix sx =
      covariance_from_config(cfg, "x", d, make_rng(seed, "covariance/x"), base_dir);
  const SpdMatrix s =
      covariance_from_config(cfg, "s", d, make_rng(seed, "covariance/s"), base_dir);

  const PureSolution sol = solve_pure(sx, s, r);

  const fs::path out = prepare_out(opt);
  write_matrix_csv((out / "representation.csv").string(), sol.rep);
  write_matrix_csv((out / "worst_function.csv").string(), sol.worst_f);

  json j;
  j["command"] = "solve-pure";
  j["d"] = d;
  j["r"] = r;
  j["seed"] = seed;
  j["regret"] = sol.regret;
  j["representation_file"] = "representation.csv";
  j["worst_function_file"] = "worst_function.csv";
  write_json(out / "solution.json", j);

  maybe_write_sweep(cfg, d, r, seed, base_dir, out);
  std::printf("solve-pure: d=%d r=%d regret=%.12g\n", d, r, sol.regret);
  return 0;
}

int cmd_solve_mixed(const CliOptions& opt) {
  ConfigFile cfg = ConfigFile::parse_file(opt.config_path);
  cfg.restrict_to(solve_keys());
  const int d = cfg.require_int("problem", "d");
  const int r = cfg.require_int("problem", "r");
  const std::uint64_t seed = pick_seed(cfg, "problem", opt);
  const fs::path base_dir = fs::path(opt.config_path).parent_path();

  const SpdMatrix sx =
      covariance_from_config(cfg, "x", d, make_rng(seed, "covariance/x"), base_dir);
  const SpdMatrix s =
      covariance_from_config(cfg, "s", d, make_rng(seed, "covariance/s"), base_dir);

  const MixedSolution sol = solve_mixed(sx, s, r);
  const RegretReport achieved =
      mixture_regret_linear(sol.mixture, QuadraticBall{s}, sx);

  const fs::path out = prepare_out(opt);
  std::vector<std::string> atom_files;
  for (int jx = 0; jx < sol.mixture.atom_count(); ++jx) {
    char name[32];
    std::snprintf(name, sizeof(name), "atom_%02d.csv", jx);
    write_matrix_csv((out / name).string(), sol.mixture.atoms[jx]);
    atom_files.emplace_back(name);
  }
  write_matrix_csv((out / "prior_covariance.csv").string(), sol.prior_covariance);

  json j;
  j["command"] = "solve-mixed";
  j["d"] = d;
  j["r"] = r;
  j["seed"] = seed;
  j["regret"] = sol.regret;
  j["achieved_value"] = achieved.value;
  j["ell_star"] = sol.effective_dim.value;
  j["weights"] = to_std(sol.mixture.weights);
  j["exclusion_marginals"] = to_std(sol.exclusion_marginals);
  j["atom_files"] = atom_files;
  j["prior_file"] = "prior_covariance.csv";
  write_json(out / "solution.json", j);

  maybe_write_sweep(cfg, d, r, seed, base_dir, out);
  std::printf("solve-mixed: d=%d r=%d regret=%.12g ell_star=%d atoms=%d\n", d, r,
              sol.regret, sol.effective_dim.value, sol.mixture.atom_count());
  return 0;
}

int cmd_ratio(const CliOptions& opt) {
  ConfigFile cfg = ConfigFile::parse_file(opt.config_path);
  cfg.restrict_to(with_game({"ratio.r", "ratio.d_list", "ratio.trials",
                             "ratio.sigma0", "ratio.atom_budget", "ratio.seed"}));
  const int r = cfg.require_int("ratio", "r");
  const std::vector<int> d_list = cfg.get_int_list("ratio", "d_list");
  const int trials = cfg.get_int("ratio", "trials", 3);
  const double sigma0 = cfg.get_double("ratio", "sigma0", 1.0);
  const int budget = cfg.get_int("ratio", "atom_budget", 0);
  const std::uint64_t seed = pick_seed(cfg, "ratio", opt);

  std::vector<std::vector<double>> rows;
  for (const int d : d_list) {
    for (int trial = 0; trial < trials; ++trial) {
      const std::string tag =
          "ratio/" + std::to_string(d) + "/" + std::to_string(trial);
      Rng cov_rng = make_rng(seed, tag + "/cov");
      const SpdMatrix drawn =
          make_covariance(d, LogNormalSpectrum{sigma0}, cov_rng);
      // The reported ratio is invariant to rescaling the covariance, and the
      // solver's default step sizes assume a unit-spectral-norm instance.
      const SpdMatrix sx(drawn.matrix() / drawn.lambda_max());
      const SpdMatrix s = SpdMatrix::identity(d);
      const MixedSolution theory = solve_mixed(sx, s, r);

      const MseOracle oracle(sx, s);
      GameConfig g = game_overrides(cfg, GameConfig::linear_mse_defaults());
      g.atom_budget = budget > 0 ? budget : theory.effective_dim.value + 8;
      g.initial_functions = 0;
      g.seed = Rng::derive(seed, tag + "/game");

      Rng init_rng = make_rng(seed, tag + "/init");
      const Representation init = harvest_initial_rep(oracle, r, g, init_rng);
      const GameResult res = run_game(oracle, g, init, {});
      const RegretReport report =
          mixture_regret_linear(res.mixture, QuadraticBall{s}, sx);

      rows.push_back({static_cast<double>(d), report.value, theory.regret,
                      report.value / theory.regret,
                      static_cast<double>(res.selected_atoms)});
      std::printf("ratio: d=%d trial=%d algo=%.6g theory=%.6g ratio=%.4f atoms=%d\n",
                  d, trial, report.value, theory.regret,
                  report.value / theory.regret, res.selected_atoms);
    }
  }
  const fs::path out = prepare_out(opt);
  write_table_csv((out / "ratio.csv").string(),
                  "d,algo_regret,theory_regret,ratio,atoms_used", rows);
  return 0;
}

int cmd_logistic(const CliOptions& opt) {
  ConfigFile cfg = ConfigFile::parse_file(opt.config_path);
  cfg.restrict_to(with_game({"logistic.d", "logistic.r", "logistic.samples",
                             "logistic.m_max", "logistic.seed"}));
  const int d = cfg.require_int("logistic", "d");
  const int r = cfg.require_int("logistic", "r");
  const int samples = cfg.get_int("logistic", "samples", 1000);
  const int m_max = cfg.get_int("logistic", "m_max", 8);
  const std::uint64_t seed = pick_seed(cfg, "logistic", opt);

  const SpdMatrix sx = SpdMatrix::identity(d);
  Rng data_rng = make_rng(seed, "logistic/data");
  const EmpiricalDistribution data = gaussian_samples(samples, sx, data_rng);
  const LogisticOracle oracle(data, SpdMatrix::identity(d));

  GameConfig g = game_overrides(cfg, GameConfig::logistic_defaults());
  g.atom_budget = m_max;
  g.initial_functions = 0;
  g.seed = Rng::derive(seed, "logistic/game");

  Rng init_rng = make_rng(seed, "logistic/init");
  const Representation init = fit_initial_rep_single(oracle, r, g, init_rng);
  const GameResult res = run_game(oracle, g, init, {});

  // Budget-m results coincide with prefix minima of one budget-m_max run:
  // every random stream is derived per outer iteration.
  std::vector<std::vector<double>> rows;
  double best = res.regret_trace.front();
  for (int m = 1; m <= m_max; ++m) {
    best = std::min(best, res.regret_trace[m - 1]);
    rows.push_back({static_cast<double>(m), best});
    std::printf("logistic: m=%d regret=%.6g\n", m, best);
  }
  const fs::path out = prepare_out(opt);
  write_table_csv((out / "logistic.csv").string(), "m,regret", rows);
  return 0;
}

namespace {

double test_xent(const Eigen::VectorXd& scores, const Eigen::VectorXd& y) {
  double total = 0.0;
  for (Eigen::Index b = 0; b < scores.size(); ++b) {
    total += stable_softplus(-y(b) * scores(b));
  }
  return total / static_cast<double>(scores.size());
}

double test_accuracy(const Eigen::VectorXd& scores, const Eigen::VectorXd& y) {
  int hits = 0;
  for (Eigen::Index b = 0; b < scores.size(); ++b) {
    const double pred = scores(b) >= 0.0 ? 1.0 : -1.0;
    if (pred == y(b)) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(scores.size());
}

struct TestEval {
  double worst_xent;
  double avg_xent;
  double worst_acc;
  double avg_acc;
};

// Mixture evaluation on held-out features: predictors are fit on the
// training oracle, losses averaged over atoms, worst case over functions.
TestEval evaluate_mixture(const std::vector<Representation>& atoms,
                          const Eigen::VectorXd& weights,
                          const FiniteClassOracle& train_oracle,
                          const Eigen::MatrixXd& x_test,
                          const std::vector<Eigen::VectorXd>& y_test) {
  const int t = static_cast<int>(y_test.size());
  double worst_xent = 0.0;
  double sum_xent = 0.0;
  double worst_acc = 1.0;
  double sum_acc = 0.0;
  for (int i = 0; i < t; ++i) {
    double xent = 0.0;
    double acc = 0.0;
    for (size_t j = 0; j < atoms.size(); ++j) {
      const Eigen::VectorXd q =
          train_oracle.fit_predictor(atoms[j], i, PredictorFit{});
      const Eigen::VectorXd scores = x_test * (atoms[j] * q);
      xent += weights(static_cast<Eigen::Index>(j)) * test_xent(scores, y_test[i]);
      acc += weights(static_cast<Eigen::Index>(j)) * test_accuracy(scores, y_test[i]);
    }
    worst_xent = std::max(worst_xent, xent);
    sum_xent += xent;
    worst_acc = std::min(worst_acc, acc);
    sum_acc += acc;
  }
  return {worst_xent, sum_xent / t, worst_acc, sum_acc / t};
}

}  // namespace

int cmd_shapes(const CliOptions& opt) {
  ConfigFile cfg = ConfigFile::parse_file(opt.config_path);
  cfg.restrict_to(with_game({"shapes.train", "shapes.test", "shapes.r_list",
                             "shapes.stamps", "shapes.fit_step",
                             "shapes.fit_iters", "shapes.seed"}));
  const int n_train = cfg.get_int("shapes", "train", 1000);
  const int n_test = cfg.get_int("shapes", "test", 1000);
  const std::vector<int> r_list = cfg.get_int_list("shapes", "r_list");
  const int stamps = cfg.get_int("shapes", "stamps", 4);
  const std::uint64_t seed = pick_seed(cfg, "shapes", opt);

  ShapesConfig tc;
  tc.count = n_train;
  tc.stamps_per_image = stamps;
  tc.seed = Rng::derive(seed, "shapes/train");
  ShapesConfig ec = tc;
  ec.count = n_test;
  ec.seed = Rng::derive(seed, "shapes/test");

  const ShapesDataset train = shapes_dataset(tc);
  const ShapesDataset test = shapes_dataset(ec);

  const Eigen::RowVectorXd mu = train.images.mean();
  EmpiricalDistribution centered;
  centered.samples = train.images.samples.rowwise() - mu;
  const Eigen::MatrixXd x_test = test.images.samples.rowwise() - mu;

  // Pixel counts are high relative to the sample budget, so the raw-feature
  // fits are stopped early; running them to convergence memorizes the train
  // split and sends test scores far out of calibration.
  GradientFitParams fitp;
  fitp.step = cfg.get_double("shapes", "fit_step", fitp.step);
  fitp.max_iters = cfg.get_int("shapes", "fit_iters", 200);
  const FiniteClassOracle oracle(centered, train.labels, fitp);

  const Eigen::MatrixXd cov_raw =
      centered.samples.transpose() * centered.samples /
      static_cast<double>(centered.samples.rows());
  const SpdMatrix cov(0.5 * (cov_raw + cov_raw.transpose()));

  const fs::path out = prepare_out(opt);
  for (int i = 0; i < std::min(6, n_train); ++i) {
    char name[32];
    std::snprintf(name, sizeof(name), "train_image_%02d.pgm", i);
    write_pgm((out / name).string(), train.images.samples.row(i).transpose(),
              ShapesDataset::kSide);
  }

  std::ofstream table(out / "shapes.csv");
  if (!table) throw ConfigError("cannot open shapes.csv for writing");
  table << "r,method,worst_case_xent,avg_xent,worst_case_acc,avg_acc\n";

  const GameConfig base = game_overrides(cfg, GameConfig::logistic_defaults());
  for (const int r : r_list) {
    GameConfig g = base;
    g.seed = Rng::derive(seed, "shapes/game/" + std::to_string(r));
    const FiniteGameResult fg = run_finite(oracle, r, g);
    const TestEval mm = evaluate_mixture(fg.mixture.atoms, fg.mixture.weights,
                                         oracle, x_test, test.labels);

    const Representation pca = cov.eigenvectors().leftCols(r);
    const TestEval pc =
        evaluate_mixture({pca}, Eigen::VectorXd::Ones(1), oracle, x_test,
                         test.labels);

    table << r << ",minimax," << format_double(mm.worst_xent) << ','
          << format_double(mm.avg_xent) << ',' << format_double(mm.worst_acc)
          << ',' << format_double(mm.avg_acc) << "\n";
    table << r << ",pca," << format_double(pc.worst_xent) << ','
          << format_double(pc.avg_xent) << ',' << format_double(pc.worst_acc)
          << ',' << format_double(pc.avg_acc) << "\n";
    std::printf("shapes: r=%d minimax worst=%.4f pca worst=%.4f\n", r,
                mm.worst_xent, pc.worst_xent);
  }
  if (!table) throw ConfigError("write failed: shapes.csv");
  return 0;
}

int cmd_curve(const CliOptions& opt) {
  ConfigFile cfg = ConfigFile::parse_file(opt.config_path);
  cfg.restrict_to(with_game({"curve.d", "curve.r", "curve.sigma0",
                             "curve.atom_budget", "curve.seed"}));
  const int d = cfg.require_int("curve", "d");
  const int r = cfg.require_int("curve", "r");
  const double sigma0 = cfg.get_double("curve", "sigma0", 1.0);
  const std::uint64_t seed = pick_seed(cfg, "curve", opt);

  Rng cov_rng = make_rng(seed, "curve/cov");
  const SpdMatrix drawn = make_covariance(d, LogNormalSpectrum{sigma0}, cov_rng);
  const SpdMatrix sx(drawn.matrix() / drawn.lambda_max());
  const SpdMatrix s = SpdMatrix::identity(d);
  const MixedSolution theory = solve_mixed(sx, s, r);

  const int budget = cfg.get_int("curve", "atom_budget",
                                 theory.effective_dim.value + 8);

  const MseOracle oracle(sx, s);
  GameConfig g = game_overrides(cfg, GameConfig::linear_mse_defaults());
  g.atom_budget = budget;
  g.seed = Rng::derive(seed, "curve/game");

  Rng init_rng = make_rng(seed, "curve/init");
  const Representation init = harvest_initial_rep(oracle, r, g, init_rng);
  const GameResult res = run_game(oracle, g, init, {});

  std::vector<std::vector<double>> rows;
  for (size_t k = 0; k < res.regret_trace.size(); ++k) {
    rows.push_back({static_cast<double>(k + 1), res.regret_trace[k]});
  }
  const fs::path out = prepare_out(opt);
  write_table_csv((out / "curve.csv").string(), "k,reg_k", rows);
  std::printf("curve: d=%d r=%d theory=%.6g best=%.6g\n", d, r, theory.regret,
              *std::min_element(res.regret_trace.begin(), res.regret_trace.end()));
  return 0;
}

int cmd_selftest(const CliOptions& opt) {
  const std::uint64_t seed = opt.seed.value_or(0);
  const fs::path out = prepare_out(opt);

  // Raw stream probe: uniform and normal draws from tagged children.
  {
    Rng a = make_rng(seed, "probe/uniform");
    Rng b = make_rng(seed, "probe/normal");
    Eigen::MatrixXd probe(2, 8);
    for (int i = 0; i < 8; ++i) probe(0, i) = a.uniform();
    for (int i = 0; i < 8; ++i) probe(1, i) = b.normal();
    write_matrix_csv((out / "rng_probe.csv").string(), probe);
  }

  const fs::path cfg_dir = out / "configs";
  fs::create_directories(cfg_dir);
  auto run_with = [&](const std::string& name, const std::string& text,
                      int (*fn)(const CliOptions&)) {
    const fs::path cfg_path = cfg_dir / (name + ".ini");
    std::ofstream f(cfg_path);
    f << text;
    f.close();
    CliOptions sub;
    sub.config_path = cfg_path.string();
    sub.out_dir = out.string();
    sub.seed = seed;
    if (fn(sub) != 0) throw ConfigError("selftest step failed: " + name);
  };

  run_with("solve_mixed",
           "[problem]\n"
           "d = 8\n"
           "r = 2\n"
           "x_spectrum = lognormal\n"
           "x_sigma0 = 1.0\n",
           &cmd_solve_mixed);

  run_with("ratio",
           "[ratio]\n"
           "r = 2\n"
           "d_list = 6\n"
           "trials = 1\n"
           "sigma0 = 1.0\n"
           "atom_budget = 4\n"
           "[game]\n"
           "t_function = 300\n"
           "t_representation = 40\n"
           "t_stop = 30\n"
           "t_average = 5\n",
           &cmd_ratio);

  run_with("logistic",
           "[logistic]\n"
           "d = 5\n"
           "r = 1\n"
           "samples = 60\n"
           "m_max = 2\n"
           "[game]\n"
           "t_function = 60\n"
           "t_representation = 25\n"
           "t_stop = 18\n"
           "t_average = 5\n",
           &cmd_logistic);

  run_with("shapes",
           "[shapes]\n"
           "train = 40\n"
           "test = 40\n"
           "r_list = 2\n"
           "stamps = 4\n"
           "[game]\n"
           "t_representation = 12\n"
           "t_stop = 9\n"
           "t_average = 3\n"
           "fit_mode = steps\n"
           "fit_steps = 10\n",
           &cmd_shapes);

  run_with("curve",
           "[curve]\n"
           "d = 8\n"
           "r = 2\n"
           "sigma0 = 1.0\n"
           "atom_budget = 5\n"
           "[game]\n"
           "t_function = 300\n"
           "t_representation = 40\n"
           "t_stop = 30\n"
           "t_average = 5\n",
           &cmd_curve);

  std::printf("selftest complete\n");
  return 0;
}

}  // namespace repgame
