#include <cstdio>
#include <exception>
#include <string>

#include "CLI11.hpp"

#include "repgame/errors.hpp"
#include "repgame/experiments.hpp"

namespace {

struct Command {
  const char* name;
  const char* help;
  int (*fn)(const repgame::CliOptions&);
  bool needs_config;
};

constexpr Command kCommands[] = {
    {"solve-pure", "closed-form single-subspace minimax solution", &repgame::cmd_solve_pure, true},
    {"solve-mixed", "closed-form randomized minimax solution", &repgame::cmd_solve_mixed, true},
    {"ratio", "game regret vs closed-form optimum over dimensions", &repgame::cmd_ratio, true},
    {"logistic", "game on Gaussian data with logistic link", &repgame::cmd_logistic, true},
    {"shapes", "game on the synthetic shapes dataset vs PCA", &repgame::cmd_shapes, true},
    {"curve", "per-iteration regret trace of one game run", &repgame::cmd_curve, true},
    {"selftest", "small deterministic run of every command", &repgame::cmd_selftest, false},
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"minimax representation experiments"};
  app.require_subcommand(1);

  repgame::CliOptions opt;
  std::uint64_t seed_arg = 0;
  int (*selected)(const repgame::CliOptions&) = nullptr;

  for (const Command& cmd : kCommands) {
    CLI::App* sub = app.add_subcommand(cmd.name, cmd.help);
    auto* config_opt =
        sub->add_option("--config", opt.config_path, "path to an INI config file");
    if (cmd.needs_config) config_opt->required();
    sub->add_option("--out", opt.out_dir, "output directory (created if missing)");
    sub->add_option("--seed", seed_arg, "override the config seed")
        ->check(CLI::NonNegativeNumber);
    sub->callback([&opt, &seed_arg, &selected, sub, fn = cmd.fn] {
      if (sub->count("--seed") > 0) opt.seed = seed_arg;
      selected = fn;
    });
  }

  CLI11_PARSE(app, argc, argv);

  try {
    return selected(opt);
  } catch (const repgame::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return 2;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
}
