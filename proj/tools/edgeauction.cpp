#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "edgeauction/experiments.hpp"
#include "edgeauction/io.hpp"

using edgeauction::CommandOptions;
using edgeauction::ExitCode;

namespace {

void add_common(CLI::App *cmd, CommandOptions &opts)
{
  cmd->add_option_function<std::string>("--config", [&opts](std::string const &p) { opts.config = p; },
                                        "YAML config file");
  cmd->add_option_function<std::string>("--out", [&opts](std::string const &p) { opts.out = p; },
                                        "Output directory");
  cmd->add_option_function<std::uint64_t>("--seed", [&opts](std::uint64_t s) { opts.seed = s; },
                                          "Seed (overrides the config)");
  cmd->add_option_function<std::size_t>("--samples", [&opts](std::size_t s) { opts.samples = s; },
                                        "Monte Carlo sample count");
}

}  // namespace

int main(int argc, char **argv)
{
  CLI::App app{"Learn and evaluate monotone-transform auctions for edge-compute allocation"};
  app.set_version_flag("--version", std::string(edgeauction::tool_version()));
  app.require_subcommand(1);

  CommandOptions opts;

  auto *train = app.add_subcommand("train", "Train the auction network from a config file");
  add_common(train, opts);

  auto *grid = app.add_subcommand("paper-grid", "Train every reference scenario and write a summary table");
  add_common(grid, opts);
  grid->add_option("--jobs", opts.jobs, "Cells trained in parallel")->check(CLI::PositiveNumber);

  auto *sweep = app.add_subcommand("sweep", "Winning probability of miner 1 versus its capacity");
  add_common(sweep, opts);
  sweep->add_option_function<std::string>("--checkpoint", [&opts](std::string const &p) { opts.checkpoint = p; },
                                          "Checkpoint file")
      ->required();

  auto *verify = app.add_subcommand("verify", "Check individual rationality and empirical regret");
  add_common(verify, opts);
  verify->add_option_function<std::string>("--checkpoint", [&opts](std::string const &p) { opts.checkpoint = p; },
                                           "Checkpoint file")
      ->required();

  auto *baseline = app.add_subcommand("baseline", "Monte Carlo second-price auction revenue");
  add_common(baseline, opts);

  try
  {
    app.parse(argc, argv);
  }
  catch (CLI::ParseError const &e)
  {
    int const code = app.exit(e);
    return code == 0 ? 0 : static_cast<int>(ExitCode::ConfigError);
  }

  ExitCode code = ExitCode::Failure;
  if (train->parsed())
  {
    code = edgeauction::cmd_train(opts, std::cout, std::cerr);
  }
  else if (grid->parsed())
  {
    code = edgeauction::cmd_paper_grid(opts, std::cout, std::cerr);
  }
  else if (sweep->parsed())
  {
    code = edgeauction::cmd_sweep(opts, std::cout, std::cerr);
  }
  else if (verify->parsed())
  {
    code = edgeauction::cmd_verify(opts, std::cout, std::cerr);
  }
  else if (baseline->parsed())
  {
    code = edgeauction::cmd_baseline(opts, std::cout, std::cerr);
  }
  return static_cast<int>(code);
}
