#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "edgeauction/mechanism.hpp"
#include "edgeauction/training.hpp"
#include "edgeauction/valuation.hpp"

namespace edgeauction {

/// Process exit statuses of the command-line tool.
enum class ExitCode : int
{
  Success             = 0,
  Failure             = 1,  // I/O problems, partially failed grid
  ConfigError         = 2,  // malformed config, checkpoint or arguments
  NumericFailure      = 3,  // training diverged
  VerificationFailure = 4,  // IR or regret above tolerance
};

/// One training run.
///
/// Config files are YAML. A file holds either one scenario or a batch:
///
///     scenario: n15_c0.2-0.5_k1      # required
///     output: runs                   # default "runs"
///     valuation: {t_min: 0, t_max: 1, c_min: 0.2, c_max: 0.5}   # c_* required
///     network: {n: 15, k: 5, j: 10, kappa: 1}                    # n required
///     training: {learning_rate: 0.0001, l2: 0.01, iterations: 4000,
///                batch_size: 100, dataset_size: 1000, eval_every: 50, seed: 1}
///
///     scenarios: [ {scenario: a, ...}, {scenario: b, ...} ]
///
/// Omitted optional fields take the reference-table defaults.
struct ExperimentConfig
{
  std::string           scenario;
  ValuationModel        model;
  NetConfig             net;
  TrainConfig           train;
  std::filesystem::path output = "runs";

  void validate() const;
};

/// Parses and validates. Throws ConfigError naming the line and field.
std::vector<ExperimentConfig> parse_experiments(std::string const &text, std::string const &source = "<config>");
std::vector<ExperimentConfig> load_experiments(std::filesystem::path const &path);

/// Canonical YAML rendering; its hash identifies the run in output headers.
std::string canonical_yaml(ExperimentConfig const &config);
std::string config_hash(ExperimentConfig const &config);

/// The reference grid: n in {10, 15, 20} x capacity U[0.2, 0.5] / U[0.4, 0.7]
/// x kappa in {1, 2}, all with default training settings and `seed`.
std::vector<ExperimentConfig> paper_grid(std::uint64_t seed = 1);

/// Settings for the winning-probability sweep.
///
///     valuation: {...}           # rivals' model; bidder 1's block size uses t_min/t_max
///     sweep: {c1: [0.05, 0.1], samples: 10000, seed: 7}
///     sweep: {c1_min: 0.05, c1_max: 0.5, c1_points: 10, ...}
struct SweepConfig
{
  ValuationModel      model;
  std::vector<double> c1_grid;
  std::size_t         samples = 10000;
  std::uint64_t       seed    = 7;
};

SweepConfig parse_sweep_config(std::string const &text, std::string const &source = "<config>");
SweepConfig default_sweep_config();

/// Command-line overrides shared by all commands.
struct CommandOptions
{
  std::optional<std::filesystem::path> config;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> checkpoint;
  std::optional<std::uint64_t>         seed;
  std::optional<std::size_t>           samples;
  std::size_t                          jobs = 1;
};

/// Each command writes progress to `log`, diagnostics to `err`, and returns an
/// exit status. They never throw for bad user input.
ExitCode cmd_train(CommandOptions const &opts, std::ostream &log, std::ostream &err);
ExitCode cmd_paper_grid(CommandOptions const &opts, std::ostream &log, std::ostream &err);
ExitCode cmd_sweep(CommandOptions const &opts, std::ostream &log, std::ostream &err);
ExitCode cmd_verify(CommandOptions const &opts, std::ostream &log, std::ostream &err);
ExitCode cmd_baseline(CommandOptions const &opts, std::ostream &log, std::ostream &err);

}  // namespace edgeauction
