#include "edgeauction/experiments.hpp"

#include <yaml-cpp/yaml.h>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <limits>
#include <mutex>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "edgeauction/baselines.hpp"
#include "edgeauction/errors.hpp"
#include "edgeauction/io.hpp"

namespace edgeauction {

namespace {

/// Field access with diagnostics of the form "<source>:<line>: field 'a.b' ...".
class Fields
{
public:
  Fields(YAML::Node node, std::string source, std::string prefix)
    : node_(std::move(node))
    , source_(std::move(source))
    , prefix_(std::move(prefix))
  {}

  [[noreturn]] void fail(YAML::Node const &at, std::string const &message) const
  {
    std::string where = source_;
    if (at.IsDefined() && at.Mark().line >= 0)
    {
      where += ":" + std::to_string(at.Mark().line + 1);
    }
    throw ConfigError(where + ": " + message);
  }

  std::string path(std::string const &key) const
  {
    return prefix_.empty() ? key : prefix_ + "." + key;
  }

  void allow(std::initializer_list<std::string_view> keys) const
  {
    if (!node_.IsMap())
    {
      fail(node_, "section '" + (prefix_.empty() ? std::string("<root>") : prefix_) + "' must be a mapping");
    }
    for (auto const &entry : node_)
    {
      auto const key = entry.first.as<std::string>();
      if (std::find(keys.begin(), keys.end(), key) == keys.end())
      {
        fail(entry.first, "unknown field '" + path(key) + "'");
      }
    }
  }

  bool has(std::string const &key) const
  {
    return node_.IsMap() && node_[key].IsDefined() && !node_[key].IsNull();
  }

  YAML::Node child(std::string const &key) const
  {
    return node_[key];
  }

  Fields section(std::string const &key) const
  {
    return {has(key) ? node_[key] : YAML::Node(YAML::NodeType::Map), source_, path(key)};
  }

  void require(std::string const &key) const
  {
    if (!has(key))
    {
      fail(node_, "missing required field '" + path(key) + "'");
    }
  }

  double number(std::string const &key, double fallback) const
  {
    if (!has(key))
    {
      return fallback;
    }
    YAML::Node const v = node_[key];
    try
    {
      double const x = v.as<double>();
      if (!std::isfinite(x))
      {
        fail(v, "field '" + path(key) + "' must be finite");
      }
      return x;
    }
    catch (YAML::BadConversion const &)
    {
      fail(v, "field '" + path(key) + "' must be a number");
    }
  }

  std::uint64_t count(std::string const &key, std::uint64_t fallback) const
  {
    if (!has(key))
    {
      return fallback;
    }
    YAML::Node const v = node_[key];
    try
    {
      auto const x = v.as<std::int64_t>();
      if (x < 0)
      {
        fail(v, "field '" + path(key) + "' must be a non-negative integer");
      }
      return static_cast<std::uint64_t>(x);
    }
    catch (YAML::BadConversion const &)
    {
      fail(v, "field '" + path(key) + "' must be a non-negative integer");
    }
  }

  std::string text(std::string const &key, std::string fallback) const
  {
    if (!has(key))
    {
      return fallback;
    }
    YAML::Node const v = node_[key];
    if (!v.IsScalar())
    {
      fail(v, "field '" + path(key) + "' must be a string");
    }
    return v.as<std::string>();
  }

  YAML::Node const &node() const
  {
    return node_;
  }

private:
  YAML::Node  node_;
  std::string source_;
  std::string prefix_;
};

YAML::Node load_yaml(std::string const &text, std::string const &source)
{
  try
  {
    return YAML::Load(text);
  }
  catch (YAML::ParserException const &e)
  {
    throw ConfigError(source + ":" + std::to_string(e.mark.line + 1) + ": " + e.msg);
  }
}

ValuationModel parse_model(Fields const &f, bool capacities_required)
{
  f.allow({"t_min", "t_max", "c_min", "c_max"});
  if (capacities_required)
  {
    f.require("c_min");
    f.require("c_max");
  }
  ValuationModel model;
  model.t_min = f.number("t_min", model.t_min);
  model.t_max = f.number("t_max", model.t_max);
  model.c_min = f.number("c_min", model.c_min);
  model.c_max = f.number("c_max", model.c_max);
  try
  {
    model.validate();
  }
  catch (ConfigError const &e)
  {
    f.fail(f.node(), e.what());
  }
  return model;
}

ExperimentConfig parse_one(Fields const &root)
{
  root.allow({"scenario", "output", "valuation", "network", "training"});
  root.require("scenario");
  root.require("valuation");
  root.require("network");

  ExperimentConfig cfg;
  cfg.scenario = root.text("scenario", "");
  if (cfg.scenario.empty() || cfg.scenario.find_first_of(",/\\ \t") != std::string::npos)
  {
    root.fail(root.child("scenario"), "field 'scenario' must be non-empty without commas, slashes or spaces");
  }
  cfg.output = root.text("output", cfg.output.string());
  cfg.model  = parse_model(root.section("valuation"), true);

  Fields const net = root.section("network");
  net.allow({"n", "k", "j", "kappa"});
  net.require("n");
  cfg.net.n     = net.count("n", 0);
  cfg.net.k     = net.count("k", cfg.net.k);
  cfg.net.j     = net.count("j", cfg.net.j);
  cfg.net.kappa = net.number("kappa", cfg.net.kappa);
  try
  {
    cfg.net.validate();
  }
  catch (ConfigError const &e)
  {
    net.fail(net.node(), e.what());
  }

  Fields const tr = root.section("training");
  tr.allow({"learning_rate", "l2", "iterations", "batch_size", "dataset_size", "eval_every", "seed"});
  cfg.train.learning_rate = tr.number("learning_rate", cfg.train.learning_rate);
  cfg.train.l2            = tr.number("l2", cfg.train.l2);
  cfg.train.iterations    = tr.count("iterations", cfg.train.iterations);
  cfg.train.dataset_size  = tr.count("dataset_size", cfg.train.dataset_size);
  cfg.train.batch_size    = tr.count("batch_size", std::min(cfg.train.batch_size, cfg.train.dataset_size));
  cfg.train.eval_every    = tr.count("eval_every", cfg.train.eval_every);
  cfg.train.seed          = tr.count("seed", cfg.train.seed);
  try
  {
    cfg.train.validate();
  }
  catch (ConfigError const &e)
  {
    tr.fail(tr.node(), e.what());
  }
  return cfg;
}

Provenance provenance_for(ExperimentConfig const &cfg)
{
  return {config_hash(cfg), cfg.train.seed};
}

void write_file(std::filesystem::path const &path, auto const &writer)
{
  std::ofstream out(path);
  if (!out)
  {
    throw FormatError("cannot write " + path.string());
  }
  writer(out);
  if (!out)
  {
    throw FormatError("error while writing " + path.string());
  }
}

std::string indent(std::string const &text, std::string const &pad)
{
  std::string out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line))
  {
    out += pad + line + "\n";
  }
  return out;
}

struct RunOutcome
{
  TrainResult  result;
  std::filesystem::path dir;
};

RunOutcome run_experiment(ExperimentConfig const &cfg, std::ostream &log, std::mutex *log_mutex)
{
  std::filesystem::path const dir = cfg.output / cfg.scenario;
  std::filesystem::create_directories(dir);
  auto emit = [&](std::string const &line) {
    if (log_mutex)
    {
      std::lock_guard lock(*log_mutex);
      log << line << '\n';
    }
    else
    {
      log << line << '\n';
    }
  };
  std::size_t const last = cfg.train.iterations;
  TrainResult result = train(cfg.train, cfg.net, cfg.model, [&](Checkpoint const &cp) {
    if (cp.iteration % 500 == 0 || cp.iteration == last)
    {
      emit(cfg.scenario + " iter " + std::to_string(cp.iteration) + " loss " + format_double(cp.train_loss) +
           " soft " + format_double(cp.test_revenue_soft) + " hard " + format_double(cp.test_revenue_hard));
    }
  });

  Provenance const prov = provenance_for(cfg);
  save_checkpoint(dir / "checkpoint.txt", result.params, prov);
  write_file(dir / "trace.csv", [&](std::ostream &out) { write_trace(out, result.trace, prov); });
  write_file(dir / "manifest.yaml", [&](std::ostream &out) {
    auto const &final_cp = result.trace.checkpoints.back();
    write_provenance(out, prov);
    out << "tool: " << kToolName << ' ' << tool_version() << '\n'
        << "checkpoint_format: " << kCheckpointFormat << '\n'
        << "compiler: \"" << __VERSION__ << "\"\n"
        << "config_hash: " << prov.config_hash << '\n'
        << "seed: " << cfg.train.seed << '\n'
        << "config:\n"
        << indent(canonical_yaml(cfg), "  ")
        << "outputs: [checkpoint.txt, trace.csv]\n"
        << "final:\n"
        << "  iteration: " << final_cp.iteration << '\n'
        << "  train_loss: " << format_double(final_cp.train_loss) << '\n'
        << "  test_revenue_soft: " << format_double(final_cp.test_revenue_soft) << '\n'
        << "  test_revenue_hard: " << format_double(final_cp.test_revenue_hard) << '\n';
  });
  return {std::move(result), dir};
}

std::string read_text(std::filesystem::path const &path)
{
  std::ifstream in(path);
  if (!in)
  {
    throw ConfigError("cannot read config file " + path.string());
  }
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ExitCode report(std::ostream &err, std::exception const &e)
{
  if (auto const *te = dynamic_cast<TrainingError const *>(&e))
  {
    err << "error: " << te->what() << '\n';
    return ExitCode::NumericFailure;
  }
  if (dynamic_cast<NumericError const *>(&e))
  {
    err << "error: " << e.what() << '\n';
    return ExitCode::NumericFailure;
  }
  if (dynamic_cast<ConfigError const *>(&e) || dynamic_cast<FormatError const *>(&e) ||
      dynamic_cast<UsageError const *>(&e))
  {
    err << "error: " << e.what() << '\n';
    return ExitCode::ConfigError;
  }
  err << "error: " << e.what() << '\n';
  return ExitCode::Failure;
}

std::string scenario_name(std::size_t n, ValuationModel const &model, double kappa)
{
  return "n" + std::to_string(n) + "_c" + format_double(model.c_min) + "-" + format_double(model.c_max) + "_k" +
         format_double(kappa);
}

}  // namespace

void ExperimentConfig::validate() const
{
  if (scenario.empty())
  {
    throw ConfigError("scenario name is empty");
  }
  model.validate();
  net.validate();
  train.validate();
}

std::vector<ExperimentConfig> parse_experiments(std::string const &text, std::string const &source)
{
  YAML::Node const root = load_yaml(text, source);
  if (!root.IsMap())
  {
    throw ConfigError(source + ": config must be a mapping");
  }
  std::vector<ExperimentConfig> configs;
  if (root["scenarios"].IsDefined())
  {
    Fields const top(root, source, "");
    top.allow({"scenarios"});
    YAML::Node const list = root["scenarios"];
    if (!list.IsSequence() || list.size() == 0)
    {
      top.fail(list, "field 'scenarios' must be a non-empty list");
    }
    for (std::size_t s = 0; s < list.size(); ++s)
    {
      configs.push_back(parse_one(Fields(list[s], source, "scenarios[" + std::to_string(s) + "]")));
    }
  }
  else
  {
    configs.push_back(parse_one(Fields(root, source, "")));
  }
  std::set<std::string> seen;
  for (auto const &c : configs)
  {
    if (!seen.insert(c.scenario).second)
    {
      throw ConfigError(source + ": duplicate scenario name '" + c.scenario + "'");
    }
  }
  return configs;
}

std::vector<ExperimentConfig> load_experiments(std::filesystem::path const &path)
{
  return parse_experiments(read_text(path), path.string());
}

std::string canonical_yaml(ExperimentConfig const &c)
{
  std::ostringstream out;
  out << "scenario: " << c.scenario << '\n'
      << "valuation:\n"
      << "  t_min: " << format_double(c.model.t_min) << '\n'
      << "  t_max: " << format_double(c.model.t_max) << '\n'
      << "  c_min: " << format_double(c.model.c_min) << '\n'
      << "  c_max: " << format_double(c.model.c_max) << '\n'
      << "network:\n"
      << "  n: " << c.net.n << '\n'
      << "  k: " << c.net.k << '\n'
      << "  j: " << c.net.j << '\n'
      << "  kappa: " << format_double(c.net.kappa) << '\n'
      << "training:\n"
      << "  learning_rate: " << format_double(c.train.learning_rate) << '\n'
      << "  l2: " << format_double(c.train.l2) << '\n'
      << "  iterations: " << c.train.iterations << '\n'
      << "  batch_size: " << c.train.batch_size << '\n'
      << "  dataset_size: " << c.train.dataset_size << '\n'
      << "  eval_every: " << c.train.eval_every << '\n'
      << "  seed: " << c.train.seed << '\n';
  return out.str();
}

std::string config_hash(ExperimentConfig const &config)
{
  return fnv1a_hex(canonical_yaml(config));
}

std::vector<ExperimentConfig> paper_grid(std::uint64_t seed)
{
  std::vector<ExperimentConfig> grid;
  for (std::size_t n : {10, 15, 20})
  {
    for (auto const &[c_min, c_max] : {std::pair{0.2, 0.5}, std::pair{0.4, 0.7}})
    {
      for (double kappa : {1.0, 2.0})
      {
        ExperimentConfig cfg;
        cfg.model       = {0.0, 1.0, c_min, c_max};
        cfg.net.n       = n;
        cfg.net.kappa   = kappa;
        cfg.train.seed  = seed;
        cfg.scenario    = scenario_name(n, cfg.model, kappa);
        grid.push_back(cfg);
      }
    }
  }
  return grid;
}

SweepConfig default_sweep_config()
{
  SweepConfig cfg;
  cfg.c1_grid = linspace(0.05, 0.5, 10);
  return cfg;
}

SweepConfig parse_sweep_config(std::string const &text, std::string const &source)
{
  SweepConfig      cfg  = default_sweep_config();
  YAML::Node const root = load_yaml(text, source);
  if (root.IsNull())
  {
    return cfg;
  }
  Fields const top(root, source, "");
  top.allow({"scenario", "output", "valuation", "network", "training", "sweep"});
  if (top.has("valuation"))
  {
    cfg.model = parse_model(top.section("valuation"), false);
  }
  Fields const sw = top.section("sweep");
  sw.allow({"c1", "c1_min", "c1_max", "c1_points", "samples", "seed"});
  if (sw.has("c1"))
  {
    YAML::Node const list = sw.child("c1");
    if (!list.IsSequence() || list.size() == 0)
    {
      sw.fail(list, "field 'sweep.c1' must be a non-empty list");
    }
    cfg.c1_grid.clear();
    for (auto const &item : list)
    {
      try
      {
        cfg.c1_grid.push_back(item.as<double>());
      }
      catch (YAML::BadConversion const &)
      {
        sw.fail(item, "field 'sweep.c1' must contain numbers");
      }
    }
  }
  else if (sw.has("c1_min") || sw.has("c1_max") || sw.has("c1_points"))
  {
    cfg.c1_grid = linspace(sw.number("c1_min", 0.05), sw.number("c1_max", 0.5), sw.count("c1_points", 10));
  }
  if (cfg.c1_grid.empty())
  {
    sw.fail(sw.node(), "sweep grid is empty");
  }
  for (std::size_t i = 0; i < cfg.c1_grid.size(); ++i)
  {
    if (!(cfg.c1_grid[i] > 0.0) || (i > 0 && !(cfg.c1_grid[i] > cfg.c1_grid[i - 1])))
    {
      sw.fail(sw.node(), "sweep capacities must be positive and strictly increasing");
    }
  }
  cfg.samples = sw.count("samples", cfg.samples);
  cfg.seed    = sw.count("seed", cfg.seed);
  if (cfg.samples == 0)
  {
    sw.fail(sw.node(), "field 'sweep.samples' must be >= 1");
  }
  return cfg;
}

ExitCode cmd_train(CommandOptions const &opts, std::ostream &log, std::ostream &err)
{
  try
  {
    if (!opts.config)
    {
      throw ConfigError("train requires --config <path>");
    }
    auto configs = load_experiments(*opts.config);
    for (auto &cfg : configs)
    {
      if (opts.seed)
      {
        cfg.train.seed = *opts.seed;
      }
      if (opts.out)
      {
        cfg.output = *opts.out;
      }
      auto const run = run_experiment(cfg, log, nullptr);
      log << "wrote " << run.dir.string() << '\n';
    }
    return ExitCode::Success;
  }
  catch (std::exception const &e)
  {
    return report(err, e);
  }
}

ExitCode cmd_paper_grid(CommandOptions const &opts, std::ostream &log, std::ostream &err)
{
  std::vector<ExperimentConfig> cells;
  std::filesystem::path         out = opts.out.value_or("paper-grid");
  std::size_t const             spa_samples = opts.samples.value_or(1000000);
  try
  {
    cells = paper_grid(opts.seed.value_or(1));
    if (opts.config)
    {
      // Training settings from the first scenario of the file apply to every cell.
      auto const base = load_experiments(*opts.config).front();
      for (auto &cell : cells)
      {
        cell.train      = base.train;
        cell.train.seed = opts.seed.value_or(base.train.seed);
      }
    }
    for (auto &cell : cells)
    {
      cell.output = out;
    }
    std::filesystem::create_directories(out);
  }
  catch (std::exception const &e)
  {
    return report(err, e);
  }

  std::vector<std::optional<SummaryRow>> rows(cells.size());
  std::vector<std::string>               failures(cells.size());
  std::vector<ExitCode>                  codes(cells.size(), ExitCode::Success);
  std::mutex                             log_mutex;
  std::atomic<std::size_t>               next{0};

  auto worker = [&] {
    for (std::size_t c = next++; c < cells.size(); c = next++)
    {
      auto const &cell = cells[c];
      try
      {
        auto const run = run_experiment(cell, log, &log_mutex);
        auto const spa = spa_expected_revenue(cell.model, cell.net.n, spa_samples, cell.train.seed);
        auto const &final_cp = run.result.trace.checkpoints.back();
        rows[c]              = SummaryRow{cell.scenario, spa.mean, final_cp.test_revenue_soft, final_cp.test_revenue_hard};
      }
      catch (std::exception const &e)
      {
        std::ostringstream msg;
        codes[c]    = report(msg, e);
        failures[c] = msg.str();
      }
    }
  };
  std::size_t const        jobs = std::clamp<std::size_t>(opts.jobs, 1, cells.size());
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < jobs; ++t)
  {
    pool.emplace_back(worker);
  }
  worker();
  for (auto &t : pool)
  {
    t.join();
  }

  ExitCode                result = ExitCode::Success;
  std::vector<SummaryRow> ok;
  for (std::size_t c = 0; c < cells.size(); ++c)
  {
    if (rows[c])
    {
      ok.push_back(*rows[c]);
    }
    else
    {
      err << cells[c].scenario << ": " << failures[c];
      result = codes[c] == ExitCode::Success ? ExitCode::Failure : codes[c];
    }
  }
  try
  {
    Provenance prov{fnv1a_hex([&] {
                      std::string all;
                      for (auto const &cell : cells)
                      {
                        all += canonical_yaml(cell);
                      }
                      return all;
                    }()),
                    cells.front().train.seed};
    write_file(out / "summary.csv", [&](std::ostream &o) {
      write_summary(o, ok, prov);
      for (std::size_t c = 0; c < cells.size(); ++c)
      {
        if (!rows[c])
        {
          o << "# failed: " << cells[c].scenario << '\n';
        }
      }
    });
    log << "wrote " << (out / "summary.csv").string() << '\n';
  }
  catch (std::exception const &e)
  {
    return report(err, e);
  }
  return result;
}

ExitCode cmd_sweep(CommandOptions const &opts, std::ostream &log, std::ostream &err)
{
  try
  {
    if (!opts.checkpoint)
    {
      throw ConfigError("sweep requires --checkpoint <path>");
    }
    NetParams const params = load_checkpoint(*opts.checkpoint);
    SweepConfig     cfg    = default_sweep_config();
    if (opts.config)
    {
      std::string const text = read_text(*opts.config);
      cfg                    = parse_sweep_config(text, opts.config->string());
      YAML::Node const root  = YAML::Load(text);
      if (root.IsMap() && root["network"].IsDefined() && root["network"]["n"].IsDefined() &&
          root["network"]["n"].as<std::size_t>() != params.config().n)
      {
        throw ConfigError(opts.config->string() + ": network.n=" + root["network"]["n"].as<std::string>() +
                          " does not match checkpoint n=" + std::to_string(params.config().n));
      }
    }
    cfg.samples = opts.samples.value_or(cfg.samples);
    cfg.seed    = opts.seed.value_or(cfg.seed);
    if (cfg.samples == 0)
    {
      throw ConfigError("--samples must be >= 1");
    }
    SweepCurve const curve = winning_prob_sweep(params, cfg.model, cfg.c1_grid, cfg.model, cfg.samples, cfg.seed);

    std::ostringstream key;
    key << "sweep model " << format_double(cfg.model.t_min) << ' ' << format_double(cfg.model.t_max) << ' '
        << format_double(cfg.model.c_min) << ' ' << format_double(cfg.model.c_max) << " samples " << cfg.samples;
    for (double c : cfg.c1_grid)
    {
      key << ' ' << format_double(c);
    }
    Provenance const      prov{fnv1a_hex(key.str()), cfg.seed};
    std::filesystem::path out = opts.out.value_or(".");
    std::filesystem::create_directories(out);
    write_file(out / "sweep.csv", [&](std::ostream &o) { write_sweep(o, curve, prov); });
    write_sweep(log, curve, prov);
    return ExitCode::Success;
  }
  catch (std::exception const &e)
  {
    return report(err, e);
  }
}

ExitCode cmd_verify(CommandOptions const &opts, std::ostream &log, std::ostream &err)
{
  constexpr double      kTolerance = 1e-9;
  constexpr std::size_t kGrid      = 200;
  try
  {
    if (!opts.checkpoint)
    {
      throw ConfigError("verify requires --checkpoint <path>");
    }
    NetParams const params = load_checkpoint(*opts.checkpoint);
    ValuationModel  model;
    if (opts.config)
    {
      model = parse_sweep_config(read_text(*opts.config), opts.config->string()).model;
    }
    std::size_t const ir_profiles  = opts.samples.value_or(10000);
    std::size_t const regret_cases = std::max<std::size_t>(1, ir_profiles / 10);
    std::uint64_t const seed       = opts.seed.value_or(11);
    VerifyReport const  rep        = verify_mechanism(params, model, ir_profiles, regret_cases, kGrid, seed);

    log << "ir_profiles " << rep.ir_profiles << " regret_cases " << rep.regret_cases << " grid " << kGrid << '\n'
        << "max_regret " << format_double(rep.max_regret) << '\n'
        << "max_ir_violation " << format_double(rep.max_ir_violation) << '\n';

    bool const failed = rep.max_regret > kTolerance || rep.max_ir_violation > kTolerance;
    if (!failed)
    {
      log << "PASS\n";
      return ExitCode::Success;
    }

    auto dump = [&](std::ostream &o, std::string const &kind, VerifyInstance const &inst) {
      o << kind << ',' << inst.bidder + 1 << ',' << format_double(inst.amount);
      for (double v : inst.profile.values)
      {
        o << ',' << format_double(v);
      }
      o << '\n';
    };
    err << "verification failed; worst instances (kind,bidder,amount,v_1..v_N):\n";
    if (rep.max_regret > kTolerance)
    {
      dump(err, "regret", rep.worst_regret);
    }
    if (rep.max_ir_violation > kTolerance)
    {
      dump(err, "ir", rep.worst_ir);
    }
    if (opts.out)
    {
      std::filesystem::create_directories(*opts.out);
      write_file(*opts.out / "verify_worst.csv", [&](std::ostream &o) {
        write_provenance(o, {fnv1a_hex(opts.checkpoint->string()), seed});
        o << "kind,bidder,amount";
        for (std::size_t i = 0; i < params.config().n; ++i)
        {
          o << ",v_" << i + 1;
        }
        o << '\n';
        if (rep.max_regret > kTolerance)
        {
          dump(o, "regret", rep.worst_regret);
        }
        if (rep.max_ir_violation > kTolerance)
        {
          dump(o, "ir", rep.worst_ir);
        }
      });
    }
    return ExitCode::VerificationFailure;
  }
  catch (std::exception const &e)
  {
    return report(err, e);
  }
}

ExitCode cmd_baseline(CommandOptions const &opts, std::ostream &log, std::ostream &err)
{
  try
  {
    std::vector<ExperimentConfig> configs;
    if (opts.config)
    {
      configs = load_experiments(*opts.config);
    }
    else
    {
      for (auto const &cell : paper_grid())
      {
        if (cell.net.kappa == 1.0)
        {
          configs.push_back(cell);
        }
      }
    }
    std::size_t const samples = opts.samples.value_or(1000000);
    std::string       all;
    std::ostringstream body;
    body << "scenario,n,samples,spa_revenue,std_error\n";
    for (auto &cfg : configs)
    {
      std::uint64_t const seed = opts.seed.value_or(cfg.train.seed);
      auto const          est  = spa_expected_revenue(cfg.model, cfg.net.n, samples, seed);
      body << cfg.scenario << ',' << cfg.net.n << ',' << est.samples << ',' << format_double(est.mean) << ','
           << format_double(est.std_error) << '\n';
      all += canonical_yaml(cfg);
    }
    Provenance const prov{fnv1a_hex(all + std::to_string(samples)), opts.seed.value_or(configs.front().train.seed)};
    std::filesystem::path out = opts.out.value_or(".");
    std::filesystem::create_directories(out);
    write_file(out / "baseline.csv", [&](std::ostream &o) {
      write_provenance(o, prov);
      o << body.str();
    });
    log << body.str();
    return ExitCode::Success;
  }
  catch (std::exception const &e)
  {
    return report(err, e);
  }
}

}  // namespace edgeauction
