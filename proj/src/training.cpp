#include "edgeauction/training.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <utility>

#include "edgeauction/errors.hpp"

namespace edgeauction {

namespace {

void require_batch(NetParams const &params, Batch batch)
{
  if (batch.empty())
  {
    throw UsageError("batch is empty");
  }
  for (std::size_t s = 0; s < batch.size(); ++s)
  {
    if (batch[s].size() != params.config().n)
    {
      throw UsageError("profile " + std::to_string(s) + " has " + std::to_string(batch[s].size()) +
                       " values, network expects " + std::to_string(params.config().n));
    }
  }
}

double l2_penalty(NetParams const &params)
{
  double sum = 0.0;
  for (double w : params.weights())
  {
    sum += w * w;
  }
  for (double b : params.beta())
  {
    sum += b * b;
  }
  return sum;
}

/// Everything the backward pass needs from one forward evaluation.
struct ProfileTape
{
  std::vector<TracedValue>                transformed;
  std::vector<double>                     alloc;
  std::vector<std::optional<std::size_t>> rival;
  std::vector<bool>                       relu_active;
  std::vector<double>                     p0;
  std::vector<TracedValue>                inverse;
  std::vector<double>                     payment;
  double                                  revenue = 0.0;
};

ProfileTape record(NetParams const &params, ValuationProfile const &profile)
{
  std::size_t const n = params.config().n;
  ProfileTape       tape;
  tape.transformed.resize(n);
  std::vector<double> x(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    tape.transformed[i] = transform_traced(params, i, profile.values[i]);
    x[i]                = tape.transformed[i].value;
  }
  tape.alloc = allocate(x, params.config().kappa);
  tape.rival.resize(n);
  tape.relu_active.resize(n);
  tape.p0.resize(n);
  tape.inverse.resize(n);
  tape.payment.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    tape.rival[i]       = strongest_rival(x, i);
    tape.relu_active[i] = tape.rival[i] && x[*tape.rival[i]] > 0.0;
    tape.p0[i]          = tape.relu_active[i] ? x[*tape.rival[i]] : 0.0;
    tape.inverse[i]     = inverse_transform_traced(params, i, tape.p0[i]);
    tape.payment[i]     = std::max(0.0, tape.inverse[i].value);
    tape.revenue += tape.alloc[i] * tape.payment[i];
  }
  return tape;
}

}  // namespace

void TrainConfig::validate() const
{
  if (!(learning_rate > 0.0) || !std::isfinite(learning_rate))
  {
    throw ConfigError("training.learning_rate must be finite and > 0");
  }
  if (!(l2 >= 0.0) || !std::isfinite(l2))
  {
    throw ConfigError("training.l2 must be finite and >= 0");
  }
  if (dataset_size == 0)
  {
    throw ConfigError("training.dataset_size must be >= 1");
  }
  if (batch_size == 0 || batch_size > dataset_size)
  {
    throw ConfigError("training.batch_size must lie in [1, dataset_size]");
  }
  if (eval_every == 0)
  {
    throw ConfigError("training.eval_every must be >= 1");
  }
}

double loss(NetParams const &params, Batch batch, double l2)
{
  require_batch(params, batch);
  double total = 0.0;
  for (auto const &profile : batch)
  {
    total += forward(params, profile).revenue();
  }
  double value = -total / static_cast<double>(batch.size());
  if (l2 > 0.0)
  {
    value += l2 * l2_penalty(params);
  }
  return value;
}

GradientSet backward(NetParams const &params, Batch batch, double l2)
{
  require_batch(params, batch);
  auto const &cfg     = params.config();
  auto const  weights = params.weights();
  auto const  beta    = params.beta();

  GradientSet grads{std::vector<double>(cfg.size(), 0.0), std::vector<double>(cfg.size(), 0.0)};
  double const scale = -1.0 / static_cast<double>(batch.size());
  std::vector<double> d_x(cfg.n);

  for (std::size_t s = 0; s < batch.size(); ++s)
  {
    ProfileTape const tape = record(params, batch[s]);
    if (!std::isfinite(tape.revenue))
    {
      throw NumericError("non-finite revenue at profile " + std::to_string(s));
    }

    // Softmax: d(sum_i g_i p_i)/dx_l = kappa g_l (p_l - R); the dummy has p = 0.
    for (std::size_t l = 0; l < cfg.n; ++l)
    {
      d_x[l] = scale * cfg.kappa * tape.alloc[l] * (tape.payment[l] - tape.revenue);
    }

    // Payments p_i = (p0_i - beta) / w on the active inverse line.
    for (std::size_t i = 0; i < cfg.n; ++i)
    {
      if (!(tape.inverse[i].value > 0.0))
      {
        continue;
      }
      double const      d_p = scale * tape.alloc[i];
      std::size_t const idx = params.index(i, tape.inverse[i].piece.group, tape.inverse[i].piece.line);
      double const      w   = weights[idx];
      grads.d_beta[idx] -= d_p / w;
      grads.d_alpha[idx] -= d_p * (tape.p0[i] - beta[idx]) / w;
      if (tape.relu_active[i])
      {
        d_x[*tape.rival[i]] += d_p / w;
      }
    }

    // Transformed bids x_l = w v_l + beta on the active forward line.
    for (std::size_t l = 0; l < cfg.n; ++l)
    {
      std::size_t const idx = params.index(l, tape.transformed[l].piece.group, tape.transformed[l].piece.line);
      grads.d_alpha[idx] += d_x[l] * weights[idx] * batch[s].values[l];
      grads.d_beta[idx] += d_x[l];
    }
  }

  if (l2 > 0.0)
  {
    for (std::size_t idx = 0; idx < cfg.size(); ++idx)
    {
      grads.d_alpha[idx] += 2.0 * l2 * weights[idx] * weights[idx];
      grads.d_beta[idx] += 2.0 * l2 * beta[idx];
    }
  }

  for (std::size_t idx = 0; idx < cfg.size(); ++idx)
  {
    if (!std::isfinite(grads.d_alpha[idx]) || !std::isfinite(grads.d_beta[idx]))
    {
      throw NumericError("non-finite gradient at parameter " + std::to_string(idx));
    }
  }
  return grads;
}

GradientSet finite_diff_grad(NetParams const &params, Batch batch, double eps, double l2)
{
  if (!(eps > 0.0))
  {
    throw UsageError("finite_diff_grad requires eps > 0");
  }
  if (!params.log_parameterized())
  {
    throw UsageError("finite_diff_grad requires log-parameterized weights");
  }
  require_batch(params, batch);
  std::vector<double> alpha(params.alpha().begin(), params.alpha().end());
  std::vector<double> beta(params.beta().begin(), params.beta().end());
  GradientSet         grads{std::vector<double>(alpha.size()), std::vector<double>(beta.size())};

  auto central = [&](std::vector<double> &coords, std::size_t idx) {
    double const saved = coords[idx];
    coords[idx]        = saved + eps;
    double const up    = loss(NetParams(params.config(), alpha, beta), batch, l2);
    coords[idx]        = saved - eps;
    double const down  = loss(NetParams(params.config(), alpha, beta), batch, l2);
    coords[idx]        = saved;
    return (up - down) / (2.0 * eps);
  };
  for (std::size_t idx = 0; idx < alpha.size(); ++idx)
  {
    grads.d_alpha[idx] = central(alpha, idx);
    grads.d_beta[idx]  = central(beta, idx);
  }
  return grads;
}

std::vector<std::size_t> branch_signature(NetParams const &params, Batch batch)
{
  require_batch(params, batch);
  std::size_t const        none = params.config().n;
  std::vector<std::size_t> sig;
  for (auto const &profile : batch)
  {
    ProfileTape const tape = record(params, profile);
    for (std::size_t i = 0; i < params.config().n; ++i)
    {
      sig.push_back(tape.transformed[i].piece.group);
      sig.push_back(tape.transformed[i].piece.line);
      sig.push_back(tape.rival[i].value_or(none));
      sig.push_back(tape.relu_active[i] ? 1 : 0);
      sig.push_back(tape.inverse[i].piece.group);
      sig.push_back(tape.inverse[i].piece.line);
      sig.push_back(tape.inverse[i].value > 0.0 ? 1 : 0);
    }
  }
  return sig;
}

NetParams sgd_step(NetParams const &params, GradientSet const &grads, double lr)
{
  if (!params.log_parameterized())
  {
    throw UsageError("sgd_step requires log-parameterized weights");
  }
  std::size_t const size = params.config().size();
  if (grads.d_alpha.size() != size || grads.d_beta.size() != size)
  {
    throw UsageError("gradient shape does not match parameters");
  }
  std::vector<double> alpha(params.alpha().begin(), params.alpha().end());
  std::vector<double> beta(params.beta().begin(), params.beta().end());
  for (std::size_t idx = 0; idx < size; ++idx)
  {
    alpha[idx] -= lr * grads.d_alpha[idx];
    beta[idx] -= lr * grads.d_beta[idx];
  }
  return NetParams(params.config(), std::move(alpha), std::move(beta));
}

RevenuePair evaluate_revenue(NetParams const &params, Batch profiles)
{
  require_batch(params, profiles);
  RevenuePair sum;
  for (auto const &profile : profiles)
  {
    sum.soft += forward(params, profile).revenue();
    sum.hard += hard_mechanism(params, profile.values).payment;
  }
  double const count = static_cast<double>(profiles.size());
  return {sum.soft / count, sum.hard / count};
}

TrainResult train(TrainConfig const &config, NetConfig const &net, ValuationModel const &model,
                  ProgressFn const &progress)
{
  config.validate();
  net.validate();
  model.validate();
  Rng     train_rng(config.seed, Stream::TrainData);
  Rng     test_rng(config.seed, Stream::TestData);
  Rng     init_rng(config.seed, Stream::ParamInit);
  Dataset train_set = generate_dataset(model, net.n, config.dataset_size, config.seed, train_rng);
  Dataset test_set  = generate_dataset(model, net.n, config.dataset_size, config.seed, test_rng);
  return train(config, NetParams::random(net, init_rng), train_set, test_set, progress);
}

TrainResult train(TrainConfig const &config, NetParams initial, Dataset const &train_set, Dataset const &test_set,
                  ProgressFn const &progress)
{
  config.validate();
  train_set.validate();
  test_set.validate();
  if (!initial.log_parameterized())
  {
    throw UsageError("training requires log-parameterized weights");
  }
  if (config.batch_size > train_set.profiles.size())
  {
    throw ConfigError("training.batch_size exceeds the training set size");
  }

  TrainResult result{std::move(initial), {}};
  auto checkpoint = [&](std::size_t iteration) {
    Checkpoint cp;
    cp.iteration = iteration;
    try
    {
      cp.train_loss      = loss(result.params, train_set.profiles, config.l2);
      auto const revenue = evaluate_revenue(result.params, test_set.profiles);
      cp.test_revenue_soft = revenue.soft;
      cp.test_revenue_hard = revenue.hard;
    }
    catch (NumericError const &e)
    {
      throw TrainingError(iteration, "training diverged at iteration " + std::to_string(iteration) + ": " + e.what());
    }
    if (!std::isfinite(cp.train_loss) || !std::isfinite(cp.test_revenue_soft) ||
        !std::isfinite(cp.test_revenue_hard))
    {
      throw TrainingError(iteration, "training diverged at iteration " + std::to_string(iteration));
    }
    result.trace.checkpoints.push_back(cp);
    if (progress)
    {
      progress(cp);
    }
  };

  Rng                      batch_rng(config.seed, Stream::Batches);
  std::vector<std::size_t> order(train_set.profiles.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t                   cursor = order.size();
  std::vector<ValuationProfile> batch(config.batch_size);

  checkpoint(0);
  for (std::size_t it = 1; it <= config.iterations; ++it)
  {
    if (cursor + config.batch_size > order.size())
    {
      batch_rng.shuffle(order);
      cursor = 0;
    }
    for (std::size_t b = 0; b < config.batch_size; ++b)
    {
      batch[b] = train_set.profiles[order[cursor + b]];
    }
    cursor += config.batch_size;

    try
    {
      result.params = sgd_step(result.params, backward(result.params, batch, config.l2), config.learning_rate);
    }
    catch (NumericError const &e)
    {
      throw TrainingError(it, "training diverged at iteration " + std::to_string(it) + ": " + e.what());
    }
    if (it % config.eval_every == 0 || it == config.iterations)
    {
      checkpoint(it);
    }
  }
  return result;
}

}  // namespace edgeauction
