#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "edgeauction/mechanism.hpp"
#include "edgeauction/valuation.hpp"

namespace edgeauction {

/// Optimizer settings. Defaults reproduce the reference experiment table.
struct TrainConfig
{
  double        learning_rate = 1e-4;
  double        l2            = 0.01;
  std::size_t   iterations    = 4000;
  std::size_t   batch_size    = 100;
  std::size_t   dataset_size  = 1000;
  std::size_t   eval_every    = 50;
  std::uint64_t seed          = 1;

  void validate() const;

  bool operator==(TrainConfig const &) const = default;
};

struct GradientSet
{
  std::vector<double> d_alpha;
  std::vector<double> d_beta;
};

struct Checkpoint
{
  std::size_t iteration         = 0;
  double      train_loss        = 0.0;
  double      test_revenue_soft = 0.0;
  double      test_revenue_hard = 0.0;

  bool operator==(Checkpoint const &) const = default;
};

struct RevenueTrace
{
  std::vector<Checkpoint> checkpoints;

  bool operator==(RevenueTrace const &) const = default;
};

struct TrainResult
{
  NetParams    params;
  RevenueTrace trace;
};

using Batch = std::span<ValuationProfile const>;

/// Negated mean softmax revenue over the batch, plus
/// l2 * (sum w^2 + sum beta^2) when l2 > 0.
double loss(NetParams const &params, Batch batch, double l2 = 0.0);

/// Exact reverse-mode gradient of loss() with respect to alpha and beta.
///
/// Min/max selections take the gradient of the active line (lowest index on
/// ties); ReLU and the payment floor at zero pass no gradient at or below 0.
/// Throws NumericError naming the profile if an intermediate is not finite.
GradientSet backward(NetParams const &params, Batch batch, double l2 = 0.0);

/// Central differences of loss() per coordinate. Independent of backward().
GradientSet finite_diff_grad(NetParams const &params, Batch batch, double eps, double l2 = 0.0);

/// Every discrete choice made while evaluating loss() on the batch (active
/// lines, strongest rivals, ReLU and floor states). Two parameter points with
/// equal signatures lie on the same smooth piece of the loss.
std::vector<std::size_t> branch_signature(NetParams const &params, Batch batch);

/// alpha -= lr * d_alpha, beta -= lr * d_beta.
NetParams sgd_step(NetParams const &params, GradientSet const &grads, double lr);

/// Mean soft revenue (sum_i g_i p_i) and mean hard payment over a dataset.
struct RevenuePair
{
  double soft = 0.0;
  double hard = 0.0;
};
RevenuePair evaluate_revenue(NetParams const &params, Batch profiles);

using ProgressFn = std::function<void(Checkpoint const &)>;

/// Generates train/test datasets (TrainData/TestData streams, S profiles
/// each), initializes params from the ParamInit stream and runs mini-batch SGD.
TrainResult train(TrainConfig const &config, NetConfig const &net, ValuationModel const &model,
                  ProgressFn const &progress = {});

/// SGD from the given starting point. Mini-batches are drawn without
/// replacement from a reshuffled order each epoch; a checkpoint is recorded at
/// iteration 0, every eval_every steps, and at the final step.
TrainResult train(TrainConfig const &config, NetParams initial, Dataset const &train_set, Dataset const &test_set,
                  ProgressFn const &progress = {});

}  // namespace edgeauction
