#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "edgeauction/errors.hpp"
#include "edgeauction/training.hpp"
#include "gradient_check.hpp"
#include "test_support.hpp"

using namespace edgeauction;
using edgeauction::testing::check_gradient;
using edgeauction::testing::random_params;

namespace {

ValuationModel const kReference{0.0, 1.0, 0.2, 0.5};

std::vector<ValuationProfile> random_batch(Rng &rng, std::size_t n, std::size_t size)
{
  std::vector<ValuationProfile> batch;
  for (std::size_t s = 0; s < size; ++s)
  {
    batch.push_back(sample_profile(kReference, n, rng));
  }
  return batch;
}

}  // namespace

TEST_CASE("loss examples")
{
  auto const params = NetParams::identity({2, 1, 1, 1.0});
  std::vector<ValuationProfile> const zeros{{{0.0, 0.0}}, {{0.0, 0.0}}};
  CHECK(loss(params, zeros) == 0.0);

  std::vector<ValuationProfile> const one{{{1.0, 0.0}}};
  CHECK(loss(params, one) == -forward(params, one[0]).revenue());
  CHECK(loss(params, one) == doctest::Approx(-1.0 / (std::numbers::e + 2.0)).epsilon(1e-14));

  // l2 adds sum w^2 + sum beta^2 = 2 for identity lines.
  CHECK(loss(params, one, 0.5) == doctest::Approx(loss(params, one) + 1.0).epsilon(1e-14));

  std::vector<ValuationProfile> const wrong{{{1.0}}};
  CHECK_THROWS_AS(loss(params, wrong), UsageError);
  CHECK_THROWS_AS(loss(params, Batch{}), UsageError);
}

TEST_CASE("backward matches the hand-derived gradient at an identity point")
{
  // n = 2, one line per bidder, bids (1, 0.5), kappa = 1.
  // x = (1, 0.5); p = (0.5, 1); g = softmax(1, 0.5, 0); R = g1 p1 + g2 p2.
  double const e1 = std::exp(1.0), eh = std::exp(0.5);
  double const z  = e1 + eh + 1.0;
  double const g1 = e1 / z, g2 = eh / z;
  double const R  = g1 * 0.5 + g2 * 1.0;
  // beta_1 moves x_1 (softmax and bidder 2's price) and p_1 (-1).
  double const dR_dbeta1 = g1 * (0.5 - R) + g1 * -1.0 + g2 * 1.0;
  // beta_2 moves x_2 (softmax and bidder 1's price) and p_2 (-1).
  double const dR_dbeta2 = g2 * (1.0 - R) + g2 * -1.0 + g1 * 1.0;
  // alpha_i scales w_i: dx_i = v_i, dp_i = -p_i.
  double const dR_dalpha1 = g1 * (0.5 - R) * 1.0 + g1 * -0.5 + g2 * 1.0 * 1.0;
  double const dR_dalpha2 = g2 * (1.0 - R) * 0.5 + g2 * -1.0 + g1 * 1.0 * 0.5;

  auto const                          params = NetParams::identity({2, 1, 1, 1.0});
  std::vector<ValuationProfile> const batch{{{1.0, 0.5}}};
  auto const                          grads = backward(params, batch);
  CHECK(grads.d_beta[0] == doctest::Approx(-dR_dbeta1).epsilon(1e-12));
  CHECK(grads.d_beta[1] == doctest::Approx(-dR_dbeta2).epsilon(1e-12));
  CHECK(grads.d_alpha[0] == doctest::Approx(-dR_dalpha1).epsilon(1e-12));
  CHECK(grads.d_alpha[1] == doctest::Approx(-dR_dalpha2).epsilon(1e-12));

  auto const numeric = finite_diff_grad(params, batch, 1e-6);
  CHECK(numeric.d_beta[0] == doctest::Approx(-dR_dbeta1).epsilon(1e-8));
  CHECK(numeric.d_alpha[1] == doctest::Approx(-dR_dalpha2).epsilon(1e-8));
}

TEST_CASE("backward agrees with central differences on random instances")
{
  Rng rng(31);
  for (int trial = 0; trial < 50; ++trial)
  {
    auto const params = random_params(rng, 5, rng.uniform(0.5, 3.0));
    auto const batch  = random_batch(rng, params.config().n, 1 + rng.below(6));
    double const l2   = trial % 2 ? 0.01 : 0.0;
    auto const check  = check_gradient(params, batch, l2);
    CAPTURE(trial);
    REQUIRE(check.checked > 0);
    REQUIRE(check.max_rel_error < 1e-4);
  }
}

TEST_CASE("gradient on zero bids with clamped transforms")
{
  // One line per bidder, beta < 0: x_i = beta_i, so the allocation does not
  // depend on alpha, while p_i = -beta_i / w_i does. dR/dalpha_i = g_i beta_i / w_i.
  Rng                 rng(41);
  NetConfig const     cfg{3, 1, 1, 1.0};
  std::vector<double> alpha(3), beta(3);
  for (std::size_t i = 0; i < 3; ++i)
  {
    alpha[i] = rng.uniform(-0.5, 0.5);
    beta[i]  = rng.uniform(-2.0, -0.1);
  }
  NetParams const                     params(cfg, alpha, beta);
  std::vector<ValuationProfile> const zeros(4, ValuationProfile{{0.0, 0.0, 0.0}});
  auto const                          outcome = forward(params, zeros[0]);
  auto const                          grads   = backward(params, zeros);
  for (std::size_t i = 0; i < 3; ++i)
  {
    double const w = std::exp(alpha[i]);
    CHECK(outcome.payments[i] == doctest::Approx(-beta[i] / w).epsilon(1e-14));
    CHECK(grads.d_alpha[i] == doctest::Approx(-outcome.alloc[i] * beta[i] / w).epsilon(1e-12));
  }

  // The l2 term adds exactly its own gradient.
  double const l2       = 0.01;
  auto const   with_reg = backward(params, zeros, l2);
  for (std::size_t i = 0; i < 3; ++i)
  {
    double const w = params.weights()[i];
    CHECK(with_reg.d_beta[i] == doctest::Approx(grads.d_beta[i] + 2.0 * l2 * beta[i]).epsilon(1e-14));
    CHECK(with_reg.d_alpha[i] == doctest::Approx(grads.d_alpha[i] + 2.0 * l2 * w * w).epsilon(1e-14));
  }
}

TEST_CASE("central differences converge quadratically at smooth points")
{
  auto const                          params = NetParams::identity({3, 1, 1, 1.5});
  std::vector<ValuationProfile> const batch{{{1.0, 2.0, 3.5}}, {{2.5, 0.5, 1.25}}};
  auto const                          exact = backward(params, batch);
  auto error = [&](double eps) {
    auto const numeric = finite_diff_grad(params, batch, eps);
    double     worst   = 0.0;
    for (std::size_t idx = 0; idx < exact.d_beta.size(); ++idx)
    {
      worst = std::max(worst, std::abs(numeric.d_beta[idx] - exact.d_beta[idx]));
      worst = std::max(worst, std::abs(numeric.d_alpha[idx] - exact.d_alpha[idx]));
    }
    return worst;
  };
  double const coarse = error(2e-2);
  double const fine   = error(1e-2);
  CHECK(coarse / fine == doctest::Approx(4.0).epsilon(0.1));
  CHECK_THROWS_AS(finite_diff_grad(params, batch, 0.0), UsageError);
}

TEST_CASE("sgd_step")
{
  Rng        rng(51);
  auto const params = NetParams::random({2, 2, 2, 1.0}, rng);
  GradientSet grads{std::vector<double>(8, 0.0), std::vector<double>(8, 1.0)};

  CHECK(sgd_step(params, grads, 0.0) == params);

  auto const stepped = sgd_step(params, grads, 0.1);
  for (std::size_t idx = 0; idx < 8; ++idx)
  {
    CHECK(stepped.beta()[idx] == params.beta()[idx] - 0.1);
    CHECK(stepped.alpha()[idx] == params.alpha()[idx]);
  }

  for (std::size_t idx = 0; idx < 8; ++idx)
  {
    grads.d_alpha[idx] = rng.uniform(-1.0, 1.0);
  }
  auto const twice = sgd_step(sgd_step(params, grads, 0.01), grads, 0.01);
  for (std::size_t idx = 0; idx < 8; ++idx)
  {
    CHECK(twice.alpha()[idx] == doctest::Approx(params.alpha()[idx] - 0.02 * grads.d_alpha[idx]).epsilon(1e-14));
    CHECK(twice.weights()[idx] > 0.0);
  }

  GradientSet const bad{std::vector<double>(3), std::vector<double>(8)};
  CHECK_THROWS_AS(sgd_step(params, bad, 0.1), UsageError);
}

TEST_CASE("train with zero iterations returns the initial point")
{
  TrainConfig cfg;
  cfg.iterations   = 0;
  cfg.dataset_size = 50;
  cfg.batch_size   = 10;
  NetConfig const net{3, 2, 2, 1.0};
  auto const      result = train(cfg, net, kReference);
  REQUIRE(result.trace.checkpoints.size() == 1);
  CHECK(result.trace.checkpoints[0].iteration == 0);
  Rng init_rng(cfg.seed, Stream::ParamInit);
  CHECK(result.params == NetParams::random(net, init_rng));
}

TEST_CASE("training is deterministic and keeps the trace consistent")
{
  TrainConfig cfg;
  cfg.iterations   = 300;
  cfg.dataset_size = 200;
  cfg.batch_size   = 30;
  cfg.eval_every   = 40;
  cfg.learning_rate = 0.01;
  NetConfig const net{4, 3, 4, 1.0};
  auto const      a = train(cfg, net, kReference);
  auto const      b = train(cfg, net, kReference);
  CHECK(a.trace == b.trace);
  CHECK(a.params == b.params);

  std::vector<std::size_t> iterations;
  for (auto const &cp : a.trace.checkpoints)
  {
    iterations.push_back(cp.iteration);
  }
  CHECK(iterations == std::vector<std::size_t>{0, 40, 80, 120, 160, 200, 240, 280, 300});

  for (double w : a.params.weights())
  {
    CHECK(std::isfinite(w));
    CHECK(w > 0.0);
  }

  // Soft test revenue is the negated unregularized loss on the test set.
  Rng        test_rng(cfg.seed, Stream::TestData);
  auto const test_set = generate_dataset(kReference, net.n, cfg.dataset_size, cfg.seed, test_rng);
  CHECK(std::abs(a.trace.checkpoints.back().test_revenue_soft + loss(a.params, test_set.profiles)) <= 1e-12);

  cfg.seed = 2;
  CHECK_FALSE(train(cfg, net, kReference).trace == a.trace);
}

TEST_CASE("full-batch training is supported")
{
  TrainConfig cfg;
  cfg.iterations   = 20;
  cfg.dataset_size = 40;
  cfg.batch_size   = 40;
  cfg.eval_every   = 10;
  auto const result = train(cfg, NetConfig{2, 2, 2, 1.0}, kReference);
  CHECK(result.trace.checkpoints.size() == 3);
}

TEST_CASE("divergence is reported with its iteration")
{
  TrainConfig cfg;
  cfg.iterations    = 100;
  cfg.dataset_size  = 50;
  cfg.batch_size    = 50;
  cfg.learning_rate = 1e6;
  try
  {
    train(cfg, NetConfig{3, 2, 2, 1.0}, kReference);
    FAIL("expected divergence");
  }
  catch (TrainingError const &e)
  {
    CHECK(e.iteration() >= 1);
    CHECK(std::string(e.what()).find("iteration") != std::string::npos);
  }
}

TEST_CASE("invalid training settings are rejected")
{
  TrainConfig cfg;
  cfg.batch_size = 2000;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg            = TrainConfig{};
  cfg.learning_rate = 0.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg    = TrainConfig{};
  cfg.l2 = -1.0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
  cfg            = TrainConfig{};
  cfg.eval_every = 0;
  CHECK_THROWS_AS(cfg.validate(), ConfigError);
}

TEST_CASE("training on the reference settings improves test revenue")
{
  TrainConfig const cfg;
  auto const        result = train(cfg, NetConfig{10, 5, 10, 1.0}, kReference);
  CHECK(result.trace.checkpoints.back().iteration == 4000);
  CHECK(result.trace.checkpoints.back().test_revenue_soft > result.trace.checkpoints.front().test_revenue_soft);
}
