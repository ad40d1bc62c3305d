#include "edgeauction/mechanism.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "edgeauction/errors.hpp"

namespace edgeauction {

namespace {

void require_bidder(NetParams const &params, std::size_t bidder)
{
  if (bidder >= params.config().n)
  {
    throw UsageError("bidder index " + std::to_string(bidder) + " out of range for n=" +
                     std::to_string(params.config().n));
  }
}

bool all_finite(std::span<double const> xs)
{
  return std::all_of(xs.begin(), xs.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

void NetConfig::validate() const
{
  if (n == 0 || k == 0 || j == 0)
  {
    throw ConfigError("network requires n, k, j >= 1");
  }
  if (!(kappa > 0.0) || !std::isfinite(kappa))
  {
    throw ConfigError("network requires finite kappa > 0");
  }
}

NetParams::NetParams(NetConfig config, std::vector<double> alpha, std::vector<double> beta)
  : config_(config)
  , alpha_(std::move(alpha))
  , beta_(std::move(beta))
{
  config_.validate();
  if (alpha_.size() != config_.size())
  {
    throw UsageError("alpha has " + std::to_string(alpha_.size()) + " entries, expected " +
                     std::to_string(config_.size()));
  }
  check_shape();
  weights_.resize(alpha_.size());
  std::transform(alpha_.begin(), alpha_.end(), weights_.begin(), [](double a) { return std::exp(a); });
  if (!all_finite(alpha_) || !all_finite(weights_))
  {
    throw NumericError("effective weights exp(alpha) must be finite");
  }
}

NetParams NetParams::identity(NetConfig const &config)
{
  config.validate();
  return NetParams(config, std::vector<double>(config.size(), 0.0), std::vector<double>(config.size(), 0.0));
}

NetParams NetParams::random(NetConfig const &config, Rng &rng, double alpha_std, double beta_std)
{
  config.validate();
  std::vector<double> alpha(config.size());
  std::vector<double> beta(config.size());
  for (auto &a : alpha)
  {
    a = rng.normal(0.0, alpha_std);
  }
  for (auto &b : beta)
  {
    b = rng.normal(0.0, beta_std);
  }
  return NetParams(config, std::move(alpha), std::move(beta));
}

NetParams NetParams::from_weights(NetConfig config, std::vector<double> weights, std::vector<double> beta)
{
  config.validate();
  NetParams params;
  params.config_  = config;
  params.weights_ = std::move(weights);
  params.beta_    = std::move(beta);
  if (params.weights_.size() != config.size())
  {
    throw UsageError("weights has " + std::to_string(params.weights_.size()) + " entries, expected " +
                     std::to_string(config.size()));
  }
  params.check_shape();
  if (!all_finite(params.weights_) ||
      std::any_of(params.weights_.begin(), params.weights_.end(), [](double w) { return w == 0.0; }))
  {
    throw NumericError("weights must be finite and non-zero");
  }
  params.log_parameterized_ =
      std::all_of(params.weights_.begin(), params.weights_.end(), [](double w) { return w > 0.0; });
  params.alpha_.resize(params.weights_.size());
  std::transform(params.weights_.begin(), params.weights_.end(), params.alpha_.begin(), [](double w) {
    return w > 0.0 ? std::log(w) : std::numeric_limits<double>::quiet_NaN();
  });
  return params;
}

void NetParams::check_shape() const
{
  if (beta_.size() != config_.size())
  {
    throw UsageError("beta has " + std::to_string(beta_.size()) + " entries, expected " +
                     std::to_string(config_.size()));
  }
  if (!all_finite(beta_))
  {
    throw NumericError("beta must be finite");
  }
}

bool NetParams::operator==(NetParams const &other) const
{
  // Compare weights rather than alpha: alpha holds NaN for non-positive weights.
  return config_ == other.config_ && weights_ == other.weights_ && beta_ == other.beta_ &&
         log_parameterized_ == other.log_parameterized_;
}

double AuctionOutcome::revenue() const
{
  double total = 0.0;
  for (std::size_t i = 0; i < payments.size(); ++i)
  {
    total += alloc[i] * payments[i];
  }
  return total;
}

TracedValue transform_traced(NetParams const &params, std::size_t bidder, double bid)
{
  require_bidder(params, bidder);
  auto const &cfg     = params.config();
  auto const  weights = params.weights();
  auto const  beta    = params.beta();

  TracedValue best{std::numeric_limits<double>::infinity(), {}};
  for (std::size_t k = 0; k < cfg.k; ++k)
  {
    std::size_t const base = params.index(bidder, k, 0);
    TracedValue       group{weights[base] * bid + beta[base], {k, 0}};
    for (std::size_t j = 1; j < cfg.j; ++j)
    {
      double const h = weights[base + j] * bid + beta[base + j];
      if (h > group.value)
      {
        group = {h, {k, j}};
      }
    }
    if (group.value < best.value)
    {
      best = group;
    }
  }
  return best;
}

double transform(NetParams const &params, std::size_t bidder, double bid)
{
  return transform_traced(params, bidder, bid).value;
}

TracedValue inverse_transform_traced(NetParams const &params, std::size_t bidder, double y)
{
  require_bidder(params, bidder);
  auto const &cfg     = params.config();
  auto const  weights = params.weights();
  auto const  beta    = params.beta();

  TracedValue best{-std::numeric_limits<double>::infinity(), {}};
  for (std::size_t k = 0; k < cfg.k; ++k)
  {
    std::size_t const base = params.index(bidder, k, 0);
    TracedValue       group{(y - beta[base]) / weights[base], {k, 0}};
    for (std::size_t j = 1; j < cfg.j; ++j)
    {
      double const h = (y - beta[base + j]) / weights[base + j];
      if (h < group.value)
      {
        group = {h, {k, j}};
      }
    }
    if (group.value > best.value)
    {
      best = group;
    }
  }
  return best;
}

double inverse_transform(NetParams const &params, std::size_t bidder, double y)
{
  return inverse_transform_traced(params, bidder, y).value;
}

std::vector<double> allocate(std::span<double const> transformed, double kappa)
{
  if (!(kappa > 0.0) || !std::isfinite(kappa))
  {
    throw UsageError("allocate requires finite kappa > 0");
  }
  if (!all_finite(transformed))
  {
    throw NumericError("allocate received a non-finite transformed bid");
  }
  // The dummy no-sale bid is 0, so the shift is at least 0.
  double shift = 0.0;
  for (double x : transformed)
  {
    shift = std::max(shift, kappa * x);
  }
  std::vector<double> alloc(transformed.size() + 1);
  double              total = 0.0;
  for (std::size_t i = 0; i < transformed.size(); ++i)
  {
    alloc[i] = std::exp(kappa * transformed[i] - shift);
    total += alloc[i];
  }
  alloc.back() = std::exp(-shift);
  total += alloc.back();
  for (auto &g : alloc)
  {
    g /= total;
  }
  return alloc;
}

std::optional<std::size_t> strongest_rival(std::span<double const> transformed, std::size_t bidder)
{
  std::optional<std::size_t> rival;
  for (std::size_t j = 0; j < transformed.size(); ++j)
  {
    if (j != bidder && (!rival || transformed[j] > transformed[*rival]))
    {
      rival = j;
    }
  }
  return rival;
}

double spa0_payment(std::span<double const> transformed, std::size_t bidder)
{
  if (bidder >= transformed.size())
  {
    throw UsageError("bidder index " + std::to_string(bidder) + " out of range for n=" +
                     std::to_string(transformed.size()));
  }
  auto const rival = strongest_rival(transformed, bidder);
  return rival ? std::max(0.0, transformed[*rival]) : 0.0;
}

double conditional_payment(NetParams const &params, std::size_t bidder, double p0)
{
  return std::max(0.0, inverse_transform(params, bidder, p0));
}

AuctionOutcome forward(NetParams const &params, std::span<double const> bids)
{
  std::size_t const n = params.config().n;
  if (bids.size() != n)
  {
    throw UsageError("profile has " + std::to_string(bids.size()) + " bids, network expects " + std::to_string(n));
  }
  AuctionOutcome out;
  out.transformed_bids.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.transformed_bids[i] = transform(params, i, bids[i]);
  }
  out.alloc = allocate(out.transformed_bids, params.config().kappa);
  out.payments.resize(n);
  for (std::size_t i = 0; i < n; ++i)
  {
    out.payments[i] = conditional_payment(params, i, spa0_payment(out.transformed_bids, i));
  }
  return out;
}

AuctionOutcome forward(NetParams const &params, ValuationProfile const &profile)
{
  return forward(params, std::span<double const>(profile.values));
}

double soft_revenue(NetParams const &params, std::span<double const> bids)
{
  return forward(params, bids).revenue();
}

HardOutcome hard_mechanism(NetParams const &params, std::span<double const> bids)
{
  std::size_t const n = params.config().n;
  if (bids.size() != n)
  {
    throw UsageError("profile has " + std::to_string(bids.size()) + " bids, network expects " + std::to_string(n));
  }
  std::vector<double> transformed(n);
  std::size_t         top = 0;
  for (std::size_t i = 0; i < n; ++i)
  {
    transformed[i] = transform(params, i, bids[i]);
    if (transformed[i] > transformed[top])
    {
      top = i;
    }
  }
  if (!(transformed[top] > 0.0))
  {
    return {};
  }
  return {top, conditional_payment(params, top, spa0_payment(transformed, top))};
}

}  // namespace edgeauction
