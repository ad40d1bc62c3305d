#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "edgeauction/rng.hpp"
#include "edgeauction/valuation.hpp"

namespace edgeauction {

/// Shape of the auction network: n bidders, each with k groups of j lines,
/// and the softmax sharpness kappa.
struct NetConfig
{
  std::size_t n     = 1;
  std::size_t k     = 5;
  std::size_t j     = 10;
  double      kappa = 1.0;

  void validate() const;

  std::size_t per_bidder() const
  {
    return k * j;
  }
  std::size_t size() const
  {
    return n * k * j;
  }

  bool operator==(NetConfig const &) const = default;
};

/// Parameters of the per-bidder monotone transforms.
///
/// Lines are h_kj(b) = w_kj * b + beta_kj with w_kj = exp(alpha_kj). Both
/// tensors are stored flat in row-major (bidder, group, line) order. The
/// effective weights are cached since every evaluation needs them.
///
/// from_weights() admits arbitrary finite non-zero weights, so externally
/// produced mechanisms can be audited; such params are flagged as not
/// log-parameterized and cannot be trained.
class NetParams
{
public:
  NetParams(NetConfig config, std::vector<double> alpha, std::vector<double> beta);

  /// alpha = beta = 0: every line is the identity, so every transform is too.
  static NetParams identity(NetConfig const &config);
  /// alpha ~ N(0, alpha_std^2), beta ~ N(0, beta_std^2), drawn alpha first.
  static NetParams random(NetConfig const &config, Rng &rng, double alpha_std = 0.1, double beta_std = 0.1);
  static NetParams from_weights(NetConfig config, std::vector<double> weights, std::vector<double> beta);

  NetConfig const &config() const noexcept
  {
    return config_;
  }

  std::size_t index(std::size_t bidder, std::size_t group, std::size_t line) const noexcept
  {
    return (bidder * config_.k + group) * config_.j + line;
  }

  std::span<double const> alpha() const noexcept
  {
    return alpha_;
  }
  std::span<double const> beta() const noexcept
  {
    return beta_;
  }
  std::span<double const> weights() const noexcept
  {
    return weights_;
  }

  /// All weights positive and alpha holds their logarithms.
  bool log_parameterized() const noexcept
  {
    return log_parameterized_;
  }

  bool operator==(NetParams const &other) const;

private:
  NetParams() = default;
  void check_shape() const;

  NetConfig           config_;
  std::vector<double> alpha_;
  std::vector<double> beta_;
  std::vector<double> weights_;
  bool                log_parameterized_ = true;
};

/// Soft (training-time) outcome for one bid profile.
struct AuctionOutcome
{
  /// n + 1 entries; the last is the no-sale slot.
  std::vector<double> alloc;
  std::vector<double> payments;
  std::vector<double> transformed_bids;

  double revenue() const;
};

struct HardOutcome
{
  std::optional<std::size_t> winner;
  double                     payment = 0.0;

  bool operator==(HardOutcome const &) const = default;
};

/// Position of the line that determined a min-max (or max-min) value.
struct ActivePiece
{
  std::size_t group = 0;
  std::size_t line  = 0;
};

struct TracedValue
{
  double      value = 0.0;
  ActivePiece piece;
};

/// phi_i(b) = min_k max_j (w_kj b + beta_kj). Ties pick the lowest index.
double      transform(NetParams const &params, std::size_t bidder, double bid);
TracedValue transform_traced(NetParams const &params, std::size_t bidder, double bid);

/// phi_i^-1(y) = max_k min_j (y - beta_kj) / w_kj.
double      inverse_transform(NetParams const &params, std::size_t bidder, double y);
TracedValue inverse_transform_traced(NetParams const &params, std::size_t bidder, double y);

/// Softmax of kappa * (x_1 .. x_n, 0). Throws NumericError on non-finite input.
std::vector<double> allocate(std::span<double const> transformed, double kappa);

/// max(0, max_{j != i} x_j); 0 when there are no competitors.
double spa0_payment(std::span<double const> transformed, std::size_t bidder);

/// Index of the largest competitor of `bidder` (lowest index on ties), if any.
std::optional<std::size_t> strongest_rival(std::span<double const> transformed, std::size_t bidder);

/// Lowest non-negative bid that still wins against SPA-0 price p0:
/// max(0, phi_i^-1(p0)).
double conditional_payment(NetParams const &params, std::size_t bidder, double p0);

AuctionOutcome forward(NetParams const &params, ValuationProfile const &profile);
AuctionOutcome forward(NetParams const &params, std::span<double const> bids);

/// Exact mechanism: SPA-0 on transformed bids, payment mapped back through
/// the winner's inverse transform. Sells only if the top transformed bid is
/// strictly positive.
HardOutcome hard_mechanism(NetParams const &params, std::span<double const> bids);

/// Stand-alone softmax revenue for one profile.
double soft_revenue(NetParams const &params, std::span<double const> bids);

}  // namespace edgeauction
