#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "edgeauction/mechanism.hpp"
#include "edgeauction/valuation.hpp"

namespace edgeauction {

struct RevenueEstimate
{
  double      mean      = 0.0;
  double      std_error = 0.0;
  std::size_t samples   = 0;
};

/// Mean and standard error of a sample. Throws UsageError when empty.
RevenueEstimate summarize(std::span<double const> values);

/// Second-price auction with zero reserve on raw bids: highest bid wins (lowest
/// index on ties) and pays the second-highest bid, or 0 alone.
HardOutcome spa_outcome(std::span<double const> bids);

/// Monte Carlo SPA revenue over `samples` fresh profiles from
/// Rng(seed, Stream::Baseline).
RevenueEstimate spa_expected_revenue(ValuationModel const &model, std::size_t n, std::size_t samples,
                                     std::uint64_t seed);

/// SPA revenue on a fixed dataset.
RevenueEstimate spa_revenue(Dataset const &dataset);

enum class RevenueMode
{
  Soft,
  Hard,
};

/// Soft: mean of sum_i g_i p_i. Hard: mean payment of hard_mechanism().
RevenueEstimate expected_revenue(NetParams const &params, Dataset const &dataset, RevenueMode mode);

/// Largest utility gain bidder `bidder` can get by bidding some grid point
/// instead of its value, clamped at 0. The grid has `grid` evenly spaced
/// points on [0, grid_max] plus the truthful bid. This can only falsify
/// incentive compatibility, never prove it.
double empirical_regret(NetParams const &params, ValuationProfile const &profile, std::size_t bidder,
                        std::size_t grid, double grid_max);

/// max(0, payment - value of winner) under truthful bidding.
double ir_violation(NetParams const &params, ValuationProfile const &profile);

struct VerifyInstance
{
  ValuationProfile profile;
  std::size_t      bidder = 0;
  double           amount = 0.0;
};

struct VerifyReport
{
  double         max_regret       = 0.0;
  double         max_ir_violation = 0.0;
  VerifyInstance worst_regret;
  VerifyInstance worst_ir;
  std::size_t    ir_profiles     = 0;
  std::size_t    regret_cases    = 0;
};

/// IR over `ir_profiles` fresh profiles, regret over `regret_cases` fresh
/// (profile, bidder) pairs, both drawn from Rng(seed, Stream::Verify).
VerifyReport verify_mechanism(NetParams const &params, ValuationModel const &model, std::size_t ir_profiles,
                              std::size_t regret_cases, std::size_t grid, std::uint64_t seed);

struct SweepPoint
{
  double c1         = 0.0;
  double win_prob   = 0.0;
  double std_error  = 0.0;
  double soft_alloc = 0.0;
};

struct SweepCurve
{
  std::vector<SweepPoint> points;
};

/// Winning probability of bidder 0 when its capacity is pinned to each c_1
/// and its block size drawn from U[t1.t_min, t1.t_max]; the other bidders
/// follow `model`. Every grid point reuses the same random draws, so the
/// curve differs between points only through c_1. soft_alloc is the mean
/// softmax share g_1 on the same draws.
SweepCurve winning_prob_sweep(NetParams const &params, ValuationModel const &model, std::span<double const> c1_grid,
                              ValuationModel const &t1, std::size_t samples, std::uint64_t seed);

/// count evenly spaced points on [lo, hi]; a single point is lo.
std::vector<double> linspace(double lo, double hi, std::size_t count);

}  // namespace edgeauction
