#include "edgeauction/baselines.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <functional>
#include <string>

#include "edgeauction/errors.hpp"

namespace edgeauction {

RevenueEstimate summarize(std::span<double const> values)
{
  if (values.empty())
  {
    throw UsageError("cannot summarize an empty sample");
  }
  double const count = static_cast<double>(values.size());
  double       mean  = 0.0;
  for (double v : values)
  {
    mean += v;
  }
  mean /= count;
  double sq = 0.0;
  for (double v : values)
  {
    sq += (v - mean) * (v - mean);
  }
  double const std_error = values.size() > 1 ? std::sqrt(sq / (count - 1.0) / count) : 0.0;
  return {mean, std_error, values.size()};
}

HardOutcome spa_outcome(std::span<double const> bids)
{
  if (bids.empty())
  {
    throw UsageError("spa_outcome requires at least one bid");
  }
  std::size_t top = 0;
  for (std::size_t i = 1; i < bids.size(); ++i)
  {
    if (bids[i] > bids[top])
    {
      top = i;
    }
  }
  double second = 0.0;
  for (std::size_t i = 0; i < bids.size(); ++i)
  {
    if (i != top)
    {
      second = std::max(second, bids[i]);
    }
  }
  return {top, second};
}

RevenueEstimate spa_expected_revenue(ValuationModel const &model, std::size_t n, std::size_t samples,
                                     std::uint64_t seed)
{
  model.validate();
  if (samples == 0)
  {
    throw UsageError("spa_expected_revenue requires samples >= 1");
  }
  Rng                 rng(seed, Stream::Baseline);
  std::vector<double> revenue(samples);
  for (auto &r : revenue)
  {
    r = spa_outcome(sample_profile(model, n, rng).values).payment;
  }
  return summarize(revenue);
}

RevenueEstimate spa_revenue(Dataset const &dataset)
{
  dataset.validate();
  std::vector<double> revenue;
  revenue.reserve(dataset.profiles.size());
  for (auto const &p : dataset.profiles)
  {
    revenue.push_back(spa_outcome(p.values).payment);
  }
  return summarize(revenue);
}

RevenueEstimate expected_revenue(NetParams const &params, Dataset const &dataset, RevenueMode mode)
{
  dataset.validate();
  if (dataset.bidders() != params.config().n)
  {
    throw UsageError("dataset has " + std::to_string(dataset.bidders()) + " bidders, network expects " +
                     std::to_string(params.config().n));
  }
  std::vector<double> revenue;
  revenue.reserve(dataset.profiles.size());
  for (auto const &p : dataset.profiles)
  {
    revenue.push_back(mode == RevenueMode::Soft ? forward(params, p).revenue()
                                                : hard_mechanism(params, p.values).payment);
  }
  return summarize(revenue);
}

namespace {

double utility(NetParams const &params, std::vector<double> &bids, std::size_t bidder, double value, double bid)
{
  bids[bidder]         = bid;
  HardOutcome const out = hard_mechanism(params, bids);
  return (out.winner && *out.winner == bidder) ? value - out.payment : 0.0;
}

}  // namespace

double empirical_regret(NetParams const &params, ValuationProfile const &profile, std::size_t bidder,
                        std::size_t grid, double grid_max)
{
  if (grid < 2)
  {
    throw UsageError("empirical_regret requires grid >= 2");
  }
  if (bidder >= profile.size())
  {
    throw UsageError("bidder index out of range");
  }
  std::vector<double> bids  = profile.values;
  double const        value = profile.values[bidder];
  double const        truthful = utility(params, bids, bidder, value, value);
  double              best     = truthful;
  for (double b : linspace(0.0, grid_max, grid))
  {
    best = std::max(best, utility(params, bids, bidder, value, b));
  }
  return std::max(0.0, best - truthful);
}

double ir_violation(NetParams const &params, ValuationProfile const &profile)
{
  HardOutcome const out = hard_mechanism(params, profile.values);
  return out.winner ? std::max(0.0, out.payment - profile.values[*out.winner]) : 0.0;
}

VerifyReport verify_mechanism(NetParams const &params, ValuationModel const &model, std::size_t ir_profiles,
                              std::size_t regret_cases, std::size_t grid, std::uint64_t seed)
{
  model.validate();
  Rng          rng(seed, Stream::Verify);
  std::size_t const n = params.config().n;
  VerifyReport report;
  report.ir_profiles  = ir_profiles;
  report.regret_cases = regret_cases;
  for (std::size_t s = 0; s < ir_profiles; ++s)
  {
    ValuationProfile profile   = sample_profile(model, n, rng);
    double const     violation = ir_violation(params, profile);
    if (violation > report.max_ir_violation)
    {
      std::size_t const winner = *hard_mechanism(params, profile.values).winner;
      report.max_ir_violation  = violation;
      report.worst_ir          = {std::move(profile), winner, violation};
    }
  }
  for (std::size_t s = 0; s < regret_cases; ++s)
  {
    ValuationProfile  profile = sample_profile(model, n, rng);
    auto const        bidder  = static_cast<std::size_t>(rng.below(n));
    double const      regret  = empirical_regret(params, profile, bidder, grid, model.support_max());
    if (regret > report.max_regret)
    {
      report.max_regret   = regret;
      report.worst_regret = {std::move(profile), bidder, regret};
    }
  }
  return report;
}

SweepCurve winning_prob_sweep(NetParams const &params, ValuationModel const &model, std::span<double const> c1_grid,
                              ValuationModel const &t1, std::size_t samples, std::uint64_t seed)
{
  model.validate();
  t1.validate();
  if (samples == 0)
  {
    throw UsageError("winning_prob_sweep requires samples >= 1");
  }
  for (double c1 : c1_grid)
  {
    if (!(c1 > 0.0) || !std::isfinite(c1))
    {
      throw UsageError("sweep capacities must be finite and > 0");
    }
  }
  if (std::adjacent_find(c1_grid.begin(), c1_grid.end(), std::greater_equal<>()) != c1_grid.end())
  {
    throw UsageError("sweep capacities must be strictly increasing");
  }
  std::size_t const n = params.config().n;

  // Draw once: block size of bidder 0, then the rivals' profiles.
  Rng                 rng(seed, Stream::Sweep);
  std::vector<double> t_first(samples);
  std::vector<ValuationProfile> profiles(samples);
  for (std::size_t s = 0; s < samples; ++s)
  {
    t_first[s]  = rng.uniform(t1.t_min, t1.t_max);
    profiles[s] = sample_profile(model, n, rng);
  }

  SweepCurve curve;
  for (double c1 : c1_grid)
  {
    std::size_t wins = 0;
    double      soft = 0.0;
    for (std::size_t s = 0; s < samples; ++s)
    {
      profiles[s].values[0] = t_first[s] / c1;
      HardOutcome const out = hard_mechanism(params, profiles[s].values);
      if (out.winner && *out.winner == 0)
      {
        ++wins;
      }
      soft += forward(params, profiles[s]).alloc[0];
    }
    double const count = static_cast<double>(samples);
    double const p     = static_cast<double>(wins) / count;
    curve.points.push_back({c1, p, std::sqrt(p * (1.0 - p) / count), soft / count});
  }
  return curve;
}

std::vector<double> linspace(double lo, double hi, std::size_t count)
{
  std::vector<double> out(count);
  if (count == 0)
  {
    return out;
  }
  if (count == 1)
  {
    out[0] = lo;
    return out;
  }
  // Snap to 15 significant digits so points like 0.15 carry no round-off noise.
  for (std::size_t i = 0; i < count; ++i)
  {
    double const x = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(count - 1);
    char         buf[32];
    auto const   end = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 15).ptr;
    std::from_chars(buf, end, out[i]);
  }
  out.back() = hi;
  return out;
}

}  // namespace edgeauction
