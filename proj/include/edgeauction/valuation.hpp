#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "edgeauction/rng.hpp"

namespace edgeauction {

/// Miner valuation model: v = t / c with block size t ~ U[t_min, t_max] and
/// initial computing capacity c ~ U[c_min, c_max], drawn independently.
///
/// Degenerate ranges (t_min == t_max or c_min == c_max) are accepted and give
/// a point mass in that factor.
struct ValuationModel
{
  double t_min = 0.0;
  double t_max = 1.0;
  double c_min = 0.2;
  double c_max = 0.5;

  /// Throws ConfigError unless 0 <= t_min <= t_max and 0 < c_min <= c_max,
  /// all finite.
  void validate() const;

  double support_min() const
  {
    return t_min / c_max;
  }
  double support_max() const
  {
    return t_max / c_min;
  }

  bool operator==(ValuationModel const &) const = default;
};

/// One bid/valuation vector (v_1 .. v_N).
struct ValuationProfile
{
  std::vector<double> values;

  std::size_t size() const
  {
    return values.size();
  }
  bool operator==(ValuationProfile const &) const = default;
};

struct Dataset
{
  ValuationModel                model;
  std::uint64_t                 seed = 0;
  std::vector<ValuationProfile> profiles;

  std::size_t bidders() const
  {
    return profiles.empty() ? 0 : profiles.front().size();
  }
  /// Throws UsageError if empty or if profile lengths differ.
  void validate() const;

  bool operator==(Dataset const &) const = default;
};

/// Draws t_i then c_i for i = 1..n, in that order, from `rng`.
ValuationProfile sample_profile(ValuationModel const &model, std::size_t n, Rng &rng);

/// Density of v = t / c.
///
/// For v > 0 the density is
///
///     f(v) = (hi^2 - lo^2) / (2 (t_max - t_min)(c_max - c_min)),
///     lo = max(c_min, t_min / v),  hi = min(c_max, t_max / v),
///
/// and 0 when hi <= lo. Between t_min/c_min and t_max/c_max (when that
/// interval is non-empty) this reduces to (c_min + c_max) / (2 (t_max - t_min)).
/// A point-mass factor collapses the integral: c fixed gives c f_T(v c), t
/// fixed gives f_C(t / v) t / v^2. When both factors are point masses there is
/// no density and the function returns 0.
double pdf(ValuationModel const &model, double v);

/// The interior constant (c_min + c_max) / (2 (t_max - t_min)).
double interior_density(ValuationModel const &model);

/// S i.i.d. profiles from Rng(seed, Stream::Root).
Dataset generate_dataset(ValuationModel const &model, std::size_t n, std::size_t s, std::uint64_t seed);

/// Same as above but drawing from an explicit stream; `seed` is recorded only.
Dataset generate_dataset(ValuationModel const &model, std::size_t n, std::size_t s, std::uint64_t seed,
                         Rng &rng);

}  // namespace edgeauction
