#include "edgeauction/valuation.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "edgeauction/errors.hpp"

namespace edgeauction {

void ValuationModel::validate() const
{
  if (!std::isfinite(t_min) || !std::isfinite(t_max) || !std::isfinite(c_min) || !std::isfinite(c_max))
  {
    throw ConfigError("valuation model bounds must be finite");
  }
  if (t_min < 0.0 || t_max < t_min)
  {
    throw ConfigError("valuation model requires 0 <= t_min <= t_max, got t_min=" + std::to_string(t_min) +
                      " t_max=" + std::to_string(t_max));
  }
  if (c_min <= 0.0 || c_max < c_min)
  {
    throw ConfigError("valuation model requires 0 < c_min <= c_max, got c_min=" + std::to_string(c_min) +
                      " c_max=" + std::to_string(c_max));
  }
}

void Dataset::validate() const
{
  if (profiles.empty())
  {
    throw UsageError("dataset has no profiles");
  }
  std::size_t const n = profiles.front().size();
  if (n == 0)
  {
    throw UsageError("dataset profiles are empty");
  }
  for (auto const &p : profiles)
  {
    if (p.size() != n)
    {
      throw UsageError("dataset profiles have differing lengths");
    }
  }
}

ValuationProfile sample_profile(ValuationModel const &model, std::size_t n, Rng &rng)
{
  model.validate();
  if (n == 0)
  {
    throw UsageError("sample_profile requires n >= 1");
  }
  ValuationProfile profile;
  profile.values.resize(n);
  for (auto &v : profile.values)
  {
    double const t = rng.uniform(model.t_min, model.t_max);
    double const c = rng.uniform(model.c_min, model.c_max);
    v              = t / c;
  }
  return profile;
}

double interior_density(ValuationModel const &model)
{
  return (model.c_min + model.c_max) / (2.0 * (model.t_max - model.t_min));
}

double pdf(ValuationModel const &model, double v)
{
  model.validate();
  if (!(v >= model.support_min() && v <= model.support_max()))
  {
    return 0.0;
  }
  double const dt = model.t_max - model.t_min;
  double const dc = model.c_max - model.c_min;

  if (dt == 0.0 && dc == 0.0)
  {
    return 0.0;
  }
  if (dc == 0.0)
  {
    return model.c_min / dt;
  }
  if (dt == 0.0)
  {
    if (v == 0.0)
    {
      return 0.0;
    }
    double const c = model.t_min / v;
    return (c >= model.c_min && c <= model.c_max) ? c / (v * dc) : 0.0;
  }

  double const lo = (v == 0.0) ? model.c_min : std::max(model.c_min, model.t_min / v);
  double const hi = (v == 0.0) ? model.c_max : std::min(model.c_max, model.t_max / v);
  if (hi <= lo)
  {
    return 0.0;
  }
  return (hi * hi - lo * lo) / (2.0 * dt * dc);
}

Dataset generate_dataset(ValuationModel const &model, std::size_t n, std::size_t s, std::uint64_t seed, Rng &rng)
{
  model.validate();
  if (s == 0)
  {
    throw UsageError("generate_dataset requires s >= 1");
  }
  Dataset data{model, seed, {}};
  data.profiles.reserve(s);
  for (std::size_t k = 0; k < s; ++k)
  {
    data.profiles.push_back(sample_profile(model, n, rng));
  }
  return data;
}

Dataset generate_dataset(ValuationModel const &model, std::size_t n, std::size_t s, std::uint64_t seed)
{
  Rng rng(seed, Stream::Root);
  return generate_dataset(model, n, s, seed, rng);
}

}  // namespace edgeauction
