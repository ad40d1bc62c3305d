#include "edgeauction/rng.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

#include "edgeauction/errors.hpp"

namespace edgeauction {

std::uint64_t splitmix64(std::uint64_t x) noexcept
{
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30U)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27U)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31U);
}

Rng::Rng(std::uint64_t seed, std::uint64_t stream)
  : key_(splitmix64(seed ^ splitmix64(stream)))
  , engine_(key_)
{}

Rng Rng::split(std::uint64_t id) const
{
  return Rng(key_, id);
}

double Rng::uniform01()
{
  return static_cast<double>(engine_() >> 11U) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi)
{
  return lo + (hi - lo) * uniform01();
}

std::uint64_t Rng::below(std::uint64_t n)
{
  if (n == 0)
  {
    throw UsageError("Rng::below requires n > 0");
  }
  // Largest multiple of n that fits; draws at or above it are rejected.
  std::uint64_t const limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t draw = engine_();
  while (draw >= limit)
  {
    draw = engine_();
  }
  return draw % n;
}

double Rng::normal(double mean, double stddev)
{
  if (spare_normal_)
  {
    double const z = *std::exchange(spare_normal_, std::nullopt);
    return mean + stddev * z;
  }
  // 1 - u lies in (0, 1], keeping the log finite.
  double const u1     = 1.0 - uniform01();
  double const u2     = uniform01();
  double const radius = std::sqrt(-2.0 * std::log(u1));
  double const theta  = 2.0 * std::numbers::pi * u2;
  spare_normal_       = radius * std::sin(theta);
  return mean + stddev * radius * std::cos(theta);
}

void Rng::shuffle(std::span<std::size_t> items)
{
  for (std::size_t i = items.size(); i > 1; --i)
  {
    auto const j = static_cast<std::size_t>(below(i));
    std::swap(items[i - 1], items[j]);
  }
}

}  // namespace edgeauction
