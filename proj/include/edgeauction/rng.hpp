#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>

namespace edgeauction {

/// Independent sub-streams derived from one user seed. The numeric values are
/// part of the reproducibility contract and must never be renumbered.
enum class Stream : std::uint64_t
{
  Root       = 0,
  TrainData  = 1,
  TestData   = 2,
  ParamInit  = 3,
  Batches    = 4,
  Sweep      = 5,
  Verify     = 6,
  Baseline   = 7,
};

std::uint64_t splitmix64(std::uint64_t x) noexcept;

/// Seedable random stream with platform-independent output.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the
/// standard. The standard distributions are not (their algorithms are left to
/// the library), so every variate is derived here from raw 64-bit draws:
///
///   uniform01   top 53 bits scaled by 2^-53, so values lie in [0, 1)
///   below(n)    rejection sampling on the top of the 64-bit range
///   normal      Box-Muller, both values of a pair are used
///
/// A stream is keyed by (seed, stream id); the engine seed is
/// splitmix64(seed ^ splitmix64(stream id)). Streams with different ids are
/// statistically independent, so splitting never shifts another consumer's
/// sequence.
class Rng
{
public:
  explicit Rng(std::uint64_t seed, std::uint64_t stream = 0);
  Rng(std::uint64_t seed, Stream stream)
    : Rng(seed, static_cast<std::uint64_t>(stream))
  {}

  /// Child stream, deterministic in (this stream's key, id).
  Rng split(std::uint64_t id) const;

  std::uint64_t next_u64()
  {
    return engine_();
  }

  double uniform01();
  double uniform(double lo, double hi);
  /// Uniform integer in [0, n). n must be > 0.
  std::uint64_t below(std::uint64_t n);
  double normal(double mean = 0.0, double stddev = 1.0);

  /// Fisher-Yates shuffle driven by below().
  void shuffle(std::span<std::size_t> items);

  std::uint64_t key() const noexcept
  {
    return key_;
  }

private:
  std::uint64_t key_;
  std::mt19937_64 engine_;
  std::optional<double> spare_normal_;
};

}  // namespace edgeauction
