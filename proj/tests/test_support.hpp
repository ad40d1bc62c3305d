#pragma once

#include <cmath>
#include <vector>

#include "edgeauction/mechanism.hpp"
#include "edgeauction/rng.hpp"

namespace edgeauction::testing {

inline NetParams single_line(double w, double beta)
{
  return NetParams({1, 1, 1, 1.0}, {std::log(w)}, {beta});
}

/// Params with a random shape (n <= max_n, k <= 5, j <= 6) and spread-out
/// lines, so several pieces are active across the bid range.
inline NetParams random_params(Rng &rng, std::size_t max_n = 6, double kappa = 1.0)
{
  NetConfig cfg{1 + rng.below(max_n), 1 + rng.below(5), 1 + rng.below(6), kappa};
  return NetParams::random(cfg, rng, 0.5, 1.0);
}

inline std::vector<double> random_bids(Rng &rng, std::size_t n, double hi = 5.0)
{
  std::vector<double> bids(n);
  for (auto &b : bids)
  {
    b = rng.uniform(0.0, hi);
  }
  return bids;
}

}  // namespace edgeauction::testing
