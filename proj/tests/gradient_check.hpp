#pragma once

#include <algorithm>
#include <cmath>
#include <vector>

#include "edgeauction/training.hpp"

namespace edgeauction::testing {

struct GradientCheck
{
  double      max_rel_error = 0.0;
  std::size_t checked       = 0;
  std::size_t skipped       = 0;
};

/// Compares backward() with central differences on every coordinate whose
/// discrete branch choices do not change under a +-eps perturbation.
///
/// Relative error is |a - b| / max(|a|, |b|); pairs where both are below
/// `floor` are compared in absolute terms against rel_tol * floor instead.
inline GradientCheck check_gradient(NetParams const &params, Batch batch, double l2, double eps = 1e-5,
                                    double floor = 1e-6)
{
  GradientCheck result;
  auto const    analytic = backward(params, batch, l2);
  auto const    numeric  = finite_diff_grad(params, batch, eps, l2);
  auto const    base     = branch_signature(params, batch);

  std::vector<double> alpha(params.alpha().begin(), params.alpha().end());
  std::vector<double> beta(params.beta().begin(), params.beta().end());
  auto stable = [&](std::vector<double> &coords, std::size_t idx) {
    double const saved = coords[idx];
    bool         same  = true;
    for (double step : {eps, -eps})
    {
      coords[idx] = saved + step;
      same        = same && branch_signature(NetParams(params.config(), alpha, beta), batch) == base;
    }
    coords[idx] = saved;
    return same;
  };
  auto compare = [&](double a, double b) {
    double const scale = std::max(std::abs(a), std::abs(b));
    double const err   = scale < floor ? std::abs(a - b) / floor : std::abs(a - b) / scale;
    result.max_rel_error = std::max(result.max_rel_error, err);
    ++result.checked;
  };
  for (std::size_t idx = 0; idx < alpha.size(); ++idx)
  {
    if (stable(alpha, idx))
    {
      compare(analytic.d_alpha[idx], numeric.d_alpha[idx]);
    }
    else
    {
      ++result.skipped;
    }
    if (stable(beta, idx))
    {
      compare(analytic.d_beta[idx], numeric.d_beta[idx]);
    }
    else
    {
      ++result.skipped;
    }
  }
  return result;
}

}  // namespace edgeauction::testing
