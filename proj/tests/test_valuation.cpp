#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <vector>

#include "edgeauction/errors.hpp"
#include "edgeauction/valuation.hpp"

using namespace edgeauction;

namespace {

ValuationModel const kReference{0.0, 1.0, 0.2, 0.5};

/// Composite Simpson on [a, b] with `m` (even) intervals.
template <class F>
double simpson(F const &f, double a, double b, int m)
{
  double const h   = (b - a) / m;
  double       sum = f(a) + f(b);
  for (int i = 1; i < m; ++i)
  {
    sum += f(a + i * h) * (i % 2 ? 4.0 : 2.0);
  }
  return sum * h / 3.0;
}

/// The density is smooth between the points where the integration limits
/// switch; integrate piece by piece.
std::vector<double> kinks(ValuationModel const &m)
{
  std::vector<double> pts{m.support_min(), m.support_max(), m.t_min / m.c_min, m.t_max / m.c_max};
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  std::erase_if(pts, [&](double p) { return p < m.support_min() || p > m.support_max(); });
  return pts;
}

double integrate_pdf(ValuationModel const &m, double upto)
{
  auto const pts   = kinks(m);
  double     total = 0.0;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
  {
    double const a = pts[i];
    double const b = std::min(pts[i + 1], upto);
    if (b > a)
    {
      total += simpson([&](double v) { return pdf(m, v); }, a, b, 2000);
    }
  }
  return total;
}

}  // namespace

TEST_CASE("equal draws give valuation one")
{
  Rng rng(1);
  CHECK(sample_profile({0.3, 0.3, 0.3, 0.3}, 4, rng).values == std::vector<double>(4, 1.0));
}

TEST_CASE("sampled valuations stay in the support")
{
  Rng rng(5);
  for (int s = 0; s < 20000; ++s)
  {
    for (double v : sample_profile(kReference, 5, rng).values)
    {
      REQUIRE(v >= 0.0);
      REQUIRE(v <= 5.0);
    }
  }
  ValuationModel const shifted{0.5, 2.0, 0.4, 0.7};
  for (int s = 0; s < 20000; ++s)
  {
    double const v = sample_profile(shifted, 1, rng).values[0];
    REQUIRE(v >= shifted.support_min());
    REQUIRE(v <= shifted.support_max());
  }
}

TEST_CASE("sample mean matches E[t] E[1/c]")
{
  double const expected = 0.5 * std::log(2.5) / 0.3;
  CHECK(expected == doctest::Approx(1.527).epsilon(1e-3));
  Rng    rng(2024);
  double sum = 0.0;
  int const n = 1000000;
  for (int s = 0; s < n; ++s)
  {
    sum += sample_profile(kReference, 1, rng).values[0];
  }
  CHECK(std::abs(sum / n - expected) < 0.01);
}

TEST_CASE("invalid models are rejected")
{
  Rng rng(1);
  CHECK_THROWS_AS(sample_profile({0.0, 1.0, 0.0, 0.5}, 2, rng), ConfigError);
  CHECK_THROWS_AS(sample_profile({0.0, 1.0, 0.5, 0.2}, 2, rng), ConfigError);
  CHECK_THROWS_AS(sample_profile({1.0, 0.5, 0.2, 0.5}, 2, rng), ConfigError);
  CHECK_THROWS_AS(sample_profile({-0.1, 1.0, 0.2, 0.5}, 2, rng), ConfigError);
  CHECK_THROWS_AS(sample_profile({0.0, NAN, 0.2, 0.5}, 2, rng), ConfigError);
  CHECK_THROWS_AS(sample_profile(kReference, 0, rng), UsageError);
}

TEST_CASE("pdf reference values")
{
  CHECK(pdf(kReference, 1.0) == doctest::Approx(0.35).epsilon(1e-15));
  CHECK(pdf(kReference, 6.0) == 0.0);
  CHECK(pdf(kReference, -1.0) == 0.0);
  // Beyond t_max / c_max = 2 the capacity range is cut at 1 / v.
  CHECK(pdf(kReference, 4.0) == doctest::Approx((1.0 / 16.0 - 0.04) / 0.6).epsilon(1e-14));
  CHECK(pdf(kReference, 5.0) == doctest::Approx(0.0).epsilon(1e-14));
}

TEST_CASE("pdf integrates to one")
{
  std::vector<ValuationModel> const models{
      kReference, {0.0, 1.0, 0.4, 0.7}, {0.2, 1.5, 0.3, 0.9}, {0.5, 0.6, 0.1, 2.0}, {0.0, 2.0, 1.0, 1.0},
      {1.0, 1.0, 0.5, 1.5}};
  for (auto const &m : models)
  {
    CAPTURE(m.t_min);
    CAPTURE(m.c_min);
    CHECK(std::abs(integrate_pdf(m, m.support_max()) - 1.0) < 1e-6);
  }
}

TEST_CASE("pdf is the interior constant where both limits are inactive")
{
  Rng rng(17);
  for (int trial = 0; trial < 1000; ++trial)
  {
    double const         t_min = rng.uniform(0.0, 1.0);
    double const         t_max = t_min + rng.uniform(0.5, 3.0);
    double const         c_min = rng.uniform(0.05, 0.5);
    double const         c_max = c_min + rng.uniform(0.01, 0.3);
    ValuationModel const m{t_min, t_max, c_min, c_max};
    double const         lo = m.t_min / m.c_min;
    double const         hi = m.t_max / m.c_max;
    REQUIRE(pdf(m, rng.uniform(0.0, 10.0)) >= 0.0);
    if (lo <= hi)
    {
      double const v = rng.uniform(lo, hi);
      REQUIRE(pdf(m, v) == doctest::Approx(interior_density(m)).epsilon(1e-12));
    }
  }
}

TEST_CASE("generate_dataset is deterministic in the seed")
{
  auto const a = generate_dataset(kReference, 10, 1000, 42);
  auto const b = generate_dataset(kReference, 10, 1000, 42);
  auto const c = generate_dataset(kReference, 10, 1000, 43);
  CHECK(a == b);
  CHECK_FALSE(a.profiles == c.profiles);
  CHECK(a.bidders() == 10);
  CHECK(a.profiles.size() == 1000);
  CHECK_THROWS_AS(generate_dataset(kReference, 10, 0, 42), UsageError);
}

TEST_CASE("empirical CDF matches the integrated pdf")
{
  auto const          data = generate_dataset(kReference, 1, 100000, 99);
  std::vector<double> v;
  for (auto const &p : data.profiles)
  {
    v.push_back(p.values[0]);
  }
  std::sort(v.begin(), v.end());

  // CDF oracle on a grid, from the piecewise quadrature.
  int const           grid = 500;
  double              sup  = 0.0;
  for (int g = 1; g < grid; ++g)
  {
    double const x   = kReference.support_max() * g / grid;
    double const cdf = integrate_pdf(kReference, x);
    double const emp = static_cast<double>(std::upper_bound(v.begin(), v.end(), x) - v.begin()) / v.size();
    sup              = std::max(sup, std::abs(cdf - emp));
  }
  CHECK(sup < 0.01);
  // Kolmogorov-Smirnov critical value at the 1e-3 level.
  CHECK(sup < 1.95 / std::sqrt(static_cast<double>(v.size())));
}
