#include <gtest/gtest.h>

#include <cmath>

#include "lrcw/bounds.hpp"
#include "lrcw/error.hpp"
#include "lrcw/rng.hpp"

using namespace lrcw;

namespace {

/// The length bound in long double, straight from the two-case formula.
std::optional<long double> reference_bound(long double q, long double r, long double delta, std::int64_t h,
                                           std::int64_t a) {
  const std::int64_t d = h + static_cast<std::int64_t>(delta);
  const std::int64_t T = (d - a - 1) / static_cast<std::int64_t>(delta);
  if (T < 2) return std::nullopt;
  const long double c1 = (r + delta - 1) / r, c0 = h * (delta - 1) / r;
  if (T % 2 == 1)
    return c1 * ((T - 1) / (2 * (q - 1)) * std::pow(q, 2.0L * (h - a - 1) / (T - 1)) + a + 1) - c0;
  return c1 * (T / (2 * (q - 1)) * std::pow(q, 2.0L * (h - a) / T) + a) - c0;
}

}  // namespace

TEST(Bounds, SingletonKnownValues) {
  EXPECT_EQ(singleton_bound(24, 14, 2, 2), 5);
  EXPECT_EQ(singleton_bound(40, 24, 2, 2), 6);
  EXPECT_EQ(singleton_bound(657, 505, 7, 3), 9);
  for (std::int64_t n = 5; n < 30; ++n)
    for (std::int64_t k = 1; k < n; ++k) EXPECT_EQ(singleton_bound(n, k, k, 4), n - k + 1);
  EXPECT_THROW(singleton_bound(10, 0, 2, 2), Error);
}

TEST(Bounds, LengthBoundKnownValues) {
  const auto lb = length_bound(11, 2, 2, 3, 0);
  EXPECT_TRUE(lb.applicable);
  EXPECT_EQ(lb.T, 2);
  EXPECT_TRUE(lb.even);
  EXPECT_TRUE(lb.exact);
  ASSERT_TRUE(lb.floor);
  EXPECT_EQ(*lb.floor, 198);
  EXPECT_NEAR(lb.value, 198.15, 1e-9);
  EXPECT_EQ(lb.lower, lb.upper);

  const auto big = length_bound(79, 7, 3, 6, 2);
  EXPECT_TRUE(big.applicable);
  EXPECT_EQ(big.T, 2);
  EXPECT_EQ(big.exp_num, 4);
  EXPECT_EQ(big.exp_den, 1);
  ASSERT_TRUE(big.floor);
  EXPECT_EQ(*big.floor, 642035);
  EXPECT_LE(657, *big.floor);

  // T(a) = 1 is outside the hypothesis.
  EXPECT_FALSE(length_bound(11, 2, 2, 3, 2).applicable);
  EXPECT_FALSE(length_bound(11, 2, 2, 3, 1).applicable);
}

TEST(Bounds, LengthBoundMatchesReferenceFormula) {
  Rng rng(51);
  int applicable = 0;
  for (int trial = 0; trial < 400; ++trial) {
    const std::int64_t q = 2 + static_cast<std::int64_t>(rng.below(200));
    const std::int64_t r = 1 + static_cast<std::int64_t>(rng.below(8));
    const std::int64_t delta = 2 + static_cast<std::int64_t>(rng.below(4));
    const std::int64_t h = static_cast<std::int64_t>(rng.below(13));
    const std::int64_t a = static_cast<std::int64_t>(rng.below(static_cast<std::uint64_t>(h + 1)));
    const auto lb = length_bound(q, r, delta, h, a);
    const auto ref = reference_bound(q, r, delta, h, a);
    ASSERT_EQ(lb.applicable, ref.has_value());
    if (!ref) continue;
    ++applicable;
    EXPECT_NEAR(lb.value, static_cast<double>(*ref), 1e-9 * std::fabs(static_cast<double>(*ref)) + 1e-9);
    EXPECT_LT(lb.width, 1e-6 * std::max(1.0, std::fabs(lb.value)));
    EXPECT_LE(std::stold(lb.lower), std::stold(lb.upper));
    if (lb.beyond_int64) EXPECT_FALSE(lb.floor.has_value());
    if (lb.floor) EXPECT_EQ(*lb.floor, static_cast<std::int64_t>(std::floor(std::stold(lb.lower))));
  }
  EXPECT_GT(applicable, 100);
}

TEST(Bounds, LengthBoundGrowsWithQ) {
  for (std::int64_t r : {1, 2, 5})
    for (std::int64_t delta : {2, 3})
      for (std::int64_t h = 0; h <= 8; ++h)
        for (std::int64_t a = 0; a <= h; ++a) {
          double prev = -1e300;
          for (std::int64_t q = 2; q <= 300; ++q) {
            const auto lb = length_bound(q, r, delta, h, a);
            if (!lb.applicable) break;
            EXPECT_GE(lb.value, prev - 1e-9 * std::fabs(prev)) << "q=" << q << " h=" << h << " a=" << a;
            prev = lb.value;
          }
        }
}

TEST(Bounds, ClassifyConstructedCodes) {
  const auto e1 = classify(24, 14, 2, 2, 5, 11);
  EXPECT_TRUE(e1.optimal);
  EXPECT_TRUE(e1.within_bound);
  EXPECT_FALSE(e1.advisory);
  ASSERT_TRUE(e1.best_n_max);
  EXPECT_EQ(*e1.best_n_max, 198);

  const auto ag = classify(40, 24, 2, 2, 6, 13);
  EXPECT_TRUE(ag.optimal);
  EXPECT_TRUE(ag.within_bound);

  const auto e3 = classify(657, 505, 7, 3, 9, 79);
  EXPECT_TRUE(e3.optimal);
  EXPECT_TRUE(e3.within_bound);
  EXPECT_TRUE(e3.advisory);
  ASSERT_TRUE(e3.best_n_max);
  EXPECT_EQ(*e3.best_n_max, 642035);
  for (const auto& lb : e3.by_a)
    if (lb.applicable && lb.floor) EXPECT_LE(657, *lb.floor);
}

TEST(Bounds, ClassifyFlagsFabricatedViolation) {
  const auto rep = classify(400, 200, 2, 2, 5, 11);
  EXPECT_FALSE(rep.within_bound);
  EXPECT_FALSE(rep.optimal);
  const auto low = classify(10, 5, 2, 3, 2, 11);
  EXPECT_FALSE(low.in_hypothesis);
  EXPECT_FALSE(low.best_n_max.has_value());
}
