#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace lrcw {

/// n - k + 1 - (ceil(k/r) - 1)(delta - 1).
std::int64_t singleton_bound(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta);

/// Certified enclosure of the length bound for one value of a.
struct LengthBound {
  std::int64_t a = 0;
  std::int64_t T = 0;
  bool applicable = false;  // T(a) >= 2
  bool even = false;
  /// Exponent of q as the reduced fraction num/den.
  std::int64_t exp_num = 0;
  std::int64_t exp_den = 1;
  bool exact = false;  // integral exponent, value is an exact rational
  /// Decimal renderings of the enclosure [lower, upper].
  std::string lower;
  std::string upper;
  double width = 0;   // upper - lower
  double value = 0;   // midpoint, for display only
  std::optional<std::int64_t> floor;  // set when floor(lower) == floor(upper) and it fits
  bool beyond_int64 = false;          // lower end exceeds any 64-bit length
};

/// Length bound for d = h + delta. Inapplicable when T(a) < 2.
LengthBound length_bound(std::int64_t q, std::int64_t r, std::int64_t delta, std::int64_t h, std::int64_t a);

struct BoundReport {
  std::int64_t n = 0, k = 0, r = 0, delta = 0, d = 0, q = 0;
  std::int64_t d_singleton = 0;
  bool optimal = false;
  bool in_hypothesis = false;  // d >= delta so h = d - delta is defined
  bool advisory = false;       // r does not divide k
  std::vector<LengthBound> by_a;
  std::optional<std::int64_t> best_n_max;
  std::optional<std::int64_t> best_a;
  bool within_bound = true;
  /// 2(h-a)/T(a) - 1 at the minimizing a, as num/den.
  std::int64_t order_exp_num = 0;
  std::int64_t order_exp_den = 1;
  std::vector<std::string> notes;
};

BoundReport classify(std::int64_t n, std::int64_t k, std::int64_t r, std::int64_t delta, std::int64_t d,
                     std::int64_t q);

}  // namespace lrcw
