#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace lrcw {

/// Seeded 64-bit generator with portable bounded draws (std distributions are
/// implementation-defined, which would break cross-platform determinism).
class Rng {
public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  std::uint64_t next() { return eng_(); }

  /// Uniform in [0, n), n > 0.
  std::uint64_t below(std::uint64_t n) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
    std::uint64_t x;
    do {
      x = eng_();
    } while (x >= limit);
    return x % n;
  }

  /// k distinct values from [0, n), sorted ascending.
  std::vector<std::size_t> distinct(std::size_t n, std::size_t k) {
    std::vector<std::size_t> out;
    out.reserve(k);
    // Floyd's algorithm.
    for (std::size_t j = n - k; j < n; ++j) {
      const auto t = static_cast<std::size_t>(below(j + 1));
      if (std::find(out.begin(), out.end(), t) == out.end())
        out.push_back(t);
      else
        out.push_back(j);
    }
    std::sort(out.begin(), out.end());
    return out;
  }

private:
  std::mt19937_64 eng_;
};

}  // namespace lrcw
