#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "lrcw/lrc.hpp"
#include "lrcw/matrix.hpp"

namespace lrcw {

/// Erased evaluation points per repair set (E_i subset of A_i) plus erased
/// global points (subset of S).
struct ErasurePattern {
  std::vector<std::vector<Elem>> E;
  std::vector<Elem> glob;

  /// Sorted erased coordinates under the layout's coordinate map.
  std::vector<std::size_t> coords(const EvaluationLayout& layout) const;
  /// Distinct erased evaluation points |(u E_i) u E_glob|.
  std::size_t distinct_points() const;
  std::size_t size() const;

  static ErasurePattern from_coords(const EvaluationLayout& layout, std::span<const std::size_t> coords);
  static ErasurePattern empty(const EvaluationLayout& layout);
  /// Canonical form: points sorted within each set.
  void canonicalize();

  friend bool operator==(const ErasurePattern&, const ErasurePattern&) = default;
};

/// Throws InvalidParameter unless every E_i lies in A_i and glob in S.
void validate_pattern(const EvaluationLayout& layout, const ErasurePattern& pat);

struct Admissibility {
  bool admissible = false;
  bool count_ok = false;    // |u heavy E| + |E_glob| <= h + delta - 1
  bool overlap_ok = false;  // each heavy A_i meets the other heavy sets in <= delta-1 points
  std::vector<std::size_t> heavy;
  std::size_t heavy_union = 0;
};

Admissibility pattern_admissible(const EvaluationLayout& layout, const ErasurePattern& pat);

/// A received word; nullopt marks an erased symbol.
using Received = std::vector<std::optional<Elem>>;

Received erase(std::span<const Elem> codeword, std::span<const std::size_t> coords);

/// Polynomial recovery following the sufficiency argument for admissible
/// patterns. Reads only coordinates outside the pattern; an attempt to read an
/// erased coordinate raises InternalInvariantViolation.
std::vector<Elem> decode_structured(const EvaluationLayout& layout, const Received& received,
                                    const ErasurePattern& pat);

/// Generic solve on the erased columns of H. nullopt when those columns are
/// dependent; throws Inconsistent when the survivors admit no codeword.
std::optional<std::vector<Elem>> decode_linear(const Matrix& H, std::span<const std::size_t> erased,
                                               const Received& received);

/// rank(H restricted to coords) == |coords|.
bool recoverable(const Matrix& H, std::span<const std::size_t> coords);

struct DistanceOptions {
  std::size_t d_max = 0;  // 0 means rows(H) + 1
  unsigned workers = 1;
  std::uint64_t guard = 100'000'000;
};

struct DistanceResult {
  /// Smallest number of dependent columns; d_max + 1 when none up to d_max.
  std::size_t d = 0;
  bool bounded = true;  // false when d exceeded d_max
  /// Lexicographically first dependent column set of size d.
  std::vector<std::size_t> witness;
  std::uint64_t rank_tests = 0;
};

/// Exact minimum distance of ker H by depth-first search over independent
/// column prefixes. Throws Infeasible past `guard` rank tests.
DistanceResult min_distance(const Matrix& H, const DistanceOptions& opts = {});

/// Calls fn on every subset of [0, n) of size <= w_max in increasing size then
/// lexicographic order (empty set first). Stops early when fn returns false.
void for_each_subset(std::size_t n, std::size_t w_max,
                     const std::function<bool(std::span<const std::size_t>)>& fn);
/// Subsets of exactly size w.
void for_each_combination(std::size_t n, std::size_t w,
                          const std::function<bool(std::span<const std::size_t>)>& fn);

/// Pattern streams over a layout.
namespace patterns {

/// Every coordinate set of weight <= w.
std::vector<ErasurePattern> exhaustive(const EvaluationLayout& layout, std::size_t w);
/// `count` coordinate sets of weight w drawn with the given seed.
std::vector<ErasurePattern> sampled(const EvaluationLayout& layout, std::size_t count, std::size_t w,
                                    std::uint64_t seed);
/// y fully erased repair sets combined with g erased global points.
std::vector<ErasurePattern> full_blocks(const EvaluationLayout& layout, std::size_t y, std::size_t g);
/// Up to `max_heavy` sets each erased in >= delta points, plus any global
/// points, with at most `max_points` distinct erased points in total.
std::vector<ErasurePattern> heavy_blocks(const EvaluationLayout& layout, std::size_t max_heavy,
                                         std::size_t max_points);

}  // namespace patterns
}  // namespace lrcw
