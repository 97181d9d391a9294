#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "lrcw/lrc.hpp"
#include "lrcw/matrix.hpp"

namespace lrcw {

enum class ArrayKind { Basic, Rearranged, Truncated, Imported };

std::string to_string(ArrayKind kind);

/// Placement of code coordinates in a rows x cols array. Cells are row-major;
/// an empty cell is a zero-fill cell that carries no code symbol.
struct ArrayLayout {
  ArrayKind kind = ArrayKind::Imported;
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<std::optional<std::size_t>> cells;
  /// Evaluation point shared by the data symbols of each column (nullopt for
  /// pure parity columns).
  std::vector<std::optional<Elem>> column_points;
  /// Number of leading columns that carry data symbols.
  std::size_t data_cols = 0;

  std::optional<std::size_t> at(std::size_t row, std::size_t col) const { return cells.at(row * cols + col); }
  /// Coordinates of the non-zero-fill cells of a column, top to bottom.
  std::vector<std::size_t> column_coords(std::size_t col) const;
  std::size_t zero_fill() const;
  /// Number of code coordinates placed (cells minus zero fill).
  std::size_t coordinates() const { return cells.size() - zero_fill(); }
};

/// Columns are consecutive runs of `rows` coordinates (coordinate c sits at
/// column c / rows, row c % rows). Used for imported array parity checks.
ArrayLayout column_major(std::size_t n, std::size_t rows, std::size_t data_cols);

/// t x (m + ceil(h/t)) array: column tau stacks the symbols evaluated at tau in
/// block order; global parities fill the trailing columns.
ArrayLayout array_basic(const EvaluationLayout& layout);
/// (t + h/rho) x rho array: each column holds t data symbols and h/rho global parities.
ArrayLayout array_rearranged(const EvaluationLayout& layout);
/// t x rho array for h = r - v: the first r - v columns are the points dropped
/// from the last block and each carries t - 1 data symbols plus one global parity.
ArrayLayout array_truncated(const EvaluationLayout& layout);

/// Flattens back to the code coordinate order and checks the map is a bijection.
void validate_array(const ArrayLayout& arr, std::size_t n);

struct GsdCheckOptions {
  std::size_t y = 0;
  std::size_t gamma = 0;
  bool data_only = true;
  std::uint64_t exhaustive_limit = 1'000'000;
  std::size_t samples = 10'000;
  std::uint64_t seed = 1;
  unsigned workers = 1;
  /// Minimum distance used for the s*b + gamma > d - 1 qualification.
  std::size_t d = 0;
};

struct GsdReport {
  std::size_t y = 0;
  std::size_t gamma = 0;
  bool data_only = true;
  std::uint64_t total = 0;  // number of patterns in the full sweep
  bool sampled = false;
  std::uint64_t seed = 0;
  std::uint64_t tested = 0;
  std::uint64_t passed = 0;
  std::uint64_t failed = 0;
  /// First failing patterns (coordinate sets) in enumeration order.
  std::vector<std::vector<std::size_t>> witnesses;
  std::size_t rows = 0;
  std::size_t d = 0;
  bool qualifies = false;  // y * rows + gamma > d - 1
  bool ok() const { return failed == 0 && tested > 0; }
};

/// Size of the full sweep of y columns plus gamma cells (saturates at 2^64-1).
std::uint64_t gsd_pattern_count(const ArrayLayout& arr, std::size_t y, std::size_t gamma, bool data_only);

/// Sweeps y erased columns plus gamma further non-zero-fill cells and tests
/// each resulting coordinate set against H.
GsdReport gsd_check(const ArrayLayout& arr, const Matrix& H, const GsdCheckOptions& opts);

enum class Family { AG, PG, SG, RegularPacking };

std::string to_string(Family f);
Family family_from_string(const std::string& s);

struct GsdParamsInput {
  Family family = Family::AG;
  std::uint64_t q1 = 0;  // AG/PG/SG
  unsigned beta = 2;     // AG/PG/SG
  std::vector<std::uint64_t> prime_powers;  // RegularPacking
  std::uint64_t e = 0;                      // RegularPacking
  std::uint64_t delta = 2;
  std::uint64_t v = 1;
  std::uint64_t y_max = 4;
};

struct GsdClaim {
  std::string item;  // "I", "II" or "III"
  std::int64_t y = 0;
  std::int64_t gamma = 0;
  bool precondition = false;  // the item's hypothesis on y
  bool beyond = false;        // the item's second inequality
  bool claimed = false;       // both hold and gamma >= 0
  bool qualifies = false;     // y * b + gamma > d - 1 with d = h + delta
};

struct GsdParamsReport {
  Family family = Family::AG;
  std::int64_t r = 0, h = 0, t = 0;
  std::int64_t b = 0;     // array rows (regularity)
  std::int64_t cols = 0;  // array columns (points)
  std::int64_t blocks = 0;
  std::int64_t n = 0, k = 0;
  std::int64_t d_stated = 0;     // h + delta - 1 as printed
  std::int64_t d_singleton = 0;  // singleton-type bound
  std::int64_t q_min = 0;
  bool h_le_delta_sq = false;
  bool valid = false;
  std::vector<std::string> violations;
  std::vector<GsdClaim> claims;
};

GsdParamsReport gsd_params(const GsdParamsInput& in);

}  // namespace lrcw
