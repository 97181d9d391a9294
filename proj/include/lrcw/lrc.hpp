#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "lrcw/design.hpp"
#include "lrcw/field.hpp"
#include "lrcw/matrix.hpp"
#include "lrcw/poly.hpp"

namespace lrcw {

struct LrcParams {
  std::size_t r = 0;
  std::size_t delta = 0;
  std::size_t ell = 0;
  std::size_t v = 0;
  std::size_t h = 0;

  std::size_t k() const noexcept { return r * ell + v; }
  std::size_t n() const noexcept { return k() + (ell + 1) * (delta - 1) + h; }
  /// Throws InvalidParameter unless r >= 1, delta >= 2, ell >= 1, 0 < v <= r.
  void validate() const;
};

/// Evaluation sets A_1..A_{ell+1} and global points S for the two-step
/// polynomial construction. Coordinates are block-major: set i occupies a
/// contiguous run in layout order, followed by the h global coordinates.
struct EvaluationLayout {
  Field field;
  LrcParams params;
  std::vector<Elem> S;
  std::vector<std::vector<Elem>> A;
  /// max |A_i n A_j| over i != j.
  std::size_t max_intersection = 0;
  /// Points of the last design block left out by truncation, in block order.
  std::vector<Elem> dropped;
  /// Every evaluation point of the underlying point set (design points after
  /// embedding, or the union of the explicit sets), in label order.
  std::vector<Elem> universe;

  std::size_t n() const noexcept { return params.n(); }
  std::size_t num_sets() const noexcept { return A.size(); }
  std::size_t offset(std::size_t set) const;
  std::size_t coord(std::size_t set, std::size_t index) const { return offset(set) + index; }
  std::size_t global_coord(std::size_t i) const { return n() - params.h + i; }
  std::vector<std::size_t> set_coords(std::size_t set) const;

  struct Position {
    bool global;
    std::size_t set;    // meaningless for globals
    std::size_t index;  // index within A[set] or S
  };
  Position position(std::size_t coord) const;
  Elem point(std::size_t coord) const;
};

/// The last h elements of F_q in encoding order.
std::vector<Elem> default_globals(const FiniteField& f, std::size_t h);

/// Layout from explicit evaluation sets. The last set is truncated to v+delta-1
/// points when longer (the rest is recorded in `dropped`).
EvaluationLayout build_layout(const LrcParams& params, Field field, std::vector<std::vector<Elem>> sets,
                              std::vector<Elem> S);
/// Layout from the first ell+1 blocks of a design. Point label i is embedded as
/// the (i+1)-th element of F_q \ S in encoding order; S defaults to the last h
/// elements.
EvaluationLayout build_layout(const LrcParams& params, Field field, const Design& design,
                              std::optional<std::vector<Elem>> S = std::nullopt);

/// Two-step encoder. Cofactors prod_{j != i} g_j are precomputed.
class Encoder {
public:
  explicit Encoder(const EvaluationLayout& layout);

  std::vector<Elem> encode(std::span<const Elem> info) const;
  /// Step 1 polynomial of set j for its slice of info.
  Poly local_poly(std::size_t set, std::span<const Elem> slice) const;
  /// Step 2 polynomial sum_i f_i * prod_{j != i} g_j.
  Poly global_poly(const std::vector<Poly>& locals) const;
  /// Info symbols carried by set j (r, or v for the last one).
  std::size_t info_width(std::size_t set) const;
  std::size_t info_offset(std::size_t set) const;

  const EvaluationLayout& layout() const noexcept { return *layout_; }
  const Poly& g(std::size_t set) const { return g_.at(set); }
  const Poly& cofactor(std::size_t set) const { return cof_.at(set); }

private:
  const EvaluationLayout* layout_;
  std::vector<Poly> g_;
  std::vector<Poly> cof_;
};

std::vector<Elem> encode(const EvaluationLayout& layout, std::span<const Elem> info);

struct RepairSet {
  std::vector<std::size_t> coords;
  std::size_t delta = 2;
};

/// Linear code with declared repair sets. H is always present and full rank.
struct LinearCode {
  Field field;
  std::size_t n = 0;
  std::size_t k = 0;
  std::optional<Matrix> G;
  Matrix H;
  std::vector<RepairSet> repair_sets;

  /// Generator matrix, computed from H when absent.
  Matrix generator() const;
};

Matrix generator_matrix(const EvaluationLayout& layout);
Matrix parity_check_matrix(const EvaluationLayout& layout);
/// Supports of the rows of H with at most max_weight nonzero entries.
std::vector<RepairSet> repair_sets_from_rows(const Matrix& H, std::size_t max_weight, std::size_t delta);
/// Code from H alone (k = n - rank H); G is filled from the nullspace.
LinearCode code_from_parity_check(const Matrix& H, std::vector<RepairSet> repair_sets = {});
/// The Construction-1 code; repair sets are the coordinate runs of A_1..A_{ell+1}.
LinearCode build_code(const EvaluationLayout& layout);

/// Parity-check matrix of the code punctured to `coords` (positions in coords order).
Matrix punctured_parity_check(const Matrix& G, std::span<const std::size_t> coords);

struct LocalityReport {
  struct Entry {
    std::size_t size = 0;
    std::size_t required = 0;
    std::size_t distance = 0;  // punctured distance; size+1 when the punctured code is zero
    bool ok = false;
  };
  std::vector<Entry> sets;
  std::size_t info_rank = 0;
  bool information_locality = false;
  bool ok = false;
};

/// Punctured distance of every repair set (exact) and rank of the union.
LocalityReport verify_locality(const LinearCode& code);

}  // namespace lrcw
