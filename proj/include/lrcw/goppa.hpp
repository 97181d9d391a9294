#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "lrcw/field.hpp"
#include "lrcw/lrc.hpp"
#include "lrcw/matrix.hpp"
#include "lrcw/poly.hpp"

namespace lrcw {

/// Goppa-style LRC data: local sets S_1..S_ell (size r+delta-1 each), an
/// optional last set without locality, and the polynomials G1 (degree delta-1)
/// and G2 (degree h). Coordinates enumerate S_1, .., S_ell, S_last in order.
struct GoppaParams {
  Field field;
  Poly G1;
  Poly G2;
  std::vector<std::vector<Elem>> sets;
  std::vector<Elem> last;

  std::size_t ell() const noexcept { return sets.size(); }
  std::size_t delta() const noexcept { return static_cast<std::size_t>(G1.degree()) + 1; }
  std::size_t h() const noexcept { return static_cast<std::size_t>(std::max(G2.degree(), 0)); }
  std::size_t r() const;
  std::size_t n() const;
  std::vector<Elem> gamma() const;
  /// Throws InvalidParameter on size mismatches or G1*G2 vanishing on a gamma.
  void validate() const;
};

/// Rows G1(gamma)^-1 gamma^t per local set (t < delta-1), then G2(gamma)^-1 gamma^t
/// over all coordinates (t < h).
Matrix goppa_pcheck(const GoppaParams& params);
/// Nullspace code with the ell local sets as repair sets.
LinearCode goppa_code(const GoppaParams& params);

struct SplittingField {
  Field big;
  std::size_t degree = 1;  // [big : base]
  std::vector<Elem> roots1;  // roots of G1 in big
  std::vector<Elem> roots2;  // roots of G2 in big
  /// Cauchy parity check 1/(b - gamma) over big, local blocks first.
  Matrix pstar;
};

/// Smallest extension where G1*G2 splits into distinct linear factors.
/// Throws NotSeparable on repeated roots.
SplittingField splitting_pcheck(const GoppaParams& params);

/// Parity check over the base field of {v in base^n : P* v = 0}, from the
/// coordinates of P* in the basis 1, xi, .., xi^(j-1) with xi the generator x of big.
Matrix subfield_pcheck(const GoppaParams& params, const SplittingField& sf);

/// Residue congruences: sum v_j / (x - gamma_j) = 0 mod G1 on every local set and
/// mod G2 over all coordinates, evaluated after clearing denominators.
bool residue_check(const GoppaParams& params, const std::vector<Elem>& word);

struct GoppaDistanceReport {
  std::size_t n = 0, k = 0, r = 0, delta = 0, h = 0, ell = 0;
  std::size_t t = 0;
  bool separable = false;           // G1*G2 has delta-1+h distinct roots
  bool hypothesis = false;          // pairwise-union overlap condition for every (t+1)-subset
  bool last_disjoint = false;       // S_last disjoint from the local sets
  std::size_t designed = 0;         // min{(t+1) delta, h + delta}
  std::size_t measured = 0;
  bool distance_ok = false;
  std::size_t k_expected = 0;       // n - ell(delta-1) - h
  bool k_equal = false;
  bool optimal_claim = false;       // corollary hypotheses hold
  bool optimal_ok = true;           // d = h+delta and k equality when claimed
  std::int64_t singleton = 0;
  bool ok = false;
};

GoppaDistanceReport goppa_distance_check(const GoppaParams& params, std::size_t t, unsigned workers = 1);

}  // namespace lrcw
