#pragma once

#include <cstdint>
#include <vector>

#include "lrcw/field.hpp"
#include "lrcw/matrix.hpp"
#include "lrcw/poly.hpp"
#include "lrcw/rng.hpp"

namespace lrcw::test {

inline Elem any_elem(Rng& rng, const FiniteField& f) { return static_cast<Elem>(rng.below(f.q())); }

inline Elem nonzero_elem(Rng& rng, const FiniteField& f) { return static_cast<Elem>(1 + rng.below(f.q() - 1)); }

inline std::vector<Elem> any_vector(Rng& rng, const FiniteField& f, std::size_t n) {
  std::vector<Elem> v(n);
  for (auto& x : v) x = any_elem(rng, f);
  return v;
}

inline Poly any_poly(Rng& rng, const FiniteField& f, std::size_t max_len) {
  return Poly(any_vector(rng, f, rng.below(max_len + 1)));
}

inline Matrix any_matrix(Rng& rng, const Field& f, std::size_t rows, std::size_t cols) {
  return Matrix(f, rows, cols, any_vector(rng, *f, rows * cols));
}

/// Rank by plain Gaussian elimination on a copy, independent of the library's rref.
inline std::size_t naive_rank(const Matrix& m) {
  const auto& f = *m.field();
  std::vector<std::vector<Elem>> a(m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r) a[r].assign(m.row(r).begin(), m.row(r).end());
  std::size_t rank = 0;
  for (std::size_t c = 0; c < m.cols() && rank < a.size(); ++c) {
    std::size_t piv = rank;
    while (piv < a.size() && a[piv][c] == 0) ++piv;
    if (piv == a.size()) continue;
    std::swap(a[piv], a[rank]);
    const Elem inv = f.inv(a[rank][c]);
    for (std::size_t r = rank + 1; r < a.size(); ++r) {
      if (a[r][c] == 0) continue;
      const Elem s = f.mul(a[r][c], inv);
      for (std::size_t k = c; k < m.cols(); ++k) a[r][k] = f.sub(a[r][k], f.mul(s, a[rank][k]));
    }
    ++rank;
  }
  return rank;
}

/// Minimum distance by trying every column subset in increasing size.
inline std::size_t naive_distance(const Matrix& H) {
  const std::size_t n = H.cols();
  for (std::size_t w = 1; w <= n; ++w) {
    std::vector<std::size_t> idx(w);
    for (std::size_t i = 0; i < w; ++i) idx[i] = i;
    while (true) {
      if (naive_rank(H.select_columns(idx)) < w) return w;
      std::size_t i = w;
      while (i > 0 && idx[i - 1] == n - w + i - 1) --i;
      if (i == 0) break;
      ++idx[i - 1];
      for (std::size_t j = i; j < w; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return n + 1;
}

}  // namespace lrcw::test
