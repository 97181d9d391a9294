#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lrcw/field.hpp"

namespace lrcw {

/// Row-major matrix over a finite field.
class Matrix {
public:
  Matrix() = default;
  Matrix(Field field, std::size_t rows, std::size_t cols);
  Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries);

  static Matrix identity(Field field, std::size_t n);
  static Matrix from_rows(Field field, std::size_t cols, const std::vector<std::vector<Elem>>& rows);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

  Elem operator()(std::size_t r, std::size_t c) const noexcept { return a_[r * cols_ + c]; }
  Elem& operator()(std::size_t r, std::size_t c) noexcept { return a_[r * cols_ + c]; }
  std::span<const Elem> row(std::size_t r) const noexcept { return {a_.data() + r * cols_, cols_}; }
  std::span<Elem> row(std::size_t r) noexcept { return {a_.data() + r * cols_, cols_}; }
  std::vector<Elem> column(std::size_t c) const;
  const std::vector<Elem>& entries() const noexcept { return a_; }

  Matrix transpose() const;
  Matrix select_columns(std::span<const std::size_t> cols) const;
  Matrix select_rows(std::span<const std::size_t> rows) const;
  /// Appends the rows of `other` (same column count).
  Matrix stacked(const Matrix& other) const;

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_ &&
           (a.field_ == b.field_ || (a.field_ && b.field_ && a.field_->same_as(*b.field_)));
  }

private:
  Field field_;
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Elem> a_;
};

Matrix multiply(const Matrix& a, const Matrix& b);
std::vector<Elem> multiply(const Matrix& a, std::span<const Elem> x);

/// Reduced row echelon form in place; returns pivot columns.
std::vector<std::size_t> rref(Matrix& m);
std::size_t rank(Matrix m);
/// Basis of {x : M x = 0}, one basis vector per row.
Matrix nullspace(const Matrix& m);
/// Some x with M x = rhs, or nullopt when the system is inconsistent.
std::optional<std::vector<Elem>> solve(const Matrix& m, std::span<const Elem> rhs);
/// Row-reduced basis of the row space (rank x cols).
Matrix row_basis(const Matrix& m);

/// Incremental column-independence tracker over a fixed set of column
/// vectors. Supports push/pop in stack order, used by the distance search.
class IncrementalBasis {
public:
  IncrementalBasis(const FiniteField& f, std::size_t dim);
  /// Reduces v against the stack; pushes it and returns true if independent.
  bool push(std::span<const Elem> v);
  void pop();
  std::size_t size() const noexcept { return pivots_.size(); }

private:
  const FiniteField* f_;
  std::size_t dim_;
  std::vector<std::vector<Elem>> vecs_;
  std::vector<std::size_t> pivots_;
  std::vector<Elem> scratch_;
};

// Matrix text format:
//   [optional header "p m c_0 .. c_m" for extension fields]
//   "q rows cols"
//   one line per row, space-separated element encodings.
void write_matrix(std::ostream& os, const Matrix& m);
Matrix read_matrix(std::istream& is);
std::string to_text(const Matrix& m);
Matrix matrix_from_text(const std::string& text);

}  // namespace lrcw
