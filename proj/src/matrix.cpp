#include "lrcw/matrix.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "lrcw/error.hpp"

namespace lrcw {

namespace {

// dst[j] -= c * src[j] for j in [from, n).
void axpy(const FiniteField& f, Elem* dst, const Elem* src, Elem c, std::size_t from, std::size_t n) {
  if (c == 0) return;
  if (f.is_prime()) {
    const std::uint64_t p = f.p();
    const std::uint64_t nc = p - c;
    for (std::size_t j = from; j < n; ++j) {
      if (src[j] == 0) continue;
      dst[j] = static_cast<Elem>((dst[j] + nc * src[j]) % p);
    }
    return;
  }
  for (std::size_t j = from; j < n; ++j) {
    if (src[j] == 0) continue;
    dst[j] = f.sub(dst[j], f.mul(c, src[j]));
  }
}

void scale_row(const FiniteField& f, Elem* row, Elem c, std::size_t from, std::size_t n) {
  for (std::size_t j = from; j < n; ++j) row[j] = f.mul(row[j], c);
}

}  // namespace

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

Matrix::Matrix(Field field, std::size_t rows, std::size_t cols, std::vector<Elem> entries)
    : field_(std::move(field)), rows_(rows), cols_(cols), a_(std::move(entries)) {
  require(a_.size() == rows_ * cols_, ErrorKind::InvalidParameter, "matrix entry count mismatch");
  for (Elem e : a_) require(field_->contains(e), ErrorKind::InvalidParameter, "matrix entry outside the field");
}

Matrix Matrix::identity(Field field, std::size_t n) {
  Matrix m(std::move(field), n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

Matrix Matrix::from_rows(Field field, std::size_t cols, const std::vector<std::vector<Elem>>& rows) {
  std::vector<Elem> e;
  e.reserve(rows.size() * cols);
  for (const auto& r : rows) {
    require(r.size() == cols, ErrorKind::InvalidParameter, "ragged matrix rows");
    e.insert(e.end(), r.begin(), r.end());
  }
  return Matrix(std::move(field), rows.size(), cols, std::move(e));
}

std::vector<Elem> Matrix::column(std::size_t c) const {
  std::vector<Elem> v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

Matrix Matrix::transpose() const {
  Matrix t(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) t(c, r) = (*this)(r, c);
  return t;
}

Matrix Matrix::select_columns(std::span<const std::size_t> cols) const {
  Matrix s(field_, rows_, cols.size());
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t j = 0; j < cols.size(); ++j) s(r, j) = (*this)(r, cols[j]);
  return s;
}

Matrix Matrix::select_rows(std::span<const std::size_t> rows) const {
  Matrix s(field_, rows.size(), cols_);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < cols_; ++c) s(i, c) = (*this)(rows[i], c);
  return s;
}

Matrix Matrix::stacked(const Matrix& other) const {
  if (rows_ == 0) return other;
  if (other.rows_ == 0) return *this;
  require(cols_ == other.cols_, ErrorKind::InvalidParameter, "stacking matrices of different widths");
  Matrix s(field_, rows_ + other.rows_, cols_);
  std::copy(a_.begin(), a_.end(), s.a_.begin());
  std::copy(other.a_.begin(), other.a_.end(), s.a_.begin() + static_cast<std::ptrdiff_t>(a_.size()));
  return s;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
  require(a.cols() == b.rows(), ErrorKind::InvalidParameter, "matrix product dimension mismatch");
  const auto& f = *a.field();
  Matrix c(a.field(), a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Elem aik = a(i, k);
      if (aik == 0) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) = f.add(c(i, j), f.mul(aik, b(k, j)));
    }
  return c;
}

std::vector<Elem> multiply(const Matrix& a, std::span<const Elem> x) {
  require(a.cols() == x.size(), ErrorKind::InvalidParameter, "matrix-vector dimension mismatch");
  const auto& f = *a.field();
  std::vector<Elem> y(a.rows(), 0);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Elem acc = 0;
    for (std::size_t j = 0; j < a.cols(); ++j) acc = f.add(acc, f.mul(a(i, j), x[j]));
    y[i] = acc;
  }
  return y;
}

std::vector<std::size_t> rref(Matrix& m) {
  std::vector<std::size_t> pivots;
  if (m.empty()) return pivots;
  const auto& f = *m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      auto a = m.row(piv), b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    Elem* prow = m.row(r).data();
    scale_row(f, prow, f.inv(prow[c]), c, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Elem* row = m.row(i).data();
      axpy(f, row, prow, row[c], c, cols);
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t rank(Matrix m) {
  // Forward elimination only.
  if (m.empty()) return 0;
  const auto& f = *m.field();
  const std::size_t rows = m.rows(), cols = m.cols();
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m(piv, c) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r) {
      auto a = m.row(piv), b = m.row(r);
      std::swap_ranges(a.begin(), a.end(), b.begin());
    }
    Elem* prow = m.row(r).data();
    scale_row(f, prow, f.inv(prow[c]), c, cols);
    for (std::size_t i = r + 1; i < rows; ++i) {
      Elem* row = m.row(i).data();
      axpy(f, row, prow, row[c], c, cols);
    }
    ++r;
  }
  return r;
}

Matrix nullspace(const Matrix& m) {
  Matrix red = m;
  const auto pivots = rref(red);
  const std::size_t cols = m.cols();
  std::vector<bool> is_pivot(cols, false);
  for (auto p : pivots) is_pivot[p] = true;
  const auto& f = *m.field();
  Matrix basis(m.field(), cols - pivots.size(), cols);
  std::size_t b = 0;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    basis(b, free) = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) basis(b, pivots[i]) = f.neg(red(i, free));
    ++b;
  }
  return basis;
}

std::optional<std::vector<Elem>> solve(const Matrix& m, std::span<const Elem> rhs) {
  require(rhs.size() == m.rows(), ErrorKind::InvalidParameter, "right-hand side length mismatch");
  Matrix aug(m.field(), m.rows(), m.cols() + 1);
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug(i, j) = m(i, j);
    aug(i, m.cols()) = rhs[i];
  }
  const auto pivots = rref(aug);
  std::vector<Elem> x(m.cols(), 0);
  for (std::size_t i = 0; i < pivots.size(); ++i) {
    if (pivots[i] == m.cols()) return std::nullopt;
    x[pivots[i]] = aug(i, m.cols());
  }
  return x;
}

Matrix row_basis(const Matrix& m) {
  Matrix red = m;
  const auto pivots = rref(red);
  std::vector<std::size_t> keep(pivots.size());
  for (std::size_t i = 0; i < keep.size(); ++i) keep[i] = i;
  return red.select_rows(keep);
}

IncrementalBasis::IncrementalBasis(const FiniteField& f, std::size_t dim) : f_(&f), dim_(dim), scratch_(dim) {}

bool IncrementalBasis::push(std::span<const Elem> v) {
  std::copy(v.begin(), v.end(), scratch_.begin());
  for (std::size_t k = 0; k < vecs_.size(); ++k) {
    const Elem c = scratch_[pivots_[k]];
    if (c != 0) axpy(*f_, scratch_.data(), vecs_[k].data(), c, 0, dim_);
  }
  std::size_t piv = 0;
  while (piv < dim_ && scratch_[piv] == 0) ++piv;
  if (piv == dim_) return false;
  scale_row(*f_, scratch_.data(), f_->inv(scratch_[piv]), 0, dim_);
  vecs_.push_back(scratch_);
  pivots_.push_back(piv);
  return true;
}

void IncrementalBasis::pop() {
  vecs_.pop_back();
  pivots_.pop_back();
}

void write_matrix(std::ostream& os, const Matrix& m) {
  const auto& f = *m.field();
  if (!f.is_prime()) os << f.header() << '\n';
  os << f.q() << ' ' << m.rows() << ' ' << m.cols() << '\n';
  for (std::size_t r = 0; r < m.rows(); ++r) {
    for (std::size_t c = 0; c < m.cols(); ++c) {
      if (c) os << ' ';
      os << m(r, c);
    }
    os << '\n';
  }
}

namespace {

std::vector<std::uint64_t> parse_ints(const std::string& line) {
  std::istringstream ls(line);
  std::vector<std::uint64_t> v;
  std::string tok;
  while (ls >> tok) {
    try {
      std::size_t used = 0;
      v.push_back(std::stoull(tok, &used));
      require(used == tok.size(), ErrorKind::Parse, "bad integer '" + tok + "'");
    } catch (const std::logic_error&) {
      fail(ErrorKind::Parse, "bad integer '" + tok + "'");
    }
  }
  return v;
}

bool next_content_line(std::istream& is, std::string& line) {
  while (std::getline(is, line)) {
    const auto pos = line.find_first_not_of(" \t\r");
    if (pos != std::string::npos && line[pos] != '#') return true;
  }
  return false;
}

}  // namespace

Matrix read_matrix(std::istream& is) {
  std::string line;
  require(next_content_line(is, line), ErrorKind::Parse, "empty matrix text");
  auto head = parse_ints(line);
  Field field;
  if (head.size() > 3) {
    // Extension-field header: p m c_0 .. c_m.
    require(head.size() >= 3 && head.size() == head[1] + 3, ErrorKind::Parse, "malformed field header");
    std::vector<std::uint32_t> mod(head.begin() + 2, head.end());
    for (auto& c : mod) c = static_cast<std::uint32_t>(c);
    field = FiniteField::make(static_cast<std::uint32_t>(head[0]), static_cast<std::uint32_t>(head[1]), mod);
    require(next_content_line(is, line), ErrorKind::Parse, "missing dimension line");
    head = parse_ints(line);
    require(head.size() == 3 && head[0] == field->q(), ErrorKind::Parse, "dimension line does not match header");
  } else {
    require(head.size() == 3, ErrorKind::Parse, "expected 'q rows cols'");
    field = FiniteField::of_order(static_cast<std::uint32_t>(head[0]));
  }
  const std::size_t rows = head[1], cols = head[2];
  std::vector<Elem> e;
  e.reserve(rows * cols);
  for (std::size_t r = 0; r < rows; ++r) {
    require(next_content_line(is, line), ErrorKind::Parse, "missing matrix row " + std::to_string(r));
    auto v = parse_ints(line);
    require(v.size() == cols, ErrorKind::Parse, "row " + std::to_string(r) + " has wrong length");
    for (auto x : v) {
      require(x < field->q(), ErrorKind::Parse, "entry outside the field");
      e.push_back(static_cast<Elem>(x));
    }
  }
  return Matrix(field, rows, cols, std::move(e));
}

std::string to_text(const Matrix& m) {
  std::ostringstream os;
  write_matrix(os, m);
  return os.str();
}

Matrix matrix_from_text(const std::string& text) {
  std::istringstream is(text);
  return read_matrix(is);
}

}  // namespace lrcw
