#include "nilcert/matrix.hpp"

#include <algorithm>

namespace nilcert {

Matrix Matrix::identity(FieldSpec f, std::size_t n) {
  Matrix m(f, n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1 % f.p;
  return m;
}

Matrix Matrix::from_rows(FieldSpec f, std::size_t cols, const std::vector<Vec>& rows) {
  Matrix m(f, rows.size(), cols);
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != cols) throw error("matrix: row length mismatch");
    m.set_row(r, rows[r]);
  }
  return m;
}

Vec Matrix::row(std::size_t r) const {
  return Vec(a_.begin() + r * cols_, a_.begin() + (r + 1) * cols_);
}

void Matrix::set_row(std::size_t r, const Vec& v) {
  std::copy(v.begin(), v.end(), a_.begin() + r * cols_);
}

Vec Matrix::apply(const Vec& v) const {
  if (v.size() != cols_) throw error("matrix: apply dimension mismatch");
  Vec out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    std::uint64_t acc = 0;
    const std::uint64_t* row = a_.data() + r * cols_;
    for (std::size_t c = 0; c < cols_; ++c)
      if (row[c] && v[c]) acc = field_.add(acc, field_.mul(row[c], v[c]));
    out[r] = acc;
  }
  return out;
}

Matrix Matrix::mul(const Matrix& other) const {
  if (cols_ != other.rows_) throw error("matrix: mul dimension mismatch");
  Matrix out(field_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t k = 0; k < cols_; ++k) {
      std::uint64_t x = at(i, k);
      if (!x) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        std::uint64_t y = other.at(k, j);
        if (y) out.at(i, j) = field_.add(out.at(i, j), field_.mul(x, y));
      }
    }
  return out;
}

Matrix Matrix::add(const Matrix& other) const {
  if (rows_ != other.rows_ || cols_ != other.cols_) throw error("matrix: add shape mismatch");
  Matrix out = *this;
  for (std::size_t i = 0; i < a_.size(); ++i) out.a_[i] = field_.add(out.a_[i], other.a_[i]);
  return out;
}

Matrix Matrix::scaled(std::uint64_t c) const {
  Matrix out = *this;
  for (auto& x : out.a_) x = field_.mul(x, c % field_.p);
  return out;
}

Matrix Matrix::transpose() const {
  Matrix out(field_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out.at(c, r) = at(r, c);
  return out;
}

bool Matrix::is_zero() const {
  return std::all_of(a_.begin(), a_.end(), [](std::uint64_t x) { return x == 0; });
}

bool RrefAccumulator::insert(Vec row) {
  if (row.size() != width_) throw error("rref: row width mismatch");
  // eliminate against existing pivots
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint64_t c = row[pivots_[i]];
    if (!c) continue;
    const Vec& r = rows_[i];
    for (std::size_t j = 0; j < width_; ++j)
      if (r[j]) row[j] = field_.sub(row[j], field_.mul(c, r[j]));
  }
  std::size_t piv = width_;
  for (std::size_t j = 0; j < width_; ++j)
    if (row[j]) { piv = j; break; }
  if (piv == width_) return false;
  // normalize
  std::uint64_t inv = field_.inv(row[piv]);
  for (std::size_t j = piv; j < width_; ++j) row[j] = field_.mul(row[j], inv);
  // back-eliminate the new pivot from existing rows
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint64_t c = rows_[i][piv];
    if (!c) continue;
    for (std::size_t j = piv; j < width_; ++j)
      rows_[i][j] = field_.sub(rows_[i][j], field_.mul(c, row[j]));
  }
  // keep rows sorted by pivot column
  std::size_t pos = 0;
  while (pos < pivots_.size() && pivots_[pos] < piv) ++pos;
  rows_.insert(rows_.begin() + pos, std::move(row));
  pivots_.insert(pivots_.begin() + pos, piv);
  return true;
}

Vec RrefAccumulator::reduce(const Vec& v) const {
  if (v.size() != width_) throw error("rref: reduce width mismatch");
  Vec row = v;
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    std::uint64_t c = row[pivots_[i]];
    if (!c) continue;
    const Vec& r = rows_[i];
    for (std::size_t j = 0; j < width_; ++j)
      if (r[j]) row[j] = field_.sub(row[j], field_.mul(c, r[j]));
  }
  return row;
}

bool RrefAccumulator::reduces_to_zero(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
}

Matrix RrefAccumulator::matrix() const {
  return Matrix::from_rows(field_, width_, rows_);
}

Matrix rref(const Matrix& m) {
  RrefAccumulator acc(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) acc.insert(m.row(r));
  return acc.matrix();
}

}  // namespace nilcert
