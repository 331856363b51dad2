#ifndef NILCERT_MATRIX_HPP
#define NILCERT_MATRIX_HPP

#include <cstddef>
#include <vector>

#include "nilcert/field.hpp"

namespace nilcert {

/// Coordinate vector over F_p.
using Vec = std::vector<std::uint64_t>;

/// Dense matrix over a prime field, row-major. Matrices act on column
/// vectors: apply(v) computes M*v.
class Matrix {
 public:
  Matrix() = default;
  Matrix(FieldSpec f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(FieldSpec f, std::size_t n);
  static Matrix from_rows(FieldSpec f, std::size_t cols, const std::vector<Vec>& rows);

  FieldSpec field() const { return field_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint64_t& at(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }
  std::uint64_t at(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }

  Vec row(std::size_t r) const;
  void set_row(std::size_t r, const Vec& v);

  Vec apply(const Vec& v) const;        // M * v
  Matrix mul(const Matrix& other) const;  // M * other
  Matrix add(const Matrix& other) const;
  Matrix scaled(std::uint64_t c) const;
  Matrix transpose() const;

  bool is_zero() const;
  bool operator==(const Matrix&) const = default;

 private:
  FieldSpec field_{};
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<std::uint64_t> a_;
};

/// Unique reduced row-echelon form with zero rows removed.
Matrix rref(const Matrix& m);

/// Row-by-row RREF builder. Maintains the full reduced form after every
/// insert, so the row set is canonical at all times.
class RrefAccumulator {
 public:
  RrefAccumulator(FieldSpec f, std::size_t width) : field_(f), width_(width) {}

  /// Reduces the row against the current basis; keeps it if independent.
  /// Returns true when the rank grew.
  bool insert(Vec row);

  /// Remainder of v after eliminating all current pivots.
  Vec reduce(const Vec& v) const;
  bool reduces_to_zero(const Vec& v) const;

  std::size_t rank() const { return rows_.size(); }
  std::size_t width() const { return width_; }
  bool saturated() const { return rows_.size() == width_; }
  FieldSpec field() const { return field_; }

  /// Canonical basis matrix (rows sorted by pivot column).
  Matrix matrix() const;
  const std::vector<Vec>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

 private:
  FieldSpec field_;
  std::size_t width_;
  std::vector<Vec> rows_;            // kept reduced, sorted by pivot
  std::vector<std::size_t> pivots_;  // pivot column of each row
};

}  // namespace nilcert

#endif
