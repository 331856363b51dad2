#include "nilcert/subspace.hpp"

#include <algorithm>

namespace nilcert {

Subspace Subspace::zero(FieldSpec f, std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(f, 0, ambient);
  return s;
}

Subspace Subspace::full(FieldSpec f, std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(f, ambient);
  s.pivots_.resize(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
  return s;
}

Subspace Subspace::span(FieldSpec f, std::size_t ambient, const std::vector<Vec>& vectors) {
  RrefAccumulator acc(f, ambient);
  for (const Vec& v : vectors) {
    if (v.size() != ambient) throw error("subspace: vector length does not match ambient dimension");
    acc.insert(v);
  }
  return from_accumulator(acc);
}

Subspace Subspace::row_space(const Matrix& m) {
  RrefAccumulator acc(m.field(), m.cols());
  for (std::size_t r = 0; r < m.rows(); ++r) acc.insert(m.row(r));
  return from_accumulator(acc);
}

Subspace Subspace::from_accumulator(const RrefAccumulator& acc) {
  Subspace s;
  s.ambient_ = acc.width();
  s.basis_ = acc.matrix();
  s.pivots_ = acc.pivots();
  return s;
}

bool Subspace::member(const Vec& v) const {
  if (v.size() != ambient_) throw error("subspace: member length mismatch");
  FieldSpec f = field();
  Vec r = v;
  for (std::size_t i = 0; i < basis_.rows(); ++i) {
    std::uint64_t c = r[pivots_[i]];
    if (!c) continue;
    for (std::size_t j = 0; j < ambient_; ++j) {
      std::uint64_t b = basis_.at(i, j);
      if (b) r[j] = f.sub(r[j], f.mul(c, b));
    }
  }
  return std::all_of(r.begin(), r.end(), [](std::uint64_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  if (ambient_ != other.ambient_) throw error("subspace: ambient mismatch in contains");
  if (other.dim() > dim()) return false;
  for (std::size_t i = 0; i < other.dim(); ++i)
    if (!member(other.basis_.row(i))) return false;
  return true;
}

Vec Subspace::coordinates(const Vec& v) const {
  if (!member(v)) throw error("subspace: coordinates of a non-member");
  Vec c(dim());
  for (std::size_t i = 0; i < dim(); ++i) c[i] = v[pivots_[i]];
  return c;
}

Subspace Subspace::annihilator() const {
  if (dim() == 0) return full(field(), ambient_);
  return kernel(basis_);
}

std::strong_ordering Subspace::operator<=>(const Subspace& o) const {
  if (auto c = ambient_ <=> o.ambient_; c != 0) return c;
  if (auto c = dim() <=> o.dim(); c != 0) return c;
  for (std::size_t r = 0; r < dim(); ++r)
    for (std::size_t j = 0; j < ambient_; ++j)
      if (auto c = basis_.at(r, j) <=> o.basis_.at(r, j); c != 0) return c;
  return std::strong_ordering::equal;
}

Subspace sum(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw error("subspace: ambient mismatch in sum");
  RrefAccumulator acc(u.field(), u.ambient());
  for (std::size_t i = 0; i < u.dim(); ++i) acc.insert(u.basis_vector(i));
  for (std::size_t i = 0; i < v.dim(); ++i) acc.insert(v.basis_vector(i));
  return Subspace::from_accumulator(acc);
}

Subspace intersect(const Subspace& u, const Subspace& v) {
  if (u.ambient() != v.ambient()) throw error("subspace: ambient mismatch in intersect");
  // U cap V = kernel of the stacked annihilator constraints.
  Subspace au = u.annihilator();
  Subspace av = v.annihilator();
  Matrix stacked(u.field(), au.dim() + av.dim(), u.ambient());
  for (std::size_t i = 0; i < au.dim(); ++i) stacked.set_row(i, au.basis_vector(i));
  for (std::size_t i = 0; i < av.dim(); ++i) stacked.set_row(au.dim() + i, av.basis_vector(i));
  return kernel(stacked);
}

Subspace kernel(const Matrix& f) {
  Matrix r = rref(f);
  std::size_t n = f.cols();
  std::vector<std::size_t> pivot_of_col(n, static_cast<std::size_t>(-1));
  std::vector<std::size_t> pivcols;
  for (std::size_t i = 0; i < r.rows(); ++i) {
    std::size_t p = 0;
    while (p < n && r.at(i, p) == 0) ++p;
    pivot_of_col[p] = i;
    pivcols.push_back(p);
  }
  FieldSpec fl = f.field();
  std::vector<Vec> basis;
  for (std::size_t j = 0; j < n; ++j) {
    if (pivot_of_col[j] != static_cast<std::size_t>(-1)) continue;
    Vec v(n, 0);
    v[j] = 1 % fl.p;
    for (std::size_t c : pivcols) v[c] = fl.neg(r.at(pivot_of_col[c], j));
    basis.push_back(std::move(v));
  }
  return Subspace::span(fl, n, basis);
}

QuotientData quotient_data(const Subspace& v, const Subspace& u) {
  if (v.ambient() != u.ambient()) throw error("subspace: ambient mismatch in quotient_data");
  if (!v.contains(u)) throw error("subspace: quotient_data requires U contained in V");
  RrefAccumulator acc(v.field(), v.ambient());
  for (std::size_t i = 0; i < u.dim(); ++i) acc.insert(u.basis_vector(i));
  QuotientData out;
  for (std::size_t i = 0; i < v.dim(); ++i) {
    Vec row = v.basis_vector(i);
    if (acc.insert(row)) out.complement.push_back(v.basis_vector(i));
  }
  out.codim = out.complement.size();
  return out;
}

}  // namespace nilcert
