#include "nilcert/algebra.hpp"

#include <algorithm>
#include <map>

namespace nilcert {

Algebra::Algebra(FieldSpec f, std::size_t dim, std::vector<std::string> basis_names,
                 const std::vector<ProductTerm>& products)
    : field_(f), dim_(dim), names_(std::move(basis_names)), table_(dim * dim) {
  if (names_.empty()) {
    names_.reserve(dim);
    for (std::size_t i = 0; i < dim; ++i) names_.push_back("b" + std::to_string(i));
  }
  if (names_.size() != dim) throw error("algebra: basis_names size mismatch");
  std::map<std::array<std::uint32_t, 3>, std::uint64_t> merged;
  for (const ProductTerm& t : products) {
    if (t.i >= dim || t.j >= dim || t.k >= dim)
      throw error("algebra: product index out of range");
    std::uint64_t c = t.c % f.p;
    if (!c) continue;
    auto key = std::array<std::uint32_t, 3>{t.i, t.j, t.k};
    merged[key] = f.add(merged.count(key) ? merged[key] : 0, c);
  }
  for (const auto& [key, c] : merged)
    if (c) table_[key[0] * dim_ + key[1]].emplace_back(key[2], c);
}

std::vector<ProductTerm> Algebra::product_terms() const {
  std::vector<ProductTerm> out;
  for (std::uint32_t i = 0; i < dim_; ++i)
    for (std::uint32_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : term(i, j)) out.push_back({i, j, k, c});
  return out;
}

Vec Algebra::multiply(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw error("algebra: multiply dimension mismatch");
  Vec out(dim_, 0);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (!y[j]) continue;
      std::uint64_t xy = field_.mul(x[i], y[j]);
      for (const auto& [k, c] : term(i, j)) out[k] = field_.add(out[k], field_.mul(xy, c));
    }
  }
  return out;
}

Matrix Algebra::left_mul_matrix(const Vec& x) const {
  if (x.size() != dim_) throw error("algebra: left_mul dimension mismatch");
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : term(i, j))
        m.at(k, j) = field_.add(m.at(k, j), field_.mul(x[i], c));
  }
  return m;
}

Matrix Algebra::right_mul_matrix(const Vec& x) const {
  if (x.size() != dim_) throw error("algebra: right_mul dimension mismatch");
  Matrix m(field_, dim_, dim_);
  for (std::size_t i = 0; i < dim_; ++i) {
    if (!x[i]) continue;
    for (std::size_t j = 0; j < dim_; ++j)
      for (const auto& [k, c] : term(j, i))
        m.at(k, j) = field_.add(m.at(k, j), field_.mul(x[i], c));
  }
  return m;
}

Vec Algebra::basis_element(std::size_t i) const {
  Vec v(dim_, 0);
  v[i] = 1 % field_.p;
  return v;
}

std::vector<std::array<std::size_t, 3>> Algebra::associativity_violations(std::size_t limit) const {
  std::vector<std::array<std::size_t, 3>> out;
  for (std::size_t i = 0; i < dim_ && out.size() < limit; ++i) {
    Vec ei = basis_element(i);
    for (std::size_t j = 0; j < dim_ && out.size() < limit; ++j) {
      Vec eij = multiply(ei, basis_element(j));
      for (std::size_t k = 0; k < dim_ && out.size() < limit; ++k) {
        Vec lhs = multiply(eij, basis_element(k));
        Vec rhs = multiply(ei, multiply(basis_element(j), basis_element(k)));
        if (lhs != rhs) out.push_back({i, j, k});
      }
    }
  }
  return out;
}

Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& v) {
  if (u.ambient() != a.dim() || v.ambient() != a.dim())
    throw error("algebra: subspace_product ambient mismatch");
  RrefAccumulator acc(a.field(), a.dim());
  for (std::size_t i = 0; i < u.dim() && !acc.saturated(); ++i) {
    Matrix lm = a.left_mul_matrix(u.basis_vector(i));
    for (std::size_t j = 0; j < v.dim() && !acc.saturated(); ++j)
      acc.insert(lm.apply(v.basis_vector(j)));
  }
  return Subspace::from_accumulator(acc);
}

std::optional<std::size_t> nilpotency_index(const Algebra& a, const Subspace& s) {
  if (!s.contains(subspace_product(a, s, s)))
    throw error("algebra: nilpotency_index requires a multiplicatively closed subspace");
  Subspace power = s;
  std::size_t d = 1;
  while (!power.is_zero()) {
    Subspace next = subspace_product(a, power, s);
    if (next == power) return std::nullopt;
    power = std::move(next);
    ++d;
  }
  return d;
}

IdealHandle ideal_closure(const Algebra& a, const Subspace& s) {
  Subspace full = Subspace::full(a.field(), a.dim());
  Subspace x = s;
  for (;;) {
    Subspace grown = sum(sum(x, subspace_product(a, full, x)), subspace_product(a, x, full));
    if (grown == x) break;
    x = std::move(grown);
  }
  return IdealHandle{std::move(x), true, true};
}

QuotientAlgebra quotient_algebra(const Algebra& a, const IdealHandle& k) {
  if (!k.two_sided()) throw error("algebra: quotient requires a two-sided ideal");
  Subspace full = Subspace::full(a.field(), a.dim());
  QuotientData qd = quotient_data(full, k.carrier);
  std::size_t q = qd.codim;
  FieldSpec f = a.field();

  // projection: express x = sum t_i comp_i (mod K) by eliminating against
  // [K basis; complement] and reading off the complement coefficients.
  RrefAccumulator acc(f, a.dim() + q);
  for (std::size_t i = 0; i < k.carrier.dim(); ++i) {
    Vec row = k.carrier.basis_vector(i);
    row.resize(a.dim() + q, 0);
    acc.insert(std::move(row));
  }
  for (std::size_t i = 0; i < q; ++i) {
    Vec row = qd.complement[i];
    row.resize(a.dim() + q, 0);
    row[a.dim() + i] = 1 % f.p;
    acc.insert(std::move(row));
  }
  auto project = [&](const Vec& x) {
    Vec ext = x;
    ext.resize(a.dim() + q, 0);
    Vec r = acc.reduce(ext);
    // remainder lives entirely in the tag columns: -(coefficients)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (r[j]) throw error("algebra: projection failed (basis does not span)");
    Vec out(q);
    for (std::size_t i = 0; i < q; ++i) out[i] = f.neg(r[a.dim() + i]);
    return out;
  };

  Matrix proj(f, q, a.dim());
  for (std::size_t j = 0; j < a.dim(); ++j) {
    Vec pj = project(a.basis_element(j));
    for (std::size_t i = 0; i < q; ++i) proj.at(i, j) = pj[i];
  }

  std::vector<ProductTerm> terms;
  for (std::uint32_t i = 0; i < q; ++i)
    for (std::uint32_t j = 0; j < q; ++j) {
      Vec prod = project(a.multiply(qd.complement[i], qd.complement[j]));
      for (std::uint32_t kk = 0; kk < q; ++kk)
        if (prod[kk]) terms.push_back({i, j, kk, prod[kk]});
    }
  std::vector<std::string> names;
  names.reserve(q);
  for (std::size_t i = 0; i < q; ++i) names.push_back("q" + std::to_string(i));
  return QuotientAlgebra{Algebra(f, q, std::move(names), terms), std::move(proj), qd.complement};
}

Algebra unital_extension(const Algebra& a) {
  std::size_t n = a.dim();
  std::vector<ProductTerm> terms = a.product_terms();
  std::uint32_t one = static_cast<std::uint32_t>(n);
  std::uint64_t unit = 1 % a.field().p;
  terms.push_back({one, one, one, unit});
  for (std::uint32_t i = 0; i < n; ++i) {
    terms.push_back({one, i, i, unit});
    terms.push_back({i, one, i, unit});
  }
  std::vector<std::string> names = a.basis_names();
  names.push_back("one");
  return Algebra(a.field(), n + 1, std::move(names), terms);
}

Vec SubalgebraPresentation::embed(const Vec& local) const {
  if (local.size() != carrier.dim()) throw error("subalgebra: embed dimension mismatch");
  FieldSpec f = carrier.field();
  Vec out(carrier.ambient(), 0);
  for (std::size_t i = 0; i < local.size(); ++i) {
    if (!local[i]) continue;
    Vec b = carrier.basis_vector(i);
    for (std::size_t j = 0; j < out.size(); ++j)
      if (b[j]) out[j] = f.add(out[j], f.mul(local[i], b[j]));
  }
  return out;
}

Vec SubalgebraPresentation::restrict(const Vec& ambient) const {
  return carrier.coordinates(ambient);
}

SubalgebraPresentation subalgebra_presentation(const Algebra& a, const Subspace& s) {
  if (!s.contains(subspace_product(a, s, s)))
    throw error("algebra: subalgebra_presentation requires a multiplicatively closed subspace");
  std::size_t n = s.dim();
  std::vector<ProductTerm> terms;
  for (std::uint32_t i = 0; i < n; ++i)
    for (std::uint32_t j = 0; j < n; ++j) {
      Vec prod = a.multiply(s.basis_vector(i), s.basis_vector(j));
      Vec coords = s.coordinates(prod);
      for (std::uint32_t k = 0; k < n; ++k)
        if (coords[k]) terms.push_back({i, j, k, coords[k]});
    }
  std::vector<std::string> names;
  names.reserve(n);
  for (std::size_t i = 0; i < n; ++i) names.push_back("s" + std::to_string(i));
  return SubalgebraPresentation{Algebra(a.field(), n, std::move(names), terms), s};
}

}  // namespace nilcert
