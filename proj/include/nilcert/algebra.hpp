#ifndef NILCERT_ALGEBRA_HPP
#define NILCERT_ALGEBRA_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "nilcert/subspace.hpp"

namespace nilcert {

/// Sparse structure-constant entry: e_i * e_j has coefficient c at e_k.
struct ProductTerm {
  std::uint32_t i, j, k;
  std::uint64_t c;
  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

/// Finite-dimensional associative algebra presented by structure constants
/// on a fixed basis. The product tables are stored sparsely; associativity
/// is checked by validate, not assumed by the constructor.
class Algebra {
 public:
  Algebra() : field_{2}, dim_(0) {}
  Algebra(FieldSpec f, std::size_t dim, std::vector<std::string> basis_names,
          const std::vector<ProductTerm>& products);

  FieldSpec field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& basis_names() const { return names_; }

  /// e_i * e_j as a sparse list of (k, coeff), sorted by k.
  const std::vector<std::pair<std::uint32_t, std::uint64_t>>& term(std::size_t i,
                                                                   std::size_t j) const {
    return table_[i * dim_ + j];
  }

  /// Sorted sparse quadruples (i, j, k, c); the canonical presentation.
  std::vector<ProductTerm> product_terms() const;

  Vec multiply(const Vec& x, const Vec& y) const;

  /// Matrix of y -> x*y (column convention).
  Matrix left_mul_matrix(const Vec& x) const;
  /// Matrix of y -> y*x.
  Matrix right_mul_matrix(const Vec& x) const;

  Vec zero_element() const { return Vec(dim_, 0); }
  Vec basis_element(std::size_t i) const;

  /// Exhaustive check of (e_i e_j) e_k = e_i (e_j e_k); returns violating
  /// triples (i, j, k), up to `limit` of them.
  std::vector<std::array<std::size_t, 3>> associativity_violations(
      std::size_t limit = static_cast<std::size_t>(-1)) const;

  bool operator==(const Algebra&) const = default;

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::vector<std::string> names_;
  std::vector<std::vector<std::pair<std::uint32_t, std::uint64_t>>> table_;
};

/// Span of all products u*v, u in U, v in V (basis pairs suffice by
/// bilinearity).
Subspace subspace_product(const Algebra& a, const Subspace& u, const Subspace& v);

/// Least d >= 1 with S^d = 0 for a multiplicatively closed S, using the
/// left-normed power chain; nullopt when the chain stabilizes at a nonzero
/// subspace. Throws if S*S is not contained in S.
std::optional<std::size_t> nilpotency_index(const Algebra& a, const Subspace& s);

struct IdealHandle {
  Subspace carrier;
  bool left_closed = false;
  bool right_closed = false;
  bool two_sided() const { return left_closed && right_closed; }
};

/// Least subspace containing S closed under multiplication by A on both
/// sides; equals the two-sided ideal generated by S.
IdealHandle ideal_closure(const Algebra& a, const Subspace& s);

struct QuotientAlgebra {
  Algebra algebra;            // structure constants on the lifted complement
  Matrix projection;          // q x dim: coordinates of x mod K
  std::vector<Vec> section;   // lifted basis, section[i] projects to e_i
};

/// A / K for a two-sided ideal K. projection(section(x)) = x.
QuotientAlgebra quotient_algebra(const Algebra& a, const IdealHandle& k);

/// A# : adjoin a two-sided identity as the last basis element; original
/// basis indices are preserved.
Algebra unital_extension(const Algebra& a);

struct SubalgebraPresentation {
  Algebra algebra;   // structure constants on the subspace basis
  Subspace carrier;  // in ambient coordinates
  Vec embed(const Vec& local) const;
  Vec restrict(const Vec& ambient) const;  // throws when not a member
};

/// Re-presents a multiplicatively closed subspace as a standalone algebra
/// on its canonical basis.
SubalgebraPresentation subalgebra_presentation(const Algebra& a, const Subspace& s);

}  // namespace nilcert

#endif
