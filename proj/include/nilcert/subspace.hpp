#ifndef NILCERT_SUBSPACE_HPP
#define NILCERT_SUBSPACE_HPP

#include <compare>
#include <cstddef>
#include <vector>

#include "nilcert/matrix.hpp"

namespace nilcert {

/// Linear subspace of F_p^n in canonical form: the basis matrix is the
/// unique RREF with zero rows removed, so two Subspace values are equal
/// iff they represent the same subspace.
class Subspace {
 public:
  Subspace() = default;

  static Subspace zero(FieldSpec f, std::size_t ambient);
  static Subspace full(FieldSpec f, std::size_t ambient);
  static Subspace span(FieldSpec f, std::size_t ambient, const std::vector<Vec>& vectors);
  static Subspace row_space(const Matrix& m);
  static Subspace from_accumulator(const RrefAccumulator& acc);

  FieldSpec field() const { return basis_.field(); }
  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  Vec basis_vector(std::size_t i) const { return basis_.row(i); }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool is_zero() const { return dim() == 0; }
  bool member(const Vec& v) const;
  bool contains(const Subspace& other) const;

  /// Coordinates of a member vector in the canonical basis (reads off the
  /// pivot columns). Throws if v is not a member.
  Vec coordinates(const Vec& v) const;

  /// {c : v . c = 0 for all v in the subspace}. Double annihilator gives
  /// back the subspace, so membership is "annihilator rows kill v".
  Subspace annihilator() const;

  bool operator==(const Subspace&) const = default;
  /// Lexicographic order for use as map key; not mathematically meaningful.
  std::strong_ordering operator<=>(const Subspace& o) const;

 private:
  std::size_t ambient_ = 0;
  Matrix basis_;                      // RREF, no zero rows
  std::vector<std::size_t> pivots_;  // pivot column per basis row
};

Subspace sum(const Subspace& u, const Subspace& v);
Subspace intersect(const Subspace& u, const Subspace& v);

/// Solution space {v : f v = 0} of a linear map given as a rows x cols
/// matrix acting on column vectors; result lives in F^cols.
Subspace kernel(const Matrix& f);

struct QuotientData {
  std::size_t codim = 0;
  std::vector<Vec> complement;  // vectors of V projecting to a basis of V/U
};

/// Deterministic complement selection: scans V's canonical basis in order
/// and keeps rows independent of U plus what was already kept.
QuotientData quotient_data(const Subspace& v, const Subspace& u);

}  // namespace nilcert

#endif
