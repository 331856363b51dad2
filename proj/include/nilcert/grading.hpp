#ifndef NILCERT_GRADING_HPP
#define NILCERT_GRADING_HPP

#include <cstdint>
#include <vector>

#include "nilcert/algebra.hpp"
#include "nilcert/group.hpp"

namespace nilcert {

/// G-grading: one subspace per group element, jointly a direct sum of the
/// algebra, with A_g A_h inside A_{gh}.
struct Grading {
  FiniteGroup group;
  std::vector<Subspace> components;  // indexed by group element

  const Subspace& component(std::uint32_t g) const { return components[g]; }
  const Subspace& identity_component() const { return components[group.identity()]; }
};

/// Representation of G by algebra automorphisms, one invertible matrix per
/// group element (column convention).
struct GroupAction {
  FiniteGroup group;
  std::vector<Matrix> rho;  // indexed by group element

  const Matrix& matrix(std::uint32_t g) const { return rho[g]; }
};

/// Direct-sum and multiplicativity checks, with per-component dimensions.
ValidationReport validate_grading(const Algebra& a, const Grading& g);

/// Homomorphism, invertibility and automorphism checks on basis pairs.
ValidationReport validate_action(const Algebra& a, const GroupAction& act);

/// Intersection of the fixed spaces of all generators; asserted
/// multiplicatively closed.
Subspace fixed_subalgebra(const Algebra& a, const GroupAction& act);

/// (1/|G|) sum of the translates; requires char(F) not dividing |G|.
Vec average(const Algebra& a, const GroupAction& act, const Vec& x);

/// Eigenspace grading of a prime-order cyclic action: component k is
/// ker(rho(g) - omega^k id) for the least non-identity generator g, indexed
/// by g^k. Requires omega of exact multiplicative order |G|.
Grading eigen_grading(const Algebra& a, const GroupAction& act, std::uint64_t omega);

struct GradedBoundReport {
  std::size_t n = 0, d = 0;
  std::size_t index = 0;          // directly computed nilpotency index of A
  bool algebra_nilpotent = false;
  std::uint64_t bound = 0;        // n*d
  bool within_bound = false;
};

/// Direct check of the graded Bergman-Isaacs bound: A_e nilpotent of index
/// d forces A nilpotent of index at most n*d. Throws if A_e is not
/// nilpotent.
GradedBoundReport graded_nilpotency_bound_check(const Algebra& a, const Grading& g);

/// Theorem-2 style hypotheses: nilpotent ideal I_e of the identity
/// component, with its computed index d and codimension m.
struct GradedHypotheses {
  Grading grading;
  IdealHandle ideal;   // I_e, closed as an ideal of A_e
  std::size_t d = 0;   // nilpotency index of I_e
  std::size_t m = 0;   // dim A_e - dim I_e
};

/// Validates the grading and the ideal conditions; throws on violation.
GradedHypotheses make_graded_hypotheses(const Algebra& a, Grading grading, const Subspace& i_e);

}  // namespace nilcert

#endif
