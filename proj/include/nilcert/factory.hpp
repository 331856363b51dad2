#ifndef NILCERT_FACTORY_HPP
#define NILCERT_FACTORY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcert/io.hpp"

namespace nilcert {

struct QuiverArrow {
  std::uint32_t src = 0, dst = 0, grade = 0;
};

struct QuiverSpec {
  std::size_t vertices = 1;
  std::vector<QuiverArrow> arrows;  // grades are group element indices
  std::size_t truncation = 2;       // paths of length >= truncation vanish
  bool include_vertex_idempotents = true;
};

/// Truncated path algebra with its basis bookkeeping: vertex idempotents
/// (when included) followed by paths of length 1..L-1 in breadth-first,
/// lexicographic arrow order.
struct PathAlgebra {
  Algebra algebra;
  QuiverSpec quiver;
  std::vector<std::uint32_t> grades;                   // per basis element
  std::vector<std::size_t> length;                     // 0 for idempotents
  std::vector<std::vector<std::uint32_t>> arrow_seq;   // arrow indices per basis element
  std::vector<std::uint32_t> start_vertex;

  /// Grade-identity basis paths of positive length; always a nilpotent
  /// ideal of the identity component.
  Subspace suggested_identity_ideal(const FiniteGroup& grp) const;
};

PathAlgebra build_path_algebra(const QuiverSpec& q, const FiniteGroup& grp, FieldSpec f);

/// Diagonal automorphism scaling each path by the product of its arrow
/// characters. The acting group is cyclic of the lcm of the scalar orders.
GroupAction gen_action_from_scaling(const PathAlgebra& pa,
                                    const std::vector<std::uint64_t>& arrow_scalars);

/// Smallest prime p with p not dividing |G| and p = 1 mod q for every
/// prime q dividing |G|.
FieldSpec default_field_for(const FiniteGroup& grp);
/// Smallest prime p with an element of multiplicative order k (p = 1 mod k)
/// and p not dividing k.
FieldSpec field_with_root_of_order(std::size_t k);

/// A^G intersected with the span of positive-length paths: a nilpotent
/// ideal of the fixed-point subalgebra for any path-permuting or scaling
/// action.
Subspace suggested_invariant_ideal(const Algebra& a, const PathAlgebra& pa,
                                   const GroupAction& action);

enum class IdealChoice { zero, suggested, full_component };

struct TriangularOptions {
  std::size_t k = 3;
  bool strict = true;
  bool graded = false;  // adds the parity C2-grading
  IdealChoice ideal = IdealChoice::suggested;
};

/// Matrix-unit (strictly) upper-triangular algebra; optional C2-grading by
/// (j - i) mod 2 with the strictly-upper even part as the suggested ideal.
InstanceData gen_triangular(const TriangularOptions& opt, FieldSpec f);

/// Graded instance from an explicit quiver.
InstanceData gen_path_instance(const QuiverSpec& q, const FiniteGroup& grp, FieldSpec f,
                               IdealChoice ideal);

/// Cyclic scaling-action instance: arrows carry exponents for C_k; the
/// generator scales each arrow by omega^exponent.
InstanceData gen_scaling_instance(const QuiverSpec& q, std::size_t cyclic_order, FieldSpec f,
                                  IdealChoice ideal);

/// Left-translation action on the Cayley quiver of G (vertices = elements,
/// one arrow per generator); works for non-abelian groups.
InstanceData gen_cayley_instance(const FiniteGroup& grp, std::size_t truncation, FieldSpec f,
                                 IdealChoice ideal, std::size_t max_generators = 2,
                                 bool include_idempotents = true);

struct RandomParams {
  std::size_t max_vertices = 3;
  std::size_t max_arrows = 5;
  std::size_t max_truncation = 4;
  std::size_t max_dim = 40;
};

/// Seeded random graded instance over the given group; always valid by
/// construction, identical seeds give identical instances.
InstanceData gen_random_graded(std::uint64_t seed, const FiniteGroup& grp,
                               std::optional<FieldSpec> field = {}, RandomParams params = {});

/// Seeded random action instance: scaling for cyclic groups, Cayley
/// translation otherwise.
InstanceData gen_random_action(std::uint64_t seed, const FiniteGroup& grp,
                               std::optional<FieldSpec> field = {}, RandomParams params = {});

/// Options for the named generator families shared by the CLI and the
/// python bindings.
struct GenOptions {
  std::string group = "c2";
  std::uint64_t p = 0;  // 0 selects the default field for the family
  std::size_t k = 3;    // triangular size
  bool strict = true;
  bool graded = false;
  std::size_t vertices = 2;
  std::size_t arrows = 3;
  std::size_t truncation = 3;
  bool idempotents = true;
  std::string ideal = "suggested";  // zero | suggested | full
  bool with_series = false;
};

/// family: triangular | path | scaling | cayley.
InstanceData generate_named(const std::string& family, std::uint64_t seed, const GenOptions& opt);

}  // namespace nilcert

#endif
