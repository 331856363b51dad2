#ifndef NILCERT_PIPELINES_HPP
#define NILCERT_PIPELINES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "nilcert/tower.hpp"

namespace nilcert {

/// Outcome of a theorem-2 run: the constructed ideal, its verified
/// numbers, and every check with a witness.
struct ConstructionReport {
  BoundSet bounds;
  IdealHandle ideal;
  bool nilpotent = false;
  std::size_t achieved_index = 0;
  std::size_t achieved_codim = 0;
  std::vector<CheckResult> checks;
  std::vector<TowerLevelSummary> tower_summary;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct Theorem2Options {
  TowerOptions tower;
  std::size_t property_samples = 200;
  std::uint64_t sample_seed = 1;
};

/// Builds the centralizer tower, forms the ideal generated by the top
/// components and I_e, and verifies every stated property of it.
ConstructionReport theorem2_construct(const Algebra& a, const GradedHypotheses& hyp,
                                      const Theorem2Options& opt = {});

/// Hypotheses of the fixed-point theorem: a nilpotent ideal I of A^G of
/// index d and codimension m, with char(F) not dividing |G|.
struct InvariantHypotheses {
  GroupAction action;
  IdealHandle ideal;  // ideal of the fixed-point subalgebra
  Subspace fixed;     // A^G
  std::size_t d = 0;
  std::size_t m = 0;
};

InvariantHypotheses make_invariant_hypotheses(const Algebra& a, GroupAction action,
                                              const Subspace& ideal);

/// G-invariant nilpotent two-sided ideal of A containing I, built by
/// closing the span of all G-translates of I. `bound_group_order` selects
/// the subgroup whose Bergman-Isaacs bound h^d is reported against the
/// directly computed index.
struct LiftReport {
  IdealHandle ideal;
  bool nilpotent = false;
  std::size_t index = 0;
  std::size_t translate_index = 0;  // nilpotency index of the translate-sum ideal
  std::uint64_t h = 0;
  std::uint64_t h_bound = 0;  // h^translate_index, saturating
  std::vector<CheckResult> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

LiftReport invariant_ideal_lift(const Algebra& a, const GroupAction& action, const Subspace& ideal,
                                std::size_t bound_group_order);

struct Theorem1Stage {
  std::string kind;  // "prime-base", "trivial-base", "invariant-lift"
  std::size_t group_order = 0;
  std::uint64_t stage_bound = 0;   // nQ for base stages, direct index for lifts
  std::size_t achieved_index = 0;
  std::string detail;
};

struct Theorem1Report {
  IdealHandle ideal;
  bool nilpotent = false;
  std::size_t achieved_index = 0;
  std::size_t achieved_codim = 0;
  std::uint64_t composed_bound = 0;  // product of the lift indices and the final base bound
  std::vector<Theorem1Stage> stages;
  std::vector<CheckResult> checks;
  std::size_t base_stage_count() const {
    std::size_t c = 0;
    for (const auto& s : stages)
      if (s.kind == "prime-base" || s.kind == "trivial-base") ++c;
    return c;
  }
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

/// Induction over the prime series: eigenspace grading plus theorem 2 at
/// prime order, otherwise fixed points of the penultimate subgroup,
/// invariant lift, quotient, and recursion.
Theorem1Report theorem1_construct(const Algebra& a, const InvariantHypotheses& hyp,
                                  const PrimeSeries& series, const Theorem2Options& opt = {});

struct BergmanReport {
  std::size_t n = 0, d = 0;
  std::uint64_t h = 0, bound = 0;
  bool algebra_nilpotent = false;
  std::size_t index = 0;
  bool within_bound = false;
};

/// Direct empirical check of the Bergman-Isaacs bound h^d against the
/// computed nilpotency index of A. Throws when A^G is not nilpotent or the
/// characteristic divides |G|.
BergmanReport bergman_isaacs_check(const Algebra& a, const GroupAction& action);

}  // namespace nilcert

#endif
