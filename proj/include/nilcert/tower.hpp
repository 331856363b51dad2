#ifndef NILCERT_TOWER_HPP
#define NILCERT_TOWER_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nilcert/grading.hpp"

namespace nilcert {

/// Saturation cap for derived bounds that can overflow (h^d and friends).
/// Achieved indices are tiny, so comparisons against a saturated bound are
/// still exact.
inline constexpr std::uint64_t bound_cap = 1ull << 62;
std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b);
std::uint64_t sat_pow(std::uint64_t a, std::uint64_t e);

/// All numeric constants of the construction for group order n and ideal
/// nilpotency index d.
struct BoundSet {
  std::size_t n = 0, d = 0;
  std::uint64_t nd = 0;         // graded Bergman-Isaacs bound
  std::uint64_t h = 0;          // 1 + prod_{i=0..n} (C(n,i)+1)
  std::uint64_t h_pow_d = 0;    // Bergman-Isaacs bound, saturating
  std::size_t N = 0;            // highest level, d^2+3
  std::vector<std::uint64_t> W;  // W[s-1] = W_s = 2d^3(n-1)+1+s, s = 1..N
  std::uint64_t H = 0, T = 0, S = 0, U = 0;
  std::uint64_t Q = 0;          // (U+d+1)(S-1)+1
  std::uint64_t nQ = 0;
  std::uint64_t w(std::size_t s) const { return W.at(s - 1); }
};

BoundSet bounds_for(std::size_t n, std::size_t d);

enum class RepKind : std::uint8_t {
  identity_lift,   // x_e(0): lifted basis of A_e/I_e
  pattern_pair,    // x_g(s): factor of a selected pattern-pair product
  quotient_basis,  // b_g(s): lifted basis of A_g/A_g(s)
};

const char* rep_kind_name(RepKind k);

struct Representative {
  Vec element;
  std::uint32_t grade = 0;
  std::uint32_t level = 0;
  RepKind kind = RepKind::identity_lift;
};

/// Per-grade spans of products of exactly t pool elements, t = 1..W. The
/// t = 0 row is the formal unit marker at the identity grade (an empty
/// factor, not a subspace of A).
class ProductSpanTable {
 public:
  ProductSpanTable(FieldSpec f, std::size_t ambient, std::size_t group_order, std::size_t w);

  std::size_t max_length() const { return w_; }
  /// Span of products of exactly t reps with grade product h (t >= 1).
  const Subspace& exact(std::uint32_t h, std::size_t t) const;
  /// Span of products of every length 1..t with grade product h.
  const Subspace& cumulative(std::uint32_t h, std::size_t t) const;

  friend ProductSpanTable product_span_table(const Algebra&, const Grading&,
                                             const std::vector<Representative>&, std::size_t);

 private:
  std::size_t w_;
  std::vector<std::vector<Subspace>> exact_;       // [h][t], t = 0 unused
  std::vector<std::vector<Subspace>> cumulative_;  // [h][t]
};

ProductSpanTable product_span_table(const Algebra& a, const Grading& grading,
                                    const std::vector<Representative>& pool, std::size_t w);

/// Kernel of the theta constraints: elements y of A_g with L y R inside
/// I_e for every L in `left` and R in `right`; a disengaged optional is
/// the formal unit (the factor is skipped). Grades must satisfy
/// h1 * g * h2 = e.
Subspace theta_kernel(const Algebra& a, const Grading& grading, const Subspace& i_e,
                      std::uint32_t g, std::uint32_t h1, const std::optional<Subspace>& left,
                      std::uint32_t h2, const std::optional<Subspace>& right);

struct TowerOptions {
  std::optional<std::size_t> n_levels;       // override for N
  std::optional<std::size_t> w_override;     // constant W for every level
};

struct TowerLevelSummary {
  std::size_t level = 0;
  std::vector<std::size_t> dims;  // per group element; identity slot = dim A_e
  std::size_t reps_added = 0;
};

/// The descending chains A_g = A_g(0) >= ... >= A_g(N) per non-identity
/// grade, plus every representative fixed along the way.
struct CentralizerTower {
  GradedHypotheses hypotheses;
  BoundSet bounds;
  std::size_t built = 0;                     // levels 0..built are present
  std::vector<std::vector<Subspace>> levels;  // levels[s][g]; identity slot holds A_e
  std::vector<Representative> reps;

  const Subspace& component(std::uint32_t g, std::size_t s) const { return levels.at(s).at(g); }
  std::vector<Representative> reps_below(std::size_t s) const;
  std::vector<TowerLevelSummary> summary() const;
};

/// Incremental construction with memoized kernel blocks. Levels are built
/// in order; the span tables and theta kernels are cached across levels.
class TowerBuilder {
 public:
  TowerBuilder(const Algebra& a, GradedHypotheses hyp, TowerOptions opt = {});

  void build_level_zero();
  /// Builds level built+1; requires level 0 present.
  void build_next_level();
  void build_all();

  std::size_t target_levels() const { return n_levels_; }
  const CentralizerTower& tower() const { return tower_; }
  CentralizerTower take() { return std::move(tower_); }

 private:
  Subspace kernel_stage(std::uint32_t g, const ProductSpanTable& table, std::size_t w);
  void select_representatives(std::size_t level);
  std::size_t pattern_pairs(std::uint32_t g, const Subspace& left_space,
                            const Subspace& right_space, std::uint32_t level);
  const Subspace& transporter(const Subspace& right);
  Subspace theta_block(std::uint32_t g, const std::optional<Subspace>& left,
                       const std::optional<Subspace>& right);

  const Algebra& a_;
  std::size_t n_levels_;
  TowerOptions opt_;
  CentralizerTower tower_;
  Subspace ie_ann_;  // annihilator of I_e
  std::map<Subspace, Subspace> transporter_cache_;
  std::map<std::tuple<std::uint32_t, int, Subspace, int, Subspace>, Subspace> theta_cache_;
};

std::vector<Representative> level_zero(const Algebra& a, const GradedHypotheses& hyp);

CentralizerTower build_tower(const Algebra& a, const GradedHypotheses& hyp, TowerOptions opt = {});

/// Literal tuple-enumeration semantics of level s, as an oracle for the
/// span linearization. Enumerates every ordered tuple of representatives
/// of levels < s with length <= w_override and every valid insertion
/// position. Throws when the combinatorial budget is exceeded.
std::vector<Subspace> brute_force_level(const Algebra& a, const CentralizerTower& tower,
                                        std::size_t s, std::size_t w_override);

/// Structural invariant checks used by reports and the acceptance suite.
ValidationReport check_tower_chain(const CentralizerTower& tower);
ValidationReport check_representative_counts(const CentralizerTower& tower);
/// Lemma: products of a level-(l+1) centralizer with a level-l
/// b-representative land in the level-l centralizer of the product grade.
ValidationReport check_centralizer_shift(const Algebra& a, const CentralizerTower& tower);
/// Lemma: A_{g^-1} * A_g(k+1) sits inside A_{g^-1}(k) * A_g(k) + I_e, and
/// symmetrically.
ValidationReport check_component_absorption(const Algebra& a, const CentralizerTower& tower);
/// Randomized spot check of the defining property: representative tuples
/// of lower levels with a valid insertion multiply into I_e.
ValidationReport check_insertion_property(const Algebra& a, const CentralizerTower& tower,
                                          std::size_t samples, std::uint64_t seed);

}  // namespace nilcert

#endif
