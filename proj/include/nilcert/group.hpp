#ifndef NILCERT_GROUP_HPP
#define NILCERT_GROUP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "nilcert/field.hpp"

namespace nilcert {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string witness;
};

struct ValidationReport {
  std::vector<CheckResult> checks;
  bool ok() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
  std::string first_failure() const {
    for (const auto& c : checks)
      if (!c.pass) return c.name + (c.witness.empty() ? "" : ": " + c.witness);
    return "";
  }
  void add(std::string name, bool pass, std::string witness = "") {
    checks.push_back({std::move(name), pass, std::move(witness)});
  }
};

/// Finite group given by a Cayley table over element indices 0..n-1.
class FiniteGroup {
 public:
  /// Checks all group axioms exhaustively; throws on violation.
  static FiniteGroup validated(std::vector<std::vector<std::uint32_t>> table,
                               std::vector<std::string> names = {});
  /// Axiom report without throwing.
  static ValidationReport axioms(const std::vector<std::vector<std::uint32_t>>& table);

  static FiniteGroup trivial();
  static FiniteGroup cyclic(std::size_t n);
  static FiniteGroup symmetric3();
  /// Lookup by name: "c1".."cN", "s3".
  static FiniteGroup named(const std::string& name);

  std::size_t order() const { return table_.size(); }
  std::uint32_t identity() const { return e_; }
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const { return table_[a][b]; }
  std::uint32_t inv(std::uint32_t a) const { return inv_[a]; }
  std::uint32_t element_order(std::uint32_t a) const;
  const std::vector<std::vector<std::uint32_t>>& table() const { return table_; }
  const std::vector<std::string>& names() const { return names_; }

  bool operator==(const FiniteGroup& o) const { return table_ == o.table_; }

  /// Default-constructs the trivial group.
  FiniteGroup() : table_{{0}}, names_{"e"}, e_(0), inv_{0} {}

 private:
  std::vector<std::vector<std::uint32_t>> table_;
  std::vector<std::string> names_;
  std::uint32_t e_ = 0;
  std::vector<std::uint32_t> inv_;
};

/// Subnormal chain {e} = G_0 < G_1 < ... < G_k = G with each G_i normal in
/// G_{i+1} and every quotient of prime order; certifies solubility.
struct PrimeSeries {
  std::vector<std::vector<std::uint32_t>> chain;  // sorted element subsets
};

bool is_subgroup(const FiniteGroup& g, const std::vector<std::uint32_t>& subset);
bool is_normal_in(const FiniteGroup& g, const std::vector<std::uint32_t>& ambient,
                  const std::vector<std::uint32_t>& subgroup);
/// Normality in the whole group.
bool is_normal(const FiniteGroup& g, const std::vector<std::uint32_t>& subgroup);

ValidationReport validate_series(const FiniteGroup& g, const PrimeSeries& s);

/// Deterministic search: peels off a lexicographically least prime-index
/// normal subgroup at each step. nullopt when the group is not soluble.
std::optional<PrimeSeries> find_prime_series(const FiniteGroup& g, std::size_t search_bound = 64);

struct QuotientGroup {
  FiniteGroup group;
  std::vector<std::uint32_t> coset_of;  // element index -> coset index
};

QuotientGroup quotient_group(const FiniteGroup& g, const std::vector<std::uint32_t>& normal_subgroup);

struct SubgroupPresentation {
  FiniteGroup group;
  std::vector<std::uint32_t> element_of;  // new index -> ambient index
  std::vector<std::uint32_t> index_of;    // ambient index -> new index (or npos32)
};

inline constexpr std::uint32_t npos32 = static_cast<std::uint32_t>(-1);

SubgroupPresentation subgroup_presentation(const FiniteGroup& g,
                                           const std::vector<std::uint32_t>& subgroup);

/// All subgroups, each as a sorted element list, ordered lexicographically.
std::vector<std::vector<std::uint32_t>> all_subgroups(const FiniteGroup& g);

/// Subgroup generated by a subset.
std::vector<std::uint32_t> generated_subgroup(const FiniteGroup& g,
                                              const std::vector<std::uint32_t>& gens);

std::vector<std::uint64_t> prime_factors(std::uint64_t n);

}  // namespace nilcert

#endif
