// Acceptance suite: every criterion runs end to end on generated corpora
// and prints one PASS/FAIL line. Exit status is nonzero when any fails.

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include "nilcert/factory.hpp"
#include "nilcert/pipelines.hpp"
#include "nilcert/rng.hpp"

using namespace nilcert;

namespace {

struct Outcome {
  bool pass = true;
  std::size_t count = 0;
  std::string detail;

  void fail(const std::string& why) {
    if (pass) detail = why;
    pass = false;
  }
};

QuiverSpec random_quiver(SplitMix64& rng, std::size_t group_order, std::size_t max_vertices,
                         std::size_t max_arrows, std::size_t min_trunc, std::size_t max_trunc,
                         bool idempotents) {
  QuiverSpec q;
  q.vertices = 1 + rng.below(max_vertices);
  std::size_t arrows = 1 + rng.below(max_arrows);
  for (std::size_t a = 0; a < arrows; ++a)
    q.arrows.push_back(QuiverArrow{static_cast<std::uint32_t>(rng.below(q.vertices)),
                                   static_cast<std::uint32_t>(rng.below(q.vertices)),
                                   static_cast<std::uint32_t>(rng.below(group_order))});
  q.truncation = min_trunc + (max_trunc > min_trunc ? rng.below(max_trunc - min_trunc + 1) : 0);
  q.include_vertex_idempotents = idempotents;
  return q;
}

InstanceData sized_path_instance(std::uint64_t seed, const FiniteGroup& grp, std::size_t max_dim,
                                 std::size_t max_vertices, std::size_t max_arrows,
                                 std::size_t min_trunc, std::size_t max_trunc, bool idempotents,
                                 IdealChoice ideal) {
  SplitMix64 rng(seed);
  FieldSpec f = default_field_for(grp);
  QuiverSpec q = random_quiver(rng, grp.order(), max_vertices, max_arrows, min_trunc, max_trunc,
                               idempotents);
  for (;;) {
    PathAlgebra pa = build_path_algebra(q, grp, f);
    if (pa.algebra.dim() <= max_dim && pa.algebra.dim() >= 1) break;
    if (q.truncation > min_trunc)
      --q.truncation;
    else if (!q.arrows.empty())
      q.arrows.pop_back();
    else
      break;
  }
  return gen_path_instance(q, grp, f, ideal);
}

// ---------------------------------------------------------------------------
// 1. graded Bergman-Isaacs bound: index(A) <= n * index(A_e)

Outcome criterion1() {
  Outcome out;
  std::size_t orders[] = {2, 3, 6};
  for (std::size_t n : orders) {
    FiniteGroup grp = FiniteGroup::cyclic(n);
    for (std::uint64_t seed = 0; seed < 70; ++seed) {
      InstanceData data = sized_path_instance(seed * 31 + n, grp, 60, 4, 6, 2, 4,
                                              /*idempotents=*/false, IdealChoice::zero);
      GradedBoundReport rep = graded_nilpotency_bound_check(data.algebra, data.grading());
      ++out.count;
      if (!rep.within_bound)
        out.fail("seed " + std::to_string(seed) + " n " + std::to_string(n) + ": index " +
                 std::to_string(rep.index) + " > " + std::to_string(rep.bound));
    }
  }
  if (out.count < 200) out.fail("corpus too small");
  return out;
}

// ---------------------------------------------------------------------------
// shared theorem-2 corpus: n = 2, d <= 2, dim <= 40, with m = 0 and
// I_e = 0 degenerate families included

std::vector<InstanceData> theorem2_corpus() {
  std::vector<InstanceData> corpus;
  FiniteGroup c2 = FiniteGroup::cyclic(2);
  for (std::uint64_t seed = 0; seed < 40; ++seed)  // generic: idempotents, L = 2
    corpus.push_back(sized_path_instance(1000 + seed, c2, 40, 4, 8, 2, 2, true,
                                         IdealChoice::suggested));
  for (std::uint64_t seed = 0; seed < 35; ++seed)  // I_e = 0 family, cuts the tower
    corpus.push_back(sized_path_instance(2000 + seed, c2, 40, 3, 8, 2, 3, true,
                                         IdealChoice::zero));
  for (std::uint64_t seed = 0; seed < 30; ++seed)  // m = 0 family
    corpus.push_back(sized_path_instance(3000 + seed, c2, 40, 4, 8, 2, 2, false,
                                         IdealChoice::suggested));
  return corpus;
}

Outcome criterion2() {
  Outcome out;
  for (const InstanceData& data : theorem2_corpus()) {
    GradedHypotheses hyp =
        make_graded_hypotheses(data.algebra, data.grading(), data.ideal_subspace());
    if (hyp.d > 2) continue;  // family construction keeps d <= 2; guard anyway
    ConstructionReport rep = theorem2_construct(data.algebra, hyp);
    ++out.count;
    if (rep.bounds.Q != (rep.bounds.U + hyp.d + 1) * (rep.bounds.S - 1) + 1)
      out.fail("Q formula mismatch");
    if (!rep.all_pass()) {
      std::string first;
      for (const auto& c : rep.checks)
        if (!c.pass) { first = c.name; break; }
      out.fail("instance " + std::to_string(out.count) + " failed " + first);
    }
  }
  if (out.count < 100) out.fail("corpus too small");
  return out;
}

// ---------------------------------------------------------------------------
// 3. span-linearization oracle: literal tuple enumeration equals the DP

Outcome criterion3() {
  Outcome out;
  std::size_t orders[] = {2, 3};
  for (std::size_t n : orders) {
    FiniteGroup grp = FiniteGroup::cyclic(n);
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
      IdealChoice ideal = seed % 3 == 0 ? IdealChoice::suggested : IdealChoice::zero;
      InstanceData data = sized_path_instance(4000 + seed * 7 + n, grp, 12, 2, 3, 2, 3,
                                              seed % 2 == 0, ideal);
      GradedHypotheses hyp =
          make_graded_hypotheses(data.algebra, data.grading(), data.ideal_subspace());
      std::size_t w = 1 + seed % 3;
      TowerOptions opt;
      opt.w_override = w;
      CentralizerTower tower = build_tower(data.algebra, hyp, opt);
      ++out.count;
      for (std::size_t s = 1; s <= tower.built; ++s) {
        std::vector<Subspace> brute = brute_force_level(data.algebra, tower, s, w);
        for (std::uint32_t g = 0; g < grp.order(); ++g) {
          if (g == grp.identity()) continue;
          if (!(brute[g] == tower.component(g, s)))
            out.fail("seed " + std::to_string(seed) + " level " + std::to_string(s) +
                     " grade " + std::to_string(g));
        }
      }
    }
  }
  if (out.count < 50) out.fail("corpus too small");
  return out;
}

// ---------------------------------------------------------------------------
// 4. tower structural invariants: chain, insertion property, shift and
// absorption containments

Outcome criterion4() {
  Outcome out;
  std::uint64_t sample_seed = 99;
  for (const InstanceData& data : theorem2_corpus()) {
    GradedHypotheses hyp =
        make_graded_hypotheses(data.algebra, data.grading(), data.ideal_subspace());
    CentralizerTower tower = build_tower(data.algebra, hyp);
    ++out.count;
    if (!check_tower_chain(tower).ok()) out.fail("chain violated");
    ValidationReport ins = check_insertion_property(data.algebra, tower, 1000, sample_seed++);
    if (!ins.ok()) out.fail("insertion property: " + ins.first_failure());
    if (!check_centralizer_shift(data.algebra, tower).ok())
      out.fail("centralizer shift containment");
    if (!check_component_absorption(data.algebra, tower).ok())
      out.fail("component absorption containment");
    if (!check_representative_counts(tower).ok()) out.fail("representative count bound");
  }
  return out;
}

// ---------------------------------------------------------------------------
// 5. worked micro-instances as frozen regression vectors

Outcome criterion5() {
  Outcome out;
  FieldSpec f = make_field(5);

  {  // upper triangular 2x2, I_e = 0: Z = span{E12}, index 2
    InstanceData d = gen_triangular({.k = 2, .strict = false, .graded = true,
                                     .ideal = IdealChoice::zero}, f);
    GradedHypotheses hyp = make_graded_hypotheses(d.algebra, d.grading(), d.ideal_subspace());
    ConstructionReport rep = theorem2_construct(d.algebra, hyp);
    ++out.count;
    Subspace e12 = Subspace::span(f, 3, {d.algebra.basis_element(1)});
    if (!rep.all_pass() || !(rep.ideal.carrier == e12) || rep.achieved_index != 2 ||
        rep.achieved_codim != 2)
      out.fail("upper-triangular 2x2 regression");
  }
  {  // full 2x2, I_e = 0: Z = 0, codim 4
    std::vector<ProductTerm> terms;
    auto idx = [](std::size_t i, std::size_t j) { return static_cast<std::uint32_t>(2 * i + j); };
    for (std::size_t i = 0; i < 2; ++i)
      for (std::size_t j = 0; j < 2; ++j)
        for (std::size_t l = 0; l < 2; ++l)
          terms.push_back({idx(i, j), idx(j, l), idx(i, l), 1});
    Algebra m2(f, 4, {"E11", "E12", "E21", "E22"}, terms);
    FiniteGroup c2 = FiniteGroup::cyclic(2);
    std::vector<Subspace> comps{
        Subspace::span(f, 4, {m2.basis_element(0), m2.basis_element(3)}),
        Subspace::span(f, 4, {m2.basis_element(1), m2.basis_element(2)})};
    GradedHypotheses hyp =
        make_graded_hypotheses(m2, Grading{c2, comps}, Subspace::zero(f, 4));
    ConstructionReport rep = theorem2_construct(m2, hyp);
    ++out.count;
    if (!rep.all_pass() || !rep.ideal.carrier.is_zero() || rep.achieved_codim != 4 ||
        rep.achieved_index != 1)
      out.fail("full 2x2 regression");
  }
  {  // strict 4x4, m = 0: Z = A, index 4
    InstanceData d = gen_triangular({.k = 4, .strict = true, .graded = true,
                                     .ideal = IdealChoice::full_component}, f);
    GradedHypotheses hyp = make_graded_hypotheses(d.algebra, d.grading(), d.ideal_subspace());
    ConstructionReport rep = theorem2_construct(d.algebra, hyp);
    ++out.count;
    if (!rep.all_pass() || !(rep.ideal.carrier == Subspace::full(f, 6)) ||
        rep.achieved_index != 4 || rep.achieved_codim != 0)
      out.fail("strict 4x4 regression");
  }
  return out;
}

// ---------------------------------------------------------------------------
// shared action corpus across the named groups

std::vector<std::pair<std::string, InstanceData>> action_corpus(std::size_t per_group) {
  std::vector<std::pair<std::string, InstanceData>> corpus;
  const char* names[] = {"c2", "c3", "c4", "s3", "c6"};
  for (const char* name : names) {
    FiniteGroup grp = FiniteGroup::named(name);
    for (std::uint64_t seed = 0; seed < per_group; ++seed) {
      RandomParams params;
      params.max_dim = 40;
      corpus.emplace_back(name, gen_random_action(5000 + seed, grp, {}, params));
    }
  }
  return corpus;
}

// 6. invariant-ideal lift on >= 100 action instances

Outcome criterion6() {
  Outcome out;
  for (const auto& [name, data] : action_corpus(21)) {
    InvariantHypotheses hyp =
        make_invariant_hypotheses(data.algebra, data.action(), data.ideal_subspace());
    LiftReport rep = invariant_ideal_lift(data.algebra, hyp.action, hyp.ideal.carrier,
                                          hyp.action.group.order());
    ++out.count;
    if (!rep.all_pass()) out.fail(std::string(name) + ": " + [&] {
      for (const auto& c : rep.checks)
        if (!c.pass) return c.name;
      return std::string("?");
    }());
  }
  if (out.count < 100) out.fail("corpus too small");
  return out;
}

// ---------------------------------------------------------------------------
// 7. theorem 1 end to end over C2, C3, C4, S3, C6

Outcome criterion7() {
  Outcome out;
  for (const auto& [name, data] : action_corpus(5)) {
    InvariantHypotheses hyp =
        make_invariant_hypotheses(data.algebra, data.action(), data.ideal_subspace());
    auto series = find_prime_series(hyp.action.group);
    if (!series) {
      out.fail(std::string(name) + ": no prime series");
      continue;
    }
    Theorem1Report rep = theorem1_construct(data.algebra, hyp, *series);
    ++out.count;
    if (!rep.all_pass()) out.fail(std::string(name) + " checks failed");
    if (rep.base_stage_count() != series->chain.size() - 1)
      out.fail(std::string(name) + ": stage count " + std::to_string(rep.base_stage_count()) +
               " != series length " + std::to_string(series->chain.size() - 1));
    if (!rep.nilpotent || rep.achieved_index > rep.composed_bound)
      out.fail(std::string(name) + ": index exceeds the composed bound");
    if (rep.achieved_codim > data.algebra.dim()) out.fail("codimension out of range");
  }
  return out;
}

// ---------------------------------------------------------------------------
// 8. bound calculator regression

Outcome criterion8() {
  Outcome out;
  out.count = 2;
  BoundSet b1 = bounds_for(2, 1);
  if (!(b1.H == 2 && b1.T == 2 && b1.S == 2 && b1.U == 1 && b1.Q == 4 && b1.N == 4 &&
        b1.h == 13))
    out.fail("bounds_for(2,1)");
  BoundSet b2 = bounds_for(2, 2);
  if (!(b2.w(1) == 18 && b2.N == 7 && b2.T == 9 && b2.S == 9 && b2.U == 2 && b2.Q == 41))
    out.fail("bounds_for(2,2)");
  return out;
}

// ---------------------------------------------------------------------------
// 9. empirical Bergman-Isaacs on nilpotent-fixed-point instances

Outcome criterion9() {
  Outcome out;
  const char* names[] = {"c2", "c3", "c4", "c6", "s3"};
  for (const char* name : names) {
    FiniteGroup grp = FiniteGroup::named(name);
    bool cyclic = false;
    for (std::uint32_t g = 0; g < grp.order() && !cyclic; ++g)
      cyclic = grp.element_order(g) == grp.order();
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
      InstanceData data;
      if (cyclic) {
        SplitMix64 rng(7000 + seed);
        FieldSpec f = field_with_root_of_order(grp.order());
        QuiverSpec q = random_quiver(rng, grp.order(), 3, 4, 2, 4, /*idempotents=*/false);
        data = gen_scaling_instance(q, grp.order(), f, IdealChoice::suggested);
      } else {
        data = gen_cayley_instance(grp, 2 + seed % 2, default_field_for(grp),
                                   IdealChoice::suggested, 2, /*include_idempotents=*/false);
      }
      BergmanReport rep = bergman_isaacs_check(data.algebra, data.action());
      ++out.count;
      if (!rep.within_bound)
        out.fail(std::string(name) + " seed " + std::to_string(seed) + ": index " +
                 std::to_string(rep.index) + " > " + std::to_string(rep.bound));
    }
  }
  return out;
}

struct Criterion {
  int id;
  const char* name;
  Outcome (*run)();
};

const Criterion criteria[] = {
    {1, "graded Bergman-Isaacs bound nd over path-algebra corpus", criterion1},
    {2, "theorem 2 construction passes all checks with (Z_e)^Q = 0", criterion2},
    {3, "span-linearization DP equals literal tuple enumeration", criterion3},
    {4, "tower chain, insertion property and shift/absorption containments", criterion4},
    {5, "worked micro-instances reproduce exactly", criterion5},
    {6, "invariant-ideal lift: invariant, two-sided, nilpotent, within h^d", criterion6},
    {7, "theorem 1 end-to-end over C2, C3, C4, S3, C6", criterion7},
    {8, "bound calculator regression for (2,1) and (2,2)", criterion8},
    {9, "empirical Bergman-Isaacs h^d bound on action corpus", criterion9},
};

}  // namespace

int main(int argc, char** argv) {
  std::vector<int> selected;
  for (int i = 1; i < argc; ++i) selected.push_back(std::atoi(argv[i]));

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    if (!selected.empty() &&
        std::find(selected.begin(), selected.end(), c.id) == selected.end())
      continue;
    auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out.pass = false;
      out.detail = std::string("exception: ") + e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] criterion %d: %s (%zu cases, %.1fs)%s%s\n", out.pass ? "PASS" : "FAIL",
                c.id, c.name, out.count, secs, out.detail.empty() ? "" : " -- ",
                out.detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && out.pass;
  }
  return all_pass ? 0 : 1;
}
