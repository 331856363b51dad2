#include <doctest.h>

#include "nilcert/factory.hpp"
#include "nilcert/pipelines.hpp"
#include "test_util.hpp"

using namespace nilcert;
using namespace nilcert::testutil;

TEST_SUITE_BEGIN("pipelines");

namespace {

GroupAction conj_action(const Algebra& a, const std::vector<std::uint64_t>& diag) {
  FieldSpec f = a.field();
  Matrix g(f, a.dim(), a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) g.at(i, i) = diag[i];
  return GroupAction{FiniteGroup::cyclic(2), {Matrix::identity(f, a.dim()), std::move(g)}};
}

}  // namespace

TEST_CASE("theorem 2 on upper triangular 2x2") {
  FieldSpec f = make_field(5);
  Algebra ut = upper_triangular(f, 2);
  Grading g = parity_grading(ut, upper_cells(2));
  GradedHypotheses hyp = make_graded_hypotheses(ut, g, Subspace::zero(f, 3));
  CHECK(hyp.d == 1);
  CHECK(hyp.m == 2);

  ConstructionReport rep = theorem2_construct(ut, hyp);
  CHECK(rep.all_pass());
  CHECK(rep.ideal.carrier == Subspace::span(f, 3, {ut.basis_element(1)}));  // span{E12}
  CHECK(rep.nilpotent);
  CHECK(rep.achieved_index == 2);
  CHECK(rep.achieved_codim == 2);
  CHECK(rep.bounds.Q == 4);
  CHECK(rep.bounds.nQ == 8);
}

TEST_CASE("theorem 2 on full 2x2") {
  FieldSpec f = make_field(5);
  Algebra m2 = matrix_algebra(f, 2);
  Grading g = parity_grading(m2, full_cells(2));
  GradedHypotheses hyp = make_graded_hypotheses(m2, g, Subspace::zero(f, 4));

  ConstructionReport rep = theorem2_construct(m2, hyp);
  CHECK(rep.all_pass());
  CHECK(rep.ideal.carrier.is_zero());
  CHECK(rep.achieved_index == 1);
  CHECK(rep.achieved_codim == 4);
}

TEST_CASE("theorem 2 on strict 4x4 with m = 0") {
  FieldSpec f = make_field(5);
  Algebra t4 = strict_triangular(f, 4);
  Grading g = parity_grading(t4, strict_cells(4));
  GradedHypotheses hyp = make_graded_hypotheses(t4, g, g.identity_component());
  CHECK(hyp.d == 2);
  CHECK(hyp.m == 0);

  ConstructionReport rep = theorem2_construct(t4, hyp);
  CHECK(rep.all_pass());
  CHECK(rep.ideal.carrier == Subspace::full(f, t4.dim()));
  CHECK(rep.achieved_index == 4);
  CHECK(rep.achieved_codim == 0);
  CHECK(rep.bounds.nQ == 82);
}

TEST_CASE("invariant ideal lift") {
  FieldSpec f = make_field(5);

  // trivial action: the lift is the plain ideal closure
  Algebra ut = upper_triangular(f, 2);
  GroupAction trivial{FiniteGroup::cyclic(1), {Matrix::identity(f, 3)}};
  Subspace e12 = Subspace::span(f, 3, {ut.basis_element(1)});
  LiftReport lr = invariant_ideal_lift(ut, trivial, e12, 1);
  CHECK(lr.all_pass());
  CHECK(lr.ideal.carrier == ideal_closure(ut, e12).carrier);

  // swap action with the zero ideal
  Algebra sw(f, 2, {"u", "v"}, {{0, 0, 0, 1}, {1, 1, 1, 1}});
  Matrix swap(f, 2, 2);
  swap.at(0, 1) = 1;
  swap.at(1, 0) = 1;
  GroupAction swap_act{FiniteGroup::cyclic(2), {Matrix::identity(f, 2), std::move(swap)}};
  LiftReport lr0 = invariant_ideal_lift(sw, swap_act, Subspace::zero(f, 2), 2);
  CHECK(lr0.all_pass());
  CHECK(lr0.ideal.carrier.is_zero());
  CHECK(lr0.index == 1);

  // diag(-1,1,-1) conjugation pattern on strict upper 3x3: fixes E13 only
  Algebra t3 = strict_triangular(f, 3);
  GroupAction conj = conj_action(t3, {f.neg(1), 1, f.neg(1)});
  REQUIRE(validate_action(t3, conj).ok());
  Subspace fixed = fixed_subalgebra(t3, conj);
  REQUIRE(fixed == Subspace::span(f, 3, {t3.basis_element(1)}));  // span{E13}
  LiftReport lr2 = invariant_ideal_lift(t3, conj, fixed, 2);
  CHECK(lr2.all_pass());
  CHECK(lr2.ideal.carrier == fixed);
  CHECK(lr2.index == 2);
  CHECK(lr2.translate_index == 2);
  CHECK(lr2.h == 13);
  CHECK(lr2.h_bound == 169);
}

TEST_CASE("invariant ideal lift is the least invariant ideal") {
  // brute-force closure: alternate translate spans and one-sided products
  FieldSpec f = make_field(7);
  InstanceData data = gen_random_action(11, FiniteGroup::cyclic(3), f);
  const Algebra& a = data.algebra;
  GroupAction act = data.action();
  Subspace ideal = data.ideal_subspace();

  LiftReport lr = invariant_ideal_lift(a, act, ideal, 3);
  CHECK(lr.all_pass());

  Subspace brute = ideal;
  Subspace full = Subspace::full(f, a.dim());
  for (;;) {
    Subspace grown = brute;
    for (std::uint32_t g = 0; g < act.group.order(); ++g) {
      std::vector<Vec> imgs;
      for (std::size_t i = 0; i < brute.dim(); ++i)
        imgs.push_back(act.matrix(g).apply(brute.basis_vector(i)));
      grown = sum(grown, Subspace::span(f, a.dim(), imgs));
    }
    grown = sum(grown, subspace_product(a, full, grown));
    grown = sum(grown, subspace_product(a, grown, full));
    if (grown == brute) break;
    brute = std::move(grown);
  }
  CHECK(lr.ideal.carrier == brute);
}

TEST_CASE("theorem 1 base case: conjugation on full 2x2") {
  FieldSpec f = make_field(5);
  Algebra m2 = matrix_algebra(f, 2);
  GroupAction conj = conj_action(m2, {1, f.neg(1), f.neg(1), 1});
  InvariantHypotheses hyp = make_invariant_hypotheses(m2, conj, Subspace::zero(f, 4));
  CHECK(hyp.d == 1);
  CHECK(hyp.m == 2);

  PrimeSeries series{{{0}, {0, 1}}};
  Theorem1Report rep = theorem1_construct(m2, hyp, series);
  CHECK(rep.all_pass());
  CHECK(rep.ideal.carrier.is_zero());
  CHECK(rep.achieved_index == 1);
  CHECK(rep.achieved_codim == 4);
  CHECK(rep.base_stage_count() == 1);
  CHECK(rep.composed_bound == 8);  // nQ for n = 2, d = 1
}

TEST_CASE("theorem 1 degenerate: trivial C2 action") {
  FieldSpec f = make_field(5);
  Algebra t3 = strict_triangular(f, 3);
  GroupAction trivial{FiniteGroup::cyclic(2),
                      {Matrix::identity(f, 3), Matrix::identity(f, 3)}};
  Subspace whole = Subspace::full(f, 3);
  InvariantHypotheses hyp = make_invariant_hypotheses(t3, trivial, whole);
  CHECK(hyp.d == 3);
  CHECK(hyp.m == 0);

  PrimeSeries series{{{0}, {0, 1}}};
  Theorem1Report rep = theorem1_construct(t3, hyp, series);
  CHECK(rep.all_pass());
  CHECK(rep.ideal.carrier == whole);
  CHECK(rep.achieved_index == 3);
  CHECK(rep.achieved_codim == 0);
}

TEST_CASE("theorem 1 composite order: scaling actions") {
  for (std::size_t n : {4, 6}) {
    FiniteGroup grp = FiniteGroup::cyclic(n);
    InstanceData data = gen_random_action(5, grp);
    const Algebra& a = data.algebra;
    InvariantHypotheses hyp = make_invariant_hypotheses(a, data.action(), data.ideal_subspace());
    auto series = find_prime_series(grp);
    REQUIRE(series.has_value());
    Theorem1Report rep = theorem1_construct(a, hyp, *series);
    CHECK(rep.all_pass());
    CHECK(rep.base_stage_count() == series->chain.size() - 1);
    CHECK(rep.nilpotent);
    CHECK(rep.achieved_index <= rep.composed_bound);
  }
}

TEST_CASE("theorem 1 on a symmetric-group Cayley action") {
  FiniteGroup s3 = FiniteGroup::symmetric3();
  InstanceData data = gen_cayley_instance(s3, 2, make_field(7), IdealChoice::suggested);
  const Algebra& a = data.algebra;
  InvariantHypotheses hyp = make_invariant_hypotheses(a, data.action(), data.ideal_subspace());
  auto series = find_prime_series(s3);
  REQUIRE(series.has_value());
  Theorem1Report rep = theorem1_construct(a, hyp, *series);
  CHECK(rep.all_pass());
  CHECK(rep.base_stage_count() == 2);
  CHECK(rep.nilpotent);
  CHECK(rep.achieved_index <= rep.composed_bound);
  CHECK(rep.achieved_codim <= a.dim());
}

TEST_CASE("theorem 1 preconditions") {
  FieldSpec f = make_field(5);
  Algebra t3 = strict_triangular(f, 3);
  GroupAction trivial5{FiniteGroup::cyclic(5),
                       {Matrix::identity(f, 3), Matrix::identity(f, 3), Matrix::identity(f, 3),
                        Matrix::identity(f, 3), Matrix::identity(f, 3)}};
  // characteristic divides the group order
  CHECK_THROWS_AS(make_invariant_hypotheses(t3, trivial5, Subspace::zero(f, 3)), error);

  // missing root of unity: C3 over F_5 (3 does not divide 4)
  GroupAction trivial3{FiniteGroup::cyclic(3),
                       {Matrix::identity(f, 3), Matrix::identity(f, 3), Matrix::identity(f, 3)}};
  InvariantHypotheses hyp = make_invariant_hypotheses(t3, trivial3, Subspace::zero(f, 3));
  PrimeSeries series{{{0}, {0, 1, 2}}};
  CHECK_THROWS_AS(theorem1_construct(t3, hyp, series), error);
}

TEST_CASE("bergman-isaacs empirical check") {
  FieldSpec f = make_field(5);
  Algebra t3 = strict_triangular(f, 3);
  GroupAction conj = conj_action(t3, {f.neg(1), 1, f.neg(1)});
  BergmanReport rep = bergman_isaacs_check(t3, conj);
  CHECK(rep.d == 2);
  CHECK(rep.h == 13);
  CHECK(rep.bound == 169);
  CHECK(rep.index == 3);
  CHECK(rep.within_bound);

  // trivial group: h(1) = 5
  GroupAction none{FiniteGroup::cyclic(1), {Matrix::identity(f, 3)}};
  BergmanReport r1 = bergman_isaacs_check(t3, none);
  CHECK(r1.h == 5);
  CHECK(r1.within_bound);

  // zero algebra
  Algebra z(f, 1, {}, {});
  GroupAction zact{FiniteGroup::cyclic(1), {Matrix::identity(f, 1)}};
  BergmanReport rz = bergman_isaacs_check(z, zact);
  CHECK(rz.index == 2);
  CHECK(rz.within_bound);

  // A^G not nilpotent is rejected
  Algebra ut = upper_triangular(f, 2);
  GroupAction utid{FiniteGroup::cyclic(1), {Matrix::identity(f, 3)}};
  CHECK_THROWS_AS(bergman_isaacs_check(ut, utid), error);
}

TEST_SUITE_END();
