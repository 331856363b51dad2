#include <doctest.h>

#include "nilcert/grading.hpp"
#include "test_util.hpp"

using namespace nilcert;
using namespace nilcert::testutil;

TEST_SUITE_BEGIN("gradings");

namespace {

/// u^2 = u, v^2 = v, uv = vu = 0 on F_5^2 with the swap action of C2.
struct SwapInstance {
  Algebra a;
  GroupAction act;
};

SwapInstance swap_instance() {
  FieldSpec f = make_field(5);
  Algebra a(f, 2, {"u", "v"}, {{0, 0, 0, 1}, {1, 1, 1, 1}});
  Matrix swap(f, 2, 2);
  swap.at(0, 1) = 1;
  swap.at(1, 0) = 1;
  GroupAction act{FiniteGroup::cyclic(2), {Matrix::identity(f, 2), swap}};
  return {std::move(a), std::move(act)};
}

/// Conjugation by diag(1,-1) on the full 2x2 matrix algebra over F_5.
GroupAction conj_action(const Algebra& m2) {
  FieldSpec f = m2.field();
  Matrix g(f, 4, 4);
  g.at(0, 0) = 1;
  g.at(1, 1) = f.neg(1);
  g.at(2, 2) = f.neg(1);
  g.at(3, 3) = 1;
  return GroupAction{FiniteGroup::cyclic(2), {Matrix::identity(f, 4), std::move(g)}};
}

}  // namespace

TEST_CASE("grading validation") {
  FieldSpec f = make_field(5);
  Algebra a = strict_triangular(f, 4);
  Grading g = parity_grading(a, strict_cells(4));
  ValidationReport rep = validate_grading(a, g);
  CHECK(rep.ok());
  CHECK(g.identity_component().dim() == 2);
  CHECK(g.component(1).dim() == 4);

  // trivial grading: everything in the identity component
  Grading trivial{FiniteGroup::cyclic(2),
                  {Subspace::full(f, a.dim()), Subspace::zero(f, a.dim())}};
  CHECK(validate_grading(a, trivial).ok());

  // move one basis vector to the wrong component
  Grading bad = g;
  bad.components[0] = Subspace::span(f, a.dim(), {a.basis_element(0), a.basis_element(1)});
  bad.components[1] = Subspace::span(
      f, a.dim(),
      {a.basis_element(2), a.basis_element(3), a.basis_element(4), a.basis_element(5)});
  ValidationReport bad_rep = validate_grading(a, bad);
  CHECK_FALSE(bad_rep.ok());
}

TEST_CASE("action validation") {
  FieldSpec f = make_field(5);
  Algebra m2 = matrix_algebra(f, 2);
  CHECK(validate_action(m2, conj_action(m2)).ok());

  GroupAction ident{FiniteGroup::cyclic(1), {Matrix::identity(f, 4)}};
  CHECK(validate_action(m2, ident).ok());

  // an invertible map that is not multiplicative: swap E11 <-> E12
  Matrix bad = Matrix::identity(f, 4);
  bad.at(0, 0) = 0;
  bad.at(1, 1) = 0;
  bad.at(0, 1) = 1;
  bad.at(1, 0) = 1;
  GroupAction bad_act{FiniteGroup::cyclic(2), {Matrix::identity(f, 4), std::move(bad)}};
  ValidationReport rep = validate_action(m2, bad_act);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("fixed subalgebra") {
  SwapInstance si = swap_instance();
  Subspace fixed = fixed_subalgebra(si.a, si.act);
  REQUIRE(fixed.dim() == 1);
  CHECK(fixed.basis_vector(0) == Vec{1, 1});

  FieldSpec f = si.a.field();
  GroupAction trivial{FiniteGroup::cyclic(2),
                      {Matrix::identity(f, 2), Matrix::identity(f, 2)}};
  CHECK(fixed_subalgebra(si.a, trivial) == Subspace::full(f, 2));

  Algebra m2 = matrix_algebra(f, 2);
  Subspace diag_fixed = fixed_subalgebra(m2, conj_action(m2));
  CHECK(diag_fixed.dim() == 2);
  CHECK(diag_fixed.member(m2.basis_element(0)));
  CHECK(diag_fixed.member(m2.basis_element(3)));
}

TEST_CASE("average") {
  SwapInstance si = swap_instance();
  // (u + v)/2 over F_5 is 3(u+v)
  CHECK(average(si.a, si.act, {1, 0}) == Vec{3, 3});
  CHECK(average(si.a, si.act, {2, 2}) == Vec{2, 2});

  FieldSpec f = si.a.field();
  Algebra m2 = matrix_algebra(f, 2);
  GroupAction conj = conj_action(m2);
  CHECK(average(m2, conj, m2.basis_element(1)) == m2.zero_element());

  // char | n is rejected
  FieldSpec f2 = make_field(2);
  Algebra z2(f2, 1, {}, {});
  GroupAction act2{FiniteGroup::cyclic(2),
                   {Matrix::identity(f2, 1), Matrix::identity(f2, 1)}};
  CHECK_THROWS_AS(average(z2, act2, {1}), error);
}

TEST_CASE("average is a projection onto the fixed subalgebra") {
  FieldSpec f = make_field(5);
  Algebra m2 = matrix_algebra(f, 2);
  GroupAction conj = conj_action(m2);
  Subspace fixed = fixed_subalgebra(m2, conj);
  SplitMix64 rng(31);
  for (int trial = 0; trial < 25; ++trial) {
    Vec x = rand_vec(rng, f, 4);
    Vec ax = average(m2, conj, x);
    CHECK(fixed.member(ax));
    CHECK(average(m2, conj, ax) == ax);
  }
}

TEST_CASE("eigen grading") {
  FieldSpec f = make_field(5);
  // x -> -x on the 1-dim zero algebra
  Algebra z(f, 1, {"x"}, {});
  Matrix neg(f, 1, 1);
  neg.at(0, 0) = 4;
  GroupAction act{FiniteGroup::cyclic(2), {Matrix::identity(f, 1), std::move(neg)}};
  Grading g = eigen_grading(z, act, 4);
  CHECK(g.component(0).is_zero());
  CHECK(g.component(1) == Subspace::full(f, 1));

  Algebra m2 = matrix_algebra(f, 2);
  Grading g2 = eigen_grading(m2, conj_action(m2), 4);
  CHECK(g2.identity_component() ==
        Subspace::span(f, 4, {m2.basis_element(0), m2.basis_element(3)}));
  CHECK(g2.component(1) == Subspace::span(f, 4, {m2.basis_element(1), m2.basis_element(2)}));
  CHECK(g2.identity_component() == fixed_subalgebra(m2, conj_action(m2)));

  // trivial (non-faithful) action gives the trivial grading
  GroupAction trivial{FiniteGroup::cyclic(2),
                      {Matrix::identity(f, 4), Matrix::identity(f, 4)}};
  Grading g3 = eigen_grading(m2, trivial, 4);
  CHECK(g3.identity_component() == Subspace::full(f, 4));
  CHECK(g3.component(1).is_zero());

  CHECK_THROWS_AS(eigen_grading(m2, conj_action(m2), 2), error);  // 2 has order 4 mod 5
}

TEST_CASE("eigen grading multiplicativity on a scaled loop algebra") {
  // truncated loop algebra x, x^2 with x -> 2x over F_7 (2 is a cube root of 1)
  FieldSpec f = make_field(7);
  Algebra a(f, 2, {"x", "x2"}, {{0, 0, 1, 1}});
  REQUIRE(a.associativity_violations().empty());
  FiniteGroup c3 = FiniteGroup::cyclic(3);
  std::vector<Matrix> rho;
  for (std::size_t j = 0; j < 3; ++j) {
    Matrix m(f, 2, 2);
    m.at(0, 0) = f.pow(2, j);
    m.at(1, 1) = f.pow(4, j);
    rho.push_back(std::move(m));
  }
  GroupAction act{c3, std::move(rho)};
  REQUIRE(validate_action(a, act).ok());
  Grading g = eigen_grading(a, act, 2);
  CHECK(validate_grading(a, g).ok());
  CHECK(g.component(1).member(a.basis_element(0)));
  CHECK(g.component(2).member(a.basis_element(1)));
  CHECK(g.identity_component().is_zero());
}

TEST_CASE("graded nilpotency bound check") {
  FieldSpec f = make_field(5);
  Algebra a = strict_triangular(f, 4);
  GradedBoundReport rep = graded_nilpotency_bound_check(a, parity_grading(a, strict_cells(4)));
  CHECK(rep.n == 2);
  CHECK(rep.d == 2);
  CHECK(rep.index == 4);
  CHECK(rep.bound == 4);
  CHECK(rep.within_bound);

  Algebra t3 = strict_triangular(f, 3);
  Grading trivial{FiniteGroup::cyclic(1), {Subspace::full(f, 3)}};
  GradedBoundReport rep3 = graded_nilpotency_bound_check(t3, trivial);
  CHECK(rep3.d == 3);
  CHECK(rep3.index == 3);
  CHECK(rep3.bound == 3);
  CHECK(rep3.within_bound);

  // zero-multiplication algebra: index 2 under any bound
  Algebra z(f, 1, {}, {});
  Grading gz{FiniteGroup::cyclic(2), {Subspace::full(f, 1), Subspace::zero(f, 1)}};
  GradedBoundReport repz = graded_nilpotency_bound_check(z, gz);
  CHECK(repz.index == 2);
  CHECK(repz.within_bound);

  // identity component not nilpotent
  Algebra ut = upper_triangular(f, 2);
  Grading gu{FiniteGroup::cyclic(2),
             {Subspace::span(f, 3, {ut.basis_element(0), ut.basis_element(2)}),
              Subspace::span(f, 3, {ut.basis_element(1)})}};
  CHECK_THROWS_AS(graded_nilpotency_bound_check(ut, gu), error);
}

TEST_CASE("graded hypotheses validation") {
  FieldSpec f = make_field(5);
  Algebra ut = upper_triangular(f, 2);
  Grading g{FiniteGroup::cyclic(2),
            {Subspace::span(f, 3, {ut.basis_element(0), ut.basis_element(2)}),
             Subspace::span(f, 3, {ut.basis_element(1)})}};
  GradedHypotheses hyp = make_graded_hypotheses(ut, g, Subspace::zero(f, 3));
  CHECK(hyp.d == 1);
  CHECK(hyp.m == 2);

  // the whole identity component is not nilpotent here
  CHECK_THROWS_AS(make_graded_hypotheses(ut, g, g.identity_component()), error);
  // an ideal escaping A_e
  CHECK_THROWS_AS(make_graded_hypotheses(ut, g, Subspace::span(f, 3, {ut.basis_element(1)})),
                  error);
}

TEST_SUITE_END();
