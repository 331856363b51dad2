#include "nilcert/pipelines.hpp"

#include <algorithm>

namespace nilcert {

namespace {

Subspace embed_basis(FieldSpec f, std::size_t ambient, const Subspace& local,
                     const std::vector<Vec>& images_of_basis) {
  // maps a subspace given in local coordinates through basis -> images
  std::vector<Vec> out;
  out.reserve(local.dim());
  for (std::size_t i = 0; i < local.dim(); ++i) {
    Vec t = local.basis_vector(i);
    Vec v(ambient, 0);
    for (std::size_t j = 0; j < t.size(); ++j) {
      if (!t[j]) continue;
      const Vec& b = images_of_basis[j];
      for (std::size_t col = 0; col < ambient; ++col)
        if (b[col]) v[col] = f.add(v[col], f.mul(t[j], b[col]));
    }
    out.push_back(std::move(v));
  }
  return Subspace::span(f, ambient, out);
}

Subspace span_of_reps(const Algebra& a, const CentralizerTower& tower, std::uint32_t grade,
                      std::uint32_t level, RepKind kind) {
  std::vector<Vec> vs;
  for (const Representative& r : tower.reps)
    if (r.grade == grade && r.level == level && r.kind == kind) vs.push_back(r.element);
  return Subspace::span(a.field(), a.dim(), vs);
}

void check_pattern_spans(const Algebra& a, const CentralizerTower& tower, ValidationReport& rep) {
  // products of level-s centralizers of inverse grades are spanned mod I_e
  // by products of the level-s pattern representatives
  const Grading& grading = tower.hypotheses.grading;
  const FiniteGroup& grp = grading.group;
  const Subspace& i_e = tower.hypotheses.ideal.carrier;
  std::uint32_t e = grp.identity();
  for (std::size_t s = 0; s <= tower.built; ++s)
    for (std::uint32_t g = 0; g < grp.order(); ++g) {
      if (g == e) continue;
      std::uint32_t gi = grp.inv(g);
      Subspace lhs = subspace_product(a, tower.component(g, s), tower.component(gi, s));
      Subspace xg = span_of_reps(a, tower, g, static_cast<std::uint32_t>(s), RepKind::pattern_pair);
      Subspace xgi =
          span_of_reps(a, tower, gi, static_cast<std::uint32_t>(s), RepKind::pattern_pair);
      Subspace rhs = sum(subspace_product(a, xg, xgi), i_e);
      if (!rhs.contains(lhs)) {
        rep.add("lemma.pattern_span", false,
                "level " + std::to_string(s) + " grade " + grp.names()[g]);
        return;
      }
    }
  rep.add("lemma.pattern_span", true);
}

void check_identity_lift_span(const Algebra& a, const CentralizerTower& tower,
                              ValidationReport& rep) {
  // A_e = span{x_e(0)} + I_e
  const Grading& grading = tower.hypotheses.grading;
  Subspace xe = span_of_reps(a, tower, grading.group.identity(), 0, RepKind::identity_lift);
  Subspace rhs = sum(xe, tower.hypotheses.ideal.carrier);
  rep.add("lemma.identity_lift_span", rhs == grading.identity_component(),
          "dim " + std::to_string(rhs.dim()) + " vs " +
              std::to_string(grading.identity_component().dim()));
}

void check_top_component_span(const Algebra& a, const CentralizerTower& tower, const Subspace& z_e,
                              ValidationReport& rep) {
  // Z_e sits inside sum_h A_{h^-1}(N-2) A_h(N-2) + sum_g A_{g^-1} I_e A_g + I_e
  if (tower.built < 2) {
    rep.add("lemma.top_component_span", true, "tower too short, vacuous");
    return;
  }
  const Grading& grading = tower.hypotheses.grading;
  const FiniteGroup& grp = grading.group;
  const Subspace& i_e = tower.hypotheses.ideal.carrier;
  std::size_t level = tower.built - 2;
  std::uint32_t e = grp.identity();
  Subspace rhs = i_e;
  for (std::uint32_t h = 0; h < grp.order(); ++h) {
    if (h == e) continue;
    std::uint32_t hi = grp.inv(h);
    rhs = sum(rhs, subspace_product(a, tower.component(hi, level), tower.component(h, level)));
    rhs = sum(rhs, subspace_product(a, subspace_product(a, grading.component(hi), i_e),
                                    grading.component(h)));
  }
  rep.add("lemma.top_component_span", rhs.contains(z_e),
          "Z_e dim " + std::to_string(z_e.dim()) + ", span dim " + std::to_string(rhs.dim()));
}

}  // namespace

ConstructionReport theorem2_construct(const Algebra& a, const GradedHypotheses& hyp,
                                      const Theorem2Options& opt) {
  ConstructionReport rep;
  CentralizerTower tower = build_tower(a, hyp, opt.tower);
  rep.bounds = tower.bounds;
  rep.tower_summary = tower.summary();

  ValidationReport checks;
  for (auto& c : check_tower_chain(tower).checks) checks.checks.push_back(std::move(c));
  for (auto& c : check_representative_counts(tower).checks) checks.checks.push_back(std::move(c));
  for (auto& c : check_centralizer_shift(a, tower).checks) checks.checks.push_back(std::move(c));
  for (auto& c : check_component_absorption(a, tower).checks) checks.checks.push_back(std::move(c));
  for (auto& c : check_insertion_property(a, tower, opt.property_samples, opt.sample_seed).checks)
    checks.checks.push_back(std::move(c));
  check_identity_lift_span(a, tower, checks);
  check_pattern_spans(a, tower, checks);

  const Grading& grading = hyp.grading;
  const FiniteGroup& grp = grading.group;
  std::uint32_t e = grp.identity();

  Subspace generators = hyp.ideal.carrier;
  for (std::uint32_t g = 0; g < grp.order(); ++g) {
    if (g == e) continue;
    generators = sum(generators, tower.component(g, tower.built));
  }
  IdealHandle z = ideal_closure(a, generators);
  rep.ideal = z;

  Subspace full = Subspace::full(a.field(), a.dim());
  checks.add("ideal.two_sided",
             z.carrier.contains(subspace_product(a, full, z.carrier)) &&
                 z.carrier.contains(subspace_product(a, z.carrier, full)));
  checks.add("ideal.contains_ie", z.carrier.contains(hyp.ideal.carrier));

  std::size_t graded_dim = 0;
  std::vector<Subspace> z_parts;
  for (std::uint32_t g = 0; g < grp.order(); ++g) {
    z_parts.push_back(intersect(z.carrier, grading.component(g)));
    graded_dim += z_parts.back().dim();
  }
  checks.add("ideal.homogeneous", graded_dim == z.carrier.dim(),
             "graded parts sum to " + std::to_string(graded_dim) + ", dim Z = " +
                 std::to_string(z.carrier.dim()));

  const Subspace& z_e = z_parts[e];
  auto ze_index = nilpotency_index(a, z_e);
  checks.add("ideal.identity_part_bound", ze_index.has_value() && *ze_index <= rep.bounds.Q,
             ze_index ? "(Z_e)^" + std::to_string(*ze_index) + " = 0, Q = " +
                            std::to_string(rep.bounds.Q)
                      : "Z_e not nilpotent");

  auto z_index = nilpotency_index(a, z.carrier);
  rep.nilpotent = z_index.has_value();
  rep.achieved_index = z_index.value_or(0);
  checks.add("ideal.nilpotent_within_nQ", z_index.has_value() && *z_index <= rep.bounds.nQ,
             z_index ? "index " + std::to_string(*z_index) + ", nQ = " +
                           std::to_string(rep.bounds.nQ)
                     : "Z not nilpotent");

  check_top_component_span(a, tower, z_e, checks);

  rep.achieved_codim = a.dim() - z.carrier.dim();
  rep.checks = std::move(checks.checks);
  return rep;
}

InvariantHypotheses make_invariant_hypotheses(const Algebra& a, GroupAction action,
                                              const Subspace& ideal) {
  ValidationReport v = validate_action(a, action);
  if (!v.ok()) throw error("invariant hypotheses: " + v.first_failure());
  if (action.group.order() % a.field().p == 0)
    throw error("invariant hypotheses: characteristic divides the group order");
  Subspace fixed = fixed_subalgebra(a, action);
  if (!fixed.contains(ideal)) throw error("invariant hypotheses: ideal is not inside A^G");
  if (!ideal.contains(subspace_product(a, fixed, ideal)) ||
      !ideal.contains(subspace_product(a, ideal, fixed)))
    throw error("invariant hypotheses: not a two-sided ideal of A^G");
  auto d = nilpotency_index(a, ideal);
  if (!d) throw error("invariant hypotheses: ideal is not nilpotent");
  InvariantHypotheses hyp{std::move(action), IdealHandle{ideal, true, true}, fixed, *d, 0};
  hyp.m = fixed.dim() - ideal.dim();
  return hyp;
}

LiftReport invariant_ideal_lift(const Algebra& a, const GroupAction& action, const Subspace& ideal,
                                std::size_t bound_group_order) {
  if (action.group.order() % a.field().p == 0)
    throw error("invariant lift: characteristic divides the group order");
  LiftReport rep;
  ValidationReport checks;

  Subspace translates = Subspace::zero(a.field(), a.dim());
  for (std::uint32_t g = 0; g < action.group.order(); ++g) {
    std::vector<Vec> imgs;
    for (std::size_t i = 0; i < ideal.dim(); ++i)
      imgs.push_back(action.matrix(g).apply(ideal.basis_vector(i)));
    translates = sum(translates, Subspace::span(a.field(), a.dim(), imgs));
  }
  auto t_index = nilpotency_index(a, translates);
  checks.add("lift.translates_nilpotent", t_index.has_value());
  rep.translate_index = t_index.value_or(0);

  IdealHandle k = ideal_closure(a, translates);
  rep.ideal = k;
  checks.add("lift.contains_ideal", k.carrier.contains(ideal));

  bool invariant = true;
  for (std::uint32_t g = 0; g < action.group.order() && invariant; ++g) {
    std::vector<Vec> imgs;
    for (std::size_t i = 0; i < k.carrier.dim(); ++i)
      imgs.push_back(action.matrix(g).apply(k.carrier.basis_vector(i)));
    invariant = Subspace::span(a.field(), a.dim(), imgs) == k.carrier;
  }
  checks.add("lift.invariant", invariant);

  Subspace full = Subspace::full(a.field(), a.dim());
  checks.add("lift.two_sided", k.carrier.contains(subspace_product(a, full, k.carrier)) &&
                                   k.carrier.contains(subspace_product(a, k.carrier, full)));

  auto k_index = nilpotency_index(a, k.carrier);
  rep.nilpotent = k_index.has_value();
  rep.index = k_index.value_or(0);
  checks.add("lift.nilpotent", rep.nilpotent);

  BoundSet b = bounds_for(bound_group_order, std::max<std::size_t>(rep.translate_index, 1));
  rep.h = b.h;
  rep.h_bound = b.h_pow_d;
  checks.add("lift.bergman_bound", rep.nilpotent && rep.index <= rep.h_bound,
             "index " + std::to_string(rep.index) + " vs h^d = " + std::to_string(rep.h_bound));
  rep.checks = std::move(checks.checks);
  return rep;
}

namespace {

PrimeSeries restrict_series(const PrimeSeries& series, const SubgroupPresentation& sub,
                            std::size_t upto) {
  PrimeSeries out;
  for (std::size_t i = 0; i <= upto; ++i) {
    std::vector<std::uint32_t> term;
    for (std::uint32_t x : series.chain[i]) {
      if (sub.index_of[x] == npos32) throw error("theorem1: series term escapes the subgroup");
      term.push_back(sub.index_of[x]);
    }
    std::sort(term.begin(), term.end());
    out.chain.push_back(std::move(term));
  }
  return out;
}

void merge_checks(Theorem1Report& into, const std::string& prefix,
                  const std::vector<CheckResult>& checks) {
  for (const CheckResult& c : checks)
    into.checks.push_back({prefix + "." + c.name, c.pass, c.witness});
}

Theorem1Report theorem1_recurse(const Algebra& a, const InvariantHypotheses& hyp,
                                const PrimeSeries& series, const Theorem2Options& opt,
                                std::size_t depth) {
  const FiniteGroup& grp = hyp.action.group;
  std::size_t n = grp.order();
  FieldSpec f = a.field();
  std::string tag = "stage" + std::to_string(depth);
  Theorem1Report rep;

  if (n == 1) {
    // the ideal of A^G = A is already the answer
    rep.ideal = IdealHandle{hyp.ideal.carrier, true, true};
    Subspace full = Subspace::full(f, a.dim());
    rep.checks.push_back({tag + ".trivial.two_sided",
                          hyp.ideal.carrier.contains(subspace_product(a, full, hyp.ideal.carrier)) &&
                              hyp.ideal.carrier.contains(
                                  subspace_product(a, hyp.ideal.carrier, full)),
                          ""});
    rep.nilpotent = true;
    rep.achieved_index = hyp.d;
    rep.achieved_codim = a.dim() - hyp.ideal.carrier.dim();
    rep.composed_bound = hyp.d;
    rep.stages.push_back({"trivial-base", 1, hyp.d, hyp.d, "trivial group"});
    return rep;
  }

  if (is_prime(n)) {
    std::uint64_t omega = f.primitive_root_of_order(n);
    Grading grading = eigen_grading(a, hyp.action, omega);
    rep.checks.push_back({tag + ".base.identity_component_is_fixed",
                          grading.identity_component() == hyp.fixed, ""});
    GradedHypotheses ghyp = make_graded_hypotheses(a, grading, hyp.ideal.carrier);
    ConstructionReport t2 = theorem2_construct(a, ghyp, opt);
    merge_checks(rep, tag + ".t2", t2.checks);
    rep.ideal = t2.ideal;
    rep.nilpotent = t2.nilpotent;
    rep.achieved_index = t2.achieved_index;
    rep.achieved_codim = t2.achieved_codim;
    rep.composed_bound = t2.bounds.nQ;
    rep.stages.push_back({"prime-base", n, t2.bounds.nQ, t2.achieved_index,
                          "eigenspace grading, omega = " + std::to_string(omega)});
    return rep;
  }

  // step: peel the top prime quotient off the series
  if (series.chain.size() < 2 || series.chain.back().size() != n)
    throw error("theorem1: series does not match the acting group");
  const std::vector<std::uint32_t>& h_subset = series.chain[series.chain.size() - 2];

  // C = A^H with the induced G/H action
  Subspace c_space = Subspace::full(f, a.dim());
  Matrix id = Matrix::identity(f, a.dim());
  for (std::uint32_t h : h_subset) {
    if (h == grp.identity()) continue;
    c_space = intersect(c_space, kernel(hyp.action.matrix(h).add(id.scaled(f.neg(1 % f.p)))));
  }
  SubalgebraPresentation c = subalgebra_presentation(a, c_space);

  QuotientGroup quot = quotient_group(grp, h_subset);
  std::vector<std::uint32_t> coset_rep(quot.group.order(), npos32);
  for (std::uint32_t g = 0; g < grp.order(); ++g)
    if (coset_rep[quot.coset_of[g]] == npos32) coset_rep[quot.coset_of[g]] = g;

  std::vector<Matrix> c_rho;
  for (std::uint32_t q = 0; q < quot.group.order(); ++q) {
    Matrix m(f, c_space.dim(), c_space.dim());
    for (std::size_t i = 0; i < c_space.dim(); ++i) {
      Vec img = hyp.action.matrix(coset_rep[q]).apply(c_space.basis_vector(i));
      Vec coords = c_space.coordinates(img);  // throws if C is not invariant
      for (std::size_t r = 0; r < c_space.dim(); ++r) m.at(r, i) = coords[r];
    }
    c_rho.push_back(std::move(m));
  }
  GroupAction c_action{quot.group, std::move(c_rho)};
  rep.checks.push_back(
      {tag + ".step.quotient_action_valid", validate_action(c.algebra, c_action).ok(), ""});

  if (!c_space.contains(hyp.ideal.carrier))
    throw error("theorem1: ideal is not fixed by the penultimate subgroup");
  std::vector<Vec> ideal_local;
  for (std::size_t i = 0; i < hyp.ideal.carrier.dim(); ++i)
    ideal_local.push_back(c_space.coordinates(hyp.ideal.carrier.basis_vector(i)));
  Subspace ideal_in_c = Subspace::span(f, c_space.dim(), ideal_local);

  InvariantHypotheses sub_hyp = make_invariant_hypotheses(c.algebra, c_action, ideal_in_c);
  PrimeSeries prime_series;
  prime_series.chain.push_back({quot.group.identity()});
  std::vector<std::uint32_t> all_q(quot.group.order());
  for (std::uint32_t i = 0; i < quot.group.order(); ++i) all_q[i] = i;
  prime_series.chain.push_back(std::move(all_q));

  Theorem1Report inner = theorem1_recurse(c.algebra, sub_hyp, prime_series, opt, depth + 1);
  for (auto& c2 : inner.checks) rep.checks.push_back(std::move(c2));
  for (auto& s : inner.stages) rep.stages.push_back(std::move(s));

  // lift J into a G-invariant nilpotent ideal of A
  std::vector<Vec> c_basis;
  for (std::size_t i = 0; i < c_space.dim(); ++i) c_basis.push_back(c_space.basis_vector(i));
  Subspace j_in_a = embed_basis(f, a.dim(), inner.ideal.carrier, c_basis);
  LiftReport lift = invariant_ideal_lift(a, hyp.action, j_in_a, h_subset.size());
  merge_checks(rep, tag + ".lift", lift.checks);
  rep.stages.push_back({"invariant-lift", n, static_cast<std::uint64_t>(lift.index), lift.index,
                        "bound group order " + std::to_string(h_subset.size())});

  // quotient by K, descend the H action, recurse
  QuotientAlgebra qa = quotient_algebra(a, lift.ideal);
  SubgroupPresentation hp = subgroup_presentation(grp, h_subset);
  std::vector<Matrix> h_rho;
  for (std::uint32_t h = 0; h < hp.group.order(); ++h) {
    Matrix m(f, qa.algebra.dim(), qa.algebra.dim());
    for (std::size_t i = 0; i < qa.algebra.dim(); ++i) {
      Vec img = qa.projection.apply(hyp.action.matrix(hp.element_of[h]).apply(qa.section[i]));
      for (std::size_t r = 0; r < qa.algebra.dim(); ++r) m.at(r, i) = img[r];
    }
    h_rho.push_back(std::move(m));
  }
  GroupAction h_action{hp.group, std::move(h_rho)};
  rep.checks.push_back(
      {tag + ".step.descended_action_valid", validate_action(qa.algebra, h_action).ok(), ""});

  InvariantHypotheses bar_hyp = make_invariant_hypotheses(
      qa.algebra, h_action, Subspace::zero(f, qa.algebra.dim()));
  PrimeSeries h_series = restrict_series(series, hp, series.chain.size() - 2);
  Theorem1Report tail = theorem1_recurse(qa.algebra, bar_hyp, h_series, opt, depth + 1);
  for (auto& c2 : tail.checks) rep.checks.push_back(std::move(c2));
  for (auto& s : tail.stages) rep.stages.push_back(std::move(s));

  // preimage of the quotient ideal
  Subspace preimage = embed_basis(f, a.dim(), tail.ideal.carrier, qa.section);
  preimage = sum(preimage, lift.ideal.carrier);
  Subspace full = Subspace::full(f, a.dim());
  bool two_sided = preimage.contains(subspace_product(a, full, preimage)) &&
                   preimage.contains(subspace_product(a, preimage, full));
  rep.checks.push_back({tag + ".preimage.two_sided", two_sided, ""});
  rep.ideal = IdealHandle{preimage, two_sided, two_sided};

  auto p_index = nilpotency_index(a, preimage);
  rep.nilpotent = p_index.has_value();
  rep.achieved_index = p_index.value_or(0);
  rep.checks.push_back({tag + ".preimage.nilpotent", rep.nilpotent, ""});
  rep.composed_bound = sat_mul(lift.index, tail.composed_bound);
  rep.checks.push_back({tag + ".preimage.within_composed_bound",
                        rep.nilpotent && rep.achieved_index <= rep.composed_bound,
                        "index " + std::to_string(rep.achieved_index) + " vs " +
                            std::to_string(rep.composed_bound)});
  rep.achieved_codim = a.dim() - preimage.dim();
  return rep;
}

}  // namespace

Theorem1Report theorem1_construct(const Algebra& a, const InvariantHypotheses& hyp,
                                  const PrimeSeries& series, const Theorem2Options& opt) {
  FieldSpec f = a.field();
  std::size_t n = hyp.action.group.order();
  if (n % f.p == 0) throw error("theorem1: characteristic divides the group order");
  for (std::uint64_t q : prime_factors(n))
    if ((f.p - 1) % q != 0)
      throw error("theorem1: field has no primitive root of unity of order " + std::to_string(q) +
                  " (need q | p-1)");
  ValidationReport sv = validate_series(hyp.action.group, series);
  if (!sv.ok()) throw error("theorem1: invalid series: " + sv.first_failure());
  return theorem1_recurse(a, hyp, series, opt, 1);
}

BergmanReport bergman_isaacs_check(const Algebra& a, const GroupAction& action) {
  if (action.group.order() % a.field().p == 0)
    throw error("bergman check: characteristic divides the group order");
  BergmanReport rep;
  rep.n = action.group.order();
  Subspace fixed = fixed_subalgebra(a, action);
  auto d = nilpotency_index(a, fixed);
  if (!d) throw error("bergman check: fixed-point subalgebra is not nilpotent");
  rep.d = *d;
  BoundSet b = bounds_for(rep.n, rep.d);
  rep.h = b.h;
  rep.bound = b.h_pow_d;
  auto idx = nilpotency_index(a, Subspace::full(a.field(), a.dim()));
  rep.algebra_nilpotent = idx.has_value();
  rep.index = idx.value_or(0);
  rep.within_bound = idx.has_value() && *idx <= rep.bound;
  return rep;
}

}  // namespace nilcert
