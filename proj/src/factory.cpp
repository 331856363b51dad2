#include "nilcert/factory.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "nilcert/rng.hpp"

namespace nilcert {

namespace {

std::string join_name(const std::vector<std::uint32_t>& arrows) {
  std::string s;
  for (std::size_t i = 0; i < arrows.size(); ++i) {
    if (i) s += ".";
    s += "a" + std::to_string(arrows[i]);
  }
  return s;
}

}  // namespace

PathAlgebra build_path_algebra(const QuiverSpec& q, const FiniteGroup& grp, FieldSpec f) {
  if (q.truncation < 1) throw error("path algebra: truncation must be at least 1");
  for (const QuiverArrow& a : q.arrows) {
    if (a.src >= q.vertices || a.dst >= q.vertices)
      throw error("path algebra: arrow endpoint out of range");
    if (a.grade >= grp.order()) throw error("path algebra: arrow grade out of range");
  }

  PathAlgebra pa;
  pa.quiver = q;
  std::vector<std::string> names;
  std::vector<std::uint32_t> end_vertex;
  std::map<std::vector<std::uint32_t>, std::uint32_t> index_of_seq;

  if (q.include_vertex_idempotents)
    for (std::uint32_t v = 0; v < q.vertices; ++v) {
      pa.grades.push_back(grp.identity());
      pa.length.push_back(0);
      pa.arrow_seq.push_back({});
      pa.start_vertex.push_back(v);
      end_vertex.push_back(v);
      names.push_back("v" + std::to_string(v));
    }

  // paths of length 1..L-1, breadth first, lexicographic in arrow indices
  std::vector<std::size_t> prev_level;  // indices into the basis arrays
  for (std::size_t len = 1; len < q.truncation; ++len) {
    std::vector<std::size_t> level;
    if (len == 1) {
      for (std::uint32_t a = 0; a < q.arrows.size(); ++a) {
        pa.grades.push_back(q.arrows[a].grade);
        pa.length.push_back(1);
        pa.arrow_seq.push_back({a});
        pa.start_vertex.push_back(q.arrows[a].src);
        end_vertex.push_back(q.arrows[a].dst);
        names.push_back(join_name({a}));
        level.push_back(pa.arrow_seq.size() - 1);
      }
    } else {
      for (std::size_t pi : prev_level)
        for (std::uint32_t a = 0; a < q.arrows.size(); ++a) {
          if (q.arrows[a].src != end_vertex[pi]) continue;
          std::vector<std::uint32_t> seq = pa.arrow_seq[pi];
          seq.push_back(a);
          pa.grades.push_back(grp.mul(pa.grades[pi], q.arrows[a].grade));
          pa.length.push_back(len);
          pa.start_vertex.push_back(pa.start_vertex[pi]);
          end_vertex.push_back(q.arrows[a].dst);
          names.push_back(join_name(seq));
          pa.arrow_seq.push_back(std::move(seq));
          level.push_back(pa.arrow_seq.size() - 1);
        }
    }
    prev_level = std::move(level);
  }

  std::size_t dim = pa.arrow_seq.size();
  for (std::uint32_t i = 0; i < dim; ++i)
    if (pa.length[i] >= 1) index_of_seq[pa.arrow_seq[i]] = i;

  std::uint64_t unit = 1 % f.p;
  std::vector<ProductTerm> terms;
  for (std::uint32_t i = 0; i < dim; ++i)
    for (std::uint32_t j = 0; j < dim; ++j) {
      if (pa.length[i] == 0 && pa.length[j] == 0) {
        if (i == j) terms.push_back({i, j, i, unit});
      } else if (pa.length[i] == 0) {
        if (pa.start_vertex[i] == pa.start_vertex[j]) terms.push_back({i, j, j, unit});
      } else if (pa.length[j] == 0) {
        if (end_vertex[i] == pa.start_vertex[j]) terms.push_back({i, j, i, unit});
      } else {
        if (end_vertex[i] != pa.start_vertex[j]) continue;
        if (pa.length[i] + pa.length[j] >= q.truncation) continue;
        std::vector<std::uint32_t> seq = pa.arrow_seq[i];
        seq.insert(seq.end(), pa.arrow_seq[j].begin(), pa.arrow_seq[j].end());
        terms.push_back({i, j, index_of_seq.at(seq), unit});
      }
    }
  pa.algebra = Algebra(f, dim, std::move(names), terms);
  return pa;
}

Subspace PathAlgebra::suggested_identity_ideal(const FiniteGroup& grp) const {
  std::vector<Vec> vs;
  for (std::size_t i = 0; i < algebra.dim(); ++i)
    if (length[i] >= 1 && grades[i] == grp.identity()) vs.push_back(algebra.basis_element(i));
  return Subspace::span(algebra.field(), algebra.dim(), vs);
}

GroupAction gen_action_from_scaling(const PathAlgebra& pa,
                                    const std::vector<std::uint64_t>& arrow_scalars) {
  FieldSpec f = pa.algebra.field();
  if (arrow_scalars.size() != pa.quiver.arrows.size())
    throw error("scaling action: one scalar per arrow required");
  std::uint64_t order = 1;
  for (std::uint64_t s : arrow_scalars) {
    if (s % f.p == 0) throw error("scaling action: scalar must be invertible");
    order = std::lcm(order, f.order_of(s));
  }
  std::vector<std::uint64_t> base_scale(pa.algebra.dim(), 1 % f.p);
  for (std::size_t i = 0; i < pa.algebra.dim(); ++i)
    for (std::uint32_t a : pa.arrow_seq[i]) base_scale[i] = f.mul(base_scale[i], arrow_scalars[a]);

  FiniteGroup grp = FiniteGroup::cyclic(order);
  std::vector<Matrix> rho;
  for (std::size_t j = 0; j < order; ++j) {
    Matrix m(f, pa.algebra.dim(), pa.algebra.dim());
    for (std::size_t i = 0; i < pa.algebra.dim(); ++i) m.at(i, i) = f.pow(base_scale[i], j);
    rho.push_back(std::move(m));
  }
  GroupAction action{std::move(grp), std::move(rho)};
  ValidationReport rep = validate_action(pa.algebra, action);
  if (!rep.ok()) throw error("scaling action: " + rep.first_failure());
  return action;
}

FieldSpec default_field_for(const FiniteGroup& grp) {
  std::uint64_t n = grp.order();
  std::vector<std::uint64_t> qs = prime_factors(n);
  for (std::uint64_t p = 2;; ++p) {
    if (!is_prime(p)) continue;
    if (n % p == 0) continue;
    bool ok = true;
    for (std::uint64_t q : qs) ok = ok && (p - 1) % q == 0;
    if (ok) return make_field(p);
  }
}

FieldSpec field_with_root_of_order(std::size_t k) {
  for (std::uint64_t p = 2;; ++p) {
    if (!is_prime(p)) continue;
    if (k % p == 0) continue;
    if ((p - 1) % k == 0) return make_field(p);
  }
}

Subspace suggested_invariant_ideal(const Algebra& a, const PathAlgebra& pa,
                                   const GroupAction& action) {
  Subspace fixed = fixed_subalgebra(a, action);
  std::vector<Vec> positive;
  for (std::size_t i = 0; i < a.dim(); ++i)
    if (pa.length[i] >= 1) positive.push_back(a.basis_element(i));
  return intersect(fixed, Subspace::span(a.field(), a.dim(), positive));
}

InstanceData gen_triangular(const TriangularOptions& opt, FieldSpec f) {
  if (opt.k < 1) throw error("triangular: size must be positive");
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  for (std::size_t i = 0; i < opt.k; ++i)
    for (std::size_t j = opt.strict ? i + 1 : i; j < opt.k; ++j) cells.emplace_back(i, j);
  std::map<std::pair<std::size_t, std::size_t>, std::uint32_t> index;
  std::vector<std::string> names;
  for (std::uint32_t t = 0; t < cells.size(); ++t) {
    index[cells[t]] = t;
    names.push_back("E" + std::to_string(cells[t].first + 1) + "_" +
                    std::to_string(cells[t].second + 1));
  }
  std::uint64_t unit = 1 % f.p;
  std::vector<ProductTerm> terms;
  for (std::uint32_t x = 0; x < cells.size(); ++x)
    for (std::uint32_t y = 0; y < cells.size(); ++y) {
      if (cells[x].second != cells[y].first) continue;
      auto it = index.find({cells[x].first, cells[y].second});
      if (it != index.end()) terms.push_back({x, y, it->second, unit});
    }

  InstanceData data;
  data.field = f;
  data.algebra = Algebra(f, cells.size(), names, terms);
  if (opt.graded) {
    data.set_group(FiniteGroup::cyclic(2));
    std::vector<std::uint32_t> grades;
    for (const auto& [i, j] : cells) grades.push_back(static_cast<std::uint32_t>((j - i) % 2));
    data.grades = std::move(grades);
  }
  if (opt.ideal != IdealChoice::zero) {
    std::vector<Vec> vs;
    for (std::uint32_t t = 0; t < cells.size(); ++t) {
      auto [i, j] = cells[t];
      bool even = (j - i) % 2 == 0;
      bool upper = j > i;
      bool take = false;
      if (opt.ideal == IdealChoice::suggested) take = opt.graded ? (even && upper) : upper;
      if (opt.ideal == IdealChoice::full_component) take = opt.graded ? even : true;
      if (take) vs.push_back(data.algebra.basis_element(t));
    }
    data.ideal_vectors = std::move(vs);
  } else {
    data.ideal_vectors = std::vector<Vec>{};
  }
  return data;
}

namespace {

std::vector<Vec> subspace_vectors(const Subspace& s) {
  std::vector<Vec> out;
  out.reserve(s.dim());
  for (std::size_t i = 0; i < s.dim(); ++i) out.push_back(s.basis_vector(i));
  return out;
}

std::vector<Vec> graded_ideal_vectors(const PathAlgebra& pa, const FiniteGroup& grp,
                                      IdealChoice choice) {
  switch (choice) {
    case IdealChoice::zero: return {};
    case IdealChoice::suggested: return subspace_vectors(pa.suggested_identity_ideal(grp));
    case IdealChoice::full_component: {
      std::vector<Vec> vs;
      for (std::size_t i = 0; i < pa.algebra.dim(); ++i)
        if (pa.grades[i] == grp.identity()) vs.push_back(pa.algebra.basis_element(i));
      return vs;
    }
  }
  return {};
}

}  // namespace

InstanceData gen_path_instance(const QuiverSpec& q, const FiniteGroup& grp, FieldSpec f,
                               IdealChoice ideal) {
  PathAlgebra pa = build_path_algebra(q, grp, f);
  InstanceData data;
  data.field = f;
  data.algebra = pa.algebra;
  data.set_group(grp);
  data.grades = pa.grades;
  data.ideal_vectors = graded_ideal_vectors(pa, grp, ideal);
  return data;
}

InstanceData gen_scaling_instance(const QuiverSpec& q, std::size_t cyclic_order, FieldSpec f,
                                  IdealChoice ideal) {
  FiniteGroup grp = FiniteGroup::cyclic(cyclic_order);
  PathAlgebra pa = build_path_algebra(q, grp, f);
  std::uint64_t omega = f.primitive_root_of_order(cyclic_order);

  // generator scales arrow a by omega^grade(a); the full action over C_k
  std::vector<std::uint64_t> base_scale(pa.algebra.dim(), 1 % f.p);
  for (std::size_t i = 0; i < pa.algebra.dim(); ++i)
    for (std::uint32_t a : pa.arrow_seq[i])
      base_scale[i] = f.mul(base_scale[i], f.pow(omega, q.arrows[a].grade));
  std::vector<Matrix> rho;
  for (std::size_t j = 0; j < cyclic_order; ++j) {
    Matrix m(f, pa.algebra.dim(), pa.algebra.dim());
    for (std::size_t i = 0; i < pa.algebra.dim(); ++i) m.at(i, i) = f.pow(base_scale[i], j);
    rho.push_back(std::move(m));
  }
  GroupAction action{grp, std::move(rho)};
  ValidationReport rep = validate_action(pa.algebra, action);
  if (!rep.ok()) throw error("scaling instance: " + rep.first_failure());

  InstanceData data;
  data.field = f;
  data.algebra = pa.algebra;
  data.set_group(grp);
  data.action_matrices = action.rho;
  data.ideal_vectors = ideal == IdealChoice::zero
                           ? std::vector<Vec>{}
                           : subspace_vectors(suggested_invariant_ideal(pa.algebra, pa, action));
  return data;
}

InstanceData gen_cayley_instance(const FiniteGroup& grp, std::size_t truncation, FieldSpec f,
                                 IdealChoice ideal, std::size_t max_generators,
                                 bool include_idempotents) {
  std::size_t n = grp.order();
  // lexicographically least generating set of minimal size
  std::vector<std::uint32_t> gens;
  std::vector<std::uint32_t> candidates;
  for (std::uint32_t g = 0; g < n; ++g)
    if (g != grp.identity()) candidates.push_back(g);
  std::vector<std::uint32_t> chosen;
  auto search = [&](auto&& self, std::size_t start, std::size_t want) -> bool {
    if (chosen.size() == want) {
      if (generated_subgroup(grp, chosen).size() == n) {
        gens = chosen;
        return true;
      }
      return false;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      chosen.push_back(candidates[i]);
      if (self(self, i + 1, want)) return true;
      chosen.pop_back();
    }
    return false;
  };
  for (std::size_t size = 1; size <= max_generators && gens.empty() && n > 1; ++size)
    search(search, 0, size);
  if (gens.empty() && n > 1) throw error("cayley instance: no small generating set found");

  QuiverSpec q;
  q.vertices = n;
  q.truncation = truncation;
  q.include_vertex_idempotents = include_idempotents;
  for (std::uint32_t s : gens)
    for (std::uint32_t v = 0; v < n; ++v)
      q.arrows.push_back(QuiverArrow{v, grp.mul(v, s), s});  // arrow index = s_idx * n + v

  PathAlgebra pa = build_path_algebra(q, grp, f);
  std::map<std::vector<std::uint32_t>, std::uint32_t> index_of_seq;
  for (std::uint32_t i = 0; i < pa.algebra.dim(); ++i)
    index_of_seq[pa.arrow_seq[i].empty()
                     ? std::vector<std::uint32_t>{0x80000000u + pa.start_vertex[i]}
                     : pa.arrow_seq[i]] = i;

  std::uint64_t unit = 1 % f.p;
  std::vector<Matrix> rho;
  for (std::uint32_t h = 0; h < n; ++h) {
    Matrix m(f, pa.algebra.dim(), pa.algebra.dim());
    for (std::uint32_t i = 0; i < pa.algebra.dim(); ++i) {
      std::vector<std::uint32_t> seq;
      if (pa.arrow_seq[i].empty()) {
        seq = {0x80000000u + grp.mul(h, pa.start_vertex[i])};
      } else {
        for (std::uint32_t a : pa.arrow_seq[i]) {
          std::uint32_t s_idx = a / static_cast<std::uint32_t>(n);
          std::uint32_t v = a % static_cast<std::uint32_t>(n);
          seq.push_back(s_idx * static_cast<std::uint32_t>(n) + grp.mul(h, v));
        }
      }
      m.at(index_of_seq.at(seq), i) = unit;
    }
    rho.push_back(std::move(m));
  }
  GroupAction action{grp, std::move(rho)};
  ValidationReport rep = validate_action(pa.algebra, action);
  if (!rep.ok()) throw error("cayley instance: " + rep.first_failure());

  InstanceData data;
  data.field = f;
  data.algebra = pa.algebra;
  data.set_group(grp);
  data.action_matrices = action.rho;
  data.ideal_vectors = ideal == IdealChoice::zero
                           ? std::vector<Vec>{}
                           : subspace_vectors(suggested_invariant_ideal(pa.algebra, pa, action));
  return data;
}

namespace {

QuiverSpec random_quiver(SplitMix64& rng, std::size_t group_order, const RandomParams& params) {
  QuiverSpec q;
  q.vertices = 1 + rng.below(params.max_vertices);
  std::size_t arrows = 1 + rng.below(params.max_arrows);
  for (std::size_t a = 0; a < arrows; ++a)
    q.arrows.push_back(QuiverArrow{static_cast<std::uint32_t>(rng.below(q.vertices)),
                                   static_cast<std::uint32_t>(rng.below(q.vertices)),
                                   static_cast<std::uint32_t>(rng.below(group_order))});
  q.truncation = 2 + rng.below(params.max_truncation - 1);
  q.include_vertex_idempotents = rng.chance(2, 3);
  return q;
}

void shrink_to_dim(QuiverSpec& q, const FiniteGroup& grp, FieldSpec f, std::size_t max_dim) {
  for (;;) {
    PathAlgebra pa = build_path_algebra(q, grp, f);
    if (pa.algebra.dim() <= max_dim) return;
    if (!q.arrows.empty() && q.truncation > 2 &&
        pa.algebra.dim() > 2 * max_dim)
      --q.truncation;
    else if (!q.arrows.empty())
      q.arrows.pop_back();
    else
      q.truncation = 2;
  }
}

}  // namespace

InstanceData gen_random_graded(std::uint64_t seed, const FiniteGroup& grp,
                               std::optional<FieldSpec> field, RandomParams params) {
  FieldSpec f = field.value_or(default_field_for(grp));
  SplitMix64 rng(seed);
  QuiverSpec q = random_quiver(rng, grp.order(), params);
  shrink_to_dim(q, grp, f, params.max_dim);
  IdealChoice ideal = rng.chance(2, 3) ? IdealChoice::suggested : IdealChoice::zero;
  return gen_path_instance(q, grp, f, ideal);
}

InstanceData gen_random_action(std::uint64_t seed, const FiniteGroup& grp,
                               std::optional<FieldSpec> field, RandomParams params) {
  SplitMix64 rng(seed);
  std::size_t n = grp.order();
  bool cyclic = false;
  for (std::uint32_t g = 0; g < n && !cyclic; ++g) cyclic = grp.element_order(g) == n;

  IdealChoice ideal = rng.chance(2, 3) ? IdealChoice::suggested : IdealChoice::zero;
  if (cyclic && n > 1 && !rng.chance(1, 4)) {
    FieldSpec f = field.value_or(field_with_root_of_order(n));
    QuiverSpec q = random_quiver(rng, n, params);
    shrink_to_dim(q, grp, f, params.max_dim);
    return gen_scaling_instance(q, n, f, ideal);
  }
  FieldSpec f = field.value_or(default_field_for(grp));
  std::size_t truncation = 2 + rng.below(2);
  for (;;) {
    InstanceData data = gen_cayley_instance(grp, truncation, f, ideal);
    if (data.algebra.dim() <= params.max_dim || truncation == 2) return data;
    --truncation;
  }
}

InstanceData generate_named(const std::string& family, std::uint64_t seed, const GenOptions& opt) {
  IdealChoice ideal = IdealChoice::suggested;
  if (opt.ideal == "zero")
    ideal = IdealChoice::zero;
  else if (opt.ideal == "full")
    ideal = IdealChoice::full_component;
  else if (opt.ideal != "suggested")
    throw error("generate: unknown ideal choice '" + opt.ideal + "'");

  FiniteGroup grp = FiniteGroup::named(opt.group);
  std::optional<FieldSpec> fo;
  if (opt.p) fo = make_field(opt.p);

  InstanceData data;
  if (family == "triangular") {
    data = gen_triangular({opt.k, opt.strict, opt.graded, ideal}, fo.value_or(make_field(5)));
  } else if (family == "path") {
    RandomParams params;
    params.max_vertices = opt.vertices;
    params.max_arrows = opt.arrows;
    params.max_truncation = opt.truncation;
    data = gen_random_graded(seed, grp, fo, params);
  } else if (family == "scaling") {
    SplitMix64 rng(seed);
    QuiverSpec q;
    q.vertices = 1 + rng.below(opt.vertices);
    std::size_t count = 1 + rng.below(opt.arrows);
    for (std::size_t i = 0; i < count; ++i)
      q.arrows.push_back(QuiverArrow{static_cast<std::uint32_t>(rng.below(q.vertices)),
                                     static_cast<std::uint32_t>(rng.below(q.vertices)),
                                     static_cast<std::uint32_t>(rng.below(grp.order()))});
    q.truncation = std::max<std::size_t>(2, opt.truncation);
    q.include_vertex_idempotents = opt.idempotents;
    data = gen_scaling_instance(q, grp.order(), fo.value_or(field_with_root_of_order(grp.order())),
                                ideal);
  } else if (family == "cayley") {
    data = gen_cayley_instance(grp, std::max<std::size_t>(2, opt.truncation),
                               fo.value_or(default_field_for(grp)), ideal, 2, opt.idempotents);
  } else {
    throw error("generate: unknown family '" + family + "'");
  }
  if (opt.with_series && data.has_group()) {
    auto series = find_prime_series(data.group());
    if (!series) throw error("generate: group is not soluble; no series to embed");
    data.series_subgroups = series->chain;
  }
  return data;
}

}  // namespace nilcert
