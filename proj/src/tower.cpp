#include "nilcert/tower.hpp"

#include <algorithm>
#include <set>

#include "nilcert/rng.hpp"

namespace nilcert {

std::uint64_t sat_mul(std::uint64_t a, std::uint64_t b) {
  if (a == 0 || b == 0) return 0;
  if (a >= bound_cap || b >= bound_cap || a > bound_cap / b) return bound_cap;
  return a * b;
}

std::uint64_t sat_pow(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < e; ++i) {
    r = sat_mul(r, a);
    if (r == bound_cap) return bound_cap;
  }
  return r;
}

BoundSet bounds_for(std::size_t n, std::size_t d) {
  if (n < 1 || d < 1) throw error("bounds_for: n and d must be at least 1");
  BoundSet b;
  b.n = n;
  b.d = d;
  b.nd = sat_mul(n, d);

  // h = 1 + prod_{i=0..n} (C(n,i) + 1)
  std::vector<std::uint64_t> binom(n + 1, 0);
  binom[0] = 1;
  for (std::size_t row = 1; row <= n; ++row)
    for (std::size_t i = row; i > 0; --i) {
      binom[i] = binom[i] + binom[i - 1];
      if (binom[i] >= bound_cap) binom[i] = bound_cap;
    }
  std::uint64_t prod = 1;
  for (std::size_t i = 0; i <= n; ++i) prod = sat_mul(prod, binom[i] + 1);
  b.h = prod >= bound_cap ? bound_cap : prod + 1;
  b.h_pow_d = sat_pow(b.h, d);

  std::uint64_t d3 = sat_mul(sat_mul(d, d), d);
  b.N = d * d + 3;
  b.W.resize(b.N);
  for (std::size_t s = 1; s <= b.N; ++s)
    b.W[s - 1] = sat_mul(2 * d3, n - 1) + 1 + s;  // W_s = 2d^3(n-1)+1+s

  b.H = static_cast<std::uint64_t>(d) * d + 1;
  b.T = sat_mul(d, b.H - 1) + 1;                 // d^3 + 1
  b.S = sat_mul(b.T - 1, n - 1) + 1;             // d^3(n-1) + 1
  b.U = sat_mul(d, n - 1);
  b.Q = sat_mul(b.U + d + 1, b.S - 1) + 1;
  b.nQ = sat_mul(n, b.Q);
  return b;
}

const char* rep_kind_name(RepKind k) {
  switch (k) {
    case RepKind::identity_lift: return "x_e";
    case RepKind::pattern_pair: return "x";
    case RepKind::quotient_basis: return "b";
  }
  return "?";
}

ProductSpanTable::ProductSpanTable(FieldSpec f, std::size_t ambient, std::size_t group_order,
                                   std::size_t w)
    : w_(w),
      exact_(group_order, std::vector<Subspace>(w + 1, Subspace::zero(f, ambient))),
      cumulative_(group_order, std::vector<Subspace>(w + 1, Subspace::zero(f, ambient))) {}

const Subspace& ProductSpanTable::exact(std::uint32_t h, std::size_t t) const {
  if (t == 0 || t > w_) throw error("span table: length out of range");
  return exact_[h][t];
}

const Subspace& ProductSpanTable::cumulative(std::uint32_t h, std::size_t t) const {
  if (t == 0 || t > w_) throw error("span table: length out of range");
  return cumulative_[h][t];
}

ProductSpanTable product_span_table(const Algebra& a, const Grading& grading,
                                    const std::vector<Representative>& pool, std::size_t w) {
  const FiniteGroup& grp = grading.group;
  std::size_t n = grp.order();
  ProductSpanTable table(a.field(), a.dim(), n, w);
  if (w == 0) return table;

  std::vector<std::vector<Vec>> by_grade(n);
  for (const Representative& r : pool) by_grade[r.grade].push_back(r.element);
  for (std::uint32_t h = 0; h < n; ++h)
    table.exact_[h][1] = Subspace::span(a.field(), a.dim(), by_grade[h]);

  for (std::size_t t = 2; t <= w; ++t) {
    bool same_as_prev = true;
    for (std::uint32_t h = 0; h < n; ++h) {
      Subspace acc = Subspace::zero(a.field(), a.dim());
      for (std::uint32_t h2 = 0; h2 < n; ++h2) {
        if (table.exact_[h2][1].is_zero()) continue;
        // h1 * h2 = h
        std::uint32_t h1 = grp.mul(h, grp.inv(h2));
        const Subspace& prev = table.exact_[h1][t - 1];
        if (prev.is_zero()) continue;
        acc = sum(acc, subspace_product(a, prev, table.exact_[h2][1]));
      }
      if (acc != table.exact_[h][t - 1]) same_as_prev = false;
      table.exact_[h][t] = std::move(acc);
    }
    if (same_as_prev) {
      for (std::size_t rest = t + 1; rest <= w; ++rest)
        for (std::uint32_t h = 0; h < n; ++h) table.exact_[h][rest] = table.exact_[h][t];
      break;
    }
  }

  for (std::uint32_t h = 0; h < n; ++h) {
    table.cumulative_[h][1] = table.exact_[h][1];
    for (std::size_t t = 2; t <= w; ++t)
      table.cumulative_[h][t] = sum(table.cumulative_[h][t - 1], table.exact_[h][t]);
  }
  return table;
}

namespace {

/// {w : w * v in I_e for all v in right}.
Subspace transporter_into(const Algebra& a, const Subspace& ie_ann, const Subspace& right) {
  FieldSpec f = a.field();
  RrefAccumulator rows(f, a.dim());
  for (std::size_t j = 0; j < right.dim() && !rows.saturated(); ++j) {
    Matrix rm = a.right_mul_matrix(right.basis_vector(j));
    for (std::size_t ci = 0; ci < ie_ann.dim() && !rows.saturated(); ++ci) {
      Vec c = ie_ann.basis_vector(ci);
      Vec row(a.dim(), 0);
      for (std::size_t k = 0; k < a.dim(); ++k) {
        if (!c[k]) continue;
        for (std::size_t col = 0; col < a.dim(); ++col) {
          std::uint64_t v = rm.at(k, col);
          if (v) row[col] = f.add(row[col], f.mul(c[k], v));
        }
      }
      rows.insert(std::move(row));
    }
  }
  return kernel(rows.matrix());
}

/// {y in component : left * y subset of target}; a missing left is the
/// formal unit.
Subspace constrained_kernel(const Algebra& a, const Subspace& component,
                            const std::optional<Subspace>& left, const Subspace& target) {
  if (!left) return intersect(component, target);
  FieldSpec f = a.field();
  Subspace target_ann = target.annihilator();
  std::size_t k = component.dim();
  RrefAccumulator rows(f, k);
  for (std::size_t li = 0; li < left->dim() && !rows.saturated(); ++li) {
    Matrix lm = a.left_mul_matrix(left->basis_vector(li));
    for (std::size_t ci = 0; ci < target_ann.dim() && !rows.saturated(); ++ci) {
      Vec c = target_ann.basis_vector(ci);
      Vec amb(a.dim(), 0);
      for (std::size_t r = 0; r < a.dim(); ++r) {
        if (!c[r]) continue;
        for (std::size_t col = 0; col < a.dim(); ++col) {
          std::uint64_t v = lm.at(r, col);
          if (v) amb[col] = f.add(amb[col], f.mul(c[r], v));
        }
      }
      Vec row(k, 0);
      for (std::size_t i = 0; i < k; ++i) {
        Vec b = component.basis_vector(i);
        std::uint64_t acc = 0;
        for (std::size_t col = 0; col < a.dim(); ++col)
          if (amb[col] && b[col]) acc = f.add(acc, f.mul(amb[col], b[col]));
        row[i] = acc;
      }
      rows.insert(std::move(row));
    }
  }
  Subspace tker = kernel(rows.matrix());
  std::vector<Vec> ambient_basis;
  ambient_basis.reserve(tker.dim());
  for (std::size_t i = 0; i < tker.dim(); ++i) {
    Vec t = tker.basis_vector(i);
    Vec amb(a.dim(), 0);
    for (std::size_t j = 0; j < k; ++j) {
      if (!t[j]) continue;
      Vec b = component.basis_vector(j);
      for (std::size_t col = 0; col < a.dim(); ++col)
        if (b[col]) amb[col] = f.add(amb[col], f.mul(t[j], b[col]));
    }
    ambient_basis.push_back(std::move(amb));
  }
  return Subspace::span(f, a.dim(), ambient_basis);
}

Subspace theta_kernel_impl(const Algebra& a, const Subspace& component, const Subspace& i_e,
                           const Subspace& ie_ann, const std::optional<Subspace>& left,
                           const std::optional<Subspace>& right) {
  Subspace target = right ? transporter_into(a, ie_ann, *right) : i_e;
  return constrained_kernel(a, component, left, target);
}

}  // namespace

Subspace theta_kernel(const Algebra& a, const Grading& grading, const Subspace& i_e,
                      std::uint32_t g, std::uint32_t h1, const std::optional<Subspace>& left,
                      std::uint32_t h2, const std::optional<Subspace>& right) {
  const FiniteGroup& grp = grading.group;
  if (g == grp.identity()) throw error("theta_kernel: grade g must be non-identity");
  if (!left && h1 != grp.identity()) throw error("theta_kernel: formal unit carries grade e");
  if (!right && h2 != grp.identity()) throw error("theta_kernel: formal unit carries grade e");
  if (!left && !right) throw error("theta_kernel: both sides cannot be the formal unit");
  if (grp.mul(grp.mul(h1, g), h2) != grp.identity())
    throw error("theta_kernel: grade condition h1*g*h2 = e violated");
  if (left && !grading.component(h1).contains(*left))
    throw error("theta_kernel: left factor is not inside its grade component");
  if (right && !grading.component(h2).contains(*right))
    throw error("theta_kernel: right factor is not inside its grade component");
  return theta_kernel_impl(a, grading.component(g), i_e, i_e.annihilator(), left, right);
}

TowerBuilder::TowerBuilder(const Algebra& a, GradedHypotheses hyp, TowerOptions opt)
    : a_(a), opt_(opt) {
  tower_.bounds = bounds_for(hyp.grading.group.order(), hyp.d);
  n_levels_ = opt.n_levels.value_or(tower_.bounds.N);
  ie_ann_ = hyp.ideal.carrier.annihilator();
  tower_.hypotheses = std::move(hyp);
}

void TowerBuilder::build_level_zero() {
  const Grading& grading = tower_.hypotheses.grading;
  tower_.levels.assign(1, grading.components);
  tower_.built = 0;
  tower_.reps.clear();

  // x_e(0): lifted basis of A_e / I_e
  QuotientData qd = quotient_data(grading.identity_component(), tower_.hypotheses.ideal.carrier);
  std::uint32_t e = grading.group.identity();
  for (const Vec& v : qd.complement)
    tower_.reps.push_back({v, e, 0, RepKind::identity_lift});

  for (std::uint32_t g = 0; g < grading.group.order(); ++g) {
    if (g == e) continue;
    pattern_pairs(g, grading.component(g), grading.component(grading.group.inv(g)), 0);
  }
}

std::size_t TowerBuilder::pattern_pairs(std::uint32_t g, const Subspace& left_space,
                                        const Subspace& right_space, std::uint32_t level) {
  const Grading& grading = tower_.hypotheses.grading;
  std::uint32_t ginv = grading.group.inv(g);
  const Subspace& i_e = tower_.hypotheses.ideal.carrier;
  Subspace full_span = sum(subspace_product(a_, left_space, right_space), i_e);

  RrefAccumulator acc(a_.field(), a_.dim());
  for (std::size_t i = 0; i < i_e.dim(); ++i) acc.insert(i_e.basis_vector(i));
  std::size_t selected = 0;
  for (std::size_t i = 0; i < left_space.dim() && acc.rank() < full_span.dim(); ++i)
    for (std::size_t j = 0; j < right_space.dim() && acc.rank() < full_span.dim(); ++j) {
      Vec prod = a_.multiply(left_space.basis_vector(i), right_space.basis_vector(j));
      if (!acc.insert(prod)) continue;
      ++selected;
      tower_.reps.push_back({left_space.basis_vector(i), g, level, RepKind::pattern_pair});
      tower_.reps.push_back({right_space.basis_vector(j), ginv, level, RepKind::pattern_pair});
    }
  if (selected > tower_.hypotheses.m)
    throw error("tower: pattern-pair selection exceeded the codimension bound");
  return selected;
}

const Subspace& TowerBuilder::transporter(const Subspace& right) {
  auto it = transporter_cache_.find(right);
  if (it != transporter_cache_.end()) return it->second;
  Subspace x = transporter_into(a_, ie_ann_, right);
  return transporter_cache_.emplace(right, std::move(x)).first->second;
}

Subspace TowerBuilder::theta_block(std::uint32_t g, const std::optional<Subspace>& left,
                                   const std::optional<Subspace>& right) {
  FieldSpec f = a_.field();
  Subspace zero = Subspace::zero(f, a_.dim());
  auto key = std::make_tuple(g, left ? 1 : 0, left ? *left : zero, right ? 1 : 0,
                             right ? *right : zero);
  auto it = theta_cache_.find(key);
  if (it != theta_cache_.end()) return it->second;
  const Subspace& component = tower_.hypotheses.grading.component(g);
  const Subspace& target = right ? transporter(*right) : tower_.hypotheses.ideal.carrier;
  Subspace result = constrained_kernel(a_, component, left, target);
  theta_cache_.emplace(std::move(key), result);
  return result;
}

Subspace TowerBuilder::kernel_stage(std::uint32_t g, const ProductSpanTable& table,
                                    std::size_t w) {
  const Grading& grading = tower_.hypotheses.grading;
  const FiniteGroup& grp = grading.group;
  std::uint32_t e = grp.identity();
  Subspace current = grading.component(g);
  auto apply_block = [&](const std::optional<Subspace>& left,
                         const std::optional<Subspace>& right) {
    if (current.is_zero()) return;
    current = intersect(current, theta_block(g, left, right));
  };
  for (std::uint32_t h1 = 0; h1 < grp.order() && !current.is_zero(); ++h1) {
    std::uint32_t h2 = grp.inv(grp.mul(h1, g));
    if (h1 == e && !table.cumulative(h2, w).is_zero())
      apply_block(std::nullopt, table.cumulative(h2, w));
    if (h2 == e && !table.cumulative(h1, w).is_zero())
      apply_block(table.cumulative(h1, w), std::nullopt);
    for (std::size_t len = 1; len + 1 <= w && !current.is_zero(); ++len) {
      const Subspace& lspan = table.exact(h1, len);
      if (lspan.is_zero()) continue;
      const Subspace& rspan = table.cumulative(h2, w - len);
      if (rspan.is_zero()) continue;
      apply_block(lspan, rspan);
    }
  }
  return current;
}

void TowerBuilder::build_next_level() {
  if (tower_.levels.empty()) throw error("tower: level zero must be built first");
  std::size_t s = tower_.built + 1;
  const BoundSet& b = tower_.bounds;
  // W_s from the formula; valid beyond N as well when n_levels is overridden.
  std::uint64_t w_s = (b.W.empty() ? 0 : b.W[0] - 1) + s;
  std::size_t w = static_cast<std::size_t>(opt_.w_override.value_or(w_s));

  const Grading& grading = tower_.hypotheses.grading;
  ProductSpanTable table = product_span_table(a_, grading, tower_.reps, w);
  std::vector<Subspace> row = grading.components;  // identity slot keeps A_e
  for (std::uint32_t g = 0; g < grading.group.order(); ++g) {
    if (g == grading.group.identity()) continue;
    row[g] = kernel_stage(g, table, w);
  }
  tower_.levels.push_back(std::move(row));
  tower_.built = s;
  select_representatives(s);
}

void TowerBuilder::select_representatives(std::size_t level) {
  const Grading& grading = tower_.hypotheses.grading;
  std::uint32_t e = grading.group.identity();
  for (std::uint32_t g = 0; g < grading.group.order(); ++g) {
    if (g == e) continue;
    QuotientData qd = quotient_data(tower_.levels[0][g], tower_.levels[level][g]);
    for (const Vec& v : qd.complement)
      tower_.reps.push_back({v, g, static_cast<std::uint32_t>(level), RepKind::quotient_basis});
  }
  for (std::uint32_t g = 0; g < grading.group.order(); ++g) {
    if (g == e) continue;
    pattern_pairs(g, tower_.levels[level][g], tower_.levels[level][grading.group.inv(g)],
                  static_cast<std::uint32_t>(level));
  }
}

void TowerBuilder::build_all() {
  build_level_zero();
  while (tower_.built < n_levels_) build_next_level();
}

std::vector<Representative> level_zero(const Algebra& a, const GradedHypotheses& hyp) {
  TowerBuilder builder(a, hyp);
  builder.build_level_zero();
  return builder.tower().reps;
}

CentralizerTower build_tower(const Algebra& a, const GradedHypotheses& hyp, TowerOptions opt) {
  TowerBuilder builder(a, hyp, opt);
  builder.build_all();
  return builder.take();
}

std::vector<Representative> CentralizerTower::reps_below(std::size_t s) const {
  std::vector<Representative> out;
  for (const Representative& r : reps)
    if (r.level < s) out.push_back(r);
  return out;
}

std::vector<TowerLevelSummary> CentralizerTower::summary() const {
  std::vector<TowerLevelSummary> out;
  std::vector<std::size_t> added(built + 1, 0);
  for (const Representative& r : reps)
    if (r.level <= built) ++added[r.level];
  for (std::size_t s = 0; s <= built; ++s) {
    TowerLevelSummary sum;
    sum.level = s;
    for (const Subspace& c : levels[s]) sum.dims.push_back(c.dim());
    sum.reps_added = added[s];
    out.push_back(std::move(sum));
  }
  return out;
}

std::vector<Subspace> brute_force_level(const Algebra& a, const CentralizerTower& tower,
                                        std::size_t s, std::size_t w_override) {
  if (w_override > 4) throw error("brute force: W must be at most 4");
  if (s == 0 || s > tower.built + 1) throw error("brute force: level out of range");
  const Grading& grading = tower.hypotheses.grading;
  const FiniteGroup& grp = grading.group;
  std::uint32_t e = grp.identity();
  std::vector<Representative> pool = tower.reps_below(s);

  double budget = 0;
  for (std::size_t k = 1, pw = 1; k <= w_override; ++k) {
    pw *= pool.size() ? pool.size() : 1;
    budget += static_cast<double>(pw);
    if (budget > 200000.0) throw error("brute force: combinatorial budget exceeded");
  }

  FieldSpec f = a.field();
  Subspace ie_ann = tower.hypotheses.ideal.carrier.annihilator();
  std::vector<Subspace> result = grading.components;

  for (std::uint32_t g = 0; g < grp.order(); ++g) {
    if (g == e) continue;
    const Subspace& component = grading.component(g);
    RrefAccumulator rows(f, component.dim());

    std::vector<std::size_t> choice;
    auto constrain = [&](const std::vector<std::size_t>& tuple) {
      std::size_t k = tuple.size();
      // prefix[i] = z_1 ... z_i as element and grade; prefix[0] = unit
      std::vector<Vec> pre_el(k + 1), suf_el(k + 1);
      std::vector<std::uint32_t> pre_gr(k + 1), suf_gr(k + 1);
      pre_gr[0] = e;
      suf_gr[k] = e;
      for (std::size_t i = 0; i < k; ++i) {
        const Representative& r = pool[tuple[i]];
        pre_gr[i + 1] = grp.mul(pre_gr[i], r.grade);
        pre_el[i + 1] = i == 0 ? r.element : a.multiply(pre_el[i], r.element);
      }
      for (std::size_t i = k; i > 0; --i) {
        const Representative& r = pool[tuple[i - 1]];
        suf_gr[i - 1] = grp.mul(r.grade, suf_gr[i]);
        suf_el[i - 1] = i == k ? r.element : a.multiply(r.element, suf_el[i]);
      }
      for (std::size_t l = 1; l <= k + 1 && !rows.saturated(); ++l) {
        // insertion before position l: prefix of length l-1, suffix from l-1
        if (grp.mul(grp.mul(pre_gr[l - 1], g), suf_gr[l - 1]) != e) continue;
        bool has_pre = l > 1, has_suf = l <= k;
        std::vector<Vec> images(component.dim());
        for (std::size_t i = 0; i < component.dim(); ++i) {
          Vec w = component.basis_vector(i);
          if (has_pre) w = a.multiply(pre_el[l - 1], w);
          if (has_suf) w = a.multiply(w, suf_el[l - 1]);
          images[i] = std::move(w);
        }
        // one linear constraint over the component coordinates per
        // annihilator row of I_e
        for (std::size_t ci = 0; ci < ie_ann.dim() && !rows.saturated(); ++ci) {
          Vec c = ie_ann.basis_vector(ci);
          Vec row(component.dim(), 0);
          for (std::size_t i = 0; i < component.dim(); ++i) {
            std::uint64_t acc = 0;
            for (std::size_t t = 0; t < a.dim(); ++t)
              if (c[t] && images[i][t]) acc = f.add(acc, f.mul(c[t], images[i][t]));
            row[i] = acc;
          }
          rows.insert(std::move(row));
        }
      }
    };

    auto enumerate = [&](auto&& self, std::size_t remaining) -> void {
      if (rows.saturated()) return;
      if (!choice.empty()) constrain(choice);
      if (remaining == 0) return;
      for (std::size_t i = 0; i < pool.size(); ++i) {
        choice.push_back(i);
        self(self, remaining - 1);
        choice.pop_back();
      }
    };
    enumerate(enumerate, w_override);

    Subspace tker = kernel(rows.matrix());
    std::vector<Vec> amb;
    for (std::size_t i = 0; i < tker.dim(); ++i) {
      Vec t = tker.basis_vector(i);
      Vec v(a.dim(), 0);
      for (std::size_t j = 0; j < component.dim(); ++j) {
        if (!t[j]) continue;
        Vec b = component.basis_vector(j);
        for (std::size_t col = 0; col < a.dim(); ++col)
          if (b[col]) v[col] = f.add(v[col], f.mul(t[j], b[col]));
      }
      amb.push_back(std::move(v));
    }
    result[g] = Subspace::span(f, a.dim(), amb);
  }
  return result;
}

ValidationReport check_tower_chain(const CentralizerTower& tower) {
  ValidationReport rep;
  const FiniteGroup& grp = tower.hypotheses.grading.group;
  for (std::size_t s = 1; s <= tower.built; ++s)
    for (std::uint32_t g = 0; g < grp.order(); ++g) {
      if (g == grp.identity()) continue;
      if (!tower.component(g, s - 1).contains(tower.component(g, s))) {
        rep.add("tower.descending_chain", false,
                "A_" + grp.names()[g] + "(" + std::to_string(s) + ") escapes level " +
                    std::to_string(s - 1));
        return rep;
      }
    }
  rep.add("tower.descending_chain", true);
  return rep;
}

ValidationReport check_representative_counts(const CentralizerTower& tower) {
  ValidationReport rep;
  std::size_t n = tower.hypotheses.grading.group.order();
  std::size_t m = tower.hypotheses.m;
  std::vector<std::size_t> x_count(tower.built + 1, 0);
  std::size_t id_count = 0;
  for (const Representative& r : tower.reps) {
    if (r.kind == RepKind::identity_lift) ++id_count;
    if (r.kind == RepKind::pattern_pair) ++x_count[r.level];
  }
  rep.add("tower.identity_lift_count", id_count == m,
          "got " + std::to_string(id_count) + ", expected " + std::to_string(m));
  std::size_t level0_total = id_count + x_count[0];
  bool l0 = level0_total <= 2 * (n - 1) * m + m;
  rep.add("tower.level0_rep_bound", l0,
          std::to_string(level0_total) + " <= " + std::to_string(2 * (n - 1) * m + m));
  bool per_level = true;
  for (std::size_t s = 0; s <= tower.built; ++s)
    per_level = per_level && x_count[s] <= 2 * (n - 1) * m;
  rep.add("tower.pattern_rep_bound", per_level);
  return rep;
}

ValidationReport check_centralizer_shift(const Algebra& a, const CentralizerTower& tower) {
  ValidationReport rep;
  const FiniteGroup& grp = tower.hypotheses.grading.group;
  std::uint32_t e = grp.identity();
  bool all = true;
  std::string witness;

  // span the b-representatives per (grade, level); products are bilinear so
  // the per-element statement is equivalent to the span containment
  std::map<std::pair<std::uint32_t, std::uint32_t>, std::vector<Vec>> b_reps;
  for (const Representative& r : tower.reps)
    if (r.kind == RepKind::quotient_basis && r.level + 1 <= tower.built)
      b_reps[{r.grade, r.level}].push_back(r.element);

  for (const auto& [key, elements] : b_reps) {
    auto [h, l] = key;
    Subspace rep_span = Subspace::span(a.field(), a.dim(), elements);
    for (std::uint32_t g = 0; g < grp.order() && all; ++g) {
      if (g == e) continue;
      std::uint32_t gh = grp.mul(g, h);
      if (gh != e &&
          !tower.component(gh, l).contains(
              subspace_product(a, tower.component(g, l + 1), rep_span))) {
        all = false;
        witness = "y_" + grp.names()[g] + "(" + std::to_string(l + 1) + ") * b_" +
                  grp.names()[h] + "(" + std::to_string(l) + ")";
      }
      std::uint32_t hg = grp.mul(h, g);
      if (all && hg != e &&
          !tower.component(hg, l).contains(
              subspace_product(a, rep_span, tower.component(g, l + 1)))) {
        all = false;
        witness = "b_" + grp.names()[h] + "(" + std::to_string(l) + ") * y_" +
                  grp.names()[g] + "(" + std::to_string(l + 1) + ")";
      }
    }
    if (!all) break;
  }
  rep.add("tower.centralizer_shift", all, witness);
  return rep;
}

ValidationReport check_component_absorption(const Algebra& a, const CentralizerTower& tower) {
  ValidationReport rep;
  const FiniteGroup& grp = tower.hypotheses.grading.group;
  const Subspace& i_e = tower.hypotheses.ideal.carrier;
  std::uint32_t e = grp.identity();
  for (std::size_t k = 0; k + 1 <= tower.built; ++k)
    for (std::uint32_t g = 0; g < grp.order(); ++g) {
      if (g == e) continue;
      std::uint32_t gi = grp.inv(g);
      Subspace lhs = subspace_product(a, tower.component(gi, 0), tower.component(g, k + 1));
      Subspace rhs =
          sum(subspace_product(a, tower.component(gi, k), tower.component(g, k)), i_e);
      if (!rhs.contains(lhs)) {
        rep.add("tower.component_absorption", false,
                "A_" + grp.names()[gi] + " * A_" + grp.names()[g] + "(" + std::to_string(k + 1) +
                    ") escapes level " + std::to_string(k));
        return rep;
      }
      Subspace lhs2 = subspace_product(a, tower.component(g, k + 1), tower.component(gi, 0));
      Subspace rhs2 =
          sum(subspace_product(a, tower.component(g, k), tower.component(gi, k)), i_e);
      if (!rhs2.contains(lhs2)) {
        rep.add("tower.component_absorption", false,
                "A_" + grp.names()[g] + "(" + std::to_string(k + 1) + ") * A_" + grp.names()[gi] +
                    " escapes level " + std::to_string(k));
        return rep;
      }
    }
  rep.add("tower.component_absorption", true);
  return rep;
}

ValidationReport check_insertion_property(const Algebra& a, const CentralizerTower& tower,
                                          std::size_t samples, std::uint64_t seed) {
  ValidationReport rep;
  const Grading& grading = tower.hypotheses.grading;
  const FiniteGroup& grp = grading.group;
  const Subspace& i_e = tower.hypotheses.ideal.carrier;
  std::uint32_t e = grp.identity();
  FieldSpec f = a.field();
  SplitMix64 rng(seed);

  std::vector<std::uint32_t> grades;
  for (std::uint32_t g = 0; g < grp.order(); ++g)
    if (g != e) grades.push_back(g);
  if (tower.built == 0 || grades.empty()) {
    rep.add("tower.insertion_property", true, "no levels above zero to sample");
    return rep;
  }

  std::size_t checked = 0, attempts = 0;
  const std::size_t max_attempts = samples * 50;
  while (checked < samples && attempts < max_attempts) {
    ++attempts;
    std::size_t s = 1 + rng.below(tower.built ? tower.built : 1);
    std::vector<Representative> pool = tower.reps_below(s);
    if (pool.empty()) continue;
    std::uint32_t g = grades[rng.below(grades.size())];
    const Subspace& comp = tower.component(g, s);
    if (comp.is_zero()) continue;
    std::uint64_t w_s = tower.bounds.w(std::min(s, tower.bounds.N));
    std::size_t k = 1 + rng.below(std::min<std::uint64_t>(w_s, 8));

    std::vector<std::size_t> tuple(k);
    for (auto& t : tuple) t = rng.below(pool.size());
    // valid insertion positions
    std::vector<std::uint32_t> pre(k + 1);
    pre[0] = e;
    for (std::size_t i = 0; i < k; ++i) pre[i + 1] = grp.mul(pre[i], pool[tuple[i]].grade);
    std::vector<std::size_t> valid;
    for (std::size_t l = 1; l <= k + 1; ++l) {
      std::uint32_t suffix = grp.mul(grp.inv(pre[l - 1]), pre[k]);
      if (grp.mul(grp.mul(pre[l - 1], g), suffix) == e) valid.push_back(l);
    }
    if (valid.empty()) continue;
    std::size_t l = valid[rng.below(valid.size())];

    Vec y(a.dim(), 0);
    for (std::size_t i = 0; i < comp.dim(); ++i) {
      std::uint64_t c = rng.below(f.p);
      if (i == 0 && c == 0) c = 1;  // avoid the all-zero sample
      if (!c) continue;
      Vec b = comp.basis_vector(i);
      for (std::size_t col = 0; col < a.dim(); ++col)
        if (b[col]) y[col] = f.add(y[col], f.mul(c, b[col]));
    }
    Vec prod = y;
    for (std::size_t i = l - 1; i > 0; --i) prod = a.multiply(pool[tuple[i - 1]].element, prod);
    for (std::size_t i = l; i <= k; ++i) prod = a.multiply(prod, pool[tuple[i - 1]].element);
    if (!i_e.member(prod)) {
      rep.add("tower.insertion_property", false,
              "tuple of length " + std::to_string(k) + " at level " + std::to_string(s) +
                  " grade " + grp.names()[g] + " does not land in I_e");
      return rep;
    }
    ++checked;
  }
  rep.add("tower.insertion_property", true,
          "verified " + std::to_string(checked) + " sampled insertions");
  return rep;
}

}  // namespace nilcert
