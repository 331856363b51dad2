#include "nilcert/group.hpp"

#include <algorithm>
#include <set>

namespace nilcert {

ValidationReport FiniteGroup::axioms(const std::vector<std::vector<std::uint32_t>>& table) {
  ValidationReport rep;
  std::size_t n = table.size();
  if (n == 0) {
    rep.add("group.nonempty", false, "empty table");
    return rep;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (table[i].size() != n) {
      rep.add("group.table_shape", false, "row " + std::to_string(i));
      return rep;
    }
    for (std::uint32_t v : table[i])
      if (v >= n) {
        rep.add("group.table_range", false, "row " + std::to_string(i));
        return rep;
      }
  }
  rep.add("group.table_shape", true);

  std::size_t e = n;
  for (std::size_t c = 0; c < n; ++c) {
    bool ok = true;
    for (std::size_t i = 0; i < n; ++i)
      if (table[c][i] != i || table[i][c] != i) { ok = false; break; }
    if (ok) { e = c; break; }
  }
  rep.add("group.identity", e < n, e < n ? "" : "no two-sided identity");
  if (e == n) return rep;

  for (std::size_t a = 0; a < n; ++a) {
    bool has_inv = false;
    for (std::size_t b = 0; b < n; ++b)
      if (table[a][b] == e && table[b][a] == e) { has_inv = true; break; }
    if (!has_inv) {
      rep.add("group.inverses", false, "element " + std::to_string(a));
      return rep;
    }
  }
  rep.add("group.inverses", true);

  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      for (std::size_t c = 0; c < n; ++c)
        if (table[table[a][b]][c] != table[a][table[b][c]]) {
          rep.add("group.associativity", false,
                  "(" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + ")");
          return rep;
        }
  rep.add("group.associativity", true);
  return rep;
}

FiniteGroup FiniteGroup::validated(std::vector<std::vector<std::uint32_t>> table,
                                   std::vector<std::string> names) {
  ValidationReport rep = axioms(table);
  if (!rep.ok()) throw error("group: " + rep.first_failure());
  FiniteGroup g;
  std::size_t n = table.size();
  g.table_ = std::move(table);
  for (std::uint32_t c = 0; c < n; ++c) {
    bool ok = true;
    for (std::uint32_t i = 0; i < n; ++i)
      if (g.table_[c][i] != i || g.table_[i][c] != i) { ok = false; break; }
    if (ok) { g.e_ = c; break; }
  }
  g.inv_.resize(n);
  for (std::uint32_t a = 0; a < n; ++a)
    for (std::uint32_t b = 0; b < n; ++b)
      if (g.table_[a][b] == g.e_ && g.table_[b][a] == g.e_) { g.inv_[a] = b; break; }
  if (names.empty()) {
    names.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
      names.push_back(i == g.e_ ? "e" : "g" + std::to_string(i));
  }
  if (names.size() != n) throw error("group: names size mismatch");
  g.names_ = std::move(names);
  return g;
}

FiniteGroup FiniteGroup::trivial() { return cyclic(1); }

FiniteGroup FiniteGroup::cyclic(std::size_t n) {
  if (n == 0) throw error("group: cyclic order must be positive");
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = static_cast<std::uint32_t>((i + j) % n);
  return validated(std::move(t));
}

FiniteGroup FiniteGroup::symmetric3() {
  // permutations of {0,1,2} in lexicographic one-line order:
  // 012, 021, 102, 120, 201, 210
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  auto compose = [&](int a, int b) {  // (a*b)(x) = a(b(x))
    int c[3];
    for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
    for (int i = 0; i < 6; ++i)
      if (perms[i][0] == c[0] && perms[i][1] == c[1] && perms[i][2] == c[2]) return i;
    return -1;
  };
  std::vector<std::vector<std::uint32_t>> t(6, std::vector<std::uint32_t>(6));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) t[a][b] = static_cast<std::uint32_t>(compose(a, b));
  return validated(std::move(t));
}

FiniteGroup FiniteGroup::named(const std::string& name) {
  if (name == "s3") return symmetric3();
  if (name.size() >= 2 && name[0] == 'c') {
    std::size_t n = std::stoul(name.substr(1));
    return cyclic(n);
  }
  throw error("group: unknown name '" + name + "' (use c<N> or s3)");
}

std::uint32_t FiniteGroup::element_order(std::uint32_t a) const {
  std::uint32_t k = 1, x = a;
  while (x != e_) {
    x = mul(x, a);
    ++k;
  }
  return k;
}

bool is_subgroup(const FiniteGroup& g, const std::vector<std::uint32_t>& subset) {
  std::set<std::uint32_t> s(subset.begin(), subset.end());
  if (!s.count(g.identity())) return false;
  for (std::uint32_t a : s) {
    if (a >= g.order()) return false;
    if (!s.count(g.inv(a))) return false;
    for (std::uint32_t b : s)
      if (!s.count(g.mul(a, b))) return false;
  }
  return true;
}

bool is_normal_in(const FiniteGroup& g, const std::vector<std::uint32_t>& ambient,
                  const std::vector<std::uint32_t>& subgroup) {
  std::set<std::uint32_t> h(subgroup.begin(), subgroup.end());
  for (std::uint32_t a : ambient)
    for (std::uint32_t x : subgroup)
      if (!h.count(g.mul(g.mul(a, x), g.inv(a)))) return false;
  return true;
}

bool is_normal(const FiniteGroup& g, const std::vector<std::uint32_t>& subgroup) {
  if (!is_subgroup(g, subgroup)) throw error("group: is_normal requires a subgroup");
  std::vector<std::uint32_t> all(g.order());
  for (std::uint32_t i = 0; i < g.order(); ++i) all[i] = i;
  return is_normal_in(g, all, subgroup);
}

ValidationReport validate_series(const FiniteGroup& g, const PrimeSeries& s) {
  ValidationReport rep;
  const auto& ch = s.chain;
  if (ch.empty()) {
    rep.add("series.nonempty", false);
    return rep;
  }
  bool ends_ok = ch.front() == std::vector<std::uint32_t>{g.identity()} && ch.back().size() == g.order();
  rep.add("series.endpoints", ends_ok,
          ends_ok ? "" : "must run from {e} to the whole group");
  std::uint64_t prod = 1;
  for (std::size_t i = 0; i < ch.size(); ++i) {
    if (!is_subgroup(g, ch[i])) {
      rep.add("series.subgroup", false, "term " + std::to_string(i));
      return rep;
    }
  }
  rep.add("series.subgroup", true);
  for (std::size_t i = 0; i + 1 < ch.size(); ++i) {
    std::set<std::uint32_t> next(ch[i + 1].begin(), ch[i + 1].end());
    bool contained = true;
    for (std::uint32_t x : ch[i]) contained = contained && next.count(x);
    bool strict = contained && ch[i].size() < ch[i + 1].size();
    if (!strict) {
      rep.add("series.strict_containment", false, "step " + std::to_string(i));
      return rep;
    }
    if (!is_normal_in(g, ch[i + 1], ch[i])) {
      rep.add("series.normal_step", false, "step " + std::to_string(i));
      return rep;
    }
    std::size_t q = ch[i + 1].size() / ch[i].size();
    if (ch[i + 1].size() % ch[i].size() != 0 || !is_prime(q)) {
      rep.add("series.prime_quotient", false,
              "step " + std::to_string(i) + " index " + std::to_string(q));
      return rep;
    }
    prod *= q;
  }
  rep.add("series.strict_containment", true);
  rep.add("series.normal_step", true);
  rep.add("series.prime_quotient", true);
  rep.add("series.order_product", prod == g.order());
  return rep;
}

std::vector<std::uint32_t> generated_subgroup(const FiniteGroup& g,
                                              const std::vector<std::uint32_t>& gens) {
  std::set<std::uint32_t> s{g.identity()};
  std::vector<std::uint32_t> frontier{g.identity()};
  for (std::uint32_t x : gens)
    if (s.insert(x).second) frontier.push_back(x);
  while (!frontier.empty()) {
    std::vector<std::uint32_t> next;
    for (std::uint32_t a : frontier)
      for (std::uint32_t b : std::vector<std::uint32_t>(s.begin(), s.end())) {
        for (std::uint32_t c : {g.mul(a, b), g.mul(b, a), g.inv(a)})
          if (s.insert(c).second) next.push_back(c);
      }
    frontier = std::move(next);
  }
  return {s.begin(), s.end()};
}

std::vector<std::vector<std::uint32_t>> all_subgroups(const FiniteGroup& g) {
  std::set<std::vector<std::uint32_t>> known;
  known.insert({g.identity()});
  std::vector<std::vector<std::uint32_t>> frontier{{g.identity()}};
  while (!frontier.empty()) {
    std::vector<std::vector<std::uint32_t>> next;
    for (const auto& h : frontier)
      for (std::uint32_t x = 0; x < g.order(); ++x) {
        if (std::binary_search(h.begin(), h.end(), x)) continue;
        std::vector<std::uint32_t> gens = h;
        gens.push_back(x);
        auto grown = generated_subgroup(g, gens);
        if (known.insert(grown).second) next.push_back(std::move(grown));
      }
    frontier = std::move(next);
  }
  return {known.begin(), known.end()};
}

std::optional<PrimeSeries> find_prime_series(const FiniteGroup& g, std::size_t search_bound) {
  if (g.order() > search_bound)
    throw error("group: order " + std::to_string(g.order()) +
                " exceeds the prime-series search bound " + std::to_string(search_bound));
  std::vector<std::vector<std::uint32_t>> chain;
  std::vector<std::uint32_t> current(g.order());
  for (std::uint32_t i = 0; i < g.order(); ++i) current[i] = i;
  chain.push_back(current);
  while (current.size() > 1) {
    SubgroupPresentation sp = subgroup_presentation(g, current);
    std::vector<std::uint32_t> best;
    for (const auto& h_local : all_subgroups(sp.group)) {
      std::size_t idx = sp.group.order() / h_local.size();
      if (sp.group.order() % h_local.size() != 0) continue;
      if (!is_prime(idx)) continue;
      if (!is_normal(sp.group, h_local)) continue;
      std::vector<std::uint32_t> h_ambient;
      h_ambient.reserve(h_local.size());
      for (std::uint32_t x : h_local) h_ambient.push_back(sp.element_of[x]);
      std::sort(h_ambient.begin(), h_ambient.end());
      if (best.empty() || h_ambient < best) best = std::move(h_ambient);
    }
    if (best.empty()) return std::nullopt;  // not soluble
    chain.push_back(best);
    current = std::move(best);
  }
  std::reverse(chain.begin(), chain.end());
  return PrimeSeries{std::move(chain)};
}

QuotientGroup quotient_group(const FiniteGroup& g, const std::vector<std::uint32_t>& normal_subgroup) {
  if (!is_subgroup(g, normal_subgroup)) throw error("group: quotient requires a subgroup");
  if (!is_normal(g, normal_subgroup)) throw error("group: quotient requires a normal subgroup");
  std::set<std::uint32_t> h(normal_subgroup.begin(), normal_subgroup.end());
  std::vector<std::uint32_t> coset_of(g.order(), npos32);
  std::vector<std::uint32_t> rep_of;  // coset index -> least representative
  for (std::uint32_t a = 0; a < g.order(); ++a) {
    if (coset_of[a] != npos32) continue;
    std::uint32_t idx = static_cast<std::uint32_t>(rep_of.size());
    rep_of.push_back(a);
    for (std::uint32_t x : h) coset_of[g.mul(a, x)] = idx;
  }
  std::size_t q = rep_of.size();
  std::vector<std::vector<std::uint32_t>> t(q, std::vector<std::uint32_t>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) t[i][j] = coset_of[g.mul(rep_of[i], rep_of[j])];
  std::vector<std::string> names;
  names.reserve(q);
  for (std::uint32_t r : rep_of) names.push_back(g.names()[r] + "H");
  FiniteGroup quot = FiniteGroup::validated(std::move(t), std::move(names));
  return QuotientGroup{std::move(quot), std::move(coset_of)};
}

SubgroupPresentation subgroup_presentation(const FiniteGroup& g,
                                           const std::vector<std::uint32_t>& subgroup) {
  if (!is_subgroup(g, subgroup)) throw error("group: not a subgroup");
  std::vector<std::uint32_t> elems = subgroup;
  std::sort(elems.begin(), elems.end());
  std::vector<std::uint32_t> index_of(g.order(), npos32);
  for (std::uint32_t i = 0; i < elems.size(); ++i) index_of[elems[i]] = i;
  std::size_t n = elems.size();
  std::vector<std::vector<std::uint32_t>> t(n, std::vector<std::uint32_t>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) t[i][j] = index_of[g.mul(elems[i], elems[j])];
  std::vector<std::string> names;
  names.reserve(n);
  for (std::uint32_t x : elems) names.push_back(g.names()[x]);
  FiniteGroup sub = FiniteGroup::validated(std::move(t), std::move(names));
  return SubgroupPresentation{std::move(sub), std::move(elems), std::move(index_of)};
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  if (n > 1) out.push_back(n);
  return out;
}

}  // namespace nilcert
