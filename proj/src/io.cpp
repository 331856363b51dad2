#include "nilcert/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "nilcert/version.hpp"

namespace nilcert {

using nlohmann::json;

FiniteGroup InstanceData::group() const {
  if (!has_group()) throw error("instance: group block missing");
  return FiniteGroup::validated(*group_table, group_names.value_or(std::vector<std::string>{}));
}

Grading InstanceData::grading() const {
  if (!has_grading()) throw error("instance: grading block missing");
  FiniteGroup grp = group();
  std::size_t n = grp.order();
  std::vector<std::vector<Vec>> per_grade(n);
  for (std::size_t i = 0; i < algebra.dim(); ++i) {
    if ((*grades)[i] >= n) throw error("instance: grade index out of range");
    per_grade[(*grades)[i]].push_back(algebra.basis_element(i));
  }
  std::vector<Subspace> components;
  components.reserve(n);
  for (std::size_t g = 0; g < n; ++g)
    components.push_back(Subspace::span(field, algebra.dim(), per_grade[g]));
  return Grading{std::move(grp), std::move(components)};
}

GroupAction InstanceData::action() const {
  if (!has_action()) throw error("instance: action block missing");
  return GroupAction{group(), *action_matrices};
}

Subspace InstanceData::ideal_subspace() const {
  if (!ideal_vectors) throw error("instance: ideal block missing");
  return Subspace::span(field, algebra.dim(), *ideal_vectors);
}

PrimeSeries InstanceData::series() const {
  if (!series_subgroups) throw error("instance: series block missing");
  return PrimeSeries{*series_subgroups};
}

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw error("instance" + path + ": " + what);
}

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path, "expected an object");
}

void expect_keys(const json& j, const std::set<std::string>& allowed,
                 const std::set<std::string>& required, const std::string& path) {
  expect_object(j, path);
  for (auto it = j.begin(); it != j.end(); ++it)
    if (!allowed.count(it.key())) fail(path, "unknown key '" + it.key() + "'");
  for (const std::string& k : required)
    if (!j.contains(k)) fail(path, "missing key '" + k + "'");
}

std::uint64_t get_uint(const json& j, const std::string& path) {
  if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<long long>() >= 0))
    fail(path, "expected a nonnegative integer");
  return j.get<std::uint64_t>();
}

std::uint64_t get_scalar(const json& j, FieldSpec f, const std::string& path) {
  if (!j.is_number_integer()) fail(path, "expected an integer scalar");
  return f.canon(j.get<long long>());
}

Vec get_vector(const json& j, FieldSpec f, std::size_t dim, const std::string& path) {
  if (!j.is_array() || j.size() != dim)
    fail(path, "expected a vector of length " + std::to_string(dim));
  Vec v(dim);
  for (std::size_t i = 0; i < dim; ++i) v[i] = get_scalar(j[i], f, path + "[" + std::to_string(i) + "]");
  return v;
}

Matrix get_matrix(const json& j, FieldSpec f, std::size_t dim, const std::string& path) {
  if (!j.is_array() || j.size() != dim)
    fail(path, "expected " + std::to_string(dim) + " matrix rows");
  Matrix m(f, dim, dim);
  for (std::size_t r = 0; r < dim; ++r)
    m.set_row(r, get_vector(j[r], f, dim, path + "[" + std::to_string(r) + "]"));
  return m;
}

}  // namespace

InstanceData parse_instance(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw error(std::string("instance: not valid JSON: ") + e.what());
  }
  expect_keys(j, {"field", "algebra", "group", "grading", "action", "ideal", "series"},
              {"field", "algebra"}, "");

  InstanceData data;
  expect_keys(j["field"], {"p"}, {"p"}, ".field");
  data.field = make_field(get_uint(j["field"]["p"], ".field.p"));

  const json& alg = j["algebra"];
  expect_keys(alg, {"dim", "basis_names", "products"}, {"dim", "products"}, ".algebra");
  std::size_t dim = get_uint(alg["dim"], ".algebra.dim");
  std::vector<std::string> names;
  if (alg.contains("basis_names")) {
    if (!alg["basis_names"].is_array() || alg["basis_names"].size() != dim)
      fail(".algebra.basis_names", "expected " + std::to_string(dim) + " names");
    for (const auto& s : alg["basis_names"]) {
      if (!s.is_string()) fail(".algebra.basis_names", "expected strings");
      names.push_back(s.get<std::string>());
    }
  }
  std::vector<ProductTerm> terms;
  if (!alg["products"].is_array()) fail(".algebra.products", "expected an array");
  for (std::size_t t = 0; t < alg["products"].size(); ++t) {
    const json& q = alg["products"][t];
    std::string path = ".algebra.products[" + std::to_string(t) + "]";
    if (!q.is_array() || q.size() != 4) fail(path, "expected a quadruple [i, j, k, coeff]");
    std::uint64_t i = get_uint(q[0], path), jj = get_uint(q[1], path), k = get_uint(q[2], path);
    if (i >= dim || jj >= dim || k >= dim) fail(path, "basis index out of range");
    terms.push_back({static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(jj),
                     static_cast<std::uint32_t>(k), get_scalar(q[3], data.field, path)});
  }
  data.algebra = Algebra(data.field, dim, std::move(names), terms);

  if (j.contains("group")) {
    expect_keys(j["group"], {"order", "table", "names"}, {"order", "table"}, ".group");
    std::size_t n = get_uint(j["group"]["order"], ".group.order");
    const json& tb = j["group"]["table"];
    if (!tb.is_array() || tb.size() != n) fail(".group.table", "expected " + std::to_string(n) + " rows");
    std::vector<std::vector<std::uint32_t>> table(n, std::vector<std::uint32_t>(n));
    for (std::size_t r = 0; r < n; ++r) {
      if (!tb[r].is_array() || tb[r].size() != n) fail(".group.table", "row " + std::to_string(r));
      for (std::size_t c = 0; c < n; ++c) {
        std::uint64_t v = get_uint(tb[r][c], ".group.table");
        if (v >= n) fail(".group.table", "entry out of range in row " + std::to_string(r));
        table[r][c] = static_cast<std::uint32_t>(v);
      }
    }
    // group axioms are checked by validate_instance, not at parse time, so
    // a tampered table still parses and fails validation with a witness
    if (j["group"].contains("names")) {
      if (!j["group"]["names"].is_array() || j["group"]["names"].size() != n)
        fail(".group.names", "expected " + std::to_string(n) + " names");
      std::vector<std::string> gnames;
      for (const auto& s : j["group"]["names"]) {
        if (!s.is_string()) fail(".group.names", "expected strings");
        gnames.push_back(s.get<std::string>());
      }
      data.group_names = std::move(gnames);
    }
    data.group_table = std::move(table);
  }

  if (j.contains("grading")) {
    if (!data.has_group()) fail(".grading", "requires a group block");
    expect_keys(j["grading"], {"grades"}, {"grades"}, ".grading");
    const json& gr = j["grading"]["grades"];
    if (!gr.is_array() || gr.size() != dim)
      fail(".grading.grades", "expected one grade per basis vector");
    std::vector<std::uint32_t> grades(dim);
    for (std::size_t i = 0; i < dim; ++i) {
      std::uint64_t v = get_uint(gr[i], ".grading.grades");
      if (v >= data.group_table->size()) fail(".grading.grades", "grade index out of range");
      grades[i] = static_cast<std::uint32_t>(v);
    }
    data.grades = std::move(grades);
  }

  if (j.contains("action")) {
    if (!data.has_group()) fail(".action", "requires a group block");
    expect_keys(j["action"], {"matrices", "generators"}, {}, ".action");
    std::size_t n = data.group_table->size();
    if (j["action"].contains("matrices") == j["action"].contains("generators"))
      fail(".action", "provide exactly one of 'matrices' or 'generators'");
    std::vector<Matrix> mats;
    if (j["action"].contains("matrices")) {
      const json& ms = j["action"]["matrices"];
      if (!ms.is_array() || ms.size() != n)
        fail(".action.matrices", "expected one matrix per group element");
      for (std::size_t g = 0; g < n; ++g)
        mats.push_back(get_matrix(ms[g], data.field, dim,
                                  ".action.matrices[" + std::to_string(g) + "]"));
    } else {
      const json& gens = j["action"]["generators"];
      if (!gens.is_array() || gens.empty()) fail(".action.generators", "expected a nonempty array");
      // completion follows the raw table; axioms are validated separately
      const auto& raw = *data.group_table;
      std::size_t ident = n;
      for (std::size_t c = 0; c < n && ident == n; ++c) {
        bool ok = true;
        for (std::size_t i = 0; i < n; ++i)
          if (raw[c][i] != i || raw[i][c] != i) { ok = false; break; }
        if (ok) ident = c;
      }
      if (ident == n) fail(".action.generators", "group table has no identity");
      std::vector<std::optional<Matrix>> known(n);
      known[ident] = Matrix::identity(data.field, dim);
      for (std::size_t t = 0; t < gens.size(); ++t) {
        std::string path = ".action.generators[" + std::to_string(t) + "]";
        expect_keys(gens[t], {"element", "matrix"}, {"element", "matrix"}, path);
        std::uint64_t el = get_uint(gens[t]["element"], path + ".element");
        if (el >= n) fail(path, "element index out of range");
        known[el] = get_matrix(gens[t]["matrix"], data.field, dim, path + ".matrix");
      }
      // complete by products until stable
      for (bool grew = true; grew;) {
        grew = false;
        for (std::uint32_t x = 0; x < n; ++x)
          for (std::uint32_t y = 0; y < n; ++y) {
            if (!known[x] || !known[y]) continue;
            std::uint32_t xy = raw[x][y];
            if (!known[xy]) {
              known[xy] = known[x]->mul(*known[y]);
              grew = true;
            }
          }
      }
      for (std::size_t g = 0; g < n; ++g) {
        if (!known[g])
          fail(".action.generators", "generators do not reach element " + std::to_string(g));
        mats.push_back(std::move(*known[g]));
      }
    }
    data.action_matrices = std::move(mats);
  }

  if (j.contains("ideal")) {
    expect_keys(j["ideal"], {"vectors"}, {"vectors"}, ".ideal");
    const json& vs = j["ideal"]["vectors"];
    if (!vs.is_array()) fail(".ideal.vectors", "expected an array");
    std::vector<Vec> vectors;
    for (std::size_t t = 0; t < vs.size(); ++t)
      vectors.push_back(get_vector(vs[t], data.field, dim,
                                   ".ideal.vectors[" + std::to_string(t) + "]"));
    data.ideal_vectors = std::move(vectors);
  }

  if (j.contains("series")) {
    if (!data.has_group()) fail(".series", "requires a group block");
    expect_keys(j["series"], {"subgroups"}, {"subgroups"}, ".series");
    const json& sg = j["series"]["subgroups"];
    if (!sg.is_array()) fail(".series.subgroups", "expected an array");
    std::vector<std::vector<std::uint32_t>> chain;
    for (std::size_t t = 0; t < sg.size(); ++t) {
      if (!sg[t].is_array()) fail(".series.subgroups", "term " + std::to_string(t));
      std::vector<std::uint32_t> term;
      for (const auto& x : sg[t]) {
        std::uint64_t v = get_uint(x, ".series.subgroups");
        if (v >= data.group_table->size()) fail(".series.subgroups", "element out of range");
        term.push_back(static_cast<std::uint32_t>(v));
      }
      std::sort(term.begin(), term.end());
      chain.push_back(std::move(term));
    }
    data.series_subgroups = std::move(chain);
  }
  return data;
}

std::string emit_instance(const InstanceData& data) {
  json j;
  j["field"] = {{"p", data.field.p}};
  json alg;
  alg["dim"] = data.algebra.dim();
  alg["basis_names"] = data.algebra.basis_names();
  json products = json::array();
  for (const ProductTerm& t : data.algebra.product_terms())
    products.push_back({t.i, t.j, t.k, t.c});
  alg["products"] = std::move(products);
  j["algebra"] = std::move(alg);
  if (data.group_table) {
    json grp = {{"order", data.group_table->size()}, {"table", *data.group_table}};
    if (data.group_names) grp["names"] = *data.group_names;
    j["group"] = std::move(grp);
  }
  if (data.grades) j["grading"] = {{"grades", *data.grades}};
  if (data.action_matrices) {
    json mats = json::array();
    for (const Matrix& m : *data.action_matrices) {
      json rows = json::array();
      for (std::size_t r = 0; r < m.rows(); ++r) rows.push_back(m.row(r));
      mats.push_back(std::move(rows));
    }
    j["action"] = {{"matrices", std::move(mats)}};
  }
  if (data.ideal_vectors) j["ideal"] = {{"vectors", *data.ideal_vectors}};
  if (data.series_subgroups) j["series"] = {{"subgroups", *data.series_subgroups}};
  return j.dump(2) + "\n";
}

ValidationReport validate_instance(const InstanceData& data) {
  ValidationReport rep;
  auto viol = data.algebra.associativity_violations(1);
  rep.add("algebra.associative", viol.empty(),
          viol.empty() ? ""
                       : "basis triple (" + std::to_string(viol[0][0]) + "," +
                             std::to_string(viol[0][1]) + "," + std::to_string(viol[0][2]) + ")");
  bool group_ok = true;
  if (data.group_table) {
    ValidationReport g = FiniteGroup::axioms(*data.group_table);
    group_ok = g.ok();
    for (auto& c : g.checks) rep.checks.push_back(std::move(c));
  }
  if (data.has_grading() && group_ok) {
    ValidationReport g = validate_grading(data.algebra, data.grading());
    for (auto& c : g.checks) rep.checks.push_back(std::move(c));
  }
  if (data.has_action() && group_ok) {
    ValidationReport g = validate_action(data.algebra, data.action());
    for (auto& c : g.checks) rep.checks.push_back(std::move(c));
  }
  if (data.ideal_vectors) {
    Subspace ideal = data.ideal_subspace();
    if (data.has_grading() && group_ok) {
      const Grading grading = data.grading();
      const Subspace& a_e = grading.identity_component();
      bool inside = a_e.contains(ideal);
      rep.add("ideal.inside_identity_component", inside);
      if (inside) {
        rep.add("ideal.closed_in_identity_component",
                ideal.contains(subspace_product(data.algebra, a_e, ideal)) &&
                    ideal.contains(subspace_product(data.algebra, ideal, a_e)));
        auto d = nilpotency_index(data.algebra, ideal);
        rep.add("ideal.nilpotent", d.has_value(),
                d ? "index " + std::to_string(*d) : "power chain stabilizes nonzero");
      }
    } else if (data.has_action() && group_ok) {
      Subspace fixed = fixed_subalgebra(data.algebra, data.action());
      bool inside = fixed.contains(ideal);
      rep.add("ideal.inside_fixed_subalgebra", inside);
      if (inside) {
        rep.add("ideal.closed_in_fixed_subalgebra",
                ideal.contains(subspace_product(data.algebra, fixed, ideal)) &&
                    ideal.contains(subspace_product(data.algebra, ideal, fixed)));
        auto d = nilpotency_index(data.algebra, ideal);
        rep.add("ideal.nilpotent", d.has_value(),
                d ? "index " + std::to_string(*d) : "power chain stabilizes nonzero");
      }
    }
  }
  if (data.series_subgroups && data.has_group() && group_ok) {
    ValidationReport g = validate_series(data.group(), data.series());
    for (auto& c : g.checks) rep.checks.push_back(std::move(c));
  }
  return rep;
}

std::string digest64(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx", static_cast<unsigned long long>(h));
  return buf;
}

json bounds_json(const BoundSet& b) {
  return json{{"n", b.n},       {"d", b.d}, {"nd", b.nd}, {"h", b.h}, {"h_pow_d", b.h_pow_d},
              {"N", b.N},       {"W", b.W}, {"H", b.H},   {"T", b.T}, {"S", b.S},
              {"U", b.U},       {"Q", b.Q}, {"nQ", b.nQ}};
}

json checks_json(const std::vector<CheckResult>& checks) {
  json out = json::array();
  for (const CheckResult& c : checks) {
    json e = {{"name", c.name}, {"pass", c.pass}};
    if (!c.witness.empty()) e["witness"] = c.witness;
    out.push_back(std::move(e));
  }
  return out;
}

json subspace_json(const Subspace& s) {
  json vectors = json::array();
  for (std::size_t i = 0; i < s.dim(); ++i) vectors.push_back(s.basis_vector(i));
  return json{{"ambient_dim", s.ambient()}, {"dim", s.dim()}, {"vectors", std::move(vectors)}};
}

namespace {

json report_header(const std::string& kind, const std::string& digest) {
  return json{{"tool", "nilcert"}, {"version", NILCERT_VERSION}, {"kind", kind},
              {"input_digest", digest}};
}

json tower_summary_json(const std::vector<TowerLevelSummary>& summary) {
  json out = json::array();
  for (const TowerLevelSummary& s : summary)
    out.push_back({{"level", s.level}, {"dims", s.dims}, {"reps_added", s.reps_added}});
  return out;
}

}  // namespace

json report_json(const ConstructionReport& rep, const std::string& digest) {
  json j = report_header("theorem2", digest);
  j["bounds"] = bounds_json(rep.bounds);
  j["checks"] = checks_json(rep.checks);
  j["all_pass"] = rep.all_pass();
  j["ideal"] = subspace_json(rep.ideal.carrier);
  j["nilpotent"] = rep.nilpotent;
  j["achieved_index"] = rep.achieved_index;
  j["achieved_codim"] = rep.achieved_codim;
  j["tower"] = tower_summary_json(rep.tower_summary);
  return j;
}

json theorem1_json(const Theorem1Report& rep, const std::string& digest) {
  json j = report_header("theorem1", digest);
  j["checks"] = checks_json(rep.checks);
  j["all_pass"] = rep.all_pass();
  j["ideal"] = subspace_json(rep.ideal.carrier);
  j["nilpotent"] = rep.nilpotent;
  j["achieved_index"] = rep.achieved_index;
  j["achieved_codim"] = rep.achieved_codim;
  j["composed_bound"] = rep.composed_bound;
  json stages = json::array();
  for (const Theorem1Stage& s : rep.stages)
    stages.push_back({{"kind", s.kind},
                      {"group_order", s.group_order},
                      {"stage_bound", s.stage_bound},
                      {"achieved_index", s.achieved_index},
                      {"detail", s.detail}});
  j["stages"] = std::move(stages);
  j["base_stage_count"] = rep.base_stage_count();
  return j;
}

json lift_json(const LiftReport& rep, const std::string& digest) {
  json j = report_header("invariant-lift", digest);
  j["checks"] = checks_json(rep.checks);
  j["all_pass"] = rep.all_pass();
  j["ideal"] = subspace_json(rep.ideal.carrier);
  j["nilpotent"] = rep.nilpotent;
  j["achieved_index"] = rep.index;
  j["translate_index"] = rep.translate_index;
  j["h"] = rep.h;
  j["h_bound"] = rep.h_bound;
  return j;
}

json bergman_json(const BergmanReport& rep, const std::string& digest) {
  json j = report_header("bi-check", digest);
  j["n"] = rep.n;
  j["d"] = rep.d;
  j["h"] = rep.h;
  j["bound"] = rep.bound;
  j["algebra_nilpotent"] = rep.algebra_nilpotent;
  j["achieved_index"] = rep.index;
  j["all_pass"] = rep.within_bound;
  return j;
}

json validation_json(const ValidationReport& rep, const std::string& digest) {
  json j = report_header("validate", digest);
  j["checks"] = checks_json(rep.checks);
  j["all_pass"] = rep.ok();
  return j;
}

json tower_dump_json(const CentralizerTower& tower) {
  const FiniteGroup& grp = tower.hypotheses.grading.group;
  json levels = json::array();
  for (std::size_t s = 0; s <= tower.built; ++s) {
    json grades = json::array();
    for (std::uint32_t g = 0; g < grp.order(); ++g)
      grades.push_back({{"grade", g},
                        {"name", grp.names()[g]},
                        {"dim", tower.component(g, s).dim()},
                        {"basis", subspace_json(tower.component(g, s))["vectors"]}});
    levels.push_back({{"level", s}, {"grades", std::move(grades)}});
  }
  json reps = json::array();
  for (const Representative& r : tower.reps)
    reps.push_back({{"grade", r.grade},
                    {"level", r.level},
                    {"kind", rep_kind_name(r.kind)},
                    {"element", r.element}});
  json j;
  j["bounds"] = bounds_json(tower.bounds);
  j["levels"] = std::move(levels);
  j["representatives"] = std::move(reps);
  return j;
}

void write_file_atomic(const std::string& path, const std::string& text) {
  namespace fs = std::filesystem;
  fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw error("io: cannot open " + tmp.string() + " for writing");
    out << text;
    if (!out.flush()) throw error("io: write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("io: cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace nilcert
