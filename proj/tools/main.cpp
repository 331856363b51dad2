#include <cstdio>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nilcert/factory.hpp"
#include "nilcert/rng.hpp"
#include "nilcert/version.hpp"

using nlohmann::json;
using namespace nilcert;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_checks_failed = 1;
constexpr int exit_invalid_input = 2;

void emit_output(const json& j, const std::string& out_path) {
  std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::fputs(text.c_str(), stdout);
  else
    write_file_atomic(out_path, text);
}

int fail_invalid(const std::string& message) {
  json j = {{"error", {{"kind", "invalid-input"}, {"message", message}}}};
  std::fputs((j.dump(2) + "\n").c_str(), stdout);
  return exit_invalid_input;
}

struct LoadedInstance {
  InstanceData data;
  std::string digest;
};

LoadedInstance load(const std::string& path) {
  std::string text = read_file(path);
  return {parse_instance(text), digest64(text)};
}

GradedHypotheses graded_hypotheses_of(const InstanceData& data) {
  if (!data.has_grading()) throw error("command requires a grading block (group + grading)");
  if (!data.ideal_vectors) throw error("command requires an ideal block (the ideal of A_e)");
  return make_graded_hypotheses(data.algebra, data.grading(), data.ideal_subspace());
}

InvariantHypotheses invariant_hypotheses_of(const InstanceData& data) {
  if (!data.has_action()) throw error("command requires an action block");
  if (!data.ideal_vectors) throw error("command requires an ideal block (the ideal of A^G)");
  return make_invariant_hypotheses(data.algebra, data.action(), data.ideal_subspace());
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nilcert: constructs and certifies nilpotent ideals in graded algebras and "
               "algebras with finite automorphism actions"};
  app.set_version_flag("--version", NILCERT_VERSION);
  app.require_subcommand(1);

  std::string in_path, out_path, dump_tower_path, subspace_name = "algebra";
  std::size_t arg_n = 0, arg_d = 0, max_w = 3;
  std::size_t samples = 200;
  std::uint64_t seed = 0;

  auto* c_validate = app.add_subcommand("validate", "run all applicable validators");
  c_validate->add_option("file", in_path)->required();

  auto* c_nilindex = app.add_subcommand("nilindex", "print the nilpotency index or NOT_NILPOTENT");
  c_nilindex->add_option("file", in_path)->required();
  c_nilindex->add_option("--subspace", subspace_name,
                         "algebra | ideal | identity | fixed (default algebra)");

  auto* c_bounds = app.add_subcommand("bounds", "print every derived bound for (n, d)");
  c_bounds->add_option("--n", arg_n)->required();
  c_bounds->add_option("--d", arg_d)->required();

  auto* c_t2 = app.add_subcommand("theorem2", "construct and verify the graded nilpotent ideal");
  c_t2->add_option("file", in_path)->required();
  c_t2->add_option("-o,--output", out_path);
  c_t2->add_option("--dump-tower", dump_tower_path);
  c_t2->add_option("--samples", samples, "insertion-property sample count");
  c_t2->add_option("--seed", seed, "sampling seed");

  auto* c_t1 = app.add_subcommand("theorem1", "construct the ideal for a soluble action");
  c_t1->add_option("file", in_path)->required();
  c_t1->add_option("-o,--output", out_path);

  auto* c_oracle = app.add_subcommand("tower-oracle",
                                      "compare the span DP against literal tuple enumeration");
  c_oracle->add_option("file", in_path)->required();
  c_oracle->add_option("--max-w", max_w, "tuple length cap (<= 4)")->required();

  auto* c_bi = app.add_subcommand("bi-check", "empirical Bergman-Isaacs bound check");
  c_bi->add_option("file", in_path)->required();

  std::string family, group_name = "c2", ideal_name = "suggested";
  std::size_t g_k = 3, g_vertices = 2, g_arrows = 3, g_truncation = 3;
  std::uint64_t g_p = 0;
  bool g_strict = true, g_graded = false, g_idempotents = true, g_with_series = false;
  auto* c_gen = app.add_subcommand("gen", "generate a validated instance");
  c_gen->add_option("family", family, "triangular | path | scaling | cayley")->required();
  c_gen->add_option("--seed", seed);
  c_gen->add_option("-o,--output", out_path);
  c_gen->add_option("--group", group_name, "c<N> or s3");
  c_gen->add_option("--p", g_p, "field characteristic override");
  c_gen->add_option("--k", g_k, "triangular size");
  c_gen->add_flag("--strict,!--no-strict", g_strict, "strictly upper triangular");
  c_gen->add_flag("--graded", g_graded, "attach the parity C2-grading (triangular)");
  c_gen->add_option("--vertices", g_vertices);
  c_gen->add_option("--arrows", g_arrows);
  c_gen->add_option("--truncation", g_truncation);
  c_gen->add_flag("--idempotents,!--no-idempotents", g_idempotents);
  c_gen->add_option("--ideal", ideal_name, "zero | suggested | full");
  c_gen->add_flag("--with-series", g_with_series, "embed a prime series for the group");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*c_validate) {
      LoadedInstance in = load(in_path);
      ValidationReport rep = validate_instance(in.data);
      emit_output(validation_json(rep, in.digest), "");
      return rep.ok() ? exit_ok : exit_checks_failed;
    }

    if (*c_nilindex) {
      LoadedInstance in = load(in_path);
      const Algebra& a = in.data.algebra;
      Subspace s = Subspace::full(a.field(), a.dim());
      if (subspace_name == "ideal")
        s = in.data.ideal_subspace();
      else if (subspace_name == "identity")
        s = in.data.grading().identity_component();
      else if (subspace_name == "fixed")
        s = fixed_subalgebra(a, in.data.action());
      else if (subspace_name != "algebra")
        throw error("unknown subspace '" + subspace_name + "'");
      auto idx = nilpotency_index(a, s);
      if (idx)
        std::printf("%zu\n", *idx);
      else
        std::printf("NOT_NILPOTENT\n");
      return exit_ok;
    }

    if (*c_bounds) {
      emit_output(bounds_json(bounds_for(arg_n, arg_d)), "");
      return exit_ok;
    }

    if (*c_t2) {
      LoadedInstance in = load(in_path);
      GradedHypotheses hyp = graded_hypotheses_of(in.data);
      Theorem2Options opt;
      opt.property_samples = samples;
      opt.sample_seed = seed ? seed : 1;
      if (!dump_tower_path.empty()) {
        CentralizerTower tower = build_tower(in.data.algebra, hyp);
        write_file_atomic(dump_tower_path, tower_dump_json(tower).dump(2) + "\n");
      }
      ConstructionReport rep = theorem2_construct(in.data.algebra, hyp, opt);
      emit_output(report_json(rep, in.digest), out_path);
      return rep.all_pass() ? exit_ok : exit_checks_failed;
    }

    if (*c_t1) {
      LoadedInstance in = load(in_path);
      InvariantHypotheses hyp = invariant_hypotheses_of(in.data);
      PrimeSeries series;
      if (in.data.series_subgroups) {
        series = in.data.series();
      } else {
        auto found = find_prime_series(hyp.action.group);
        if (!found) throw error("acting group is not soluble and no series was supplied");
        series = *found;
      }
      Theorem1Report rep = theorem1_construct(in.data.algebra, hyp, series);
      emit_output(theorem1_json(rep, in.digest), out_path);
      return rep.all_pass() ? exit_ok : exit_checks_failed;
    }

    if (*c_oracle) {
      LoadedInstance in = load(in_path);
      GradedHypotheses hyp = graded_hypotheses_of(in.data);
      if (max_w > 4) throw error("--max-w must be at most 4");
      TowerOptions topt;
      topt.w_override = max_w;
      CentralizerTower tower = build_tower(in.data.algebra, hyp, topt);
      const FiniteGroup& grp = hyp.grading.group;
      json levels = json::array();
      bool all = true;
      for (std::size_t s = 1; s <= tower.built; ++s) {
        std::vector<Subspace> brute = brute_force_level(in.data.algebra, tower, s, max_w);
        bool match = true;
        for (std::uint32_t g = 0; g < grp.order(); ++g) {
          if (g == grp.identity()) continue;
          match = match && brute[g] == tower.component(g, s);
        }
        levels.push_back({{"level", s}, {"match", match}});
        all = all && match;
      }
      json j = {{"tool", "nilcert"},   {"version", NILCERT_VERSION},
                {"kind", "tower-oracle"}, {"input_digest", in.digest},
                {"max_w", max_w},      {"levels", levels},
                {"all_pass", all}};
      emit_output(j, out_path);
      return all ? exit_ok : exit_checks_failed;
    }

    if (*c_bi) {
      LoadedInstance in = load(in_path);
      if (!in.data.has_action()) throw error("bi-check requires an action block");
      BergmanReport rep = bergman_isaacs_check(in.data.algebra, in.data.action());
      emit_output(bergman_json(rep, in.digest), out_path);
      return rep.within_bound ? exit_ok : exit_checks_failed;
    }

    if (*c_gen) {
      GenOptions opt;
      opt.group = group_name;
      opt.p = g_p;
      opt.k = g_k;
      opt.strict = g_strict;
      opt.graded = g_graded;
      opt.vertices = g_vertices;
      opt.arrows = g_arrows;
      opt.truncation = g_truncation;
      opt.idempotents = g_idempotents;
      opt.ideal = ideal_name;
      opt.with_series = g_with_series;
      InstanceData data = generate_named(family, seed, opt);
      std::string text = emit_instance(data);
      if (out_path.empty())
        std::fputs(text.c_str(), stdout);
      else
        write_file_atomic(out_path, text);
      return exit_ok;
    }
  } catch (const error& e) {
    return fail_invalid(e.what());
  } catch (const std::exception& e) {
    return fail_invalid(std::string("unexpected: ") + e.what());
  }
  return exit_invalid_input;
}
