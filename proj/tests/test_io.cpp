#include <doctest.h>

#include "nilcert/factory.hpp"
#include "test_util.hpp"

using namespace nilcert;
using namespace nilcert::testutil;

TEST_SUITE_BEGIN("io");

TEST_CASE("round trip through emit and parse") {
  InstanceData data = gen_triangular({.k = 2, .strict = false, .graded = true}, make_field(5));
  std::string text = emit_instance(data);
  InstanceData back = parse_instance(text);
  CHECK(back == data);
  CHECK(emit_instance(back) == text);

  // action instances round trip too
  InstanceData act = gen_random_action(3, FiniteGroup::cyclic(2));
  CHECK(parse_instance(emit_instance(act)) == act);
}

TEST_CASE("non-associative constants parse but fail validation") {
  std::string text = R"({
    "field": {"p": 5},
    "algebra": {"dim": 2, "products": [[0,0,1,1],[1,0,0,1]]}
  })";
  InstanceData data = parse_instance(text);
  ValidationReport rep = validate_instance(data);
  CHECK_FALSE(rep.ok());
  CHECK(rep.first_failure().find("(0,0,0)") != std::string::npos);
}

TEST_CASE("tampered group table parses but fails validation with a witness") {
  InstanceData data = gen_random_action(4, FiniteGroup::cyclic(3));
  (*data.group_table)[1][2] = 1;  // break the latin-square property
  std::string text = emit_instance(data);
  InstanceData back = parse_instance(text);
  ValidationReport rep = validate_instance(back);
  CHECK_FALSE(rep.ok());
}

TEST_CASE("schema violations carry a path") {
  CHECK_THROWS_WITH_AS(parse_instance("{}"), doctest::Contains("missing key"), error);
  CHECK_THROWS_WITH_AS(parse_instance(R"({"field": {"p": 4}, "algebra": {"dim": 0, "products": []}})"),
                       doctest::Contains("not prime"), error);
  CHECK_THROWS_WITH_AS(
      parse_instance(
          R"({"field": {"p": 5}, "algebra": {"dim": 1, "products": []}, "extra": 1})"),
      doctest::Contains("unknown key"), error);
  CHECK_THROWS_WITH_AS(
      parse_instance(
          R"({"field": {"p": 5}, "algebra": {"dim": 1, "products": [[0,0,1,1]]}})"),
      doctest::Contains("out of range"), error);
  // grading requires a group
  CHECK_THROWS_WITH_AS(
      parse_instance(
          R"({"field": {"p": 5}, "algebra": {"dim": 1, "products": []}, "grading": {"grades": [0]}})"),
      doctest::Contains("requires a group"), error);
  CHECK_THROWS_AS(parse_instance("not json"), error);
}

TEST_CASE("scalars are canonicalized") {
  std::string text = R"({
    "field": {"p": 5},
    "algebra": {"dim": 2, "products": [[0,0,1,-1],[0,0,1,7]]}
  })";
  InstanceData data = parse_instance(text);
  // -1 + 7 = 6 -> 1 mod 5
  auto terms = data.algebra.product_terms();
  REQUIRE(terms.size() == 1);
  CHECK(terms[0].c == 1);
}

TEST_CASE("generator-form actions expand to all elements") {
  InstanceData data = gen_random_action(9, FiniteGroup::cyclic(4));
  REQUIRE(data.has_action());
  nlohmann::json j = nlohmann::json::parse(emit_instance(data));
  nlohmann::json gen_matrix = j["action"]["matrices"][1];
  j["action"] = {{"generators", nlohmann::json::array({
                     {{"element", 1}, {"matrix", gen_matrix}}})}};
  InstanceData back = parse_instance(j.dump());
  CHECK(back.action_matrices == data.action_matrices);

  // generators that do not generate are rejected
  nlohmann::json j2 = nlohmann::json::parse(emit_instance(data));
  nlohmann::json id_matrix = j2["action"]["matrices"][0];
  j2["action"] = {{"generators", nlohmann::json::array({
                      {{"element", 2}, {"matrix", j2["action"]["matrices"][2]}}})}};
  CHECK_THROWS_WITH_AS(parse_instance(j2.dump()), doctest::Contains("do not reach"), error);
}

TEST_CASE("series blocks validate against the group") {
  InstanceData data = gen_random_action(2, FiniteGroup::cyclic(6));
  data.series_subgroups = {{0}, {0, 2, 4}, {0, 1, 2, 3, 4, 5}};
  InstanceData back = parse_instance(emit_instance(data));
  CHECK(validate_instance(back).ok());
  CHECK(validate_series(back.group(), back.series()).ok());

  data.series_subgroups = {{0}, {0, 1}, {0, 1, 2, 3, 4, 5}};  // {0,1} is not a subgroup
  CHECK_FALSE(validate_instance(data).ok());
}

TEST_CASE("digest is stable") {
  CHECK(digest64("") == "fnv1a64:cbf29ce484222325");
  CHECK(digest64("nilcert") == digest64("nilcert"));
  CHECK(digest64("a") != digest64("b"));
}

TEST_CASE("report serialization carries the ideal for re-verification") {
  FieldSpec f = make_field(5);
  InstanceData data = gen_triangular({.k = 2, .strict = false, .graded = true}, f);
  GradedHypotheses hyp =
      make_graded_hypotheses(data.algebra, data.grading(), Subspace::zero(f, 3));
  ConstructionReport rep = theorem2_construct(data.algebra, hyp);
  nlohmann::json j = report_json(rep, digest64(emit_instance(data)));
  CHECK(j["all_pass"] == true);
  CHECK(j["kind"] == "theorem2");

  // feed the reported ideal back as an instance ideal and recompute
  std::vector<Vec> vectors;
  for (const auto& v : j["ideal"]["vectors"]) vectors.push_back(v.get<Vec>());
  InstanceData patched = data;
  patched.ideal_vectors = vectors;
  InstanceData reparsed = parse_instance(emit_instance(patched));
  auto idx = nilpotency_index(reparsed.algebra, reparsed.ideal_subspace());
  REQUIRE(idx.has_value());
  CHECK(*idx == j["achieved_index"].get<std::size_t>());
}

TEST_CASE("atomic write and read round trip") {
  std::string path = "io_test_tmp.json";
  write_file_atomic(path, "{\"x\": 1}\n");
  CHECK(read_file(path) == "{\"x\": 1}\n");
  std::remove(path.c_str());
  CHECK_THROWS_AS(read_file("definitely_missing_file.json"), error);
}

TEST_SUITE_END();
