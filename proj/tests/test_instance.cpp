#include <catch2/catch_amalgamated.hpp>

#include <filesystem>

#include "grpd/instance.hpp"

using namespace grpd;

#ifndef GRPD_INSTANCE_DIR
#define GRPD_INSTANCE_DIR "instances"
#endif

namespace {

const std::vector<std::string> kShipped = {
    "point_z3.json",      "point_s3.json",   "reflection_c4.json",
    "rotation_c6.json",   "plus_graph.json", "quotient_c6_c3.json"};

std::string instance_path(const std::string& file) {
  return std::string(GRPD_INSTANCE_DIR) + "/" + file;
}

}  // namespace

TEST_CASE("all shipped instances load and validate") {
  for (const auto& file : kShipped) {
    INFO(file);
    auto spec = load_instance_file(instance_path(file));
    auto report = run_command("validate", spec);
    REQUIRE(report["ok"] == true);
    REQUIRE(report["schema"] == "grpd-report/1");
  }
}

TEST_CASE("schema violations are reported as input errors") {
  REQUIRE_THROWS_AS(load_instance(json{{"schema", "nope"}}), InputError);
  json broken = {
      {"schema", "grpd-instance/1"},
      {"name", "broken"},
      {"group", {{"elements", {"e"}}, {"mult", {{"e"}}}}},
      {"graph", {{"vertices", {"a", "b"}}, {"edges", json::array()}}},
      {"action", {{"e", {{"a", "a"}}}}}  // misses vertex b
  };
  REQUIRE_THROWS_AS(load_instance(broken), InputError);
  // a referenced label that does not resolve
  json badpath = {
      {"schema", "grpd-instance/1"},
      {"group", {{"elements", {"e"}}, {"mult", {{"e"}}}}},
      {"graph", {{"vertices", {"a"}}, {"edges", json::array()}}},
      {"action", {{"e", {{"a", "a"}}}}},
      {"paths", {{"p", {"a", "z"}}}}};
  REQUIRE_THROWS_AS(load_instance(badpath), InputError);
}

TEST_CASE("permutation-generator groups close and alias their generators") {
  json j = json::parse(R"({
    "schema": "grpd-instance/1",
    "name": "gen-form",
    "group": {"generators": ["rot"]},
    "graph": {"vertices": ["0", "1", "2"],
              "edges": [["0", "1"], ["1", "2"], ["2", "0"]]},
    "action": {"rot": {"0": "1", "1": "2", "2": "0"}},
    "grid": 1,
    "gpaths": {"turn": {"cuts": [0, 1, 1],
                        "pieces": [["0", "1"], ["2"]],
                        "connectors": ["rot"]}}
  })");
  auto spec = load_instance(j);
  REQUIRE(spec.ga.action.group.size() == 3);
  REQUIRE(spec.element_aliases.count("rot") == 1);
  REQUIRE(spec.element_aliases.count("e") == 1);
  // the closure is Z3
  REQUIRE(find_group_isomorphism(spec.ga.action.group, FiniteGroup::cyclic(3))
              .has_value());
  REQUIRE(run_command("validate", spec)["ok"] == true);
}

TEST_CASE("equiv runs both routes and reports agreement") {
  auto spec = load_instance_file(instance_path("reflection_c4.json"));
  RunOptions opt;
  opt.gpath_a = "dangling";
  opt.gpath_b = "bare";
  auto report = run_command("equiv", spec, opt);
  REQUIRE(report["equivalent"] == true);
  REQUIRE(report["agreement"] == true);
  REQUIRE(report["ok"] == true);
  REQUIRE(report.contains("iso_witness"));
  REQUIRE(report.contains("oracle_tuple"));
}

TEST_CASE("loops on the point of Z3: three conjugacy classes") {
  auto spec = load_instance_file(instance_path("point_z3.json"));
  auto report = run_command("loops", spec);
  REQUIRE(report["classes"] == 3);
  for (auto& entry : report["skeleton"]) REQUIRE(entry["isotropy_order"] == 3);
  REQUIRE(report["forms_equivalent"] == true);
}

TEST_CASE("based and pullback commands succeed on the reflection instance") {
  auto spec = load_instance_file(instance_path("reflection_c4.json"));
  REQUIRE(run_command("based", spec)["ok"] == true);
  REQUIRE(run_command("pullback", spec)["ok"] == true);
}

TEST_CASE("morita and lift on the quotient instance") {
  auto spec = load_instance_file(instance_path("quotient_c6_c3.json"));
  RunOptions opt;
  opt.map_name = "q";
  auto morita = run_command("morita", spec, opt);
  REQUIRE(morita["map_report"]["essential_equivalence"] == true);
  REQUIRE(morita["induced_path_map_report"]["essential_equivalence"] == true);
  REQUIRE(morita["ok"] == true);
  opt.gpath_a = "walk";
  auto lift = run_command("lift", spec, opt);
  REQUIRE(lift["verified"] == true);
}

TEST_CASE("reports are byte-identical across runs") {
  for (const auto& file : kShipped) {
    INFO(file);
    auto spec1 = load_instance_file(instance_path(file));
    auto spec2 = load_instance_file(instance_path(file));
    auto r1 = run_command("report-all", spec1);
    auto r2 = run_command("report-all", spec2);
    REQUIRE(r1.dump(2) == r2.dump(2));
    REQUIRE(r1["ok"] == true);
  }
}

TEST_CASE("normalize reports the chi image") {
  auto spec = load_instance_file(instance_path("plus_graph.json"));
  RunOptions opt;
  opt.gpath_a = "avb";
  auto report = run_command("normalize", spec, opt);
  REQUIRE(report["chi"] == json::array({"E", "C", "E"}));
  REQUIRE(report["normal_form"]["cuts"] == json::array({0, 1, 2}));
}
