// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Run as `acceptance [instances-dir]`.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include "common.hpp"
#include "grpd/homotopy.hpp"
#include "grpd/instance.hpp"
#include "grpd/loopbase.hpp"

using namespace grpd;

namespace {

std::string g_dir = "instances";

const std::vector<std::string> kShipped = {
    "point_z3.json",      "point_s3.json",   "reflection_c4.json",
    "rotation_c6.json",   "plus_graph.json", "quotient_c6_c3.json"};

InstanceSpec load(const std::string& file) {
  return load_instance_file(g_dir + "/" + file);
}

struct Checker {
  int passed = 0, failed = 0;

  void run(const std::string& name, const std::function<void()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    std::string error;
    try {
      body();
    } catch (const std::exception& e) {
      error = e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - t0)
                  .count();
    if (error.empty()) {
      ++passed;
      std::printf("PASS  %s  (%lldms)\n", name.c_str(), static_cast<long long>(ms));
    } else {
      ++failed;
      std::printf("FAIL  %s  (%lldms)\n      %s\n", name.c_str(),
                  static_cast<long long>(ms), error.c_str());
    }
    std::fflush(stdout);
  }
};

void require(bool cond, const std::string& msg) {
  if (!cond) throw std::runtime_error(msg);
}

EquivariantMap shifted_identity(const GraphAction& ga, int h) {
  const auto& G = ga.action.group;
  EquivariantMap m{ga.action, ga.action, {}, {}};
  for (int k = 0; k < G.size(); ++k) m.hom.push_back(G.mul(G.mul(h, k), G.inv(h)));
  for (int z = 0; z < ga.action.point_count(); ++z)
    m.vmap.push_back(ga.action.apply(h, z));
  m.validate();
  return m;
}

EquivariantMap quotient_map_c6_c3() {
  auto spec = load("quotient_c6_c3.json");
  return spec.map_spec("q").map;
}

// every corpus groupoid: constructors over all shipped instances, capped at
// 1000 arrows per the criterion
void criterion_groupoid_axioms() {
  int checked = 0;
  auto take = [&](const FiniteGroupoid& g) {
    if (g.arrow_count() > 1000) return;
    g.validate();
    ++checked;
  };
  for (auto& file : kShipped) {
    auto spec = load(file);
    take(translation_groupoid(spec.ga.action));
    take(free_path_translation_groupoid(spec.ga, 2));
    for (auto cuts : std::vector<std::vector<int>>{
             {0, 2}, {0, 1, 2}, {0, 1, 1, 2}, {0, 2, 2}, {0, 0, 2}})
      take(interval_groupoid(GridSubdivision{2, cuts}));
    auto loops = free_loop_groupoid(spec.ga, 2);
    take(loops.pullback.groupoid);
    take(loops.reduced);
    if (spec.basepoints.count("x") && spec.basepoints.count("y")) {
      int x = spec.basepoint("x"), y = spec.basepoint("y");
      auto om = based_groupoid(BasedKind::OmegaXY, spec.ga, 2, x, y);
      take(om.pullback.groupoid);
      take(om.reduced);
      auto px = based_groupoid(BasedKind::PX, spec.ga, 2, x, x);
      take(px.pullback.groupoid);
      take(px.reduced);
    }
    std::mt19937 rng(1);
    for (int i = 0; i < 3; ++i)
      take(build_Y_alpha(spec.ga, 2, fixtures::random_gpath(rng, spec.ga, 2, 3)).y_groupoid);
  }
  require(checked >= 60, "expected at least 60 corpus groupoids, saw " +
                             std::to_string(checked));
}

// iso_check vs the direct oracle over every short pair
void criterion_oracle_equivalence() {
  long long pairs = 0;
  for (auto ga : {fixtures::reflection_c4(), fixtures::rotation_c6()}) {
    for (int grid = 1; grid <= 3; ++grid) {
      auto gpaths = fixtures::enumerate_gpaths_2(ga, grid);
      for (size_t i = 0; i < gpaths.size(); ++i)
        for (size_t j = i; j < gpaths.size(); ++j) {
          auto iso = iso_check(ga, grid, gpaths[i], gpaths[j]);
          auto direct = gpath_equivalent_direct(ga, grid, gpaths[i], gpaths[j]);
          if (iso.has_value() != direct.has_value())
            throw std::runtime_error("disagreement at pair " + std::to_string(i) +
                                     "," + std::to_string(j) + " grid " +
                                     std::to_string(grid));
          if (iso) {
            require(act_on_path(ga, *iso, chi(ga, grid, gpaths[i])) ==
                        chi(ga, grid, gpaths[j]),
                    "iso witness failed validation");
            require(apply_arrow(ga, grid, direct->refined_a, direct->tuple) ==
                        direct->refined_b,
                    "oracle witness failed validation");
          }
          ++pairs;
        }
    }
  }
  require(pairs > 1'500'000, "expected full pair coverage, saw " +
                                 std::to_string(pairs));
}

void criterion_chi_round_trips() {
  for (auto ga : {fixtures::reflection_c4(), fixtures::rotation_c6()}) {
    for (int grid = 1; grid <= 3; ++grid) {
      for (auto& c : enumerate_paths(ga.graph, grid))
        require(chi(ga, grid, chi_inverse(ga, grid, c)) == c,
                "chi o chi_inverse is not the identity");
      for (auto& p : fixtures::enumerate_gpaths_2(ga, grid)) {
        auto tuple = chi_section_tuple(ga, p);
        auto target = apply_arrow(ga, grid, p, tuple);
        require(colimit_normal_form(ga, grid, target) ==
                    chi_inverse(ga, grid, chi(ga, grid, p)),
                "the explicit section tuple does not reach the chi image");
      }
    }
  }
}

void criterion_y_alpha() {
  for (auto& file : kShipped) {
    auto spec = load(file);
    std::mt19937 rng(42);
    for (int trial = 0; trial < 50; ++trial) {
      auto p = fixtures::random_gpath(rng, spec.ga, spec.grid, 3);
      auto y = build_Y_alpha(spec.ga, spec.grid, p);
      require(y.y_action.point_count() ==
                  spec.ga.action.group.size() * (spec.grid + 1),
              "|Y_alpha| != |G|(T+1)");
      require(is_essential_equivalence(y.nu).ok(), "nu failed on " + file);
      y.gamma.validate();  // equivariant bijection; bijectivity checked at build
    }
  }
}

void criterion_morita_invariance() {
  auto f = quotient_map_c6_c3();
  auto c6 = fixtures::rotation_c6();
  auto c3 = fixtures::trivial_c3();
  require(is_essential_equivalence(to_strict(f)).ok(),
          "the quotient map itself must be an essential equivalence");
  for (int grid = 1; grid <= 3; ++grid) {
    auto ind = induced_map(c6, c3, f, grid);
    require(is_essential_equivalence(to_strict(ind.map)).ok(),
            "induced path map fails at grid " + std::to_string(grid));
  }
}

void criterion_point_groupoid_table() {
  std::vector<FiniteGroup> groups{fixtures::z2(), fixtures::z3(), fixtures::s3()};
  for (auto& g : groups) {
    auto pt = fixtures::point_instance(g);
    require(are_equivalent(free_path_translation_groupoid(pt, 2), point_groupoid(g))
                .equivalent,
            "P(G x pt) != G x pt");
    auto loops = free_loop_groupoid(pt, 2);
    require(loops.cert.equivalent, "loop forms disagree on the point groupoid");
    require(are_equivalent(loops.reduced, conjugation_groupoid(g, g.labels()))
                .equivalent,
            "L(G x pt) != conjugation groupoid");
    auto om = based_groupoid(BasedKind::OmegaX, pt, 2, 0, 0);
    require(om.cert.equivalent && om.isotropies_trivial,
            "based loops not equivalent to a space");
    require(are_equivalent(om.pullback.groupoid, unit_groupoid(g.labels())).equivalent,
            "Omega_pt != discrete G");
    auto px = based_groupoid(BasedKind::PX, pt, 2, 0, 0);
    require(px.cert.equivalent, "P_x forms disagree");
    require(are_equivalent(px.reduced, multiplication_groupoid(g, g.labels()))
                .equivalent,
            "P_pt != G x G multiplication groupoid");
  }
}

void criterion_free_action_collapse() {
  auto c6 = fixtures::rotation_c6();
  auto qg = quotient_graph(c6);
  GraphAction c3{qg.graph, trivial_action(qg.graph.vertices)};
  c3.validate();
  for (int grid = 1; grid <= 3; ++grid) {
    require(are_equivalent(free_path_translation_groupoid(c6, grid),
                           free_path_translation_groupoid(c3, grid))
                .equivalent,
            "path groupoids differ at grid " + std::to_string(grid));
    auto l6 = free_loop_groupoid(c6, grid);
    auto l3 = free_loop_groupoid(c3, grid);
    require(are_equivalent(l6.reduced, l3.reduced).equivalent,
            "loop groupoids differ at grid " + std::to_string(grid));
    auto om6 = based_groupoid(BasedKind::OmegaXY, c6, grid, 0, 1);
    auto om3 = based_groupoid(BasedKind::OmegaXY, c3, grid, qg.vmap[0], qg.vmap[1]);
    require(are_equivalent(om6.pullback.groupoid, om3.pullback.groupoid).equivalent,
            "based path groupoids differ at grid " + std::to_string(grid));
    auto px6 = based_groupoid(BasedKind::PX, c6, grid, 0, 0);
    auto px3 = based_groupoid(BasedKind::PX, c3, grid, qg.vmap[0], qg.vmap[0]);
    require(are_equivalent(px6.pullback.groupoid, px3.pullback.groupoid).equivalent,
            "P_x groupoids differ at grid " + std::to_string(grid));
  }
}

void criterion_loop_path_divergence() {
  auto spec = load("reflection_c4.json");
  const auto& ga = spec.ga;
  const auto& G = ga.action.group;
  int e = G.id(), g = G.index("g");

  // free paths: the shipped pair is equivalent, by both routes
  auto& a = spec.gpaths.at("dangling");
  auto& b = spec.gpaths.at("bare");
  require(gpath_equivalent_direct(ga, spec.grid, a, b).has_value(),
          "shipped pair must be equivalent as free G-paths");
  require(iso_check(ga, spec.grid, a, b).has_value(), "iso_check disagrees");

  // free loops: (alpha, g) and (alpha, e) are objects but never isomorphic
  auto loops = free_loop_groupoid(ga, spec.grid);
  const DiscretePath& alpha = spec.paths.at("alpha");
  std::string la = loops.paths.label(loops.paths.index_of(alpha));
  int otw = loops.reduced_action.point_index(pair_label(la, G.label(g)));
  int oid = loops.reduced_action.point_index(pair_label(la, G.label(e)));
  for (int k = 0; k < G.size(); ++k)
    require(loops.reduced_action.apply(k, oid) != otw,
            "exhaustive arrow search found a loop arrow that must not exist");

  // based paths: the same decorations are not equivalent in Omega_{0,0}
  auto om = based_groupoid(BasedKind::OmegaXY, ga, spec.grid, spec.basepoint("x"),
                           spec.basepoint("y"));
  const auto& gpd = om.pullback.groupoid;
  int btw = gpd.object_index(
      triple_label(la, pair_label(G.label(e), G.label(g)), "pt"));
  int bid = gpd.object_index(
      triple_label(la, pair_label(G.label(e), G.label(e)), "pt"));
  require(gpd.hom(bid, btw).empty(),
          "exhaustive arrow search found a based arrow that must not exist");
  require(!gpd.hom(bid, bid).empty(), "units must exist");
}

void criterion_omega_triviality() {
  for (auto& file : kShipped) {
    auto spec = load(file);
    if (!spec.basepoints.count("x") || !spec.basepoints.count("y")) continue;
    int x = spec.basepoint("x"), y = spec.basepoint("y");
    for (auto kind : {BasedKind::OmegaXY, BasedKind::OmegaX}) {
      auto om = based_groupoid(kind, spec.ga, spec.grid, x, y);
      require(om.isotropies_trivial, "nontrivial isotropy in " + file);
      for (auto& entry : skeleton(om.reduced))
        require(entry.isotropy.size() == 1, "reduced form not a space in " + file);
      require(om.cert.equivalent, "forms disagree in " + file);
    }
  }
}

void criterion_pullback_identities() {
  for (auto& file : kShipped) {
    auto spec = load(file);
    // the free loop groupoid's two forms
    auto loops = free_loop_groupoid(spec.ga, spec.grid);
    require(loops.cert.equivalent, "loop forms differ in " + file);
    // Omega_{x,y} through the path-loop morphism
    if (spec.basepoints.count("x") && spec.basepoints.count("y")) {
      auto plr = path_loop_morphism(spec.basepoint("x"), spec.ga, spec.grid,
                                    spec.basepoint("y"));
      require(plr.cert.equivalent, "path-loop pullback differs in " + file);
    }
    // translation pullback: structure group and projections
    auto ps = build_path_space(spec.ga, spec.grid);
    auto tp = translation_pullback(evaluation_map(ps), diagonal_map(spec.ga.action));
    require(tp.action.group.size() ==
                spec.ga.action.group.size() * spec.ga.action.group.size(),
            "structure group is not G x H in " + file);
    for (int p = 0; p < tp.action.group.size(); ++p) {
      auto parts = split_components(tp.action.group.label(p));
      require(spec.ga.action.group.label(tp.proj1.hom[p]) == parts[0] &&
                  spec.ga.action.group.label(tp.proj2.hom[p]) == parts[1],
              "projections are not the product projections in " + file);
    }
    tp.iso_to_raw.validate();
  }
}

void criterion_homotopy_layer() {
  for (auto& file : kShipped) {
    auto spec = load(file);
    const auto& G = spec.ga.action.group;
    require(spec.ga.graph.connected(), "corpus carriers are connected");
    auto id = identity_equivariant(spec.ga.action);
    for (int h = 0; h < G.size(); ++h) {
      auto shifted = shifted_identity(spec.ga, h);
      auto nt = equivariant_nt_exists(spec.ga, id, shifted);
      require(nt.has_value(), "natural transformation must exist in " + file);
      require(nt->constant.has_value(), "gamma must be constant in " + file);
      // 2-isomorphism implies homotopy via the constant-path witness
      auto w = constant_path_witness(spec.ga, id, nt->gamma, 2);
      require(check_homotopy(spec.ga, spec.ga, id, shifted, w).ok,
              "constant-path witness fails in " + file);
    }
  }
  for (int grid = 1; grid <= 4; ++grid) {
    require(contraction_homotopy(fixtures::reflection_c4(), grid).ok(),
            "contraction fails on the reflection instance at grid " +
                std::to_string(grid));
    require(contraction_homotopy(fixtures::rotation_c6(), grid).ok(),
            "contraction fails on the rotation instance at grid " +
                std::to_string(grid));
  }
  require(contraction_homotopy(fixtures::plus_graph(), 4).ok(),
          "contraction fails on the plus instance at grid 4");
  require(contraction_homotopy(fixtures::point_instance(fixtures::s3()), 4).ok(),
          "contraction fails on the point instance at grid 4");
}

void criterion_determinism() {
  for (auto& file : kShipped) {
    auto s1 = load(file);
    auto s2 = load(file);
    std::string r1 = run_command("report-all", s1).dump(2);
    std::string r2 = run_command("report-all", s2).dump(2);
    require(r1 == r2, "report-all differs across runs for " + file);
  }
}

}  // namespace

int main(int argc, char** argv) {
  if (argc > 1) g_dir = argv[1];
  Checker c;
  c.run("1. groupoid axioms hold for every corpus constructor output",
        criterion_groupoid_axioms);
  c.run("2. iso_check agrees with the direct oracle on all short pairs (T<=3)",
        criterion_oracle_equivalence);
  c.run("3. chi round trips exactly and via the explicit section tuple",
        criterion_chi_round_trips);
  c.run("4. Y_alpha: nu is an essential equivalence, gamma a bijection, |Y|=|G|(T+1)",
        criterion_y_alpha);
  c.run("5. Morita invariance of the induced path map (C6 -> C3, T<=3)",
        criterion_morita_invariance);
  c.run("6. point-groupoid table for Z2, Z3, S3", criterion_point_groupoid_table);
  c.run("7. free-action collapse onto the quotient (T<=3)",
        criterion_free_action_collapse);
  c.run("8. loop/path/based divergence of the shipped pair",
        criterion_loop_path_divergence);
  c.run("9. based path groupoids have trivial isotropy everywhere",
        criterion_omega_triviality);
  c.run("10. pullback identities (loop forms, path-loop, structure group)",
        criterion_pullback_identities);
  c.run("11. homotopy layer: constancy, constant-path witnesses, contraction (T<=4)",
        criterion_homotopy_layer);
  c.run("12. report-all is byte-identical across runs", criterion_determinism);
  std::printf("%d passed, %d failed\n", c.passed, c.failed);
  return c.failed == 0 ? 0 : 1;
}
