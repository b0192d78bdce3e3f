#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "common.hpp"
#include "grpd/loopbase.hpp"

using namespace grpd;

TEST_CASE("evaluation and diagonal maps") {
  auto c4 = fixtures::reflection_c4();
  auto ps = build_path_space(c4, 2);
  auto ev = evaluation_map(ps);
  SECTION("endpoints are read off") {
    int p = ps.index_of(fixtures::path_of(c4.graph, {"0", "1", "2"}));
    REQUIRE(ev.target.points[ev.vmap[p]] == pair_label("0", "2"));
    int c = ps.index_of(fixtures::path_of(c4.graph, {"3", "3", "3"}));
    REQUIRE(ev.target.points[ev.vmap[c]] == pair_label("3", "3"));
  }
  SECTION("the diagonal is the pairing with itself") {
    auto d = diagonal_map(c4.action);
    for (int x = 0; x < 4; ++x)
      REQUIRE(d.target.points[d.vmap[x]] ==
              pair_label(c4.action.points[x], c4.action.points[x]));
    // both product-projection triangles admit natural transformations
    GroupAction pair = product_action(c4.action, c4.action);
    for (int side = 0; side < 2; ++side) {
      EquivariantMap proj{pair, c4.action, {}, {}};
      for (int g = 0; g < pair.group.size(); ++g)
        proj.hom.push_back(c4.action.group.index(split_components(pair.group.label(g))[side]));
      for (int p = 0; p < pair.point_count(); ++p)
        proj.vmap.push_back(c4.action.point_index(split_components(pair.points[p])[side]));
      proj.validate();
      auto tri = natural_transformation_exists(to_strict(compose(proj, d)),
                                               to_strict(identity_equivariant(c4.action)));
      REQUIRE(tri.has_value());
    }
  }
  SECTION("the diagonal factors through constant paths") {
    REQUIRE(verify_diagonal_factorization(c4, 2).ok);
    REQUIRE(verify_diagonal_factorization(fixtures::point_instance(fixtures::z3()), 2).ok);
    REQUIRE(verify_diagonal_factorization(fixtures::rotation_c6(), 1).ok);
  }
}

TEST_CASE("free loop groupoid") {
  SECTION("point groupoid: loops are the conjugation groupoid") {
    auto loops = free_loop_groupoid(fixtures::point_instance(fixtures::z3()), 2);
    REQUIRE(loops.cert.equivalent);
    auto conj = conjugation_groupoid(fixtures::z3(), fixtures::z3().labels());
    REQUIRE(are_equivalent(loops.reduced, conj).equivalent);
    // the pullback form on a point has |G|^2 objects
    REQUIRE(loops.pullback.groupoid.object_count() == 9);
  }
  SECTION("trivial group: loops are the classical closed paths") {
    auto c3 = fixtures::trivial_c3();
    auto loops = free_loop_groupoid(c3, 2);
    int closed = 0;
    for (auto& p : loops.paths.paths)
      if (p.verts.front() == p.verts.back()) ++closed;
    REQUIRE(static_cast<int>(loops.reduced_objects.size()) == closed);
    REQUIRE(loops.cert.equivalent);
  }
  SECTION("reflection instance: twisted loops exist and stay twisted") {
    auto c4 = fixtures::reflection_c4();
    auto loops = free_loop_groupoid(c4, 2);
    REQUIRE(loops.cert.equivalent);
    int g = c4.action.group.index("g");
    int twisted = loops.reduced_action.point_index(pair_label("1;0;3", "g"));
    // no arrow reaches any identity-decorated loop: the conjugacy class of
    // the decoration is invariant
    for (int k = 0; k < loops.reduced_action.group.size(); ++k) {
      int img = loops.reduced_action.apply(k, twisted);
      REQUIRE(loops.reduced_objects[img].second == g);
    }
  }
}

TEST_CASE("loop to path projection") {
  SECTION("trivial actions keep classes apart") {
    auto rep = loop_to_path_projection(free_loop_groupoid(fixtures::trivial_c3(), 2));
    REQUIRE(rep.injective_on_classes);
  }
  SECTION("the reflection instance collapses loop classes") {
    auto rep = loop_to_path_projection(free_loop_groupoid(fixtures::reflection_c4(), 2));
    REQUIRE_FALSE(rep.injective_on_classes);
    REQUIRE(rep.collision.has_value());
  }
  SECTION("point of Z2: two loop classes over one path class") {
    auto loops = free_loop_groupoid(fixtures::point_instance(fixtures::z2()), 2);
    REQUIRE(loops.reduced.components().size() == 2);
    auto rep = loop_to_path_projection(loops);
    REQUIRE_FALSE(rep.injective_on_classes);
  }
}

TEST_CASE("based groupoids") {
  SECTION("point groupoid: based loops are the discrete group") {
    auto pt = fixtures::point_instance(fixtures::z3());
    auto om = based_groupoid(BasedKind::OmegaX, pt, 2, 0, 0);
    REQUIRE(om.cert.equivalent);
    REQUIRE(om.isotropies_trivial);
    REQUIRE(om.reduced.object_count() == 3);
    REQUIRE(om.reduced.arrow_count() == 3);  // unit groupoid on G
    REQUIRE(om.alt_cert.has_value());
    REQUIRE(om.alt_cert->equivalent);
  }
  SECTION("point groupoid: paths from the basepoint form G x G") {
    auto pt = fixtures::point_instance(fixtures::z3());
    auto px = based_groupoid(BasedKind::PX, pt, 2, 0, 0);
    REQUIRE(px.cert.equivalent);
    auto mult = multiplication_groupoid(fixtures::z3(), fixtures::z3().labels());
    REQUIRE(are_equivalent(px.reduced, mult).equivalent);
  }
  SECTION("reflection instance, small based path set") {
    auto c4 = fixtures::reflection_c4();
    int one = c4.action.point_index("1");
    auto om = based_groupoid(BasedKind::OmegaXY, c4, 1, one, one);
    REQUIRE(om.reduced.object_count() == 1);  // only ((1,1), e)
    REQUIRE(om.reduced.object_label(0) == pair_label("1;1", "e"));
    REQUIRE(om.cert.equivalent);
    REQUIRE(om.isotropies_trivial);
  }
  SECTION("omega groupoids have free pullback actions on every instance") {
    for (auto ga : {fixtures::reflection_c4(), fixtures::rotation_c6()}) {
      auto om = based_groupoid(BasedKind::OmegaXY, ga, 2, 0, 1);
      REQUIRE(om.isotropies_trivial);
      REQUIRE(om.cert.equivalent);
    }
  }
  SECTION("unknown basepoints are rejected") {
    REQUIRE_THROWS_AS(based_groupoid(BasedKind::OmegaXY, fixtures::reflection_c4(), 1, 0, 9),
                      InputError);
  }
  SECTION("the induced action on the reduced coordinates is trivial") {
    // every pullback object reduces to (h^-1 beta, h^-1 l), and the whole
    // orbit reduces to the same pair
    auto c4 = fixtures::reflection_c4();
    auto om = based_groupoid(BasedKind::OmegaXY, c4, 2, 0, 0);
    const auto& act = om.pullback.action;
    const auto& G = c4.action.group;
    auto reduce = [&](int point) {
      auto& t = om.pullback.point_triples[point];
      // decode (beta, (h,l), pt)
      auto parts = split_components(act.points[point]);
      auto pair = split_components(parts[1]);
      int h = G.index(pair[0]), l = G.index(pair[1]);
      int beta = t[0];
      auto moved = act_on_path(c4, G.inv(h), om.paths.paths[beta]);
      return pair_label(path_label(c4.graph, moved), G.label(G.mul(G.inv(h), l)));
    };
    for (int p = 0; p < act.point_count(); ++p)
      for (int k = 0; k < act.group.size(); ++k)
        REQUIRE(reduce(act.apply(k, p)) == reduce(p));
  }
  SECTION("the projection never exceeds the path class count") {
    for (auto ga : {fixtures::reflection_c4(), fixtures::rotation_c6()}) {
      auto loops = free_loop_groupoid(ga, 2);
      auto rep = loop_to_path_projection(loops);
      size_t path_classes = rep.projection.target.components().size();
      std::set<int> image_classes;
      UnionFind uf(rep.projection.target.object_count());
      for (int a = 0; a < rep.projection.target.arrow_count(); ++a)
        uf.merge(rep.projection.target.src(a), rep.projection.target.tgt(a));
      for (int o = 0; o < loops.reduced.object_count(); ++o)
        image_classes.insert(uf.find(rep.projection.obj_map[o]));
      REQUIRE(image_classes.size() <= path_classes);
    }
  }
}

TEST_CASE("path-loop morphism and its pullback identity") {
  SECTION("point groupoid: the fiber is the discrete group") {
    auto pt = fixtures::point_instance(fixtures::z2());
    auto res = path_loop_morphism(0, pt, 2, 0);
    REQUIRE(res.cert.equivalent);
    auto sk = skeleton(res.omega_again.groupoid);
    REQUIRE(sk.size() == 2);  // one class per group element
    for (auto& e : sk) REQUIRE(e.isotropy.size() == 1);
  }
  SECTION("trivial group: classical paths from x to y") {
    auto c3 = fixtures::trivial_c3();
    auto res = path_loop_morphism(0, c3, 2, 1);
    REQUIRE(res.cert.equivalent);
    int fiber = 0;
    for (auto& p : res.based_px.paths.paths)
      if (p.verts.front() == 0 && p.verts.back() == 1) ++fiber;
    REQUIRE(static_cast<int>(skeleton(res.omega_again.groupoid).size()) == fiber);
  }
  SECTION("reflection instance at the moved basepoint") {
    auto c4 = fixtures::reflection_c4();
    int one = c4.action.point_index("1");
    auto res = path_loop_morphism(one, c4, 1, one);
    REQUIRE(res.cert.equivalent);
    REQUIRE(res.based_px.cert.equivalent);
  }
}
