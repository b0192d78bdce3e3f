#pragma once

// Free loop groupoid, based path/loop groupoids, evaluation and diagonal
// maps, the path-loop morphism and its pullback identity.

#include <optional>
#include <string>
#include <vector>

#include "grpd/core.hpp"
#include "grpd/gpath.hpp"
#include "grpd/morphism.hpp"
#include "grpd/space.hpp"

namespace grpd {

/// ev : G(x)X^I -> (GxG)(x)(XxX), alpha -> (alpha(0), alpha(T)), g -> (g,g).
inline EquivariantMap evaluation_map(const PathSpace& ps) {
  const auto& act = ps.base.action;
  GroupAction pair = product_action(act, act);
  EquivariantMap ev{ps.space.action, pair, {}, {}};
  for (int g = 0; g < act.group.size(); ++g)
    ev.hom.push_back(pair.group.index(pair_label(act.group.label(g), act.group.label(g))));
  for (int p = 0; p < ps.count(); ++p)
    ev.vmap.push_back(pair.point_index(
        pair_label(act.points[ps.paths[p].verts.front()],
                   act.points[ps.paths[p].verts.back()])));
  ev.validate();
  return ev;
}

/// Endpoint evaluation at a single end (0 or T) with identity group part.
inline EquivariantMap endpoint_map(const PathSpace& ps, bool at_end) {
  EquivariantMap m{ps.space.action, ps.base.action, {}, {}};
  m.hom.resize(ps.base.action.group.size());
  std::iota(m.hom.begin(), m.hom.end(), 0);
  for (int p = 0; p < ps.count(); ++p)
    m.vmap.push_back(at_end ? ps.paths[p].verts.back() : ps.paths[p].verts.front());
  m.validate();
  return m;
}

/// Delta : G(x)X -> (GxG)(x)(XxX), x -> (x,x), g -> (g,g).
inline EquivariantMap diagonal_map(const GroupAction& act) {
  GroupAction pair = product_action(act, act);
  EquivariantMap d{act, pair, {}, {}};
  for (int g = 0; g < act.group.size(); ++g)
    d.hom.push_back(pair.group.index(pair_label(act.group.label(g), act.group.label(g))));
  for (int x = 0; x < act.point_count(); ++x)
    d.vmap.push_back(pair.point_index(pair_label(act.points[x], act.points[x])));
  d.validate();
  return d;
}

/// The constant-path functor x -> alpha_x with identity group part.
inline EquivariantMap constant_path_map(const PathSpace& ps) {
  EquivariantMap k{ps.base.action, ps.space.action, {}, {}};
  k.hom.resize(ps.base.action.group.size());
  std::iota(k.hom.begin(), k.hom.end(), 0);
  for (int x = 0; x < ps.base.action.point_count(); ++x) {
    DiscretePath c{0, std::vector<int>(ps.grid + 1, x)};
    k.vmap.push_back(ps.index_of(c));
  }
  k.validate();
  return k;
}

struct DiagonalFactorizationReport {
  bool ok = false;
  NaturalTransformation witness;  // ev o k => Delta
};

/// The diagonal factors through the path groupoid: ev o (constant paths) is
/// naturally isomorphic to the diagonal.
inline DiagonalFactorizationReport verify_diagonal_factorization(
    const GraphAction& ga, int grid, long long limit = 1'000'000) {
  PathSpace ps = build_path_space(ga, grid, limit);
  auto ev = evaluation_map(ps);
  auto k = constant_path_map(ps);
  auto lhs = to_strict(compose(ev, k));
  auto rhs = to_strict(diagonal_map(ga.action));
  DiagonalFactorizationReport rep;
  auto t = natural_transformation_exists(lhs, rhs);
  if (t) {
    rep.ok = true;
    rep.witness = *t;
  }
  return rep;
}

struct LoopGroupoids {
  PathSpace paths;
  TranslationPullback pullback;  // (GxG)(x)L0 with the triple decode
  GroupAction reduced_action;    // G on L = {(alpha,g) : alpha(0) = g.alpha(T)}
  FiniteGroupoid reduced;
  std::vector<std::pair<int, int>> reduced_objects;  // (path, g) per reduced point
  EquivalenceCertificate cert;   // pullback form ~ reduced form
};

/// The free loop groupoid as the pullback of ev along the diagonal, together
/// with its reduced translation model G(x)L, k.(alpha,g) = (k alpha, kgk^-1).
inline LoopGroupoids free_loop_groupoid(const GraphAction& ga, int grid,
                                        long long limit = 1'000'000) {
  LoopGroupoids out;
  out.paths = build_path_space(ga, grid, limit);
  auto ev = evaluation_map(out.paths);
  auto diag = diagonal_map(ga.action);
  out.pullback = translation_pullback(ev, diag);

  const auto& G = ga.action.group;
  std::vector<std::string> labels;
  for (int p = 0; p < out.paths.count(); ++p)
    for (int g = 0; g < G.size(); ++g)
      if (out.paths.paths[p].verts.front() ==
          ga.action.apply(g, out.paths.paths[p].verts.back())) {
        out.reduced_objects.push_back({p, g});
        labels.push_back(pair_label(out.paths.label(p), G.label(g)));
      }
  out.reduced_action = GroupAction::make(
      G, labels, [&](const std::string& ke, const std::string& oe) {
        auto parts = split_components(oe);
        int k = G.index(ke);
        auto it = std::lower_bound(out.paths.space.graph.vertices.begin(),
                                   out.paths.space.graph.vertices.end(), parts[0]);
        int p = static_cast<int>(it - out.paths.space.graph.vertices.begin());
        int g = G.index(parts[1]);
        return pair_label(out.paths.label(out.paths.act(k, p)),
                          G.label(G.mul(G.mul(k, g), G.inv(k))));
      });
  {
    std::vector<std::pair<int, int>> sorted(out.reduced_objects.size());
    for (size_t i = 0; i < labels.size(); ++i)
      sorted[out.reduced_action.point_index(labels[i])] = out.reduced_objects[i];
    out.reduced_objects = std::move(sorted);
  }
  out.reduced = translation_groupoid(out.reduced_action);
  out.cert = are_equivalent(out.pullback.groupoid, out.reduced);
  return out;
}

struct LoopToPathReport {
  StrictMorphism projection;  // reduced loops -> free path groupoid
  bool injective_on_classes = true;
  // a witnessing collision when not injective: two loop objects from
  // different loop classes whose images are isomorphic paths
  std::optional<std::pair<int, int>> collision;
};

/// The projection (alpha, g) -> alpha on objects. On isomorphism classes it
/// can collapse distinct loop classes onto one path class; the report records
/// the first collision.
inline LoopToPathReport loop_to_path_projection(const LoopGroupoids& loops) {
  LoopToPathReport rep;
  FiniteGroupoid pathgpd = translation_groupoid(loops.paths.space.action);
  StrictMorphism m{loops.reduced, pathgpd, {}, {}};
  m.obj_map.resize(loops.reduced.object_count());
  m.arr_map.resize(loops.reduced.arrow_count());
  for (int o = 0; o < loops.reduced.object_count(); ++o)
    m.obj_map[o] = pathgpd.object_index(
        loops.paths.label(loops.reduced_objects[o].first));
  for (int a = 0; a < loops.reduced.arrow_count(); ++a) {
    auto parts = split_components(loops.reduced.arrow_label(a));  // (k,(alpha,g))
    int o = loops.reduced.src(a);
    m.arr_map[a] = pathgpd.arrow_index(
        pair_label(parts[0], pathgpd.object_label(m.obj_map[o])));
  }
  m.validate();

  // class-level injectivity via component representatives
  auto loop_comps = loops.reduced.components();
  UnionFind path_classes(pathgpd.object_count());
  for (int a = 0; a < pathgpd.arrow_count(); ++a)
    path_classes.merge(pathgpd.src(a), pathgpd.tgt(a));
  std::map<int, int> hit;  // path class -> loop component index
  for (size_t c = 0; c < loop_comps.size(); ++c) {
    int cls = path_classes.find(m.obj_map[loop_comps[c].front()]);
    auto [it, fresh] = hit.emplace(cls, static_cast<int>(c));
    if (!fresh && !rep.collision) {
      rep.injective_on_classes = false;
      rep.collision = {loop_comps[it->second].front(), loop_comps[c].front()};
    }
  }
  rep.projection = std::move(m);
  return rep;
}

enum class BasedKind { OmegaXY, OmegaX, PX };

struct BasedGroupoids {
  BasedKind kind;
  PathSpace paths;
  TranslationPullback pullback;
  FiniteGroupoid reduced;       // unit groupoid on P_{x,y} for the Omega kinds,
                                // G(x)P for PX
  GroupAction reduced_action;
  EquivalenceCertificate cert;  // pullback ~ reduced
  bool isotropies_trivial = false;  // pullback form, Omega kinds only
  std::optional<GroupoidPullback> alt;          // OmegaX: pullback against ev_0
  std::optional<EquivalenceCertificate> alt_cert;
};

/// Based path/loop groupoids as pullbacks of the evaluation map against the
/// basepoint inclusions, with their reduced models and certificates.
inline BasedGroupoids based_groupoid(BasedKind kind, const GraphAction& ga, int grid,
                                     int x, int y, long long limit = 1'000'000) {
  if (x < 0 || x >= ga.action.point_count() || y < 0 || y >= ga.action.point_count())
    throw InputError("unknown basepoint");
  if (kind == BasedKind::OmegaX) y = x;
  BasedGroupoids out;
  out.kind = kind;
  out.paths = build_path_space(ga, grid, limit);
  auto ev = evaluation_map(out.paths);
  const auto& G = ga.action.group;
  const GroupAction& pair = ev.target;

  if (kind == BasedKind::PX) {
    // leg (x, id) : 1 x (G(x)X) -> (GxG)(x)(XxX)
    GroupAction source = product_action(trivial_action({"pt"}), ga.action);
    EquivariantMap leg{source, pair, {}, {}};
    for (int p = 0; p < source.group.size(); ++p) {
      auto parts = split_components(source.group.label(p));
      leg.hom.push_back(pair.group.index(pair_label(G.label(G.id()), parts[1])));
    }
    for (int p = 0; p < source.point_count(); ++p) {
      auto parts = split_components(source.points[p]);
      leg.vmap.push_back(pair.point_index(pair_label(ga.action.points[x], parts[1])));
    }
    leg.validate();
    out.pullback = translation_pullback(ev, leg);

    // reduced model: P = {(alpha,g,w) : alpha(0) = x, alpha(T) = g.w},
    // k.(alpha,g,w) = (alpha, g k^-1, k w)
    std::vector<std::string> labels;
    for (int p = 0; p < out.paths.count(); ++p) {
      if (out.paths.paths[p].verts.front() != x) continue;
      for (int g = 0; g < G.size(); ++g)
        for (int w = 0; w < ga.action.point_count(); ++w)
          if (out.paths.paths[p].verts.back() == ga.action.apply(g, w))
            labels.push_back(triple_label(out.paths.label(p), G.label(g),
                                          ga.action.points[w]));
    }
    out.reduced_action = GroupAction::make(
        G, labels, [&](const std::string& ke, const std::string& oe) {
          auto parts = split_components(oe);
          int k = G.index(ke);
          return triple_label(parts[0], G.label(G.mul(G.index(parts[1]), G.inv(k))),
                              ga.action.points[ga.action.apply(k, ga.action.point_index(parts[2]))]);
        });
    out.reduced = translation_groupoid(out.reduced_action);
    out.cert = are_equivalent(out.pullback.groupoid, out.reduced);
    return out;
  }

  // Omega kinds: leg is the basepoint inclusion from the trivial groupoid
  GroupAction one = trivial_action({"pt"});
  EquivariantMap leg{one, pair, {pair.group.index(pair_label(G.label(G.id()), G.label(G.id())))},
                     {pair.point_index(pair_label(ga.action.points[x], ga.action.points[y]))}};
  leg.validate();
  out.pullback = translation_pullback(ev, leg);
  out.isotropies_trivial = true;
  for (auto& entry : skeleton(out.pullback.groupoid))
    if (entry.isotropy.size() != 1) out.isotropies_trivial = false;

  // reduced model: the plain set P_{x,y} = {(alpha,k) : alpha(0) = x,
  // alpha(T) = k.y} with the trivial action
  std::vector<std::string> labels;
  for (int p = 0; p < out.paths.count(); ++p) {
    if (out.paths.paths[p].verts.front() != x) continue;
    for (int k = 0; k < G.size(); ++k)
      if (out.paths.paths[p].verts.back() == ga.action.apply(k, y))
        labels.push_back(pair_label(out.paths.label(p), G.label(k)));
  }
  out.reduced_action = trivial_action(labels);
  out.reduced = translation_groupoid(out.reduced_action);
  out.cert = are_equivalent(out.pullback.groupoid, out.reduced);

  if (kind == BasedKind::OmegaX) {
    // the alternative presentation: pullback of ev_0 on the free loop groupoid
    LoopGroupoids loops = free_loop_groupoid(ga, grid, limit);
    EquivariantMap ev0{loops.reduced_action, ga.action, {}, {}};
    ev0.hom.resize(G.size());
    std::iota(ev0.hom.begin(), ev0.hom.end(), 0);
    for (auto& [p, g] : loops.reduced_objects)
      ev0.vmap.push_back(loops.paths.paths[p].verts.front());
    ev0.validate();
    EquivariantMap incl{one, ga.action, {G.id()}, {x}};
    incl.validate();
    out.alt = groupoid_pullback(to_strict(ev0), to_strict(incl));
    out.alt_cert = are_equivalent(out.alt->groupoid, out.pullback.groupoid);
  }
  return out;
}

struct PathLoopResult {
  BasedGroupoids based_px;      // P_x with its certificates
  EquivariantMap p1;            // the path-loop morphism on the pullback form
  GroupoidPullback omega_again; // pullback of p1 against the basepoint y
  EquivalenceCertificate cert;  // ~ the direct Omega_{x,y}
};

/// The path-loop morphism p1 : P_x -> G(x)X (endpoint evaluation after the
/// projection). Pulling it back over a point re-derives Omega_{x,y}.
inline PathLoopResult path_loop_morphism(int x, const GraphAction& ga, int grid, int y,
                                         long long limit = 1'000'000) {
  PathLoopResult out;
  out.based_px = based_groupoid(BasedKind::PX, ga, grid, x, x, limit);
  const auto& tp = out.based_px.pullback;
  out.p1 = EquivariantMap{tp.action, ga.action, {}, {}};
  for (int p = 0; p < tp.action.group.size(); ++p) {
    auto parts = split_components(tp.action.group.label(p));
    out.p1.hom.push_back(ga.action.group.index(parts[0]));
  }
  for (auto& t : tp.point_triples)
    out.p1.vmap.push_back(out.based_px.paths.paths[t[0]].verts.back());
  out.p1.validate();

  EquivariantMap incl{trivial_action({"pt"}), ga.action, {ga.action.group.id()}, {y}};
  incl.validate();
  out.omega_again = groupoid_pullback(to_strict(out.p1), to_strict(incl));
  auto direct = based_groupoid(BasedKind::OmegaXY, ga, grid, x, y, limit);
  out.cert = are_equivalent(out.omega_again.groupoid, direct.pullback.groupoid);
  return out;
}

}  // namespace grpd
