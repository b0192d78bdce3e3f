#pragma once

// Strict morphisms of finite groupoids, equivariant maps of translation
// groupoids, natural transformations, essential-equivalence testing,
// groupoid pullbacks and skeleton-based equivalence.

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpd/core.hpp"
#include "grpd/util.hpp"

namespace grpd {

struct StrictMorphism {
  FiniteGroupoid source, target;
  std::vector<int> obj_map;  // object of source -> object of target
  std::vector<int> arr_map;  // arrow of source -> arrow of target

  int on_obj(int x) const { return obj_map[x]; }
  int on_arr(int a) const { return arr_map[a]; }

  /// Exhaustive functoriality check.
  void validate() const {
    if (static_cast<int>(obj_map.size()) != source.object_count() ||
        static_cast<int>(arr_map.size()) != source.arrow_count())
      throw ValidationError("morphism maps have wrong size");
    for (int a = 0; a < source.arrow_count(); ++a) {
      if (target.src(arr_map[a]) != obj_map[source.src(a)] ||
          target.tgt(arr_map[a]) != obj_map[source.tgt(a)])
        throw ValidationError("morphism breaks src/tgt at arrow '" +
                              source.arrow_label(a) + "'");
      if (arr_map[source.inv(a)] != target.inv(arr_map[a]))
        throw ValidationError("morphism breaks inversion at arrow '" +
                              source.arrow_label(a) + "'");
    }
    for (int x = 0; x < source.object_count(); ++x)
      if (arr_map[source.unit(x)] != target.unit(obj_map[x]))
        throw ValidationError("morphism breaks units at object '" +
                              source.object_label(x) + "'");
    for (int a = 0; a < source.arrow_count(); ++a)
      for (int b : source.arrows_from(source.tgt(a)))
        if (arr_map[source.compose(b, a)] != target.compose(arr_map[b], arr_map[a]))
          throw ValidationError("morphism breaks composition at ('" +
                                source.arrow_label(b) + "','" + source.arrow_label(a) +
                                "')");
  }
};

inline StrictMorphism identity_morphism(const FiniteGroupoid& g) {
  StrictMorphism m{g, g, {}, {}};
  m.obj_map.resize(g.object_count());
  m.arr_map.resize(g.arrow_count());
  std::iota(m.obj_map.begin(), m.obj_map.end(), 0);
  std::iota(m.arr_map.begin(), m.arr_map.end(), 0);
  return m;
}

inline StrictMorphism compose(const StrictMorphism& g, const StrictMorphism& f) {
  if (!(f.target == g.source)) throw InputError("morphisms are not composable");
  StrictMorphism m{f.source, g.target, {}, {}};
  for (int x : f.obj_map) m.obj_map.push_back(g.obj_map[x]);
  for (int a : f.arr_map) m.arr_map.push_back(g.arr_map[a]);
  return m;
}

/// An equivariant map phi x f : G(x)X -> K(x)Y, f(gx) = phi(g) f(x).
struct EquivariantMap {
  GroupAction source, target;
  std::vector<int> hom;   // group element of source -> group element of target
  std::vector<int> vmap;  // point of source -> point of target

  void validate() const {
    if (static_cast<int>(hom.size()) != source.group.size() ||
        static_cast<int>(vmap.size()) != source.point_count())
      throw ValidationError("equivariant map has wrong shape");
    for (int a = 0; a < source.group.size(); ++a)
      for (int b = 0; b < source.group.size(); ++b)
        if (hom[source.group.mul(a, b)] != target.group.mul(hom[a], hom[b]))
          throw ValidationError("group component is not a homomorphism");
    for (int g = 0; g < source.group.size(); ++g)
      for (int x = 0; x < source.point_count(); ++x)
        if (vmap[source.apply(g, x)] != target.apply(hom[g], vmap[x]))
          throw ValidationError("equivariance f(gx) = phi(g)f(x) fails at (" +
                                source.group.label(g) + "," + source.points[x] + ")");
  }
};

inline EquivariantMap identity_equivariant(const GroupAction& a) {
  EquivariantMap m{a, a, {}, {}};
  m.hom.resize(a.group.size());
  m.vmap.resize(a.point_count());
  std::iota(m.hom.begin(), m.hom.end(), 0);
  std::iota(m.vmap.begin(), m.vmap.end(), 0);
  return m;
}

inline EquivariantMap compose(const EquivariantMap& g, const EquivariantMap& f) {
  if (!(f.target == g.source)) throw InputError("equivariant maps are not composable");
  EquivariantMap m{f.source, g.target, {}, {}};
  for (int x : f.hom) m.hom.push_back(g.hom[x]);
  for (int x : f.vmap) m.vmap.push_back(g.vmap[x]);
  return m;
}

/// The underlying strict morphism between translation groupoids.
inline StrictMorphism to_strict(const EquivariantMap& em) {
  StrictMorphism m{translation_groupoid(em.source), translation_groupoid(em.target),
                   {}, {}};
  m.obj_map.resize(m.source.object_count());
  m.arr_map.resize(m.source.arrow_count());
  for (int x = 0; x < em.source.point_count(); ++x)
    m.obj_map[m.source.object_index(em.source.points[x])] =
        m.target.object_index(em.target.points[em.vmap[x]]);
  for (int g = 0; g < em.source.group.size(); ++g)
    for (int x = 0; x < em.source.point_count(); ++x)
      m.arr_map[m.source.arrow_index(
          pair_label(em.source.group.label(g), em.source.points[x]))] =
          m.target.arrow_index(pair_label(em.target.group.label(em.hom[g]),
                                          em.target.points[em.vmap[x]]));
  m.validate();
  return m;
}

/// Component data of a natural transformation; the two morphisms live beside
/// it at the call site.
struct NaturalTransformation {
  std::vector<int> component;  // object of source -> arrow of target
};

inline void validate_nt(const StrictMorphism& phi, const StrictMorphism& psi,
                        const NaturalTransformation& t) {
  if (!(phi.source == psi.source) || !(phi.target == psi.target))
    throw InputError("natural transformation between morphisms with different ends");
  const auto& k = phi.source;
  const auto& g = phi.target;
  if (static_cast<int>(t.component.size()) != k.object_count())
    throw ValidationError("component list has wrong size");
  for (int x = 0; x < k.object_count(); ++x) {
    int a = t.component[x];
    if (g.src(a) != phi.on_obj(x) || g.tgt(a) != psi.on_obj(x))
      throw ValidationError("component at '" + k.object_label(x) +
                            "' has wrong endpoints");
  }
  for (int h = 0; h < k.arrow_count(); ++h) {
    int x = k.src(h), y = k.tgt(h);
    if (g.compose(psi.on_arr(h), t.component[x]) !=
        g.compose(t.component[y], phi.on_arr(h)))
      throw ValidationError("naturality fails at arrow '" + k.arrow_label(h) + "'");
  }
}

inline NaturalTransformation invert_nt(const StrictMorphism& phi,
                                       const StrictMorphism& psi,
                                       const NaturalTransformation& t) {
  NaturalTransformation s;
  for (int a : t.component) s.component.push_back(phi.target.inv(a));
  validate_nt(psi, phi, s);
  return s;
}

/// Searches for a natural transformation phi => psi. One component choice per
/// connected component of the source determines the rest; candidates are
/// tried in arrow-label order, so the returned witness is deterministic.
inline std::optional<NaturalTransformation> natural_transformation_exists(
    const StrictMorphism& phi, const StrictMorphism& psi) {
  if (!(phi.source == psi.source) || !(phi.target == psi.target))
    throw InputError("morphisms do not share source/target");
  const auto& k = phi.source;
  const auto& g = phi.target;
  std::vector<int> comp(k.object_count(), -1);
  for (const auto& objs : k.components()) {
    int rep = objs.front();
    bool found = false;
    for (int cand : g.hom(phi.on_obj(rep), psi.on_obj(rep))) {
      // propagate along a breadth-first spanning tree
      std::vector<int> local(k.object_count(), -1);
      local[rep] = cand;
      std::vector<int> queue{rep};
      for (size_t qi = 0; qi < queue.size(); ++qi) {
        int x = queue[qi];
        for (int a : k.arrows_from(x)) {
          int y = k.tgt(a);
          if (local[y] >= 0) continue;
          // T(y) = psi(a) o T(x) o phi(a)^-1
          local[y] = g.compose(g.compose(psi.on_arr(a), local[x]),
                               g.inv(phi.on_arr(a)));
          queue.push_back(y);
        }
      }
      // verify every arrow of the component
      bool ok = true;
      for (int x : objs) {
        for (int a : k.arrows_from(x)) {
          int y = k.tgt(a);
          if (g.compose(psi.on_arr(a), local[x]) != g.compose(local[y], phi.on_arr(a))) {
            ok = false;
            break;
          }
        }
        if (!ok) break;
      }
      if (ok) {
        for (int x : objs) comp[x] = local[x];
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  NaturalTransformation t{std::move(comp)};
  validate_nt(phi, psi, t);
  return t;
}

struct EssentialEquivalenceReport {
  bool fully_faithful = false;
  bool essentially_surjective = false;
  // In the finite discrete setting every map is open, so the paper's
  // open-surjection requirements hold automatically; recorded as a fixed
  // convention rather than computed.
  std::string openness_note =
      "all maps of finite discrete spaces are open; openness conditions hold by convention";
  std::vector<std::string> failures;
  // per target object: (arrow from it, source object whose image it reaches)
  std::vector<std::pair<int, int>> surjectivity_witness;

  bool ok() const { return fully_faithful && essentially_surjective; }
};

/// Decides whether m is an essential equivalence: fully faithful (arrows of
/// the source biject onto the evident pullback) and essentially surjective
/// (every target object has an arrow into the image).
inline EssentialEquivalenceReport is_essential_equivalence(const StrictMorphism& m) {
  EssentialEquivalenceReport rep;
  const auto& k = m.source;
  const auto& g = m.target;

  // fully faithful: a |-> (src a, tgt a, m(a)) is a bijection onto
  // {(x, y, h) | h : m(x) -> m(y)}
  std::map<std::array<int, 3>, int> image;
  bool ff = true;
  for (int a = 0; a < k.arrow_count(); ++a) {
    std::array<int, 3> key{k.src(a), k.tgt(a), m.on_arr(a)};
    auto [it, fresh] = image.emplace(key, a);
    if (!fresh) {
      ff = false;
      rep.failures.push_back("not faithful: arrows '" + k.arrow_label(it->second) +
                             "' and '" + k.arrow_label(a) + "' share endpoints and image");
    }
  }
  for (int x = 0; x < k.object_count() && ff; ++x)
    for (int y = 0; y < k.object_count() && ff; ++y)
      for (int h : g.hom(m.on_obj(x), m.on_obj(y)))
        if (!image.count({x, y, h})) {
          ff = false;
          rep.failures.push_back("not full: no arrow '" + k.object_label(x) + "' -> '" +
                                 k.object_label(y) + "' over '" + g.arrow_label(h) + "'");
        }
  rep.fully_faithful = ff;

  // essentially surjective: every object of the target is the source of an
  // arrow whose target lies in the image of m
  std::vector<char> in_image(g.object_count(), 0);
  for (int x = 0; x < k.object_count(); ++x) in_image[m.on_obj(x)] = 1;
  std::vector<int> obj_of_image(g.object_count(), -1);
  for (int x = k.object_count() - 1; x >= 0; --x) obj_of_image[m.on_obj(x)] = x;
  bool es = true;
  rep.surjectivity_witness.assign(g.object_count(), {-1, -1});
  for (int y = 0; y < g.object_count(); ++y) {
    bool hit = false;
    for (int a : g.arrows_from(y)) {
      if (in_image[g.tgt(a)]) {
        rep.surjectivity_witness[y] = {a, obj_of_image[g.tgt(a)]};
        hit = true;
        break;
      }
    }
    if (!hit) {
      es = false;
      rep.failures.push_back("not essentially surjective: object '" +
                             g.object_label(y) + "' unreached");
    }
  }
  rep.essentially_surjective = es;
  return rep;
}

struct GroupoidPullback {
  FiniteGroupoid groupoid;
  StrictMorphism pi1;           // onto psi.source
  StrictMorphism pi2;           // onto phi.source
  NaturalTransformation square; // phi o pi2 => psi o pi1, component = middle arrow
  std::vector<std::array<int, 3>> object_triples;  // (k-object, g-arrow, l-object)
  std::vector<std::array<int, 3>> arrow_triples;   // (k-arrow, g-arrow, l-arrow)
};

/// The groupoid pullback of psi : K -> G and phi : L -> G. Objects are
/// triples (k, g, l) with g : phi(l) -> psi(k); arrows likewise with
/// g : phi(tgt l) -> psi(tgt k) and source (s(k), psi(k)^-1 g phi(l), s(l)).
inline GroupoidPullback groupoid_pullback(const StrictMorphism& psi,
                                          const StrictMorphism& phi) {
  if (!(psi.target == phi.target)) throw InputError("pullback legs have different targets");
  const auto& K = psi.source;
  const auto& L = phi.source;
  const auto& G = psi.target;

  GroupoidPullback out;
  std::map<std::array<int, 3>, int> oindex, aindex;
  std::vector<std::string> olabels, alabels;
  for (int k = 0; k < K.object_count(); ++k)
    for (int g = 0; g < G.arrow_count(); ++g) {
      if (G.tgt(g) != psi.on_obj(k)) continue;
      for (int l = 0; l < L.object_count(); ++l) {
        if (G.src(g) != phi.on_obj(l)) continue;
        oindex[{k, g, l}] = static_cast<int>(out.object_triples.size());
        out.object_triples.push_back({k, g, l});
        olabels.push_back(
            triple_label(K.object_label(k), G.arrow_label(g), L.object_label(l)));
      }
    }
  for (int k = 0; k < K.arrow_count(); ++k)
    for (int g = 0; g < G.arrow_count(); ++g) {
      if (G.tgt(g) != psi.on_obj(K.tgt(k))) continue;
      for (int l = 0; l < L.arrow_count(); ++l) {
        if (G.src(g) != phi.on_obj(L.tgt(l))) continue;
        aindex[{k, g, l}] = static_cast<int>(out.arrow_triples.size());
        out.arrow_triples.push_back({k, g, l});
        alabels.push_back(
            triple_label(K.arrow_label(k), G.arrow_label(g), L.arrow_label(l)));
      }
    }

  auto mid_src = [&](const std::array<int, 3>& t) {
    // psi(k)^-1 o g o phi(l)
    return G.compose(G.inv(psi.on_arr(t[0])), G.compose(t[1], phi.on_arr(t[2])));
  };
  std::vector<int> src, tgt, inv, unit;
  for (auto& t : out.arrow_triples) {
    src.push_back(oindex.at({K.src(t[0]), mid_src(t), L.src(t[2])}));
    tgt.push_back(oindex.at({K.tgt(t[0]), t[1], L.tgt(t[2])}));
    inv.push_back(aindex.at({K.inv(t[0]), mid_src(t), L.inv(t[2])}));
  }
  for (auto& t : out.object_triples)
    unit.push_back(aindex.at({K.unit(t[0]), t[1], L.unit(t[2])}));
  auto comp = [&](int b, int a) {
    const auto& tb = out.arrow_triples[b];
    const auto& ta = out.arrow_triples[a];
    return aindex.at({K.compose(tb[0], ta[0]), tb[1], L.compose(tb[2], ta[2])});
  };
  out.groupoid = FiniteGroupoid(olabels, alabels, src, tgt, unit, inv, comp);

  // the construction sorts by label; remap the decode tables and projections
  std::vector<std::array<int, 3>> osorted(out.object_triples.size()),
      asorted(out.arrow_triples.size());
  for (size_t i = 0; i < olabels.size(); ++i)
    osorted[out.groupoid.object_index(olabels[i])] = out.object_triples[i];
  for (size_t i = 0; i < alabels.size(); ++i)
    asorted[out.groupoid.arrow_index(alabels[i])] = out.arrow_triples[i];
  out.object_triples = std::move(osorted);
  out.arrow_triples = std::move(asorted);

  out.pi1 = StrictMorphism{out.groupoid, K, {}, {}};
  out.pi2 = StrictMorphism{out.groupoid, L, {}, {}};
  for (auto& t : out.object_triples) {
    out.pi1.obj_map.push_back(t[0]);
    out.pi2.obj_map.push_back(t[2]);
  }
  for (auto& t : out.arrow_triples) {
    out.pi1.arr_map.push_back(t[0]);
    out.pi2.arr_map.push_back(t[2]);
  }
  out.pi1.validate();
  out.pi2.validate();
  for (auto& t : out.object_triples) out.square.component.push_back(t[1]);
  validate_nt(compose(phi, out.pi2), compose(psi, out.pi1), out.square);
  return out;
}

struct TranslationPullback {
  GroupAction action;      // (G x H) acting on P
  FiniteGroupoid groupoid; // its translation groupoid
  EquivariantMap proj1, proj2;
  std::vector<std::array<int, 3>> point_triples;  // (x, l-group-element, y)
  GroupoidPullback raw;            // groupoid_pullback of the underlying stricts
  StrictMorphism iso_to_raw;       // bijective strict morphism onto raw.groupoid
};

/// Pullback of two equivariant maps into a common translation groupoid,
/// presented again as a translation groupoid: the structure group is the
/// product of the two structure groups and the projections' group components
/// are the product projections.
inline TranslationPullback translation_pullback(const EquivariantMap& psi,
                                                const EquivariantMap& phi) {
  if (!(psi.target == phi.target)) throw InputError("pullback legs have different targets");
  psi.validate();
  phi.validate();
  const GroupAction& X = psi.source;
  const GroupAction& Y = phi.source;
  const GroupAction& Z = psi.target;

  TranslationPullback out;
  // points (x, l, y) with l . phi(y) = psi(x)
  std::vector<std::string> labels;
  for (int x = 0; x < X.point_count(); ++x)
    for (int l = 0; l < Z.group.size(); ++l)
      for (int y = 0; y < Y.point_count(); ++y)
        if (Z.apply(l, phi.vmap[y]) == psi.vmap[x]) {
          out.point_triples.push_back({x, l, y});
          labels.push_back(
              triple_label(X.points[x], Z.group.label(l), Y.points[y]));
        }
  FiniteGroup product = FiniteGroup::product(X.group, Y.group);
  auto act = [&](const std::string& ge, const std::string& pt) {
    auto gparts = split_components(ge);
    auto pparts = split_components(pt);
    int g = X.group.index(gparts[0]), h = Y.group.index(gparts[1]);
    int x = X.point_index(pparts[0]), l = Z.group.index(pparts[1]),
        y = Y.point_index(pparts[2]);
    int l2 = Z.group.mul(Z.group.mul(psi.hom[g], l), Z.group.inv(phi.hom[h]));
    return triple_label(X.points[X.apply(g, x)], Z.group.label(l2),
                        Y.points[Y.apply(h, y)]);
  };
  out.action = GroupAction::make(product, labels, act);
  // re-sort decode to the action's point order
  {
    std::vector<std::array<int, 3>> sorted(out.point_triples.size());
    for (size_t i = 0; i < labels.size(); ++i)
      sorted[out.action.point_index(labels[i])] = out.point_triples[i];
    out.point_triples = std::move(sorted);
  }
  out.groupoid = translation_groupoid(out.action);

  out.proj1 = EquivariantMap{out.action, X, {}, {}};
  out.proj2 = EquivariantMap{out.action, Y, {}, {}};
  for (int p = 0; p < product.size(); ++p) {
    auto parts = split_components(product.label(p));
    out.proj1.hom.push_back(X.group.index(parts[0]));
    out.proj2.hom.push_back(Y.group.index(parts[1]));
  }
  for (auto& t : out.point_triples) {
    out.proj1.vmap.push_back(t[0]);
    out.proj2.vmap.push_back(t[2]);
  }
  out.proj1.validate();
  out.proj2.validate();

  // explicit isomorphism with the plain groupoid pullback
  out.raw = groupoid_pullback(to_strict(psi), to_strict(phi));
  StrictMorphism iso{out.groupoid, out.raw.groupoid, {}, {}};
  iso.obj_map.resize(out.groupoid.object_count());
  iso.arr_map.resize(out.groupoid.arrow_count());
  for (int o = 0; o < out.groupoid.object_count(); ++o) {
    auto& t = out.point_triples[o];
    std::string mid = pair_label(Z.group.label(t[1]), Z.points[phi.vmap[t[2]]]);
    iso.obj_map[o] = out.raw.groupoid.object_index(
        triple_label(X.points[t[0]], mid, Y.points[t[2]]));
  }
  for (int a = 0; a < out.groupoid.arrow_count(); ++a) {
    auto parts = split_components(out.groupoid.arrow_label(a));  // ((g,h),(x,l,y))
    auto ge = split_components(parts[0]);
    const auto& pt = out.point_triples[out.action.point_index(parts[1])];
    int g = X.group.index(ge[0]), h = Y.group.index(ge[1]);
    int x = pt[0], l = pt[1], y = pt[2];
    int lmid = Z.group.mul(Z.group.mul(psi.hom[g], l), Z.group.inv(phi.hom[h]));
    std::string karrow = pair_label(X.group.label(g), X.points[x]);
    std::string larrow = pair_label(Y.group.label(h), Y.points[y]);
    std::string garrow =
        pair_label(Z.group.label(lmid), Z.points[phi.vmap[Y.apply(h, y)]]);
    iso.arr_map[a] = out.raw.groupoid.arrow_index(
        triple_label(karrow, garrow, larrow));
  }
  iso.validate();
  out.iso_to_raw = std::move(iso);
  return out;
}

struct EquivalenceCertificate {
  bool equivalent = false;
  struct Match {
    int rep_a = -1, rep_b = -1;
    std::vector<int> group_iso;  // isotropy(A, rep_a) element -> isotropy(B, rep_b)
  };
  std::vector<Match> matching;
  std::string reason;
};

/// Equivalence of finite groupoids decided on skeletons: a bijection between
/// components with isomorphic isotropy groups. For finite groupoids this is
/// exactly equivalence of categories.
inline EquivalenceCertificate are_equivalent(const FiniteGroupoid& a,
                                             const FiniteGroupoid& b) {
  EquivalenceCertificate cert;
  auto sa = skeleton(a), sb = skeleton(b);
  if (sa.size() != sb.size()) {
    cert.reason = "component counts differ: " + std::to_string(sa.size()) + " vs " +
                  std::to_string(sb.size());
    return cert;
  }
  std::vector<char> used(sb.size(), 0);
  for (auto& ea : sa) {
    bool matched = false;
    for (size_t j = 0; j < sb.size(); ++j) {
      if (used[j]) continue;
      if (auto iso = find_group_isomorphism(ea.isotropy, sb[j].isotropy)) {
        used[j] = 1;
        cert.matching.push_back({ea.representative, sb[j].representative, *iso});
        matched = true;
        break;
      }
    }
    if (!matched) {
      cert.reason = "no component of B matches isotropy at '" +
                    a.object_label(ea.representative) + "'";
      cert.matching.clear();
      return cert;
    }
  }
  cert.equivalent = true;
  return cert;
}

}  // namespace grpd
