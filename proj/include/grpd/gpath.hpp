#pragma once

// G-paths over grid subdivisions, the colimit normal form, the equivalence
// oracle on common refinements, the explicit model equivalences (chi between
// G-paths and honest paths, xi for multiple G-paths), the Y_alpha
// construction, induced maps on path spaces and path lifting along essential
// equivalences.

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpd/core.hpp"
#include "grpd/morphism.hpp"
#include "grpd/space.hpp"
#include "grpd/util.hpp"

namespace grpd {

/// A G-path: pieces alpha_i on the subdivision's sample intervals, joined by
/// connector group elements with k_i . alpha_i(c_i) = alpha_{i+1}(c_i).
struct GPath {
  GridSubdivision sub;
  std::vector<DiscretePath> pieces;
  std::vector<int> connectors;

  bool operator==(const GPath&) const = default;
};

inline void validate_gpath(const GraphAction& ga, int grid, const GPath& p) {
  p.sub.validate();
  if (p.sub.grid != grid) throw ValidationError("G-path lives on a different grid");
  const int n = p.sub.pieces();
  if (static_cast<int>(p.pieces.size()) != n ||
      static_cast<int>(p.connectors.size()) != n - 1)
    throw ValidationError("piece/connector counts do not match the subdivision");
  for (int i = 0; i < n; ++i) {
    if (p.pieces[i].lo != p.sub.cuts[i] || p.pieces[i].hi() != p.sub.cuts[i + 1])
      throw ValidationError("piece " + std::to_string(i) +
                            " does not cover its subdivision interval");
    check_path(ga.graph, p.pieces[i]);
  }
  for (int i = 0; i + 1 < n; ++i) {
    int cut = p.sub.cuts[i + 1];
    if (ga.action.apply(p.connectors[i], p.pieces[i].at(cut)) != p.pieces[i + 1].at(cut))
      throw ValidationError("connector " + std::to_string(i) +
                            " does not match the pieces at sample " + std::to_string(cut));
  }
}

inline GPath single_piece_gpath(const GraphAction& ga, int grid, const DiscretePath& c) {
  GPath p{GridSubdivision{grid, {0, grid}}, {c}, {}};
  validate_gpath(ga, grid, p);
  return p;
}

/// Splits piece `piece` at sample `cut`, inserting an identity connector.
/// The result is colimit-equal to the input.
inline GPath refine(const GraphAction& ga, int grid, const GPath& p, int cut, int piece) {
  validate_gpath(ga, grid, p);
  if (piece < 0 || piece >= p.sub.pieces()) throw InputError("no such piece");
  if (cut < p.sub.cuts[piece] || cut > p.sub.cuts[piece + 1])
    throw InputError("cut " + std::to_string(cut) + " lies outside piece " +
                     std::to_string(piece));
  GPath q;
  q.sub.grid = grid;
  q.sub.cuts = p.sub.cuts;
  q.sub.cuts.insert(q.sub.cuts.begin() + piece + 1, cut);
  q.pieces = p.pieces;
  auto left = restrict_path(p.pieces[piece], p.sub.cuts[piece], cut);
  auto right = restrict_path(p.pieces[piece], cut, p.sub.cuts[piece + 1]);
  q.pieces[piece] = left;
  q.pieces.insert(q.pieces.begin() + piece + 1, right);
  q.connectors = p.connectors;
  q.connectors.insert(q.connectors.begin() + piece, ga.action.group.id());
  validate_gpath(ga, grid, q);
  return q;
}

/// Merges every cut whose connector is the identity. The result is the
/// minimal representative of the colimit class; idempotent.
inline GPath colimit_normal_form(const GraphAction& ga, int grid, const GPath& p) {
  validate_gpath(ga, grid, p);
  GPath q = p;
  size_t i = 0;
  while (i < q.connectors.size()) {
    if (q.connectors[i] == ga.action.group.id()) {
      q.pieces[i] = concat(ga.graph, q.pieces[i], q.pieces[i + 1]);
      q.pieces.erase(q.pieces.begin() + i + 1);
      q.connectors.erase(q.connectors.begin() + i);
      q.sub.cuts.erase(q.sub.cuts.begin() + i + 1);
    } else {
      ++i;
    }
  }
  validate_gpath(ga, grid, q);
  return q;
}

/// Applies the G^n action: pieces g_i alpha_i, connectors g_{i+1} k_i g_i^-1.
inline GPath apply_arrow(const GraphAction& ga, int grid, const GPath& p,
                         const std::vector<int>& tuple) {
  if (tuple.size() != p.pieces.size()) throw InputError("tuple size mismatch");
  GPath q;
  q.sub = p.sub;
  for (size_t i = 0; i < p.pieces.size(); ++i)
    q.pieces.push_back(act_on_path(ga, tuple[i], p.pieces[i]));
  for (size_t i = 0; i + 1 < p.pieces.size(); ++i)
    q.connectors.push_back(ga.action.group.mul(
        ga.action.group.mul(tuple[i + 1], p.connectors[i]),
        ga.action.group.inv(tuple[i])));
  validate_gpath(ga, grid, q);
  return q;
}

namespace detail {

// Refines p until its cut sequence equals `cuts`, which must contain p's
// cuts as a multiset. Position j of the target is either matched by p's
// non-final cut j or created by splitting piece j-1, so the prefixes stay
// aligned throughout.
inline GPath refine_to_cuts(const GraphAction& ga, int grid, GPath p,
                            const std::vector<int>& cuts) {
  for (size_t j = 1; j + 1 < cuts.size(); ++j) {
    if (j + 1 < p.sub.cuts.size() && p.sub.cuts[j] == cuts[j]) continue;
    if (static_cast<int>(j) - 1 >= p.sub.pieces() || p.sub.cuts[j - 1] > cuts[j] ||
        cuts[j] > p.sub.cuts[j])
      throw InputError("refinement target is not a superset of the cuts");
    p = refine(ga, grid, p, cuts[j], static_cast<int>(j) - 1);
  }
  if (p.sub.cuts != cuts) throw InputError("refinement target is not a superset of the cuts");
  return p;
}

inline std::vector<int> cut_multiset_union(const std::vector<int>& a,
                                           const std::vector<int>& b) {
  std::map<int, int> count;
  for (auto& cuts : {a, b}) {
    std::map<int, int> local;
    for (int c : cuts) ++local[c];
    for (auto& [v, k] : local) count[v] = std::max(count[v], k);
  }
  std::vector<int> out;
  for (auto& [v, k] : count)
    for (int i = 0; i < k; ++i) out.push_back(v);
  return out;
}

}  // namespace detail

struct DirectWitness {
  GridSubdivision common;   // the common refinement both sides were taken to
  GPath refined_a, refined_b;
  std::vector<int> tuple;   // g_1..g_n with refined_b = tuple . refined_a
};

/// Brute-force equivalence of G-paths: refine both to the union of their cut
/// multisets, then search tuples (g_1..g_n) with beta_i = g_i alpha_i and
/// k'_i = g_{i+1} k_i g_i^-1, in lexicographic tuple order. This is the
/// oracle that iso_check is checked against.
inline std::optional<DirectWitness> gpath_equivalent_direct(const GraphAction& ga,
                                                            int grid, const GPath& a,
                                                            const GPath& b) {
  validate_gpath(ga, grid, a);
  validate_gpath(ga, grid, b);
  auto cuts = detail::cut_multiset_union(a.sub.cuts, b.sub.cuts);
  GPath ra = detail::refine_to_cuts(ga, grid, a, cuts);
  GPath rb = detail::refine_to_cuts(ga, grid, b, cuts);
  const int n = ra.sub.pieces();
  const auto& G = ga.action.group;

  // per-piece candidate sets {g : g . alpha_i = beta_i pointwise}, ascending
  std::vector<std::vector<int>> candidates(n);
  for (int i = 0; i < n; ++i)
    for (int g = 0; g < G.size(); ++g)
      if (act_on_path(ga, g, ra.pieces[i]) == rb.pieces[i]) candidates[i].push_back(g);

  std::vector<int> tuple(n, -1);
  auto dfs = [&](auto&& self, int i) -> bool {
    if (i == n) return true;
    for (int g : candidates[i]) {
      if (i > 0) {
        int expect = G.mul(G.mul(g, ra.connectors[i - 1]), G.inv(tuple[i - 1]));
        if (expect != rb.connectors[i - 1]) continue;
      }
      tuple[i] = g;
      if (self(self, i + 1)) return true;
    }
    return false;
  };
  if (!dfs(dfs, 0)) return std::nullopt;
  DirectWitness w{ra.sub, ra, rb, tuple};
  if (!(apply_arrow(ga, grid, ra, tuple) == rb))
    throw ValidationError("equivalence witness failed its own check");
  return w;
}

/// The model equivalence chi on objects: the honest path
/// c(r) = (k_{i-1}...k_1)^-1 . alpha_i(r) on the full grid.
inline DiscretePath chi(const GraphAction& ga, int grid, const GPath& p) {
  validate_gpath(ga, grid, p);
  const auto& G = ga.action.group;
  std::vector<int> prefix(p.pieces.size());  // prefix[i] = k_{i-1} ... k_1
  prefix[0] = G.id();
  for (size_t i = 1; i < p.pieces.size(); ++i)
    prefix[i] = G.mul(p.connectors[i - 1], prefix[i - 1]);
  std::vector<int> verts(grid + 1, -1);
  for (size_t i = 0; i < p.pieces.size(); ++i) {
    int inv = G.inv(prefix[i]);
    for (int s = p.pieces[i].lo; s <= p.pieces[i].hi(); ++s)
      verts[s] = ga.action.apply(inv, p.pieces[i].at(s));
  }
  DiscretePath c{0, verts};
  check_path(ga.graph, c);
  return c;
}

/// chi^-1: an honest path as the single-piece G-path over {0, T}.
inline GPath chi_inverse(const GraphAction& ga, int grid, const DiscretePath& c) {
  if (c.lo != 0 || c.hi() != grid) throw InputError("expected a full-grid path");
  check_path(ga.graph, c);
  return single_piece_gpath(ga, grid, c);
}

/// The explicit arrow chi_inverse(chi(p)) => p predicted by the theory:
/// the tuple (e, k_1^-1, (k_2 k_1)^-1, ...) carries p onto the refinement of
/// its own chi image.
inline std::vector<int> chi_section_tuple(const GraphAction& ga, const GPath& p) {
  const auto& G = ga.action.group;
  std::vector<int> tuple(p.pieces.size());
  int prefix = G.id();
  tuple[0] = G.id();
  for (size_t i = 1; i < p.pieces.size(); ++i) {
    prefix = G.mul(p.connectors[i - 1], prefix);
    tuple[i] = G.inv(prefix);
  }
  return tuple;
}

/// Isomorphy of G-paths decided through the chi model: a group element g with
/// g . chi(a) = chi(b), tried in ascending element order.
inline std::optional<int> iso_check(const GraphAction& ga, int grid, const GPath& a,
                                    const GPath& b) {
  DiscretePath ca = chi(ga, grid, a), cb = chi(ga, grid, b);
  for (int g = 0; g < ga.action.group.size(); ++g)
    if (act_on_path(ga, g, ca) == cb) return g;
  return std::nullopt;
}

/// A multiple G-path is determined by its e-branch; the full equivariant map
/// sigma(g, r) = g^-1 . branch(r) is a view, never materialized.
struct MultipleGPath {
  DiscretePath e_branch;

  bool operator==(const MultipleGPath&) const = default;
};

inline DiscretePath xi(const MultipleGPath& m) { return m.e_branch; }
inline MultipleGPath xi_inverse(const DiscretePath& c) { return MultipleGPath{c}; }

inline int sigma_value(const GraphAction& ga, const MultipleGPath& m, int g, int r) {
  return ga.action.apply(ga.action.group.inv(g), m.e_branch.at(r));
}

/// G x Y_alpha with the gluing (g,(c_i,i+1)) ~ (k_i^-1 g,(c_i,i)), the
/// essential equivalence nu from the interval groupoid, and the equivariant
/// bijection gamma onto G x {0..T}.
struct YAlpha {
  GroupAction y_action;       // G on the classes of Y_alpha
  FiniteGroupoid y_groupoid;  // its translation groupoid
  FiniteGroupoid interval;    // interval groupoid of the subdivision
  StrictMorphism nu;          // interval -> y_groupoid
  GroupAction grid_action;    // G on G x {0..T}, h.(q,r) = (q h^-1, r)
  EquivariantMap gamma;       // y_action -> grid_action, bijective on points
};

inline YAlpha build_Y_alpha(const GraphAction& ga, int grid, const GPath& p) {
  validate_gpath(ga, grid, p);
  const auto& G = ga.action.group;
  const int n = p.sub.pieces();
  std::vector<int> prefix(n);  // as in chi
  prefix[0] = G.id();
  for (int i = 1; i < n; ++i) prefix[i] = G.mul(p.connectors[i - 1], prefix[i - 1]);

  // canonical representative of [(g,(r,piece))]: push into the earliest piece
  auto canonical = [&](int g, int r, int piece) {
    while (piece > 0 && r == p.sub.cuts[piece]) {
      g = G.mul(G.inv(p.connectors[piece - 1]), g);
      --piece;
    }
    return triple_label(G.label(g), std::to_string(r), std::to_string(piece + 1));
  };

  std::vector<std::string> ylabels;
  for (int g = 0; g < G.size(); ++g)
    for (int i = 0; i < n; ++i)
      for (int r = p.sub.cuts[i]; r <= p.sub.cuts[i + 1]; ++r)
        if (i == 0 || r != p.sub.cuts[i])
          ylabels.push_back(canonical(g, r, i));

  YAlpha out;
  out.y_action = GroupAction::make(G, ylabels, [&](const std::string& he,
                                                   const std::string& ye) {
    auto parts = split_components(ye);
    int g = G.index(parts[0]), r = std::stoi(parts[1]), piece = std::stoi(parts[2]) - 1;
    return canonical(G.mul(g, G.inv(G.index(he))), r, piece);
  });
  out.y_groupoid = translation_groupoid(out.y_action);
  out.interval = interval_groupoid(p.sub);

  out.nu = StrictMorphism{out.interval, out.y_groupoid, {}, {}};
  out.nu.obj_map.resize(out.interval.object_count());
  out.nu.arr_map.resize(out.interval.arrow_count());
  for (int x = 0; x < out.interval.object_count(); ++x) {
    auto parts = split_components(out.interval.object_label(x));
    out.nu.obj_map[x] = out.y_groupoid.object_index(
        canonical(G.id(), std::stoi(parts[0]), std::stoi(parts[1]) - 1));
  }
  for (int a = 0; a < out.interval.arrow_count(); ++a) {
    auto sparts = split_components(out.interval.object_label(out.interval.src(a)));
    auto tparts = split_components(out.interval.object_label(out.interval.tgt(a)));
    int pa = std::stoi(sparts[1]) - 1, pb = std::stoi(tparts[1]) - 1;
    int elem = G.mul(prefix[pb], G.inv(prefix[pa]));
    out.nu.arr_map[a] = out.y_groupoid.arrow_index(pair_label(
        G.label(elem), out.y_groupoid.object_label(out.nu.obj_map[out.interval.src(a)])));
  }
  out.nu.validate();

  std::vector<std::string> grid_labels;
  for (int q = 0; q < G.size(); ++q)
    for (int r = 0; r <= grid; ++r)
      grid_labels.push_back(pair_label(G.label(q), std::to_string(r)));
  out.grid_action = GroupAction::make(G, grid_labels, [&](const std::string& he,
                                                          const std::string& pe) {
    auto parts = split_components(pe);
    return pair_label(G.label(G.mul(G.index(parts[0]), G.inv(G.index(he)))), parts[1]);
  });

  out.gamma = EquivariantMap{out.y_action, out.grid_action, {}, {}};
  out.gamma.hom.resize(G.size());
  std::iota(out.gamma.hom.begin(), out.gamma.hom.end(), 0);
  out.gamma.vmap.resize(out.y_action.point_count());
  for (int y = 0; y < out.y_action.point_count(); ++y) {
    auto parts = split_components(out.y_action.points[y]);
    int g = G.index(parts[0]), piece = std::stoi(parts[2]) - 1;
    out.gamma.vmap[y] = out.grid_action.point_index(
        pair_label(G.label(G.mul(G.inv(prefix[piece]), g)), parts[1]));
  }
  out.gamma.validate();
  {
    std::vector<char> hit(out.grid_action.point_count(), 0);
    for (int v : out.gamma.vmap) {
      if (hit[v]) throw ValidationError("gamma is not injective");
      hit[v] = 1;
    }
    if (out.y_action.point_count() != out.grid_action.point_count())
      throw ValidationError("gamma is not bijective");
  }
  return out;
}

/// The pointwise G-path image under an equivariant map of graph actions.
inline GPath gpath_image(const GraphAction& src, const GraphAction& dst,
                         const EquivariantMap& f, int grid, const GPath& p) {
  validate_gpath(src, grid, p);
  GPath q;
  q.sub = p.sub;
  for (auto& piece : p.pieces) {
    DiscretePath img{piece.lo, {}};
    for (int v : piece.verts) img.verts.push_back(f.vmap[v]);
    q.pieces.push_back(std::move(img));
  }
  for (int k : p.connectors) q.connectors.push_back(f.hom[k]);
  validate_gpath(dst, grid, q);
  return q;
}

struct InducedPathMap {
  PathSpace source_paths, target_paths;
  EquivariantMap map;  // between the two path-space actions
};

/// Functoriality: the induced equivariant map on the enumerated path spaces,
/// f_*(alpha) = f o alpha with the same group component.
inline InducedPathMap induced_map(const GraphAction& src, const GraphAction& dst,
                                  const EquivariantMap& f, int grid,
                                  long long limit = 1'000'000) {
  f.validate();
  if (!(f.source == src.action) || !(f.target == dst.action))
    throw InputError("equivariant map does not match the graph actions");
  for (auto& [u, v] : src.graph.edges)
    if (!dst.graph.step_ok(f.vmap[u], f.vmap[v]))
      throw InputError("map does not send the edge " + src.graph.vertices[u] + "-" +
                       src.graph.vertices[v] + " to an edge or a stay");
  InducedPathMap out{build_path_space(src, grid, limit), build_path_space(dst, grid, limit), {}};
  out.map = EquivariantMap{out.source_paths.space.action, out.target_paths.space.action,
                           f.hom, {}};
  out.map.vmap.resize(out.source_paths.count());
  for (int p = 0; p < out.source_paths.count(); ++p) {
    DiscretePath img{0, {}};
    for (int v : out.source_paths.paths[p].verts) img.verts.push_back(f.vmap[v]);
    out.map.vmap[p] = out.target_paths.index_of(img);
  }
  out.map.validate();
  return out;
}

struct LiftResult {
  GPath lift;                // G-path in the source
  std::vector<int> h_tuple;  // target group element per lifted piece
  DirectWitness verification;  // image of the lift ~ the given G-path
};

/// Lifts a G-path along an essential equivalence f. Per-sample lexicographic
/// preimage choices stand in for the paper's local sections: within a piece a
/// single target witness h stays fixed; whenever no adjacent preimage
/// continues the piece, a cut is inserted and the connector is produced
/// through fully-faithfulness.
inline LiftResult lift_gpath(const GraphAction& src, const GraphAction& dst,
                             const EquivariantMap& f, int grid, const GPath& target) {
  f.validate();
  validate_gpath(dst, grid, target);
  if (!is_essential_equivalence(to_strict(f)).ok())
    throw InputError("the map is not an essential equivalence");
  const auto& H = dst.action.group;
  const auto& G = src.action.group;

  // deterministic section: the identity witness is preferred, then target
  // elements in label order; preimage points ascending. When next is given
  // the choice must admit an adjacent continuation over it under the same h.
  auto anchor = [&](int y, std::optional<int> next) -> std::pair<int, int> {
    auto try_h = [&](int h) -> std::optional<std::pair<int, int>> {
      for (int x = 0; x < src.action.point_count(); ++x) {
        if (f.vmap[x] != dst.action.apply(h, y)) continue;
        if (next) {
          bool can_step = false;
          for (int x2 : src.graph.steps_from(x))
            if (f.vmap[x2] == dst.action.apply(h, *next)) {
              can_step = true;
              break;
            }
          if (!can_step) continue;
        }
        return std::pair{x, h};
      }
      return std::nullopt;
    };
    if (auto r = try_h(H.id())) return *r;
    for (int h = 0; h < H.size(); ++h) {
      if (h == H.id()) continue;
      if (auto r = try_h(h)) return *r;
    }
    throw Error("no liftable preimage over '" + dst.graph.vertices[y] +
                "': the source graph cannot follow this step");
  };
  // fully-faithfulness: g with phi(g) = harr and g . x = x2
  auto ff_arrow = [&](int x, int x2, int harr) {
    for (int g = 0; g < G.size(); ++g)
      if (f.hom[g] == harr && src.action.apply(g, x) == x2) return g;
    throw ValidationError("fully-faithful preimage arrow missing");
  };

  std::vector<int> cuts{0};
  std::vector<DiscretePath> pieces;
  std::vector<int> conns, htuple;
  std::vector<int> cur;      // current lifted piece samples
  int cur_lo = 0, cur_h = -1, x_cur = -1;

  auto close_piece = [&](int at) {
    pieces.push_back(DiscretePath{cur_lo, cur});
    htuple.push_back(cur_h);
    cuts.push_back(at);
  };
  auto open_piece = [&](int s, int y, std::optional<int> next) {
    auto [x, h] = anchor(y, next);
    cur = {x};
    cur_lo = s;
    cur_h = h;
    x_cur = x;
    return std::pair{x, h};
  };

  for (int tp = 0; tp < target.sub.pieces(); ++tp) {
    const DiscretePath& piece = target.pieces[tp];
    int lo = piece.lo, hi = piece.hi();
    std::optional<int> first_next =
        lo < hi ? std::optional<int>(piece.at(lo + 1)) : std::nullopt;
    if (tp == 0) {
      open_piece(0, piece.at(0), first_next);
    } else {
      // target cut: connector through fully-faithfulness
      int prev_h = cur_h, x_prev = x_cur;
      close_piece(lo);
      auto [x, h] = open_piece(lo, piece.at(lo), first_next);
      int harr = H.mul(h, H.mul(target.connectors[tp - 1], H.inv(prev_h)));
      conns.push_back(ff_arrow(x_prev, x, harr));
    }
    for (int s = lo; s < hi; ++s) {
      int ynext = piece.at(s + 1);
      int found = -1;
      for (int x2 : src.graph.steps_from(x_cur))
        if (f.vmap[x2] == dst.action.apply(cur_h, ynext)) {
          found = x2;
          break;
        }
      if (found < 0) {
        // re-anchor over the same sample, then step
        int prev_h = cur_h, x_prev = x_cur;
        close_piece(s);
        auto [x, h] = open_piece(s, piece.at(s), ynext);
        conns.push_back(ff_arrow(x_prev, x, H.mul(h, H.inv(prev_h))));
        for (int x2 : src.graph.steps_from(x_cur))
          if (f.vmap[x2] == dst.action.apply(cur_h, ynext)) {
            found = x2;
            break;
          }
      }
      cur.push_back(found);
      x_cur = found;
    }
  }
  close_piece(grid);

  LiftResult out;
  out.lift = GPath{GridSubdivision{grid, cuts}, pieces, conns};
  validate_gpath(src, grid, out.lift);
  out.h_tuple = htuple;
  GPath image = gpath_image(src, dst, f, grid, out.lift);
  auto w = gpath_equivalent_direct(dst, grid, image, target);
  if (!w) throw ValidationError("lift verification failed: image not equivalent");
  out.verification = std::move(*w);
  return out;
}

}  // namespace grpd
