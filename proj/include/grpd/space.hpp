#pragma once

// The discretized space: finite graphs with group actions by automorphisms,
// stay-or-step paths on an integer sample grid, interval groupoids of
// subdivisions, and the enumerated free path space with its pointwise action.

#include <algorithm>
#include <cmath>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "grpd/core.hpp"
#include "grpd/morphism.hpp"
#include "grpd/util.hpp"

namespace grpd {

struct SpaceGraph {
  std::vector<std::string> vertices;        // sorted
  std::vector<std::pair<int, int>> edges;   // u < v, sorted, unique
  std::vector<std::vector<char>> adj;

  static SpaceGraph make(const std::vector<std::string>& vertices,
                         const std::vector<std::pair<std::string, std::string>>& edges) {
    SpaceGraph g;
    auto perm = detail::sort_permutation(vertices);
    g.vertices.resize(vertices.size());
    for (size_t i = 0; i < vertices.size(); ++i) g.vertices[i] = vertices[perm[i]];
    g.adj.assign(g.vertices.size(), std::vector<char>(g.vertices.size(), 0));
    for (auto& [a, b] : edges) {
      int u = g.vertex_index(a), v = g.vertex_index(b);
      if (u == v) throw ValidationError("self-loop at '" + a + "' (stays are modeled by repeated samples)");
      g.adj[u][v] = g.adj[v][u] = 1;
    }
    for (int u = 0; u < g.vertex_count(); ++u)
      for (int v = u + 1; v < g.vertex_count(); ++v)
        if (g.adj[u][v]) g.edges.push_back({u, v});
    return g;
  }

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  bool adjacent(int u, int v) const { return adj[u][v]; }
  bool step_ok(int u, int v) const { return u == v || adj[u][v]; }

  std::optional<int> find_vertex(const std::string& l) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), l);
    if (it == vertices.end() || *it != l) return std::nullopt;
    return static_cast<int>(it - vertices.begin());
  }
  int vertex_index(const std::string& l) const {
    auto i = find_vertex(l);
    if (!i) throw InputError("unknown vertex '" + l + "'");
    return *i;
  }

  /// Ascending ids of v and its neighbours.
  std::vector<int> steps_from(int v) const {
    std::vector<int> out;
    for (int u = 0; u < vertex_count(); ++u)
      if (u == v || adj[v][u]) out.push_back(u);
    return out;
  }

  int max_degree() const {
    int d = 0;
    for (int v = 0; v < vertex_count(); ++v) {
      int k = 0;
      for (int u = 0; u < vertex_count(); ++u) k += adj[v][u];
      d = std::max(d, k);
    }
    return d;
  }

  bool connected() const {
    if (vertices.empty()) return true;
    UnionFind uf(vertex_count());
    for (auto& [u, v] : edges) uf.merge(u, v);
    for (int v = 1; v < vertex_count(); ++v)
      if (uf.find(v) != uf.find(0)) return false;
    return true;
  }

  bool operator==(const SpaceGraph&) const = default;
};

/// A group acting on a graph by automorphisms.
struct GraphAction {
  SpaceGraph graph;
  GroupAction action;  // carrier = graph.vertices

  void validate() const {
    action.validate();
    if (action.points != graph.vertices)
      throw ValidationError("action carrier differs from the vertex set");
    for (int g = 0; g < action.group.size(); ++g)
      for (auto& [u, v] : graph.edges)
        if (!graph.adjacent(action.apply(g, u), action.apply(g, v)))
          throw ValidationError("'" + action.group.label(g) +
                                "' does not act by a graph automorphism (edge " +
                                graph.vertices[u] + "-" + graph.vertices[v] + ")");
  }
};

/// A stay-or-step vertex sequence over the integer samples lo .. lo+size-1.
struct DiscretePath {
  int lo = 0;
  std::vector<int> verts;

  int hi() const { return lo + static_cast<int>(verts.size()) - 1; }
  int at(int sample) const { return verts.at(sample - lo); }
  int length() const { return hi() - lo; }

  auto operator<=>(const DiscretePath&) const = default;
};

inline bool is_valid_path(const SpaceGraph& g, const DiscretePath& p) {
  if (p.verts.empty()) return false;
  for (size_t i = 0; i + 1 < p.verts.size(); ++i)
    if (!g.step_ok(p.verts[i], p.verts[i + 1])) return false;
  return true;
}

inline void check_path(const SpaceGraph& g, const DiscretePath& p) {
  if (!is_valid_path(g, p)) throw ValidationError("not a stay-or-step path");
}

inline std::string path_label(const SpaceGraph& g, const DiscretePath& p) {
  std::vector<std::string> parts;
  for (int v : p.verts) parts.push_back(g.vertices[v]);
  return join(parts, ";");
}

/// Pointwise action of a group element on a path; automorphisms preserve
/// adjacency, so the result is again a valid path.
inline DiscretePath act_on_path(const GraphAction& ga, int g, const DiscretePath& p) {
  DiscretePath q{p.lo, {}};
  q.verts.reserve(p.verts.size());
  for (int v : p.verts) q.verts.push_back(ga.action.apply(g, v));
  return q;
}

/// Concatenation of p on [.., a] with q on [a, ..]; the shared sample must
/// agree and is kept once.
inline DiscretePath concat(const SpaceGraph& g, const DiscretePath& p,
                           const DiscretePath& q) {
  if (q.lo != p.hi()) throw InputError("concat: intervals do not abut");
  if (q.verts.front() != p.verts.back())
    throw InputError("concat: endpoint mismatch ('" + g.vertices[p.verts.back()] +
                     "' vs '" + g.vertices[q.verts.front()] + "')");
  DiscretePath r{p.lo, p.verts};
  r.verts.insert(r.verts.end(), q.verts.begin() + 1, q.verts.end());
  return r;
}

inline DiscretePath restrict_path(const DiscretePath& p, int a, int b) {
  if (a < p.lo || b > p.hi() || a > b) throw InputError("restriction outside the path");
  DiscretePath r{a, {}};
  for (int s = a; s <= b; ++s) r.verts.push_back(p.at(s));
  return r;
}

/// A subdivision 0 = c_0 <= c_1 <= ... <= c_n = T of the sample grid;
/// repeated cuts encode degenerate pieces.
struct GridSubdivision {
  int grid = 0;
  std::vector<int> cuts;

  int pieces() const { return static_cast<int>(cuts.size()) - 1; }

  void validate() const {
    if (grid < 1) throw ValidationError("grid must be positive");
    if (cuts.size() < 2 || cuts.front() != 0 || cuts.back() != grid)
      throw ValidationError("cuts must run from 0 to the grid size");
    for (size_t i = 1; i < cuts.size(); ++i)
      if (cuts[i - 1] > cuts[i]) throw ValidationError("cuts must be nondecreasing");
  }

  bool operator==(const GridSubdivision&) const = default;
};

inline std::string tagged_sample_label(int r, int piece) {
  return pair_label(std::to_string(r), std::to_string(piece));
}

/// The interval groupoid of a subdivision: objects are tagged samples (r, i)
/// with c_{i-1} <= r <= c_i; besides units, each cut carries an invertible
/// arrow between the two copies of the cut sample, closed under composition.
/// The groupoid is thin: there is at most one arrow between two objects, and
/// one exists exactly when the sample values agree and every cut strictly
/// between the two pieces equals that value.
inline FiniteGroupoid interval_groupoid(const GridSubdivision& sub) {
  sub.validate();
  std::vector<std::pair<int, int>> objs;  // (sample, piece) with piece 1-based
  for (int i = 1; i <= sub.pieces(); ++i)
    for (int r = sub.cuts[i - 1]; r <= sub.cuts[i]; ++r) objs.push_back({r, i});
  std::map<std::pair<int, int>, int> oindex;
  std::vector<std::string> olabels;
  for (size_t i = 0; i < objs.size(); ++i) {
    oindex[objs[i]] = static_cast<int>(i);
    olabels.push_back(tagged_sample_label(objs[i].first, objs[i].second));
  }
  auto linked = [&](const std::pair<int, int>& a, const std::pair<int, int>& b) {
    if (a.first != b.first) return false;
    int lo = std::min(a.second, b.second), hi = std::max(a.second, b.second);
    for (int m = lo; m < hi; ++m)
      if (sub.cuts[m] != a.first) return false;
    return true;
  };
  std::vector<std::string> alabels;
  std::vector<int> src, tgt, inv, unit(objs.size(), -1);
  std::map<std::pair<int, int>, int> aindex;  // (src obj, tgt obj) -> arrow
  for (size_t a = 0; a < objs.size(); ++a)
    for (size_t b = 0; b < objs.size(); ++b) {
      if (!linked(objs[a], objs[b])) continue;
      aindex[{static_cast<int>(a), static_cast<int>(b)}] =
          static_cast<int>(alabels.size());
      alabels.push_back(pair_label(olabels[a], olabels[b]));
      src.push_back(static_cast<int>(a));
      tgt.push_back(static_cast<int>(b));
    }
  for (size_t k = 0; k < alabels.size(); ++k) {
    inv.push_back(aindex.at({tgt[k], src[k]}));
    if (src[k] == tgt[k]) unit[src[k]] = static_cast<int>(k);
  }
  auto comp = [&](int b, int a) { return aindex.at({src[a], tgt[b]}); };
  return FiniteGroupoid(olabels, alabels, src, tgt, unit, inv, comp);
}

/// The sample projection onto the unit groupoid on {0..T}: the left leg of a
/// G-path. Always an essential equivalence.
inline StrictMorphism interval_epsilon(const GridSubdivision& sub) {
  std::vector<std::string> samples;
  for (int r = 0; r <= sub.grid; ++r) samples.push_back(std::to_string(r));
  StrictMorphism m{interval_groupoid(sub), unit_groupoid(samples), {}, {}};
  m.obj_map.resize(m.source.object_count());
  m.arr_map.resize(m.source.arrow_count());
  for (int x = 0; x < m.source.object_count(); ++x) {
    auto parts = split_components(m.source.object_label(x));
    m.obj_map[x] = m.target.object_index(parts[0]);
  }
  for (int a = 0; a < m.source.arrow_count(); ++a)
    m.arr_map[a] = m.target.unit(m.obj_map[m.source.src(a)]);
  m.validate();
  return m;
}

/// All stay-or-step paths of a given length, in lexicographic vertex order.
inline std::vector<DiscretePath> enumerate_paths(const SpaceGraph& g, int grid,
                                                 long long limit = 1'000'000) {
  if (grid < 1) throw InputError("grid must be positive");
  double estimate = static_cast<double>(g.vertex_count()) *
                    std::pow(static_cast<double>(g.max_degree() + 1), grid);
  if (estimate > static_cast<double>(limit))
    throw BoundError("path enumeration bound exceeded: |V|*(maxdeg+1)^T = " +
                     std::to_string(static_cast<long long>(estimate)) + " > " +
                     std::to_string(limit));
  std::vector<DiscretePath> out;
  std::vector<int> cur;
  auto rec = [&](auto&& self, int v, int depth) -> void {
    cur.push_back(v);
    if (depth == grid) {
      out.push_back(DiscretePath{0, cur});
    } else {
      for (int u : g.steps_from(v)) self(self, u, depth + 1);
    }
    cur.pop_back();
  };
  for (int v = 0; v < g.vertex_count(); ++v) rec(rec, v, 0);
  return out;
}

/// The enumerated stand-in for X^I: every path, the pointwise G-action on
/// them, and the stay-or-step adjacency graph making it a graph action again.
struct PathSpace {
  int grid = 0;
  GraphAction base;
  std::vector<DiscretePath> paths;  // index order = label order
  GraphAction space;                // action of G on the path set with its graph

  int count() const { return static_cast<int>(paths.size()); }
  const std::string& label(int p) const { return space.graph.vertices[p]; }

  int index_of(const DiscretePath& p) const {
    auto it = index_.find(p.verts);
    if (it == index_.end()) throw InputError("path is not in the enumeration");
    return it->second;
  }
  int act(int g, int p) const { return space.action.apply(g, p); }

  std::map<std::vector<int>, int> index_;
};

inline PathSpace build_path_space(const GraphAction& ga, int grid,
                                  long long limit = 1'000'000) {
  ga.validate();
  PathSpace ps;
  ps.grid = grid;
  ps.base = ga;
  auto raw = enumerate_paths(ga.graph, grid, limit);
  std::vector<std::string> labels;
  for (auto& p : raw) labels.push_back(path_label(ga.graph, p));
  auto perm = detail::sort_permutation(labels);
  ps.paths.resize(raw.size());
  for (size_t i = 0; i < raw.size(); ++i) ps.paths[i] = raw[perm[i]];
  for (size_t i = 0; i < ps.paths.size(); ++i)
    ps.index_[ps.paths[i].verts] = static_cast<int>(i);

  std::vector<std::string> plabels;
  for (auto& p : ps.paths) plabels.push_back(path_label(ga.graph, p));
  std::vector<std::pair<std::string, std::string>> pedges;
  for (int i = 0; i < ps.count(); ++i)
    for (int j = i + 1; j < ps.count(); ++j) {
      bool adj = true;
      for (size_t s = 0; s < ps.paths[i].verts.size(); ++s)
        if (!ga.graph.step_ok(ps.paths[i].verts[s], ps.paths[j].verts[s])) {
          adj = false;
          break;
        }
      if (adj) pedges.push_back({plabels[i], plabels[j]});
    }
  SpaceGraph pgraph = SpaceGraph::make(plabels, pedges);
  GroupAction paction = GroupAction::make(
      ga.action.group, plabels, [&](const std::string& ge, const std::string& pl) {
        int g = ga.action.group.index(ge);
        auto it = std::lower_bound(plabels.begin(), plabels.end(), pl);
        const DiscretePath& p = ps.paths[it - plabels.begin()];
        return path_label(ga.graph, act_on_path(ga, g, p));
      });
  ps.space = GraphAction{std::move(pgraph), std::move(paction)};
  ps.space.validate();
  return ps;
}

/// The free path groupoid in its translation-groupoid model: G acting
/// pointwise on the enumerated path set.
inline FiniteGroupoid free_path_translation_groupoid(const GraphAction& ga, int grid,
                                                     long long limit = 1'000'000) {
  return translation_groupoid(build_path_space(ga, grid, limit).space.action);
}

struct QuotientGraph {
  SpaceGraph graph;        // vertices are orbit classes "[least representative]"
  std::vector<int> vmap;   // vertex of the source -> quotient vertex
  EquivariantMap projection;  // G(x)X -> e(x)(X/G)
};

/// The orbit-space graph of an action. Orbit pairs that collapse an edge to a
/// single class are rejected, since the graph model has no self-loops.
inline QuotientGraph quotient_graph(const GraphAction& ga) {
  ga.validate();
  QuotientGraph out;
  auto orbits = ga.action.orbits();
  std::vector<int> orbit_of(ga.graph.vertex_count(), -1);
  std::vector<std::string> qlabels;
  for (size_t i = 0; i < orbits.size(); ++i) {
    for (int v : orbits[i]) orbit_of[v] = static_cast<int>(i);
    qlabels.push_back("[" + ga.graph.vertices[orbits[i].front()] + "]");
  }
  std::vector<std::pair<std::string, std::string>> qedges;
  for (auto& [u, v] : ga.graph.edges) {
    if (orbit_of[u] == orbit_of[v])
      throw InputError("edge " + ga.graph.vertices[u] + "-" + ga.graph.vertices[v] +
                       " collapses to a self-loop in the quotient");
    qedges.push_back({qlabels[orbit_of[u]], qlabels[orbit_of[v]]});
  }
  out.graph = SpaceGraph::make(qlabels, qedges);
  out.vmap.resize(ga.graph.vertex_count());
  for (int v = 0; v < ga.graph.vertex_count(); ++v)
    out.vmap[v] = out.graph.vertex_index(qlabels[orbit_of[v]]);
  EquivariantMap proj{ga.action, trivial_action(out.graph.vertices), {}, {}};
  proj.hom.assign(ga.action.group.size(), 0);
  proj.vmap = out.vmap;
  proj.validate();
  out.projection = std::move(proj);
  return out;
}

}  // namespace grpd
