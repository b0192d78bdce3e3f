#pragma once

// Shared fixtures for the test suites. The groups are built from explicit
// permutation composition so they double as independent cross-checks of the
// table-based structures in the library.

#include <array>
#include <map>
#include <string>
#include <vector>

#include "grpd/core.hpp"

namespace fixtures {

inline grpd::FiniteGroup z2() {
  return grpd::FiniteGroup::from_table({"e", "g"}, {{"e", "g"}, {"g", "e"}});
}

inline grpd::FiniteGroup z3() {
  return grpd::FiniteGroup::from_table(
      {"e", "r", "rr"},
      {{"e", "r", "rr"}, {"r", "rr", "e"}, {"rr", "e", "r"}});
}

inline grpd::FiniteGroup z2xz2() {
  return grpd::FiniteGroup::from_table({"e", "u", "v", "uv"},
                                       {{"e", "u", "v", "uv"},
                                        {"u", "e", "uv", "v"},
                                        {"v", "uv", "e", "u"},
                                        {"uv", "v", "u", "e"}});
}

// S3 assembled by composing permutations of {0,1,2}; p[i] is the image of i.
inline grpd::FiniteGroup s3() {
  using Perm = std::array<int, 3>;
  auto compose = [](const Perm& p, const Perm& q) {  // p after q
    return Perm{p[q[0]], p[q[1]], p[q[2]]};
  };
  const Perm id{0, 1, 2}, r{1, 2, 0}, s{1, 0, 2};
  std::map<std::string, Perm> elems;
  elems["e"] = id;
  elems["r"] = r;
  elems["rr"] = compose(r, r);
  elems["s"] = s;
  elems["sr"] = compose(s, r);
  elems["srr"] = compose(s, compose(r, r));
  auto name_of = [&](const Perm& p) {
    for (auto& [n, q] : elems)
      if (q == p) return n;
    throw std::logic_error("not closed");
  };
  std::vector<std::string> labels;
  for (auto& [n, p] : elems) labels.push_back(n);
  std::vector<std::vector<std::string>> mult;
  for (auto& a : labels) {
    std::vector<std::string> row;
    for (auto& b : labels) row.push_back(name_of(compose(elems[a], elems[b])));
    mult.push_back(row);
  }
  return grpd::FiniteGroup::from_table(labels, mult);
}

// Z2 on the plain set {0,1,2,3}, the nonidentity element swapping 1 and 3.
inline grpd::GroupAction reflection_set_action() {
  return grpd::GroupAction::make(
      z2(), {"0", "1", "2", "3"},
      [](const std::string& g, const std::string& x) -> std::string {
        if (g == "e") return x;
        if (x == "1") return "3";
        if (x == "3") return "1";
        return x;
      });
}

}  // namespace fixtures

#include "grpd/space.hpp"

namespace fixtures {

inline grpd::SpaceGraph cycle_graph(int n) {
  std::vector<std::string> verts;
  std::vector<std::pair<std::string, std::string>> edges;
  for (int i = 0; i < n; ++i) verts.push_back(std::to_string(i));
  for (int i = 0; i < n; ++i)
    edges.push_back({std::to_string(i), std::to_string((i + 1) % n)});
  return grpd::SpaceGraph::make(verts, edges);
}

// Z2 on the 4-cycle by the reflection fixing 0 and 2.
inline grpd::GraphAction reflection_c4() {
  grpd::GraphAction ga{cycle_graph(4), reflection_set_action()};
  ga.validate();
  return ga;
}

// Z2 on the 6-cycle by the free rotation i -> i+3.
inline grpd::GraphAction rotation_c6() {
  std::vector<std::string> verts{"0", "1", "2", "3", "4", "5"};
  auto act = grpd::GroupAction::make(z2(), verts,
                                     [](const std::string& g, const std::string& x) {
                                       if (g == "e") return x;
                                       return std::to_string((std::stoi(x) + 3) % 6);
                                     });
  grpd::GraphAction ga{cycle_graph(6), std::move(act)};
  ga.validate();
  return ga;
}

// Z2xZ2 on the plus-shaped discretized disc: centre C with arms N,S,E,W;
// u swaps N/S, v swaps E/W.
inline grpd::GraphAction plus_graph() {
  std::vector<std::string> verts{"C", "N", "S", "E", "W"};
  std::vector<std::pair<std::string, std::string>> edges{
      {"C", "N"}, {"C", "S"}, {"C", "E"}, {"C", "W"}};
  auto act = grpd::GroupAction::make(
      z2xz2(), verts, [](const std::string& g, const std::string& x) -> std::string {
        bool flip_ns = (g == "u" || g == "uv");
        bool flip_ew = (g == "v" || g == "uv");
        if (flip_ns && x == "N") return "S";
        if (flip_ns && x == "S") return "N";
        if (flip_ew && x == "E") return "W";
        if (flip_ew && x == "W") return "E";
        return x;
      });
  grpd::GraphAction ga{grpd::SpaceGraph::make(verts, edges), std::move(act)};
  ga.validate();
  return ga;
}

// Trivial group on the triangle.
inline grpd::GraphAction trivial_c3() {
  grpd::GraphAction ga{cycle_graph(3), grpd::trivial_action({"0", "1", "2"})};
  ga.validate();
  return ga;
}

// Z2 trivially on a single point (the point-groupoid instance, G = Z2).
inline grpd::GraphAction point_instance(const grpd::FiniteGroup& g) {
  grpd::GraphAction ga{grpd::SpaceGraph::make({"pt"}, {}), grpd::point_action(g)};
  ga.validate();
  return ga;
}

inline grpd::DiscretePath path_of(const grpd::SpaceGraph& g,
                                  const std::vector<std::string>& verts, int lo = 0) {
  grpd::DiscretePath p{lo, {}};
  for (auto& v : verts) p.verts.push_back(g.vertex_index(v));
  return p;
}

}  // namespace fixtures

#include <random>

#include "grpd/gpath.hpp"

namespace fixtures {

// stay-or-step continuations of a fixed start vertex
inline std::vector<std::vector<int>> continuations(const grpd::SpaceGraph& g, int start,
                                                   int len) {
  std::vector<std::vector<int>> out;
  std::vector<int> cur{start};
  auto rec = [&](auto&& self, int v, int depth) -> void {
    if (depth == len) {
      out.push_back(cur);
      return;
    }
    for (int u : g.steps_from(v)) {
      cur.push_back(u);
      self(self, u, depth + 1);
      cur.pop_back();
    }
  };
  rec(rec, start, 0);
  return out;
}

// every G-path with at most two pieces on the given grid (degenerate cut
// positions included)
inline std::vector<grpd::GPath> enumerate_gpaths_2(const grpd::GraphAction& ga, int grid) {
  std::vector<grpd::GPath> out;
  for (auto& c : grpd::enumerate_paths(ga.graph, grid))
    out.push_back(grpd::single_piece_gpath(ga, grid, c));
  const auto& G = ga.action.group;
  for (int cut = 0; cut <= grid; ++cut)
    for (int v = 0; v < ga.graph.vertex_count(); ++v)
      for (auto& left : continuations(ga.graph, v, cut))
        for (int k = 0; k < G.size(); ++k) {
          int start2 = ga.action.apply(k, left.back());
          for (auto& right : continuations(ga.graph, start2, grid - cut)) {
            grpd::GPath p{grpd::GridSubdivision{grid, {0, cut, grid}},
                          {grpd::DiscretePath{0, left}, grpd::DiscretePath{cut, right}},
                          {k}};
            grpd::validate_gpath(ga, grid, p);
            out.push_back(std::move(p));
          }
        }
  return out;
}

// deterministic pseudo-random G-path with up to max_pieces pieces
inline grpd::GPath random_gpath(std::mt19937& rng, const grpd::GraphAction& ga, int grid,
                                int max_pieces) {
  const auto& G = ga.action.group;
  int n = std::uniform_int_distribution<int>(1, max_pieces)(rng);
  std::vector<int> cuts{0};
  for (int i = 0; i + 1 < n; ++i)
    cuts.push_back(std::uniform_int_distribution<int>(0, grid)(rng));
  cuts.push_back(grid);
  std::sort(cuts.begin(), cuts.end());
  std::vector<grpd::DiscretePath> pieces;
  std::vector<int> conns;
  int start = std::uniform_int_distribution<int>(0, ga.graph.vertex_count() - 1)(rng);
  for (int i = 0; i < n; ++i) {
    grpd::DiscretePath piece{cuts[i], {start}};
    for (int s = cuts[i]; s < cuts[i + 1]; ++s) {
      auto steps = ga.graph.steps_from(piece.verts.back());
      piece.verts.push_back(
          steps[std::uniform_int_distribution<size_t>(0, steps.size() - 1)(rng)]);
    }
    pieces.push_back(piece);
    if (i + 1 < n) {
      int k = std::uniform_int_distribution<int>(0, G.size() - 1)(rng);
      conns.push_back(k);
      start = ga.action.apply(k, pieces.back().verts.back());
    }
  }
  grpd::GPath p{grpd::GridSubdivision{grid, cuts}, pieces, conns};
  grpd::validate_gpath(ga, grid, p);
  return p;
}

}  // namespace fixtures
