#pragma once

// Natural transformations of equivariant maps with the discrete-continuity
// constraint, homotopy witnesses and their verification, the contraction
// homotopy of the path space, and fibration-lift verification.

#include <optional>
#include <string>
#include <vector>

#include "grpd/core.hpp"
#include "grpd/gpath.hpp"
#include "grpd/loopbase.hpp"
#include "grpd/morphism.hpp"
#include "grpd/space.hpp"

namespace grpd {

struct EquivariantNTResult {
  std::vector<int> gamma;       // per carrier point of the source
  std::optional<int> constant;  // set when the source carrier is connected
};

/// Finds gamma : Z -> G with gamma(z) f(z) = g(z) and
/// gamma(kz) = psi(k) gamma(z) phi(k)^-1. Continuity into the discrete group
/// means gamma is constant on the connected components of the carrier graph;
/// values are chosen per component in ascending element order.
inline std::optional<EquivariantNTResult> equivariant_nt_exists(
    const GraphAction& src, const EquivariantMap& f, const EquivariantMap& g) {
  if (!(f.source == src.action) || !(g.source == src.action))
    throw InputError("maps do not share the given source");
  if (!(f.target == g.target)) throw InputError("maps do not share a target");
  const auto& K = src.action.group;
  const auto& G = f.target.group;
  const int nz = src.action.point_count();

  UnionFind uf(nz);
  for (auto& [u, v] : src.graph.edges) uf.merge(u, v);
  std::vector<int> comp_of(nz), reps;
  {
    std::map<int, int> ids;
    for (int z = 0; z < nz; ++z) {
      int r = uf.find(z);
      auto [it, fresh] = ids.emplace(r, static_cast<int>(reps.size()));
      if (fresh) reps.push_back(z);
      comp_of[z] = it->second;
    }
  }
  const int nc = static_cast<int>(reps.size());

  // per-component candidates: elements carrying f(z) to g(z) for every z
  std::vector<std::vector<int>> candidates(nc);
  for (int c = 0; c < nc; ++c)
    for (int gamma = 0; gamma < G.size(); ++gamma) {
      bool ok = true;
      for (int z = 0; z < nz && ok; ++z)
        if (comp_of[z] == c && f.target.apply(gamma, f.vmap[z]) != g.vmap[z]) ok = false;
      if (ok) candidates[c].push_back(gamma);
    }

  // the group permutes components
  std::vector<std::vector<int>> comp_act(K.size(), std::vector<int>(nc));
  for (int k = 0; k < K.size(); ++k)
    for (int c = 0; c < nc; ++c) comp_act[k][c] = comp_of[src.action.apply(k, reps[c])];

  std::vector<int> value(nc, -1);
  std::vector<char> visited(nc, 0);
  std::function<bool(int)> settle = [&](int c0) -> bool {
    for (int cand : candidates[c0]) {
      // propagate over the component orbit, collecting assignments
      std::vector<std::pair<int, int>> assigned;  // (component, value)
      auto assign = [&](int c, int v) {
        if (value[c] >= 0) return value[c] == v;
        value[c] = v;
        assigned.push_back({c, v});
        return true;
      };
      bool ok = assign(c0, cand);
      for (size_t qi = 0; ok && qi < assigned.size(); ++qi) {
        auto [c, v] = assigned[qi];
        for (int k = 0; k < K.size() && ok; ++k) {
          int v2 = G.mul(G.mul(g.hom[k], v), G.inv(f.hom[k]));
          int c2 = comp_act[k][c];
          if (!std::binary_search(candidates[c2].begin(), candidates[c2].end(), v2))
            ok = false;
          else
            ok = assign(c2, v2);
        }
      }
      if (ok) {
        for (auto& [c, v] : assigned) visited[c] = 1;
        return true;
      }
      for (auto& [c, v] : assigned) value[c] = -1;
    }
    return false;
  };
  for (int c = 0; c < nc; ++c) {
    if (visited[c] || value[c] >= 0) continue;
    if (!settle(c)) return std::nullopt;
  }

  EquivariantNTResult out;
  out.gamma.resize(nz);
  for (int z = 0; z < nz; ++z) out.gamma[z] = value[comp_of[z]];
  // final exhaustive verification of both conditions
  for (int z = 0; z < nz; ++z)
    if (f.target.apply(out.gamma[z], f.vmap[z]) != g.vmap[z])
      throw ValidationError("nt search produced an invalid witness");
  for (int k = 0; k < K.size(); ++k)
    for (int z = 0; z < nz; ++z)
      if (out.gamma[src.action.apply(k, z)] !=
          G.mul(G.mul(g.hom[k], out.gamma[z]), G.inv(f.hom[k])))
        throw ValidationError("nt search produced a non-equivariant witness");
  if (src.graph.connected() && nz > 0) {
    int h = out.gamma[0];
    out.constant = h;
    // the connected-carrier characterization: g = h f and psi = h phi h^-1
    for (int z = 0; z < nz; ++z)
      if (g.vmap[z] != f.target.apply(h, f.vmap[z]))
        throw ValidationError("constant witness does not carry f to g");
    for (int k = 0; k < K.size(); ++k)
      if (g.hom[k] != G.mul(G.mul(h, f.hom[k]), G.inv(h)))
        throw ValidationError("group components are not conjugate by the witness");
  }
  return out;
}

/// A homotopy witness between f, g : K(x)Z -> G(x)X: an equivariant map H
/// into the path space of the target at some grid, together with the two
/// endpoint natural-transformation components.
struct HomotopyWitness {
  int grid = 1;
  std::vector<int> hom;              // group component of H
  std::vector<DiscretePath> track;   // H(z), a path in the target graph
  std::vector<int> gamma0, gamma1;   // ev_0 H => f and ev_1 H => g components
};

struct HomotopyCheckReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(const std::string& msg) {
    ok = false;
    if (failures.size() < 20) failures.push_back(msg);
  }
};

/// Validates every invariant of the witness: H is a well-formed equivariant
/// graph map into the target path space, and the stored components are
/// natural transformations ev_0 H => f and ev_1 H => g.
inline HomotopyCheckReport check_homotopy(const GraphAction& src, const GraphAction& dst,
                                          const EquivariantMap& f, const EquivariantMap& g,
                                          const HomotopyWitness& w) {
  HomotopyCheckReport rep;
  if (!(f.source == src.action) || !(g.source == src.action) ||
      !(f.target == dst.action) || !(g.target == dst.action)) {
    rep.fail("maps do not match the given contexts");
    return rep;
  }
  const auto& K = src.action.group;
  const auto& G = dst.action.group;
  const int nz = src.action.point_count();
  if (static_cast<int>(w.hom.size()) != K.size() ||
      static_cast<int>(w.track.size()) != nz ||
      static_cast<int>(w.gamma0.size()) != nz ||
      static_cast<int>(w.gamma1.size()) != nz) {
    rep.fail("witness has the wrong shape");
    return rep;
  }
  for (int a = 0; a < K.size(); ++a)
    for (int b = 0; b < K.size(); ++b)
      if (w.hom[K.mul(a, b)] != G.mul(w.hom[a], w.hom[b]))
        rep.fail("H group component is not a homomorphism");
  for (int z = 0; z < nz; ++z) {
    if (w.track[z].lo != 0 || w.track[z].hi() != w.grid ||
        !is_valid_path(dst.graph, w.track[z])) {
      rep.fail("track at '" + src.action.points[z] + "' is not a full-grid path");
      return rep;
    }
  }
  for (int k = 0; k < K.size(); ++k)
    for (int z = 0; z < nz; ++z) {
      const auto& moved = w.track[src.action.apply(k, z)];
      for (int s = 0; s <= w.grid; ++s)
        if (moved.at(s) != dst.action.apply(w.hom[k], w.track[z].at(s))) {
          rep.fail("H is not equivariant at (" + K.label(k) + "," +
                   src.action.points[z] + ")");
          s = w.grid;
        }
    }
  for (auto& [u, v] : src.graph.edges)
    for (int s = 0; s <= w.grid; ++s)
      if (!dst.graph.step_ok(w.track[u].at(s), w.track[v].at(s))) {
        rep.fail("H breaks adjacency on the edge " + src.action.points[u] + "-" +
                 src.action.points[v]);
        break;
      }

  // endpoint components as natural transformations, with discrete continuity
  auto check_endpoint = [&](const std::vector<int>& gamma, bool at_end,
                            const EquivariantMap& tohit, const std::string& name) {
    for (int z = 0; z < nz; ++z) {
      int endpoint = at_end ? w.track[z].verts.back() : w.track[z].verts.front();
      if (dst.action.apply(gamma[z], endpoint) != tohit.vmap[z])
        rep.fail(name + " does not carry the endpoint to the map at '" +
                 src.action.points[z] + "'");
    }
    for (int k = 0; k < K.size(); ++k)
      for (int z = 0; z < nz; ++z)
        if (gamma[src.action.apply(k, z)] !=
            G.mul(G.mul(tohit.hom[k], gamma[z]), G.inv(w.hom[k])))
          rep.fail(name + " is not equivariant at (" + K.label(k) + "," +
                   src.action.points[z] + ")");
    for (auto& [u, v] : src.graph.edges)
      if (gamma[u] != gamma[v])
        rep.fail(name + " is not constant on the component of the edge " +
                 src.action.points[u] + "-" + src.action.points[v]);
  };
  check_endpoint(w.gamma0, false, f, "gamma0");
  check_endpoint(w.gamma1, true, g, "gamma1");
  return rep;
}

/// The constant-path witness certifying that naturally isomorphic maps are
/// homotopic: H = i o f, gamma0 = id, gamma1 = the given transformation.
inline HomotopyWitness constant_path_witness(const GraphAction& src,
                                             const EquivariantMap& f,
                                             const std::vector<int>& gamma_f_to_g,
                                             int grid = 1) {
  HomotopyWitness w;
  w.grid = grid;
  w.hom = f.hom;
  for (int z = 0; z < src.action.point_count(); ++z)
    w.track.push_back(DiscretePath{0, std::vector<int>(grid + 1, f.vmap[z])});
  w.gamma0.assign(src.action.point_count(), f.target.group.id());
  w.gamma1 = gamma_f_to_g;
  return w;
}

struct ContractionResult {
  PathSpace paths;
  EquivariantMap f;  // identity on the path space
  EquivariantMap g;  // constant path at the endpoint
  HomotopyWitness witness;
  bool stages_valid = false, starts_at_path = false, ends_constant = false,
       stages_adjacent = false, equivariant = false;
  HomotopyCheckReport report;

  bool ok() const {
    return stages_valid && starts_at_path && ends_constant && stages_adjacent &&
           equivariant && report.ok;
  }
};

/// The reparametrization contraction of the path space onto the endpoint:
/// stage s of alpha is i -> alpha(s + floor(i(T-s)/T)). Every claimed
/// property is checked on the instance rather than assumed.
inline ContractionResult contraction_homotopy(const GraphAction& ga, int grid,
                                              long long limit = 1'000'000) {
  ContractionResult out;
  out.paths = build_path_space(ga, grid, limit);
  const PathSpace& ps = out.paths;
  out.f = identity_equivariant(ps.space.action);
  out.g = compose(constant_path_map(ps), endpoint_map(ps, true));

  auto stage = [&](const DiscretePath& alpha, int s) {
    DiscretePath lam{0, {}};
    for (int i = 0; i <= grid; ++i)
      lam.verts.push_back(alpha.at(s + (i * (grid - s)) / grid));
    return lam;
  };

  out.witness.grid = grid;
  out.witness.hom = out.f.hom;
  out.witness.gamma0.assign(ps.count(), ga.action.group.id());
  out.witness.gamma1.assign(ps.count(), ga.action.group.id());
  out.stages_valid = out.starts_at_path = out.ends_constant = out.stages_adjacent =
      out.equivariant = true;
  for (int p = 0; p < ps.count(); ++p) {
    const DiscretePath& alpha = ps.paths[p];
    DiscretePath track{0, {}};
    DiscretePath prev;
    for (int s = 0; s <= grid; ++s) {
      DiscretePath lam = stage(alpha, s);
      if (!is_valid_path(ga.graph, lam)) out.stages_valid = false;
      if (s == 0 && !(lam == alpha)) out.starts_at_path = false;
      if (s == grid)
        for (int v : lam.verts)
          if (v != alpha.verts.back()) out.ends_constant = false;
      if (s > 0)
        for (int i = 0; i <= grid; ++i)
          if (!ga.graph.step_ok(prev.at(i), lam.at(i))) out.stages_adjacent = false;
      track.verts.push_back(ps.index_of(lam));
      prev = lam;
    }
    out.witness.track.push_back(std::move(track));
  }
  for (int g = 0; g < ga.action.group.size(); ++g)
    for (int p = 0; p < ps.count(); ++p)
      for (int s = 0; s <= grid; ++s) {
        int lhs = out.witness.track[ps.act(g, p)].at(s);
        int rhs = ps.act(g, out.witness.track[p].at(s));
        if (lhs != rhs) out.equivariant = false;
      }
  out.report = check_homotopy(ps.space, ps.space, out.f, out.g, out.witness);
  return out;
}

struct FibrationProblem {
  StrictMorphism Omega;  // test leg: Lc -> L(x)U, essential equivalence
  StrictMorphism K;      // Lc -> paths of the target
  StrictMorphism omega;  // ell -> L(x)U, essential equivalence
  StrictMorphism k;      // ell -> source translation groupoid
  StrictMorphism eta;    // M -> Lc  |  comparison span for the problem square
  StrictMorphism nu;     // M -> ell |
};

struct FibrationCandidate {
  StrictMorphism OmegaTilde;  // Lt -> L(x)U, essential equivalence
  StrictMorphism Ktilde;      // Lt -> paths of the source
  StrictMorphism etaP, nuP;   // M' -> Lt, M' -> ell
  StrictMorphism etaPP, nuPP; // M'' -> Lt, M'' -> Lc
};

struct FibrationReport {
  bool ok = true;
  std::vector<std::string> failures;

  void fail(const std::string& msg) {
    ok = false;
    failures.push_back(msg);
  }
};

/// Verifies that user-supplied data solves the strict-map path-lifting
/// problem for f up to 2-isomorphism. Nothing is searched except the
/// individual natural transformations of each required square.
inline FibrationReport verify_fibration_lift(const GraphAction& src,
                                             const GraphAction& dst,
                                             const EquivariantMap& f, int grid,
                                             const FibrationProblem& prob,
                                             const FibrationCandidate& cand,
                                             long long limit = 1'000'000) {
  FibrationReport rep;
  auto induced = induced_map(src, dst, f, grid, limit);
  StrictMorphism f_strict = to_strict(f);
  StrictMorphism f_star = to_strict(induced.map);
  StrictMorphism ev0_src = to_strict(endpoint_map(induced.source_paths, false));
  StrictMorphism ev0_dst = to_strict(endpoint_map(induced.target_paths, false));

  auto expect_target = [&](const StrictMorphism& m, const FiniteGroupoid& t,
                           const std::string& name) {
    if (!(m.target == t)) rep.fail(name + " has the wrong target groupoid");
  };
  expect_target(prob.K, ev0_dst.source, "K");
  expect_target(prob.k, f_strict.source, "k");
  expect_target(cand.Ktilde, ev0_src.source, "Ktilde");
  if (!(prob.Omega.target == prob.omega.target) ||
      !(prob.Omega.target == cand.OmegaTilde.target))
    rep.fail("test legs do not share the test groupoid");
  if (!rep.ok) return rep;

  auto require_ee = [&](const StrictMorphism& m, const std::string& name) {
    if (!is_essential_equivalence(m).ok())
      rep.fail(name + " is not an essential equivalence");
  };
  require_ee(prob.Omega, "Omega");
  require_ee(prob.omega, "omega");
  require_ee(prob.eta, "eta");
  require_ee(prob.nu, "nu");
  require_ee(cand.OmegaTilde, "OmegaTilde");
  require_ee(cand.etaP, "eta'");
  require_ee(cand.nuP, "nu'");
  require_ee(cand.etaPP, "eta''");
  require_ee(cand.nuPP, "nu''");

  auto require_nt = [&](const StrictMorphism& a, const StrictMorphism& b,
                        const std::string& name) {
    try {
      if (!natural_transformation_exists(a, b).has_value())
        rep.fail("no natural transformation for " + name);
    } catch (const Error& e) {
      rep.fail(std::string("ill-formed square ") + name + ": " + e.what());
    }
  };
  // the lifting problem itself must commute
  require_nt(compose(prob.Omega, prob.eta), compose(prob.omega, prob.nu),
             "Omega eta ~ omega nu");
  require_nt(compose(ev0_dst, compose(prob.K, prob.eta)),
             compose(f_strict, compose(prob.k, prob.nu)), "ev0 K eta ~ f k nu");
  // the candidate lift closes both squares
  require_nt(compose(cand.OmegaTilde, cand.etaP), compose(prob.omega, cand.nuP),
             "OmegaTilde eta' ~ omega nu'");
  require_nt(compose(ev0_src, compose(cand.Ktilde, cand.etaP)),
             compose(prob.k, cand.nuP), "ev0 Ktilde eta' ~ k nu'");
  require_nt(compose(cand.OmegaTilde, cand.etaPP), compose(prob.Omega, cand.nuPP),
             "OmegaTilde eta'' ~ Omega nu''");
  require_nt(compose(f_star, compose(cand.Ktilde, cand.etaPP)),
             compose(prob.K, cand.nuPP), "f* Ktilde eta'' ~ K nu''");
  return rep;
}

}  // namespace grpd
