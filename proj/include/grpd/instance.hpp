#pragma once

// Instance files and the batch command front-end. Instances are JSON: a
// group (Cayley table or permutation generators), a graph, a vertex action,
// a grid size, and optional named basepoints, paths, G-paths and equivariant
// maps. Every command emits a deterministic JSON report.

#include <fstream>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "grpd/core.hpp"
#include "grpd/gpath.hpp"
#include "grpd/homotopy.hpp"
#include "grpd/loopbase.hpp"
#include "grpd/morphism.hpp"
#include "grpd/space.hpp"

namespace grpd {

using json = nlohmann::json;

inline const char* kInstanceSchema = "grpd-instance/1";
inline const char* kReportSchema = "grpd-report/1";

struct InstanceSpec {
  std::string name;
  GraphAction ga;
  int grid = 2;
  long long bound = 1'000'000;
  std::map<std::string, std::string> element_aliases;  // input name -> label
  std::map<std::string, int> basepoints;
  std::map<std::string, DiscretePath> paths;
  std::map<std::string, GPath> gpaths;
  struct MapSpec {
    GraphAction target;
    EquivariantMap map;
    std::map<std::string, GPath> target_gpaths;
  };
  std::map<std::string, MapSpec> maps;

  int element(const std::string& name) const {
    auto it = element_aliases.find(name);
    const std::string& label = it == element_aliases.end() ? name : it->second;
    auto e = ga.action.group.find(label);
    if (!e) throw InputError("unknown group element '" + name + "'");
    return *e;
  }
  const GPath& gpath(const std::string& name) const {
    auto it = gpaths.find(name);
    if (it == gpaths.end()) throw InputError("unknown G-path '" + name + "'");
    return it->second;
  }
  const MapSpec& map_spec(const std::string& name) const {
    auto it = maps.find(name);
    if (it == maps.end()) throw InputError("unknown map '" + name + "'");
    return it->second;
  }
  int basepoint(const std::string& name) const {
    auto it = basepoints.find(name);
    if (it == basepoints.end()) throw InputError("basepoint '" + name + "' not defined");
    return it->second;
  }
};

namespace detail {

inline const json& field(const json& j, const std::string& key, const std::string& ctx) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(ctx + ": missing field '" + key + "'");
  return *it;
}

inline std::string perm_label(const std::vector<int>& images,
                              const std::vector<std::string>& vertices) {
  std::vector<std::string> parts;
  for (int v : images) parts.push_back(vertices[v]);
  return "{" + join(parts, ";") + "}";
}

struct ParsedGroupAction {
  FiniteGroup group;
  std::function<std::string(const std::string&, const std::string&)> act;
  std::map<std::string, std::string> aliases;
};

inline ParsedGroupAction parse_group_action(const json& jgroup, const json& jaction,
                                            const SpaceGraph& graph,
                                            const std::string& ctx,
                                            long long closure_bound = 10'000) {
  ParsedGroupAction out;
  auto vertex_map_of = [&](const json& jmap) {
    std::vector<int> images(graph.vertex_count(), -1);
    if (!jmap.is_object()) throw InputError(ctx + ": action entries must be objects");
    for (auto& [from, to] : jmap.items()) {
      if (!to.is_string()) throw InputError(ctx + ": action values must be vertex labels");
      images[graph.vertex_index(from)] = graph.vertex_index(to.get<std::string>());
    }
    for (int v = 0; v < graph.vertex_count(); ++v)
      if (images[v] < 0)
        throw InputError(ctx + ": action does not cover vertex '" + graph.vertices[v] + "'");
    return images;
  };

  if (jgroup.contains("elements")) {
    std::vector<std::string> labels;
    for (auto& e : field(jgroup, "elements", ctx)) {
      labels.push_back(e.get<std::string>());
      check_user_label(labels.back());
    }
    std::vector<std::vector<std::string>> mult;
    for (auto& row : field(jgroup, "mult", ctx)) {
      mult.push_back(row.get<std::vector<std::string>>());
    }
    out.group = FiniteGroup::from_table(labels, mult);
    std::map<std::string, std::vector<int>> tables;
    for (auto& l : labels)
      tables[l] = vertex_map_of(field(jaction, l, ctx + ": action"));
    out.act = [tables, &graph](const std::string& g, const std::string& x) {
      return graph.vertices[tables.at(g).at(graph.vertex_index(x))];
    };
    return out;
  }

  if (!jgroup.contains("generators"))
    throw InputError(ctx + ": group needs either 'elements' or 'generators'");
  // permutation-generator form: close the generator permutations
  std::map<std::vector<int>, std::string> elems;
  std::vector<int> identity(graph.vertex_count());
  std::iota(identity.begin(), identity.end(), 0);
  elems[identity] = perm_label(identity, graph.vertices);
  std::vector<std::vector<int>> worklist{identity};
  std::vector<std::vector<int>> gens;
  for (auto& gname : field(jgroup, "generators", ctx)) {
    std::string name = gname.get<std::string>();
    auto images = vertex_map_of(field(jaction, name, ctx + ": action"));
    gens.push_back(images);
    auto [it, fresh] = elems.emplace(images, perm_label(images, graph.vertices));
    if (fresh) worklist.push_back(images);
    out.aliases[name] = it->second;
  }
  while (!worklist.empty()) {
    auto p = worklist.back();
    worklist.pop_back();
    for (auto& g : gens) {
      std::vector<int> q(p.size());
      for (size_t v = 0; v < p.size(); ++v) q[v] = g[p[v]];
      if (elems.emplace(q, perm_label(q, graph.vertices)).second) {
        worklist.push_back(q);
        if (static_cast<long long>(elems.size()) > closure_bound)
          throw BoundError(ctx + ": generator closure exceeds " +
                           std::to_string(closure_bound) + " elements");
      }
    }
  }
  if (!out.aliases.count("e")) out.aliases["e"] = elems.at(identity);
  std::vector<std::string> labels;
  std::map<std::string, std::vector<int>> by_label;
  for (auto& [perm, label] : elems) {
    labels.push_back(label);
    by_label[label] = perm;
  }
  std::map<std::vector<int>, std::string> names = elems;
  std::vector<std::vector<std::string>> mult(labels.size(),
                                             std::vector<std::string>(labels.size()));
  for (size_t i = 0; i < labels.size(); ++i)
    for (size_t j = 0; j < labels.size(); ++j) {
      const auto& p = by_label[labels[i]];
      const auto& q = by_label[labels[j]];
      std::vector<int> r(p.size());
      for (size_t v = 0; v < p.size(); ++v) r[v] = p[q[v]];
      mult[i][j] = names.at(r);
    }
  out.group = FiniteGroup::from_table(labels, mult);
  out.act = [by_label, &graph](const std::string& g, const std::string& x) {
    return graph.vertices[by_label.at(g).at(graph.vertex_index(x))];
  };
  return out;
}

inline GraphAction parse_graph_action(const json& j, const std::string& ctx) {
  const json& jgraph = field(j, "graph", ctx);
  std::vector<std::string> vertices;
  for (auto& v : field(jgraph, "vertices", ctx)) {
    vertices.push_back(v.get<std::string>());
    check_user_label(vertices.back());
  }
  std::vector<std::pair<std::string, std::string>> edges;
  for (auto& e : field(jgraph, "edges", ctx)) {
    if (!e.is_array() || e.size() != 2)
      throw InputError(ctx + ": edges must be vertex pairs");
    edges.push_back({e[0].get<std::string>(), e[1].get<std::string>()});
  }
  SpaceGraph graph = SpaceGraph::make(vertices, edges);
  auto parsed = parse_group_action(field(j, "group", ctx), field(j, "action", ctx),
                                   graph, ctx);
  GraphAction ga{graph, GroupAction::make(parsed.group, graph.vertices, parsed.act)};
  ga.validate();
  return ga;
}

inline DiscretePath parse_path(const json& j, const GraphAction& ga, int lo,
                               const std::string& ctx) {
  DiscretePath p{lo, {}};
  for (auto& v : j) p.verts.push_back(ga.graph.vertex_index(v.get<std::string>()));
  if (!is_valid_path(ga.graph, p))
    throw InputError(ctx + ": not a stay-or-step path");
  return p;
}

inline GPath parse_gpath(const json& j, const GraphAction& ga, int grid,
                         const std::map<std::string, std::string>& aliases,
                         const std::string& ctx) {
  GPath p;
  p.sub.grid = grid;
  p.sub.cuts = field(j, "cuts", ctx).get<std::vector<int>>();
  p.sub.validate();
  const json& jp = field(j, "pieces", ctx);
  for (int i = 0; i < p.sub.pieces(); ++i) {
    if (i >= static_cast<int>(jp.size())) throw InputError(ctx + ": missing piece");
    p.pieces.push_back(parse_path(jp[i], ga, p.sub.cuts[i], ctx));
  }
  for (auto& k : field(j, "connectors", ctx)) {
    std::string name = k.get<std::string>();
    auto it = aliases.find(name);
    p.connectors.push_back(ga.action.group.index(it == aliases.end() ? name : it->second));
  }
  validate_gpath(ga, grid, p);
  return p;
}

}  // namespace detail

inline InstanceSpec load_instance(const json& j) {
  if (!j.is_object()) throw InputError("instance: expected a JSON object");
  if (j.value("schema", "") != kInstanceSchema)
    throw InputError("instance: schema must be '" + std::string(kInstanceSchema) + "'");
  InstanceSpec spec;
  spec.name = j.value("name", "unnamed");
  spec.ga = detail::parse_graph_action(j, "instance");
  spec.grid = j.value("grid", 2);
  if (spec.grid < 1) throw InputError("instance: grid must be positive");
  spec.bound = j.value("bound", 1'000'000LL);
  {
    auto parsed = detail::parse_group_action(detail::field(j, "group", "instance"),
                                             detail::field(j, "action", "instance"),
                                             spec.ga.graph, "instance");
    spec.element_aliases = parsed.aliases;
  }
  if (j.contains("basepoints"))
    for (auto& [name, v] : j["basepoints"].items())
      spec.basepoints[name] = spec.ga.graph.vertex_index(v.get<std::string>());
  if (j.contains("paths"))
    for (auto& [name, jp] : j["paths"].items())
      spec.paths[name] = detail::parse_path(jp, spec.ga, 0, "path '" + name + "'");
  if (j.contains("gpaths"))
    for (auto& [name, jp] : j["gpaths"].items())
      spec.gpaths[name] = detail::parse_gpath(jp, spec.ga, spec.grid,
                                              spec.element_aliases, "gpath '" + name + "'");
  if (j.contains("maps"))
    for (auto& [name, jm] : j["maps"].items()) {
      std::string ctx = "map '" + name + "'";
      InstanceSpec::MapSpec ms;
      ms.target = detail::parse_graph_action(detail::field(jm, "target", ctx), ctx);
      EquivariantMap em{spec.ga.action, ms.target.action, {}, {}};
      auto tgt_parsed = detail::parse_group_action(
          detail::field(detail::field(jm, "target", ctx), "group", ctx),
          detail::field(detail::field(jm, "target", ctx), "action", ctx),
          ms.target.graph, ctx);
      const json& jhom = detail::field(jm, "hom", ctx);
      em.hom.resize(spec.ga.action.group.size());
      for (int g = 0; g < spec.ga.action.group.size(); ++g) {
        std::string gl = spec.ga.action.group.label(g);
        // accept alias names on both sides
        std::string key = gl;
        for (auto& [alias, label] : spec.element_aliases)
          if (label == gl && jhom.contains(alias)) key = alias;
        if (!jhom.contains(key)) throw InputError(ctx + ": hom misses '" + gl + "'");
        std::string val = jhom[key].get<std::string>();
        auto it = tgt_parsed.aliases.find(val);
        em.hom[g] = ms.target.action.group.index(
            it == tgt_parsed.aliases.end() ? val : it->second);
      }
      const json& jverts = detail::field(jm, "vertices", ctx);
      em.vmap.resize(spec.ga.graph.vertex_count());
      for (int v = 0; v < spec.ga.graph.vertex_count(); ++v) {
        const std::string& vl = spec.ga.graph.vertices[v];
        if (!jverts.contains(vl)) throw InputError(ctx + ": vertices miss '" + vl + "'");
        em.vmap[v] = ms.target.graph.vertex_index(jverts[vl].get<std::string>());
      }
      em.validate();
      ms.map = std::move(em);
      if (jm.contains("gpaths"))
        for (auto& [gname, jp] : jm["gpaths"].items())
          ms.target_gpaths[gname] = detail::parse_gpath(
              jp, ms.target, spec.grid, tgt_parsed.aliases, ctx + " gpath '" + gname + "'");
      spec.maps[name] = std::move(ms);
    }
  return spec;
}

inline InstanceSpec load_instance_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open instance file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw InputError("instance '" + path + "': " + e.what());
  }
  return load_instance(j);
}

// ---------------------------------------------------------------------------
// reports

namespace detail {

inline json path_json(const GraphAction& ga, const DiscretePath& p) {
  json arr = json::array();
  for (int v : p.verts) arr.push_back(ga.graph.vertices[v]);
  return arr;
}

inline json gpath_json(const GraphAction& ga, const GPath& p) {
  json out;
  out["cuts"] = p.sub.cuts;
  out["pieces"] = json::array();
  for (auto& piece : p.pieces) out["pieces"].push_back(path_json(ga, piece));
  out["connectors"] = json::array();
  for (int k : p.connectors) out["connectors"].push_back(ga.action.group.label(k));
  return out;
}

inline json skeleton_json(const FiniteGroupoid& gpd) {
  json arr = json::array();
  for (auto& entry : skeleton(gpd)) {
    json e;
    e["representative"] = gpd.object_label(entry.representative);
    e["isotropy_order"] = entry.isotropy.size();
    e["isotropy_elements"] = entry.isotropy.labels();
    arr.push_back(e);
  }
  return arr;
}

inline json ee_json(const EssentialEquivalenceReport& rep) {
  json out;
  out["fully_faithful"] = rep.fully_faithful;
  out["essentially_surjective"] = rep.essentially_surjective;
  out["essential_equivalence"] = rep.ok();
  out["openness_note"] = rep.openness_note;
  if (!rep.failures.empty()) out["failures"] = rep.failures;
  return out;
}

inline json header(const std::string& command, const InstanceSpec& spec, int grid) {
  json out;
  out["schema"] = kReportSchema;
  out["command"] = command;
  out["instance"] = spec.name;
  out["grid"] = grid;
  return out;
}

}  // namespace detail

struct RunOptions {
  int grid = -1;  // override, -1 keeps the instance's grid
  std::string gpath_a, gpath_b, map_name;
};

inline json run_command(const std::string& command, const InstanceSpec& spec,
                        const RunOptions& opt = {});

namespace detail {

inline json cmd_validate(const InstanceSpec& spec, int grid) {
  json out = header("validate", spec, grid);
  spec.ga.validate();
  translation_groupoid(spec.ga.action).validate();
  for (auto& [name, p] : spec.paths) check_path(spec.ga.graph, p);
  for (auto& [name, p] : spec.gpaths) validate_gpath(spec.ga, spec.grid, p);
  for (auto& [name, m] : spec.maps) m.map.validate();
  out["group_order"] = spec.ga.action.group.size();
  out["vertices"] = spec.ga.graph.vertex_count();
  out["edges"] = spec.ga.graph.edges.size();
  out["named_paths"] = spec.paths.size();
  out["named_gpaths"] = spec.gpaths.size();
  out["named_maps"] = spec.maps.size();
  out["ok"] = true;
  return out;
}

inline json cmd_orbits(const InstanceSpec& spec, int grid) {
  json out = header("orbits", spec, grid);
  json arr = json::array();
  for (auto& orbit : spec.ga.action.orbits()) {
    json o = json::array();
    for (int v : orbit) o.push_back(spec.ga.graph.vertices[v]);
    arr.push_back(o);
  }
  out["orbits"] = arr;
  out["ok"] = true;
  return out;
}

inline json cmd_skeleton(const InstanceSpec& spec, int grid) {
  json out = header("skeleton", spec, grid);
  out["skeleton"] = skeleton_json(translation_groupoid(spec.ga.action));
  out["ok"] = true;
  return out;
}

inline json cmd_normalize(const InstanceSpec& spec, int, const std::string& name) {
  // named G-paths live on the instance grid; an override has no effect here
  json out = header("normalize", spec, spec.grid);
  const GPath& p = spec.gpath(name);
  out["gpath"] = name;
  out["input"] = gpath_json(spec.ga, p);
  out["normal_form"] = gpath_json(spec.ga, colimit_normal_form(spec.ga, spec.grid, p));
  out["chi"] = path_json(spec.ga, chi(spec.ga, spec.grid, p));
  out["ok"] = true;
  return out;
}

inline json cmd_equiv(const InstanceSpec& spec, int, const std::string& a,
                      const std::string& b) {
  json out = header("equiv", spec, spec.grid);
  const GPath& pa = spec.gpath(a);
  const GPath& pb = spec.gpath(b);
  auto iso = iso_check(spec.ga, spec.grid, pa, pb);
  auto oracle = gpath_equivalent_direct(spec.ga, spec.grid, pa, pb);
  out["left"] = a;
  out["right"] = b;
  out["equivalent"] = iso.has_value();
  if (iso) out["iso_witness"] = spec.ga.action.group.label(*iso);
  if (oracle) {
    json tuple = json::array();
    for (int g : oracle->tuple) tuple.push_back(spec.ga.action.group.label(g));
    out["oracle_tuple"] = tuple;
    out["common_cuts"] = oracle->common.cuts;
  }
  bool agreement = iso.has_value() == oracle.has_value();
  out["agreement"] = agreement;
  out["ok"] = agreement;
  return out;
}

inline json cmd_loops(const InstanceSpec& spec, int grid) {
  json out = header("loops", spec, grid);
  auto loops = free_loop_groupoid(spec.ga, grid, spec.bound);
  out["pullback_objects"] = loops.pullback.groupoid.object_count();
  out["reduced_objects"] = loops.reduced.object_count();
  out["classes"] = loops.reduced.components().size();
  out["skeleton"] = skeleton_json(loops.reduced);
  out["forms_equivalent"] = loops.cert.equivalent;
  auto proj = loop_to_path_projection(loops);
  out["loop_to_path_injective_on_classes"] = proj.injective_on_classes;
  if (proj.collision) {
    out["collision"] = json::array(
        {loops.reduced.object_label(proj.collision->first),
         loops.reduced.object_label(proj.collision->second)});
  }
  out["ok"] = loops.cert.equivalent;
  return out;
}

inline json cmd_based(const InstanceSpec& spec, int grid) {
  json out = header("based", spec, grid);
  int x = spec.basepoint("x");
  int y = spec.basepoint("y");
  out["x"] = spec.ga.graph.vertices[x];
  out["y"] = spec.ga.graph.vertices[y];
  bool ok = true;
  auto omega_xy = based_groupoid(BasedKind::OmegaXY, spec.ga, grid, x, y, spec.bound);
  json jxy;
  jxy["objects"] = omega_xy.pullback.groupoid.object_count();
  jxy["reduced_objects"] = omega_xy.reduced.object_count();
  jxy["isotropies_trivial"] = omega_xy.isotropies_trivial;
  jxy["forms_equivalent"] = omega_xy.cert.equivalent;
  ok = ok && omega_xy.cert.equivalent && omega_xy.isotropies_trivial;
  out["omega_xy"] = jxy;
  auto omega_x = based_groupoid(BasedKind::OmegaX, spec.ga, grid, x, x, spec.bound);
  json jx;
  jx["objects"] = omega_x.pullback.groupoid.object_count();
  jx["reduced_objects"] = omega_x.reduced.object_count();
  jx["isotropies_trivial"] = omega_x.isotropies_trivial;
  jx["forms_equivalent"] = omega_x.cert.equivalent;
  jx["alt_pullback_equivalent"] = omega_x.alt_cert && omega_x.alt_cert->equivalent;
  ok = ok && omega_x.cert.equivalent && omega_x.isotropies_trivial &&
       omega_x.alt_cert && omega_x.alt_cert->equivalent;
  out["omega_x"] = jx;
  auto px = based_groupoid(BasedKind::PX, spec.ga, grid, x, x, spec.bound);
  json jpx;
  jpx["objects"] = px.pullback.groupoid.object_count();
  jpx["reduced_objects"] = px.reduced.object_count();
  jpx["forms_equivalent"] = px.cert.equivalent;
  ok = ok && px.cert.equivalent;
  out["p_x"] = jpx;
  auto plr = path_loop_morphism(x, spec.ga, grid, y, spec.bound);
  out["path_loop_pullback_equivalent"] = plr.cert.equivalent;
  ok = ok && plr.cert.equivalent;
  out["ok"] = ok;
  return out;
}

inline json cmd_pullback(const InstanceSpec& spec, int grid) {
  json out = header("pullback", spec, grid);
  auto ps = build_path_space(spec.ga, grid, spec.bound);
  auto tp = translation_pullback(evaluation_map(ps), diagonal_map(spec.ga.action));
  out["structure_group_order"] = tp.action.group.size();
  bool group_ok =
      tp.action.group.size() == ps.base.action.group.size() * spec.ga.action.group.size();
  out["structure_group_is_product"] = group_ok;
  out["objects"] = tp.groupoid.object_count();
  out["arrows"] = tp.groupoid.arrow_count();
  bool proj_ok = true;
  for (int p = 0; p < tp.action.group.size(); ++p) {
    auto parts = split_components(tp.action.group.label(p));
    proj_ok = proj_ok && spec.ga.action.group.label(tp.proj1.hom[p]) == parts[0] &&
              spec.ga.action.group.label(tp.proj2.hom[p]) == parts[1];
  }
  out["projections_are_product_projections"] = proj_ok;
  auto cert = are_equivalent(tp.groupoid, tp.raw.groupoid);
  out["isomorphic_to_groupoid_pullback"] = cert.equivalent;
  out["ok"] = group_ok && proj_ok && cert.equivalent;
  return out;
}

inline json cmd_morita(const InstanceSpec& spec, int grid, const std::string& name) {
  json out = header("morita", spec, grid);
  const auto& ms = spec.map_spec(name);
  out["map"] = name;
  auto source_rep = is_essential_equivalence(to_strict(ms.map));
  out["map_report"] = ee_json(source_rep);
  auto induced = induced_map(spec.ga, ms.target, ms.map, grid, spec.bound);
  auto induced_rep = is_essential_equivalence(to_strict(induced.map));
  out["induced_path_map_report"] = ee_json(induced_rep);
  out["source_paths"] = induced.source_paths.count();
  out["target_paths"] = induced.target_paths.count();
  // Morita invariance: an essential equivalence must induce one
  out["ok"] = !source_rep.ok() || induced_rep.ok();
  return out;
}

inline json cmd_lift(const InstanceSpec& spec, int, const std::string& map_name,
                     const std::string& gpath_name) {
  json out = header("lift", spec, spec.grid);
  const auto& ms = spec.map_spec(map_name);
  auto it = ms.target_gpaths.find(gpath_name);
  if (it == ms.target_gpaths.end())
    throw InputError("map '" + map_name + "' has no target G-path '" + gpath_name + "'");
  out["map"] = map_name;
  out["gpath"] = gpath_name;
  auto lifted = lift_gpath(spec.ga, ms.target, ms.map, spec.grid, it->second);
  out["lift"] = gpath_json(spec.ga, lifted.lift);
  json ht = json::array();
  for (int h : lifted.h_tuple) ht.push_back(ms.target.action.group.label(h));
  out["h_tuple"] = ht;
  out["verified"] = true;  // lift_gpath throws when verification fails
  out["ok"] = true;
  return out;
}

inline json cmd_homotopy_check(const InstanceSpec& spec, int grid) {
  json out = header("homotopy-check", spec, grid);
  auto res = contraction_homotopy(spec.ga, grid, spec.bound);
  out["paths"] = res.paths.count();
  out["stages_valid"] = res.stages_valid;
  out["starts_at_path"] = res.starts_at_path;
  out["ends_constant"] = res.ends_constant;
  out["stages_adjacent"] = res.stages_adjacent;
  out["equivariant"] = res.equivariant;
  out["witness_passes"] = res.report.ok;
  if (!res.report.failures.empty()) out["failures"] = res.report.failures;
  out["ok"] = res.ok();
  return out;
}

inline json cmd_report_all(const InstanceSpec& spec, int grid) {
  json out = header("report-all", spec, grid);
  bool ok = true;
  auto add = [&](const std::string& key, json j) {
    ok = ok && j.value("ok", true);
    j.erase("schema");
    j.erase("command");
    j.erase("instance");
    j.erase("grid");
    out[key] = std::move(j);
  };
  add("validate", cmd_validate(spec, grid));
  add("orbits", cmd_orbits(spec, grid));
  add("skeleton", cmd_skeleton(spec, grid));
  {
    json all = json::object();
    for (auto& [name, p] : spec.gpaths) all[name] = cmd_normalize(spec, grid, name);
    out["normalize"] = all;
  }
  {
    json all = json::object();
    for (auto& [a, pa] : spec.gpaths)
      for (auto& [b, pb] : spec.gpaths) {
        if (a >= b) continue;
        json j = cmd_equiv(spec, grid, a, b);
        ok = ok && j.value("ok", true);
        all[a + "~" + b] = std::move(j);
      }
    out["equiv"] = all;
  }
  add("loops", cmd_loops(spec, grid));
  if (spec.basepoints.count("x") && spec.basepoints.count("y"))
    add("based", cmd_based(spec, grid));
  add("pullback", cmd_pullback(spec, grid));
  {
    json all = json::object();
    for (auto& [name, ms] : spec.maps) {
      json j = cmd_morita(spec, grid, name);
      ok = ok && j.value("ok", true);
      all[name] = std::move(j);
      for (auto& [gname, gp] : ms.target_gpaths) {
        json l = cmd_lift(spec, grid, name, gname);
        ok = ok && l.value("ok", true);
        all[name + ":" + gname] = std::move(l);
      }
    }
    out["morita"] = all;
  }
  add("homotopy-check", cmd_homotopy_check(spec, grid));
  out["ok"] = ok;
  return out;
}

}  // namespace detail

inline json run_command(const std::string& command, const InstanceSpec& spec,
                        const RunOptions& opt) {
  int grid = opt.grid > 0 ? opt.grid : spec.grid;
  if (command == "validate") return detail::cmd_validate(spec, grid);
  if (command == "orbits") return detail::cmd_orbits(spec, grid);
  if (command == "skeleton") return detail::cmd_skeleton(spec, grid);
  if (command == "normalize") return detail::cmd_normalize(spec, grid, opt.gpath_a);
  if (command == "equiv") return detail::cmd_equiv(spec, grid, opt.gpath_a, opt.gpath_b);
  if (command == "loops") return detail::cmd_loops(spec, grid);
  if (command == "based") return detail::cmd_based(spec, grid);
  if (command == "pullback") return detail::cmd_pullback(spec, grid);
  if (command == "morita") return detail::cmd_morita(spec, grid, opt.map_name);
  if (command == "lift") return detail::cmd_lift(spec, grid, opt.map_name, opt.gpath_a);
  if (command == "homotopy-check") return detail::cmd_homotopy_check(spec, grid);
  if (command == "report-all") return detail::cmd_report_all(spec, grid);
  throw InputError("unknown command '" + command + "'");
}

}  // namespace grpd
