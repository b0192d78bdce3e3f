#pragma once

// Finite groups, finite group actions, finite groupoids and the standard
// groupoid constructors (unit, point, multiplication, conjugation,
// translation). Everything is stored as explicit tables over
// lexicographically sorted labels, so all outputs are deterministic and all
// laws are exhaustively checkable.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "grpd/util.hpp"

namespace grpd {

namespace detail {

// Sorting permutation of labels; throws on duplicates.
inline std::vector<int> sort_permutation(const std::vector<std::string>& labels) {
  std::vector<int> perm(labels.size());
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](int a, int b) { return labels[a] < labels[b]; });
  for (size_t i = 1; i < perm.size(); ++i)
    if (labels[perm[i - 1]] == labels[perm[i]])
      throw ValidationError("duplicate label '" + labels[perm[i]] + "'");
  return perm;
}

}  // namespace detail

class FiniteGroup {
 public:
  FiniteGroup() = default;

  /// Builds a group from a full Cayley table: mult[i][j] = labels[i]*labels[j].
  /// All group axioms are checked exhaustively.
  static FiniteGroup from_table(const std::vector<std::string>& labels,
                                const std::vector<std::vector<std::string>>& mult) {
    FiniteGroup g;
    auto perm = detail::sort_permutation(labels);
    const int n = static_cast<int>(labels.size());
    g.labels_.resize(n);
    std::vector<int> where(n);  // old index -> new index
    for (int i = 0; i < n; ++i) {
      g.labels_[i] = labels[perm[i]];
      where[perm[i]] = i;
    }
    std::unordered_map<std::string, int> idx;
    for (int i = 0; i < n; ++i) idx[g.labels_[i]] = i;
    if (static_cast<int>(mult.size()) != n)
      throw ValidationError("multiplication table has wrong shape");
    g.mult_.assign(n, std::vector<int>(n, -1));
    for (int i = 0; i < n; ++i) {
      if (static_cast<int>(mult[i].size()) != n)
        throw ValidationError("multiplication table has wrong shape");
      for (int j = 0; j < n; ++j) {
        auto it = idx.find(mult[i][j]);
        if (it == idx.end())
          throw ValidationError("table entry '" + mult[i][j] + "' is not an element");
        g.mult_[where[i]][where[j]] = it->second;
      }
    }
    g.finish_and_validate();
    return g;
  }

  /// Builds from an already-indexed table (labels need not be sorted yet).
  static FiniteGroup from_index_table(const std::vector<std::string>& labels,
                                      const std::vector<std::vector<int>>& mult) {
    std::vector<std::vector<std::string>> named(labels.size());
    for (size_t i = 0; i < labels.size(); ++i) {
      named[i].resize(labels.size());
      for (size_t j = 0; j < labels.size(); ++j) named[i][j] = labels.at(mult[i][j]);
    }
    return from_table(labels, named);
  }

  static FiniteGroup trivial() { return from_table({"e"}, {{"e"}}); }

  /// Cyclic group of order n with labels e, r1, .., r{n-1}.
  static FiniteGroup cyclic(int n) {
    if (n < 1 || n > 9) throw InputError("cyclic(n) supports 1 <= n <= 9");
    std::vector<std::string> labels;
    labels.push_back("e");
    for (int i = 1; i < n; ++i) labels.push_back("r" + std::to_string(i));
    std::vector<std::vector<std::string>> mult(n, std::vector<std::string>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) mult[i][j] = labels[(i + j) % n];
    return from_table(labels, mult);
  }

  static FiniteGroup product(const FiniteGroup& a, const FiniteGroup& b) {
    std::vector<std::string> labels;
    for (int i = 0; i < a.size(); ++i)
      for (int j = 0; j < b.size(); ++j)
        labels.push_back(pair_label(a.label(i), b.label(j)));
    const int n = static_cast<int>(labels.size());
    auto id = [&](int i, int j) { return i * b.size() + j; };
    std::vector<std::vector<int>> mult(n, std::vector<int>(n));
    for (int i1 = 0; i1 < a.size(); ++i1)
      for (int j1 = 0; j1 < b.size(); ++j1)
        for (int i2 = 0; i2 < a.size(); ++i2)
          for (int j2 = 0; j2 < b.size(); ++j2)
            mult[id(i1, j1)][id(i2, j2)] = id(a.mul(i1, i2), b.mul(j1, j2));
    return from_index_table(labels, mult);
  }

  int size() const { return static_cast<int>(labels_.size()); }
  int mul(int a, int b) const { return mult_[a][b]; }
  int inv(int a) const { return inv_[a]; }
  int id() const { return id_; }
  const std::string& label(int i) const { return labels_[i]; }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<int> find(const std::string& l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || *it != l) return std::nullopt;
    return static_cast<int>(it - labels_.begin());
  }
  int index(const std::string& l) const {
    auto i = find(l);
    if (!i) throw InputError("unknown group element '" + l + "'");
    return *i;
  }

  int element_order(int a) const {
    int x = a, n = 1;
    while (x != id_) {
      x = mul(x, a);
      ++n;
    }
    return n;
  }

  bool is_subgroup(const std::vector<int>& subset) const {
    std::set<int> s(subset.begin(), subset.end());
    if (!s.count(id_)) return false;
    for (int a : s)
      for (int b : s)
        if (!s.count(mul(a, b))) return false;
    for (int a : s)
      if (!s.count(inv(a))) return false;
    return true;
  }

  /// Restricts the table to a subset that must be a subgroup; labels kept.
  FiniteGroup subgroup(const std::vector<int>& subset) const {
    if (!is_subgroup(subset)) throw InputError("subset is not a subgroup");
    std::set<int> s(subset.begin(), subset.end());
    std::vector<std::string> labels;
    for (int a : s) labels.push_back(label(a));
    std::vector<std::vector<std::string>> mult;
    for (int a : s) {
      std::vector<std::string> row;
      for (int b : s) row.push_back(label(mul(a, b)));
      mult.push_back(std::move(row));
    }
    return from_table(labels, mult);
  }

  bool operator==(const FiniteGroup&) const = default;

 private:
  void finish_and_validate() {
    const int n = size();
    // identity
    id_ = -1;
    for (int e = 0; e < n; ++e) {
      bool ok = true;
      for (int a = 0; a < n; ++a)
        if (mul(e, a) != a || mul(a, e) != a) {
          ok = false;
          break;
        }
      if (ok) {
        id_ = e;
        break;
      }
    }
    if (id_ < 0) throw ValidationError("group has no two-sided identity");
    // inverses
    inv_.assign(n, -1);
    for (int a = 0; a < n; ++a) {
      for (int b = 0; b < n; ++b)
        if (mul(b, a) == id_ && mul(a, b) == id_) {
          inv_[a] = b;
          break;
        }
      if (inv_[a] < 0)
        throw ValidationError("element '" + label(a) + "' has no inverse");
    }
    // associativity, all triples
    for (int a = 0; a < n; ++a)
      for (int b = 0; b < n; ++b)
        for (int c = 0; c < n; ++c)
          if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw ValidationError("multiplication is not associative at (" + label(a) +
                                  "," + label(b) + "," + label(c) + ")");
  }

  std::vector<std::string> labels_;
  std::vector<std::vector<int>> mult_;
  std::vector<int> inv_;
  int id_ = -1;
};

/// A finite left action of a FiniteGroup on a finite labeled set.
struct GroupAction {
  FiniteGroup group;
  std::vector<std::string> points;        // sorted
  std::vector<std::vector<int>> table;    // table[g][x]

  static GroupAction make(FiniteGroup g, const std::vector<std::string>& points,
                          const std::function<std::string(const std::string& elem,
                                                          const std::string& point)>& act) {
    GroupAction a;
    a.group = std::move(g);
    auto perm = detail::sort_permutation(points);
    a.points.resize(points.size());
    for (size_t i = 0; i < points.size(); ++i) a.points[i] = points[perm[i]];
    a.table.assign(a.group.size(), std::vector<int>(a.points.size(), -1));
    for (int gi = 0; gi < a.group.size(); ++gi)
      for (int x = 0; x < static_cast<int>(a.points.size()); ++x) {
        std::string y = act(a.group.label(gi), a.points[x]);
        a.table[gi][x] = a.point_index(y);
      }
    a.validate();
    return a;
  }

  int apply(int g, int x) const { return table[g][x]; }
  int point_count() const { return static_cast<int>(points.size()); }
  const std::string& point_label(int x) const { return points[x]; }

  std::optional<int> find_point(const std::string& l) const {
    auto it = std::lower_bound(points.begin(), points.end(), l);
    if (it == points.end() || *it != l) return std::nullopt;
    return static_cast<int>(it - points.begin());
  }
  int point_index(const std::string& l) const {
    auto i = find_point(l);
    if (!i) throw InputError("unknown point '" + l + "'");
    return *i;
  }

  void validate() const {
    const int n = group.size(), m = point_count();
    for (int x = 0; x < m; ++x)
      if (apply(group.id(), x) != x)
        throw ValidationError("action: identity does not fix '" + points[x] + "'");
    for (int g = 0; g < n; ++g)
      for (int h = 0; h < n; ++h)
        for (int x = 0; x < m; ++x)
          if (apply(g, apply(h, x)) != apply(group.mul(g, h), x))
            throw ValidationError("action: compatibility fails at (" + group.label(g) +
                                  "," + group.label(h) + "," + points[x] + ")");
  }

  /// Orbit of x, ascending.
  std::vector<int> orbit(int x) const {
    std::set<int> o;
    for (int g = 0; g < group.size(); ++g) o.insert(apply(g, x));
    return {o.begin(), o.end()};
  }
  /// Orbit partition, each orbit ascending, ordered by least element.
  std::vector<std::vector<int>> orbits() const {
    std::vector<std::vector<int>> out;
    std::vector<char> seen(point_count(), 0);
    for (int x = 0; x < point_count(); ++x) {
      if (seen[x]) continue;
      auto o = orbit(x);
      for (int y : o) seen[y] = 1;
      out.push_back(std::move(o));
    }
    return out;
  }
  /// Stabilizer subgroup of x as element ids, ascending.
  std::vector<int> stabilizer(int x) const {
    std::vector<int> s;
    for (int g = 0; g < group.size(); ++g)
      if (apply(g, x) == x) s.push_back(g);
    return s;
  }

  bool operator==(const GroupAction&) const = default;
};

inline GroupAction trivial_action(const std::vector<std::string>& points) {
  return GroupAction::make(FiniteGroup::trivial(), points,
                           [](const std::string&, const std::string& p) { return p; });
}

inline GroupAction point_action(const FiniteGroup& g) {
  return GroupAction::make(g, {"pt"},
                           [](const std::string&, const std::string& p) { return p; });
}

inline GroupAction multiplication_action(const FiniteGroup& g,
                                         const std::vector<std::string>& subgroup_labels) {
  std::vector<int> sub;
  for (auto& l : subgroup_labels) sub.push_back(g.index(l));
  FiniteGroup h = g.subgroup(sub);  // throws if not a subgroup
  return GroupAction::make(h, g.labels(), [&](const std::string& he, const std::string& x) {
    return g.label(g.mul(g.index(he), g.index(x)));
  });
}

inline GroupAction conjugation_action(const FiniteGroup& g,
                                      const std::vector<std::string>& subgroup_labels) {
  std::vector<int> sub;
  for (auto& l : subgroup_labels) sub.push_back(g.index(l));
  FiniteGroup h = g.subgroup(sub);
  return GroupAction::make(h, g.labels(), [&](const std::string& he, const std::string& x) {
    int hi = g.index(he), xi = g.index(x);
    return g.label(g.mul(g.mul(hi, xi), g.inv(hi)));
  });
}

inline GroupAction product_action(const GroupAction& a, const GroupAction& b) {
  FiniteGroup pg = FiniteGroup::product(a.group, b.group);
  std::vector<std::string> points;
  for (auto& x : a.points)
    for (auto& y : b.points) points.push_back(pair_label(x, y));
  return GroupAction::make(pg, points, [&](const std::string& g, const std::string& p) {
    // both labels are canonical "(u,v)" pairs; split at the top-level comma
    auto split = [](const std::string& s) -> std::pair<std::string, std::string> {
      int depth = 0;
      for (size_t i = 1; i + 1 < s.size(); ++i) {
        if (s[i] == '(') ++depth;
        if (s[i] == ')') --depth;
        if (s[i] == ',' && depth == 0)
          return {s.substr(1, i - 1), s.substr(i + 1, s.size() - i - 2)};
      }
      throw ValidationError("malformed pair label '" + s + "'");
    };
    auto [g1, g2] = split(g);
    auto [x1, x2] = split(p);
    return pair_label(a.points[a.apply(a.group.index(g1), a.point_index(x1))],
                      b.points[b.apply(b.group.index(g2), b.point_index(x2))]);
  });
}

/// A finite groupoid: explicit object/arrow sets, all structure tabulated.
class FiniteGroupoid {
 public:
  FiniteGroupoid() = default;

  /// compose_fn(b, a) is consulted (in the caller's index space) exactly for
  /// the composable pairs tgt(a) == src(b).
  FiniteGroupoid(std::vector<std::string> objects, std::vector<std::string> arrows,
                 std::vector<int> src, std::vector<int> tgt, std::vector<int> unit,
                 std::vector<int> inv, const std::function<int(int, int)>& compose_fn) {
    auto operm = detail::sort_permutation(objects);
    auto aperm = detail::sort_permutation(arrows);
    const int no = static_cast<int>(objects.size());
    const int na = static_cast<int>(arrows.size());
    std::vector<int> owhere(no), awhere(na);
    objects_.resize(no);
    arrows_.resize(na);
    for (int i = 0; i < no; ++i) {
      objects_[i] = objects[operm[i]];
      owhere[operm[i]] = i;
    }
    for (int i = 0; i < na; ++i) {
      arrows_[i] = arrows[aperm[i]];
      awhere[aperm[i]] = i;
    }
    src_.resize(na);
    tgt_.resize(na);
    inv_.resize(na);
    unit_.resize(no);
    for (int i = 0; i < na; ++i) {
      src_[awhere[i]] = owhere.at(src.at(i));
      tgt_[awhere[i]] = owhere.at(tgt.at(i));
      inv_[awhere[i]] = awhere.at(inv.at(i));
    }
    for (int i = 0; i < no; ++i) unit_[owhere[i]] = awhere.at(unit.at(i));
    from_.assign(no, {});
    for (int a = 0; a < na; ++a) from_[src_[a]].push_back(a);
    for (int b0 = 0; b0 < na; ++b0)
      for (int a0 = 0; a0 < na; ++a0)
        if (tgt.at(a0) == src.at(b0)) {
          int c0 = compose_fn(b0, a0);
          comp_[key(awhere[b0], awhere[a0])] = awhere.at(c0);
        }
    validate();
  }

  int object_count() const { return static_cast<int>(objects_.size()); }
  int arrow_count() const { return static_cast<int>(arrows_.size()); }
  const std::string& object_label(int x) const { return objects_[x]; }
  const std::string& arrow_label(int a) const { return arrows_[a]; }
  const std::vector<std::string>& object_labels() const { return objects_; }
  const std::vector<std::string>& arrow_labels() const { return arrows_; }

  std::optional<int> find_object(const std::string& l) const {
    auto it = std::lower_bound(objects_.begin(), objects_.end(), l);
    if (it == objects_.end() || *it != l) return std::nullopt;
    return static_cast<int>(it - objects_.begin());
  }
  int object_index(const std::string& l) const {
    auto i = find_object(l);
    if (!i) throw InputError("unknown object '" + l + "'");
    return *i;
  }
  std::optional<int> find_arrow(const std::string& l) const {
    auto it = std::lower_bound(arrows_.begin(), arrows_.end(), l);
    if (it == arrows_.end() || *it != l) return std::nullopt;
    return static_cast<int>(it - arrows_.begin());
  }
  int arrow_index(const std::string& l) const {
    auto i = find_arrow(l);
    if (!i) throw InputError("unknown arrow '" + l + "'");
    return *i;
  }

  int src(int a) const { return src_[a]; }
  int tgt(int a) const { return tgt_[a]; }
  int inv(int a) const { return inv_[a]; }
  int unit(int x) const { return unit_[x]; }

  std::optional<int> compose_opt(int b, int a) const {
    auto it = comp_.find(key(b, a));
    if (it == comp_.end()) return std::nullopt;
    return it->second;
  }
  /// b after a; throws when tgt(a) != src(b).
  int compose(int b, int a) const {
    auto c = compose_opt(b, a);
    if (!c)
      throw Error("composition undefined for (" + arrows_[b] + ") o (" + arrows_[a] + ")");
    return *c;
  }

  const std::vector<int>& arrows_from(int x) const { return from_[x]; }
  std::vector<int> hom(int x, int y) const {
    std::vector<int> out;
    for (int a : from_[x])
      if (tgt_[a] == y) out.push_back(a);
    return out;
  }

  /// Object partition into connected components, each ascending, ordered by
  /// least object.
  std::vector<std::vector<int>> components() const {
    UnionFind uf(object_count());
    for (int a = 0; a < arrow_count(); ++a) uf.merge(src_[a], tgt_[a]);
    std::map<int, std::vector<int>> by_rep;
    for (int x = 0; x < object_count(); ++x) by_rep[uf.find(x)].push_back(x);
    std::vector<std::vector<int>> out;
    for (auto& [rep, objs] : by_rep) out.push_back(std::move(objs));
    return out;
  }

  /// Exhaustive check of every groupoid axiom.
  void validate() const {
    const int na = arrow_count();
    for (int x = 0; x < object_count(); ++x) {
      int u = unit_[x];
      if (src_[u] != x || tgt_[u] != x)
        throw ValidationError("unit at '" + objects_[x] + "' is not an endo-arrow");
    }
    for (int a = 0; a < na; ++a) {
      if (compose(a, unit_[src_[a]]) != a || compose(unit_[tgt_[a]], a) != a)
        throw ValidationError("unit law fails at arrow '" + arrows_[a] + "'");
      int i = inv_[a];
      if (src_[i] != tgt_[a] || tgt_[i] != src_[a])
        throw ValidationError("inverse of '" + arrows_[a] + "' has wrong endpoints");
      if (compose(i, a) != unit_[src_[a]] || compose(a, i) != unit_[tgt_[a]])
        throw ValidationError("inverse law fails at arrow '" + arrows_[a] + "'");
    }
    for (auto& [k, c] : comp_) {
      int b = static_cast<int>(k >> 32), a = static_cast<int>(k & 0xffffffffu);
      if (tgt_[a] != src_[b])
        throw ValidationError("composition defined for a non-composable pair");
      if (src_[c] != src_[a] || tgt_[c] != tgt_[b])
        throw ValidationError("composite of '" + arrows_[b] + "' o '" + arrows_[a] +
                              "' has wrong endpoints");
    }
    for (int a = 0; a < na; ++a)
      for (int b : from_[tgt_[a]])
        for (int c : from_[tgt_[b]])
          if (compose(c, compose(b, a)) != compose(compose(c, b), a))
            throw ValidationError("composition is not associative at ('" + arrows_[c] +
                                  "','" + arrows_[b] + "','" + arrows_[a] + "')");
  }

  bool operator==(const FiniteGroupoid&) const = default;

 private:
  static uint64_t key(int b, int a) {
    return (static_cast<uint64_t>(static_cast<uint32_t>(b)) << 32) |
           static_cast<uint32_t>(a);
  }

  std::vector<std::string> objects_, arrows_;
  std::vector<int> src_, tgt_, inv_, unit_;
  std::vector<std::vector<int>> from_;
  std::unordered_map<uint64_t, int> comp_;
};

/// The translation groupoid of an action: objects are the points, arrows are
/// (g,x) : x -> g.x, composition (h,gx) o (g,x) = (hg,x).
inline FiniteGroupoid translation_groupoid(const GroupAction& action) {
  action.validate();
  const int n = action.group.size(), m = action.point_count();
  std::vector<std::string> objects = action.points;
  std::vector<std::string> arrows;
  std::vector<int> src, tgt, unit(m, -1), inv;
  auto aid = [&](int g, int x) { return g * m + x; };
  for (int g = 0; g < n; ++g)
    for (int x = 0; x < m; ++x) {
      arrows.push_back(pair_label(action.group.label(g), action.points[x]));
      src.push_back(x);
      tgt.push_back(action.apply(g, x));
      inv.push_back(aid(action.group.inv(g), action.apply(g, x)));
    }
  for (int x = 0; x < m; ++x) unit[x] = aid(action.group.id(), x);
  auto comp = [&](int b, int a) {
    int g = a / m, x = a % m, h = b / m;
    return aid(action.group.mul(h, g), x);
  };
  return FiniteGroupoid(objects, arrows, src, tgt, unit, inv, comp);
}

inline FiniteGroupoid unit_groupoid(const std::vector<std::string>& points) {
  return translation_groupoid(trivial_action(points));
}

inline FiniteGroupoid point_groupoid(const FiniteGroup& g) {
  return translation_groupoid(point_action(g));
}

inline FiniteGroupoid multiplication_groupoid(const FiniteGroup& g,
                                              const std::vector<std::string>& subgroup) {
  return translation_groupoid(multiplication_action(g, subgroup));
}

inline FiniteGroupoid conjugation_groupoid(const FiniteGroup& g,
                                           const std::vector<std::string>& subgroup) {
  return translation_groupoid(conjugation_action(g, subgroup));
}

/// The isotropy group at x: arrows x -> x under composition, with
/// mul(a, b) = a o b.
inline FiniteGroup isotropy(const FiniteGroupoid& gpd, int x) {
  if (x < 0 || x >= gpd.object_count()) throw InputError("unknown object");
  std::vector<int> endo = gpd.hom(x, x);
  std::vector<std::string> labels;
  for (int a : endo) labels.push_back(gpd.arrow_label(a));
  std::unordered_map<int, int> pos;
  for (size_t i = 0; i < endo.size(); ++i) pos[endo[i]] = static_cast<int>(i);
  std::vector<std::vector<int>> mult(endo.size(), std::vector<int>(endo.size()));
  for (size_t i = 0; i < endo.size(); ++i)
    for (size_t j = 0; j < endo.size(); ++j)
      mult[i][j] = pos.at(gpd.compose(endo[i], endo[j]));
  return FiniteGroup::from_index_table(labels, mult);
}

struct SkeletonEntry {
  int representative;   // lexicographically smallest object of the component
  FiniteGroup isotropy;
};

/// One entry per connected component, ordered by representative label.
inline std::vector<SkeletonEntry> skeleton(const FiniteGroupoid& gpd) {
  std::vector<SkeletonEntry> out;
  for (auto& comp : gpd.components())
    out.push_back({comp.front(), isotropy(gpd, comp.front())});
  return out;
}

/// Brute-force group isomorphism over generator-image assignments.
/// Practical bound: |G| <= 24 (all instances here are at most S3-scale).
inline std::optional<std::vector<int>> find_group_isomorphism(const FiniteGroup& a,
                                                              const FiniteGroup& b) {
  if (a.size() != b.size()) return std::nullopt;
  const int n = a.size();
  {
    std::multiset<int> oa, ob;
    for (int i = 0; i < n; ++i) {
      oa.insert(a.element_order(i));
      ob.insert(b.element_order(i));
    }
    if (oa != ob) return std::nullopt;
  }
  // greedy generating set of a, with a word (expression tree) per element
  std::vector<int> gens;
  std::vector<std::pair<int, int>> expr(n, {-1, -1});  // element = expr.first * expr.second
  std::vector<int> gen_of(n, -1);                      // index into gens when a generator
  std::vector<int> order;                              // derivation order
  std::vector<char> known(n, 0);
  known[a.id()] = 1;
  auto close = [&]() {
    bool grew = true;
    while (grew) {
      grew = false;
      for (int x = 0; x < n; ++x) {
        if (!known[x]) continue;
        for (int y = 0; y < n; ++y) {
          if (!known[y]) continue;
          int z = a.mul(x, y);
          if (!known[z]) {
            known[z] = 1;
            expr[z] = {x, y};
            order.push_back(z);
            grew = true;
          }
        }
      }
    }
  };
  close();
  for (int x = 0; x < n; ++x)
    if (!known[x]) {
      gen_of[x] = static_cast<int>(gens.size());
      gens.push_back(x);
      known[x] = 1;
      order.push_back(x);
      close();
    }

  std::vector<int> img(n, -1);
  std::vector<int> gen_img(gens.size(), -1);
  std::function<bool(size_t)> assign = [&](size_t gi) -> bool {
    if (gi == gens.size()) {
      // evaluate all elements through their derivations, then check
      std::fill(img.begin(), img.end(), -1);
      img[a.id()] = b.id();
      for (int x : order) {
        if (gen_of[x] >= 0)
          img[x] = gen_img[gen_of[x]];
        else
          img[x] = b.mul(img[expr[x].first], img[expr[x].second]);
      }
      std::vector<char> hit(n, 0);
      for (int x = 0; x < n; ++x) {
        if (img[x] < 0 || hit[img[x]]) return false;
        hit[img[x]] = 1;
      }
      for (int x = 0; x < n; ++x)
        for (int y = 0; y < n; ++y)
          if (img[a.mul(x, y)] != b.mul(img[x], img[y])) return false;
      return true;
    }
    int g = gens[gi];
    int want = a.element_order(g);
    for (int c = 0; c < n; ++c) {
      if (b.element_order(c) != want) continue;
      gen_img[gi] = c;
      if (assign(gi + 1)) return true;
    }
    return false;
  };
  if (!assign(0)) return std::nullopt;
  return img;
}

}  // namespace grpd
