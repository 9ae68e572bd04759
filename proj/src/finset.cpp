#include "sketchlab/finset.hpp"

#include <functional>
#include <map>
#include <mutex>
#include <numeric>

namespace sketchlab {

namespace {

struct UnionFind {
  std::vector<std::uint32_t> parent;

  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0u); }
  std::uint32_t find(std::uint32_t x) {
    while (parent[x] != x) {
      parent[x] = parent[parent[x]];
      x = parent[x];
    }
    return x;
  }
  void unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[b] = a;
  }
  // Classes numbered in order of their least element.
  std::vector<Elem> classes(std::size_t& count) {
    std::vector<Elem> out(parent.size());
    std::vector<Elem> number(parent.size(), kNone);
    count = 0;
    for (std::uint32_t i = 0; i < parent.size(); ++i) {
      auto r = find(i);
      if (number[r] == kNone) number[r] = static_cast<Elem>(count++);
      out[i] = number[r];
    }
    return out;
  }
};

void check_budget(std::size_t n, const SizeBudget& budget, const char* what) {
  if (n > budget.max_elements)
    fail(ErrorKind::size_budget_exceeded,
         std::string(what) + " exceeds " + std::to_string(budget.max_elements) + " elements");
}

void require_legs(const FinSetDiagram& d, std::size_t apex, const std::vector<std::vector<Elem>>& legs,
                  bool cocone) {
  const auto& s = *d.shape;
  if (legs.size() != s.num_objects()) fail(ErrorKind::not_a_cone, "one leg per object is required");
  for (ObjId o = 0; o < s.num_objects(); ++o) {
    std::size_t from = cocone ? d.sizes[o] : apex;
    std::size_t to = cocone ? apex : d.sizes[o];
    if (legs[o].size() != from) fail(ErrorKind::not_a_cone, "leg at " + s.object_name(o) + " has wrong domain");
    for (Elem e : legs[o])
      if (e >= to) fail(ErrorKind::not_a_cone, "leg at " + s.object_name(o) + " leaves its codomain");
  }
  for (ArrId a = 0; a < s.num_arrows(); ++a) {
    ObjId x = s.src(a), y = s.tgt(a);
    const auto& m = d.maps[a];
    if (cocone) {
      for (Elem e = 0; e < d.sizes[x]; ++e)
        if (legs[y][m[e]] != legs[x][e])
          fail(ErrorKind::not_a_cone, "cocone leg triangle at " + s.arrow(a).name + " does not commute");
    } else {
      for (Elem t = 0; t < apex; ++t)
        if (m[legs[x][t]] != legs[y][t])
          fail(ErrorKind::not_a_cone, "cone leg triangle at " + s.arrow(a).name + " does not commute");
    }
  }
}

}  // namespace

ValidityReport check_diagram(const FinSetDiagram& d) {
  ValidityReport r;
  const auto& s = *d.shape;
  if (d.sizes.size() != s.num_objects() || d.maps.size() != s.num_arrows()) {
    r.violations.push_back("diagram tables do not match the shape");
    return r;
  }
  for (ArrId a = 0; a < s.num_arrows(); ++a) {
    const auto& m = d.maps[a];
    bool typed = m.size() == d.sizes[s.src(a)];
    for (Elem e : m) typed = typed && e < d.sizes[s.tgt(a)];
    if (!typed) r.violations.push_back("map at " + s.arrow(a).name + " is mistyped");
  }
  if (!r.valid()) return r;
  for (ObjId o = 0; o < s.num_objects(); ++o)
    for (Elem e = 0; e < d.sizes[o]; ++e)
      if (d.maps[s.id(o)][e] != e) {
        r.violations.push_back("identity at " + s.object_name(o) + " acts non-trivially");
        break;
      }
  for (ArrId a = 0; a < s.num_arrows(); ++a)
    for (ArrId b : s.out_arrows(s.tgt(a))) {
      const auto& ma = d.maps[a];
      const auto& mb = d.maps[b];
      const auto& mc = d.maps[s.compose(b, a)];
      for (Elem e = 0; e < ma.size(); ++e)
        if (mb[ma[e]] != mc[e]) {
          r.violations.push_back("composite " + s.arrow(a).name + ";" + s.arrow(b).name + " not preserved");
          break;
        }
    }
  return r;
}

LimitResult limit_finset(const FinSetDiagram& d, const SizeBudget& budget) {
  const auto& s = *d.shape;
  const std::size_t n = s.num_objects();
  std::vector<std::vector<ArrId>> checks(n);
  for (ArrId a = 0; a < s.num_arrows(); ++a)
    if (!s.is_identity(a)) checks[std::max(s.src(a), s.tgt(a))].push_back(a);
  LimitResult r;
  std::vector<Elem> t(n, 0);
  std::function<void(ObjId)> go = [&](ObjId o) {
    if (o == n) {
      r.tuples.push_back(t);
      check_budget(r.tuples.size(), budget, "limit apex");
      return;
    }
    for (Elem e = 0; e < d.sizes[o]; ++e) {
      t[o] = e;
      bool ok = true;
      for (ArrId a : checks[o])
        if (d.maps[a][t[s.src(a)]] != t[s.tgt(a)]) {
          ok = false;
          break;
        }
      if (ok) go(o + 1);
    }
  };
  go(0);
  r.apex = r.tuples.size();
  for (ObjId o = 0; o < n; ++o) {
    FinSetMap p{r.apex, d.sizes[o], {}};
    for (const auto& tup : r.tuples) p.table.push_back(tup[o]);
    r.projections.push_back(std::move(p));
  }
  return r;
}

ColimitResult colimit_finset(const FinSetDiagram& d, const SizeBudget& budget) {
  const auto& s = *d.shape;
  std::vector<std::size_t> off(s.num_objects() + 1, 0);
  for (ObjId o = 0; o < s.num_objects(); ++o) off[o + 1] = off[o] + d.sizes[o];
  check_budget(off.back(), budget, "colimit");
  UnionFind uf(off.back());
  for (ArrId a = 0; a < s.num_arrows(); ++a) {
    ObjId x = s.src(a), y = s.tgt(a);
    for (Elem e = 0; e < d.sizes[x]; ++e)
      uf.unite(static_cast<std::uint32_t>(off[x] + e), static_cast<std::uint32_t>(off[y] + d.maps[a][e]));
  }
  ColimitResult r;
  auto cls = uf.classes(r.apex);
  for (ObjId o = 0; o < s.num_objects(); ++o) {
    FinSetMap inj{d.sizes[o], r.apex, {}};
    for (Elem e = 0; e < d.sizes[o]; ++e) inj.table.push_back(cls[off[o] + e]);
    r.injections.push_back(std::move(inj));
  }
  return r;
}

bool is_limit_cone(const FinSetDiagram& d, std::size_t apex, const std::vector<std::vector<Elem>>& legs,
                   const SizeBudget& budget) {
  require_legs(d, apex, legs, false);
  auto lim = limit_finset(d, budget);
  if (lim.apex != apex) return false;
  std::map<std::vector<Elem>, Elem> seen;
  for (Elem t = 0; t < apex; ++t) {
    std::vector<Elem> tup;
    for (const auto& leg : legs) tup.push_back(leg[t]);
    if (!seen.emplace(std::move(tup), t).second) return false;
  }
  return true;
}

bool is_colimit_cocone(const FinSetDiagram& d, std::size_t apex,
                       const std::vector<std::vector<Elem>>& legs, const SizeBudget& budget) {
  require_legs(d, apex, legs, true);
  auto col = colimit_finset(d, budget);
  if (col.apex != apex) return false;
  // The comparison col.apex -> apex is well defined by the cocone condition;
  // with equal cardinalities it is a bijection iff it is surjective.
  std::vector<bool> hit(apex, false);
  for (ObjId o = 0; o < d.sizes.size(); ++o)
    for (Elem e = 0; e < d.sizes[o]; ++e) hit[legs[o][e]] = true;
  for (bool h : hit)
    if (!h) return false;
  return true;
}

// ---------------------------------------------------------------------------
// FinSet<=n

CatPtr finset_category(std::size_t n) {
  static std::mutex mu;
  static std::map<std::size_t, CatPtr> cache;
  std::lock_guard lock(mu);
  if (auto it = cache.find(n); it != cache.end()) return it->second;

  auto info = std::make_shared<FinSetCarrierInfo>();
  info->bound = n;
  std::vector<std::string> objects;
  for (std::size_t k = 0; k <= n; ++k) {
    objects.push_back(std::to_string(k));
    info->sizes.push_back(k);
  }
  std::vector<Arrow> arrows;
  std::vector<ArrId> ids(n + 1);
  std::map<std::tuple<std::size_t, std::size_t, std::vector<Elem>>, ArrId> index;
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t l = 0; l <= n; ++l) {
      if (k > 0 && l == 0) continue;
      std::vector<Elem> t(k, 0);
      while (true) {
        auto a = static_cast<ArrId>(arrows.size());
        bool identity = k == l;
        for (std::size_t i = 0; i < k && identity; ++i) identity = t[i] == i;
        std::string name;
        if (identity) {
          name = "id_" + objects[k];
          ids[k] = a;
        } else {
          name = "f" + objects[k] + "to" + objects[l];
          for (Elem e : t) name += "_" + std::to_string(e);
        }
        arrows.push_back({std::move(name), static_cast<ObjId>(k), static_cast<ObjId>(l)});
        index.emplace(std::make_tuple(k, l, t), a);
        info->tables.push_back(t);
        // odometer, last position fastest
        std::size_t i = k;
        while (i > 0 && ++t[i - 1] == l) t[--i] = 0;
        if (i == 0) break;
      }
    }
  const auto& tables = info->tables;
  auto comp = [&](ArrId g, ArrId f) -> ArrId {
    std::vector<Elem> t;
    for (Elem e : tables[f]) t.push_back(tables[g][e]);
    return index.at({arrows[f].src, arrows[g].tgt, t});
  };
  std::vector<Arrow> copy = arrows;
  auto cat = make_cat(FinCategory::with_composition(std::move(objects), std::move(copy), std::move(ids),
                                                    comp, info));
  cache.emplace(n, cat);
  return cat;
}

ArrId finset_arrow(const FinCategory& fs, std::size_t dom, std::size_t cod, const std::vector<Elem>& table) {
  const auto* info = fs.finset();
  if (!info) fail(ErrorKind::invalid_argument, "not a FinSet carrier");
  for (ArrId a : fs.hom(static_cast<ObjId>(info->opposite ? cod : dom), static_cast<ObjId>(info->opposite ? dom : cod)))
    if (info->tables[a] == table) return a;
  fail(ErrorKind::invalid_argument, "no such function in the FinSet carrier");
}

FinSetDiagram diagram_of(const FunctorData& f) {
  const auto* info = f.cod->finset();
  if (!info) fail(ErrorKind::invalid_argument, "functor does not land in a FinSet carrier");
  FinSetDiagram d;
  d.shape = info->opposite ? make_cat(opposite_category(*f.dom)) : f.dom;
  for (ObjId o : f.obj_map) d.sizes.push_back(info->sizes[o]);
  for (ArrId a : f.arr_map) d.maps.push_back(info->tables[a]);
  return d;
}

LanResult lan_finset(const FunctorData& f, const FinSetDiagram& m, const SizeBudget& budget) {
  const auto& A = *f.dom;
  const auto& B = *f.cod;
  LanResult r;
  r.diagram.shape = f.cod;
  // Elements (a, u, e) over each b, indexed by off[b][a] + k*|m a| + e.
  std::vector<std::vector<std::size_t>> off(B.num_objects(), std::vector<std::size_t>(A.num_objects() + 1, 0));
  std::vector<std::vector<Elem>> cls(B.num_objects());
  for (ObjId b = 0; b < B.num_objects(); ++b) {
    for (ObjId a = 0; a < A.num_objects(); ++a)
      off[b][a + 1] = off[b][a] + B.hom(f.obj_map[a], b).size() * m.sizes[a];
    check_budget(off[b].back(), budget, "Kan extension");
    UnionFind uf(off[b].back());
    for (ArrId g = 0; g < A.num_arrows(); ++g) {
      ObjId a = A.src(g), a2 = A.tgt(g);
      ArrId Fg = f.arr_map[g];
      auto hom1 = B.hom(f.obj_map[a2], b);
      for (std::size_t k = 0; k < hom1.size(); ++k) {
        ArrId u = B.compose(hom1[k], Fg);
        std::size_t ku = B.hom_index(u);
        for (Elem e = 0; e < m.sizes[a]; ++e)
          uf.unite(static_cast<std::uint32_t>(off[b][a] + ku * m.sizes[a] + e),
                   static_cast<std::uint32_t>(off[b][a2] + k * m.sizes[a2] + m.maps[g][e]));
      }
    }
    std::size_t count = 0;
    cls[b] = uf.classes(count);
    r.diagram.sizes.push_back(count);
  }
  for (ArrId v = 0; v < B.num_arrows(); ++v) {
    ObjId b = B.src(v), b2 = B.tgt(v);
    std::vector<Elem> table(r.diagram.sizes[b], kNone);
    for (ObjId a = 0; a < A.num_objects(); ++a) {
      auto hom1 = B.hom(f.obj_map[a], b);
      for (std::size_t k = 0; k < hom1.size(); ++k) {
        std::size_t k2 = B.hom_index(B.compose(v, hom1[k]));
        for (Elem e = 0; e < m.sizes[a]; ++e)
          table[cls[b][off[b][a] + k * m.sizes[a] + e]] = cls[b2][off[b2][a] + k2 * m.sizes[a] + e];
      }
    }
    r.diagram.maps.push_back(std::move(table));
  }
  for (ObjId a = 0; a < A.num_objects(); ++a) {
    ObjId b = f.obj_map[a];
    std::size_t k = B.hom_index(B.id(b));
    std::vector<Elem> u;
    for (Elem e = 0; e < m.sizes[a]; ++e) u.push_back(cls[b][off[b][a] + k * m.sizes[a] + e]);
    r.unit.push_back(std::move(u));
  }
  return r;
}

// ---------------------------------------------------------------------------
// Presheaves

ValidityReport check_presheaf(const Presheaf& p) {
  ValidityReport r;
  const auto& c = *p.base;
  if (p.fibers.size() != c.num_objects() || p.restriction.size() != c.num_arrows()) {
    r.violations.push_back("presheaf tables do not match the base");
    return r;
  }
  for (ArrId a = 0; a < c.num_arrows(); ++a) {
    const auto& m = p.restriction[a];
    bool typed = m.size() == p.fibers[c.tgt(a)];
    for (Elem e : m) typed = typed && e < p.fibers[c.src(a)];
    if (!typed) r.violations.push_back("restriction along " + c.arrow(a).name + " is mistyped");
  }
  if (!r.valid()) return r;
  for (ObjId o = 0; o < c.num_objects(); ++o)
    for (Elem e = 0; e < p.fibers[o]; ++e)
      if (p.restriction[c.id(o)][e] != e) {
        r.violations.push_back("identity restriction at " + c.object_name(o) + " is not trivial");
        break;
      }
  // (g∘f)* = f*∘g*
  for (ArrId f = 0; f < c.num_arrows(); ++f)
    for (ArrId g : c.out_arrows(c.tgt(f))) {
      const auto& rf = p.restriction[f];
      const auto& rg = p.restriction[g];
      const auto& rgf = p.restriction[c.compose(g, f)];
      for (Elem e = 0; e < rg.size(); ++e)
        if (rf[rg[e]] != rgf[e]) {
          r.violations.push_back("restriction along " + c.arrow(f).name + ";" + c.arrow(g).name +
                                 " is not functorial");
          break;
        }
    }
  return r;
}

ValidityReport check_presheaf_map(const Presheaf& p, const Presheaf& q, const PresheafMap& m) {
  ValidityReport r;
  const auto& c = *p.base;
  if (m.components.size() != c.num_objects()) {
    r.violations.push_back("component count does not match the base");
    return r;
  }
  for (ObjId o = 0; o < c.num_objects(); ++o) {
    bool typed = m.components[o].size() == p.fibers[o];
    for (Elem e : m.components[o]) typed = typed && e < q.fibers[o];
    if (!typed) r.violations.push_back("component at " + c.object_name(o) + " is mistyped");
  }
  if (!r.valid()) return r;
  for (ArrId a = 0; a < c.num_arrows(); ++a) {
    ObjId x = c.src(a), y = c.tgt(a);
    for (Elem e = 0; e < p.fibers[y]; ++e)
      if (m.components[x][p.restriction[a][e]] != q.restriction[a][m.components[y][e]]) {
        r.violations.push_back("naturality fails along " + c.arrow(a).name);
        break;
      }
  }
  return r;
}

PresheafMap identity_presheaf_map(const Presheaf& p) {
  PresheafMap m;
  for (std::size_t n : p.fibers) {
    std::vector<Elem> t(n);
    std::iota(t.begin(), t.end(), 0u);
    m.components.push_back(std::move(t));
  }
  return m;
}

PresheafMap compose_presheaf_maps(const PresheafMap& g, const PresheafMap& f) {
  PresheafMap h;
  for (std::size_t o = 0; o < f.components.size(); ++o) {
    std::vector<Elem> t;
    for (Elem e : f.components[o]) t.push_back(g.components[o][e]);
    h.components.push_back(std::move(t));
  }
  return h;
}

bool is_presheaf_iso(const PresheafMap& m, const Presheaf& p, const Presheaf& q) {
  for (std::size_t o = 0; o < p.fibers.size(); ++o) {
    if (p.fibers[o] != q.fibers[o]) return false;
    std::vector<bool> hit(q.fibers[o], false);
    for (Elem e : m.components[o]) {
      if (hit[e]) return false;
      hit[e] = true;
    }
  }
  return true;
}

Presheaf empty_presheaf(const CatPtr& base) {
  return {base, std::vector<std::size_t>(base->num_objects(), 0),
          std::vector<std::vector<Elem>>(base->num_arrows())};
}

FinSetDiagram presheaf_as_diagram(const Presheaf& p, const CatPtr& op) {
  return {op, p.fibers, p.restriction};
}

Presheaf diagram_as_presheaf(const FinSetDiagram& d, const CatPtr& base) {
  return {base, d.sizes, d.maps};
}

Extension evaluate_extension(const Presheaf& p, const FinSetDiagram& m, const SizeBudget& budget) {
  const auto& c = *p.base;
  Extension ext;
  ext.offset.assign(c.num_objects() + 1, 0);
  ext.width = m.sizes;
  for (ObjId o = 0; o < c.num_objects(); ++o) ext.offset[o + 1] = ext.offset[o] + p.fibers[o] * m.sizes[o];
  check_budget(ext.offset.back(), budget, "extension");
  UnionFind uf(ext.offset.back());
  // (c, p(f) x', y) ~ (c', x', m(f) y) for f : c -> c'
  for (ArrId f = 0; f < c.num_arrows(); ++f) {
    ObjId s = c.src(f), t = c.tgt(f);
    for (Elem x2 = 0; x2 < p.fibers[t]; ++x2) {
      Elem x = p.restriction[f][x2];
      for (Elem y = 0; y < m.sizes[s]; ++y)
        uf.unite(static_cast<std::uint32_t>(ext.offset[s] + x * m.sizes[s] + y),
                 static_cast<std::uint32_t>(ext.offset[t] + x2 * m.sizes[t] + m.maps[f][y]));
    }
  }
  ext.cls = uf.classes(ext.size);
  return ext;
}

std::vector<Elem> extension_on_map(const Extension& ep, const Extension& eq, const PresheafMap& alpha,
                                   const FinSetDiagram& m) {
  std::vector<Elem> out(ep.size, kNone);
  for (ObjId c = 0; c + 1 < ep.offset.size(); ++c) {
    std::size_t px = m.sizes[c] ? (ep.offset[c + 1] - ep.offset[c]) / m.sizes[c] : 0;
    for (Elem x = 0; x < px; ++x)
      for (Elem y = 0; y < m.sizes[c]; ++y) out[ep.at(c, x, y)] = eq.at(c, alpha.components[c][x], y);
  }
  return out;
}

}  // namespace sketchlab
