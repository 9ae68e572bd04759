#include "sketchlab/classifier.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "sketchlab/constructions.hpp"
#include "sketchlab/models.hpp"

namespace sketchlab {

std::string_view verdict_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::verified: return "verified";
    case VerdictKind::refuted: return "refuted";
    case VerdictKind::unknown: return "unknown";
  }
  return "?";
}

Presheaf representable(const CatPtr& cp, ObjId x) {
  const auto& c = *cp;
  Presheaf p{cp, {}, {}};
  for (ObjId o = 0; o < c.num_objects(); ++o) p.fibers.push_back(c.hom(o, x).size());
  for (ArrId a = 0; a < c.num_arrows(); ++a) {
    std::vector<Elem> m;
    for (ArrId h : c.hom(c.tgt(a), x)) m.push_back(static_cast<Elem>(c.hom_index(c.compose(h, a))));
    p.restriction.push_back(std::move(m));
  }
  return p;
}

namespace {

struct UnionFind {
  std::vector<Elem> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), Elem{0}); }
  Elem find(Elem x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(Elem a, Elem b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

struct Quotient {
  Presheaf presheaf;
  std::vector<std::vector<Elem>> label;
};

// Closes the relations under restriction and collapses the classes, which
// are numbered by least member.
Quotient quotient(const Presheaf& p, std::vector<UnionFind>& uf) {
  const auto& c = *p.base;
  for (bool changed = true; changed;) {
    changed = false;
    for (ArrId k = 0; k < c.num_arrows(); ++k) {
      if (c.is_identity(k)) continue;
      ObjId from = c.tgt(k), to = c.src(k);
      for (Elem e = 0; e < p.fibers[from]; ++e) {
        Elem r = uf[from].find(e);
        if (r != e && uf[to].unite(p.restriction[k][e], p.restriction[k][r])) changed = true;
      }
    }
  }
  Quotient q{{p.base, std::vector<std::size_t>(c.num_objects(), 0), {}}, std::vector<std::vector<Elem>>(c.num_objects())};
  for (ObjId o = 0; o < c.num_objects(); ++o) {
    std::vector<Elem> root_label(p.fibers[o], kNone);
    for (Elem e = 0; e < p.fibers[o]; ++e) {
      Elem r = uf[o].find(e);
      if (root_label[r] == kNone) root_label[r] = static_cast<Elem>(q.presheaf.fibers[o]++);
      q.label[o].push_back(root_label[r]);
    }
  }
  for (ArrId k = 0; k < c.num_arrows(); ++k) {
    ObjId from = c.tgt(k), to = c.src(k);
    std::vector<Elem> m(q.presheaf.fibers[from], 0);
    for (Elem e = 0; e < p.fibers[from]; ++e) m[q.label[from][e]] = q.label[to][p.restriction[k][e]];
    q.presheaf.restriction.push_back(std::move(m));
  }
  return q;
}

// The comparison p(tip) -> lim p∘d for one rule. image[x] is the index of
// the family of x among the limit tuples.
struct Comparison {
  LimitResult lim;
  std::vector<Elem> image;
};

Comparison compare(const Rule& r, const Presheaf& p, const SizeBudget& budget) {
  const auto& sp = r.cocone;
  FinSetDiagram d{r.shape_op, {}, {}};
  for (ObjId o : sp.diagram.obj_map) d.sizes.push_back(p.fibers[o]);
  for (ArrId a : sp.diagram.arr_map) d.maps.push_back(p.restriction[a]);
  Comparison cmp{limit_finset(d, budget), {}};
  std::vector<Elem> t(sp.legs.size());
  for (Elem x = 0; x < p.fibers[sp.tip]; ++x) {
    for (std::size_t o = 0; o < sp.legs.size(); ++o) t[o] = p.restriction[sp.legs[o]][x];
    auto it = std::lower_bound(cmp.lim.tuples.begin(), cmp.lim.tuples.end(), t);
    cmp.image.push_back(static_cast<Elem>(it - cmp.lim.tuples.begin()));
  }
  return cmp;
}

bool bijective(const Comparison& cmp) {
  if (cmp.image.size() != cmp.lim.apex) return false;
  std::vector<bool> seen(cmp.lim.apex, false);
  for (Elem i : cmp.image) {
    if (seen[i]) return false;
    seen[i] = true;
  }
  return true;
}

void check_size(const Presheaf& p, const SizeBudget& budget) {
  std::size_t total = 0;
  for (auto f : p.fibers) total += f;
  if (total > budget.max_elements) fail(ErrorKind::size_budget_exceeded, "chase exceeds the element budget");
}

// P ⊔_A よtip along the map A -> P picked out by the family x.
Quotient pushout(const Rule& r, const Presheaf& p, const std::vector<Elem>& x) {
  const auto& c = *p.base;
  const auto& sp = r.cocone;
  ObjId t = sp.tip;
  Presheaf big{p.base, p.fibers, p.restriction};
  for (ObjId o = 0; o < c.num_objects(); ++o) big.fibers[o] += c.hom(o, t).size();
  for (ArrId k = 0; k < c.num_arrows(); ++k) {
    ObjId from = c.tgt(k), to = c.src(k);
    for (ArrId h : c.hom(from, t))
      big.restriction[k].push_back(static_cast<Elem>(p.fibers[to] + c.hom_index(c.compose(h, k))));
  }
  std::vector<UnionFind> uf;
  for (auto f : big.fibers) uf.emplace_back(f);
  for (std::size_t o = 0; o < sp.legs.size(); ++o) {
    ObjId dob = sp.diagram.obj_map[o];
    for (ObjId b = 0; b < c.num_objects(); ++b)
      for (ArrId h : c.hom(b, dob))
        uf[b].unite(p.restriction[h][x[o]], static_cast<Elem>(p.fibers[b] + c.hom_index(c.compose(sp.legs[o], h))));
  }
  return quotient(big, uf);
}

// Builds presheaf maps p -> q element by element. Assigning an element
// forces its restrictions; with a system, a tip element whose limit family
// is already mapped is forced when exactly one candidate matches.
class MapSearch {
 public:
  MapSearch(const Presheaf& p, const Presheaf& q, const OrthogonalitySystem* sys, const SizeBudget& budget)
      : p_(p), q_(q), sys_(sys), budget_(budget) {
    for (auto f : p.fibers) comp_.emplace_back(f, kNone);
  }

  std::size_t mark() const { return trail_.size(); }

  void undo(std::size_t m) {
    while (trail_.size() > m) {
      auto [c, e] = trail_.back();
      comp_[c][e] = kNone;
      trail_.pop_back();
    }
    pending_.clear();
  }

  bool assign(ObjId c, Elem e, Elem v) {
    pending_.push_back({c, e, v});
    return propagate();
  }

  void search(std::vector<PresheafMap>& out, std::size_t limit) {
    ObjId c = 0;
    Elem e = 0;
    if (!next_free(c, e)) {
      out.push_back({comp_});
      if (out.size() > budget_.max_results)
        fail(ErrorKind::size_budget_exceeded, "presheaf map enumeration exceeds the result budget");
      return;
    }
    for (Elem v = 0; v < q_.fibers[c] && out.size() < limit; ++v) {
      auto m = mark();
      if (assign(c, e, v)) search(out, limit);
      undo(m);
    }
  }

 private:
  bool next_free(ObjId& c, Elem& e) const {
    for (c = 0; c < comp_.size(); ++c)
      for (e = 0; e < comp_[c].size(); ++e)
        if (comp_[c][e] == kNone) return true;
    return false;
  }

  bool propagate() {
    const auto& cat = *p_.base;
    while (true) {
      while (!pending_.empty()) {
        auto [c, e, v] = pending_.back();
        pending_.pop_back();
        if (comp_[c][e] != kNone) {
          if (comp_[c][e] != v) return false;
          continue;
        }
        comp_[c][e] = v;
        trail_.push_back({c, e});
        for (ArrId k : cat.in_arrows(c))
          if (!cat.is_identity(k)) pending_.push_back({cat.src(k), p_.restriction[k][e], q_.restriction[k][v]});
      }
      if (!sys_) return true;
      if (!force_tips()) return false;
      if (pending_.empty()) return true;
    }
  }

  // Returns false on a conflict; queues forced assignments.
  bool force_tips() {
    for (const auto& r : sys_->rules) {
      const auto& sp = r.cocone;
      for (Elem e = 0; e < p_.fibers[sp.tip]; ++e) {
        if (comp_[sp.tip][e] != kNone) continue;
        std::vector<Elem> want;
        bool ready = true;
        for (std::size_t o = 0; o < sp.legs.size() && ready; ++o) {
          Elem w = comp_[sp.diagram.obj_map[o]][p_.restriction[sp.legs[o]][e]];
          ready = w != kNone;
          want.push_back(w);
        }
        if (!ready) continue;
        Elem found = kNone;
        std::size_t count = 0;
        for (Elem v = 0; v < q_.fibers[sp.tip]; ++v) {
          bool ok = true;
          for (std::size_t o = 0; o < sp.legs.size() && ok; ++o) ok = q_.restriction[sp.legs[o]][v] == want[o];
          if (ok) {
            found = v;
            ++count;
          }
        }
        if (count == 0) return false;
        if (count == 1) pending_.push_back({sp.tip, e, found});
      }
    }
    return true;
  }

  struct Pending {
    ObjId c;
    Elem e;
    Elem v;
  };

  const Presheaf& p_;
  const Presheaf& q_;
  const OrthogonalitySystem* sys_;
  const SizeBudget& budget_;
  std::vector<std::vector<Elem>> comp_;
  std::vector<std::pair<ObjId, Elem>> trail_;
  std::vector<Pending> pending_;
};

}  // namespace

OrthogonalitySystem rho_system(const Sketch& s, const SizeBudget& budget) {
  const auto& c = *s.carrier;
  OrthogonalitySystem sys{s.carrier, {}};
  for (auto& sp : enumerate_family(s, Variance::cocone)) {
    bool dup = false;
    for (const auto& r : sys.rules) dup = dup || cone_isomorphic(c, r.cocone, sp, Variance::cocone);
    if (dup) continue;
    Rule r;
    r.shape_op = make_cat(opposite_category(*sp.shape));
    // A(b) = colim_o hom(b, d o)
    const auto& shape = *sp.shape;
    r.domain = {s.carrier, {}, {}};
    std::vector<ColimitResult> col;
    for (ObjId b = 0; b < c.num_objects(); ++b) {
      FinSetDiagram d{sp.shape, {}, {}};
      for (ObjId o : sp.diagram.obj_map) d.sizes.push_back(c.hom(b, o).size());
      for (ArrId u = 0; u < shape.num_arrows(); ++u) {
        std::vector<Elem> m;
        for (ArrId h : c.hom(b, sp.diagram.obj_map[shape.src(u)]))
          m.push_back(static_cast<Elem>(c.hom_index(c.compose(sp.diagram.arr_map[u], h))));
        d.maps.push_back(std::move(m));
      }
      col.push_back(colimit_finset(d, budget));
      r.domain.fibers.push_back(col.back().apex);
    }
    for (ArrId k = 0; k < c.num_arrows(); ++k) {
      ObjId from = c.tgt(k), to = c.src(k);
      std::vector<Elem> m(r.domain.fibers[from], 0);
      for (ObjId o = 0; o < shape.num_objects(); ++o) {
        auto hs = c.hom(from, sp.diagram.obj_map[o]);
        for (std::size_t i = 0; i < hs.size(); ++i)
          m[col[from].injections[o].table[i]] = col[to].injections[o].table[c.hom_index(c.compose(hs[i], k))];
      }
      r.domain.restriction.push_back(std::move(m));
    }
    r.codomain = representable(s.carrier, sp.tip);
    for (ObjId b = 0; b < c.num_objects(); ++b) {
      std::vector<Elem> m(r.domain.fibers[b], 0);
      for (ObjId o = 0; o < shape.num_objects(); ++o) {
        auto hs = c.hom(b, sp.diagram.obj_map[o]);
        for (std::size_t i = 0; i < hs.size(); ++i)
          m[col[b].injections[o].table[i]] = static_cast<Elem>(c.hom_index(c.compose(sp.legs[o], hs[i])));
      }
      r.rho.components.push_back(std::move(m));
    }
    r.cocone = std::move(sp);
    sys.rules.push_back(std::move(r));
  }
  return sys;
}

bool orthogonal_to(const Rule& r, const Presheaf& p, const SizeBudget& budget) {
  return bijective(compare(r, p, budget));
}

bool is_orthogonal(const OrthogonalitySystem& sys, const Presheaf& p, const SizeBudget& budget) {
  for (const auto& r : sys.rules)
    if (!orthogonal_to(r, p, budget)) return false;
  return true;
}

ChaseResult chase_reflect(const OrthogonalitySystem& sys, const Presheaf& p, std::size_t budget,
                          const SizeBudget& size) {
  ChaseResult res;
  res.presheaf = p;
  res.unit = identity_presheaf_map(p);
  std::size_t n = sys.rules.size(), cursor = 0;
  auto apply = [&](Quotient q) {
    for (ObjId o = 0; o < res.unit.components.size(); ++o)
      for (auto& e : res.unit.components[o]) e = q.label[o][e];
    res.presheaf = std::move(q.presheaf);
    check_size(res.presheaf, size);
  };
  while (true) {
    std::vector<Comparison> cmps;
    for (std::size_t i = 0; i < n; ++i) cmps.push_back(compare(sys.rules[i], res.presheaf, size));
    bool acted = false;
    for (std::size_t i = 0; i < n && !acted; ++i) {
      std::size_t r = (cursor + i) % n;
      const auto& img = cmps[r].image;
      std::vector<Elem> first(cmps[r].lim.apex, kNone);
      for (Elem y = 0; y < img.size() && !acted; ++y) {
        if (first[img[y]] == kNone) {
          first[img[y]] = y;
          continue;
        }
        if (res.merges + res.pushouts >= budget) {
          res.status = ChaseStatus::budget_exceeded;
          return res;
        }
        ObjId t = sys.rules[r].cocone.tip;
        std::vector<UnionFind> uf;
        for (auto f : res.presheaf.fibers) uf.emplace_back(f);
        uf[t].unite(first[img[y]], y);
        apply(quotient(res.presheaf, uf));
        ++res.merges;
        res.trace.push_back({ChaseStep::merge, r, y});
        cursor = (r + 1) % n;
        acted = true;
      }
    }
    if (acted) continue;
    for (std::size_t i = 0; i < n && !acted; ++i) {
      std::size_t r = (cursor + i) % n;
      std::vector<bool> hit(cmps[r].lim.apex, false);
      for (Elem j : cmps[r].image) hit[j] = true;
      auto miss = std::find(hit.begin(), hit.end(), false);
      if (miss == hit.end()) continue;
      if (res.merges + res.pushouts >= budget) {
        res.status = ChaseStatus::budget_exceeded;
        return res;
      }
      std::size_t j = miss - hit.begin();
      apply(pushout(sys.rules[r], res.presheaf, cmps[r].lim.tuples[j]));
      ++res.pushouts;
      res.trace.push_back({ChaseStep::pushout, r, j});
      cursor = (r + 1) % n;
      acted = true;
    }
    if (!acted) return res;
  }
}

ChaseResult reflect_representable(const OrthogonalitySystem& sys, ObjId x, std::size_t budget,
                                  const SizeBudget& size) {
  return chase_reflect(sys, representable(sys.base, x), budget, size);
}

std::vector<PresheafMap> enumerate_presheaf_maps(const Presheaf& p, const Presheaf& q, const SizeBudget& budget) {
  std::vector<PresheafMap> out;
  MapSearch ms(p, q, nullptr, budget);
  ms.search(out, static_cast<std::size_t>(-1));
  return out;
}

std::optional<PresheafMap> extend_from_reflection(const OrthogonalitySystem& sys, const ChaseResult& r, ObjId b,
                                                  const Presheaf& q, Elem v) {
  const auto& c = *sys.base;
  Elem seed = r.unit.components[b][c.hom_index(c.id(b))];
  SizeBudget budget;
  MapSearch ms(r.presheaf, q, &sys, budget);
  if (!ms.assign(b, seed, v)) return std::nullopt;
  std::vector<PresheafMap> out;
  ms.search(out, 1);
  if (out.empty()) return std::nullopt;
  return out.front();
}

std::vector<Presheaf> all_presheaves(const CatPtr& c, std::size_t bound, const SizeBudget& budget) {
  auto op = make_cat(opposite_category(*c));
  std::vector<Presheaf> out;
  for (const auto& f : enumerate_functors(op, finset_category(bound), budget))
    out.push_back(diagram_as_presheaf(diagram_of(f), c));
  return out;
}

std::vector<Presheaf> enumerate_classifier(const Sketch& s, std::size_t bound, const SizeBudget& budget) {
  auto turned = dual_sketch(forget_part(Variance::cocone, s));
  std::vector<Presheaf> out;
  for (const auto& m : enumerate_model_functors(turned, bound, 1, budget))
    out.push_back(diagram_as_presheaf(diagram_of(m), s.carrier));
  return out;
}

namespace {

// L(よx) for every object, or the first object whose chase ran out.
struct Reflections {
  std::vector<ChaseResult> j;
  std::optional<ObjId> stuck;
};

Reflections reflect_all(const OrthogonalitySystem& sys, std::size_t budget, const SizeBudget& size) {
  Reflections out;
  for (ObjId x = 0; x < sys.base->num_objects(); ++x) {
    out.j.push_back(reflect_representable(sys, x, budget, size));
    if (!out.j.back().saturated() && !out.stuck) out.stuck = x;
  }
  return out;
}

// J(u) : J x -> J y for u : x -> y.
PresheafMap j_on_arrow(const OrthogonalitySystem& sys, const Reflections& refl, ArrId u) {
  const auto& c = *sys.base;
  ObjId x = c.src(u), y = c.tgt(u);
  Elem v = refl.j[y].unit.components[x][c.hom_index(u)];
  auto m = extend_from_reflection(sys, refl.j[x], x, refl.j[y].presheaf, v);
  if (!m) fail(ErrorKind::invalid_argument, "a reflection does not extend along " + c.arrow(u).name);
  return *m;
}

Verdict3 unknown_at(const FinCategory& c, ObjId x, std::size_t budget) {
  return {VerdictKind::unknown, "budget", {{"object", c.object_name(x)}, {"budget", budget}}};
}

}  // namespace

Normalization left_normalize(const SketchPtr& sp, std::size_t budget, const SizeBudget& size) {
  const auto& s = *sp;
  const auto& c = *s.carrier;
  auto sys = rho_system(s, size);
  auto refl = reflect_all(sys, budget, size);
  if (refl.stuck) return {unknown_at(c, *refl.stuck, budget), nullptr, std::nullopt};
  std::size_t n = c.num_objects();
  // arrow a -> b for every element of J(b)(a)
  std::vector<std::vector<std::vector<ArrId>>> ids(n, std::vector<std::vector<ArrId>>(n));
  std::vector<Arrow> arrows;
  std::vector<std::tuple<ObjId, ObjId, Elem>> where;
  std::set<std::string> used;
  for (ObjId b = 0; b < n; ++b)
    for (ObjId a = 0; a < n; ++a) {
      const auto& unit = refl.j[b].unit.components[a];
      for (Elem e = 0; e < refl.j[b].presheaf.fibers[a]; ++e) {
        std::string name;
        auto hs = c.hom(a, b);
        for (std::size_t i = 0; i < hs.size() && name.empty(); ++i)
          if (unit[i] == e) name = c.arrow(hs[i]).name;
        if (name.empty()) name = "j_" + c.object_name(a) + "_" + c.object_name(b) + "_" + std::to_string(e);
        while (used.count(name)) name += "'";
        used.insert(name);
        ids[b][a].push_back(static_cast<ArrId>(arrows.size()));
        arrows.push_back({name, a, b});
        where.push_back({a, b, e});
      }
    }
  std::vector<ArrId> identities;
  for (ObjId b = 0; b < n; ++b) identities.push_back(ids[b][b][refl.j[b].unit.components[b][c.hom_index(c.id(b))]]);
  // composition with v : b -> d is the extension J b -> J d seeded by v
  std::vector<PresheafMap> ext;
  for (const auto& [a, b, e] : where) {
    auto m = extend_from_reflection(sys, refl.j[a], a, refl.j[b].presheaf, e);
    if (!m) fail(ErrorKind::invalid_argument, "a reflection does not extend");
    ext.push_back(std::move(*m));
  }
  auto comp = [&](ArrId g, ArrId f) {
    auto [a, b, e] = where[f];
    ObjId d = std::get<1>(where[g]);
    return ids[d][a][ext[g].components[a][e]];
  };
  auto cat = make_cat(FinCategory::with_composition(c.object_names(), arrows, identities, comp));
  FunctorData p{s.carrier, cat, {}, {}};
  for (ObjId o = 0; o < n; ++o) p.obj_map.push_back(o);
  for (ArrId h = 0; h < c.num_arrows(); ++h) {
    ObjId a = c.src(h), b = c.tgt(h);
    p.arr_map.push_back(ids[b][a][refl.j[b].unit.components[a][c.hom_index(h)]]);
  }
  auto out = make_sketch(min_structure("normal(" + s.name + ")", cat, {{sp, p}}));
  Normalization res;
  res.verdict = {VerdictKind::verified, "",
                 {{"objects", n}, {"arrows", cat->num_arrows()}, {"input_arrows", c.num_arrows()}}};
  res.sketch = out;
  res.unit = SketchMorphism{sp, out, p};
  return res;
}

Verdict3 roundedness_check(const Sketch& s, std::size_t budget, const SizeBudget& size) {
  const auto& c = *s.carrier;
  auto cones = enumerate_family(s, Variance::cone);
  if (cones.empty()) return {VerdictKind::verified, "", {{"cones", 0}}};
  auto sys = rho_system(s, size);
  auto refl = reflect_all(sys, budget, size);
  if (refl.stuck) return unknown_at(c, *refl.stuck, budget);
  for (const auto& sp : cones) {
    const auto& shape = *sp.shape;
    std::vector<PresheafMap> dmaps, legs;
    for (ArrId u : sp.diagram.arr_map) dmaps.push_back(j_on_arrow(sys, refl, u));
    for (ArrId l : sp.legs) legs.push_back(j_on_arrow(sys, refl, l));
    for (ObjId b = 0; b < c.num_objects(); ++b) {
      FinSetDiagram d{sp.shape, {}, {}};
      for (ObjId o : sp.diagram.obj_map) d.sizes.push_back(refl.j[o].presheaf.fibers[b]);
      for (ArrId u = 0; u < shape.num_arrows(); ++u) d.maps.push_back(dmaps[u].components[b]);
      auto lim = limit_finset(d, size);
      std::size_t tip = refl.j[sp.tip].presheaf.fibers[b];
      std::set<std::vector<Elem>> image;
      for (Elem e = 0; e < tip; ++e) {
        std::vector<Elem> t;
        for (const auto& l : legs) t.push_back(l.components[b][e]);
        image.insert(std::move(t));
      }
      if (image.size() != tip || tip != lim.apex)
        return {VerdictKind::refuted,
                "not_a_limit",
                {{"cone", sp.name}, {"object", c.object_name(b)}, {"tip_fiber", tip}, {"limit", lim.apex}}};
    }
  }
  return {VerdictKind::verified, "", {{"cones", cones.size()}}};
}

ChaseResult hat_on_morphism(const SketchMorphism& f, const Presheaf& p, std::size_t budget, const SizeBudget& size) {
  auto dom_op = make_cat(opposite_category(*f.functor.dom));
  auto cod_op = make_cat(opposite_category(*f.functor.cod));
  auto lan = lan_finset(opposite_functor(f.functor, dom_op, cod_op), presheaf_as_diagram(p, dom_op), size);
  auto sys = rho_system(*f.cod, size);
  return chase_reflect(sys, diagram_as_presheaf(lan.diagram, f.functor.cod), budget, size);
}

Verdict3 density_check(const FunctorData& f, const SizeBudget& budget) {
  const auto& a = *f.dom;
  const auto& b = *f.cod;
  auto nerve = [&](ObjId y) {
    Presheaf p{f.dom, {}, {}};
    for (ObjId o = 0; o < a.num_objects(); ++o) p.fibers.push_back(b.hom(f.obj_map[o], y).size());
    for (ArrId k = 0; k < a.num_arrows(); ++k) {
      std::vector<Elem> m;
      for (ArrId h : b.hom(f.obj_map[a.tgt(k)], y))
        m.push_back(static_cast<Elem>(b.hom_index(b.compose(h, f.arr_map[k]))));
      p.restriction.push_back(std::move(m));
    }
    return p;
  };
  std::vector<Presheaf> ns;
  for (ObjId y = 0; y < b.num_objects(); ++y) ns.push_back(nerve(y));
  for (ObjId x = 0; x < b.num_objects(); ++x)
    for (ObjId y = 0; y < b.num_objects(); ++y) {
      auto nats = enumerate_presheaf_maps(ns[x], ns[y], budget);
      std::set<std::vector<std::vector<Elem>>> image;
      for (ArrId g : b.hom(x, y)) {
        std::vector<std::vector<Elem>> comp;
        for (ObjId o = 0; o < a.num_objects(); ++o) {
          std::vector<Elem> m;
          for (ArrId h : b.hom(f.obj_map[o], x)) m.push_back(static_cast<Elem>(b.hom_index(b.compose(g, h))));
          comp.push_back(std::move(m));
        }
        image.insert(std::move(comp));
      }
      std::size_t homs = b.hom(x, y).size();
      if (image.size() != homs || homs != nats.size()) {
        std::string reason = image.size() != homs ? "not_faithful" : "not_full";
        return {VerdictKind::refuted,
                reason,
                {{"from", b.object_name(x)}, {"to", b.object_name(y)}, {"homs", homs}, {"naturals", nats.size()}}};
      }
    }
  return {VerdictKind::verified, "", {{"objects", b.num_objects()}}};
}

namespace {

bool bijective_map(const std::vector<Elem>& m, std::size_t cod) {
  if (m.size() != cod) return false;
  std::vector<bool> seen(cod, false);
  for (Elem e : m) {
    if (e >= cod || seen[e]) return false;
    seen[e] = true;
  }
  return true;
}

}  // namespace

DiaconescuReport diaconescu_probe(const SketchPtr& sp, std::size_t model_bound, std::size_t fiber_bound,
                                  std::size_t budget, const SizeBudget& size) {
  const auto& s = *sp;
  const auto& c = *s.carrier;
  DiaconescuReport rep;
  auto sys = rho_system(s, size);
  auto models = enumerate_model_functors(s, model_bound, 1, size);
  rep.models = models.size();
  std::vector<Presheaf> reps;
  std::vector<ChaseResult> js;
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    reps.push_back(representable(s.carrier, x));
    js.push_back(chase_reflect(sys, reps.back(), budget, size));
  }
  std::vector<Presheaf> small;
  std::vector<ChaseResult> chased;
  small = all_presheaves(s.carrier, fiber_bound, size);
  for (const auto& p : small) chased.push_back(chase_reflect(sys, p, budget, size));
  auto refute = [&](const char* part, std::size_t model, nlohmann::json extra) {
    extra["part"] = part;
    extra["model"] = model;
    rep.verdict = {VerdictKind::refuted, std::string("part_") + part, std::move(extra)};
    return rep;
  };
  for (std::size_t i = 0; i < models.size(); ++i) {
    auto md = diagram_of(models[i]);
    std::vector<Extension> ext_rep;
    for (ObjId x = 0; x < c.num_objects(); ++x) {
      ext_rep.push_back(evaluate_extension(reps[x], md, size));
      const auto& e = ext_rep.back();
      std::vector<Elem> m;
      for (Elem y = 0; y < md.sizes[x]; ++y) m.push_back(e.at(x, static_cast<Elem>(c.hom_index(c.id(x))), y));
      if (!bijective_map(m, e.size)) return refute("a", i, {{"object", c.object_name(x)}});
      ++rep.checked_a;
    }
    for (std::size_t r = 0; r < sys.rules.size(); ++r) {
      const auto& rule = sys.rules[r];
      auto ea = evaluate_extension(rule.domain, md, size);
      const auto& eb = ext_rep[rule.cocone.tip];
      if (!bijective_map(extension_on_map(ea, eb, rule.rho, md), eb.size))
        return refute("b", i, {{"cocone", rule.cocone.name}});
      ++rep.checked_b;
    }
    for (ObjId x = 0; x < c.num_objects(); ++x) {
      if (!js[x].saturated()) {
        ++rep.unknown_c;
        continue;
      }
      auto ej = evaluate_extension(js[x].presheaf, md, size);
      if (!bijective_map(extension_on_map(ext_rep[x], ej, js[x].unit, md), ej.size))
        return refute("c", i, {{"object", c.object_name(x)}});
      ++rep.checked_c;
    }
    for (std::size_t k = 0; k < small.size(); ++k) {
      if (!chased[k].saturated()) {
        ++rep.unknown_d;
        continue;
      }
      auto ep = evaluate_extension(small[k], md, size);
      auto el = evaluate_extension(chased[k].presheaf, md, size);
      if (!bijective_map(extension_on_map(ep, el, chased[k].unit, md), el.size))
        return refute("d", i, {{"presheaf", k}});
      ++rep.checked_d;
    }
  }
  bool unknown = rep.unknown_c > 0 || rep.unknown_d > 0;
  rep.verdict = {unknown ? VerdictKind::unknown : VerdictKind::verified, unknown ? "budget" : "",
                 {{"models", rep.models}}};
  return rep;
}

}  // namespace sketchlab
