#include "sketchlab/sketch.hpp"

#include <functional>
#include <set>

#include "sketchlab/finset.hpp"

namespace sketchlab {

std::string_view family_kind_name(FamilyKind k) {
  switch (k) {
    case FamilyKind::extensional: return "extensional";
    case FamilyKind::min_generated: return "min_generated";
    case FamilyKind::max_generated: return "max_generated";
    case FamilyKind::all_limit_cones: return "all_limit_cones";
    case FamilyKind::all_colimit_cocones: return "all_colimit_cocones";
  }
  return "?";
}

namespace {

bool same_sketch(const SketchPtr& a, const SketchPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

const char* part_word(Variance v) { return v == Variance::cone ? "cone" : "cocone"; }

}  // namespace

bool SpecFamily::operator==(const SpecFamily& other) const {
  if (kind != other.kind || specs != other.specs || sources.size() != other.sources.size() ||
      targets.size() != other.targets.size())
    return false;
  for (std::size_t i = 0; i < sources.size(); ++i)
    if (!same_sketch(sources[i].first, other.sources[i].first) || !(sources[i].second == other.sources[i].second))
      return false;
  for (std::size_t i = 0; i < targets.size(); ++i)
    if (!same_sketch(targets[i].second, other.targets[i].second) || !(targets[i].first == other.targets[i].first))
      return false;
  return true;
}

bool Sketch::operator==(const Sketch& other) const {
  return name == other.name && same_category(carrier, other.carrier) && cones == other.cones &&
         cocones == other.cocones;
}

Sketch bare_sketch(std::string name, CatPtr carrier) { return {std::move(name), std::move(carrier), {}, {}}; }

SketchMorphism identity_morphism(const SketchPtr& s) { return {s, s, identity_functor(s->carrier)}; }

SketchMorphism compose_morphisms(const SketchMorphism& g, const SketchMorphism& f) {
  if (!same_sketch(f.cod, g.dom))
    fail(ErrorKind::domain_mismatch, "sketch morphisms are not composable");
  return {f.dom, g.cod, compose_functors(g.functor, f.functor)};
}

ValidityReport check_spec(const FinCategory& carrier, const Spec& s, Variance v) {
  ValidityReport r;
  const auto& sh = *s.shape;
  auto fr = check_functor(s.diagram);
  for (auto& m : fr.violations) r.violations.push_back("diagram: " + m);
  if (!r.valid()) return r;
  if (s.tip >= carrier.num_objects()) {
    r.violations.push_back("tip is not an object of the carrier");
    return r;
  }
  if (s.legs.size() != sh.num_objects()) {
    r.violations.push_back("one leg per shape object is required");
    return r;
  }
  const auto& d = s.diagram;
  for (ObjId o = 0; o < sh.num_objects(); ++o) {
    ArrId l = s.legs[o];
    ObjId from = v == Variance::cone ? s.tip : d.obj_map[o];
    ObjId to = v == Variance::cone ? d.obj_map[o] : s.tip;
    if (l >= carrier.num_arrows() || carrier.src(l) != from || carrier.tgt(l) != to)
      r.violations.push_back("leg at " + sh.object_name(o) + " has the wrong type");
  }
  if (!r.valid()) return r;
  for (ArrId u = 0; u < sh.num_arrows(); ++u) {
    ObjId x = sh.src(u), y = sh.tgt(u);
    bool ok = v == Variance::cone ? carrier.compose(d.arr_map[u], s.legs[x]) == s.legs[y]
                                  : carrier.compose(s.legs[y], d.arr_map[u]) == s.legs[x];
    if (!ok) r.violations.push_back("leg triangle at " + sh.arrow(u).name + " does not commute");
  }
  return r;
}

Spec image_spec(const Spec& s, const FunctorData& f) {
  Spec out{s.name, s.shape, compose_functors(f, s.diagram), f.obj_map[s.tip], {}};
  for (ArrId l : s.legs) out.legs.push_back(f.arr_map[l]);
  return out;
}

std::vector<Spec> enumerate_family(const Sketch& s, Variance v) {
  const auto& fam = s.family(v);
  switch (fam.kind) {
    case FamilyKind::extensional:
      return fam.specs;
    case FamilyKind::min_generated: {
      std::vector<Spec> out;
      for (const auto& [src, f] : fam.sources)
        for (const auto& sp : enumerate_family(*src, v)) out.push_back(image_spec(sp, f));
      return out;
    }
    default:
      fail(ErrorKind::non_enumerable_domain, "the " + std::string(part_word(v)) + " family of " + s.name +
                                                 " is " + std::string(family_kind_name(fam.kind)) +
                                                 " and cannot be enumerated");
  }
}

bool cone_isomorphic(const FinCategory& c, const Spec& a, const Spec& b, Variance v) {
  if (!same_category(a.shape, b.shape)) return false;
  const auto& sh = *a.shape;
  const std::size_t n = sh.num_objects();
  std::vector<std::vector<ArrId>> checks(n);
  for (ArrId u = 0; u < sh.num_arrows(); ++u)
    if (!sh.is_identity(u)) checks[std::max(sh.src(u), sh.tgt(u))].push_back(u);
  std::vector<ArrId> theta(n, kNone);
  ArrId t = kNone;
  std::function<bool(ObjId)> go = [&](ObjId o) -> bool {
    if (o == n) return true;
    for (ArrId k : c.hom(a.diagram.obj_map[o], b.diagram.obj_map[o])) {
      if (!c.is_iso(k)) continue;
      bool ok = v == Variance::cone ? c.compose(b.legs[o], t) == c.compose(k, a.legs[o])
                                    : c.compose(t, a.legs[o]) == c.compose(b.legs[o], k);
      if (!ok) continue;
      theta[o] = k;
      for (ArrId u : checks[o]) {
        ObjId x = sh.src(u), y = sh.tgt(u);
        if (c.compose(b.diagram.arr_map[u], theta[x]) != c.compose(theta[y], a.diagram.arr_map[u])) {
          ok = false;
          break;
        }
      }
      if (ok && go(o + 1)) return true;
    }
    return false;
  };
  for (ArrId cand : c.hom(a.tip, b.tip)) {
    if (!c.is_iso(cand)) continue;
    t = cand;
    if (go(0)) return true;
  }
  return false;
}

namespace {

bool finset_universal(const FinCategory& c, const Spec& s, Variance v, const SizeBudget& budget) {
  const auto& info = *c.finset();
  FinSetDiagram d;
  d.shape = info.opposite ? make_cat(opposite_category(*s.shape)) : s.shape;
  for (ObjId o : s.diagram.obj_map) d.sizes.push_back(info.sizes[o]);
  for (ArrId a : s.diagram.arr_map) d.maps.push_back(info.tables[a]);
  std::vector<std::vector<Elem>> legs;
  for (ArrId l : s.legs) legs.push_back(info.tables[l]);
  bool as_limit = (v == Variance::cone) != info.opposite;
  try {
    return as_limit ? is_limit_cone(d, info.sizes[s.tip], legs, budget)
                    : is_colimit_cocone(d, info.sizes[s.tip], legs, budget);
  } catch (const SketchError& e) {
    if (e.kind() == ErrorKind::not_a_cone) return false;
    throw;
  }
}

}  // namespace

bool universality_check(const FinCategory& c, const Spec& s, Variance v, const SizeBudget& budget) {
  if (!check_spec(c, s, v).valid()) return false;
  if (c.finset()) return finset_universal(c, s, v, budget);
  const auto& sh = *s.shape;
  const auto& d = s.diagram;
  const std::size_t n = sh.num_objects();
  std::vector<std::vector<ArrId>> checks(n);
  for (ArrId u = 0; u < sh.num_arrows(); ++u)
    if (!sh.is_identity(u)) checks[std::max(sh.src(u), sh.tgt(u))].push_back(u);
  const bool cone = v == Variance::cone;

  for (ObjId x = 0; x < c.num_objects(); ++x) {
    // count (co)cones with vertex x
    std::size_t count = 0;
    std::vector<ArrId> k(n, kNone);
    std::function<void(ObjId)> go = [&](ObjId o) {
      if (o == n) {
        if (++count > budget.max_results)
          fail(ErrorKind::size_budget_exceeded, "too many cones to compare");
        return;
      }
      auto h = cone ? c.hom(x, d.obj_map[o]) : c.hom(d.obj_map[o], x);
      for (ArrId cand : h) {
        k[o] = cand;
        bool ok = true;
        for (ArrId u : checks[o]) {
          ObjId p = sh.src(u), q = sh.tgt(u);
          ok = cone ? c.compose(d.arr_map[u], k[p]) == k[q] : c.compose(k[q], d.arr_map[u]) == k[p];
          if (!ok) break;
        }
        if (ok) go(o + 1);
      }
    };
    go(0);
    auto h = cone ? c.hom(x, s.tip) : c.hom(s.tip, x);
    if (h.size() != count) return false;
    std::set<std::vector<ArrId>> image;
    for (ArrId u : h) {
      std::vector<ArrId> fam;
      for (ObjId o = 0; o < n; ++o) fam.push_back(cone ? c.compose(s.legs[o], u) : c.compose(u, s.legs[o]));
      image.insert(std::move(fam));
    }
    if (image.size() != count) return false;
  }
  return true;
}

bool member(const Sketch& s, const Spec& cand, Variance v, const SizeBudget& budget) {
  const auto& fam = s.family(v);
  switch (fam.kind) {
    case FamilyKind::extensional:
      for (const auto& sp : fam.specs)
        if (cone_isomorphic(*s.carrier, sp, cand, v)) return true;
      return false;
    case FamilyKind::min_generated:
      for (const auto& sp : enumerate_family(s, v))
        if (cone_isomorphic(*s.carrier, sp, cand, v)) return true;
      return false;
    case FamilyKind::max_generated:
      for (const auto& [g, t] : fam.targets)
        if (!member(*t, image_spec(cand, g), v, budget)) return false;
      return true;
    case FamilyKind::all_limit_cones:
      return v == Variance::cone && universality_check(*s.carrier, cand, v, budget);
    case FamilyKind::all_colimit_cocones:
      return v == Variance::cocone && universality_check(*s.carrier, cand, v, budget);
  }
  return false;
}

namespace {

void check_part(const Sketch& dom, const Sketch& cod, const FunctorData& f, Variance v, ValidityReport& r,
                const SizeBudget& budget) {
  const auto& df = dom.family(v);
  const auto& cf = cod.family(v);
  if (df.enumerable()) {
    for (const auto& sp : enumerate_family(dom, v))
      if (!member(cod, image_spec(sp, f), v, budget))
        r.violations.push_back(std::string(part_word(v)) + " '" + sp.name + "' of " + dom.name +
                               " is not sent to a " + part_word(v) + " of " + cod.name);
    return;
  }
  // A functor into a maximal structure is a morphism iff every generating
  // post-composite is.
  if (cf.kind == FamilyKind::max_generated) {
    for (const auto& [h, u] : cf.targets) check_part(dom, *u, compose_functors(h, f), v, r, budget);
    return;
  }
  if (df.kind == FamilyKind::max_generated)
    for (const auto& [g, t] : df.targets)
      if (g == f && t->family(v) == cf) return;
  if (df.kind == cf.kind && (df.kind == FamilyKind::all_limit_cones || df.kind == FamilyKind::all_colimit_cocones) &&
      same_category(dom.carrier, cod.carrier) && f == identity_functor(dom.carrier))
    return;
  fail(ErrorKind::non_enumerable_domain, "cannot decide the " + std::string(part_word(v)) + " part: " + dom.name +
                                             " has a " + std::string(family_kind_name(df.kind)) + " family");
}

}  // namespace

ValidityReport check_sketch_morphism(const Sketch& dom, const Sketch& cod, const FunctorData& f,
                                     const SizeBudget& budget) {
  auto r = check_functor(f);
  if (!r.valid()) return r;
  if (!same_category(f.dom, dom.carrier) || !same_category(f.cod, cod.carrier))
    fail(ErrorKind::domain_mismatch, "functor does not run between the sketch carriers");
  check_part(dom, cod, f, Variance::cone, r, budget);
  check_part(dom, cod, f, Variance::cocone, r, budget);
  return r;
}

ValidityReport check_sketch_morphism(const SketchMorphism& f, const SizeBudget& budget) {
  return check_sketch_morphism(*f.dom, *f.cod, f.functor, budget);
}

SketchFlags classify_sketch(const Sketch& s, const SizeBudget& budget) {
  SketchFlags flags;
  auto cones = enumerate_family(s, Variance::cone);
  auto cocones = enumerate_family(s, Variance::cocone);
  flags.right_normal = true;
  for (const auto& sp : cones)
    if (!universality_check(*s.carrier, sp, Variance::cone, budget)) {
      flags.right_normal = false;
      flags.cone_witness = sp.name;
      break;
    }
  flags.left_normal = true;
  for (const auto& sp : cocones)
    if (!universality_check(*s.carrier, sp, Variance::cocone, budget)) {
      flags.left_normal = false;
      flags.cocone_witness = sp.name;
      break;
    }
  flags.normal = flags.left_normal && flags.right_normal;
  flags.limit_sketch = cocones.empty();
  flags.colimit_sketch = cones.empty();
  flags.small = true;
  return flags;
}

FunctorData opposite_functor(const FunctorData& f, const CatPtr& dom_op, const CatPtr& cod_op) {
  return {dom_op, cod_op, f.obj_map, f.arr_map};
}

Spec dual_spec(const Spec& s, const CatPtr& carrier_op) {
  auto shape_op = make_cat(opposite_category(*s.shape));
  return {s.name, shape_op, opposite_functor(s.diagram, shape_op, carrier_op), s.tip, s.legs};
}

namespace {

std::string dual_name(const std::string& n) {
  if (n.size() > 6 && n.rfind("dual(", 0) == 0 && n.back() == ')') {
    // only strip a wrapper that encloses the whole name
    int depth = 0;
    bool whole = true;
    for (std::size_t i = 4; i < n.size(); ++i) {
      if (n[i] == '(') ++depth;
      if (n[i] == ')' && --depth == 0 && i + 1 != n.size()) whole = false;
    }
    if (whole) return n.substr(5, n.size() - 6);
  }
  return "dual(" + n + ")";
}

SpecFamily dual_family(const SpecFamily& fam, const CatPtr& carrier_op) {
  SpecFamily out;
  out.kind = fam.kind;
  if (fam.kind == FamilyKind::all_limit_cones) out.kind = FamilyKind::all_colimit_cocones;
  if (fam.kind == FamilyKind::all_colimit_cocones) out.kind = FamilyKind::all_limit_cones;
  for (const auto& sp : fam.specs) out.specs.push_back(dual_spec(sp, carrier_op));
  for (const auto& [src, f] : fam.sources) {
    auto d = make_sketch(dual_sketch(*src));
    out.sources.emplace_back(d, opposite_functor(f, d->carrier, carrier_op));
  }
  for (const auto& [g, tgt] : fam.targets) {
    auto d = make_sketch(dual_sketch(*tgt));
    out.targets.emplace_back(opposite_functor(g, carrier_op, d->carrier), d);
  }
  return out;
}

}  // namespace

Sketch dual_sketch(const Sketch& s) {
  auto op = make_cat(opposite_category(*s.carrier));
  return {dual_name(s.name), op, dual_family(s.cocones, op), dual_family(s.cones, op)};
}

Sketch forget_part(Variance keep, const Sketch& s) {
  Sketch out{s.name, s.carrier, {}, {}};
  out.family(keep) = s.family(keep);
  return out;
}

}  // namespace sketchlab
