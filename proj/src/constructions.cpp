#include "sketchlab/constructions.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <tuple>

namespace sketchlab {

namespace {

const Variance kBoth[] = {Variance::cone, Variance::cocone};

auto spec_key(const Spec& s) {
  return std::make_tuple(s.shape->num_objects(), s.shape->num_arrows(), s.diagram.obj_map, s.diagram.arr_map,
                         s.tip, s.legs, s.name);
}

std::vector<std::string> uniquify(std::vector<std::string> names) {
  std::set<std::string> seen;
  for (auto& n : names) {
    while (!seen.insert(n).second) n += "'";
  }
  return names;
}

std::string joined(const std::vector<SketchPtr>& parts, std::string_view op) {
  std::string s = std::string(op) + "(";
  for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? "," : "") + parts[i]->name;
  return s + ")";
}

// Mixed-radix fold of binary products: index of (i_0, ..., i_{n-1}).
std::size_t radix(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& base) {
  std::size_t r = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) r = r * base[k] + digits[k];
  return r;
}

std::size_t digit(std::size_t index, const std::vector<std::size_t>& base, std::size_t k) {
  for (std::size_t j = base.size(); j-- > k + 1;) index /= base[j];
  return index % base[k];
}

CatPtr product_of(const std::vector<CatPtr>& cats) {
  if (cats.empty()) return make_cat(shapes::one());
  CatPtr acc = cats[0];
  for (std::size_t k = 1; k < cats.size(); ++k) acc = make_cat(product_category(*acc, *cats[k]));
  return acc;
}

IsoWitness finish(CatPtr left, CatPtr right, std::vector<ObjId> objs, std::vector<ArrId> arrs) {
  IsoWitness w{false, "", std::move(left), std::move(right), std::move(objs), std::move(arrs)};
  auto bijective = [](const std::vector<std::uint32_t>& m, std::size_t n, const char* what, std::string& why) {
    if (m.size() != n) {
      why = std::string(what) + " counts differ (" + std::to_string(m.size()) + " vs " + std::to_string(n) + ")";
      return false;
    }
    std::vector<bool> hit(n, false);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (m[i] == kNone) {
        why = std::string(what) + " " + std::to_string(i) + " has no image";
        return false;
      }
      if (hit[m[i]]) {
        why = std::string(what) + " map is not injective at " + std::to_string(i);
        return false;
      }
      hit[m[i]] = true;
    }
    return true;
  };
  if (!bijective(w.object_map, w.right->num_objects(), "object", w.failure)) return w;
  if (!bijective(w.arrow_map, w.right->num_arrows(), "arrow", w.failure)) return w;
  auto rep = check_functor({w.left, w.right, w.object_map, w.arrow_map});
  if (!rep.valid()) {
    w.failure = "comparison is not a functor: " + rep.violations.front();
    return w;
  }
  w.iso = true;
  return w;
}

ObjId lookup(const FunctorCategory& fc, const FunctorData& f) {
  auto o = fc.find_functor(f);
  return o ? *o : kNone;
}

ArrId lookup(const FunctorCategory& fc, ObjId s, ObjId t, const std::vector<ArrId>& comps) {
  if (s == kNone || t == kNone) return kNone;
  auto a = fc.find_natural(s, t, comps);
  return a ? *a : kNone;
}

}  // namespace

Sketch min_structure(std::string name, CatPtr carrier,
                     const std::vector<std::pair<SketchPtr, FunctorData>>& sources) {
  Sketch out = bare_sketch(std::move(name), carrier);
  for (Variance v : kBoth) {
    std::vector<Spec> images;
    for (std::size_t k = 0; k < sources.size(); ++k) {
      const auto& [src, f] = sources[k];
      if (!same_category(f.cod, carrier) || !same_category(f.dom, src->carrier))
        fail(ErrorKind::domain_mismatch, "source functor of " + src->name + " does not land in the carrier");
      std::vector<Spec> specs;
      try {
        specs = enumerate_family(*src, v);
      } catch (const SketchError& e) {
        if (e.kind() != ErrorKind::non_enumerable_domain) throw;
        fail(ErrorKind::non_enumerable_source, e.what());
      }
      for (const auto& sp : specs) {
        images.push_back(image_spec(sp, f));
        images.back().diagram.cod = carrier;
        if (sources.size() > 1) images.back().name = std::to_string(k) + "." + sp.name;
      }
    }
    std::sort(images.begin(), images.end(), [](const Spec& a, const Spec& b) { return spec_key(a) < spec_key(b); });
    auto& kept = out.family(v).specs;
    for (auto& sp : images) {
      bool dup = false;
      for (const auto& k : kept)
        if (cone_isomorphic(*carrier, k, sp, v)) {
          dup = true;
          break;
        }
      if (!dup) kept.push_back(std::move(sp));
    }
    auto names = uniquify([&] {
      std::vector<std::string> n;
      for (const auto& sp : kept) n.push_back(sp.name);
      return n;
    }());
    for (std::size_t i = 0; i < kept.size(); ++i) kept[i].name = names[i];
  }
  return out;
}

Sketch max_structure(std::string name, CatPtr carrier, std::vector<std::pair<FunctorData, SketchPtr>> targets) {
  Sketch out = bare_sketch(std::move(name), std::move(carrier));
  for (const auto& [g, t] : targets)
    if (!same_category(g.dom, out.carrier) || !same_category(g.cod, t->carrier))
      fail(ErrorKind::domain_mismatch, "target functor into " + t->name + " does not start at the carrier");
  out.cones.kind = out.cocones.kind = FamilyKind::max_generated;
  out.cones.targets = targets;
  out.cocones.targets = std::move(targets);
  return out;
}

Construction product_sketch(const std::vector<SketchPtr>& factors) {
  std::vector<CatPtr> cats;
  for (const auto& f : factors) cats.push_back(f->carrier);
  CatPtr carrier = product_of(cats);
  std::vector<std::size_t> nobj, narr;
  for (const auto& c : cats) {
    nobj.push_back(c->num_objects());
    narr.push_back(c->num_arrows());
  }
  Construction out;
  std::vector<std::pair<FunctorData, SketchPtr>> targets;
  for (std::size_t k = 0; k < factors.size(); ++k) {
    FunctorData p{carrier, cats[k], {}, {}};
    for (ObjId o = 0; o < carrier->num_objects(); ++o) p.obj_map.push_back(static_cast<ObjId>(digit(o, nobj, k)));
    for (ArrId a = 0; a < carrier->num_arrows(); ++a) p.arr_map.push_back(static_cast<ArrId>(digit(a, narr, k)));
    targets.emplace_back(p, factors[k]);
    out.maps.push_back(std::move(p));
  }
  out.sketch = make_sketch(max_structure(joined(factors, "product"), carrier, std::move(targets)));
  return out;
}

Construction coproduct_sketch(const std::vector<SketchPtr>& parts) {
  std::vector<CatPtr> cats;
  for (const auto& p : parts) cats.push_back(p->carrier);
  auto carrier = make_cat(coproduct_category(cats));
  Construction out;
  std::vector<std::pair<SketchPtr, FunctorData>> sources;
  std::size_t obj_off = 0, arr_off = 0;
  for (const auto& p : parts) {
    FunctorData in{p->carrier, carrier, {}, {}};
    for (ObjId o = 0; o < p->carrier->num_objects(); ++o) in.obj_map.push_back(static_cast<ObjId>(o + obj_off));
    for (ArrId a = 0; a < p->carrier->num_arrows(); ++a) in.arr_map.push_back(static_cast<ArrId>(a + arr_off));
    obj_off += p->carrier->num_objects();
    arr_off += p->carrier->num_arrows();
    sources.emplace_back(p, in);
    out.maps.push_back(std::move(in));
  }
  out.sketch = make_sketch(min_structure(joined(parts, "coproduct"), carrier, sources));
  return out;
}

PseudoPullback pseudo_pullback_sketch(const SketchMorphism& f, const SketchMorphism& g, const SizeBudget& budget) {
  if (!same_category(f.functor.cod, g.functor.cod))
    fail(ErrorKind::domain_mismatch, "pullback legs need a common codomain");
  const auto& A = *f.functor.dom;
  const auto& B = *g.functor.dom;
  const auto& C = *f.functor.cod;
  const auto& F = f.functor;
  const auto& G = g.functor;
  struct Triple {
    ObjId a, b;
    ArrId phi;
  };
  std::vector<Triple> objs;
  std::vector<std::string> names;
  for (ObjId a = 0; a < A.num_objects(); ++a)
    for (ObjId b = 0; b < B.num_objects(); ++b)
      for (ArrId phi : C.hom(F.obj_map[a], G.obj_map[b]))
        if (C.is_iso(phi)) {
          objs.push_back({a, b, phi});
          names.push_back("(" + A.object_name(a) + "," + B.object_name(b) + "," + C.arrow(phi).name + ")");
        }
  names = uniquify(std::move(names));
  struct Cell {
    ObjId s, t;
    ArrId u, v;
  };
  std::vector<Cell> cells;
  std::vector<Arrow> arrows;
  std::map<std::tuple<ObjId, ObjId, ArrId, ArrId>, ArrId> index;
  std::vector<ArrId> ids(objs.size(), kNone);
  for (ObjId s = 0; s < objs.size(); ++s)
    for (ObjId t = 0; t < objs.size(); ++t)
      for (ArrId u : A.hom(objs[s].a, objs[t].a))
        for (ArrId v : B.hom(objs[s].b, objs[t].b)) {
          if (C.compose(objs[t].phi, F.arr_map[u]) != C.compose(G.arr_map[v], objs[s].phi)) continue;
          auto id = static_cast<ArrId>(arrows.size());
          bool is_id = s == t && A.is_identity(u) && B.is_identity(v);
          if (is_id) ids[s] = id;
          arrows.push_back({"(" + A.arrow(u).name + "," + B.arrow(v).name + ")", s, t});
          cells.push_back({s, t, u, v});
          index.emplace(std::make_tuple(s, t, u, v), id);
          if (arrows.size() > budget.max_arrows)
            fail(ErrorKind::size_budget_exceeded, "pullback carrier exceeds the arrow budget");
        }
  {
    std::vector<std::string> an;
    for (const auto& a : arrows) an.push_back(a.name);
    an = uniquify(std::move(an));
    for (std::size_t i = 0; i < arrows.size(); ++i) arrows[i].name = an[i];
  }
  auto carrier = make_cat(FinCategory::with_composition(
      names, arrows, ids, [&](ArrId y, ArrId x) {
        return index.at({cells[x].s, cells[y].t, A.compose(cells[y].u, cells[x].u), B.compose(cells[y].v, cells[x].v)});
      }));
  PseudoPullback out;
  out.left = {carrier, F.dom, {}, {}};
  out.right = {carrier, G.dom, {}, {}};
  for (const auto& o : objs) {
    out.left.obj_map.push_back(o.a);
    out.right.obj_map.push_back(o.b);
    out.phi.push_back(o.phi);
  }
  for (const auto& c : cells) {
    out.left.arr_map.push_back(c.u);
    out.right.arr_map.push_back(c.v);
  }
  out.sketch = make_sketch(max_structure("pullback(" + f.dom->name + "," + g.dom->name + ")", carrier,
                                         {{out.left, f.dom}, {out.right, g.dom}}));
  return out;
}

Power power_sketch(const SketchPtr& s, const CatPtr& shape, const SizeBudget& budget) {
  Power out;
  out.functors = functor_category(shape, s->carrier, budget);
  const auto& fc = out.functors;
  std::vector<std::pair<FunctorData, SketchPtr>> targets;
  for (ObjId i = 0; i < shape->num_objects(); ++i) {
    FunctorData ev{fc.category, s->carrier, {}, {}};
    for (const auto& f : fc.functors) ev.obj_map.push_back(f.obj_map[i]);
    for (const auto& n : fc.naturals) ev.arr_map.push_back(n.components[i]);
    targets.emplace_back(ev, s);
    out.maps.push_back(std::move(ev));
  }
  out.sketch = make_sketch(max_structure("power(" + s->name + ")", fc.category, std::move(targets)));
  return out;
}

Splitting split_idempotent(const SketchMorphism& e, const NatTransData& theta) {
  const auto& E = e.functor;
  if (!same_category(E.dom, E.cod)) fail(ErrorKind::not_idempotent, "not an endomorphism");
  if (!(compose_functors(E, E) == E)) fail(ErrorKind::not_idempotent, "e∘e differs from e");
  const auto& c = *E.dom;
  if (!(theta.src == E) || !(theta.tgt == identity_functor(E.dom)))
    fail(ErrorKind::not_equivalence, "theta must run from e to the identity");
  if (!check_natural(theta).valid()) fail(ErrorKind::not_equivalence, "theta is not natural");
  if (!is_invertible(theta)) fail(ErrorKind::not_equivalence, "theta is not invertible");
  for (ObjId x = 0; x < c.num_objects(); ++x) {
    if (theta.components[E.obj_map[x]] != c.id(E.obj_map[x]))
      fail(ErrorKind::not_equivalence, "theta e is not the identity at " + c.object_name(x));
    if (E.arr_map[theta.components[x]] != c.id(E.obj_map[x]))
      fail(ErrorKind::not_equivalence, "e theta is not the identity at " + c.object_name(x));
  }
  std::vector<ObjId> image(E.obj_map.begin(), E.obj_map.end());
  std::sort(image.begin(), image.end());
  image.erase(std::unique(image.begin(), image.end()), image.end());
  auto [sub, inc] = full_subcategory(E.dom, image);
  std::vector<ObjId> obj_local(c.num_objects(), kNone);
  for (ObjId i = 0; i < image.size(); ++i) obj_local[image[i]] = i;
  std::vector<ArrId> arr_local(c.num_arrows(), kNone);
  for (ArrId a = 0; a < inc.arr_map.size(); ++a) arr_local[inc.arr_map[a]] = a;
  FunctorData r{E.dom, sub, {}, {}};
  for (ObjId x = 0; x < c.num_objects(); ++x) r.obj_map.push_back(obj_local[E.obj_map[x]]);
  for (ArrId a = 0; a < c.num_arrows(); ++a) r.arr_map.push_back(arr_local[E.arr_map[a]]);

  Splitting out;
  out.sketch = make_sketch(min_structure("split(" + e.dom->name + ")", sub, {{e.dom, r}}));
  out.retraction = {e.dom, out.sketch, r};
  out.section = {out.sketch, e.dom, inc};
  if (!check_sketch_morphism(out.section).valid())
    fail(ErrorKind::not_equivalence, "the section is not a sketch morphism");
  if (!(compose_functors(inc, r) == E) || !(compose_functors(r, inc) == identity_functor(sub)))
    fail(ErrorKind::not_equivalence, "splitting equations fail");
  return out;
}

Sketch tensor_sketch(const SketchPtr& d, const SketchPtr& s) {
  const auto& D = *d->carrier;
  const auto& S = *s->carrier;
  auto carrier = make_cat(product_category(D, S));
  const std::size_t ns = S.num_objects(), ms = S.num_arrows();
  std::vector<std::pair<SketchPtr, FunctorData>> sources;
  for (ObjId x = 0; x < D.num_objects(); ++x) {
    FunctorData i{s->carrier, carrier, {}, {}};
    for (ObjId y = 0; y < ns; ++y) i.obj_map.push_back(static_cast<ObjId>(x * ns + y));
    for (ArrId g = 0; g < ms; ++g) i.arr_map.push_back(static_cast<ArrId>(D.id(x) * ms + g));
    sources.emplace_back(s, std::move(i));
  }
  for (ObjId y = 0; y < ns; ++y) {
    FunctorData i{d->carrier, carrier, {}, {}};
    for (ObjId x = 0; x < D.num_objects(); ++x) i.obj_map.push_back(static_cast<ObjId>(x * ns + y));
    for (ArrId f = 0; f < D.num_arrows(); ++f) i.arr_map.push_back(static_cast<ArrId>(f * ms + S.id(y)));
    sources.emplace_back(d, std::move(i));
  }
  return min_structure("tensor(" + d->name + "," + s->name + ")", carrier, sources);
}

FunctorCategory hom_category(const SketchPtr& x, const SketchPtr& y, const SizeBudget& budget) {
  std::vector<FunctorData> morphisms;
  for (auto& f : enumerate_functors(x->carrier, y->carrier, budget))
    if (check_sketch_morphism(*x, *y, f, budget).valid()) morphisms.push_back(std::move(f));
  return functor_subcategory(x->carrier, y->carrier, std::move(morphisms), budget, "M");
}

Exponential exponential_sketch(const SketchPtr& d, const SketchPtr& t, const SizeBudget& budget) {
  Exponential out;
  out.homs = hom_category(d, t, budget);
  out.power = power_sketch(t, d->carrier, budget);
  const auto& pf = out.power.functors;
  out.inclusion = {out.homs.category, pf.category, {}, {}};
  for (const auto& f : out.homs.functors) out.inclusion.obj_map.push_back(lookup(pf, f));
  for (const auto& n : out.homs.naturals) {
    ObjId s = out.inclusion.obj_map[*out.homs.find_functor(n.src)];
    ObjId u = out.inclusion.obj_map[*out.homs.find_functor(n.tgt)];
    out.inclusion.arr_map.push_back(lookup(pf, s, u, n.components));
  }
  out.sketch = make_sketch(max_structure("exp(" + d->name + "," + t->name + ")", out.homs.category,
                                         {{out.inclusion, out.power.sketch}}));
  return out;
}

IsoWitness verify_closedness(const SketchPtr& d, const SketchPtr& s, const SketchPtr& t, const SizeBudget& budget) {
  auto tensor = make_sketch(tensor_sketch(d, s));
  auto left = hom_category(tensor, t, budget);
  auto exp = exponential_sketch(d, t, budget);
  auto right = hom_category(s, exp.sketch, budget);
  const auto& D = *d->carrier;
  const auto& S = *s->carrier;
  const std::size_t ns = S.num_objects(), ms = S.num_arrows();

  // Curry H : D × S -> T into S -> T^D.
  auto curry = [&](const FunctorData& h) {
    FunctorData out{s->carrier, exp.homs.category, {}, {}};
    for (ObjId y = 0; y < ns; ++y) {
      FunctorData col{d->carrier, t->carrier, {}, {}};
      for (ObjId x = 0; x < D.num_objects(); ++x) col.obj_map.push_back(h.obj_map[x * ns + y]);
      for (ArrId f = 0; f < D.num_arrows(); ++f) col.arr_map.push_back(h.arr_map[f * ms + S.id(y)]);
      out.obj_map.push_back(lookup(exp.homs, col));
    }
    for (ArrId g = 0; g < ms; ++g) {
      std::vector<ArrId> comps;
      for (ObjId x = 0; x < D.num_objects(); ++x) comps.push_back(h.arr_map[D.id(x) * ms + g]);
      out.arr_map.push_back(lookup(exp.homs, out.obj_map[S.src(g)], out.obj_map[S.tgt(g)], comps));
    }
    return out;
  };
  std::vector<ObjId> objs;
  std::vector<FunctorData> curried;
  for (const auto& h : left.functors) {
    curried.push_back(curry(h));
    bool typed = std::find(curried.back().obj_map.begin(), curried.back().obj_map.end(), kNone) ==
                     curried.back().obj_map.end() &&
                 std::find(curried.back().arr_map.begin(), curried.back().arr_map.end(), kNone) ==
                     curried.back().arr_map.end();
    objs.push_back(typed ? lookup(right, curried.back()) : kNone);
  }
  std::vector<ArrId> arrs;
  for (const auto& n : left.naturals) {
    ObjId hs = *left.find_functor(n.src), ht = *left.find_functor(n.tgt);
    ArrId a = kNone;
    if (objs[hs] != kNone && objs[ht] != kNone) {
      std::vector<ArrId> comps;
      for (ObjId y = 0; y < ns; ++y) {
        std::vector<ArrId> col;
        for (ObjId x = 0; x < D.num_objects(); ++x) col.push_back(n.components[x * ns + y]);
        comps.push_back(lookup(exp.homs, curried[hs].obj_map[y], curried[ht].obj_map[y], col));
      }
      a = lookup(right, objs[hs], objs[ht], comps);
    }
    arrs.push_back(a);
  }
  auto w = finish(left.category, right.category, std::move(objs), std::move(arrs));
  if (!w.iso) fail(ErrorKind::iso_failure, "currying is not an isomorphism: " + w.failure);
  return w;
}

IsoWitness verify_product_property(const SketchPtr& x, const std::vector<SketchPtr>& factors,
                                   const SizeBudget& budget) {
  auto prod = product_sketch(factors);
  auto left = hom_category(x, prod.sketch, budget);
  std::vector<FunctorCategory> parts;
  std::vector<CatPtr> cats;
  std::vector<std::size_t> nobj, narr;
  for (const auto& f : factors) {
    parts.push_back(hom_category(x, f, budget));
    cats.push_back(parts.back().category);
    nobj.push_back(cats.back()->num_objects());
    narr.push_back(cats.back()->num_arrows());
  }
  std::vector<ObjId> objs;
  for (const auto& h : left.functors) {
    std::vector<std::size_t> dig;
    bool ok = true;
    for (std::size_t k = 0; k < factors.size() && ok; ++k) {
      ObjId o = lookup(parts[k], compose_functors(prod.maps[k], h));
      ok = o != kNone;
      dig.push_back(o);
    }
    objs.push_back(ok ? static_cast<ObjId>(radix(dig, nobj)) : kNone);
  }
  std::vector<ArrId> arrs;
  for (const auto& n : left.naturals) {
    std::vector<std::size_t> dig;
    bool ok = true;
    for (std::size_t k = 0; k < factors.size() && ok; ++k) {
      auto w = whisker_left(prod.maps[k], n);
      ArrId a = lookup(parts[k], lookup(parts[k], w.src), lookup(parts[k], w.tgt), w.components);
      ok = a != kNone;
      dig.push_back(a);
    }
    arrs.push_back(ok ? static_cast<ArrId>(radix(dig, narr)) : kNone);
  }
  return finish(left.category, product_of(cats), std::move(objs), std::move(arrs));
}

IsoWitness verify_coproduct_property(const std::vector<SketchPtr>& parts, const SketchPtr& x,
                                     const SizeBudget& budget) {
  auto cop = coproduct_sketch(parts);
  auto left = hom_category(cop.sketch, x, budget);
  std::vector<FunctorCategory> homs;
  std::vector<CatPtr> cats;
  std::vector<std::size_t> nobj, narr;
  for (const auto& p : parts) {
    homs.push_back(hom_category(p, x, budget));
    cats.push_back(homs.back().category);
    nobj.push_back(cats.back()->num_objects());
    narr.push_back(cats.back()->num_arrows());
  }
  std::vector<ObjId> objs;
  for (const auto& h : left.functors) {
    std::vector<std::size_t> dig;
    bool ok = true;
    for (std::size_t k = 0; k < parts.size() && ok; ++k) {
      ObjId o = lookup(homs[k], compose_functors(h, cop.maps[k]));
      ok = o != kNone;
      dig.push_back(o);
    }
    objs.push_back(ok ? static_cast<ObjId>(radix(dig, nobj)) : kNone);
  }
  std::vector<ArrId> arrs;
  for (const auto& n : left.naturals) {
    std::vector<std::size_t> dig;
    bool ok = true;
    for (std::size_t k = 0; k < parts.size() && ok; ++k) {
      auto w = whisker_right(n, cop.maps[k]);
      ArrId a = lookup(homs[k], lookup(homs[k], w.src), lookup(homs[k], w.tgt), w.components);
      ok = a != kNone;
      dig.push_back(a);
    }
    arrs.push_back(ok ? static_cast<ArrId>(radix(dig, narr)) : kNone);
  }
  return finish(left.category, product_of(cats), std::move(objs), std::move(arrs));
}

IsoWitness verify_pullback_property(const SketchPtr& x, const SketchMorphism& f, const SketchMorphism& g,
                                    const SizeBudget& budget) {
  auto pb = pseudo_pullback_sketch(f, g, budget);
  auto left = hom_category(x, pb.sketch, budget);
  auto ha = hom_category(x, f.dom, budget);
  auto hb = hom_category(x, g.dom, budget);
  const auto& C = *f.functor.cod;
  const std::size_t nx = x->carrier->num_objects();

  // Pseudo-cones (F, G, theta) and their morphisms (alpha, beta).
  struct Cone {
    ObjId i, j;
    std::vector<ArrId> theta;
  };
  std::vector<Cone> cones;
  std::map<std::tuple<ObjId, ObjId, std::vector<ArrId>>, ObjId> cone_index;
  for (ObjId i = 0; i < ha.functors.size(); ++i)
    for (ObjId j = 0; j < hb.functors.size(); ++j)
      for (auto& th : enumerate_naturals(compose_functors(f.functor, ha.functors[i]),
                                         compose_functors(g.functor, hb.functors[j]), budget))
        if (is_invertible(th)) {
          cone_index.emplace(std::make_tuple(i, j, th.components), static_cast<ObjId>(cones.size()));
          cones.push_back({i, j, std::move(th.components)});
        }
  struct Cell {
    ObjId s, t;
    ArrId alpha, beta;
  };
  std::vector<Cell> cells;
  std::vector<Arrow> arrows;
  std::vector<ArrId> ids(cones.size(), kNone);
  std::map<std::tuple<ObjId, ObjId, ArrId, ArrId>, ArrId> index;
  const auto& ca = *ha.category;
  const auto& cb = *hb.category;
  for (ObjId s = 0; s < cones.size(); ++s)
    for (ObjId t = 0; t < cones.size(); ++t)
      for (ArrId al : ca.hom(cones[s].i, cones[t].i))
        for (ArrId be : cb.hom(cones[s].j, cones[t].j)) {
          bool ok = true;
          for (ObjId o = 0; o < nx && ok; ++o)
            ok = C.compose(cones[t].theta[o], f.functor.arr_map[ha.naturals[al].components[o]]) ==
                 C.compose(g.functor.arr_map[hb.naturals[be].components[o]], cones[s].theta[o]);
          if (!ok) continue;
          auto id = static_cast<ArrId>(arrows.size());
          if (s == t && ca.is_identity(al) && cb.is_identity(be)) ids[s] = id;
          arrows.push_back({"c" + std::to_string(id), s, t});
          cells.push_back({s, t, al, be});
          index.emplace(std::make_tuple(s, t, al, be), id);
        }
  std::vector<std::string> names;
  for (ObjId s = 0; s < cones.size(); ++s) names.push_back("K" + std::to_string(s));
  for (ObjId s = 0; s < cones.size(); ++s) arrows[ids[s]].name = "id_K" + std::to_string(s);
  auto right = make_cat(FinCategory::with_composition(names, arrows, ids, [&](ArrId y, ArrId z) {
    return index.at({cells[z].s, cells[y].t, ca.compose(cells[y].alpha, cells[z].alpha),
                     cb.compose(cells[y].beta, cells[z].beta)});
  }));

  std::vector<ObjId> objs;
  for (const auto& h : left.functors) {
    ObjId i = lookup(ha, compose_functors(pb.left, h));
    ObjId j = lookup(hb, compose_functors(pb.right, h));
    std::vector<ArrId> theta;
    for (ObjId o = 0; o < nx; ++o) theta.push_back(pb.phi[h.obj_map[o]]);
    auto it = cone_index.find({i, j, theta});
    objs.push_back(it == cone_index.end() ? kNone : it->second);
  }
  std::vector<ArrId> arrs;
  for (const auto& n : left.naturals) {
    ObjId s = objs[*left.find_functor(n.src)], t = objs[*left.find_functor(n.tgt)];
    auto wa = whisker_left(pb.left, n);
    auto wb = whisker_left(pb.right, n);
    ArrId al = lookup(ha, lookup(ha, wa.src), lookup(ha, wa.tgt), wa.components);
    ArrId be = lookup(hb, lookup(hb, wb.src), lookup(hb, wb.tgt), wb.components);
    auto it = index.find({s, t, al, be});
    arrs.push_back(it == index.end() ? kNone : it->second);
  }
  return finish(left.category, right, std::move(objs), std::move(arrs));
}

IsoWitness verify_power_property(const SketchPtr& x, const SketchPtr& s, const CatPtr& shape,
                                 const SizeBudget& budget) {
  auto pw = power_sketch(s, shape, budget);
  auto left = hom_category(x, pw.sketch, budget);
  auto hxs = hom_category(x, s, budget);
  auto right = functor_category(shape, hxs.category, budget);
  const auto& I = *shape;
  const auto& X = *x->carrier;
  const auto& pf = pw.functors;

  // H : X -> S^I read as a functor I -> Skt(X, S).
  auto transpose = [&](const FunctorData& h) {
    FunctorData out{shape, hxs.category, {}, {}};
    for (ObjId i = 0; i < I.num_objects(); ++i) out.obj_map.push_back(lookup(hxs, compose_functors(pw.maps[i], h)));
    for (ArrId w = 0; w < I.num_arrows(); ++w) {
      std::vector<ArrId> comps;
      for (ObjId o = 0; o < X.num_objects(); ++o) comps.push_back(pf.functors[h.obj_map[o]].arr_map[w]);
      out.arr_map.push_back(lookup(hxs, out.obj_map[I.src(w)], out.obj_map[I.tgt(w)], comps));
    }
    return out;
  };
  std::vector<ObjId> objs;
  for (const auto& h : left.functors) {
    auto t = transpose(h);
    bool typed = std::find(t.obj_map.begin(), t.obj_map.end(), kNone) == t.obj_map.end() &&
                 std::find(t.arr_map.begin(), t.arr_map.end(), kNone) == t.arr_map.end();
    objs.push_back(typed ? lookup(right, t) : kNone);
  }
  std::vector<ArrId> arrs;
  for (const auto& n : left.naturals) {
    ObjId hs = *left.find_functor(n.src), ht = *left.find_functor(n.tgt);
    ArrId a = kNone;
    if (objs[hs] != kNone && objs[ht] != kNone) {
      const auto& fs = right.functors[objs[hs]];
      const auto& ft = right.functors[objs[ht]];
      std::vector<ArrId> comps;
      for (ObjId i = 0; i < I.num_objects(); ++i) {
        std::vector<ArrId> col;
        for (ObjId o = 0; o < X.num_objects(); ++o) col.push_back(pf.naturals[n.components[o]].components[i]);
        comps.push_back(lookup(hxs, fs.obj_map[i], ft.obj_map[i], col));
      }
      a = lookup(right, objs[hs], objs[ht], comps);
    }
    arrs.push_back(a);
  }
  return finish(left.category, right.category, std::move(objs), std::move(arrs));
}

Spec sieve_cocone(const CatPtr& carrier, const Cover& cover, std::string name) {
  const auto& c = *carrier;
  const auto& [target, arrows] = cover;
  std::set<ArrId> sieve;
  for (ArrId f : arrows) {
    if (c.tgt(f) != target)
      fail(ErrorKind::invalid_argument, "cover arrow " + c.arrow(f).name + " does not end at " + c.object_name(target));
    for (ArrId k : c.in_arrows(c.src(f))) sieve.insert(c.compose(f, k));
  }
  std::vector<ArrId> elems(sieve.begin(), sieve.end());
  std::map<ArrId, ObjId> pos;
  std::vector<std::string> objs;
  for (ObjId i = 0; i < elems.size(); ++i) {
    pos[elems[i]] = i;
    objs.push_back(c.arrow(elems[i]).name);
  }
  struct Cell {
    ObjId s, t;
    ArrId k;
  };
  std::vector<Cell> cells;
  std::vector<Arrow> sarrows;
  std::vector<ArrId> ids(elems.size(), kNone);
  std::map<std::tuple<ObjId, ObjId, ArrId>, ArrId> index;
  for (ObjId s = 0; s < elems.size(); ++s)
    for (ObjId t = 0; t < elems.size(); ++t)
      for (ArrId k : c.hom(c.src(elems[s]), c.src(elems[t]))) {
        if (c.compose(elems[t], k) != elems[s]) continue;
        auto id = static_cast<ArrId>(sarrows.size());
        bool is_id = s == t && c.is_identity(k);
        if (is_id) ids[s] = id;
        sarrows.push_back({is_id ? "id_" + objs[s] : c.arrow(k).name + ":" + objs[s] + ">" + objs[t], s, t});
        cells.push_back({s, t, k});
        index.emplace(std::make_tuple(s, t, k), id);
      }
  auto shape = make_cat(FinCategory::with_composition(objs, sarrows, ids, [&](ArrId y, ArrId x) {
    return index.at({cells[x].s, cells[y].t, c.compose(cells[y].k, cells[x].k)});
  }));
  Spec sp;
  sp.name = std::move(name);
  sp.shape = shape;
  sp.diagram = {shape, carrier, {}, {}};
  for (ArrId g : elems) sp.diagram.obj_map.push_back(c.src(g));
  for (const auto& cell : cells) sp.diagram.arr_map.push_back(cell.k);
  sp.tip = target;
  sp.legs = elems;
  return sp;
}

Sketch site_to_sketch(std::string name, const CatPtr& carrier, const std::vector<Spec>& cones,
                      const std::vector<Cover>& covers, const SizeBudget& budget) {
  const auto& c = *carrier;
  for (const auto& sp : cones)
    if (!universality_check(c, sp, Variance::cone, budget))
      fail(ErrorKind::not_lex, name + ": cone '" + sp.name + "' is not a limit cone");
  bool terminal = false;
  for (ObjId t = 0; t < c.num_objects() && !terminal; ++t) {
    terminal = true;
    for (ObjId o = 0; o < c.num_objects() && terminal; ++o) terminal = c.hom(o, t).size() == 1;
  }
  if (!terminal) fail(ErrorKind::not_lex, name + ": the carrier has no terminal object");
  auto cospan = make_cat(shapes::cospan());
  for (ArrId f = 0; f < c.num_arrows(); ++f)
    for (ArrId g : c.in_arrows(c.tgt(f))) {
      Spec sp;
      sp.shape = cospan;
      sp.diagram = {cospan, carrier, {c.src(f), c.src(g), c.tgt(f)},
                    {c.id(c.src(f)), c.id(c.src(g)), c.id(c.tgt(f)), f, g}};
      bool found = false;
      for (ObjId p = 0; p < c.num_objects() && !found; ++p)
        for (ArrId l : c.hom(p, c.src(f))) {
          if (found) break;
          for (ArrId r : c.hom(p, c.src(g))) {
            if (c.compose(f, l) != c.compose(g, r)) continue;
            sp.tip = p;
            sp.legs = {l, r, c.compose(f, l)};
            if (universality_check(c, sp, Variance::cone, budget)) {
              found = true;
              break;
            }
          }
        }
      if (!found)
        fail(ErrorKind::not_lex, name + ": no pullback of " + c.arrow(f).name + " and " + c.arrow(g).name);
    }
  Sketch out = bare_sketch(std::move(name), carrier);
  out.cones.specs = cones;
  for (std::size_t k = 0; k < covers.size(); ++k)
    out.cocones.specs.push_back(
        sieve_cocone(carrier, covers[k], "cover_" + c.object_name(covers[k].first) + "_" + std::to_string(k)));
  return out;
}

}  // namespace sketchlab
