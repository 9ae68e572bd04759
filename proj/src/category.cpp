#include "sketchlab/category.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <unordered_map>

namespace sketchlab {

namespace {

std::string arrow_desc(const FinCategory& c, ArrId a) {
  const auto& ar = c.arrow(a);
  return ar.name + ": " + c.object_name(ar.src) + " -> " + c.object_name(ar.tgt);
}

}  // namespace

// ---------------------------------------------------------------------------
// FinCategory

struct CategoryBuilder {
  // Shared construction path for both constructors.
  static void index(FinCategory& c, std::vector<std::string> objects, std::vector<Arrow> arrows,
                    std::vector<ArrId> identities, std::shared_ptr<const FinSetCarrierInfo> fs);
  static void validate(FinCategory& c);
};

void CategoryBuilder::index(FinCategory& c, std::vector<std::string> objects,
                            std::vector<Arrow> arrows, std::vector<ArrId> identities,
                            std::shared_ptr<const FinSetCarrierInfo> fs) {
  const std::size_t n = objects.size();
  const std::size_t m = arrows.size();
  if (identities.size() != n)
    fail(ErrorKind::inconsistent_tables, "identity table does not cover every object");
  {
    std::set<std::string_view> seen;
    for (const auto& o : objects)
      if (!seen.insert(o).second)
        fail(ErrorKind::inconsistent_tables, "duplicate object name '" + o + "'");
  }
  {
    std::set<std::string_view> seen;
    for (const auto& a : arrows) {
      if (a.src >= n || a.tgt >= n)
        fail(ErrorKind::inconsistent_tables, "arrow '" + a.name + "' has an unknown endpoint");
      if (!seen.insert(a.name).second)
        fail(ErrorKind::inconsistent_tables, "duplicate arrow name '" + a.name + "'");
    }
  }
  for (std::size_t o = 0; o < n; ++o) {
    ArrId i = identities[o];
    if (i >= m || arrows[i].src != o || arrows[i].tgt != o)
      fail(ErrorKind::inconsistent_tables, "identity of '" + objects[o] + "' is not an endomorphism of it");
  }
  c.objects_ = std::move(objects);
  c.arrows_ = std::move(arrows);
  c.identities_ = std::move(identities);
  c.finset_ = std::move(fs);

  c.out_.assign(n, {});
  c.in_.assign(n, {});
  c.hom_.assign(n * n, {});
  c.out_pos_.assign(m, 0);
  c.in_pos_.assign(m, 0);
  c.hom_pos_.assign(m, 0);
  for (ArrId a = 0; a < m; ++a) {
    const auto& ar = c.arrows_[a];
    c.out_pos_[a] = c.out_[ar.src].size();
    c.out_[ar.src].push_back(a);
    c.in_pos_[a] = c.in_[ar.tgt].size();
    c.in_[ar.tgt].push_back(a);
    auto& h = c.hom_[static_cast<std::size_t>(ar.src) * n + ar.tgt];
    c.hom_pos_[a] = h.size();
    h.push_back(a);
  }
  c.comp_offset_.assign(m + 1, 0);
  for (ArrId f = 0; f < m; ++f)
    c.comp_offset_[f + 1] = c.comp_offset_[f] + c.out_[c.arrows_[f].tgt].size();
  c.comp_.assign(c.comp_offset_[m], kNone);
}

void CategoryBuilder::validate(FinCategory& c) {
  const std::size_t m = c.arrows_.size();
  for (ArrId f = 0; f < m; ++f) {
    for (ArrId g : c.out_[c.arrows_[f].tgt]) {
      ArrId r = c.compose(g, f);
      if (r == kNone)
        fail(ErrorKind::inconsistent_tables,
             "missing composite of " + arrow_desc(c, f) + " then " + arrow_desc(c, g));
      if (r >= m || c.arrows_[r].src != c.arrows_[f].src || c.arrows_[r].tgt != c.arrows_[g].tgt)
        fail(ErrorKind::inconsistent_tables,
             "composite of " + c.arrows_[f].name + " then " + c.arrows_[g].name + " has wrong endpoints");
    }
  }
  for (ArrId f = 0; f < m; ++f) {
    const auto& ar = c.arrows_[f];
    if (c.compose(c.identities_[ar.tgt], f) != f || c.compose(f, c.identities_[ar.src]) != f)
      fail(ErrorKind::inconsistent_tables, "identities are not neutral for " + ar.name);
  }
  for (ArrId f = 0; f < m; ++f)
    for (ArrId g : c.out_[c.arrows_[f].tgt]) {
      ArrId gf = c.compose(g, f);
      for (ArrId h : c.out_[c.arrows_[g].tgt])
        if (c.compose(h, gf) != c.compose(c.compose(h, g), f))
          fail(ErrorKind::inconsistent_tables, "associativity fails for " + c.arrows_[f].name + ", " +
                                                   c.arrows_[g].name + ", " + c.arrows_[h].name);
    }
  c.inverse_.assign(m, kNone);
  for (ArrId f = 0; f < m; ++f) {
    const auto& ar = c.arrows_[f];
    for (ArrId g : c.hom(ar.tgt, ar.src))
      if (c.compose(g, f) == c.identities_[ar.src] && c.compose(f, g) == c.identities_[ar.tgt]) {
        c.inverse_[f] = g;
        break;
      }
  }
}

FinCategory::FinCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
                         std::vector<ArrId> identities, const std::vector<Composite>& composites,
                         std::shared_ptr<const FinSetCarrierInfo> finset) {
  CategoryBuilder::index(*this, std::move(objects), std::move(arrows), std::move(identities),
                         std::move(finset));
  auto slot = [&](ArrId f, ArrId g) -> ArrId& {
    return comp_[comp_offset_[f] + out_pos_[g]];
  };
  for (const auto& cmp : composites) {
    if (cmp.first >= arrows_.size() || cmp.second >= arrows_.size() || cmp.result >= arrows_.size())
      fail(ErrorKind::inconsistent_tables, "composite refers to an unknown arrow");
    if (arrows_[cmp.first].tgt != arrows_[cmp.second].src)
      fail(ErrorKind::inconsistent_tables, "composite given for non-composable pair " +
                                               arrows_[cmp.first].name + ", " + arrows_[cmp.second].name);
    ArrId& s = slot(cmp.first, cmp.second);
    if (s != kNone && s != cmp.result)
      fail(ErrorKind::inconsistent_tables, "conflicting composites for " + arrows_[cmp.first].name +
                                               ", " + arrows_[cmp.second].name);
    s = cmp.result;
  }
  for (ArrId f = 0; f < arrows_.size(); ++f) {
    ArrId it = identities_[arrows_[f].tgt];
    ArrId is = identities_[arrows_[f].src];
    if (slot(f, it) == kNone) slot(f, it) = f;
    if (slot(is, f) == kNone) slot(is, f) = f;
  }
  CategoryBuilder::validate(*this);
}

FinCategory FinCategory::with_composition(std::vector<std::string> objects, std::vector<Arrow> arrows,
                                          std::vector<ArrId> identities,
                                          const std::function<ArrId(ArrId, ArrId)>& comp,
                                          std::shared_ptr<const FinSetCarrierInfo> finset) {
  FinCategory c;
  CategoryBuilder::index(c, std::move(objects), std::move(arrows), std::move(identities),
                         std::move(finset));
  for (ArrId f = 0; f < c.arrows_.size(); ++f)
    for (ArrId g : c.out_[c.arrows_[f].tgt]) c.comp_[c.comp_offset_[f] + c.out_pos_[g]] = comp(g, f);
  CategoryBuilder::validate(c);
  return c;
}

ArrId FinCategory::compose(ArrId g, ArrId f) const {
  if (f >= arrows_.size() || g >= arrows_.size()) return kNone;
  if (arrows_[f].tgt != arrows_[g].src) return kNone;
  return comp_[comp_offset_[f] + out_pos_[g]];
}

std::optional<ObjId> FinCategory::find_object(std::string_view name) const {
  for (ObjId o = 0; o < objects_.size(); ++o)
    if (objects_[o] == name) return o;
  return std::nullopt;
}

std::optional<ArrId> FinCategory::find_arrow(std::string_view name) const {
  for (ArrId a = 0; a < arrows_.size(); ++a)
    if (arrows_[a].name == name) return a;
  return std::nullopt;
}

bool FinCategory::operator==(const FinCategory& other) const {
  return objects_ == other.objects_ && arrows_ == other.arrows_ &&
         identities_ == other.identities_ && comp_ == other.comp_;
}

bool same_category(const CatPtr& a, const CatPtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  return *a == *b;
}

// ---------------------------------------------------------------------------
// Presentations

namespace {

struct PathKey {
  ObjId start;
  std::vector<std::uint32_t> gens;

  auto operator<=>(const PathKey&) const = default;
};

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
  bool unite(std::uint32_t a, std::uint32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[b] = a;
    return true;
  }
};

std::map<std::string, ObjId, std::less<>> object_index(const std::vector<std::string>& objects) {
  std::map<std::string, ObjId, std::less<>> idx;
  for (ObjId o = 0; o < objects.size(); ++o)
    if (!idx.emplace(objects[o], o).second)
      fail(ErrorKind::inconsistent_tables, "duplicate object name '" + objects[o] + "'");
  return idx;
}

CompiledCategory compile_acyclic(const CatPresentation& p, const SizeBudget& budget) {
  auto objs = object_index(p.objects);
  const std::size_t n = p.objects.size();
  std::vector<ObjId> gsrc, gtgt;
  std::map<std::string, std::uint32_t, std::less<>> gidx;
  for (std::uint32_t e = 0; e < p.generators.size(); ++e) {
    const auto& g = p.generators[e];
    auto s = objs.find(g.src), t = objs.find(g.tgt);
    if (s == objs.end() || t == objs.end())
      fail(ErrorKind::invalid_argument, "arrow '" + g.name + "' has an unknown endpoint");
    if (g.name.rfind("id_", 0) == 0)
      fail(ErrorKind::invalid_argument, "arrow name '" + g.name + "' is reserved for identities");
    if (!gidx.emplace(g.name, e).second)
      fail(ErrorKind::inconsistent_tables, "duplicate arrow name '" + g.name + "'");
    gsrc.push_back(s->second);
    gtgt.push_back(t->second);
  }

  // Cycle check by iterative DFS colouring.
  {
    std::vector<std::vector<std::uint32_t>> out(n);
    for (std::uint32_t e = 0; e < gsrc.size(); ++e) out[gsrc[e]].push_back(e);
    std::vector<int> colour(n, 0);
    for (ObjId root = 0; root < n; ++root) {
      if (colour[root]) continue;
      std::vector<std::pair<ObjId, std::size_t>> stack{{root, 0}};
      colour[root] = 1;
      while (!stack.empty()) {
        auto& [v, i] = stack.back();
        if (i == out[v].size()) {
          colour[v] = 2;
          stack.pop_back();
          continue;
        }
        ObjId w = gtgt[out[v][i++]];
        if (colour[w] == 1)
          fail(ErrorKind::cyclic_presentation,
               "generator graph has a cycle through '" + p.objects[w] + "'");
        if (colour[w] == 0) {
          colour[w] = 1;
          stack.push_back({w, 0});
        }
      }
    }
  }

  // All paths, ordered by length then generator sequence.
  std::vector<PathKey> paths;
  std::vector<ObjId> path_end;
  for (ObjId o = 0; o < n; ++o) {
    paths.push_back({o, {}});
    path_end.push_back(o);
  }
  std::size_t level_begin = 0;
  while (level_begin < paths.size()) {
    std::size_t level_end = paths.size();
    std::vector<std::pair<PathKey, ObjId>> next;
    for (std::size_t i = level_begin; i < level_end; ++i)
      for (std::uint32_t e = 0; e < gsrc.size(); ++e)
        if (gsrc[e] == path_end[i]) {
          PathKey k = paths[i];
          if (k.gens.empty()) k.start = gsrc[e];
          k.gens.push_back(e);
          next.emplace_back(std::move(k), gtgt[e]);
        }
    std::sort(next.begin(), next.end(), [](const auto& a, const auto& b) { return a.first.gens < b.first.gens; });
    for (auto& [k, end] : next) {
      paths.push_back(std::move(k));
      path_end.push_back(end);
      if (paths.size() > budget.max_arrows)
        fail(ErrorKind::size_budget_exceeded, "presentation has more than " +
                                                  std::to_string(budget.max_arrows) + " paths");
    }
    level_begin = level_end;
  }
  std::map<PathKey, std::uint32_t> index;
  for (std::uint32_t i = 0; i < paths.size(); ++i) index.emplace(paths[i], i);

  auto lookup = [&](ObjId start, std::vector<std::uint32_t> gens) -> std::uint32_t {
    if (!gens.empty()) start = gsrc[gens.front()];
    return index.at(PathKey{start, std::move(gens)});
  };

  auto parse_path = [&](const PathExpr& expr) -> std::pair<std::uint32_t, ObjId> {
    std::optional<ObjId> cur_start, cur_end;
    std::vector<std::uint32_t> gens;
    for (const auto& tok : expr) {
      ObjId s, t;
      if (auto g = gidx.find(tok); g != gidx.end()) {
        s = gsrc[g->second];
        t = gtgt[g->second];
        gens.push_back(g->second);
      } else if (tok.rfind("id_", 0) == 0 && objs.count(tok.substr(3))) {
        s = t = objs.find(tok.substr(3))->second;
      } else {
        fail(ErrorKind::relation_type_mismatch, "unknown arrow '" + tok + "' in relation");
      }
      if (cur_end && *cur_end != s)
        fail(ErrorKind::relation_type_mismatch, "path does not compose at '" + tok + "'");
      if (!cur_start) cur_start = s;
      cur_end = t;
    }
    if (!cur_start) fail(ErrorKind::relation_type_mismatch, "empty path in relation");
    return {lookup(*cur_start, std::move(gens)), *cur_start};
  };

  UnionFind uf(paths.size());
  for (const auto& rel : p.relations) {
    auto [l, ls] = parse_path(rel.lhs);
    auto [r, rs] = parse_path(rel.rhs);
    if (ls != rs || path_end[l] != path_end[r])
      fail(ErrorKind::relation_type_mismatch, "relation equates paths with different endpoints");
    uf.unite(l, r);
  }

  // Close under whiskering by single generators until nothing changes.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::uint32_t i = 0; i < paths.size(); ++i) {
      std::uint32_t r = uf.find(i);
      if (r == i) continue;
      ObjId start = paths[i].gens.empty() ? paths[i].start : gsrc[paths[i].gens.front()];
      for (std::uint32_t e = 0; e < gsrc.size(); ++e) {
        if (gsrc[e] == path_end[i]) {
          auto a = paths[i].gens, b = paths[r].gens;
          a.push_back(e);
          b.push_back(e);
          changed |= uf.unite(lookup(start, std::move(a)), lookup(start, std::move(b)));
        }
        if (gtgt[e] == start) {
          std::vector<std::uint32_t> a{e}, b{e};
          a.insert(a.end(), paths[i].gens.begin(), paths[i].gens.end());
          b.insert(b.end(), paths[r].gens.begin(), paths[r].gens.end());
          changed |= uf.unite(lookup(gsrc[e], std::move(a)), lookup(gsrc[e], std::move(b)));
        }
      }
    }
  }

  std::vector<ArrId> class_of(paths.size(), kNone);
  std::vector<std::uint32_t> rep;
  for (std::uint32_t i = 0; i < paths.size(); ++i) {
    std::uint32_t r = uf.find(i);
    if (class_of[r] == kNone) {
      class_of[r] = static_cast<ArrId>(rep.size());
      rep.push_back(r);
    }
    class_of[i] = class_of[r];
  }

  std::vector<Arrow> arrows;
  for (std::uint32_t r : rep) {
    const auto& k = paths[r];
    ObjId s = k.gens.empty() ? k.start : gsrc[k.gens.front()];
    std::string name;
    if (k.gens.empty()) {
      name = "id_" + p.objects[k.start];
    } else {
      for (std::size_t j = 0; j < k.gens.size(); ++j) {
        if (j) name += ';';
        name += p.generators[k.gens[j]].name;
      }
    }
    arrows.push_back({std::move(name), s, path_end[r]});
  }
  std::vector<ArrId> ids(n);
  for (ObjId o = 0; o < n; ++o) ids[o] = class_of[o];

  auto comp = [&](ArrId g, ArrId f) -> ArrId {
    const auto& pf = paths[rep[f]];
    const auto& pg = paths[rep[g]];
    auto gens = pf.gens;
    gens.insert(gens.end(), pg.gens.begin(), pg.gens.end());
    ObjId start = pf.gens.empty() ? pf.start : gsrc[pf.gens.front()];
    if (gens.empty()) start = pf.start;
    return class_of[lookup(start, std::move(gens))];
  };

  CompiledCategory out;
  out.category = FinCategory::with_composition(p.objects, std::move(arrows), std::move(ids), comp);
  for (ObjId o = 0; o < n; ++o) out.names.emplace("id_" + p.objects[o], class_of[o]);
  for (std::uint32_t e = 0; e < p.generators.size(); ++e)
    out.names.emplace(p.generators[e].name, class_of[lookup(gsrc[e], {e})]);
  return out;
}

CompiledCategory compile_explicit(const CatPresentation& p) {
  if (!p.relations.empty())
    fail(ErrorKind::inconsistent_tables, "relations cannot be combined with explicit composition tables");
  auto objs = object_index(p.objects);
  std::vector<Arrow> arrows;
  std::vector<ArrId> ids(p.objects.size(), kNone);
  if (p.identities.empty()) {
    for (ObjId o = 0; o < p.objects.size(); ++o) {
      ids[o] = static_cast<ArrId>(arrows.size());
      arrows.push_back({"id_" + p.objects[o], o, o});
    }
  }
  for (const auto& g : p.generators) {
    auto s = objs.find(g.src), t = objs.find(g.tgt);
    if (s == objs.end() || t == objs.end())
      fail(ErrorKind::invalid_argument, "arrow '" + g.name + "' has an unknown endpoint");
    arrows.push_back({g.name, s->second, t->second});
  }
  std::map<std::string, ArrId, std::less<>> names;
  for (ArrId a = 0; a < arrows.size(); ++a)
    if (!names.emplace(arrows[a].name, a).second)
      fail(ErrorKind::inconsistent_tables, "duplicate arrow name '" + arrows[a].name + "'");
  for (const auto& [obj, arr] : p.identities) {
    auto o = objs.find(obj);
    auto a = names.find(arr);
    if (o == objs.end() || a == names.end())
      fail(ErrorKind::inconsistent_tables, "identity entry " + obj + " = " + arr + " does not resolve");
    ids[o->second] = a->second;
  }
  for (ObjId o = 0; o < ids.size(); ++o)
    if (ids[o] == kNone) fail(ErrorKind::inconsistent_tables, "object '" + p.objects[o] + "' has no identity");
  std::vector<FinCategory::Composite> comps;
  for (const auto& c : p.composites) {
    auto f = names.find(c.first), g = names.find(c.second), r = names.find(c.result);
    if (f == names.end() || g == names.end() || r == names.end())
      fail(ErrorKind::inconsistent_tables,
           "composite " + c.first + ";" + c.second + " = " + c.result + " does not resolve");
    comps.push_back({f->second, g->second, r->second});
  }
  CompiledCategory out;
  out.category = FinCategory(p.objects, std::move(arrows), std::move(ids), comps);
  for (ObjId o = 0; o < p.objects.size(); ++o)
    out.names.emplace("id_" + p.objects[o], out.category.id(o));
  for (const auto& [name, a] : names) out.names.insert_or_assign(name, a);
  return out;
}

}  // namespace

CompiledCategory compile_presentation_detailed(const CatPresentation& p, const SizeBudget& budget) {
  return p.explicit_tables ? compile_explicit(p) : compile_acyclic(p, budget);
}

FinCategory compile_presentation(const CatPresentation& p, const SizeBudget& budget) {
  return compile_presentation_detailed(p, budget).category;
}

CatPresentation to_presentation(const FinCategory& c) {
  CatPresentation p;
  p.explicit_tables = true;
  p.objects = c.object_names();
  for (const auto& a : c.arrows())
    p.generators.push_back({a.name, c.object_name(a.src), c.object_name(a.tgt)});
  for (ObjId o = 0; o < c.num_objects(); ++o)
    p.identities.emplace_back(c.object_name(o), c.arrow(c.id(o)).name);
  for (ArrId f = 0; f < c.num_arrows(); ++f) {
    if (c.is_identity(f)) continue;
    for (ArrId g : c.out_arrows(c.tgt(f))) {
      if (c.is_identity(g)) continue;
      p.composites.push_back({c.arrow(f).name, c.arrow(g).name, c.arrow(c.compose(g, f)).name});
    }
  }
  return p;
}

ArrId resolve_path(const FinCategory& c, const std::map<std::string, ArrId, std::less<>>& names,
                   const PathExpr& path, std::optional<ObjId> start) {
  ArrId cur = kNone;
  if (start) cur = c.id(*start);
  for (const auto& tok : path) {
    ArrId a = kNone;
    if (auto it = names.find(tok); it != names.end()) {
      a = it->second;
    } else if (tok.rfind("id_", 0) == 0) {
      if (auto o = c.find_object(std::string_view(tok).substr(3))) a = c.id(*o);
    }
    if (a == kNone) return kNone;
    if (cur == kNone) {
      cur = a;
    } else {
      cur = c.then(cur, a);
      if (cur == kNone) return kNone;
    }
  }
  return cur;
}

// ---------------------------------------------------------------------------
// Constructions

FinCategory opposite_category(const FinCategory& c) {
  std::vector<Arrow> arrows;
  arrows.reserve(c.num_arrows());
  for (const auto& a : c.arrows()) arrows.push_back({a.name, a.tgt, a.src});
  std::vector<ArrId> ids(c.num_objects());
  for (ObjId o = 0; o < c.num_objects(); ++o) ids[o] = c.id(o);
  std::shared_ptr<const FinSetCarrierInfo> fs;
  if (c.finset()) {
    auto info = std::make_shared<FinSetCarrierInfo>(*c.finset());
    info->opposite = !info->opposite;
    fs = std::move(info);
  }
  return FinCategory::with_composition(c.object_names(), std::move(arrows), std::move(ids),
                                       [&](ArrId g, ArrId f) { return c.compose(f, g); }, fs);
}

FinCategory product_category(const FinCategory& a, const FinCategory& b) {
  const std::size_t nb = b.num_objects(), mb = b.num_arrows();
  std::vector<std::string> objects;
  for (ObjId i = 0; i < a.num_objects(); ++i)
    for (ObjId j = 0; j < nb; ++j) objects.push_back("(" + a.object_name(i) + "," + b.object_name(j) + ")");
  std::vector<Arrow> arrows;
  for (ArrId f = 0; f < a.num_arrows(); ++f)
    for (ArrId g = 0; g < mb; ++g)
      arrows.push_back({"(" + a.arrow(f).name + "," + b.arrow(g).name + ")",
                        static_cast<ObjId>(a.src(f) * nb + b.src(g)),
                        static_cast<ObjId>(a.tgt(f) * nb + b.tgt(g))});
  std::vector<ArrId> ids;
  for (ObjId i = 0; i < a.num_objects(); ++i)
    for (ObjId j = 0; j < nb; ++j) ids.push_back(static_cast<ArrId>(a.id(i) * mb + b.id(j)));
  return FinCategory::with_composition(std::move(objects), std::move(arrows), std::move(ids),
                                       [&](ArrId g, ArrId f) {
                                         return static_cast<ArrId>(a.compose(g / mb, f / mb) * mb +
                                                                   b.compose(g % mb, f % mb));
                                       });
}

FinCategory coproduct_category(const std::vector<CatPtr>& parts) {
  std::vector<std::string> objects;
  std::vector<Arrow> arrows;
  std::vector<ArrId> ids;
  std::vector<std::size_t> obj_off, arr_off;
  for (std::size_t k = 0; k < parts.size(); ++k) {
    const auto& c = *parts[k];
    obj_off.push_back(objects.size());
    arr_off.push_back(arrows.size());
    std::string pre = std::to_string(k) + ".";
    for (ObjId o = 0; o < c.num_objects(); ++o) objects.push_back(pre + c.object_name(o));
    for (const auto& a : c.arrows())
      arrows.push_back({pre + a.name, static_cast<ObjId>(a.src + obj_off[k]),
                        static_cast<ObjId>(a.tgt + obj_off[k])});
    for (ObjId o = 0; o < c.num_objects(); ++o) ids.push_back(static_cast<ArrId>(c.id(o) + arr_off[k]));
  }
  arr_off.push_back(arrows.size());
  auto part_of = [&](ArrId a) {
    return static_cast<std::size_t>(std::upper_bound(arr_off.begin(), arr_off.end(), a) - arr_off.begin() - 1);
  };
  return FinCategory::with_composition(std::move(objects), std::move(arrows), std::move(ids),
                                       [&](ArrId g, ArrId f) {
                                         std::size_t k = part_of(f);
                                         auto off = static_cast<ArrId>(arr_off[k]);
                                         return parts[k]->compose(g - off, f - off) + off;
                                       });
}

namespace shapes {

namespace {

FinCategory free_on(std::vector<std::string> objects, std::vector<GeneratorDecl> gens,
                    std::vector<PathEquation> rels = {}) {
  CatPresentation p;
  p.objects = std::move(objects);
  p.generators = std::move(gens);
  p.relations = std::move(rels);
  return compile_presentation(p);
}

}  // namespace

FinCategory empty() { return FinCategory({}, {}, {}, {}); }

FinCategory one() { return discrete(1); }

FinCategory discrete(std::size_t n) {
  std::vector<std::string> objs;
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  return free_on(std::move(objs), {});
}

FinCategory codiscrete(std::size_t n) {
  std::vector<std::string> objs;
  std::vector<Arrow> arrows;
  std::vector<ArrId> ids(n);
  for (std::size_t i = 0; i < n; ++i) objs.push_back(std::to_string(i));
  // Arrow i -> j sits at index i*n + j.
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      std::string name = i == j ? "id_" + objs[i] : "u" + objs[i] + "_" + objs[j];
      arrows.push_back({std::move(name), static_cast<ObjId>(i), static_cast<ObjId>(j)});
      if (i == j) ids[i] = static_cast<ArrId>(i * n + j);
    }
  return FinCategory::with_composition(std::move(objs), std::move(arrows), std::move(ids),
                                       [n](ArrId g, ArrId f) {
                                         return static_cast<ArrId>((f / n) * n + g % n);
                                       });
}

FinCategory walking_arrow() { return free_on({"0", "1"}, {{"e", "0", "1"}}); }

FinCategory parallel_pair() { return free_on({"a", "b"}, {{"f", "a", "b"}, {"g", "a", "b"}}); }

FinCategory span() { return free_on({"a", "l", "r"}, {{"p", "a", "l"}, {"q", "a", "r"}}); }

FinCategory cospan() { return free_on({"l", "r", "c"}, {{"p", "l", "c"}, {"q", "r", "c"}}); }

FinCategory square() {
  return free_on({"a", "b", "c", "d"},
                 {{"f", "a", "b"}, {"g", "a", "c"}, {"h", "b", "d"}, {"k", "c", "d"}},
                 {{{"f", "h"}, {"g", "k"}}});
}

}  // namespace shapes

// ---------------------------------------------------------------------------
// Functors and natural transformations

bool FunctorData::operator==(const FunctorData& other) const {
  return obj_map == other.obj_map && arr_map == other.arr_map && same_category(dom, other.dom) &&
         same_category(cod, other.cod);
}

FunctorData identity_functor(const CatPtr& c) {
  FunctorData f{c, c, {}, {}};
  f.obj_map.resize(c->num_objects());
  f.arr_map.resize(c->num_arrows());
  std::iota(f.obj_map.begin(), f.obj_map.end(), 0u);
  std::iota(f.arr_map.begin(), f.arr_map.end(), 0u);
  return f;
}

ValidityReport check_functor(const FunctorData& f) {
  ValidityReport r;
  const auto& d = *f.dom;
  const auto& c = *f.cod;
  if (f.obj_map.size() != d.num_objects() || f.arr_map.size() != d.num_arrows()) {
    r.violations.push_back("table sizes do not match the domain");
    return r;
  }
  for (ObjId o = 0; o < d.num_objects(); ++o)
    if (f.obj_map[o] >= c.num_objects()) r.violations.push_back("object " + d.object_name(o) + " maps outside the codomain");
  for (ArrId a = 0; a < d.num_arrows(); ++a)
    if (f.arr_map[a] >= c.num_arrows()) r.violations.push_back("arrow " + d.arrow(a).name + " maps outside the codomain");
  if (!r.valid()) return r;
  for (ArrId a = 0; a < d.num_arrows(); ++a) {
    ArrId b = f.arr_map[a];
    if (c.src(b) != f.obj_map[d.src(a)])
      r.violations.push_back("source of " + d.arrow(a).name + " not preserved");
    if (c.tgt(b) != f.obj_map[d.tgt(a)])
      r.violations.push_back("target of " + d.arrow(a).name + " not preserved");
  }
  for (ObjId o = 0; o < d.num_objects(); ++o)
    if (f.arr_map[d.id(o)] != c.id(f.obj_map[o]))
      r.violations.push_back("identity of " + d.object_name(o) + " not preserved");
  if (!r.valid()) return r;
  for (ArrId a = 0; a < d.num_arrows(); ++a)
    for (ArrId b : d.out_arrows(d.tgt(a)))
      if (f.arr_map[d.compose(b, a)] != c.compose(f.arr_map[b], f.arr_map[a]))
        r.violations.push_back("composite " + d.arrow(a).name + ";" + d.arrow(b).name + " not preserved");
  return r;
}

FunctorData compose_functors(const FunctorData& g, const FunctorData& f) {
  if (!same_category(f.cod, g.dom))
    fail(ErrorKind::domain_mismatch, "codomain of the first functor is not the domain of the second");
  FunctorData h{f.dom, g.cod, {}, {}};
  h.obj_map.reserve(f.obj_map.size());
  h.arr_map.reserve(f.arr_map.size());
  for (ObjId o : f.obj_map) h.obj_map.push_back(g.obj_map[o]);
  for (ArrId a : f.arr_map) h.arr_map.push_back(g.arr_map[a]);
  return h;
}

namespace {

void require_frame(const FunctorData& a, const FunctorData& b) {
  if (!same_category(a.dom, b.dom) || !same_category(a.cod, b.cod))
    fail(ErrorKind::frame_mismatch, "functors do not share domain and codomain");
}

}  // namespace

ValidityReport check_natural(const NatTransData& n) {
  require_frame(n.src, n.tgt);
  ValidityReport r;
  const auto& d = *n.src.dom;
  const auto& c = *n.src.cod;
  if (n.components.size() != d.num_objects()) {
    r.violations.push_back("component table size does not match the domain");
    return r;
  }
  for (ObjId o = 0; o < d.num_objects(); ++o) {
    ArrId k = n.components[o];
    if (k >= c.num_arrows() || c.src(k) != n.src.obj_map[o] || c.tgt(k) != n.tgt.obj_map[o])
      r.violations.push_back("component at " + d.object_name(o) + " has wrong type");
  }
  if (!r.valid()) return r;
  for (ArrId a = 0; a < d.num_arrows(); ++a) {
    ObjId x = d.src(a), y = d.tgt(a);
    if (c.compose(n.tgt.arr_map[a], n.components[x]) != c.compose(n.components[y], n.src.arr_map[a]))
      r.violations.push_back("naturality square at " + d.arrow(a).name + " does not commute");
  }
  return r;
}

NatTransData identity_natural(const FunctorData& f) {
  NatTransData n{f, f, {}};
  for (ObjId o : f.obj_map) n.components.push_back(f.cod->id(o));
  return n;
}

NatTransData vertical_compose(const NatTransData& b, const NatTransData& a) {
  require_frame(a.src, b.src);
  if (a.tgt.obj_map != b.src.obj_map || a.tgt.arr_map != b.src.arr_map)
    fail(ErrorKind::frame_mismatch, "transformations are not composable");
  NatTransData n{a.src, b.tgt, {}};
  for (std::size_t o = 0; o < a.components.size(); ++o)
    n.components.push_back(a.src.cod->compose(b.components[o], a.components[o]));
  return n;
}

NatTransData whisker_left(const FunctorData& h, const NatTransData& n) {
  NatTransData r{compose_functors(h, n.src), compose_functors(h, n.tgt), {}};
  for (ArrId k : n.components) r.components.push_back(h.arr_map[k]);
  return r;
}

NatTransData whisker_right(const NatTransData& n, const FunctorData& k) {
  NatTransData r{compose_functors(n.src, k), compose_functors(n.tgt, k), {}};
  for (ObjId o : k.obj_map) r.components.push_back(n.components[o]);
  return r;
}

bool is_invertible(const NatTransData& n) {
  return std::all_of(n.components.begin(), n.components.end(),
                     [&](ArrId k) { return n.src.cod->is_iso(k); });
}

// ---------------------------------------------------------------------------
// Functor search

namespace {

class FunctorSearch {
 public:
  FunctorSearch(const CatPtr& dom, const CatPtr& cod, const FunctorSearchOptions& opts,
                const SizeBudget& budget)
      : dom_(dom), cod_(cod), d_(*dom), c_(*cod), opts_(opts), budget_(budget) {
    const std::size_t m = d_.num_arrows();
    // Each object checks the arrows whose later endpoint it is.
    obj_checks_.resize(d_.num_objects());
    for (ArrId a = 0; a < m; ++a) {
      if (d_.is_identity(a)) continue;
      obj_checks_[std::max(d_.src(a), d_.tgt(a))].push_back(a);
    }
    for (ArrId a = 0; a < m; ++a)
      if (!d_.is_identity(a)) order_.push_back(a);
    std::vector<std::size_t> pos(m, kNone);
    for (std::size_t i = 0; i < order_.size(); ++i) pos[order_[i]] = i;
    triple_checks_.resize(order_.size());
    for (ArrId f : order_)
      for (ArrId g : d_.out_arrows(d_.tgt(f))) {
        if (d_.is_identity(g)) continue;
        ArrId h = d_.compose(g, f);
        std::size_t last = std::max(pos[f], pos[g]);
        if (!d_.is_identity(h)) last = std::max(last, pos[h]);
        triple_checks_[last].push_back({f, g, h});
      }
  }

  void objects_only(std::vector<std::vector<ObjId>>& out) {
    obj_map_.assign(d_.num_objects(), kNone);
    collect_objects_ = &out;
    assign_object(0);
  }

  void run(std::vector<FunctorData>& out) {
    out_ = &out;
    if (opts_.fixed_objects) {
      obj_map_ = *opts_.fixed_objects;
      for (ObjId o = 0; o < d_.num_objects(); ++o)
        if (!object_ok(o)) return;
      start_arrows();
    } else {
      obj_map_.assign(d_.num_objects(), kNone);
      assign_object(0);
    }
  }

 private:
  struct Triple {
    ArrId f, g, h;
  };

  bool object_ok(ObjId o) {
    for (ArrId a : obj_checks_[o])
      if (c_.hom(obj_map_[d_.src(a)], obj_map_[d_.tgt(a)]).empty()) return false;
    return !opts_.prune_objects || opts_.prune_objects(o, obj_map_);
  }

  void assign_object(ObjId o) {
    if (o == d_.num_objects()) {
      if (collect_objects_) {
        collect_objects_->push_back(obj_map_);
        if (collect_objects_->size() > budget_.max_results)
          fail(ErrorKind::size_budget_exceeded, "too many object assignments");
      } else {
        start_arrows();
      }
      return;
    }
    for (ObjId t = 0; t < c_.num_objects(); ++t) {
      obj_map_[o] = t;
      if (object_ok(o)) assign_object(o + 1);
    }
    obj_map_[o] = kNone;
  }

  void start_arrows() {
    arr_map_.assign(d_.num_arrows(), kNone);
    for (ObjId o = 0; o < d_.num_objects(); ++o) arr_map_[d_.id(o)] = c_.id(obj_map_[o]);
    assign_arrow(0);
  }

  void assign_arrow(std::size_t i) {
    if (i == order_.size()) {
      out_->push_back({dom_, cod_, obj_map_, arr_map_});
      if (out_->size() > budget_.max_results)
        fail(ErrorKind::size_budget_exceeded, "functor enumeration exceeds " +
                                                  std::to_string(budget_.max_results) + " results");
      return;
    }
    ArrId a = order_[i];
    for (ArrId b : c_.hom(obj_map_[d_.src(a)], obj_map_[d_.tgt(a)])) {
      arr_map_[a] = b;
      bool ok = true;
      for (const auto& t : triple_checks_[i])
        if (c_.compose(arr_map_[t.g], arr_map_[t.f]) != arr_map_[t.h]) {
          ok = false;
          break;
        }
      if (ok && opts_.prune_arrows) ok = opts_.prune_arrows(a, obj_map_, arr_map_);
      if (ok) assign_arrow(i + 1);
    }
    arr_map_[a] = kNone;
  }

  CatPtr dom_, cod_;
  const FinCategory& d_;
  const FinCategory& c_;
  const FunctorSearchOptions& opts_;
  const SizeBudget& budget_;
  std::vector<std::vector<ArrId>> obj_checks_;
  std::vector<ArrId> order_;
  std::vector<std::vector<Triple>> triple_checks_;
  std::vector<ObjId> obj_map_;
  std::vector<ArrId> arr_map_;
  std::vector<FunctorData>* out_ = nullptr;
  std::vector<std::vector<ObjId>>* collect_objects_ = nullptr;
};

}  // namespace

std::vector<std::vector<ObjId>> enumerate_object_maps(const CatPtr& dom, const CatPtr& cod,
                                                      const FunctorSearchOptions& opts,
                                                      const SizeBudget& budget) {
  std::vector<std::vector<ObjId>> out;
  FunctorSearch(dom, cod, opts, budget).objects_only(out);
  return out;
}

std::vector<FunctorData> enumerate_functors(const CatPtr& dom, const CatPtr& cod,
                                            const SizeBudget& budget,
                                            const FunctorSearchOptions& opts) {
  std::vector<FunctorData> out;
  FunctorSearch(dom, cod, opts, budget).run(out);
  return out;
}

std::vector<NatTransData> enumerate_naturals(const FunctorData& f, const FunctorData& g,
                                             const SizeBudget& budget) {
  require_frame(f, g);
  const auto& d = *f.dom;
  const auto& c = *f.cod;
  const std::size_t n = d.num_objects();
  std::vector<std::vector<ArrId>> checks(n);
  for (ArrId a = 0; a < d.num_arrows(); ++a)
    if (!d.is_identity(a)) checks[std::max(d.src(a), d.tgt(a))].push_back(a);

  std::vector<NatTransData> out;
  std::vector<ArrId> comp(n, kNone);
  std::function<void(ObjId)> go = [&](ObjId o) {
    if (o == n) {
      out.push_back({f, g, comp});
      if (out.size() > budget.max_results)
        fail(ErrorKind::size_budget_exceeded, "natural transformation enumeration exceeds budget");
      return;
    }
    for (ArrId k : c.hom(f.obj_map[o], g.obj_map[o])) {
      comp[o] = k;
      bool ok = true;
      for (ArrId a : checks[o])
        if (c.compose(g.arr_map[a], comp[d.src(a)]) != c.compose(comp[d.tgt(a)], f.arr_map[a])) {
          ok = false;
          break;
        }
      if (ok) go(o + 1);
    }
    comp[o] = kNone;
  };
  go(0);
  return out;
}

std::optional<ObjId> FunctorCategory::find_functor(const FunctorData& f) const {
  auto it = by_obj_map.find(f.obj_map);
  if (it == by_obj_map.end()) return std::nullopt;
  for (ObjId i : it->second)
    if (functors[i].arr_map == f.arr_map) return i;
  return std::nullopt;
}

std::optional<ArrId> FunctorCategory::find_natural(ObjId src, ObjId tgt,
                                                   const std::vector<ArrId>& components) const {
  auto it = by_components.find({src, tgt, components});
  if (it == by_components.end()) return std::nullopt;
  return it->second;
}

FunctorCategory functor_subcategory(const CatPtr& shape, const CatPtr& target,
                                    std::vector<FunctorData> functors, const SizeBudget& budget,
                                    std::string_view object_prefix) {
  FunctorCategory fc;
  fc.functors = std::move(functors);
  const std::size_t n = fc.functors.size();
  std::vector<std::string> objects;
  for (ObjId i = 0; i < n; ++i) {
    objects.push_back(std::string(object_prefix) + std::to_string(i));
    fc.by_obj_map[fc.functors[i].obj_map].push_back(i);
  }
  std::vector<Arrow> arrows;
  std::vector<ArrId> ids(n, kNone);
  for (ObjId i = 0; i < n; ++i)
    for (ObjId j = 0; j < n; ++j) {
      for (auto& nt : enumerate_naturals(fc.functors[i], fc.functors[j], budget)) {
        auto a = static_cast<ArrId>(arrows.size());
        bool is_id = i == j && nt.components == identity_natural(fc.functors[i]).components;
        if (is_id) ids[i] = a;
        arrows.push_back({is_id ? "id_" + objects[i] : "n" + std::to_string(a), i, j});
        fc.by_components.emplace(std::make_tuple(i, j, nt.components), a);
        fc.naturals.push_back(std::move(nt));
        if (arrows.size() > budget.max_arrows)
          fail(ErrorKind::size_budget_exceeded,
               "functor category exceeds " + std::to_string(budget.max_arrows) + " arrows");
      }
    }
  const auto& t = *target;
  const std::size_t k = shape->num_objects();
  std::vector<ArrId> buf(k);
  std::vector<Arrow> ends = arrows;
  auto comp = [&](ArrId g, ArrId f) -> ArrId {
    const auto& nf = fc.naturals[f].components;
    const auto& ng = fc.naturals[g].components;
    for (std::size_t o = 0; o < k; ++o) buf[o] = t.compose(ng[o], nf[o]);
    auto it = fc.by_components.find({ends[f].src, ends[g].tgt, buf});
    return it == fc.by_components.end() ? kNone : it->second;
  };
  fc.category = make_cat(FinCategory::with_composition(std::move(objects), std::move(arrows),
                                                       std::move(ids), comp));
  return fc;
}

FunctorCategory functor_category(const CatPtr& shape, const CatPtr& target, const SizeBudget& budget) {
  return functor_subcategory(shape, target, enumerate_functors(shape, target, budget), budget);
}

EquivalenceReport check_equivalence(const FunctorData& f) {
  EquivalenceReport r;
  const auto& d = *f.dom;
  const auto& c = *f.cod;
  for (ObjId a = 0; a < d.num_objects() && r.fully_faithful; ++a)
    for (ObjId b = 0; b < d.num_objects(); ++b) {
      auto src = d.hom(a, b);
      auto tgt = c.hom(f.obj_map[a], f.obj_map[b]);
      std::set<ArrId> image;
      for (ArrId x : src) image.insert(f.arr_map[x]);
      if (image.size() != src.size()) {
        r.fully_faithful = false;
        r.ff_reason = "not injective";
      } else if (image.size() != tgt.size()) {
        r.fully_faithful = false;
        r.ff_reason = "not surjective";
      }
      if (!r.fully_faithful) {
        r.ff_witness = {a, b};
        break;
      }
    }
  for (ObjId y = 0; y < c.num_objects(); ++y) {
    bool hit = false;
    for (ObjId a = 0; a < d.num_objects() && !hit; ++a)
      for (ArrId k : c.hom(f.obj_map[a], y))
        if (c.is_iso(k)) {
          hit = true;
          break;
        }
    if (!hit) {
      r.essentially_surjective = false;
      r.es_witness = y;
      break;
    }
  }
  return r;
}

bool is_isomorphism(const FunctorData& f) {
  if (!check_functor(f).valid()) return false;
  if (f.dom->num_objects() != f.cod->num_objects() || f.dom->num_arrows() != f.cod->num_arrows())
    return false;
  std::set<ObjId> objs(f.obj_map.begin(), f.obj_map.end());
  std::set<ArrId> arrs(f.arr_map.begin(), f.arr_map.end());
  return objs.size() == f.obj_map.size() && arrs.size() == f.arr_map.size();
}

std::pair<CatPtr, FunctorData> full_subcategory(const CatPtr& c, const std::vector<ObjId>& objects) {
  std::vector<ObjId> local(c->num_objects(), kNone);
  std::vector<std::string> names;
  for (ObjId i = 0; i < objects.size(); ++i) {
    if (local[objects[i]] != kNone)
      fail(ErrorKind::invalid_argument, "object listed twice in full subcategory");
    local[objects[i]] = i;
    names.push_back(c->object_name(objects[i]));
  }
  std::vector<Arrow> arrows;
  std::vector<ArrId> back, fwd(c->num_arrows(), kNone);
  for (ArrId a = 0; a < c->num_arrows(); ++a) {
    ObjId s = local[c->src(a)], t = local[c->tgt(a)];
    if (s == kNone || t == kNone) continue;
    fwd[a] = static_cast<ArrId>(arrows.size());
    arrows.push_back({c->arrow(a).name, s, t});
    back.push_back(a);
  }
  std::vector<ArrId> ids;
  for (ObjId o : objects) ids.push_back(fwd[c->id(o)]);
  auto sub = make_cat(FinCategory::with_composition(
      std::move(names), std::move(arrows), std::move(ids),
      [&](ArrId g, ArrId f) { return fwd[c->compose(back[g], back[f])]; }));
  FunctorData inc{sub, c, objects, back};
  return {sub, std::move(inc)};
}

}  // namespace sketchlab
