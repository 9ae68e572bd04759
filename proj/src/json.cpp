#include "sketchlab/json.hpp"

namespace sketchlab {

namespace {

Json mappings_to_json(const std::vector<Mapping>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back({{"key", m.key}, {"value", m.value}});
  return out;
}

std::vector<Mapping> mappings_from_json(const Json& j) {
  std::vector<Mapping> out;
  for (const auto& m : j) out.push_back({m.at("key").get<std::string>(), m.at("value").get<PathExpr>()});
  return out;
}

Json spec_block_to_json(const SpecBlock& b) {
  return {{"cocone", b.cocone},
          {"name", b.name},
          {"shape", {{"name", b.shape.name}, {"args", b.shape.args}}},
          {"diagram", mappings_to_json(b.diagram)},
          {"tip", b.tip},
          {"legs", mappings_to_json(b.legs)}};
}

SpecBlock spec_block_from_json(const Json& j) {
  SpecBlock b;
  b.cocone = j.at("cocone").get<bool>();
  b.name = j.at("name").get<std::string>();
  b.shape = {j.at("shape").at("name").get<std::string>(), j.at("shape").at("args").get<std::vector<std::size_t>>()};
  b.diagram = mappings_from_json(j.at("diagram"));
  b.tip = j.at("tip").get<std::string>();
  b.legs = mappings_from_json(j.at("legs"));
  return b;
}

Json spec_blocks_to_json(const std::vector<SpecBlock>& v) {
  Json out = Json::array();
  for (const auto& b : v) out.push_back(spec_block_to_json(b));
  return out;
}

std::vector<SpecBlock> spec_blocks_from_json(const Json& j) {
  std::vector<SpecBlock> out;
  for (const auto& b : j) out.push_back(spec_block_from_json(b));
  return out;
}

}  // namespace

Json document_to_json(const SketchDocument& doc) {
  Json cats = Json::array();
  for (const auto& c : doc.categories) {
    const auto& p = c.pres;
    Json gens = Json::array(), rels = Json::array(), comps = Json::array(), ids = Json::array();
    for (const auto& g : p.generators) gens.push_back({{"name", g.name}, {"src", g.src}, {"tgt", g.tgt}});
    for (const auto& r : p.relations) rels.push_back({{"lhs", r.lhs}, {"rhs", r.rhs}});
    for (const auto& k : p.composites) comps.push_back({{"first", k.first}, {"second", k.second}, {"result", k.result}});
    for (const auto& [o, n] : p.identities) ids.push_back({o, n});
    cats.push_back({{"name", c.name},
                    {"objects", p.objects},
                    {"generators", gens},
                    {"relations", rels},
                    {"explicit_tables", p.explicit_tables},
                    {"identities", ids},
                    {"composites", comps}});
  }
  Json sketches = Json::array();
  for (const auto& s : doc.sketches)
    sketches.push_back({{"name", s.name}, {"on", s.on}, {"specs", spec_blocks_to_json(s.specs)}});
  Json sites = Json::array();
  for (const auto& s : doc.sites) {
    Json covers = Json::array();
    for (const auto& c : s.covers) covers.push_back({{"object", c.object}, {"arrows", c.arrows}});
    sites.push_back({{"name", s.name},
                     {"on", s.on},
                     {"cones", spec_blocks_to_json(s.cones)},
                     {"covers", covers},
                     {"trivial_topology", s.trivial_topology}});
  }
  Json morphs = Json::array();
  for (const auto& m : doc.morphisms)
    morphs.push_back({{"name", m.name},
                      {"dom", m.dom},
                      {"cod", m.cod},
                      {"objects", mappings_to_json(m.objects)},
                      {"arrows", mappings_to_json(m.arrows)}});
  return {{"categories", cats}, {"sketches", sketches}, {"sites", sites}, {"morphisms", morphs}};
}

SketchDocument document_from_json(const Json& j) {
  try {
    SketchDocument doc;
    for (const auto& c : j.at("categories")) {
      CategoryBlock b;
      b.name = c.at("name").get<std::string>();
      auto& p = b.pres;
      p.objects = c.at("objects").get<std::vector<std::string>>();
      for (const auto& g : c.at("generators"))
        p.generators.push_back({g.at("name").get<std::string>(), g.at("src").get<std::string>(),
                                g.at("tgt").get<std::string>()});
      for (const auto& r : c.at("relations"))
        p.relations.push_back({r.at("lhs").get<PathExpr>(), r.at("rhs").get<PathExpr>()});
      p.explicit_tables = c.at("explicit_tables").get<bool>();
      for (const auto& i : c.at("identities")) p.identities.push_back({i.at(0).get<std::string>(), i.at(1).get<std::string>()});
      for (const auto& k : c.at("composites"))
        p.composites.push_back({k.at("first").get<std::string>(), k.at("second").get<std::string>(),
                                k.at("result").get<std::string>()});
      doc.categories.push_back(std::move(b));
    }
    for (const auto& s : j.at("sketches"))
      doc.sketches.push_back({s.at("name").get<std::string>(), s.at("on").get<std::string>(),
                              spec_blocks_from_json(s.at("specs"))});
    for (const auto& s : j.at("sites")) {
      SiteBlock b;
      b.name = s.at("name").get<std::string>();
      b.on = s.at("on").get<std::string>();
      b.cones = spec_blocks_from_json(s.at("cones"));
      for (const auto& c : s.at("covers"))
        b.covers.push_back({c.at("object").get<std::string>(), c.at("arrows").get<std::vector<std::string>>()});
      b.trivial_topology = s.at("trivial_topology").get<bool>();
      doc.sites.push_back(std::move(b));
    }
    for (const auto& m : j.at("morphisms"))
      doc.morphisms.push_back({m.at("name").get<std::string>(), m.at("dom").get<std::string>(),
                               m.at("cod").get<std::string>(), mappings_from_json(m.at("objects")),
                               mappings_from_json(m.at("arrows"))});
    return doc;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, std::string("malformed document JSON: ") + e.what());
  }
}

Json category_to_json(const FinCategory& c) {
  Json arrows = Json::array();
  for (ArrId a = 0; a < c.num_arrows(); ++a)
    if (!c.is_identity(a))
      arrows.push_back({{"name", c.arrow(a).name}, {"src", c.object_name(c.src(a))}, {"tgt", c.object_name(c.tgt(a))}});
  Json comp = Json::array();
  for (ArrId f = 0; f < c.num_arrows(); ++f) {
    if (c.is_identity(f)) continue;
    for (ArrId g : c.out_arrows(c.tgt(f)))
      if (!c.is_identity(g)) comp.push_back({c.arrow(f).name, c.arrow(g).name, c.arrow(c.compose(g, f)).name});
  }
  return {{"objects", c.object_names()}, {"arrows", arrows}, {"compose", comp}};
}

Json spec_to_json(const FinCategory& carrier, const Spec& s) {
  const auto& shape = *s.shape;
  Json objs = Json::object(), arrs = Json::object(), legs = Json::object();
  for (ObjId o = 0; o < shape.num_objects(); ++o) {
    objs[shape.object_name(o)] = carrier.object_name(s.diagram.obj_map[o]);
    legs[shape.object_name(o)] = carrier.arrow(s.legs[o]).name;
  }
  for (ArrId a = 0; a < shape.num_arrows(); ++a)
    if (!shape.is_identity(a)) arrs[shape.arrow(a).name] = carrier.arrow(s.diagram.arr_map[a]).name;
  return {{"name", s.name},
          {"shape", {{"objects", shape.num_objects()}, {"arrows", shape.num_arrows()}}},
          {"diagram", {{"objects", objs}, {"arrows", arrs}}},
          {"tip", carrier.object_name(s.tip)},
          {"legs", legs}};
}

Json sketch_to_json(const Sketch& s) {
  const auto& c = *s.carrier;
  auto family = [&](Variance v) {
    const auto& f = s.family(v);
    Json j{{"kind", family_kind_name(f.kind)}};
    if (f.enumerable()) {
      Json specs = Json::array();
      for (const auto& sp : enumerate_family(s, v)) specs.push_back(spec_to_json(c, sp));
      j["specs"] = specs;
    } else if (f.kind == FamilyKind::max_generated) {
      j["targets"] = f.targets.size();
    }
    return j;
  };
  Json j{{"name", s.name}, {"carrier", category_to_json(c)}, {"cones", family(Variance::cone)},
         {"cocones", family(Variance::cocone)}};
  if (s.cones.enumerable() && s.cocones.enumerable()) {
    auto fl = classify_sketch(s);
    j["flags"] = {{"left_normal", fl.left_normal}, {"right_normal", fl.right_normal}, {"normal", fl.normal},
                  {"limit_sketch", fl.limit_sketch}, {"colimit_sketch", fl.colimit_sketch}};
  }
  return j;
}

Json functor_to_json(const FunctorData& f) {
  const auto& a = *f.dom;
  const auto& b = *f.cod;
  Json objs = Json::object(), arrs = Json::object();
  for (ObjId o = 0; o < a.num_objects(); ++o) objs[a.object_name(o)] = b.object_name(f.obj_map[o]);
  for (ArrId x = 0; x < a.num_arrows(); ++x)
    if (!a.is_identity(x)) arrs[a.arrow(x).name] = b.arrow(f.arr_map[x]).name;
  return {{"objects", objs}, {"arrows", arrs}};
}

Json model_to_json(const FunctorData& m) {
  const auto& a = *m.dom;
  const auto* info = m.cod->finset();
  if (!info) fail(ErrorKind::invalid_argument, "not a functor into FinSet");
  Json sizes = Json::object(), tables = Json::object();
  for (ObjId o = 0; o < a.num_objects(); ++o) sizes[a.object_name(o)] = info->sizes[m.obj_map[o]];
  for (ArrId x = 0; x < a.num_arrows(); ++x)
    if (!a.is_identity(x)) tables[a.arrow(x).name] = info->tables[m.arr_map[x]];
  return {{"sizes", sizes}, {"maps", tables}};
}

Json presheaf_to_json(const Presheaf& p) {
  const auto& c = *p.base;
  Json fibers = Json::object(), res = Json::object();
  for (ObjId o = 0; o < c.num_objects(); ++o) fibers[c.object_name(o)] = p.fibers[o];
  for (ArrId a = 0; a < c.num_arrows(); ++a)
    if (!c.is_identity(a)) res[c.arrow(a).name] = p.restriction[a];
  return {{"fibers", fibers}, {"restriction", res}};
}

Json presheaf_map_to_json(const Presheaf& p, const PresheafMap& m) {
  const auto& c = *p.base;
  Json out = Json::object();
  for (ObjId o = 0; o < c.num_objects(); ++o) out[c.object_name(o)] = m.components[o];
  return out;
}

Presheaf presheaf_from_json(const CatPtr& base, const Json& j) {
  const auto& c = *base;
  Presheaf p{base, std::vector<std::size_t>(c.num_objects(), 0), std::vector<std::vector<Elem>>(c.num_arrows())};
  try {
    for (const auto& [name, n] : j.at("fibers").items()) {
      auto o = c.find_object(name);
      if (!o) fail(ErrorKind::invalid_argument, "unknown object '" + name + "' in presheaf");
      p.fibers[*o] = n.get<std::size_t>();
    }
    std::vector<bool> given(c.num_arrows(), false);
    if (j.contains("restriction"))
      for (const auto& [name, t] : j.at("restriction").items()) {
        auto a = c.find_arrow(name);
        if (!a) fail(ErrorKind::invalid_argument, "unknown arrow '" + name + "' in presheaf");
        p.restriction[*a] = t.get<std::vector<Elem>>();
        given[*a] = true;
      }
    for (ArrId a = 0; a < c.num_arrows(); ++a) {
      if (given[a]) continue;
      if (!c.is_identity(a)) fail(ErrorKind::invalid_argument, "missing restriction along '" + c.arrow(a).name + "'");
      for (Elem e = 0; e < p.fibers[c.src(a)]; ++e) p.restriction[a].push_back(e);
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("malformed presheaf JSON: ") + e.what());
  }
  auto rep = check_presheaf(p);
  if (!rep.valid()) fail(ErrorKind::invalid_argument, "not a presheaf: " + rep.violations.front());
  return p;
}

Json report_to_json(const ValidityReport& r) { return {{"valid", r.valid()}, {"violations", r.violations}}; }

Json verdict_to_json(const Verdict3& v) {
  Json j{{"verdict", verdict_name(v.kind)}};
  if (!v.reason.empty()) j["reason"] = v.reason;
  if (!v.witness.is_null()) j["witness"] = v.witness;
  return j;
}

Json chase_to_json(const OrthogonalitySystem& sys, const Presheaf& input, const ChaseResult& r) {
  Json trace = Json::array();
  for (const auto& st : r.trace)
    trace.push_back({{"step", st.kind == ChaseStep::pushout ? "pushout" : "merge"},
                     {"rule", sys.rules[st.rule].cocone.name},
                     {"element", st.element}});
  return {{"status", r.saturated() ? "saturated" : "budget_exceeded"},
          {"pushouts", r.pushouts},
          {"merges", r.merges},
          {"trace", trace},
          {"presheaf", presheaf_to_json(r.presheaf)},
          {"unit", presheaf_map_to_json(input, r.unit)},
          {"unit_iso", is_presheaf_iso(r.unit, input, r.presheaf)}};
}

FinSetDiagram diagram_from_json(const Json& j) {
  try {
    ShapeRef ref;
    const auto& sh = j.at("shape");
    if (sh.is_string()) {
      ref.name = sh.get<std::string>();
    } else {
      ref.name = sh.at("name").get<std::string>();
      if (sh.contains("args")) ref.args = sh.at("args").get<std::vector<std::size_t>>();
    }
    auto shape = builtin_shape(ref);
    if (!shape) fail(ErrorKind::invalid_argument, "unknown shape '" + ref.name + "'");
    const auto& s = *shape;
    FinSetDiagram d{shape, j.at("sizes").get<std::vector<std::size_t>>(), std::vector<std::vector<Elem>>(s.num_arrows())};
    if (d.sizes.size() != s.num_objects()) fail(ErrorKind::invalid_argument, "expected one size per shape object");
    std::vector<bool> given(s.num_arrows(), false);
    if (j.contains("maps"))
      for (const auto& [name, t] : j.at("maps").items()) {
        auto a = s.find_arrow(name);
        if (!a) fail(ErrorKind::invalid_argument, "unknown shape arrow '" + name + "'");
        d.maps[*a] = t.get<std::vector<Elem>>();
        given[*a] = true;
      }
    for (ArrId a = 0; a < s.num_arrows(); ++a) {
      if (given[a]) continue;
      if (!s.is_identity(a)) fail(ErrorKind::invalid_argument, "missing table for '" + s.arrow(a).name + "'");
      for (Elem e = 0; e < d.sizes[s.src(a)]; ++e) d.maps[a].push_back(e);
    }
    auto rep = check_diagram(d);
    if (!rep.valid()) fail(ErrorKind::invalid_argument, "not a diagram: " + rep.violations.front());
    return d;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::invalid_argument, std::string("malformed diagram JSON: ") + e.what());
  }
}

}  // namespace sketchlab
