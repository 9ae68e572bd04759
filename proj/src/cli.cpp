#include "sketchlab/cli.hpp"

#include <cstdlib>
#include <fstream>
#include <map>
#include <sstream>

#include <CLI11.hpp>

#include "sketchlab/classifier.hpp"
#include "sketchlab/constructions.hpp"
#include "sketchlab/corpus.hpp"
#include "sketchlab/dsl.hpp"
#include "sketchlab/json.hpp"
#include "sketchlab/models.hpp"

namespace sketchlab {

std::size_t default_budget() {
  if (const char* env = std::getenv("SKETCHLAB_BUDGET")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end && *end == '\0' && end != env) return static_cast<std::size_t>(v);
  }
  return 1000;
}

namespace {

int exit_code(ErrorKind k) {
  switch (k) {
    case ErrorKind::parse_error:
    case ErrorKind::resolution_error:
    case ErrorKind::invalid_argument:
    case ErrorKind::cyclic_presentation:
    case ErrorKind::inconsistent_tables:
    case ErrorKind::relation_type_mismatch:
      return 3;
    case ErrorKind::size_budget_exceeded:
      return 2;
    default:
      return 1;
  }
}

int verdict_exit(VerdictKind k) {
  switch (k) {
    case VerdictKind::verified: return 0;
    case VerdictKind::refuted: return 1;
    case VerdictKind::unknown: return 2;
  }
  return 1;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::invalid_argument, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// `corpus:NAME` or `path.sketch:NAME`; user files may refer to the corpus.
class References {
 public:
  const Workspace& file(const std::string& path) {
    auto it = files_.find(path);
    if (it == files_.end())
      it = files_.emplace(path, resolve(parse_sketch_file(read_file(path)), &corpus_workspace())).first;
    return it->second;
  }

  std::pair<const Workspace*, std::string> split(const std::string& ref) {
    auto colon = ref.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == ref.size())
      fail(ErrorKind::invalid_argument, "expected corpus:NAME or FILE:NAME, got '" + ref + "'");
    std::string where = ref.substr(0, colon), name = ref.substr(colon + 1);
    if (where == "corpus") return {&corpus_workspace(), name};
    return {&file(where), name};
  }

  SketchPtr sketch(const std::string& ref) {
    auto [ws, name] = split(ref);
    auto it = ws->sketches.find(name);
    if (it == ws->sketches.end()) fail(ErrorKind::resolution_error, "no sketch named '" + name + "'");
    return it->second;
  }

  const SketchMorphism& morphism(const std::string& ref) {
    auto [ws, name] = split(ref);
    auto it = ws->morphisms.find(name);
    if (it == ws->morphisms.end()) fail(ErrorKind::resolution_error, "no morphism named '" + name + "'");
    return it->second;
  }

 private:
  std::map<std::string, Workspace> files_;
};

Json json_argument(const std::string& arg) {
  std::string text = !arg.empty() && arg[0] == '@' ? read_file(arg.substr(1)) : arg;
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::parse_error, std::string("malformed JSON argument: ") + e.what());
  }
}

ShapeRef parse_shape(const std::string& text) {
  ShapeRef ref;
  auto open = text.find('(');
  ref.name = text.substr(0, open);
  if (open != std::string::npos) {
    auto close = text.find(')', open);
    if (close == std::string::npos) fail(ErrorKind::invalid_argument, "unbalanced shape '" + text + "'");
    std::stringstream ss(text.substr(open + 1, close - open - 1));
    std::string part;
    while (std::getline(ss, part, ','))
      if (!part.empty()) ref.args.push_back(std::stoul(part));
  }
  return ref;
}

Json sketch_summary(const Sketch& s) {
  Json j{{"name", s.name},
         {"objects", s.carrier->num_objects()},
         {"arrows", s.carrier->num_arrows()}};
  for (Variance v : {Variance::cone, Variance::cocone}) {
    const auto& f = s.family(v);
    const char* key = v == Variance::cone ? "cones" : "cocones";
    j[key] = f.enumerable() ? Json(enumerate_family(s, v).size()) : Json(family_kind_name(f.kind));
  }
  if (s.cones.enumerable() && s.cocones.enumerable()) {
    auto fl = classify_sketch(s);
    j["flags"] = {{"left_normal", fl.left_normal}, {"right_normal", fl.right_normal}, {"normal", fl.normal},
                  {"limit_sketch", fl.limit_sketch}, {"colimit_sketch", fl.colimit_sketch}};
  }
  return j;
}

std::pair<int, Json> validate_workspace(const Workspace& ws) {
  Json sketches = Json::array(), morphs = Json::array();
  int code = 0;
  for (const auto& [name, s] : ws.sketches) sketches.push_back(sketch_summary(*s));
  for (const auto& [name, m] : ws.morphisms) {
    auto rep = check_sketch_morphism(m);
    if (!rep.valid()) code = 1;
    Json r = report_to_json(rep);
    r["name"] = name;
    morphs.push_back(r);
  }
  Json cats = Json::array();
  for (const auto& [name, c] : ws.categories) cats.push_back(name);
  return {code, {{"categories", cats}, {"sketches", sketches}, {"morphisms", morphs}}};
}

Json construction_json(const Construction& c) {
  Json maps = Json::array();
  for (const auto& f : c.maps) maps.push_back(functor_to_json(f));
  return {{"sketch", sketch_to_json(*c.sketch)}, {"maps", maps}};
}

Json iso_json(const IsoWitness& w) {
  return {{"iso", w.iso},
          {"objects", w.left ? w.left->num_objects() : 0},
          {"arrows", w.left ? w.left->num_arrows() : 0}};
}

}  // namespace

int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Finite sketches: models, constructions and classifiers", "sketchlab"};
  app.require_subcommand(1);
  std::vector<std::string> refs;
  std::size_t bound = 2, workers = 1, budget = default_budget();
  std::size_t src_bound = 1, tgt_bound = 2, model_bound = 2, fiber_bound = 1;
  std::string presheaf, theta, shape = "walking_arrow", diagram, what;

  auto* validate = app.add_subcommand("validate", "Parse, resolve and check a file, the corpus or one sketch");
  validate->add_option("target", what, "FILE.sketch, corpus, or a sketch reference")->required();
  auto* models = app.add_subcommand("models", "Enumerate models in FinSet up to a fiber bound");
  models->add_option("sketch", refs)->required()->expected(1);
  models->add_option("--bound", bound, "Largest fiber");
  models->add_option("--workers", workers, "Worker threads");
  auto* check_map = app.add_subcommand("check-map", "Check that a morphism preserves the specified structure");
  check_map->add_option("morphism", refs)->required()->expected(1);
  auto* limit = app.add_subcommand("limit", "Limit of a finite diagram of sets");
  limit->add_option("diagram", diagram, "JSON, or @FILE")->required();
  auto* colimit = app.add_subcommand("colimit", "Colimit of a finite diagram of sets");
  colimit->add_option("diagram", diagram, "JSON, or @FILE")->required();
  auto* product = app.add_subcommand("product", "Pseudo-product of sketches");
  product->add_option("sketches", refs);
  auto* coproduct = app.add_subcommand("coproduct", "Pseudo-coproduct of sketches");
  coproduct->add_option("sketches", refs);
  auto* pullback = app.add_subcommand("pullback", "Pseudo-pullback of two morphisms with a common codomain");
  pullback->add_option("morphisms", refs)->required()->expected(2);
  auto* power = app.add_subcommand("power", "Pseudo-power by a builtin shape");
  power->add_option("sketch", refs)->required()->expected(1);
  power->add_option("--shape", shape, "Builtin shape, e.g. discrete(2)");
  auto* tensor = app.add_subcommand("tensor", "Tensor product of two sketches");
  tensor->add_option("sketches", refs)->required()->expected(2);
  auto* exp = app.add_subcommand("exp", "Exponential of two sketches");
  exp->add_option("sketches", refs)->required()->expected(2);
  auto* dual = app.add_subcommand("dual", "Dual sketch");
  dual->add_option("sketch", refs)->required()->expected(1);
  auto* closed = app.add_subcommand("closedness", "Check the currying isomorphism for D, S, T");
  closed->add_option("sketches", refs)->required()->expected(3);
  auto* split = app.add_subcommand("split-idempotent", "Split an idempotent endomorphism");
  split->add_option("morphism", refs)->required()->expected(1);
  split->add_option("--theta", theta, "Components obj=arrow,... of the iso e => id")->required();
  auto* morita = app.add_subcommand("morita", "Bounded Morita equivalence probe");
  morita->add_option("morphism", refs)->required()->expected(1);
  morita->add_option("--src-bound", src_bound);
  morita->add_option("--tgt-bound", tgt_bound);
  auto* chase = app.add_subcommand("chase", "Reflect a presheaf onto the orthogonal class");
  chase->add_option("sketch", refs)->required()->expected(1);
  chase->add_option("--presheaf", presheaf, "rep:OBJ, JSON, or @FILE")->required();
  chase->add_option("--budget", budget);
  auto* normalize = app.add_subcommand("normalize", "Left normalization");
  normalize->add_option("sketch", refs)->required()->expected(1);
  normalize->add_option("--budget", budget);
  auto* rounded = app.add_subcommand("rounded", "Roundedness check");
  rounded->add_option("sketch", refs)->required()->expected(1);
  rounded->add_option("--budget", budget);
  auto* dense = app.add_subcommand("dense", "Density of a morphism");
  dense->add_option("morphism", refs)->required()->expected(1);
  auto* diac = app.add_subcommand("diaconescu", "Bounded check of the model extension theorem");
  diac->add_option("sketch", refs)->required()->expected(1);
  diac->add_option("--model-bound", model_bound);
  diac->add_option("--fiber-bound", fiber_bound);
  diac->add_option("--budget", budget);
  auto* corpus = app.add_subcommand("corpus", "Shipped corpus");
  std::string corpus_action;
  corpus->add_option("action", corpus_action)->required()->check(CLI::IsMember({"list"}));

  std::vector<std::string> argv_store{"sketchlab"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return 3;
  }

  References r;
  Json body;
  int code = 0;
  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (validate->parsed()) {
      if (what == "corpus") {
        std::tie(code, body) = validate_workspace(corpus_workspace());
      } else if (what.find(':') == std::string::npos) {
        std::tie(code, body) = validate_workspace(r.file(what));
      } else {
        body = {{"sketches", Json::array({sketch_summary(*r.sketch(what))})}};
      }
    } else if (models->parsed()) {
      auto s = r.sketch(refs[0]);
      auto ms = enumerate_model_functors(*s, bound, workers);
      Json list = Json::array();
      for (const auto& m : ms) list.push_back(model_to_json(m));
      body = {{"sketch", s->name}, {"bound", bound}, {"count", ms.size()}, {"models", list}};
    } else if (check_map->parsed()) {
      const auto& m = r.morphism(refs[0]);
      auto rep = check_sketch_morphism(m);
      body = report_to_json(rep);
      body["dom"] = m.dom->name;
      body["cod"] = m.cod->name;
      code = rep.valid() ? 0 : 1;
    } else if (limit->parsed()) {
      auto d = diagram_from_json(json_argument(diagram));
      auto lim = limit_finset(d);
      Json proj = Json::object();
      for (ObjId o = 0; o < d.shape->num_objects(); ++o) proj[d.shape->object_name(o)] = lim.projections[o].table;
      body = {{"apex", lim.apex}, {"tuples", lim.tuples}, {"projections", proj}};
    } else if (colimit->parsed()) {
      auto d = diagram_from_json(json_argument(diagram));
      auto col = colimit_finset(d);
      Json inj = Json::object();
      for (ObjId o = 0; o < d.shape->num_objects(); ++o) inj[d.shape->object_name(o)] = col.injections[o].table;
      body = {{"apex", col.apex}, {"injections", inj}};
    } else if (product->parsed() || coproduct->parsed()) {
      std::vector<SketchPtr> parts;
      for (const auto& ref : refs) parts.push_back(r.sketch(ref));
      body = construction_json(product->parsed() ? product_sketch(parts) : coproduct_sketch(parts));
    } else if (pullback->parsed()) {
      auto pb = pseudo_pullback_sketch(r.morphism(refs[0]), r.morphism(refs[1]));
      body = {{"sketch", sketch_to_json(*pb.sketch)},
              {"left", functor_to_json(pb.left)},
              {"right", functor_to_json(pb.right)}};
    } else if (power->parsed()) {
      auto sh = builtin_shape(parse_shape(shape));
      if (!sh) fail(ErrorKind::invalid_argument, "unknown shape '" + shape + "'");
      auto pw = power_sketch(r.sketch(refs[0]), sh);
      Json maps = Json::array();
      for (const auto& f : pw.maps) maps.push_back(functor_to_json(f));
      body = {{"sketch", sketch_to_json(*pw.sketch)}, {"maps", maps}};
    } else if (tensor->parsed()) {
      body = {{"sketch", sketch_to_json(tensor_sketch(r.sketch(refs[0]), r.sketch(refs[1])))}};
    } else if (exp->parsed()) {
      auto e = exponential_sketch(r.sketch(refs[0]), r.sketch(refs[1]));
      Json homs = Json::array();
      for (const auto& f : e.homs.functors) homs.push_back(functor_to_json(f));
      body = {{"sketch", sketch_to_json(*e.sketch)}, {"morphisms", homs}};
    } else if (dual->parsed()) {
      body = {{"sketch", sketch_to_json(dual_sketch(*r.sketch(refs[0])))}};
    } else if (closed->parsed()) {
      try {
        body = iso_json(verify_closedness(r.sketch(refs[0]), r.sketch(refs[1]), r.sketch(refs[2])));
      } catch (const SketchError& e) {
        if (e.kind() != ErrorKind::iso_failure) throw;
        body = {{"iso", false}, {"failure", e.what()}};
        code = 1;
      }
    } else if (split->parsed()) {
      const auto& e = r.morphism(refs[0]);
      const auto& c = *e.functor.dom;
      auto names = arrow_names(c);
      std::vector<ArrId> comps(c.num_objects(), kNone);
      std::stringstream ss(theta);
      std::string item;
      while (std::getline(ss, item, ',')) {
        auto eq = item.find('=');
        if (eq == std::string::npos) fail(ErrorKind::invalid_argument, "expected obj=arrow in --theta");
        auto o = c.find_object(item.substr(0, eq));
        auto a = names.find(item.substr(eq + 1));
        if (!o || a == names.end()) fail(ErrorKind::invalid_argument, "cannot resolve '" + item + "'");
        comps[*o] = a->second;
      }
      for (ObjId o = 0; o < c.num_objects(); ++o)
        if (comps[o] == kNone) fail(ErrorKind::invalid_argument, "no component for " + c.object_name(o));
      auto sp = split_idempotent(e, {e.functor, identity_functor(e.functor.dom), comps});
      body = {{"sketch", sketch_to_json(*sp.sketch)},
              {"retraction", functor_to_json(sp.retraction.functor)},
              {"section", functor_to_json(sp.section.functor)}};
    } else if (morita->parsed()) {
      auto v = morita_probe(r.morphism(refs[0]), src_bound, tgt_bound);
      body = {{"verdict", v.refuted ? "refuted" : "equivalent_up_to_bounds"},
              {"fully_faithful", v.fully_faithful},
              {"essentially_surjective", v.essentially_surjective},
              {"cod_models", v.cod_models},
              {"dom_models", v.dom_models},
              {"src_bound", src_bound},
              {"tgt_bound", tgt_bound}};
      if (v.refuted) body["witness"] = {{"reason", v.reason}, {"models", v.witness}};
      code = v.refuted ? 1 : 0;
    } else if (chase->parsed()) {
      auto s = r.sketch(refs[0]);
      Presheaf p;
      if (presheaf.rfind("rep:", 0) == 0) {
        auto o = s->carrier->find_object(presheaf.substr(4));
        if (!o) fail(ErrorKind::invalid_argument, "unknown object '" + presheaf.substr(4) + "'");
        p = representable(s->carrier, *o);
      } else {
        p = presheaf_from_json(s->carrier, json_argument(presheaf));
      }
      auto sys = rho_system(*s);
      auto res = chase_reflect(sys, p, budget);
      body = chase_to_json(sys, p, res);
      body["budget"] = budget;
      code = res.saturated() ? 0 : 2;
    } else if (normalize->parsed()) {
      auto n = left_normalize(r.sketch(refs[0]), budget);
      body = verdict_to_json(n.verdict);
      if (n.sketch) {
        body["sketch"] = sketch_to_json(*n.sketch);
        body["unit"] = functor_to_json(n.unit->functor);
        body["unit_iso"] = is_isomorphism(n.unit->functor);
      }
      body["budget"] = budget;
      code = verdict_exit(n.verdict.kind);
    } else if (rounded->parsed()) {
      auto v = roundedness_check(*r.sketch(refs[0]), budget);
      body = verdict_to_json(v);
      body["budget"] = budget;
      code = verdict_exit(v.kind);
    } else if (dense->parsed()) {
      auto v = density_check(r.morphism(refs[0]).functor);
      body = verdict_to_json(v);
      code = verdict_exit(v.kind);
    } else if (diac->parsed()) {
      auto rep = diaconescu_probe(r.sketch(refs[0]), model_bound, fiber_bound, budget);
      body = verdict_to_json(rep.verdict);
      body["models"] = rep.models;
      body["checked"] = {{"a", rep.checked_a}, {"b", rep.checked_b}, {"c", rep.checked_c}, {"d", rep.checked_d}};
      body["unknown"] = {{"c", rep.unknown_c}, {"d", rep.unknown_d}};
      body["bounds"] = {{"model", model_bound}, {"fiber", fiber_bound}, {"budget", budget}};
      code = verdict_exit(rep.verdict.kind);
    } else if (corpus->parsed()) {
      Json files = Json::array(), sketches = Json::array(), morphs = Json::array();
      for (const auto& f : corpus_files()) files.push_back(f.name);
      for (const auto& [name, s] : corpus_workspace().sketches) sketches.push_back(name);
      for (const auto& [name, m] : corpus_workspace().morphisms) morphs.push_back(name);
      body = {{"files", files}, {"sketches", sketches}, {"morphisms", morphs}};
    }
  } catch (const SketchError& e) {
    err << "error: " << error_kind_name(e.kind()) << ": " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const std::logic_error& e) {
    err << "usage error: " << e.what() << "\n";
    return 3;
  }
  Json doc{{"format_version", kFormatVersion}, {"command", command}, {"result", body}};
  out << doc.dump(2) << "\n";
  return code;
}

}  // namespace sketchlab
