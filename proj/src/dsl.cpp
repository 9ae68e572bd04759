#include "sketchlab/dsl.hpp"

#include <cctype>
#include <mutex>
#include <set>
#include <sstream>

#include "sketchlab/constructions.hpp"
#include "sketchlab/corpus.hpp"

namespace sketchlab {

namespace {

enum class Tok { name, lbrace, rbrace, lparen, rparen, colon, semi, comma, arrow, equals, end };

const char* tok_text(Tok t) {
  switch (t) {
    case Tok::name: return "name";
    case Tok::lbrace: return "'{'";
    case Tok::rbrace: return "'}'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::colon: return "':'";
    case Tok::semi: return "';'";
    case Tok::comma: return "','";
    case Tok::arrow: return "'->'";
    case Tok::equals: return "'='";
    case Tok::end: return "end of input";
  }
  return "?";
}

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

std::string where(SourcePos p) { return std::to_string(p.line) + ":" + std::to_string(p.col); }

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  std::size_t line = 1, col = 1;
  std::size_t i = 0;
  auto advance = [&](std::size_t n) {
    for (std::size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '#') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    SourcePos pos{line, col};
    if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < src.size() && (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_')) ++j;
      out.push_back({Tok::name, std::string(src.substr(i, j - i)), pos});
      advance(j - i);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '>') {
      out.push_back({Tok::arrow, "->", pos});
      advance(2);
      continue;
    }
    Tok k;
    switch (c) {
      case '{': k = Tok::lbrace; break;
      case '}': k = Tok::rbrace; break;
      case '(': k = Tok::lparen; break;
      case ')': k = Tok::rparen; break;
      case ':': k = Tok::colon; break;
      case ';': k = Tok::semi; break;
      case ',': k = Tok::comma; break;
      case '=': k = Tok::equals; break;
      default:
        fail(ErrorKind::parse_error, where(pos) + ": unexpected character '" + std::string(1, c) + "'");
    }
    out.push_back({k, std::string(1, c), pos});
    advance(1);
  }
  out.push_back({Tok::end, "", {line, col}});
  return out;
}

class Parser {
 public:
  explicit Parser(std::string_view src) : toks_(lex(src)) {}

  SketchDocument document() {
    SketchDocument doc;
    while (peek().kind != Tok::end) {
      const auto& t = peek();
      if (t.kind == Tok::name && t.text == "category") {
        doc.categories.push_back(category());
      } else if (t.kind == Tok::name && t.text == "sketch") {
        doc.sketches.push_back(sketch());
      } else if (t.kind == Tok::name && t.text == "site") {
        doc.sites.push_back(site());
      } else if (t.kind == Tok::name && t.text == "morphism") {
        doc.morphisms.push_back(morphism());
      } else {
        error("'category', 'sketch', 'site' or 'morphism'");
      }
    }
    return doc;
  }

 private:
  const Token& peek(std::size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }

  [[noreturn]] void error(const std::string& expected) const {
    const auto& t = peek();
    std::string got = t.kind == Tok::end ? "end of input" : "'" + t.text + "'";
    fail(ErrorKind::parse_error, where(t.pos) + ": unexpected " + got + " (expected " + expected + ")");
  }

  Token expect(Tok k) {
    if (peek().kind != k) error(tok_text(k));
    return toks_[pos_++];
  }

  void keyword(std::string_view kw) {
    if (peek().kind != Tok::name || peek().text != kw) error("'" + std::string(kw) + "'");
    ++pos_;
  }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    ++pos_;
    return true;
  }

  std::string name() { return expect(Tok::name).text; }

  // A ';' inside a path joins two arrows unless it ends the field, which
  // is the case when it is followed by "name :", "name name", "name {" or '}'.
  bool path_continues() const {
    if (peek().kind != Tok::semi || peek(1).kind != Tok::name) return false;
    Tok after = peek(2).kind;
    return after != Tok::colon && after != Tok::name && after != Tok::lbrace;
  }

  PathExpr path() {
    PathExpr p{name()};
    while (path_continues()) {
      ++pos_;
      p.push_back(name());
    }
    return p;
  }

  template <class F>
  void list(F item) {
    if (peek().kind == Tok::semi) return;
    item();
    while (accept(Tok::comma)) item();
  }

  std::string field() {
    std::string f = name();
    expect(Tok::colon);
    return f;
  }

  CategoryBlock category() {
    keyword("category");
    CategoryBlock b;
    b.name = name();
    expect(Tok::lbrace);
    while (!accept(Tok::rbrace)) {
      std::string f = field();
      if (f == "objects") {
        list([&] { b.pres.objects.push_back(name()); });
      } else if (f == "arrows") {
        list([&] {
          GeneratorDecl g;
          g.name = name();
          expect(Tok::colon);
          g.src = name();
          expect(Tok::arrow);
          g.tgt = name();
          b.pres.generators.push_back(std::move(g));
        });
      } else if (f == "relations") {
        list([&] {
          PathEquation e;
          e.lhs = path();
          expect(Tok::equals);
          e.rhs = path();
          b.pres.relations.push_back(std::move(e));
        });
      } else if (f == "identities") {
        b.pres.explicit_tables = true;
        list([&] {
          std::string o = name();
          expect(Tok::equals);
          b.pres.identities.emplace_back(o, name());
        });
      } else if (f == "compose") {
        b.pres.explicit_tables = true;
        list([&] {
          CompositeDecl c;
          c.first = name();
          expect(Tok::semi);
          c.second = name();
          expect(Tok::equals);
          c.result = name();
          b.pres.composites.push_back(std::move(c));
        });
      } else if (f == "tables") {
        keyword("explicit");
        b.pres.explicit_tables = true;
      } else {
        pos_ -= 2;
        error("'objects', 'arrows', 'relations', 'identities', 'compose' or 'tables'");
      }
      expect(Tok::semi);
    }
    return b;
  }

  ShapeRef shape_ref() {
    ShapeRef r;
    r.name = name();
    if (accept(Tok::lparen)) {
      if (peek().kind != Tok::rparen) {
        do {
          auto t = expect(Tok::name);
          try {
            std::size_t used = 0;
            r.args.push_back(std::stoul(t.text, &used));
            if (used != t.text.size()) throw std::invalid_argument("");
          } catch (const std::exception&) {
            --pos_;
            error("a number");
          }
        } while (accept(Tok::comma));
      }
      expect(Tok::rparen);
    }
    return r;
  }

  std::vector<Mapping> mappings() {
    std::vector<Mapping> out;
    list([&] {
      Mapping m;
      m.key = name();
      expect(Tok::arrow);
      m.value = path();
      out.push_back(std::move(m));
    });
    return out;
  }

  SpecBlock spec() {
    SpecBlock s;
    s.cocone = peek().text == "cocone";
    ++pos_;
    s.name = name();
    expect(Tok::lbrace);
    while (!accept(Tok::rbrace)) {
      std::string f = field();
      if (f == "shape") {
        s.shape = shape_ref();
      } else if (f == "diagram") {
        s.diagram = mappings();
      } else if (f == "tip") {
        s.tip = name();
      } else if (f == "legs") {
        s.legs = mappings();
      } else {
        pos_ -= 2;
        error("'shape', 'diagram', 'tip' or 'legs'");
      }
      expect(Tok::semi);
    }
    return s;
  }

  bool at_spec() const {
    return peek().kind == Tok::name && (peek().text == "cone" || peek().text == "cocone") &&
           peek(1).kind == Tok::name && peek(2).kind == Tok::lbrace;
  }

  SketchBlock sketch() {
    keyword("sketch");
    SketchBlock b;
    b.name = name();
    keyword("on");
    b.on = name();
    expect(Tok::lbrace);
    while (!accept(Tok::rbrace)) {
      if (!at_spec()) error("'cone', 'cocone' or '}'");
      b.specs.push_back(spec());
    }
    return b;
  }

  SiteBlock site() {
    keyword("site");
    SiteBlock b;
    b.name = name();
    keyword("on");
    b.on = name();
    expect(Tok::lbrace);
    while (!accept(Tok::rbrace)) {
      if (at_spec()) {
        if (peek().text == "cocone") error("'cone' (sites specify cones and covers)");
        b.cones.push_back(spec());
      } else if (peek().kind == Tok::name && peek().text == "cover") {
        ++pos_;
        CoverDecl c;
        c.object = name();
        expect(Tok::colon);
        list([&] { c.arrows.push_back(name()); });
        expect(Tok::semi);
        b.covers.push_back(std::move(c));
      } else if (peek().kind == Tok::name && peek().text == "topology") {
        ++pos_;
        expect(Tok::colon);
        keyword("trivial");
        expect(Tok::semi);
        b.trivial_topology = true;
      } else {
        error("'cone', 'cover', 'topology' or '}'");
      }
    }
    return b;
  }

  MorphismBlock morphism() {
    keyword("morphism");
    MorphismBlock b;
    b.name = name();
    expect(Tok::colon);
    b.dom = name();
    expect(Tok::arrow);
    b.cod = name();
    expect(Tok::lbrace);
    while (!accept(Tok::rbrace)) {
      std::string f = field();
      if (f == "objects") {
        b.objects = mappings();
      } else if (f == "arrows") {
        b.arrows = mappings();
      } else {
        pos_ -= 2;
        error("'objects' or 'arrows'");
      }
      expect(Tok::semi);
    }
    return b;
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

std::string join_path(const PathExpr& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ";";
    s += p[i];
  }
  return s;
}

void print_mappings(std::ostream& os, const char* field, const std::vector<Mapping>& ms, const char* indent) {
  os << indent << field << ":";
  for (std::size_t i = 0; i < ms.size(); ++i)
    os << (i ? ", " : " ") << ms[i].key << " -> " << join_path(ms[i].value);
  os << ";\n";
}

void print_spec(std::ostream& os, const SpecBlock& s) {
  os << "  " << (s.cocone ? "cocone " : "cone ") << s.name << " {\n";
  os << "    shape: " << s.shape.name;
  if (!s.shape.args.empty()) {
    os << "(";
    for (std::size_t i = 0; i < s.shape.args.size(); ++i) os << (i ? ", " : "") << s.shape.args[i];
    os << ")";
  }
  os << ";\n";
  print_mappings(os, "diagram", s.diagram, "    ");
  os << "    tip: " << s.tip << ";\n";
  print_mappings(os, "legs", s.legs, "    ");
  os << "  }\n";
}

}  // namespace

SketchDocument parse_sketch_file(std::string_view text) { return Parser(text).document(); }

std::string to_text(const SketchDocument& doc) {
  std::ostringstream os;
  for (const auto& c : doc.categories) {
    const auto& p = c.pres;
    os << "category " << c.name << " {\n  objects:";
    for (std::size_t i = 0; i < p.objects.size(); ++i) os << (i ? ", " : " ") << p.objects[i];
    os << ";\n  arrows:";
    for (std::size_t i = 0; i < p.generators.size(); ++i)
      os << (i ? ", " : " ") << p.generators[i].name << ": " << p.generators[i].src << " -> "
         << p.generators[i].tgt;
    os << ";\n";
    if (!p.relations.empty()) {
      os << "  relations:";
      for (std::size_t i = 0; i < p.relations.size(); ++i)
        os << (i ? ", " : " ") << join_path(p.relations[i].lhs) << " = " << join_path(p.relations[i].rhs);
      os << ";\n";
    }
    if (p.explicit_tables) os << "  tables: explicit;\n";
    if (!p.identities.empty()) {
      os << "  identities:";
      for (std::size_t i = 0; i < p.identities.size(); ++i)
        os << (i ? ", " : " ") << p.identities[i].first << " = " << p.identities[i].second;
      os << ";\n";
    }
    if (!p.composites.empty()) {
      os << "  compose:";
      for (std::size_t i = 0; i < p.composites.size(); ++i)
        os << (i ? ", " : " ") << p.composites[i].first << ";" << p.composites[i].second << " = "
           << p.composites[i].result;
      os << ";\n";
    }
    os << "}\n\n";
  }
  for (const auto& s : doc.sketches) {
    os << "sketch " << s.name << " on " << s.on << " {\n";
    for (const auto& sp : s.specs) print_spec(os, sp);
    os << "}\n\n";
  }
  for (const auto& s : doc.sites) {
    os << "site " << s.name << " on " << s.on << " {\n";
    for (const auto& sp : s.cones) print_spec(os, sp);
    for (const auto& c : s.covers) {
      os << "  cover " << c.object << ":";
      for (std::size_t i = 0; i < c.arrows.size(); ++i) os << (i ? ", " : " ") << c.arrows[i];
      os << ";\n";
    }
    if (s.trivial_topology) os << "  topology: trivial;\n";
    os << "}\n\n";
  }
  for (const auto& m : doc.morphisms) {
    os << "morphism " << m.name << " : " << m.dom << " -> " << m.cod << " {\n";
    print_mappings(os, "objects", m.objects, "  ");
    print_mappings(os, "arrows", m.arrows, "  ");
    os << "}\n\n";
  }
  return os.str();
}

// ---------------------------------------------------------------------------
// Resolution

std::map<std::string, ArrId, std::less<>> arrow_names(const FinCategory& c) {
  std::map<std::string, ArrId, std::less<>> names;
  for (ArrId a = 0; a < c.num_arrows(); ++a) names.emplace(c.arrow(a).name, a);
  for (ObjId o = 0; o < c.num_objects(); ++o) names.emplace("id_" + c.object_name(o), c.id(o));
  return names;
}

CatPtr builtin_shape(const ShapeRef& ref) {
  auto arity = [&](std::size_t n) {
    if (ref.args.size() != n)
      fail(ErrorKind::resolution_error, "shape '" + ref.name + "' takes " + std::to_string(n) + " argument(s)");
  };
  if (ref.name == "empty") return arity(0), make_cat(shapes::empty());
  if (ref.name == "one") return arity(0), make_cat(shapes::one());
  if (ref.name == "discrete") return arity(1), make_cat(shapes::discrete(ref.args[0]));
  if (ref.name == "codiscrete") return arity(1), make_cat(shapes::codiscrete(ref.args[0]));
  if (ref.name == "walking_arrow") return arity(0), make_cat(shapes::walking_arrow());
  if (ref.name == "parallel_pair") return arity(0), make_cat(shapes::parallel_pair());
  if (ref.name == "span") return arity(0), make_cat(shapes::span());
  if (ref.name == "cospan") return arity(0), make_cat(shapes::cospan());
  if (ref.name == "square") return arity(0), make_cat(shapes::square());
  return nullptr;
}

namespace {

class Resolver {
 public:
  Resolver(const SketchDocument& doc, const Workspace* base, const SizeBudget& budget)
      : doc_(doc), budget_(budget) {
    if (base) ws_ = *base;
  }

  Workspace run() {
    std::set<std::string> declared;
    auto declare = [&](const std::string& n) {
      if (!declared.insert(n).second || ws_.categories.count(n) || ws_.sketches.count(n) || ws_.morphisms.count(n))
        fail(ErrorKind::resolution_error, "name '" + n + "' is declared twice");
    };
    for (const auto& c : doc_.categories) declare(c.name);
    for (const auto& s : doc_.sketches) declare(s.name);
    for (const auto& s : doc_.sites) declare(s.name);
    for (const auto& m : doc_.morphisms) declare(m.name);

    for (const auto& c : doc_.categories) {
      CompiledCategory cc;
      try {
        cc = compile_presentation_detailed(c.pres, budget_);
      } catch (const SketchError& e) {
        fail(e.kind(), "category " + c.name + ": " + e.what());
      }
      ws_.categories.emplace(c.name, NamedCategory{make_cat(std::move(cc.category)), std::move(cc.names)});
    }
    for (const auto& s : doc_.sketches) {
      const auto& nc = category(s.on, "sketch " + s.name);
      Sketch sk = bare_sketch(s.name, nc.cat);
      for (const auto& sp : s.specs)
        sk.family(sp.cocone ? Variance::cocone : Variance::cone).specs.push_back(spec(nc, sp, s.name));
      ws_.sketches.emplace(s.name, make_sketch(std::move(sk)));
    }
    for (const auto& s : doc_.sites) {
      const auto& nc = category(s.on, "site " + s.name);
      std::vector<Spec> cones;
      for (const auto& sp : s.cones) cones.push_back(spec(nc, sp, s.name));
      std::vector<std::pair<ObjId, std::vector<ArrId>>> covers;
      if (s.trivial_topology)
        for (ObjId o = 0; o < nc.cat->num_objects(); ++o) covers.push_back({o, {nc.cat->id(o)}});
      for (const auto& c : s.covers) {
        std::pair<ObjId, std::vector<ArrId>> cov{object(nc, c.object, "site " + s.name), {}};
        for (const auto& a : c.arrows) {
          auto it = nc.names.find(a);
          if (it == nc.names.end())
            fail(ErrorKind::resolution_error, "site " + s.name + ": unknown arrow '" + a + "'");
          cov.second.push_back(it->second);
        }
        covers.push_back(std::move(cov));
      }
      ws_.sketches.emplace(s.name, make_sketch(site_to_sketch(s.name, nc.cat, cones, covers, budget_)));
    }
    for (const auto& m : doc_.morphisms) ws_.morphisms.emplace(m.name, morphism(m));
    return std::move(ws_);
  }

 private:
  const NamedCategory& category(const std::string& n, const std::string& ctx) {
    auto it = ws_.categories.find(n);
    if (it == ws_.categories.end())
      fail(ErrorKind::resolution_error, ctx + ": unknown category '" + n + "'");
    return it->second;
  }

  ObjId object(const NamedCategory& nc, const std::string& n, const std::string& ctx) {
    auto o = nc.cat->find_object(n);
    if (!o) fail(ErrorKind::resolution_error, ctx + ": unknown object '" + n + "'");
    return *o;
  }

  ArrId path(const NamedCategory& nc, const PathExpr& p, std::optional<ObjId> start, const std::string& ctx) {
    for (const auto& tok : p)
      if (!nc.names.count(tok) && !(tok.rfind("id_", 0) == 0 && nc.cat->find_object(tok.substr(3))))
        fail(ErrorKind::resolution_error, ctx + ": unknown arrow '" + tok + "'");
    ArrId a = resolve_path(*nc.cat, nc.names, p, start);
    if (a == kNone) fail(ErrorKind::resolution_error, ctx + ": path '" + join(p) + "' does not compose");
    return a;
  }

  static std::string join(const PathExpr& p) { return join_path(p); }

  // Object and arrow tables from mappings; unlisted composite arrows
  // ("a;b") are derived from their parts.
  FunctorData tables(const CatPtr& dom, const NamedCategory& cod, const std::vector<Mapping>& objs,
                     const std::vector<Mapping>& arrs, const std::string& ctx) {
    const auto& d = *dom;
    FunctorData f{dom, cod.cat, std::vector<ObjId>(d.num_objects(), kNone), std::vector<ArrId>(d.num_arrows(), kNone)};
    for (const auto& m : objs) {
      auto o = d.find_object(m.key);
      if (!o) fail(ErrorKind::resolution_error, ctx + ": unknown object '" + m.key + "'");
      if (m.value.size() != 1) fail(ErrorKind::resolution_error, ctx + ": object image must be a name");
      f.obj_map[*o] = object(cod, m.value[0], ctx);
    }
    for (ObjId o = 0; o < d.num_objects(); ++o)
      if (f.obj_map[o] == kNone)
        fail(ErrorKind::resolution_error, ctx + ": object '" + d.object_name(o) + "' has no image");
    auto dnames = arrow_names(d);
    for (const auto& m : arrs) {
      auto it = dnames.find(m.key);
      if (it == dnames.end()) fail(ErrorKind::resolution_error, ctx + ": unknown arrow '" + m.key + "'");
      f.arr_map[it->second] = path(cod, m.value, f.obj_map[d.src(it->second)], ctx);
    }
    for (ArrId a = 0; a < d.num_arrows(); ++a) {
      if (f.arr_map[a] != kNone) continue;
      if (d.is_identity(a)) {
        f.arr_map[a] = cod.cat->id(f.obj_map[d.src(a)]);
        continue;
      }
      const auto& nm = d.arrow(a).name;
      if (nm.find(';') == std::string::npos)
        fail(ErrorKind::resolution_error, ctx + ": arrow '" + nm + "' has no image");
      ArrId cur = cod.cat->id(f.obj_map[d.src(a)]);
      std::size_t start = 0;
      while (start <= nm.size()) {
        auto end = nm.find(';', start);
        if (end == std::string::npos) end = nm.size();
        auto part = dnames.find(std::string_view(nm).substr(start, end - start));
        if (part == dnames.end() || f.arr_map[part->second] == kNone)
          fail(ErrorKind::resolution_error, ctx + ": arrow '" + nm + "' has no image");
        cur = cod.cat->then(cur, f.arr_map[part->second]);
        start = end + 1;
      }
      f.arr_map[a] = cur;
    }
    auto rep = check_functor(f);
    if (!rep.valid()) fail(ErrorKind::resolution_error, ctx + ": not a functor: " + rep.violations.front());
    return f;
  }

  Spec spec(const NamedCategory& carrier, const SpecBlock& b, const std::string& owner) {
    std::string ctx = owner + ", " + (b.cocone ? "cocone " : "cone ") + b.name;
    CatPtr shape = builtin_shape(b.shape);
    if (!shape) shape = category(b.shape.name, ctx).cat;
    std::vector<Mapping> objs, arrs;
    for (const auto& m : b.diagram) (shape->find_object(m.key) ? objs : arrs).push_back(m);
    Spec s;
    s.name = b.name;
    s.shape = shape;
    s.diagram = tables(shape, carrier, objs, arrs, ctx);
    s.tip = object(carrier, b.tip, ctx);
    s.legs.assign(shape->num_objects(), kNone);
    for (const auto& m : b.legs) {
      auto o = shape->find_object(m.key);
      if (!o) fail(ErrorKind::resolution_error, ctx + ": unknown shape object '" + m.key + "'");
      s.legs[*o] = path(carrier, m.value, std::nullopt, ctx);
    }
    for (ObjId o = 0; o < shape->num_objects(); ++o)
      if (s.legs[o] == kNone)
        fail(ErrorKind::resolution_error, ctx + ": no leg at '" + shape->object_name(o) + "'");
    auto rep = check_spec(*carrier.cat, s, b.cocone ? Variance::cocone : Variance::cone);
    if (!rep.valid()) fail(ErrorKind::not_a_cone, ctx + ": " + rep.violations.front());
    return s;
  }

  SketchMorphism morphism(const MorphismBlock& m) {
    std::string ctx = "morphism " + m.name;
    auto sketch = [&](const std::string& n) {
      auto it = ws_.sketches.find(n);
      if (it == ws_.sketches.end()) fail(ErrorKind::resolution_error, ctx + ": unknown sketch '" + n + "'");
      return it->second;
    };
    auto dom = sketch(m.dom), cod = sketch(m.cod);
    NamedCategory target{cod->carrier, arrow_names(*cod->carrier)};
    for (const auto& [name, nc] : ws_.categories)
      if (nc.cat == cod->carrier) target.names = nc.names;
    return {dom, cod, tables(dom->carrier, target, m.objects, m.arrows, ctx)};
  }

  const SketchDocument& doc_;
  const SizeBudget& budget_;
  Workspace ws_;
};

}  // namespace

Workspace resolve(const SketchDocument& doc, const Workspace* base, const SizeBudget& budget) {
  return Resolver(doc, base, budget).run();
}

const SketchDocument& corpus_document() {
  static const SketchDocument doc = [] {
    SketchDocument all;
    for (const auto& f : corpus_files()) {
      SketchDocument d;
      try {
        d = parse_sketch_file(f.text);
      } catch (const SketchError& e) {
        fail(e.kind(), "corpus file " + f.name + ": " + e.what());
      }
      for (auto& b : d.categories) all.categories.push_back(std::move(b));
      for (auto& b : d.sketches) all.sketches.push_back(std::move(b));
      for (auto& b : d.sites) all.sites.push_back(std::move(b));
      for (auto& b : d.morphisms) all.morphisms.push_back(std::move(b));
    }
    return all;
  }();
  return doc;
}

const Workspace& corpus_workspace() {
  static const Workspace ws = resolve(corpus_document());
  return ws;
}

}  // namespace sketchlab
