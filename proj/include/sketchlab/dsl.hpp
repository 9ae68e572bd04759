#pragma once

#include <map>
#include <string>
#include <vector>

#include "sketchlab/category.hpp"
#include "sketchlab/sketch.hpp"

namespace sketchlab {

struct SourcePos {
  std::size_t line = 0;
  std::size_t col = 0;
};

struct ShapeRef {
  std::string name;
  std::vector<std::size_t> args;

  bool operator==(const ShapeRef&) const = default;
};

/// key -> value, where value is an object name or a path.
struct Mapping {
  std::string key;
  PathExpr value;

  bool operator==(const Mapping&) const = default;
};

struct CategoryBlock {
  std::string name;
  CatPresentation pres;

  bool operator==(const CategoryBlock&) const = default;
};

struct SpecBlock {
  bool cocone = false;
  std::string name;
  ShapeRef shape;
  std::vector<Mapping> diagram;
  std::string tip;
  std::vector<Mapping> legs;

  bool operator==(const SpecBlock&) const = default;
};

struct SketchBlock {
  std::string name;
  std::string on;
  std::vector<SpecBlock> specs;

  bool operator==(const SketchBlock&) const = default;
};

struct CoverDecl {
  std::string object;
  std::vector<std::string> arrows;

  bool operator==(const CoverDecl&) const = default;
};

struct SiteBlock {
  std::string name;
  std::string on;
  std::vector<SpecBlock> cones;
  std::vector<CoverDecl> covers;
  bool trivial_topology = false;

  bool operator==(const SiteBlock&) const = default;
};

struct MorphismBlock {
  std::string name;
  std::string dom;
  std::string cod;
  std::vector<Mapping> objects;
  std::vector<Mapping> arrows;

  bool operator==(const MorphismBlock&) const = default;
};

struct SketchDocument {
  std::vector<CategoryBlock> categories;
  std::vector<SketchBlock> sketches;
  std::vector<SiteBlock> sites;
  std::vector<MorphismBlock> morphisms;

  bool operator==(const SketchDocument&) const = default;
};

/// Throws parse_error with "line:col: message (expected ...)".
SketchDocument parse_sketch_file(std::string_view text);
std::string to_text(const SketchDocument& doc);

struct NamedCategory {
  CatPtr cat;
  std::map<std::string, ArrId, std::less<>> names;
};

struct Workspace {
  std::map<std::string, NamedCategory, std::less<>> categories;
  std::map<std::string, SketchPtr, std::less<>> sketches;
  std::map<std::string, SketchMorphism, std::less<>> morphisms;
};

/// Resolves every block. Names already present in `base` may be referenced
/// and are copied into the result. Throws resolution_error.
Workspace resolve(const SketchDocument& doc, const Workspace* base = nullptr,
                  const SizeBudget& budget = {});

/// Arrow and identity names of an arbitrary category.
std::map<std::string, ArrId, std::less<>> arrow_names(const FinCategory& c);

CatPtr builtin_shape(const ShapeRef& ref);

/// The shipped corpus, parsed and resolved once.
const SketchDocument& corpus_document();
const Workspace& corpus_workspace();

}  // namespace sketchlab
