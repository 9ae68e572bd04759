#pragma once

#include <cstddef>
#include <vector>

#include "sketchlab/category.hpp"

namespace sketchlab {

struct FinSetMap {
  std::size_t dom = 0;
  std::size_t cod = 0;
  std::vector<Elem> table;

  bool operator==(const FinSetMap&) const = default;
};

/// A covariant functor shape -> FinSet: one size per object and one table
/// per arrow, table[a] : sizes[src a] -> sizes[tgt a].
struct FinSetDiagram {
  CatPtr shape;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<Elem>> maps;
};

ValidityReport check_diagram(const FinSetDiagram& d);

/// Apex elements are the matching families, in lexicographic order.
struct LimitResult {
  std::size_t apex = 0;
  std::vector<std::vector<Elem>> tuples;
  std::vector<FinSetMap> projections;
};

struct ColimitResult {
  std::size_t apex = 0;
  std::vector<FinSetMap> injections;
};

LimitResult limit_finset(const FinSetDiagram& d, const SizeBudget& budget = {});
ColimitResult colimit_finset(const FinSetDiagram& d, const SizeBudget& budget = {});

/// legs[o] : apex -> sizes[o]. Throws not_a_cone when a leg is mistyped or
/// a triangle fails to commute.
bool is_limit_cone(const FinSetDiagram& d, std::size_t apex, const std::vector<std::vector<Elem>>& legs,
                   const SizeBudget& budget = {});
/// legs[o] : sizes[o] -> apex.
bool is_colimit_cocone(const FinSetDiagram& d, std::size_t apex,
                       const std::vector<std::vector<Elem>>& legs, const SizeBudget& budget = {});

/// The skeletal category of finite sets {0..k-1} for k <= n, with every
/// function as an arrow. Arrows are ordered by (source, target, table).
/// Shared instances are cached per n.
CatPtr finset_category(std::size_t n);

/// Arrow of finset_category(n) carrying the given table.
ArrId finset_arrow(const FinCategory& fs, std::size_t dom, std::size_t cod, const std::vector<Elem>& table);

/// Reads a functor into a FinSet carrier (or its opposite, in which case
/// the diagram is over the opposite of the functor's domain) as a diagram.
FinSetDiagram diagram_of(const FunctorData& f);

struct LanResult {
  FinSetDiagram diagram;
  /// unit[a] : m(a) -> lan(F a), sending e to the class of (a, id, e).
  std::vector<std::vector<Elem>> unit;
};

/// Pointwise left Kan extension along f, by colimits over the comma
/// categories f/b.
LanResult lan_finset(const FunctorData& f, const FinSetDiagram& m, const SizeBudget& budget = {});

// ---------------------------------------------------------------------------
// Presheaves

/// A contravariant functor base -> FinSet: restriction[a] maps the fiber
/// over tgt(a) to the fiber over src(a).
struct Presheaf {
  CatPtr base;
  std::vector<std::size_t> fibers;
  std::vector<std::vector<Elem>> restriction;

  bool operator==(const Presheaf& other) const {
    return fibers == other.fibers && restriction == other.restriction && same_category(base, other.base);
  }
};

struct PresheafMap {
  std::vector<std::vector<Elem>> components;

  bool operator==(const PresheafMap&) const = default;
};

ValidityReport check_presheaf(const Presheaf& p);
ValidityReport check_presheaf_map(const Presheaf& p, const Presheaf& q, const PresheafMap& m);
PresheafMap identity_presheaf_map(const Presheaf& p);
PresheafMap compose_presheaf_maps(const PresheafMap& g, const PresheafMap& f);
bool is_presheaf_iso(const PresheafMap& m, const Presheaf& p, const Presheaf& q);
Presheaf empty_presheaf(const CatPtr& base);

/// The presheaf as a covariant diagram over `op`, which must be the
/// opposite of p.base (arrow ids agree).
FinSetDiagram presheaf_as_diagram(const Presheaf& p, const CatPtr& op);
Presheaf diagram_as_presheaf(const FinSetDiagram& d, const CatPtr& base);

/// The colimit of m weighted by p: the coend of p(c) x m(c), computed by
/// union-find over triples (c, x, y).
struct Extension {
  std::size_t size = 0;
  std::vector<std::size_t> offset;
  std::vector<std::size_t> width;
  std::vector<Elem> cls;

  Elem at(ObjId c, Elem x, Elem y) const { return cls[offset[c] + x * width[c] + y]; }
};

Extension evaluate_extension(const Presheaf& p, const FinSetDiagram& m, const SizeBudget& budget = {});
/// Action of the extension on a presheaf map alpha : p -> q.
std::vector<Elem> extension_on_map(const Extension& ep, const Extension& eq, const PresheafMap& alpha,
                                   const FinSetDiagram& m);

}  // namespace sketchlab
