#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "sketchlab/category.hpp"
#include "sketchlab/sketch.hpp"

namespace sketchlab {

/// Extensional families made of the images of every source spec, deduplicated
/// up to cone isomorphism (least representative kept). Throws
/// non_enumerable_source when a source family cannot be listed.
Sketch min_structure(std::string name, CatPtr carrier,
                     const std::vector<std::pair<SketchPtr, FunctorData>>& sources);

/// Both families max_generated over `targets`.
Sketch max_structure(std::string name, CatPtr carrier, std::vector<std::pair<FunctorData, SketchPtr>> targets);

/// A sketch together with its projections (for limits) or inclusions (for
/// colimits).
struct Construction {
  SketchPtr sketch;
  std::vector<FunctorData> maps;
};

/// n-ary product; the empty product is ONE.
Construction product_sketch(const std::vector<SketchPtr>& factors);
Construction coproduct_sketch(const std::vector<SketchPtr>& parts);

/// Iso-comma sketch of f and g. Objects are triples (a, b, phi) with
/// phi : f a -> g b invertible; `phi` lists those isos by object.
struct PseudoPullback {
  SketchPtr sketch;
  FunctorData left;
  FunctorData right;
  std::vector<ArrId> phi;
};

PseudoPullback pseudo_pullback_sketch(const SketchMorphism& f, const SketchMorphism& g,
                                      const SizeBudget& budget = {});

/// Pseudo-power: the functor category with the maximal structure making
/// every evaluation a morphism. `maps[i]` evaluates at object i of the shape.
struct Power {
  SketchPtr sketch;
  FunctorCategory functors;
  std::vector<FunctorData> maps;
};

Power power_sketch(const SketchPtr& s, const CatPtr& shape, const SizeBudget& budget = {});

struct Splitting {
  SketchPtr sketch;
  SketchMorphism retraction;
  SketchMorphism section;
};

/// Splits an idempotent e with an invertible theta : e => id satisfying
/// theta e = 1 = e theta. Throws not_idempotent or not_equivalence.
Splitting split_idempotent(const SketchMorphism& e, const NatTransData& theta);

/// Carrier d x s with the minimal structure making every slice inclusion a
/// morphism.
Sketch tensor_sketch(const SketchPtr& d, const SketchPtr& s);

/// Sketch morphisms x -> y and the natural transformations between them.
FunctorCategory hom_category(const SketchPtr& x, const SketchPtr& y, const SizeBudget& budget = {});

struct Exponential {
  SketchPtr sketch;
  FunctorCategory homs;
  Power power;
  /// The inclusion of the morphisms into the power sketch.
  FunctorData inclusion;
};

Exponential exponential_sketch(const SketchPtr& d, const SketchPtr& t, const SizeBudget& budget = {});

/// An isomorphism between two finite categories built from explicit maps.
struct IsoWitness {
  bool iso = false;
  std::string failure;
  CatPtr left;
  CatPtr right;
  std::vector<ObjId> object_map;
  std::vector<ArrId> arrow_map;
};

/// Currying Skt(d ⊠ s, t) -> Skt(s, t^d). Throws iso_failure when it is not
/// an isomorphism of categories.
IsoWitness verify_closedness(const SketchPtr& d, const SketchPtr& s, const SketchPtr& t,
                             const SizeBudget& budget = {});

/// Skt(x, Π a_i) against Π Skt(x, a_i).
IsoWitness verify_product_property(const SketchPtr& x, const std::vector<SketchPtr>& factors,
                                   const SizeBudget& budget = {});
/// Skt(⊔ a_i, x) against Π Skt(a_i, x).
IsoWitness verify_coproduct_property(const std::vector<SketchPtr>& parts, const SketchPtr& x,
                                     const SizeBudget& budget = {});
/// Skt(x, f ×≅ g) against pseudo-cones (F, G, theta : f F ≅ g G).
IsoWitness verify_pullback_property(const SketchPtr& x, const SketchMorphism& f, const SketchMorphism& g,
                                    const SizeBudget& budget = {});
/// Skt(x, s^I) against functors I -> Skt(x, s).
IsoWitness verify_power_property(const SketchPtr& x, const SketchPtr& s, const CatPtr& shape,
                                 const SizeBudget& budget = {});

/// A cover of an object: a sink of arrows into it.
using Cover = std::pair<ObjId, std::vector<ArrId>>;

/// Lex cones plus one cocone per cover, taken over the sieve the cover
/// generates (the full subcategory of the slice on the sieve). Throws
/// not_lex when a cone is not a limit or the carrier lacks a terminal
/// object or a pullback.
Sketch site_to_sketch(std::string name, const CatPtr& carrier, const std::vector<Spec>& cones,
                      const std::vector<Cover>& covers, const SizeBudget& budget = {});

/// The sieve cocone of one cover.
Spec sieve_cocone(const CatPtr& carrier, const Cover& cover, std::string name);

}  // namespace sketchlab
