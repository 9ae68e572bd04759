#pragma once

#include <memory>
#include <string>
#include <vector>

#include "sketchlab/category.hpp"

namespace sketchlab {

enum class Variance { cone, cocone };

inline Variance flip(Variance v) { return v == Variance::cone ? Variance::cocone : Variance::cone; }

/// A cone (legs tip -> d(o)) or cocone (legs d(o) -> tip) over a diagram
/// shape -> carrier. Which one is determined by the family holding it.
struct Spec {
  std::string name;
  CatPtr shape;
  FunctorData diagram;
  ObjId tip = 0;
  std::vector<ArrId> legs;

  bool operator==(const Spec& other) const {
    return name == other.name && same_category(shape, other.shape) && diagram == other.diagram &&
           tip == other.tip && legs == other.legs;
  }
};

using ConeSpec = Spec;
using CoconeSpec = Spec;

struct Sketch;
using SketchPtr = std::shared_ptr<const Sketch>;

enum class FamilyKind { extensional, min_generated, max_generated, all_limit_cones, all_colimit_cocones };

std::string_view family_kind_name(FamilyKind k);

struct SpecFamily {
  FamilyKind kind = FamilyKind::extensional;
  std::vector<Spec> specs;
  /// min_generated: images of the sources' specs along functors into the carrier.
  std::vector<std::pair<SketchPtr, FunctorData>> sources;
  /// max_generated: members are the specs sent into every target family.
  std::vector<std::pair<FunctorData, SketchPtr>> targets;

  static SpecFamily none() { return {}; }
  bool operator==(const SpecFamily& other) const;
  bool enumerable() const {
    return kind == FamilyKind::extensional || kind == FamilyKind::min_generated;
  }
};

struct Sketch {
  std::string name;
  CatPtr carrier;
  SpecFamily cones;
  SpecFamily cocones;

  const SpecFamily& family(Variance v) const { return v == Variance::cone ? cones : cocones; }
  SpecFamily& family(Variance v) { return v == Variance::cone ? cones : cocones; }
  bool operator==(const Sketch& other) const;
};

inline SketchPtr make_sketch(Sketch s) { return std::make_shared<const Sketch>(std::move(s)); }

/// A sketch with no specified cones or cocones.
Sketch bare_sketch(std::string name, CatPtr carrier);

struct SketchMorphism {
  SketchPtr dom;
  SketchPtr cod;
  FunctorData functor;
};

SketchMorphism identity_morphism(const SketchPtr& s);
SketchMorphism compose_morphisms(const SketchMorphism& g, const SketchMorphism& f);

ValidityReport check_spec(const FinCategory& carrier, const Spec& s, Variance v);

/// The spec transported along f.
Spec image_spec(const Spec& s, const FunctorData& f);

/// All members of an enumerable family; throws non_enumerable_domain.
std::vector<Spec> enumerate_family(const Sketch& s, Variance v);

/// Same shape on the nose, an invertible transformation between the
/// diagrams and a compatible isomorphism of tips.
bool cone_isomorphic(const FinCategory& carrier, const Spec& a, const Spec& b, Variance v);

/// Tests the canonical comparison of hom-sets against (co)cones at every
/// object. FinSet carriers use set-theoretic (co)limits instead.
bool universality_check(const FinCategory& carrier, const Spec& s, Variance v, const SizeBudget& budget = {});

bool member(const Sketch& s, const Spec& candidate, Variance v, const SizeBudget& budget = {});

ValidityReport check_sketch_morphism(const SketchMorphism& f, const SizeBudget& budget = {});
/// Same check for a bare functor between the carriers of dom and cod.
ValidityReport check_sketch_morphism(const Sketch& dom, const Sketch& cod, const FunctorData& f,
                                     const SizeBudget& budget = {});

struct SketchFlags {
  bool normal = false;
  bool left_normal = false;
  bool right_normal = false;
  bool limit_sketch = false;
  bool colimit_sketch = false;
  bool small = true;
  /// First spec failing universality, per side.
  std::string cone_witness;
  std::string cocone_witness;
};

SketchFlags classify_sketch(const Sketch& s, const SizeBudget& budget = {});

FunctorData opposite_functor(const FunctorData& f, const CatPtr& dom_op, const CatPtr& cod_op);
Spec dual_spec(const Spec& s, const CatPtr& carrier_op);
Sketch dual_sketch(const Sketch& s);

/// Keeps only the named part: forget_part(cone, S) = (S, L, ∅) and
/// forget_part(cocone, S) = (S, ∅, C).
Sketch forget_part(Variance keep, const Sketch& s);

}  // namespace sketchlab
