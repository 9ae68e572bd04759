#pragma once

#include <optional>
#include <string>
#include <vector>

#include "sketchlab/category.hpp"
#include "sketchlab/sketch.hpp"

namespace sketchlab {

/// FinSet<=n with every limit cone and colimit cocone specified.
SketchPtr finset_test_sketch(std::size_t bound);

/// Cones must go to limit cones and cocones to colimit cocones.
ValidityReport check_model(const Sketch& s, const FunctorData& f, std::size_t bound,
                           const SizeBudget& budget = {});

struct ModelCategory {
  SketchPtr sketch;
  std::size_t bound = 0;
  /// Objects are the models, in enumeration order.
  FunctorCategory cat;

  const std::vector<FunctorData>& models() const { return cat.functors; }
};

/// Models of s in FinSet<=bound, lexicographic on (obj_map, arr_map). Object
/// assignments are split over `workers` threads; the merged order does not
/// depend on the worker count.
std::vector<FunctorData> enumerate_model_functors(const Sketch& s, std::size_t bound, std::size_t workers = 1,
                                                  const SizeBudget& budget = {});
ModelCategory enumerate_models(const SketchPtr& s, std::size_t bound, std::size_t workers = 1,
                               const SizeBudget& budget = {});

/// Precomposition Mod(cod) -> Mod(dom).
FunctorData induced_functor(const SketchMorphism& f, const ModelCategory& cod_models,
                            const ModelCategory& dom_models);

/// Largest fiber of a model.
std::size_t model_size(const FunctorData& m);

struct MoritaVerdict {
  bool refuted = false;
  bool fully_faithful = true;
  bool essentially_surjective = true;
  /// "not_full", "not_faithful" or "not_essentially_surjective".
  std::string reason;
  /// Offending models: a pair of cod models, or one dom model.
  std::vector<std::size_t> witness;
  std::size_t cod_models = 0;
  std::size_t dom_models = 0;
};

/// Full faithfulness of f* : Mod(cod, tgt) -> Mod(dom, tgt) is decided
/// exactly; essential surjectivity only for dom models of size <= src.
MoritaVerdict morita_probe(const SketchMorphism& f, std::size_t src_bound, std::size_t tgt_bound,
                           const SizeBudget& budget = {});

}  // namespace sketchlab
