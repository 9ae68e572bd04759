#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "sketchlab/finset.hpp"
#include "sketchlab/sketch.hpp"

namespace sketchlab {

/// The Yoneda presheaf hom(-, x).
Presheaf representable(const CatPtr& c, ObjId x);

/// rho : colim よd -> よtip for one specified cocone.
struct Rule {
  Spec cocone;
  CatPtr shape_op;
  Presheaf domain;
  Presheaf codomain;
  PresheafMap rho;
};

struct OrthogonalitySystem {
  CatPtr base;
  std::vector<Rule> rules;
};

/// One rule per cocone, duplicates up to isomorphism dropped.
OrthogonalitySystem rho_system(const Sketch& s, const SizeBudget& budget = {});

/// p(tip) -> lim p∘d is a bijection for every rule.
bool is_orthogonal(const OrthogonalitySystem& sys, const Presheaf& p, const SizeBudget& budget = {});
bool orthogonal_to(const Rule& r, const Presheaf& p, const SizeBudget& budget = {});

enum class ChaseStatus { saturated, budget_exceeded };

struct ChaseStep {
  enum Kind { pushout, merge } kind;
  std::size_t rule;
  /// Index of the missing limit element, or of the second merged element.
  std::size_t element;
};

struct ChaseResult {
  ChaseStatus status = ChaseStatus::saturated;
  /// The saturated presheaf, or the state reached when the budget ran out.
  Presheaf presheaf;
  /// input -> presheaf
  PresheafMap unit;
  std::size_t pushouts = 0;
  std::size_t merges = 0;
  std::vector<ChaseStep> trace;

  bool saturated() const { return status == ChaseStatus::saturated; }
};

/// Saturates p: merges of tip elements with equal limit image come before
/// pushouts adjoining missing ones, rules taken round-robin. `budget` caps
/// the number of steps.
ChaseResult chase_reflect(const OrthogonalitySystem& sys, const Presheaf& p, std::size_t budget,
                          const SizeBudget& size = {});
ChaseResult reflect_representable(const OrthogonalitySystem& sys, ObjId x, std::size_t budget,
                                  const SizeBudget& size = {});

/// Every presheaf map p -> q, lexicographic on components.
std::vector<PresheafMap> enumerate_presheaf_maps(const Presheaf& p, const Presheaf& q,
                                                 const SizeBudget& budget = {});

/// The map r -> q out of a reflection r = L(よb) determined by sending the
/// unit's image of id_b to v. q must be orthogonal. nullopt if none exists.
std::optional<PresheafMap> extend_from_reflection(const OrthogonalitySystem& sys, const ChaseResult& r, ObjId b,
                                                  const Presheaf& q, Elem v);

/// Every presheaf on c with fibers <= bound.
std::vector<Presheaf> all_presheaves(const CatPtr& c, std::size_t bound, const SizeBudget& budget = {});

/// Orthogonal presheaves with fibers <= bound, obtained as the models of
/// the dual of the cocone part.
std::vector<Presheaf> enumerate_classifier(const Sketch& s, std::size_t bound, const SizeBudget& budget = {});

enum class VerdictKind { verified, refuted, unknown };

std::string_view verdict_name(VerdictKind k);

struct Verdict3 {
  VerdictKind kind = VerdictKind::verified;
  std::string reason;
  nlohmann::json witness;
};

struct Normalization {
  Verdict3 verdict;
  SketchPtr sketch;
  std::optional<SketchMorphism> unit;
};

Normalization left_normalize(const SketchPtr& s, std::size_t budget, const SizeBudget& size = {});

/// J = L∘よ must send every cone to a pointwise limit of presheaves.
Verdict3 roundedness_check(const Sketch& s, std::size_t budget, const SizeBudget& size = {});

/// L_T F_! p, with F_! the left Kan extension along F^op.
ChaseResult hat_on_morphism(const SketchMorphism& f, const Presheaf& p, std::size_t budget,
                            const SizeBudget& size = {});

/// The nerve b -> hom(F-, b) is fully faithful.
Verdict3 density_check(const FunctorData& f, const SizeBudget& budget = {});

struct DiaconescuReport {
  Verdict3 verdict;
  std::size_t models = 0;
  std::size_t checked_a = 0;
  std::size_t checked_b = 0;
  std::size_t checked_c = 0;
  std::size_t unknown_c = 0;
  std::size_t checked_d = 0;
  std::size_t unknown_d = 0;
};

/// For every model M: (a) M^(よx) ≅ M(x), (b) M^ inverts every rho,
/// (c) M^(J x) ≅ M(x) where the chase saturates, (d) M^ inverts the chase
/// unit of every presheaf with fibers <= fiber_bound that saturates.
DiaconescuReport diaconescu_probe(const SketchPtr& s, std::size_t model_bound, std::size_t fiber_bound,
                                  std::size_t budget, const SizeBudget& size = {});

}  // namespace sketchlab
