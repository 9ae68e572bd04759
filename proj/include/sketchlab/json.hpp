#pragma once

#include <nlohmann/json.hpp>

#include "sketchlab/classifier.hpp"
#include "sketchlab/dsl.hpp"
#include "sketchlab/finset.hpp"
#include "sketchlab/sketch.hpp"

namespace sketchlab {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

/// Documents mirror the source syntax field by field.
Json document_to_json(const SketchDocument& doc);
SketchDocument document_from_json(const Json& j);

Json category_to_json(const FinCategory& c);
Json spec_to_json(const FinCategory& carrier, const Spec& s);
/// Families that cannot be listed appear with their kind only.
Json sketch_to_json(const Sketch& s);
Json functor_to_json(const FunctorData& f);
/// Functor into FinSet: fiber sizes by object, tables by non-identity arrow.
Json model_to_json(const FunctorData& m);
Json presheaf_to_json(const Presheaf& p);
Json presheaf_map_to_json(const Presheaf& p, const PresheafMap& m);
/// {"fibers": {obj: n}, "restriction": {arrow: [...]}}; identities may be
/// omitted. Throws invalid_argument.
Presheaf presheaf_from_json(const CatPtr& base, const Json& j);
Json report_to_json(const ValidityReport& r);
Json verdict_to_json(const Verdict3& v);
Json chase_to_json(const OrthogonalitySystem& sys, const Presheaf& input, const ChaseResult& r);

/// {"shape": "cospan" | {"name": "discrete", "args": [2]}, "sizes": [...],
///  "maps": {arrow: table}}; identity tables may be omitted.
FinSetDiagram diagram_from_json(const Json& j);

}  // namespace sketchlab
