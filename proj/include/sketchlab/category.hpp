#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "sketchlab/error.hpp"

namespace sketchlab {

using ObjId = std::uint32_t;
using ArrId = std::uint32_t;
using Elem = std::uint32_t;

inline constexpr std::uint32_t kNone = 0xffffffffu;

struct Arrow {
  std::string name;
  ObjId src = 0;
  ObjId tgt = 0;

  bool operator==(const Arrow&) const = default;
};

/// Extra data carried by the skeletal finite-set categories FinSet<=n (and
/// their opposites): the cardinality behind each object and the function
/// table behind each arrow. Limit checks in such carriers use real set
/// (co)limits rather than the hom-set criterion.
struct FinSetCarrierInfo {
  std::size_t bound = 0;
  bool opposite = false;
  std::vector<std::size_t> sizes;
  std::vector<std::vector<Elem>> tables;
};

/// A finite category given by explicit tables. Construction validates
/// identities, composite endpoints and associativity exhaustively, so every
/// FinCategory in circulation is a genuine category.
class FinCategory {
 public:
  FinCategory() = default;

  /// `composites` lists g∘f for composable pairs as (f, g, g∘f). Pairs
  /// involving an identity may be omitted; every other composable pair must
  /// be present exactly once.
  struct Composite {
    ArrId first;
    ArrId second;
    ArrId result;
  };

  FinCategory(std::vector<std::string> objects, std::vector<Arrow> arrows,
              std::vector<ArrId> identities, const std::vector<Composite>& composites,
              std::shared_ptr<const FinSetCarrierInfo> finset = nullptr);

  /// Same, with composition supplied as a function (g, f) -> g∘f that is
  /// called once per composable pair.
  static FinCategory with_composition(std::vector<std::string> objects, std::vector<Arrow> arrows,
                                      std::vector<ArrId> identities,
                                      const std::function<ArrId(ArrId, ArrId)>& comp,
                                      std::shared_ptr<const FinSetCarrierInfo> finset = nullptr);

  std::size_t num_objects() const { return objects_.size(); }
  std::size_t num_arrows() const { return arrows_.size(); }

  const std::string& object_name(ObjId o) const { return objects_[o]; }
  const std::vector<std::string>& object_names() const { return objects_; }
  const Arrow& arrow(ArrId a) const { return arrows_[a]; }
  const std::vector<Arrow>& arrows() const { return arrows_; }
  ObjId src(ArrId a) const { return arrows_[a].src; }
  ObjId tgt(ArrId a) const { return arrows_[a].tgt; }
  ArrId id(ObjId o) const { return identities_[o]; }
  bool is_identity(ArrId a) const { return identities_[arrows_[a].src] == a; }

  /// g∘f, or kNone when tgt(f) != src(g).
  ArrId compose(ArrId g, ArrId f) const;
  /// Diagrammatic order: first f, then g.
  ArrId then(ArrId f, ArrId g) const { return compose(g, f); }

  std::span<const ArrId> hom(ObjId a, ObjId b) const {
    const auto& v = hom_[static_cast<std::size_t>(a) * objects_.size() + b];
    return {v.data(), v.size()};
  }
  std::span<const ArrId> out_arrows(ObjId a) const { return out_[a]; }
  std::span<const ArrId> in_arrows(ObjId a) const { return in_[a]; }

  /// Position of `a` inside hom(src a, tgt a).
  std::size_t hom_index(ArrId a) const { return hom_pos_[a]; }
  /// Position of `a` inside in_arrows(tgt a).
  std::size_t in_index(ArrId a) const { return in_pos_[a]; }

  std::optional<ObjId> find_object(std::string_view name) const;
  std::optional<ArrId> find_arrow(std::string_view name) const;

  bool is_iso(ArrId a) const { return inverse_[a] != kNone; }
  ArrId inverse(ArrId a) const { return inverse_[a]; }

  const FinSetCarrierInfo* finset() const { return finset_.get(); }
  std::shared_ptr<const FinSetCarrierInfo> finset_ptr() const { return finset_; }

  bool operator==(const FinCategory& other) const;

 private:
  friend struct CategoryBuilder;

  std::vector<std::string> objects_;
  std::vector<Arrow> arrows_;
  std::vector<ArrId> identities_;
  std::vector<std::vector<ArrId>> out_, in_, hom_;
  std::vector<std::size_t> out_pos_, in_pos_, hom_pos_;
  std::vector<std::size_t> comp_offset_;
  std::vector<ArrId> comp_;
  std::vector<ArrId> inverse_;
  std::shared_ptr<const FinSetCarrierInfo> finset_;
};

using CatPtr = std::shared_ptr<const FinCategory>;

inline CatPtr make_cat(FinCategory c) { return std::make_shared<const FinCategory>(std::move(c)); }

bool same_category(const CatPtr& a, const CatPtr& b);

// ---------------------------------------------------------------------------
// Presentations

struct GeneratorDecl {
  std::string name;
  std::string src;
  std::string tgt;

  bool operator==(const GeneratorDecl&) const = default;
};

/// A path of named arrows in diagrammatic order. The token `id_<obj>` stands
/// for an identity (an empty path at <obj>).
using PathExpr = std::vector<std::string>;

struct PathEquation {
  PathExpr lhs;
  PathExpr rhs;

  bool operator==(const PathEquation&) const = default;
};

struct CompositeDecl {
  std::string first;
  std::string second;
  std::string result;

  bool operator==(const CompositeDecl&) const = default;
};

/// Either a free category on an acyclic graph modulo relations, or (when
/// `explicit_tables` is set) a complete composition table.
struct CatPresentation {
  std::vector<std::string> objects;
  std::vector<GeneratorDecl> generators;
  std::vector<PathEquation> relations;
  bool explicit_tables = false;
  /// Explicit mode only: object -> name of its identity among `generators`.
  /// When empty, identities `id_<obj>` are created in front of the generators.
  std::vector<std::pair<std::string, std::string>> identities;
  std::vector<CompositeDecl> composites;

  bool operator==(const CatPresentation&) const = default;
};

struct CompiledCategory {
  FinCategory category;
  /// Every declared arrow name (and identity token) to its arrow.
  std::map<std::string, ArrId, std::less<>> names;
};

CompiledCategory compile_presentation_detailed(const CatPresentation& p,
                                               const SizeBudget& budget = {});
FinCategory compile_presentation(const CatPresentation& p, const SizeBudget& budget = {});

/// Explicit-table presentation reproducing `c` exactly (same ids and names).
CatPresentation to_presentation(const FinCategory& c);

/// Resolve a path expression against compiled names; kNone if not composable.
ArrId resolve_path(const FinCategory& c, const std::map<std::string, ArrId, std::less<>>& names,
                   const PathExpr& path, std::optional<ObjId> start = std::nullopt);

// ---------------------------------------------------------------------------
// Constructions on categories

FinCategory opposite_category(const FinCategory& c);
FinCategory product_category(const FinCategory& a, const FinCategory& b);
/// Disjoint union; objects and arrows of part k are prefixed with "k.".
FinCategory coproduct_category(const std::vector<CatPtr>& parts);

namespace shapes {
FinCategory empty();
FinCategory one();
FinCategory discrete(std::size_t n);
FinCategory codiscrete(std::size_t n);
FinCategory walking_arrow();
FinCategory parallel_pair();
FinCategory span();
FinCategory cospan();
FinCategory square();
}  // namespace shapes

// ---------------------------------------------------------------------------
// Functors and natural transformations

struct FunctorData {
  CatPtr dom;
  CatPtr cod;
  std::vector<ObjId> obj_map;
  std::vector<ArrId> arr_map;

  bool operator==(const FunctorData& other) const;
};

struct NatTransData {
  FunctorData src;
  FunctorData tgt;
  std::vector<ArrId> components;

  bool operator==(const NatTransData&) const = default;
};

struct ValidityReport {
  std::vector<std::string> violations;

  bool valid() const { return violations.empty(); }
};

FunctorData identity_functor(const CatPtr& c);
ValidityReport check_functor(const FunctorData& f);
/// g∘f. Throws domain_mismatch when cod(f) != dom(g).
FunctorData compose_functors(const FunctorData& g, const FunctorData& f);
ValidityReport check_natural(const NatTransData& n);
NatTransData identity_natural(const FunctorData& f);
/// Vertical composite b∘a.
NatTransData vertical_compose(const NatTransData& b, const NatTransData& a);
/// h·n : h∘src ⇒ h∘tgt.
NatTransData whisker_left(const FunctorData& h, const NatTransData& n);
/// n·k : src∘k ⇒ tgt∘k.
NatTransData whisker_right(const NatTransData& n, const FunctorData& k);
bool is_invertible(const NatTransData& n);

/// Optional pruning callback invoked after each arrow assignment during
/// functor search: (arrow just assigned, obj_map, partial arr_map). Return
/// false to cut the subtree.
using ArrowPruner =
    std::function<bool(ArrId, const std::vector<ObjId>&, const std::vector<ArrId>&)>;
/// Called after each object assignment: (object just assigned, partial obj_map).
using ObjectPruner = std::function<bool(ObjId, const std::vector<ObjId>&)>;

struct FunctorSearchOptions {
  ObjectPruner prune_objects;
  ArrowPruner prune_arrows;
  /// Restrict the search to a fixed object assignment.
  const std::vector<ObjId>* fixed_objects = nullptr;
};

/// All object assignments that survive the hom-nonemptiness pruning, in
/// lexicographic order.
std::vector<std::vector<ObjId>> enumerate_object_maps(const CatPtr& dom, const CatPtr& cod,
                                                      const FunctorSearchOptions& opts = {},
                                                      const SizeBudget& budget = {});

/// Every functor dom -> cod, lexicographic on (obj_map, arr_map).
std::vector<FunctorData> enumerate_functors(const CatPtr& dom, const CatPtr& cod,
                                            const SizeBudget& budget = {},
                                            const FunctorSearchOptions& opts = {});

/// Every natural transformation f ⇒ g, lexicographic on components.
std::vector<NatTransData> enumerate_naturals(const FunctorData& f, const FunctorData& g,
                                             const SizeBudget& budget = {});

/// A full subcategory of the functor category on the given functors,
/// together with the natural transformation behind every arrow.
struct FunctorCategory {
  CatPtr category;
  std::vector<FunctorData> functors;
  std::vector<NatTransData> naturals;

  std::optional<ObjId> find_functor(const FunctorData& f) const;
  std::optional<ArrId> find_natural(ObjId src, ObjId tgt, const std::vector<ArrId>& components) const;

  std::map<std::vector<ObjId>, std::vector<ObjId>> by_obj_map;
  std::map<std::tuple<ObjId, ObjId, std::vector<ArrId>>, ArrId> by_components;
};

FunctorCategory functor_subcategory(const CatPtr& shape, const CatPtr& target,
                                    std::vector<FunctorData> functors, const SizeBudget& budget = {},
                                    std::string_view object_prefix = "F");
FunctorCategory functor_category(const CatPtr& shape, const CatPtr& target,
                                 const SizeBudget& budget = {});

struct EquivalenceReport {
  bool fully_faithful = true;
  /// First (a, b) whose hom-map fails, with "not injective"/"not surjective".
  std::optional<std::pair<ObjId, ObjId>> ff_witness;
  std::string ff_reason;
  bool essentially_surjective = true;
  std::optional<ObjId> es_witness;

  bool equivalence() const { return fully_faithful && essentially_surjective; }
};

EquivalenceReport check_equivalence(const FunctorData& f);
bool is_isomorphism(const FunctorData& f);

/// Full subcategory on `objects` (in the given order) with its inclusion.
std::pair<CatPtr, FunctorData> full_subcategory(const CatPtr& c, const std::vector<ObjId>& objects);

}  // namespace sketchlab
