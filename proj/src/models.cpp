#include "sketchlab/models.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <thread>

#include "sketchlab/finset.hpp"

namespace sketchlab {

SketchPtr finset_test_sketch(std::size_t bound) {
  static std::mutex mu;
  static std::map<std::size_t, SketchPtr> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[bound];
  if (!slot) {
    Sketch s = bare_sketch("FinSet<=" + std::to_string(bound), finset_category(bound));
    s.cones.kind = FamilyKind::all_limit_cones;
    s.cocones.kind = FamilyKind::all_colimit_cocones;
    slot = make_sketch(std::move(s));
  }
  return slot;
}

ValidityReport check_model(const Sketch& s, const FunctorData& f, std::size_t bound, const SizeBudget& budget) {
  return check_sketch_morphism(s, *finset_test_sketch(bound), f, budget);
}

std::size_t model_size(const FunctorData& m) {
  const auto* info = m.cod->finset();
  if (!info) fail(ErrorKind::invalid_argument, "not a functor into FinSet");
  std::size_t r = 0;
  for (ObjId o : m.obj_map) r = std::max(r, info->sizes[o]);
  return r;
}

namespace {

struct Watched {
  const Spec* spec;
  Variance v;
  std::vector<ArrId> arrows;
};

class ModelSearch {
 public:
  ModelSearch(const Sketch& s, std::size_t bound, const SizeBudget& budget)
      : s_(s), fs_(finset_category(bound)), budget_(budget) {
    const auto& c = *s.carrier;
    for (Variance v : {Variance::cone, Variance::cocone})
      for (auto& sp : enumerate_family(s, v)) specs_.push_back({std::move(sp), v});
    obj_watch_.resize(c.num_objects());
    arr_watch_.resize(c.num_arrows());
    for (std::size_t k = 0; k < specs_.size(); ++k) {
      const auto& [sp, v] = specs_[k];
      ObjId last = sp.tip;
      for (ObjId o : sp.diagram.obj_map) last = std::max(last, o);
      std::vector<ArrId> arrows;
      for (ArrId a : sp.diagram.arr_map)
        if (!c.is_identity(a)) arrows.push_back(a);
      for (ArrId a : sp.legs)
        if (!c.is_identity(a)) arrows.push_back(a);
      std::sort(arrows.begin(), arrows.end());
      arrows.erase(std::unique(arrows.begin(), arrows.end()), arrows.end());
      if (arrows.empty()) {
        obj_watch_[last].push_back(k);
      } else {
        for (ArrId a : arrows) arr_watch_[a].push_back(k);
      }
      involved_.push_back(std::move(arrows));
    }
    opts_.prune_objects = [this](ObjId o, const std::vector<ObjId>& om) {
      for (std::size_t k : obj_watch_[o])
        if (!holds(k, om, nullptr)) return false;
      return true;
    };
    opts_.prune_arrows = [this](ArrId a, const std::vector<ObjId>& om, const std::vector<ArrId>& am) {
      for (std::size_t k : arr_watch_[a]) {
        bool ready = true;
        for (ArrId b : involved_[k])
          if (am[b] == kNone) {
            ready = false;
            break;
          }
        if (ready && !holds(k, om, &am)) return false;
      }
      return true;
    };
  }

  std::vector<FunctorData> run(std::size_t workers) {
    auto maps = enumerate_object_maps(s_.carrier, fs_, opts_, budget_);
    std::vector<std::vector<FunctorData>> parts(maps.size());
    workers = std::max<std::size_t>(1, std::min(workers, maps.size()));
    auto work = [&](std::size_t w) {
      FunctorSearchOptions local = opts_;
      for (std::size_t i = w; i < maps.size(); i += workers) {
        local.fixed_objects = &maps[i];
        parts[i] = enumerate_functors(s_.carrier, fs_, budget_, local);
      }
    };
    if (workers == 1) {
      work(0);
    } else {
      std::vector<std::thread> pool;
      std::vector<std::exception_ptr> errors(workers);
      for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&, w] {
          try {
            work(w);
          } catch (...) {
            errors[w] = std::current_exception();
          }
        });
      for (auto& t : pool) t.join();
      for (auto& e : errors)
        if (e) std::rethrow_exception(e);
    }
    std::vector<FunctorData> out;
    for (auto& p : parts) {
      for (auto& f : p) out.push_back(std::move(f));
      if (out.size() > budget_.max_results)
        fail(ErrorKind::size_budget_exceeded, "model enumeration exceeds the result budget");
    }
    return out;
  }

 private:
  bool holds(std::size_t k, const std::vector<ObjId>& om, const std::vector<ArrId>* am) const {
    const auto& [sp, v] = specs_[k];
    const auto& c = *s_.carrier;
    auto image = [&](ArrId a) { return am ? (*am)[a] : fs_->id(om[c.src(a)]); };
    Spec img{sp.name, sp.shape, {sp.shape, fs_, {}, {}}, om[sp.tip], {}};
    for (ObjId o : sp.diagram.obj_map) img.diagram.obj_map.push_back(om[o]);
    for (ArrId a : sp.diagram.arr_map) img.diagram.arr_map.push_back(image(a));
    for (ArrId a : sp.legs) img.legs.push_back(image(a));
    return universality_check(*fs_, img, v, budget_);
  }

  const Sketch& s_;
  CatPtr fs_;
  const SizeBudget& budget_;
  std::vector<std::pair<Spec, Variance>> specs_;
  std::vector<std::vector<ArrId>> involved_;
  std::vector<std::vector<std::size_t>> obj_watch_, arr_watch_;
  FunctorSearchOptions opts_;
};

}  // namespace

std::vector<FunctorData> enumerate_model_functors(const Sketch& s, std::size_t bound, std::size_t workers,
                                                  const SizeBudget& budget) {
  return ModelSearch(s, bound, budget).run(workers);
}

ModelCategory enumerate_models(const SketchPtr& s, std::size_t bound, std::size_t workers, const SizeBudget& budget) {
  auto models = enumerate_model_functors(*s, bound, workers, budget);
  ModelCategory mc{s, bound, functor_subcategory(s->carrier, finset_category(bound), std::move(models), budget, "M")};
  return mc;
}

FunctorData induced_functor(const SketchMorphism& f, const ModelCategory& cod_models,
                            const ModelCategory& dom_models) {
  const auto& cm = cod_models.cat;
  const auto& dm = dom_models.cat;
  FunctorData out{cm.category, dm.category, {}, {}};
  for (const auto& m : cm.functors) {
    auto o = dm.find_functor(compose_functors(m, f.functor));
    if (!o) fail(ErrorKind::domain_mismatch, "a restricted model is missing from the domain model category");
    out.obj_map.push_back(*o);
  }
  for (const auto& n : cm.naturals) {
    auto w = whisker_right(n, f.functor);
    ObjId s = out.obj_map[*cm.find_functor(n.src)];
    ObjId t = out.obj_map[*cm.find_functor(n.tgt)];
    auto a = dm.find_natural(s, t, w.components);
    if (!a) fail(ErrorKind::domain_mismatch, "a restricted transformation is missing");
    out.arr_map.push_back(*a);
  }
  return out;
}

MoritaVerdict morita_probe(const SketchMorphism& f, std::size_t src_bound, std::size_t tgt_bound,
                           const SizeBudget& budget) {
  if (tgt_bound < src_bound) fail(ErrorKind::invalid_argument, "the target bound must be at least the source bound");
  auto cod = enumerate_models(f.cod, tgt_bound, 1, budget);
  auto dom = enumerate_models(f.dom, tgt_bound, 1, budget);
  auto star = induced_functor(f, cod, dom);
  MoritaVerdict v;
  v.cod_models = cod.models().size();
  v.dom_models = dom.models().size();
  auto eq = check_equivalence(star);
  v.fully_faithful = eq.fully_faithful;
  if (!eq.fully_faithful) {
    v.refuted = true;
    v.reason = eq.ff_reason.find("surjective") != std::string::npos ? "not_full" : "not_faithful";
    v.witness = {eq.ff_witness->first, eq.ff_witness->second};
  }
  const auto& dc = *dom.cat.category;
  for (ObjId k = 0; k < dom.models().size(); ++k) {
    if (model_size(dom.models()[k]) > src_bound) continue;
    bool hit = false;
    for (ObjId i = 0; i < cod.models().size() && !hit; ++i)
      for (ArrId a : dc.hom(star.obj_map[i], k))
        if (dc.is_iso(a)) {
          hit = true;
          break;
        }
    if (!hit) {
      v.essentially_surjective = false;
      if (!v.refuted) {
        v.refuted = true;
        v.reason = "not_essentially_surjective";
        v.witness = {k};
      }
      break;
    }
  }
  return v;
}

}  // namespace sketchlab
