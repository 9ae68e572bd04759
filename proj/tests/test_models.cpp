#include <gtest/gtest.h>

#include "sketchlab/dsl.hpp"
#include "sketchlab/finset.hpp"
#include "sketchlab/models.hpp"

using namespace sketchlab;

namespace {

SketchPtr corpus(const std::string& name) { return corpus_workspace().sketches.at(name); }

// Every functor into FinSet<=n, filtered by the morphism check alone.
std::vector<FunctorData> filtered(const SketchPtr& s, std::size_t n) {
  std::vector<FunctorData> out;
  for (auto& f : enumerate_functors(s->carrier, finset_category(n)))
    if (check_model(*s, f, n).valid()) out.push_back(std::move(f));
  return out;
}

}  // namespace

TEST(Models, Counts) {
  EXPECT_EQ(enumerate_model_functors(*corpus("ONE"), 2).size(), 3u);
  EXPECT_EQ(enumerate_model_functors(*corpus("PAIR"), 2).size(), 9u);
  auto term = enumerate_model_functors(*corpus("TERM"), 2);
  ASSERT_EQ(term.size(), 1u);
  const auto& info = *finset_category(2)->finset();
  auto pt = *corpus("TERM")->carrier->find_object("pt");
  auto x = *corpus("TERM")->carrier->find_object("x");
  EXPECT_EQ(info.sizes[term[0].obj_map[pt]], 1u);
  EXPECT_EQ(info.sizes[term[0].obj_map[x]], 0u);
  EXPECT_EQ(enumerate_model_functors(*corpus("TERM"), 0).size(), 0u);
}

TEST(Models, MatchFilterOracle) {
  for (const char* n : {"ONE", "TERM", "GRAPH", "COSPAN_COPROD", "COSPAN_BOGUS", "CODISC", "SITE_TRIV"}) {
    auto s = corpus(n);
    for (std::size_t b : {0u, 1u, 2u}) {
      if (std::string(n) == "SITE_TRIV" && b > 1) continue;
      auto want = filtered(s, b);
      EXPECT_EQ(enumerate_model_functors(*s, b, 1), want) << n << " " << b;
      EXPECT_EQ(enumerate_model_functors(*s, b, 4), want) << n << " " << b;
    }
  }
}

TEST(Models, CoproductFibers) {
  auto s = corpus("COSPAN_COPROD");
  const auto& c = *s->carrier;
  const auto& info = *finset_category(3)->finset();
  auto ms = enumerate_model_functors(*s, 3);
  ASSERT_FALSE(ms.empty());
  for (const auto& m : ms) {
    auto size = [&](const char* o) { return info.sizes[m.obj_map[*c.find_object(o)]]; };
    EXPECT_EQ(size("s"), size("x") + size("y"));
  }
}

TEST(Models, CategoryAndInducedFunctor) {
  const auto& ws = corpus_workspace();
  const auto& f = ws.morphisms.at("PAIR_INTO_COPROD");
  auto cod = enumerate_models(f.cod, 2);
  auto dom = enumerate_models(f.dom, 2);
  EXPECT_EQ(dom.models().size(), 9u);
  auto star = induced_functor(f, cod, dom);
  EXPECT_TRUE(check_functor(star).valid());
  EXPECT_EQ(model_size(dom.models().back()), 2u);
}

TEST(Morita, Examples) {
  const auto& ws = corpus_workspace();
  auto id = morita_probe(identity_morphism(corpus("COSPAN_COPROD")), 2, 2);
  EXPECT_FALSE(id.refuted);
  auto inc = morita_probe(ws.morphisms.at("PAIR_INTO_COPROD"), 1, 2);
  EXPECT_FALSE(inc.refuted) << inc.reason;
  EXPECT_TRUE(inc.fully_faithful);
  auto x = morita_probe(ws.morphisms.at("ONE_X"), 2, 2);
  EXPECT_TRUE(x.refuted);
  EXPECT_FALSE(x.fully_faithful);
  EXPECT_EQ(x.reason, "not_full");
  EXPECT_EQ(x.witness.size(), 2u);
  EXPECT_THROW(morita_probe(ws.morphisms.at("ONE_X"), 2, 1), SketchError);
}

TEST(Morita, InjectionOnBoundedModelsIsNotEssentiallySurjective) {
  // PAIR -> COSPAN_COPROD at target bound 2 misses (x, y) = (2, 2)
  auto inc = morita_probe(corpus_workspace().morphisms.at("PAIR_INTO_COPROD"), 2, 2);
  EXPECT_TRUE(inc.fully_faithful);
  EXPECT_FALSE(inc.essentially_surjective);
  EXPECT_EQ(inc.reason, "not_essentially_surjective");
}
