#include <gtest/gtest.h>

#include "sketchlab/dsl.hpp"
#include "sketchlab/finset.hpp"
#include "sketchlab/json.hpp"
#include "sketchlab/sketch.hpp"

using namespace sketchlab;

namespace {

SketchPtr corpus(const std::string& name) { return corpus_workspace().sketches.at(name); }

Sketch finset_test(std::size_t n) {
  Sketch s = bare_sketch("FinSet", finset_category(n));
  s.cones.kind = FamilyKind::all_limit_cones;
  s.cocones.kind = FamilyKind::all_colimit_cocones;
  return s;
}

// The product cone of two singletons inside FinSet<=n.
Spec singleton_product(const CatPtr& fs) {
  auto d2 = make_cat(shapes::discrete(2));
  ArrId one = finset_arrow(*fs, 1, 1, {0});
  auto arr = d2->num_arrows();
  Spec s{"p", d2, {d2, fs, {1, 1}, std::vector<ArrId>(arr, one)}, 1, {one, one}};
  return s;
}

}  // namespace

TEST(Corpus, Resolves) {
  const auto& ws = corpus_workspace();
  for (const char* n : {"ONE", "TERM", "PAIR", "GRAPH", "COSPAN_COPROD", "COSPAN_BOGUS", "SITE_TRIV", "CODISC"})
    EXPECT_TRUE(ws.sketches.count(n)) << n;
  for (const auto& [name, m] : ws.morphisms) EXPECT_TRUE(check_functor(m.functor).valid()) << name;
  EXPECT_EQ(corpus("COSPAN_COPROD")->carrier->num_arrows(), 5u);
  EXPECT_EQ(corpus("SITE_TRIV")->carrier->num_arrows(), 9u);
}

TEST(Dsl, RoundTrip) {
  const auto& doc = corpus_document();
  auto again = parse_sketch_file(to_text(doc));
  EXPECT_EQ(again, doc);
  EXPECT_EQ(parse_sketch_file(""), SketchDocument{});
  EXPECT_EQ(parse_sketch_file("# only a comment\n"), SketchDocument{});
}

TEST(Dsl, Errors) {
  try {
    parse_sketch_file("category c {\n  objects: a\n}");
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::parse_error);
    EXPECT_NE(std::string(e.what()).find("3:1"), std::string::npos) << e.what();
  }
  auto doc = parse_sketch_file(
      "category c { objects: a; arrows: ; }\n"
      "sketch S on c { cone k { shape: nowhere; diagram: ; tip: a; legs: ; } }");
  try {
    resolve(doc);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::resolution_error);
    EXPECT_NE(std::string(e.what()).find("nowhere"), std::string::npos) << e.what();
  }
  auto cyc = parse_sketch_file("category c { objects: a; arrows: f: a -> a; }");
  try {
    resolve(cyc);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cyclic_presentation);
  }
  auto bad_leg = parse_sketch_file(
      "category c { objects: a, b; arrows: f: a -> b; }\n"
      "sketch S on c { cone k { shape: one; diagram: 0 -> a; tip: b; legs: 0 -> f; } }");
  try {
    resolve(bad_leg);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_a_cone);
  }
}

TEST(Member, Examples) {
  auto fs = finset_category(2);
  Sketch none = bare_sketch("n", fs);
  auto p = singleton_product(fs);
  EXPECT_FALSE(member(none, p, Variance::cone));
  Sketch vacuous = bare_sketch("v", fs);
  vacuous.cones.kind = FamilyKind::max_generated;
  EXPECT_TRUE(member(vacuous, p, Variance::cone));
  EXPECT_TRUE(member(finset_test(2), p, Variance::cone));
}

TEST(ConeIso, Examples) {
  auto fs = finset_category(2);
  auto p = singleton_product(fs);
  EXPECT_TRUE(cone_isomorphic(*fs, p, p, Variance::cone));
  // product of (1, 2) with either ordering of the apex 2
  auto d2 = make_cat(shapes::discrete(2));
  ArrId one = finset_arrow(*fs, 1, 1, {0}), two = finset_arrow(*fs, 2, 2, {0, 1});
  ArrId bang = finset_arrow(*fs, 2, 1, {0, 0});
  Spec a{"a", d2, {d2, fs, {1, 2}, {one, two}}, 2, {bang, finset_arrow(*fs, 2, 2, {0, 1})}};
  Spec b{"b", d2, {d2, fs, {1, 2}, {one, two}}, 2, {bang, finset_arrow(*fs, 2, 2, {1, 0})}};
  ASSERT_TRUE(check_spec(*fs, a, Variance::cone).valid());
  EXPECT_TRUE(cone_isomorphic(*fs, a, b, Variance::cone));
  auto one_shape = make_cat(shapes::one());
  Spec c{"c", one_shape, {one_shape, fs, {1}, {one}}, 1, {one}};
  EXPECT_FALSE(cone_isomorphic(*fs, p, c, Variance::cone));
}

TEST(Universality, Examples) {
  auto wa = make_cat(shapes::walking_arrow());
  auto one = make_cat(shapes::one());
  Spec trivial{"t", one, {one, wa, {0}, {0}}, 0, {0}};
  EXPECT_TRUE(universality_check(*wa, trivial, Variance::cone));
  auto cop = corpus("COSPAN_COPROD");
  const auto& sum = cop->cocones.specs.at(0);
  EXPECT_TRUE(universality_check(*cop->carrier, sum, Variance::cocone));
  Spec moved = sum;
  moved.tip = *cop->carrier->find_object("x");
  EXPECT_FALSE(universality_check(*cop->carrier, moved, Variance::cocone));
}

TEST(Classify, Examples) {
  auto one = classify_sketch(*corpus("ONE"));
  EXPECT_TRUE(one.normal && one.left_normal && one.right_normal && one.limit_sketch && one.colimit_sketch);
  auto cop = classify_sketch(*corpus("COSPAN_COPROD"));
  EXPECT_TRUE(cop.left_normal);
  EXPECT_FALSE(cop.limit_sketch);
  EXPECT_TRUE(cop.colimit_sketch);
  auto term = classify_sketch(*corpus("TERM"));
  EXPECT_FALSE(term.normal);
  EXPECT_EQ(term.cone_witness, "terminal");
  auto bogus = classify_sketch(*corpus("COSPAN_BOGUS"));
  EXPECT_FALSE(bogus.right_normal);
}

TEST(Morphisms, Examples) {
  const auto& ws = corpus_workspace();
  auto cop = corpus("COSPAN_COPROD");
  EXPECT_TRUE(check_sketch_morphism(identity_morphism(cop)).valid());
  EXPECT_TRUE(check_sketch_morphism(ws.morphisms.at("PAIR_INTO_COPROD")).valid());
  // models: |M(s)| must be |M(x)| + |M(y)|
  auto fs = finset_category(2);
  Sketch test = finset_test(2);
  ArrId i1 = finset_arrow(*fs, 1, 2, {0}), j1 = finset_arrow(*fs, 1, 2, {1});
  FunctorData good{cop->carrier, fs, {1, 2, 1}, {}};
  FunctorData bad{cop->carrier, fs, {1, 2, 1}, {}};
  const auto& c = *cop->carrier;
  for (ArrId a = 0; a < c.num_arrows(); ++a) {
    if (c.is_identity(a)) {
      ArrId id = fs->id(good.obj_map[c.src(a)]);
      good.arr_map.push_back(id);
      bad.arr_map.push_back(id);
    } else {
      bool is_i = c.arrow(a).name == "i";
      good.arr_map.push_back(is_i ? i1 : j1);
      bad.arr_map.push_back(i1);
    }
  }
  EXPECT_TRUE(check_sketch_morphism(*cop, test, good).valid());
  auto rep = check_sketch_morphism(*cop, test, bad);
  ASSERT_FALSE(rep.valid());
  EXPECT_NE(rep.violations[0].find("sum"), std::string::npos);
  // composites of morphisms
  auto comp = compose_morphisms(identity_morphism(cop), ws.morphisms.at("PAIR_INTO_COPROD"));
  EXPECT_TRUE(check_sketch_morphism(comp).valid());
}

TEST(Dual, Involution) {
  for (const auto& [name, s] : corpus_workspace().sketches) {
    auto d = dual_sketch(*s);
    EXPECT_EQ(dual_sketch(d), *s) << name;
    EXPECT_EQ(forget_part(Variance::cone, d), dual_sketch(forget_part(Variance::cocone, *s))) << name;
    EXPECT_EQ(forget_part(Variance::cocone, d), dual_sketch(forget_part(Variance::cone, *s))) << name;
    auto fl = classify_sketch(*s), fd = classify_sketch(d);
    EXPECT_EQ(fl.left_normal, fd.right_normal) << name;
    EXPECT_EQ(fl.limit_sketch, fd.colimit_sketch) << name;
  }
  auto d = dual_sketch(*corpus("COSPAN_COPROD"));
  EXPECT_TRUE(d.cocones.specs.empty());
  ASSERT_EQ(d.cones.specs.size(), 1u);
  EXPECT_TRUE(universality_check(*d.carrier, d.cones.specs[0], Variance::cone));
}

TEST(Forget, MorphismPullback) {
  // a functor is a morphism iff it is one after forgetting either part
  auto bogus = corpus("COSPAN_BOGUS");
  auto cop = corpus("COSPAN_COPROD");
  for (const auto& [x, y] : std::vector<std::pair<SketchPtr, SketchPtr>>{{cop, bogus}, {bogus, cop}, {bogus, bogus}}) {
    for (const auto& f : enumerate_functors(x->carrier, y->carrier)) {
      bool whole = check_sketch_morphism(*x, *y, f).valid();
      bool cones = check_sketch_morphism(forget_part(Variance::cone, *x), forget_part(Variance::cone, *y), f).valid();
      bool cocones =
          check_sketch_morphism(forget_part(Variance::cocone, *x), forget_part(Variance::cocone, *y), f).valid();
      EXPECT_EQ(whole, cones && cocones);
    }
  }
}

TEST(Json, DocumentRoundTrip) {
  const auto& doc = corpus_document();
  auto j = document_to_json(doc);
  EXPECT_EQ(document_from_json(j), doc);
  EXPECT_EQ(document_from_json(Json::parse(j.dump())), doc);
  EXPECT_THROW(document_from_json(Json::object()), SketchError);
}

TEST(Json, Reports) {
  Verdict3 v{VerdictKind::refuted, "not_a_limit", {{"object", "s"}}};
  auto j = verdict_to_json(v);
  EXPECT_EQ(j["verdict"], "refuted");
  EXPECT_EQ(j["witness"]["object"], "s");
  auto cop = corpus("COSPAN_COPROD");
  auto p = presheaf_from_json(cop->carrier, presheaf_to_json(representable(cop->carrier, 1)));
  EXPECT_EQ(p, representable(cop->carrier, 1));
}
