#include <gtest/gtest.h>

#include <functional>
#include <set>

#include "sketchlab/category.hpp"

using namespace sketchlab;

namespace {

CatPresentation cospan_pres() {
  CatPresentation p;
  p.objects = {"x", "s", "y"};
  p.generators = {{"i", "x", "s"}, {"j", "y", "s"}};
  return p;
}

CatPtr cospan() { return make_cat(compile_presentation(cospan_pres())); }
CatPtr pair_cat() { return make_cat(shapes::discrete(2)); }
CatPtr one_cat() { return make_cat(shapes::one()); }

// Exhaustive count of functors without search pruning: every object map,
// every typed arrow map, filtered by check_functor.
std::size_t brute_functor_count(const CatPtr& d, const CatPtr& c) {
  std::size_t count = 0;
  FunctorData f{d, c, std::vector<ObjId>(d->num_objects()), std::vector<ArrId>(d->num_arrows())};
  std::function<void(std::size_t)> go_arr = [&](std::size_t a) {
    if (a == d->num_arrows()) {
      count += check_functor(f).valid();
      return;
    }
    for (ArrId b : c->hom(f.obj_map[d->src(a)], f.obj_map[d->tgt(a)])) {
      f.arr_map[a] = b;
      go_arr(a + 1);
    }
  };
  std::function<void(std::size_t)> go_obj = [&](std::size_t o) {
    if (o == d->num_objects()) {
      go_arr(0);
      return;
    }
    for (ObjId t = 0; t < c->num_objects(); ++t) {
      f.obj_map[o] = t;
      go_obj(o + 1);
    }
  };
  go_obj(0);
  return count;
}

std::size_t brute_natural_count(const FunctorData& f, const FunctorData& g) {
  std::size_t count = 0;
  NatTransData n{f, g, std::vector<ArrId>(f.dom->num_objects())};
  std::function<void(std::size_t)> go = [&](std::size_t o) {
    if (o == n.components.size()) {
      count += check_natural(n).valid();
      return;
    }
    for (ArrId k = 0; k < f.cod->num_arrows(); ++k) {
      n.components[o] = k;
      go(o + 1);
    }
  };
  go(0);
  return count;
}

}  // namespace

TEST(Presentation, FreeCospanHasFiveArrows) {
  auto c = compile_presentation(cospan_pres());
  EXPECT_EQ(c.num_objects(), 3u);
  EXPECT_EQ(c.num_arrows(), 5u);
  EXPECT_EQ(c.arrow(3).name, "i");
  EXPECT_EQ(c.arrow(4).name, "j");
}

TEST(Presentation, CommutativeSquareQuotient) {
  CatPresentation p;
  p.objects = {"a", "b", "c", "d"};
  p.generators = {{"top", "a", "b"}, {"left", "a", "c"}, {"right", "b", "d"}, {"bottom", "c", "d"}};
  p.relations = {{{"top", "right"}, {"left", "bottom"}}};
  auto c = compile_presentation(p);
  // oracle: 4 identities + 4 generators + 2 length-two paths, one class
  std::size_t paths = 4 + 4 + 2;
  EXPECT_EQ(c.num_arrows(), paths - 1);
  EXPECT_EQ(c.hom(0, 3).size(), 1u);

  p.relations.clear();
  EXPECT_EQ(compile_presentation(p).num_arrows(), paths);
}

TEST(Presentation, CongruenceClosurePropagates) {
  // f = g forces f;h = g;h in the quotient.
  CatPresentation p;
  p.objects = {"a", "b", "c"};
  p.generators = {{"f", "a", "b"}, {"g", "a", "b"}, {"h", "b", "c"}};
  p.relations = {{{"f"}, {"g"}}};
  auto c = compile_presentation(p);
  EXPECT_EQ(c.hom(0, 2).size(), 1u);
  EXPECT_EQ(c.hom(0, 1).size(), 1u);
}

TEST(Presentation, Errors) {
  CatPresentation cyc;
  cyc.objects = {"a", "b"};
  cyc.generators = {{"f", "a", "b"}, {"g", "b", "a"}};
  try {
    compile_presentation(cyc);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::cyclic_presentation);
  }
  auto bad = cospan_pres();
  bad.relations = {{{"i"}, {"j"}}};
  try {
    compile_presentation(bad);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::relation_type_mismatch);
  }
}

TEST(Presentation, ExplicitTables) {
  // The two-element monoid {1, e} with e;e = e, a cyclic category.
  CatPresentation p;
  p.explicit_tables = true;
  p.objects = {"m"};
  p.generators = {{"e", "m", "m"}};
  p.composites = {{"e", "e", "e"}};
  auto c = compile_presentation(p);
  EXPECT_EQ(c.num_arrows(), 2u);
  EXPECT_EQ(c.compose(1, 1), 1u);

  // Non-associative table on the three-element set {1, a, b}.
  CatPresentation bad;
  bad.explicit_tables = true;
  bad.objects = {"m"};
  bad.generators = {{"a", "m", "m"}, {"b", "m", "m"}};
  bad.composites = {{"a", "a", "b"}, {"a", "b", "a"}, {"b", "a", "b"}, {"b", "b", "a"}};
  try {
    compile_presentation(bad);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::inconsistent_tables);
  }
  bad.composites.pop_back();
  EXPECT_THROW(compile_presentation(bad), SketchError);
}

TEST(Presentation, RoundTripIsIdentity) {
  auto c = compile_presentation(cospan_pres());
  EXPECT_EQ(compile_presentation(to_presentation(c)), c);
  auto sq = shapes::square();
  EXPECT_EQ(compile_presentation(to_presentation(sq)), sq);
  auto cd = shapes::codiscrete(3);
  EXPECT_EQ(compile_presentation(to_presentation(cd)), cd);
}

TEST(Opposite, InvolutionAndTransposition) {
  auto c = compile_presentation(cospan_pres());
  auto op = opposite_category(c);
  EXPECT_EQ(opposite_category(op), c);
  EXPECT_EQ(opposite_category(shapes::one()), shapes::one());
  // transposition oracle: hom_op(a, b) = hom(b, a)
  for (ObjId a = 0; a < 3; ++a)
    for (ObjId b = 0; b < 3; ++b) {
      auto h1 = op.hom(a, b), h2 = c.hom(b, a);
      EXPECT_EQ(std::vector<ArrId>(h1.begin(), h1.end()), std::vector<ArrId>(h2.begin(), h2.end()));
    }
  // s now has two outgoing non-identity arrows: a span.
  EXPECT_EQ(op.out_arrows(1).size(), 3u);
}

TEST(Product, Basic) {
  auto c = compile_presentation(cospan_pres());
  auto p1 = product_category(shapes::one(), c);
  EXPECT_EQ(p1.num_objects(), c.num_objects());
  EXPECT_EQ(p1.num_arrows(), c.num_arrows());
  EXPECT_EQ(product_category(shapes::empty(), c).num_objects(), 0u);
  auto pp = product_category(shapes::discrete(2), shapes::discrete(2));
  EXPECT_EQ(pp.num_objects(), 4u);
  EXPECT_EQ(pp.num_arrows(), 4u);
  EXPECT_EQ(pp.object_name(1), "(0,1)");
}

TEST(Functors, Checks) {
  auto c = cospan();
  auto id = identity_functor(c);
  EXPECT_TRUE(check_functor(id).valid());
  FunctorData collapse{c, c, {1, 1, 1}, {}};
  for (ArrId a = 0; a < c->num_arrows(); ++a) collapse.arr_map.push_back(c->id(1));
  EXPECT_TRUE(check_functor(collapse).valid());
  auto bad = id;
  bad.arr_map[3] = 4;
  EXPECT_FALSE(check_functor(bad).valid());

  EXPECT_EQ(compose_functors(id, collapse), collapse);
  EXPECT_EQ(compose_functors(collapse, id), collapse);
  try {
    compose_functors(identity_functor(pair_cat()), id);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::domain_mismatch);
  }
}

TEST(Functors, EnumerationMatchesBruteForce) {
  EXPECT_EQ(enumerate_functors(one_cat(), one_cat()).size(), 1u);
  EXPECT_EQ(enumerate_functors(pair_cat(), pair_cat()).size(), 4u);
  std::vector<CatPtr> cats = {one_cat(), pair_cat(), cospan(), make_cat(shapes::walking_arrow()),
                              make_cat(shapes::parallel_pair()), make_cat(shapes::square()),
                              make_cat(shapes::codiscrete(2)), make_cat(shapes::span())};
  for (const auto& a : cats)
    for (const auto& b : cats) {
      auto fs = enumerate_functors(a, b);
      EXPECT_EQ(fs.size(), brute_functor_count(a, b));
      for (std::size_t i = 1; i < fs.size(); ++i)
        EXPECT_TRUE(std::tie(fs[i - 1].obj_map, fs[i - 1].arr_map) < std::tie(fs[i].obj_map, fs[i].arr_map));
    }
}

TEST(Naturals, EnumerationMatchesBruteForce) {
  auto one = one_cat();
  EXPECT_EQ(enumerate_naturals(identity_functor(one), identity_functor(one)).size(), 1u);
  auto p = pair_cat();
  FunctorData cx{one, p, {0}, {p->id(0)}}, cy{one, p, {1}, {p->id(1)}};
  EXPECT_TRUE(enumerate_naturals(cx, cy).empty());

  auto c = cospan();
  auto ends = enumerate_functors(c, c);
  for (const auto& f : ends)
    for (const auto& g : ends) EXPECT_EQ(enumerate_naturals(f, g).size(), brute_natural_count(f, g));
}

TEST(Naturals, Checks) {
  auto c = cospan();
  FunctorData cx{one_cat(), c, {0}, {c->id(0)}}, cs{one_cat(), c, {1}, {c->id(1)}};
  NatTransData ok{cx, cs, {3}};
  EXPECT_TRUE(check_natural(ok).valid());
  EXPECT_TRUE(check_natural(identity_natural(identity_functor(c))).valid());

  // Identity functor to the collapse: component at x must be i, at y j.
  auto id = identity_functor(c);
  FunctorData collapse{c, c, {1, 1, 1}, std::vector<ArrId>(5, c->id(1))};
  NatTransData good{id, collapse, {3, c->id(1), 4}};
  EXPECT_TRUE(check_natural(good).valid());
  auto h = whisker_left(collapse, good);
  EXPECT_TRUE(check_natural(h).valid());
  EXPECT_TRUE(check_natural(whisker_right(good, collapse)).valid());

  NatTransData wrong{collapse, collapse, {c->id(1), c->id(1), c->id(1)}};
  EXPECT_TRUE(check_natural(wrong).valid());
  NatTransData mistyped{id, collapse, {4, c->id(1), 4}};
  EXPECT_FALSE(check_natural(mistyped).valid());
  EXPECT_THROW(check_natural(NatTransData{cx, id, {}}), SketchError);
}

TEST(FunctorCategory, Examples) {
  auto fc = functor_category(make_cat(shapes::discrete(2)), one_cat());
  EXPECT_EQ(fc.category->num_objects(), 1u);
  EXPECT_EQ(fc.category->num_arrows(), 1u);

  auto arrow_pair = functor_category(make_cat(shapes::walking_arrow()), pair_cat());
  EXPECT_EQ(arrow_pair.category->num_objects(), 2u);
  EXPECT_EQ(arrow_pair.category->num_arrows(), 2u);

  auto c = cospan();
  auto ev = functor_category(one_cat(), c);
  EXPECT_EQ(ev.category->num_objects(), 3u);
  EXPECT_EQ(ev.category->num_arrows(), 5u);

  SizeBudget tiny;
  tiny.max_arrows = 3;
  try {
    functor_category(one_cat(), c, tiny);
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::size_budget_exceeded);
  }
}

TEST(Equivalence, Examples) {
  auto c = cospan();
  EXPECT_TRUE(check_equivalence(identity_functor(c)).equivalence());

  auto p = pair_cat();
  FunctorData inc{one_cat(), p, {0}, {p->id(0)}};
  auto r = check_equivalence(inc);
  EXPECT_TRUE(r.fully_faithful);
  EXPECT_FALSE(r.essentially_surjective);
  EXPECT_EQ(r.es_witness, 1u);

  auto cd = make_cat(shapes::codiscrete(2));
  FunctorData collapse{cd, one_cat(), {0, 0}, std::vector<ArrId>(4, 0)};
  EXPECT_TRUE(check_functor(collapse).valid());
  EXPECT_TRUE(check_equivalence(collapse).equivalence());

  // Natural bijection spot check: hom(a,b) -> hom(Fa,Fb) is bijective
  // for every pair when the report says yes.
  for (ObjId a = 0; a < 2; ++a)
    for (ObjId b = 0; b < 2; ++b) EXPECT_EQ(cd->hom(a, b).size(), 1u);
}

TEST(FullSubcategory, Inclusion) {
  auto c = cospan();
  auto [sub, inc] = full_subcategory(c, {0, 1});
  EXPECT_EQ(sub->num_arrows(), 3u);
  EXPECT_TRUE(check_functor(inc).valid());
  EXPECT_TRUE(check_equivalence(inc).fully_faithful);
}
