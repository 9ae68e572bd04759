#include <gtest/gtest.h>

#include "oracles.hpp"
#include "sketchlab/finset.hpp"

using namespace sketchlab;

namespace {

std::vector<CatPtr> oracle_shapes() {
  return {make_cat(shapes::discrete(0)), make_cat(shapes::discrete(1)), make_cat(shapes::discrete(2)),
          make_cat(shapes::discrete(3)), make_cat(shapes::parallel_pair()), make_cat(shapes::span()),
          make_cat(shapes::cospan()), make_cat(shapes::square())};
}

CatPtr cospan_xsy() {
  CatPresentation p;
  p.objects = {"x", "s", "y"};
  p.generators = {{"i", "x", "s"}, {"j", "y", "s"}};
  return make_cat(compile_presentation(p));
}

}  // namespace

TEST(FinSetLimits, Examples) {
  FinSetDiagram empty{make_cat(shapes::empty()), {}, {}};
  EXPECT_EQ(limit_finset(empty).apex, 1u);
  EXPECT_EQ(colimit_finset(empty).apex, 0u);

  auto pp = make_cat(shapes::parallel_pair());
  // f, g : 3 -> 2 with f = (0,1,0), g = (0,0,0): equalizer {0, 2}
  FinSetDiagram eq{pp, {3, 2}, {{0, 1, 2}, {0, 1}, {0, 1, 0}, {0, 0, 0}}};
  ASSERT_TRUE(check_diagram(eq).valid());
  std::size_t filtered = 0;
  for (Elem i = 0; i < 3; ++i) filtered += eq.maps[2][i] == eq.maps[3][i];
  EXPECT_EQ(limit_finset(eq).apex, filtered);

  FinSetDiagram prod{make_cat(shapes::discrete(2)), {2, 3}, {{0, 1}, {0, 1, 2}}};
  EXPECT_EQ(limit_finset(prod).apex, 6u);
  EXPECT_EQ(colimit_finset(prod).apex, 5u);

  // coequalizer of f = (0,1), g = (1,2) : 2 -> 3
  FinSetDiagram coeq{pp, {2, 3}, {{0, 1}, {0, 1, 2}, {0, 1}, {1, 2}}};
  EXPECT_EQ(colimit_finset(coeq).apex, 1u);
}

TEST(FinSetLimits, AgreeWithBruteForce) {
  std::mt19937 rng(7);
  std::size_t cases = 0;
  for (const auto& shape : oracle_shapes())
    for (int k = 0; k < 80; ++k) {
      auto d = oracle::random_diagram(shape, 3, rng);
      auto lim = limit_finset(d);
      EXPECT_EQ(lim.tuples, oracle::limit_tuples(d));
      std::size_t count = 0;
      auto labels = oracle::colimit_labels(d, count);
      auto col = colimit_finset(d);
      EXPECT_EQ(col.apex, count);
      for (ObjId o = 0; o < shape->num_objects(); ++o) EXPECT_EQ(col.injections[o].table, labels[o]);
      EXPECT_TRUE(is_limit_cone(d, lim.apex, [&] {
        std::vector<std::vector<Elem>> legs;
        for (const auto& p : lim.projections) legs.push_back(p.table);
        return legs;
      }()));
      std::vector<std::vector<Elem>> inj;
      for (const auto& i : col.injections) inj.push_back(i.table);
      EXPECT_TRUE(is_colimit_cocone(d, col.apex, inj));
      ++cases;
    }
  EXPECT_GE(cases, 500u);
}

TEST(FinSetLimits, ConeChecks) {
  auto d2 = make_cat(shapes::discrete(2));
  FinSetDiagram ones{d2, {1, 1}, {{0}, {0}}};
  EXPECT_TRUE(is_limit_cone(ones, 1, {{0}, {0}}));
  EXPECT_FALSE(is_limit_cone(ones, 2, {{0, 0}, {0, 0}}));
  FinSetDiagram pair{d2, {2, 2}, {{0, 1}, {0, 1}}};
  // swapped projections still form a product
  EXPECT_TRUE(is_limit_cone(pair, 4, {{1, 1, 0, 0}, {1, 0, 1, 0}}));
  auto pp = make_cat(shapes::parallel_pair());
  FinSetDiagram eq{pp, {2, 2}, {{0, 1}, {0, 1}, {0, 1}, {1, 0}}};
  try {
    is_limit_cone(eq, 1, {{0}, {0}});
    FAIL();
  } catch (const SketchError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::not_a_cone);
  }
}

TEST(FinSetCategory, Shape) {
  auto fs = finset_category(2);
  // sum over k, l <= 2 of l^k
  EXPECT_EQ(fs->num_arrows(), 11u);
  EXPECT_EQ(fs->hom(2, 2).size(), 4u);
  EXPECT_EQ(finset_category(2), fs);
  EXPECT_EQ(finset_category(3)->num_arrows(), 60u);
  ArrId swap = finset_arrow(*fs, 2, 2, {1, 0});
  EXPECT_EQ(fs->compose(swap, swap), fs->id(2));
}

TEST(Lan, Examples) {
  auto p = make_cat(shapes::discrete(2));
  auto one = make_cat(shapes::one());
  FinSetDiagram m{p, {2, 3}, {{0, 1}, {0, 1, 2}}};
  auto id = lan_finset(identity_functor(p), m);
  EXPECT_EQ(id.diagram.sizes, m.sizes);
  EXPECT_EQ(id.diagram.maps, m.maps);

  FunctorData collapse{p, one, {0, 0}, {0, 0}};
  EXPECT_EQ(lan_finset(collapse, m).diagram.sizes, std::vector<std::size_t>{5});

  auto c = cospan_xsy();
  FunctorData incx{one, c, {0}, {c->id(0)}};
  FinSetDiagram two{one, {2}, {{0, 1}}};
  auto r = lan_finset(incx, two);
  EXPECT_EQ(r.diagram.sizes, (std::vector<std::size_t>{2, 2, 0}));
  EXPECT_TRUE(check_diagram(r.diagram).valid());
}

TEST(Lan, CompositeAndUniversality) {
  // lan along g∘f equals lan along g of lan along f, on sizes and on the
  // nat-set bijection Nat(lan m, n) = Nat(m, n∘f) counted by brute force.
  auto c = cospan_xsy();
  auto one = make_cat(shapes::one());
  auto two = make_cat(shapes::discrete(2));
  FunctorData f{two, c, {0, 2}, {c->id(0), c->id(2)}};
  FunctorData g{c, one, {0, 0, 0}, std::vector<ArrId>(5, 0)};
  std::mt19937 rng(3);
  for (int k = 0; k < 20; ++k) {
    auto m = oracle::random_diagram(two, 3, rng);
    auto step = lan_finset(g, lan_finset(f, m).diagram);
    auto direct = lan_finset(compose_functors(g, f), m);
    EXPECT_EQ(step.diagram.sizes, direct.diagram.sizes);
  }
  auto fs = finset_category(2);
  for (int k = 0; k < 10; ++k) {
    auto m = oracle::random_diagram(two, 2, rng);
    auto lan = lan_finset(f, m).diagram;
    auto nd = oracle::random_diagram(c, 2, rng);
    // count natural maps by brute force on both sides
    auto count_nat = [](const FinSetDiagram& a, const FinSetDiagram& b) {
      std::size_t n = a.sizes.size(), count = 0;
      std::vector<std::vector<Elem>> comp(n);
      std::function<void(std::size_t)> go = [&](std::size_t o) {
        if (o == n) {
          bool ok = true;
          const auto& s = *a.shape;
          for (ArrId e = 0; e < s.num_arrows() && ok; ++e)
            for (Elem x = 0; x < a.sizes[s.src(e)] && ok; ++x)
              ok = comp[s.tgt(e)][a.maps[e][x]] == b.maps[e][comp[s.src(e)][x]];
          count += ok;
          return;
        }
        if (a.sizes[o] > 0 && b.sizes[o] == 0) return;
        std::vector<Elem> t(a.sizes[o], 0);
        while (true) {
          comp[o] = t;
          go(o + 1);
          std::size_t i = t.size();
          while (i > 0 && ++t[i - 1] == b.sizes[o]) t[--i] = 0;
          if (i == 0) break;
        }
      };
      go(0);
      return count;
    };
    FinSetDiagram restricted{two, {nd.sizes[0], nd.sizes[2]}, {nd.maps[c->id(0)], nd.maps[c->id(2)]}};
    EXPECT_EQ(count_nat(lan, nd), count_nat(m, restricted));
  }
  (void)fs;
}

TEST(Extension, Examples) {
  auto c = cospan_xsy();
  FinSetDiagram m{c, {2, 3, 1}, {{0, 1}, {0, 1, 2}, {0}, {0, 2}, {1}}};
  ASSERT_TRUE(check_diagram(m).valid());
  // representable at s: hom(-, s) has one element at every object
  Presheaf ys{c, {1, 1, 1}, {{0}, {0}, {0}, {0}, {0}}};
  ASSERT_TRUE(check_presheaf(ys).valid());
  EXPECT_EQ(evaluate_extension(ys, m).size, 3u);
  EXPECT_EQ(evaluate_extension(empty_presheaf(c), m).size, 0u);
  // よx ⊔ よy: fibers (1, 0, 1), giving m(x) ⊔ m(y)
  Presheaf xy{c, {1, 0, 1}, {{0}, {}, {0}, {}, {}}};
  ASSERT_TRUE(check_presheaf(xy).valid());
  EXPECT_EQ(evaluate_extension(xy, m).size, 3u);
}
