// Brute-force reference implementations shared by the unit tests and the
// acceptance driver. Nothing here calls the library's algorithms; only its
// data types are used.
#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "sketchlab/finset.hpp"

namespace oracle {

using namespace sketchlab;

// Every tuple of the full product, kept when every arrow equation holds.
inline std::vector<std::vector<Elem>> limit_tuples(const FinSetDiagram& d) {
  const auto& s = *d.shape;
  std::size_t n = s.num_objects();
  std::vector<std::vector<Elem>> out;
  for (ObjId o = 0; o < n; ++o)
    if (d.sizes[o] == 0) return out;
  std::vector<Elem> t(n, 0);
  while (true) {
    bool ok = true;
    for (ArrId a = 0; a < s.num_arrows() && ok; ++a) ok = d.maps[a][t[s.src(a)]] == t[s.tgt(a)];
    if (ok) out.push_back(t);
    std::size_t i = n;
    while (i > 0 && ++t[i - 1] == d.sizes[i - 1]) t[--i] = 0;
    if (i == 0) break;
  }
  return out;
}

// Equivalence closure by repeated relaxation over a boolean relation.
// Returns the class label of every element of the disjoint union, labels
// numbered by least member.
inline std::vector<std::vector<Elem>> colimit_labels(const FinSetDiagram& d, std::size_t& count) {
  const auto& s = *d.shape;
  std::vector<std::pair<ObjId, Elem>> elems;
  for (ObjId o = 0; o < s.num_objects(); ++o)
    for (Elem e = 0; e < d.sizes[o]; ++e) elems.push_back({o, e});
  std::size_t n = elems.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n, false));
  auto index = [&](ObjId o, Elem e) {
    return static_cast<std::size_t>(std::find(elems.begin(), elems.end(), std::make_pair(o, e)) - elems.begin());
  };
  for (std::size_t i = 0; i < n; ++i) rel[i][i] = true;
  for (ArrId a = 0; a < s.num_arrows(); ++a)
    for (Elem e = 0; e < d.sizes[s.src(a)]; ++e) {
      auto i = index(s.src(a), e), j = index(s.tgt(a), d.maps[a][e]);
      rel[i][j] = rel[j][i] = true;
    }
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      if (rel[i][k])
        for (std::size_t j = 0; j < n; ++j)
          if (rel[k][j]) rel[i][j] = true;
  std::vector<Elem> label(n, kNone);
  count = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (label[i] != kNone) continue;
    for (std::size_t j = i; j < n; ++j)
      if (rel[i][j]) label[j] = static_cast<Elem>(count);
    ++count;
  }
  std::vector<std::vector<Elem>> out(s.num_objects());
  for (std::size_t i = 0; i < n; ++i) out[elems[i].first].push_back(label[i]);
  return out;
}

// A random functor shape -> FinSet with fibers <= max_fiber, by rejection.
inline FinSetDiagram random_diagram(const CatPtr& shape, std::size_t max_fiber, std::mt19937& rng) {
  const auto& s = *shape;
  std::uniform_int_distribution<std::size_t> size_dist(0, max_fiber);
  while (true) {
    FinSetDiagram d{shape, {}, {}};
    for (ObjId o = 0; o < s.num_objects(); ++o) d.sizes.push_back(size_dist(rng));
    bool possible = true;
    for (ArrId a = 0; a < s.num_arrows(); ++a) {
      std::vector<Elem> m;
      std::size_t from = d.sizes[s.src(a)], to = d.sizes[s.tgt(a)];
      if (s.is_identity(a)) {
        for (Elem e = 0; e < from; ++e) m.push_back(e);
      } else {
        if (from > 0 && to == 0) possible = false;
        for (Elem e = 0; e < from && possible; ++e)
          m.push_back(std::uniform_int_distribution<Elem>(0, static_cast<Elem>(to - 1))(rng));
      }
      d.maps.push_back(std::move(m));
    }
    if (!possible) continue;
    if (check_diagram(d).valid()) return d;
  }
}

// A random presheaf on base with fibers <= max_fiber, by rejection over
// random restriction tables.
inline Presheaf random_presheaf(const CatPtr& base, std::size_t max_fiber, std::mt19937& rng) {
  const auto& c = *base;
  std::uniform_int_distribution<std::size_t> size_dist(0, max_fiber);
  for (int attempt = 0;; ++attempt) {
    Presheaf p{base, {}, {}};
    for (ObjId o = 0; o < c.num_objects(); ++o) p.fibers.push_back(size_dist(rng));
    bool possible = true;
    for (ArrId a = 0; a < c.num_arrows(); ++a) {
      std::vector<Elem> m;
      std::size_t from = p.fibers[c.tgt(a)], to = p.fibers[c.src(a)];
      if (c.is_identity(a)) {
        for (Elem e = 0; e < from; ++e) m.push_back(e);
      } else {
        if (from > 0 && to == 0) possible = false;
        for (Elem e = 0; e < from && possible; ++e)
          m.push_back(std::uniform_int_distribution<Elem>(0, static_cast<Elem>(to - 1))(rng));
      }
      p.restriction.push_back(std::move(m));
    }
    if (possible && check_presheaf(p).valid()) return p;
  }
}

// Every presheaf on base with fibers <= bound, without any pruning beyond
// the type of each restriction table.
inline std::vector<Presheaf> all_presheaves(const CatPtr& base, std::size_t bound) {
  const auto& c = *base;
  std::vector<Presheaf> out;
  Presheaf p{base, std::vector<std::size_t>(c.num_objects(), 0), std::vector<std::vector<Elem>>(c.num_arrows())};
  std::function<void(ArrId)> arrows = [&](ArrId a) {
    if (a == c.num_arrows()) {
      if (check_presheaf(p).valid()) out.push_back(p);
      return;
    }
    std::size_t from = p.fibers[c.tgt(a)], to = p.fibers[c.src(a)];
    if (c.is_identity(a)) {
      p.restriction[a].resize(from);
      for (Elem e = 0; e < from; ++e) p.restriction[a][e] = e;
      arrows(a + 1);
      return;
    }
    if (from > 0 && to == 0) return;
    std::vector<Elem> t(from, 0);
    while (true) {
      p.restriction[a] = t;
      arrows(a + 1);
      std::size_t i = from;
      while (i > 0 && ++t[i - 1] == to) t[--i] = 0;
      if (i == 0) break;
    }
  };
  std::function<void(ObjId)> objects = [&](ObjId o) {
    if (o == c.num_objects()) {
      arrows(0);
      return;
    }
    for (std::size_t k = 0; k <= bound; ++k) {
      p.fibers[o] = k;
      objects(o + 1);
    }
  };
  objects(0);
  return out;
}

// p(tip) -> lim over the cocone's diagram, tested as a bijection with
// families enumerated from the full product.
inline bool orthogonal_to_cocone(const Presheaf& p, const FinCategory& shape, const std::vector<ObjId>& dobj,
                                 const std::vector<ArrId>& darr, ObjId tip, const std::vector<ArrId>& legs) {
  std::size_t n = shape.num_objects();
  std::set<std::vector<Elem>> families;
  bool empty = false;
  for (ObjId o = 0; o < n; ++o) empty = empty || p.fibers[dobj[o]] == 0;
  if (!empty) {
    std::vector<Elem> t(n, 0);
    while (true) {
      bool ok = true;
      for (ArrId a = 0; a < shape.num_arrows() && ok; ++a)
        ok = p.restriction[darr[a]][t[shape.tgt(a)]] == t[shape.src(a)];
      if (ok) families.insert(t);
      std::size_t i = n;
      while (i > 0 && ++t[i - 1] == p.fibers[dobj[i - 1]]) t[--i] = 0;
      if (i == 0) break;
    }
  }
  std::set<std::vector<Elem>> image;
  for (Elem x = 0; x < p.fibers[tip]; ++x) {
    std::vector<Elem> t;
    for (ObjId o = 0; o < n; ++o) t.push_back(p.restriction[legs[o]][x]);
    image.insert(t);
  }
  return image.size() == p.fibers[tip] && image == families;
}

// Every family of functions p(c) -> q(c), kept when natural.
inline std::vector<PresheafMap> presheaf_maps(const Presheaf& p, const Presheaf& q) {
  const auto& c = *p.base;
  std::vector<std::pair<ObjId, Elem>> slots;
  for (ObjId o = 0; o < c.num_objects(); ++o)
    for (Elem e = 0; e < p.fibers[o]; ++e) slots.push_back({o, e});
  for (auto [o, e] : slots)
    if (q.fibers[o] == 0) return {};
  std::vector<PresheafMap> out;
  PresheafMap m;
  for (ObjId o = 0; o < c.num_objects(); ++o) m.components.emplace_back(p.fibers[o], 0);
  while (true) {
    bool ok = true;
    for (ArrId a = 0; a < c.num_arrows() && ok; ++a)
      for (Elem e = 0; e < p.fibers[c.tgt(a)] && ok; ++e)
        ok = m.components[c.src(a)][p.restriction[a][e]] == q.restriction[a][m.components[c.tgt(a)][e]];
    if (ok) out.push_back(m);
    std::size_t i = slots.size();
    while (i > 0) {
      auto [o, e] = slots[i - 1];
      if (++m.components[o][e] < q.fibers[o]) break;
      m.components[o][e] = 0;
      --i;
    }
    if (i == 0) break;
  }
  return out;
}

}  // namespace oracle
