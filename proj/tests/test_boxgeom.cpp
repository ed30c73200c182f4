#include <gtest/gtest.h>

#include <random>

#include "lpplab/boxgeom.hpp"

using namespace lpplab;

namespace {

Box random_box(std::mt19937& g, int span) {
  std::uniform_int_distribution<int> c(0, span);
  int x0 = c(g), x1 = c(g), y0 = c(g), y1 = c(g);
  return Box({std::min(x0, x1), std::min(y0, y1)}, {std::max(x0, x1), std::max(y0, y1)});
}

}  // namespace

TEST(PreservesCrossings, Identity) {
  PiecewiseTranslation f({{{Box(0, 0, 3, 1), Box(1, 0, 1, 3), Box(5, 5, 6, 6)}, {0, 0}}});
  auto r = preserves_crossings(f);
  EXPECT_TRUE(r.horizontal_ok);
  EXPECT_TRUE(r.disjoint_ok);
}

TEST(PreservesCrossings, BrokenDisjointness) {
  // u and w overlap, their images are disjoint.
  PiecewiseTranslation f({{{Box(0, 0, 2, 2)}, {0, 0}}, {{Box(1, 1, 3, 3)}, {5, 0}}});
  EXPECT_FALSE(preserves_crossings(f).disjoint_ok);
}

TEST(PreservesCrossings, TowerMap) {
  TowerStatement t{{{Box(1, 2, 8, 3)}, {Box(3, 1, 5, 5)}, {Box(4, 0, 4, 7)}}, {{0, 1}, {1, 0}, {0, 0}}};
  auto r = preserves_crossings(t.map());
  EXPECT_TRUE(r.horizontal_ok);
  EXPECT_TRUE(r.disjoint_ok);
}

TEST(PiecewiseTranslation, RejectsNonInjective) {
  EXPECT_THROW(PiecewiseTranslation({{{Box(0, 0, 1, 1)}, {1, 0}}, {{Box(1, 0, 2, 1)}, {0, 0}}}), error);
  EXPECT_THROW(PiecewiseTranslation({{{Box(0, 0, 1, 1)}, {1, 0}}, {{Box(0, 0, 1, 1)}, {0, 0}}}), error);
}

TEST(MarkovTriple, Examples) {
  MarkovTriple t{{Box(0, 0, 5, 1)}, {}, {Box(1, 0, 4, 1)}, {}, {Box(2, 0, 3, 1)}, {}};
  EXPECT_TRUE(is_markov_triple(t));
  t.G1 = {Box(2, 0, 6, 1)};
  EXPECT_FALSE(is_markov_triple(t));
  MarkovTriple overlapF{{}, {}, {Box(0, 0, 2, 2), Box(1, 1, 3, 3)}, {}, {}, {}};
  EXPECT_FALSE(is_markov_triple(overlapF));
  EXPECT_TRUE(is_markov_triple({}));
}

TEST(MarkovQuadruple, EmptyAndBroken) {
  EXPECT_TRUE(is_markov_quadruple({}));
  MarkovQuadruple q{{Box(0, 0, 5, 1)}, {}, {Box(2, 0, 2, 1)}, {}, {Box(9, 9, 9, 9)}, {}, {Box(2, 0, 2, 3)}, {}};
  EXPECT_FALSE(is_markov_quadruple(q));
}

TEST(MarkovQuadruple, SlideConstructionUpward) {
  // One horizontal box u slid up by one against one vertical box w.
  Box u(0, 0, 5, 1), w(2, 0, 2, 3);
  Point c{0, 1};
  Box ext(u.lo, u.hi + c);
  auto G = build_connecting_set({u, ext}, {}, {w}, {});
  ASSERT_EQ(G.V1.size(), 1u);
  EXPECT_EQ(G.V1[0], Box(2, 0, 2, 2));
  BoxSet Vp;
  for (const auto& v : G.V1) Vp.push_back(Box(v.lo, v.hi + c));
  EXPECT_TRUE(is_markov_quadruple({{u}, {}, G.V1, {}, Vp, {}, {w}, {}}));
  EXPECT_TRUE(is_markov_quadruple({{translate(u, c)}, {}, translated(G.V1, c), {}, Vp, {}, {w}, {}}));
}

TEST(Components, Examples) {
  EXPECT_EQ(connected_components({Box(0, 0, 1, 1), Box(3, 3, 4, 4)}).size(), 2u);
  EXPECT_EQ(connected_components({Box(0, 0, 1, 1), Box(1, 1, 2, 2), Box(2, 2, 3, 3)}).size(), 1u);
  EXPECT_TRUE(connected_components({}).empty());
}

TEST(ConnectingSet, SinglePair) {
  auto V = build_connecting_set({Box(0, 0, 5, 1)}, {}, {Box(2, 0, 2, 3)}, {});
  ASSERT_EQ(V.all().size(), 1u);
  EXPECT_EQ(V.all()[0], Box(2, 0, 2, 1));
}

TEST(ConnectingSet, AllDisjoint) {
  auto V = build_connecting_set({Box(0, 0, 1, 1)}, {}, {Box(5, 5, 6, 6)}, {});
  EXPECT_TRUE(V.all().empty());
}

TEST(ConnectingSet, TwoComponentsOfW) {
  auto V = build_connecting_set({Box(0, 0, 9, 1)}, {}, {Box(2, 0, 2, 3), Box(6, 0, 7, 2)}, {});
  ASSERT_EQ(V.V1.size(), 2u);
  EXPECT_TRUE(in_N(V.V1[0], V.V1[1]));
  EXPECT_EQ(V.V1[0], Box(2, 0, 2, 1));
  EXPECT_EQ(V.V1[1], Box(6, 0, 7, 1));
}

TEST(ConnectingSet, PreconditionViolated) {
  try {
    build_connecting_set({Box(0, 0, 2, 2)}, {}, {Box(1, 1, 3, 3)}, {});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::PreconditionViolated);
  }
}

TEST(ConnectingSet, RandomInstancesGiveMarkovTriples) {
  std::mt19937 g(77);
  int built = 0;
  for (int n = 0; n < 200000 && built < 300; ++n) {
    BoxSet U1, U2, W1, W2;
    int nu = 1 + n % 3, nw = 1 + (n / 3) % 3;
    for (int i = 0; i < nu; ++i) (g() % 2 ? U1 : U2).push_back(random_box(g, 7));
    for (int i = 0; i < nw; ++i) (g() % 2 ? W1 : W2).push_back(random_box(g, 7));
    ConnectingSet V;
    try {
      V = build_connecting_set(U1, U2, W1, W2);
    } catch (const error&) {
      continue;
    }
    ++built;
    BoxSet all = V.all();
    for (std::size_t i = 0; i < all.size(); ++i)
      for (std::size_t j = i + 1; j < all.size(); ++j) ASSERT_TRUE(in_N(all[i], all[j]));
    ASSERT_TRUE(is_markov_triple({U1, U2, V.V1, V.V2, W1, W2}));
  }
  EXPECT_EQ(built, 300);
}

TEST(Validators, TowerExample) {
  TowerStatement t{{{Box(0, 0, 5, 1)}, {Box(2, 0, 3, 4)}}, {{0, 0}, {1, 0}}};
  EXPECT_TRUE(validate(t).ok);
  t.offsets[1] = {4, 0};
  auto r = validate(t);
  EXPECT_FALSE(r.ok);
  EXPECT_NE(r.violated.find("translated levels"), std::string::npos);
}

TEST(Validators, SlideFigureConfiguration) {
  SlideStatement s{{Box(1, 3, 6, 4)}, {Box(9, 1, 10, 6)}, {Box(3, 2, 4, 6)}, {Box(8, 3, 11, 4)}, {0, -1}};
  EXPECT_TRUE(validate(s).ok) << validate(s).violated;
  s.c = {0, -2};
  EXPECT_FALSE(validate(s).ok);
}

TEST(Validators, PermutationFigureConfiguration) {
  PermutationStatement p{{{Box(1, 1, 10, 2)}, {Box(1, 4, 10, 4)}},
                         {{0, 2}, {0, -3}},
                         {{Box(2, 0, 2, 6)}, {Box(4, 0, 5, 6)}, {Box(8, 0, 8, 6)}},
                         {{5, 0}, {-2, 0}, {1, 0}}};
  EXPECT_TRUE(validate(p).ok) << validate(p).violated;
  p.d[1] = {3, 0};
  EXPECT_FALSE(validate(p).ok);
}

TEST(Validators, ColumnTransposition) {
  ColumnTranspositionStatement s{{Box(0, 1, 9, 2)}, {Box(0, 8, 1, 9)}, {Box(2, 0, 2, 4)}, {Box(6, 0, 7, 4)},
                                 Box(0, 0, 9, 5), 5, -4};
  EXPECT_TRUE(validate(s).ok) << validate(s).violated;
  s.k = 4;
  EXPECT_TRUE(validate(s).ok);
  s.k = 1;
  EXPECT_FALSE(validate(s).ok);
}

TEST(Validators, ShiftedMiddleAndGeodesic) {
  ShiftedMiddleStatement d{{Box(1, 3, 12, 5)}, {Box(3, 2, 9, 6), Box(4, 1, 10, 6)}, {Box(6, 0, 7, 8)}, {1, 0}};
  EXPECT_TRUE(validate(d).ok) << validate(d).violated;
  d.c = {5, 0};
  EXPECT_FALSE(validate(d).ok);

  GeodesicStatement g{{Box(1, 1, 10, 3)}, {Box(4, -2, 5, 6)}, Box(4, 1, 5, 3), Box(4, 1, 7, 3), {2, 0}};
  EXPECT_TRUE(validate(g).ok) << validate(g).violated;
  g.c = {4, 0};
  EXPECT_FALSE(validate(g).ok);
}

TEST(Validators, Restricted) {
  Box u(0, 0, 7, 2), v(3, -3, 4, 5);
  Box w(3, 1, 4, 1), x(3, 0, 4, 2);
  CellSet Ru;
  for (auto p : cells(u))
    if (p.x < 3 || p.x > 4 || p.y == 1) Ru.insert(p);
  RestrictedStatement s{u, v, Ru, cells(v), w, x, {0, 1}};
  EXPECT_TRUE(validate(s).ok) << validate(s).violated;

  RestrictedStatement far = s;
  far.c = {0, 2};
  EXPECT_FALSE(validate(far).ok);

  RestrictedStatement open = s;
  open.Ru = cells(u);
  EXPECT_FALSE(validate(open).ok);

  RestrictedStatement blocked = s;
  blocked.Ru = without_column(Ru, 3, 0, 2);
  EXPECT_FALSE(validate(blocked).ok);
}
