#include <gtest/gtest.h>

#include <random>

#include "lpplab/geometry.hpp"

using namespace lpplab;

namespace {

Box random_box(std::mt19937& g, int span = 5) {
  std::uniform_int_distribution<int> c(0, span);
  int x0 = c(g), x1 = c(g), y0 = c(g), y1 = c(g);
  return Box({std::min(x0, x1), std::min(y0, y1)}, {std::max(x0, x1), std::max(y0, y1)});
}

bool cells_meet(const Box& a, const Box& b) {
  for (int x = a.lo.x; x <= a.hi.x; ++x)
    for (int y = a.lo.y; y <= a.hi.y; ++y)
      if (b.contains(Point{x, y})) return true;
  return false;
}

}  // namespace

TEST(Classify, HorizontalAndVerticalExample) {
  Box u(0, 0, 3, 1), v(1, 0, 1, 3);
  EXPECT_EQ(classify(u, v).kind(), CrossingKind::Horizontal);
  EXPECT_EQ(classify(v, u).kind(), CrossingKind::Vertical);
  EXPECT_FALSE(classify(u, v).vertical);
}

TEST(Classify, DisjointAndOverlap) {
  EXPECT_EQ(classify(Box(0, 0, 1, 1), Box(2, 2, 3, 3)).kind(), CrossingKind::Disjoint);
  EXPECT_EQ(classify(Box(0, 0, 2, 2), Box(1, 1, 3, 3)).kind(), CrossingKind::Overlap);
}

TEST(Classify, EqualBoxesCarryBothFlags) {
  Box u(1, 1, 3, 4);
  auto c = classify(u, u);
  EXPECT_TRUE(c.horizontal);
  EXPECT_TRUE(c.vertical);
}

TEST(Classify, AntisymmetryOnRandomBoxes) {
  std::mt19937 g(11);
  for (int n = 0; n < 20000; ++n) {
    Box u = random_box(g), v = random_box(g);
    ASSERT_EQ(in_H(u, v), in_V(v, u));
    ASSERT_EQ(in_N(u, v), !cells_meet(u, v));
    if (in_H(u, v) && in_V(u, v)) {
      ASSERT_EQ(u, v);
    }
    if (in_H(u, v)) {
      ASSERT_FALSE(in_N(u, v));
    }
  }
}

TEST(Classify, HorizontalCrossingIsTransitive) {
  std::mt19937 g(12);
  int seen = 0;
  for (int n = 0; n < 200000; ++n) {
    Box u = random_box(g), v = random_box(g), w = random_box(g);
    if (in_H(u, v) && in_H(v, w)) {
      ++seen;
      ASSERT_TRUE(in_H(u, w));
    }
  }
  EXPECT_GT(seen, 100);
}

TEST(Isometry, Examples) {
  EXPECT_EQ(translate(Box(0, 0, 1, 1), {1, 2}), Box(1, 2, 2, 3));
  EXPECT_EQ(reflect_diagonal(Box(0, 1, 2, 3)), Box(1, 0, 3, 2));
  EXPECT_EQ(reflect_origin(Box(0, 1, 2, 3)), Box(-2, -3, 0, -1));
}

TEST(Isometry, InvolutionsAndComposition) {
  std::mt19937 g(13);
  for (int n = 0; n < 2000; ++n) {
    Box u = random_box(g);
    EXPECT_EQ(apply_isometry(apply_isometry(u, Isometry::r1()), Isometry::r1()), u);
    EXPECT_EQ(apply_isometry(apply_isometry(u, Isometry::r2()), Isometry::r2()), u);
    EXPECT_TRUE(apply_isometry(u, Isometry::r2()).valid());
    Point c{n % 3 - 1, n % 5 - 2}, d{n % 7 - 3, 1};
    EXPECT_EQ(translate(translate(u, c), d), translate(u, c + d));
  }
}

TEST(Cells, AsBoxRecognisesRectangles) {
  CellSet s = cells(Box(1, 1, 3, 2));
  ASSERT_TRUE(as_box(s).has_value());
  EXPECT_EQ(*as_box(s), Box(1, 1, 3, 2));
  s.erase({2, 2});
  EXPECT_FALSE(as_box(s).has_value());
  EXPECT_FALSE(as_box(CellSet{}).has_value());
}
