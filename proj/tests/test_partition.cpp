#include <gtest/gtest.h>

#include <random>
#include <set>

#include "lpplab/partition.hpp"

using namespace lpplab;

namespace {

Environment<std::int64_t> grid2x2_mp() {
  // (1,1):1 (2,1):2 (1,2):3 (2,2):4
  return from_matrix<std::int64_t>(Box(1, 1, 2, 2), {1, 2, 3, 4}, SemiringTag::MaxPlus,
                                   NumericMode::ExactInteger);
}

Environment<Rational> grid2x2_sp() {
  return from_matrix<Rational>(Box(1, 1, 2, 2), {1, 2, 3, 4}, SemiringTag::SumProduct,
                               NumericMode::ExactRational);
}

Environment<std::int64_t> random_int_grid(std::mt19937& g, Box w, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  std::vector<std::int64_t> v(std::size_t(w.area()));
  for (auto& x : v) x = d(g);
  return from_matrix(w, v, SemiringTag::MaxPlus, NumericMode::ExactInteger);
}

Environment<Rational> random_rational_grid(std::mt19937& g, Box w) {
  std::uniform_int_distribution<int> d(1, 5);
  std::vector<Rational> v(std::size_t(w.area()));
  for (auto& x : v) x = Rational(d(g), d(g));
  return from_matrix(w, v, SemiringTag::SumProduct, NumericMode::ExactRational);
}

// Independent oracle: all tuples of pairwise disjoint paths via cell sets.
template <class S>
std::optional<typename S::value> oracle_multi(const Environment<typename S::scalar>& env,
                                              const Endpoint& e) {
  std::vector<std::vector<Path>> ps;
  for (const auto& b : e.parts) ps.push_back(all_paths(b));
  std::optional<typename S::value> total;
  std::vector<std::size_t> idx(ps.size(), 0);
  std::function<void(std::size_t, std::set<Point>&, typename S::value)> rec =
      [&](std::size_t i, std::set<Point>& used, typename S::value acc) {
        if (i == ps.size()) {
          total = total ? S::plus(*total, acc) : acc;
          return;
        }
        for (const auto& p : ps[i]) {
          bool ok = true;
          for (auto c : p) ok = ok && !used.count(c);
          if (!ok) continue;
          for (auto c : p) used.insert(c);
          rec(i + 1, used, S::times(acc, path_weight<S>(env, p)));
          for (auto c : p) used.erase(c);
        }
      };
  std::set<Point> used;
  rec(0, used, S::one());
  return total;
}

Box random_sub_box(std::mt19937& g, const Box& w) {
  std::uniform_int_distribution<int> dx(w.lo.x, w.hi.x), dy(w.lo.y, w.hi.y);
  int x0 = dx(g), x1 = dx(g), y0 = dy(g), y1 = dy(g);
  return Box({std::min(x0, x1), std::min(y0, y1)}, {std::max(x0, x1), std::max(y0, y1)});
}

}  // namespace

TEST(SinglePartition, HandValues) {
  EXPECT_EQ(single_partition<MaxPlusInt>(grid2x2_mp(), Box(1, 1, 2, 2)).get(), 8);
  EXPECT_EQ(single_partition<SumProductExact>(grid2x2_sp(), Box(1, 1, 2, 2)), Rational(20));
  EXPECT_EQ(single_partition<MaxPlusInt>(grid2x2_mp(), Box(2, 1, 2, 1)).get(), 2);
}

TEST(SinglePartition, Errors) {
  EXPECT_THROW(single_partition<MaxPlusInt>(grid2x2_mp(), Box(1, 1, 3, 2)), error);
  try {
    single_partition<SumProduct<std::int64_t>>(grid2x2_mp(), Box(1, 1, 2, 2));
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongSemiring);
  }
}

TEST(MultiPartition, HandValues) {
  Endpoint e = diagonal_endpoint(Box(1, 1, 2, 2), 2);
  ASSERT_EQ(e.parts[0], Box(1, 1, 1, 2));
  ASSERT_EQ(e.parts[1], Box(2, 1, 2, 2));
  EXPECT_EQ(multi_partition<MaxPlusInt>(grid2x2_mp(), e).get(), 10);
  EXPECT_EQ(multi_partition<SumProductExact>(grid2x2_sp(), e), Rational(24));
}

TEST(MultiPartition, InfeasibleEndpoint) {
  Endpoint e{Box(1, 1, 1, 1), Box(1, 1, 1, 1)};
  try {
    multi_partition<MaxPlusInt>(grid2x2_mp(), e);
    FAIL();
  } catch (const error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InfeasibleEndpoint);
  }
  try {
    brute_force_multi<MaxPlusInt>(grid2x2_mp(), e);
    FAIL();
  } catch (const error& err) {
    EXPECT_EQ(err.code(), ErrorCode::InfeasibleEndpoint);
  }
  EXPECT_FALSE(feasible(e));
}

TEST(BruteForce, ThreePathsCoverThreeByThree) {
  auto env = constant_environment<std::int64_t>(Box(1, 1, 3, 3), 1, SemiringTag::MaxPlus,
                                                NumericMode::ExactInteger);
  EXPECT_EQ(brute_force_multi<MaxPlusInt>(env, diagonal_endpoint(Box(1, 1, 3, 3), 3)).get(), 9);
}

TEST(BruteForce, SinglePartEqualsSingle) {
  std::mt19937 g(5);
  for (int n = 0; n < 50; ++n) {
    auto env = random_int_grid(g, Box(0, 0, 4, 4), 9);
    Box u = random_sub_box(g, env.window());
    EXPECT_EQ(brute_force_multi<MaxPlusInt>(env, Endpoint{u}), single_partition<MaxPlusInt>(env, u));
  }
}

TEST(BruteForce, BudgetExceeded) {
  auto env = constant_environment<std::int64_t>(Box(0, 0, 7, 7), 1, SemiringTag::MaxPlus,
                                                NumericMode::ExactInteger);
  try {
    brute_force_multi<MaxPlusInt>(env, diagonal_endpoint(Box(0, 0, 7, 7), 3), 1000);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}

TEST(MultiPartition, AgreesWithOracleOnRandomTuples) {
  std::mt19937 g(21);
  Box w(0, 0, 4, 4);
  int checked = 0;
  for (int n = 0; n < 400; ++n) {
    auto env = random_int_grid(g, w, 6);
    int k = 1 + n % 3;
    Endpoint e;
    for (int i = 0; i < k; ++i) e.parts.push_back(random_sub_box(g, w));
    auto want = oracle_multi<MaxPlusInt>(env, e);
    if (!want) {
      EXPECT_FALSE(feasible(e));
      EXPECT_THROW(multi_partition<MaxPlusInt>(env, e), error);
      continue;
    }
    ++checked;
    EXPECT_TRUE(feasible(e));
    EXPECT_EQ(multi_partition<MaxPlusInt>(env, e), *want) << to_string(e);
    EXPECT_EQ(brute_force_multi<MaxPlusInt>(env, e), *want) << to_string(e);
  }
  EXPECT_GT(checked, 150);
}

TEST(MultiPartition, RationalAgreesWithOracle) {
  std::mt19937 g(22);
  Box w(1, 1, 4, 4);
  for (int n = 0; n < 60; ++n) {
    auto env = random_rational_grid(g, w);
    int k = 1 + n % 3;
    Box u = random_sub_box(g, w);
    if (u.max_paths() < k) continue;
    auto e = diagonal_endpoint(u, k);
    EXPECT_EQ(multi_partition<SumProductExact>(env, e), *oracle_multi<SumProductExact>(env, e));
  }
}

TEST(MultiPartition, HatShiftGivesSameValue) {
  std::mt19937 g(23);
  Box u(1, 1, 4, 4);
  for (int n = 0; n < 200; ++n) {
    auto env = random_int_grid(g, u, 9);
    for (int k = 1; k <= 4; ++k)
      ASSERT_EQ(multi_partition<MaxPlusInt>(env, diagonal_endpoint(u, k)),
                multi_partition<MaxPlusInt>(env, diagonal_endpoint_hat(u, k)));
  }
}

TEST(DeltaProfile, HandValuesAndMonotone) {
  auto d = delta_profile<MaxPlusInt>(grid2x2_mp(), Box(1, 1, 2, 2));
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d[0].get(), 8);
  EXPECT_EQ(d[1].get(), 2);

  auto row = from_matrix<std::int64_t>(Box(1, 1, 4, 1), {3, 1, 4, 1}, SemiringTag::MaxPlus,
                                       NumericMode::ExactInteger);
  auto dr = delta_profile<MaxPlusInt>(row, row.window());
  ASSERT_EQ(dr.size(), 1u);
  EXPECT_EQ(dr[0].get(), 9);

  std::mt19937 g(24);
  for (int n = 0; n < 100; ++n) {
    auto env = random_int_grid(g, Box(1, 1, 5, 5), 5);
    auto p = delta_profile<MaxPlusInt>(env, env.window());
    for (std::size_t i = 0; i + 1 < p.size(); ++i) ASSERT_GE(p[i].get(), p[i + 1].get());
    ASSERT_GE(p.back().get(), 0);
  }
}

TEST(EndpointFamily, Sizes) {
  auto D = endpoint_family(Box(1, 1, 2, 2), EndpointFamily::D);
  ASSERT_EQ(D.size(), 2u);
  EXPECT_EQ(D[1], diagonal_endpoint(Box(1, 1, 2, 2), 2));
  EXPECT_EQ(endpoint_family(Box(1, 1, 3, 1), EndpointFamily::D).size(), 1u);
  EXPECT_EQ(endpoint_family(Box(1, 1, 2, 2), EndpointFamily::H).size(), 3u);
  EXPECT_EQ(endpoint_family(Box(1, 1, 2, 2), EndpointFamily::V).size(), 3u);
}

TEST(EndpointFamily, DiagonalInsideHAndV) {
  Box u(0, 0, 3, 2);
  auto D = endpoint_family(u, EndpointFamily::D);
  auto H = endpoint_family(u, EndpointFamily::H);
  auto V = endpoint_family(u, EndpointFamily::V);
  for (const auto& e : D) {
    EXPECT_NE(std::find(H.begin(), H.end(), e), H.end());
    EXPECT_NE(std::find(V.begin(), V.end(), e), V.end());
  }
}

TEST(EndpointFamily, VbarMatchesBruteForceEnumeration) {
  // Oracle: all sets of full-height sub-boxes that admit disjoint paths.
  Box u(1, 1, 3, 3);
  std::vector<Box> cand;
  for (int a = 1; a <= 3; ++a)
    for (int b = a; b <= 3; ++b) cand.push_back(Box(a, 1, b, 3));
  std::set<std::set<Box>> want;
  for (unsigned mask = 1; mask < (1u << cand.size()); ++mask) {
    Endpoint e;
    for (std::size_t i = 0; i < cand.size(); ++i)
      if (mask >> i & 1) e.parts.push_back(cand[i]);
    auto env = constant_environment<std::int64_t>(u, 0, SemiringTag::MaxPlus, NumericMode::ExactInteger);
    if (oracle_multi<MaxPlusInt>(env, e)) want.insert(std::set<Box>(e.parts.begin(), e.parts.end()));
  }
  std::set<std::set<Box>> got;
  for (const auto& e : endpoint_family(u, EndpointFamily::Vbar))
    got.insert(std::set<Box>(e.parts.begin(), e.parts.end()));
  EXPECT_EQ(got, want);
}

TEST(BoundaryPartition, ReducesToSingle) {
  auto env = grid2x2_mp();
  using TI = Tropical<std::int64_t>;
  std::map<Point, TI> f{{{1, 1}, TI::of(0)}}, g{{{2, 2}, TI::of(0)}};
  EXPECT_EQ(boundary_partition(env, f, g).get(), 8);
}

TEST(BoundaryPartition, TwoStartsMatchesPairEnumeration) {
  auto env = grid2x2_mp();
  using TI = Tropical<std::int64_t>;
  std::map<Point, TI> f{{{1, 1}, TI::of(-5)}, {{2, 1}, TI::of(3)}}, g{{{2, 2}, TI::of(1)}};
  std::int64_t want = std::max<std::int64_t>(-5 + 8 + 1, 3 + (2 + 4) + 1);
  EXPECT_EQ(boundary_partition(env, f, g).get(), want);

  std::map<Point, TI> only{{{1, 1}, TI::neg_inf()}, {{2, 1}, TI::of(0)}};
  EXPECT_EQ(boundary_partition(env, only, g).get(), 7);
}

TEST(BoundaryPartition, Errors) {
  using TI = Tropical<std::int64_t>;
  std::map<Point, TI> f{{{2, 2}, TI::of(0)}}, g{{{1, 1}, TI::of(0)}};
  try {
    boundary_partition(grid2x2_mp(), f, g);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoFeasiblePair);
  }
  auto sp = from_matrix<std::int64_t>(Box(1, 1, 2, 2), {1, 2, 3, 4}, SemiringTag::SumProduct,
                                      NumericMode::ExactInteger);
  try {
    boundary_partition(sp, g, f);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongSemiring);
  }
}

TEST(RestrictedPartition, Cases) {
  std::mt19937 g(31);
  auto env = random_int_grid(g, Box(1, 1, 3, 3), 9);
  Box u = env.window();
  EXPECT_EQ(restricted_partition<MaxPlusInt>(env, u, cells(u)), single_partition<MaxPlusInt>(env, u));

  CellSet stair{{1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}};
  EXPECT_EQ(restricted_partition<MaxPlusInt>(env, u, stair).get(),
            env(1, 1) + env(2, 1) + env(2, 2) + env(3, 2) + env(3, 3));

  CellSet holed = cells(u);
  holed.erase({2, 2});
  std::int64_t best = INT64_MIN;
  for (const auto& p : all_paths(u)) {
    if (std::find(p.begin(), p.end(), Point{2, 2}) != p.end()) continue;
    best = std::max(best, path_weight<MaxPlusInt>(env, p).get());
  }
  EXPECT_EQ(restricted_partition<MaxPlusInt>(env, u, holed).get(), best);

  try {
    restricted_partition<MaxPlusInt>(env, u, CellSet{{1, 1}, {3, 3}});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::NoAdmissiblePath);
  }
}

TEST(LeftmostGeodesic, ZeroGridPicksLowerRight) {
  auto env = constant_environment<std::int64_t>(Box(1, 1, 2, 2), 0, SemiringTag::MaxPlus,
                                                NumericMode::ExactInteger);
  Path p = leftmost_geodesic(env, env.window());
  ASSERT_EQ(p.size(), 3u);
  EXPECT_EQ(p[1], (Point{2, 1}));
}

TEST(LeftmostGeodesic, DominatesEveryGeodesic) {
  std::mt19937 g(41);
  for (int n = 0; n < 300; ++n) {
    auto env = random_int_grid(g, Box(1, 1, 4, 4), 3);
    Box u = env.window();
    Path best = leftmost_geodesic(env, u);
    auto z = single_partition<MaxPlusInt>(env, u);
    ASSERT_EQ(path_weight<MaxPlusInt>(env, best), z);
    for (const auto& p : all_paths(u)) {
      if (path_weight<MaxPlusInt>(env, p) != z) continue;
      for (auto v : p) {
        bool dominated = false;
        for (auto w : best) dominated = dominated || southeast_of(v, w);
        ASSERT_TRUE(dominated);
      }
    }
  }
}

TEST(LeftmostGeodesic, WrongSemiring) {
  EXPECT_THROW(leftmost_geodesic(grid2x2_sp(), Box(1, 1, 2, 2)), error);
}

TEST(DisjointGeodesics, Cases) {
  auto env = grid2x2_mp();
  EXPECT_TRUE(disjoint_geodesics_exist(env, {Box(1, 1, 1, 1), Box(2, 2, 2, 2)}));
  std::mt19937 g(51);
  for (int n = 0; n < 200; ++n) {
    auto e = random_int_grid(g, Box(1, 1, 4, 4), 4);
    Box a = random_sub_box(g, e.window()), b = random_sub_box(g, e.window());
    Endpoint ep{a, b};
    if (!feasible(ep)) continue;
    // Oracle: some pair of geodesics is vertex-disjoint.
    auto za = single_partition<MaxPlusInt>(e, a), zb = single_partition<MaxPlusInt>(e, b);
    bool want = false;
    for (const auto& p : all_paths(a)) {
      if (path_weight<MaxPlusInt>(e, p) != za) continue;
      for (const auto& q : all_paths(b)) {
        if (path_weight<MaxPlusInt>(e, q) != zb) continue;
        bool meet = false;
        for (auto c : p) meet = meet || std::find(q.begin(), q.end(), c) != q.end();
        want = want || !meet;
      }
    }
    EXPECT_EQ(disjoint_geodesics_exist(e, {a, b}), want);
  }
}

TEST(QuenchedSample, TwoByTwoFrequency) {
  auto env = from_matrix<double>(Box(1, 1, 2, 2), {1, 2, 3, 4}, SemiringTag::SumProduct,
                                 NumericMode::Float64);
  SplitMix64 eng(99);
  int n = 100000, hits = 0;
  for (int i = 0; i < n; ++i) {
    auto p = quenched_sample(env, env.window(), eng);
    if (p[1] == Point{1, 2}) ++hits;
  }
  double pr = 12.0 / 20.0, se = std::sqrt(pr * (1 - pr) / n);
  EXPECT_NEAR(double(hits) / n, pr, 3 * se);
}

TEST(QuenchedSample, PathLawOnThreeByThree) {
  std::mt19937 g(61);
  std::uniform_real_distribution<double> d(0.2, 3.0);
  std::vector<double> v(9);
  for (auto& x : v) x = d(g);
  auto env = from_matrix<double>(Box(1, 1, 3, 3), v, SemiringTag::SumProduct, NumericMode::Float64);
  auto paths = all_paths(env.window());
  double Z = single_partition<SumProductReal>(env, env.window());
  std::map<Path, int> counts;
  SplitMix64 eng(7);
  const int n = 100000;
  for (int i = 0; i < n; ++i) counts[quenched_sample(env, env.window(), eng)]++;
  double tv = 0;
  for (const auto& p : paths) tv += std::abs(double(counts[p]) / n - path_weight<SumProductReal>(env, p) / Z);
  EXPECT_LT(tv / 2, 0.02);
  auto one_row = from_matrix<double>(Box(1, 1, 4, 1), {1, 2, 3, 4}, SemiringTag::SumProduct,
                                     NumericMode::Float64);
  EXPECT_EQ(quenched_sample(one_row, one_row.window(), eng).size(), 4u);
}

TEST(Lgv, SingleAndPairAgainstBruteForce) {
  auto env = constant_environment<Rational>(Box(1, 1, 3, 2), 1, SemiringTag::SumProduct,
                                            NumericMode::ExactRational);
  Endpoint one{Box(1, 1, 3, 2)};
  EXPECT_EQ(lgv_partition(env, one), single_partition<SumProductExact>(env, one.parts[0]));
  Endpoint two{Box(1, 1, 2, 2), Box(2, 1, 3, 2)};
  EXPECT_EQ(lgv_partition(env, two), brute_force_multi<SumProductExact>(env, two));
  EXPECT_EQ(lgv_partition(env, two), *oracle_multi<SumProductExact>(env, two));
}

TEST(Lgv, CrossingForcedGivesZero) {
  auto env = constant_environment<Rational>(Box(1, 1, 3, 1), 2, SemiringTag::SumProduct,
                                            NumericMode::ExactRational);
  Endpoint e{Box(1, 1, 2, 1), Box(2, 1, 3, 1)};
  EXPECT_EQ(lgv_partition(env, e), Rational(0));
  EXPECT_FALSE(feasible(e));
}

TEST(Lgv, UnsupportedShape) {
  auto env = grid2x2_sp();
  try {
    lgv_partition(env, Endpoint{Box(1, 1, 1, 2), Box(2, 2, 2, 2)});
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnsupportedEndpointShape);
  }
}
