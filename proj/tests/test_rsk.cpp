#include <gtest/gtest.h>

#include <random>

#include "lpplab/rsk.hpp"

using namespace lpplab;

namespace {

Environment<std::int64_t> grid(Box w, std::vector<std::int64_t> v) {
  return from_matrix<std::int64_t>(w, std::move(v), SemiringTag::MaxPlus, NumericMode::ExactInteger);
}

Environment<std::int64_t> random_int(std::mt19937& g, Box w, int hi) {
  std::uniform_int_distribution<int> d(0, hi);
  std::vector<std::int64_t> v(std::size_t(w.area()));
  for (auto& x : v) x = d(g);
  return grid(w, v);
}

Environment<Rational> random_rat(std::mt19937& g, Box w) {
  std::uniform_int_distribution<int> n(1, 9), d(1, 4);
  std::vector<Rational> v(std::size_t(w.area()));
  for (auto& x : v) x = Rational(n(g), d(g));
  return from_matrix<Rational>(w, v, SemiringTag::SumProduct, NumericMode::ExactRational);
}

// Best total weight of k vertex-disjoint up-right paths with free endpoints in u.
std::int64_t oracle_disjoint_paths(const Environment<std::int64_t>& env, const Box& u, int k) {
  std::vector<std::pair<CellSet, std::int64_t>> paths;
  for (auto a : cells(u))
    for (auto b : cells(u))
      if (a.x <= b.x && a.y <= b.y)
        for (const auto& p : all_paths(Box(a, b))) {
          std::int64_t w = 0;
          for (auto c : p) w += env(c);
          paths.push_back({CellSet(p.begin(), p.end()), w});
        }
  std::int64_t best = 0;
  std::function<void(int, std::size_t, const CellSet&, std::int64_t)> rec =
      [&](int depth, std::size_t from, const CellSet& used, std::int64_t acc) {
        best = std::max(best, acc);
        if (depth == k) return;
        for (std::size_t i = from; i < paths.size(); ++i) {
          if (!set_intersection(used, paths[i].first).empty()) continue;
          CellSet next = used;
          next.insert(paths[i].first.begin(), paths[i].first.end());
          rec(depth + 1, i + 1, next, acc + paths[i].second);
        }
      };
  rec(0, 0, {}, 0);
  return best;
}

}  // namespace

TEST(Partitions, HorizontalStrip) {
  EXPECT_TRUE(is_horizontal_strip({2, 1}, {3, 2}));
  EXPECT_FALSE(is_horizontal_strip({1}, {3, 3}));
  EXPECT_TRUE(is_horizontal_strip({2, 1}, {2, 1}));
  EXPECT_TRUE(is_horizontal_strip({}, {4}));
  EXPECT_FALSE(is_horizontal_strip({}, {1, 1}));
  EXPECT_FALSE(is_horizontal_strip({3}, {2, 1}));
  EXPECT_THROW(IntegerPartition({1, 2}), error);
  EXPECT_EQ(IntegerPartition({3, 1, 0, 0}).length(), 2u);
}

TEST(Partitions, StripGeneratorsMatchFilter) {
  // Candidates: every partition with at most 4 parts, each at most 5.
  std::vector<IntegerPartition> universe;
  std::function<void(std::vector<std::int64_t>&, std::int64_t)> gen = [&](std::vector<std::int64_t>& cur, std::int64_t cap) {
    universe.push_back(IntegerPartition(cur));
    if (cur.size() == 4) return;
    for (std::int64_t v = 1; v <= cap; ++v) {
      cur.push_back(v);
      gen(cur, v);
      cur.pop_back();
    }
  };
  std::vector<std::int64_t> cur;
  gen(cur, 5);
  for (const auto& mu : {IntegerPartition{}, IntegerPartition{2}, IntegerPartition{3, 1}, IntegerPartition{2, 2, 1}}) {
    for (std::int64_t b = 0; b <= 3; ++b) {
      std::set<IntegerPartition> expect, got;
      for (const auto& l : universe)
        if (is_horizontal_strip(mu, l) && l.size() - mu.size() <= b && l[0] <= 5) expect.insert(l);
      for (const auto& l : add_strips(mu, b))
        if (l[0] <= 5) got.insert(l);
      EXPECT_EQ(got, expect);
      std::set<IntegerPartition> expect_r, got_r;
      for (const auto& l : universe)
        if (is_horizontal_strip(l, mu) && mu.size() - l.size() <= b) expect_r.insert(l);
      for (const auto& l : remove_strips(mu, b)) got_r.insert(l);
      EXPECT_EQ(got_r, expect_r);
    }
  }
}

TEST(EncodePhi, HandExample) {
  Box u(1, 1, 2, 2);
  auto M = grid(u, {1, 2, 3, 4});
  auto phi = encode_phi<MaxPlusInt>(M, u);
  EXPECT_EQ(phi(1, 2), 4);
  EXPECT_EQ(phi(2, 2), 4);
  EXPECT_EQ(phi(2, 1), 2);
  EXPECT_FALSE(phi.in_support({1, 1}));
  EXPECT_EQ(single_partition<MaxPlusInt>(M, u).get(), 8);
  auto e = project_endpoint(u, Endpoint{u});
  EXPECT_EQ(e, (Endpoint{Box(1, 2, 2, 2)}));
  EXPECT_EQ(multi_partition<MaxPlusInt>(phi, e).get(), 8);
}

TEST(EncodePhi, ZeroGridAndWrongMode) {
  Box u(0, 0, 3, 2);
  auto M = grid(u, std::vector<std::int64_t>(12, 0));
  auto phi = encode_phi<MaxPlusInt>(M, u);
  for (auto p : staircase(u)) EXPECT_EQ(phi(p), 0);
  auto f = constant_environment<double>(u, 1.0, SemiringTag::SumProduct, NumericMode::Float64);
  try {
    encode_phi<SumProductReal>(f, u);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WrongMode);
  }
}

TEST(EncodePhi, IdentityOnVbarAgainstBruteForce) {
  std::mt19937 g(31);
  for (Box u : {Box(1, 1, 3, 3), Box(0, 2, 3, 3), Box(2, 1, 3, 4)}) {
    auto fam = endpoint_family(u, EndpointFamily::Vbar);
    for (int trial = 0; trial < 20; ++trial) {
      auto M = random_int(g, u, 4);
      auto phi = encode_phi<MaxPlusInt>(M, u);
      for (const auto& e : fam) {
        auto lhs = brute_force_multi<MaxPlusInt>(M, e);
        auto rhs = brute_force_multi<MaxPlusInt>(phi, project_endpoint(u, e));
        ASSERT_EQ(lhs, rhs) << to_string(u) << " " << to_string(e);
      }
      auto R = random_rat(g, u);
      auto phir = encode_phi<SumProductExact>(R, u);
      for (const auto& e : fam) {
        auto lhs = brute_force_multi<SumProductExact>(R, e);
        auto rhs = brute_force_multi<SumProductExact>(phir, project_endpoint(u, e));
        ASSERT_EQ(lhs, rhs) << to_string(u) << " " << to_string(e);
      }
    }
  }
}

TEST(Greene, Examples) {
  Box u(1, 1, 2, 2);
  EXPECT_EQ(greene_shape(grid(u, {1, 2, 3, 4}), u), (IntegerPartition{8, 2}));
  Box b(1, 1, 3, 3);
  EXPECT_EQ(greene_shape(grid(b, {1, 0, 0, 0, 1, 0, 0, 0, 1}), b), (IntegerPartition{3}));
  // Anti-diagonal permutation: three singleton increasing chains.
  EXPECT_EQ(greene_shape(grid(b, {0, 0, 1, 0, 1, 0, 1, 0, 0}), b), (IntegerPartition{1, 1, 1}));
  EXPECT_TRUE(greene_shape(grid(b, std::vector<std::int64_t>(9, 0)), b).empty());
  EXPECT_THROW(greene_shape(grid(u, {1, -2, 3, 4}), u), error);
}

TEST(Greene, PartialSumsAreDisjointPathMaxima) {
  std::mt19937 g(8);
  Box u(1, 1, 3, 3);
  for (int t = 0; t < 15; ++t) {
    auto M = random_int(g, u, 3);
    auto shape = greene_shape(M, u);
    EXPECT_EQ(shape[0], oracle_disjoint_paths(M, u, 1));
    EXPECT_EQ(shape[0] + shape[1], oracle_disjoint_paths(M, u, 2));
  }
}

TEST(Chains, Validation) {
  EXPECT_NO_THROW(chain_from_steps(2, "LR").validate(1, 3));
  EXPECT_THROW(chain_from_steps(2, "RR").validate(1, 3), error);
  IntervalChain bad{{{1, 1}, {2, 3}}};
  EXPECT_THROW(bad.validate(1, 3), error);
  IntervalChain jump{{{1, 1}, {2, 3}, {1, 3}}};
  EXPECT_THROW(jump.validate(1, 3), error);
  EXPECT_EQ(chain_from_steps(2, "LR").first_containing(3), 3);
  EXPECT_EQ(reversed_chain(1, 3).intervals.front(), (std::pair<int, int>{3, 3}));
}

TEST(ScrambledRSK, ClassicalMatchesGreeneAndHandCase) {
  Box w(1, 1, 2, 2);
  auto M = grid(w, {1, 0, 0, 1});
  auto I = classical_chain(1, 2), J = classical_chain(1, 2);
  auto r = scrambled_rsk(M, I, J);
  EXPECT_EQ(r.phi.back(), greene_shape(M, w));
  EXPECT_EQ(r.phi, (PartitionSequence{{}, {1}, {2}}));
  EXPECT_EQ(r.psi, (PartitionSequence{{}, {1}, {2}}));
  EXPECT_TRUE(check_scrambled(M, I, J, r).empty());

  auto Jr = reversed_chain(1, 2);
  auto s = scrambled_rsk(M, I, Jr);
  // Top row alone holds one unit; both rows give the diagonal chain of two.
  EXPECT_EQ(s.psi, (PartitionSequence{{}, {1}, {2}}));
  EXPECT_TRUE(check_scrambled(M, I, Jr, s).empty());

  auto A = grid(w, {0, 1, 1, 0});
  auto t = scrambled_rsk(A, I, Jr);
  EXPECT_EQ(t.phi, (PartitionSequence{{}, {1}, {1, 1}}));
  EXPECT_EQ(t.psi, (PartitionSequence{{}, {1}, {1, 1}}));

  auto Z = grid(w, {0, 0, 0, 0});
  auto z = scrambled_rsk(Z, I, J);
  for (const auto& p : z.phi) EXPECT_TRUE(p.empty());
}

TEST(ScrambledRSK, BijectionSmall) {
  for (std::string si : {"R", "L"})
    for (std::string sj : {"R", "L"}) {
      auto I = chain_from_steps(si == "R" ? 1 : 2, si), J = chain_from_steps(sj == "R" ? 1 : 2, sj);
      auto rep = verify_scrambled_bijection(2, 2, I, J, 3);
      EXPECT_TRUE(rep.ok()) << rep.first_failure;
      EXPECT_EQ(rep.fillings, 35);
      EXPECT_EQ(rep.distinct_outputs, 35);
    }
  auto rep0 = verify_scrambled_bijection(2, 2, classical_chain(1, 2), classical_chain(1, 2), 0);
  EXPECT_EQ(rep0.fillings, 1);
  EXPECT_TRUE(rep0.ok());
}

TEST(ScrambledRSK, TableauCountsByHand) {
  // Shapes of size 2 with entries <= 2: (2) has 3 tableaux, (1,1) has 1.
  auto t = count_tableaux(2, 2);
  EXPECT_EQ(t[IntegerPartition{2}], 3);
  EXPECT_EQ(t[(IntegerPartition{1, 1})], 1);
  EXPECT_EQ(t[IntegerPartition{1}], 2);
}

TEST(Moon, Check) {
  EXPECT_TRUE(moon_check(cells_from_rows({{1, {1, 3}}, {2, {1, 2}}, {3, {1, 1}}})));
  CellSet cross = cells_from_rows({{1, {2, 3}}, {2, {1, 3}}, {3, {2, 3}}});
  EXPECT_EQ(cross.size(), 7u);
  EXPECT_TRUE(moon_check(cross));
  EXPECT_FALSE(moon_check({{0, 0}, {1, 1}}));
  EXPECT_FALSE(moon_check(cells_from_rows({{1, {1, 2}}, {2, {2, 3}}})));
  EXPECT_FALSE(moon_check({{0, 0}, {0, 2}}));
  EXPECT_TRUE(moon_check({}));
}

TEST(Moon, Exhaustion) {
  CellSet cross = cells_from_rows({{1, {2, 3}}, {2, {1, 3}}, {3, {2, 3}}});
  auto ex = box_exhaustion(cross);
  BoxExhaustion expect{{Box(1, 2, 3, 2), Box(2, 2, 3, 2), Box(2, 1, 3, 2), Box(2, 1, 3, 3), Box(3, 1, 3, 3)}};
  EXPECT_EQ(ex, expect) << to_string(ex);
  EXPECT_TRUE(check_exhaustion(cross, ex).empty());

  Box r(0, 0, 2, 1);
  auto er = box_exhaustion(cells(r));
  EXPECT_TRUE(check_exhaustion(cells(r), er).empty());
  EXPECT_EQ(er.boxes.front(), Box(0, 0, 2, 0));
  EXPECT_EQ(er.boxes.back(), Box(2, 0, 2, 1));

  EXPECT_TRUE(box_exhaustion({}).boxes.empty());
  EXPECT_THROW(box_exhaustion({{0, 0}, {1, 1}}), error);
}

TEST(Moon, ExhaustionOnRandomMoons) {
  // Random moons: nested row intervals centred on a common column, stacked unimodally.
  std::mt19937 g(4);
  int tested = 0;
  for (int t = 0; t < 400; ++t) {
    int rows = 1 + int(g() % 5);
    std::vector<int> len(static_cast<std::size_t>(rows));
    for (auto& l : len) l = 1 + int(g() % 5);
    std::sort(len.begin(), len.end());
    std::rotate(len.begin(), len.begin() + std::ptrdiff_t(g() % std::size_t(rows)), len.end());
    std::map<int, std::pair<int, int>> m;
    for (int y = 0; y < rows; ++y) {
      int l = len[std::size_t(y)];
      int off = int(g() % 2);
      m[y] = {-(l - 1) / 2 - off * ((l - 1) % 2), -(l - 1) / 2 - off * ((l - 1) % 2) + l - 1};
    }
    CellSet s = cells_from_rows(m);
    if (!moon_check(s)) continue;
    ++tested;
    auto ex = box_exhaustion(s);
    ASSERT_TRUE(check_exhaustion(s, ex).empty()) << check_exhaustion(s, ex);
  }
  EXPECT_GT(tested, 50);
}

TEST(Moon, AllOnesFilling) {
  CellSet cross = cells_from_rows({{1, {2, 3}}, {2, {1, 3}}, {3, {2, 3}}});
  auto ex = box_exhaustion(cross);
  Box w(1, 1, 3, 3);
  auto M = grid(w, std::vector<std::int64_t>(9, 1));
  M.restrict_support(cross);
  auto seq = moon_rsk(M, ex);
  ASSERT_EQ(seq.size(), 7u);
  // Row (1,2;3,2) gives (3); dropping a column gives (2); adding row 1 gives (3,1).
  EXPECT_EQ(seq[1], (IntegerPartition{3}));
  EXPECT_EQ(seq[2], (IntegerPartition{2}));
  EXPECT_EQ(seq[3], (IntegerPartition{3, 1}));
  EXPECT_EQ(seq[4], (IntegerPartition{4, 2}));
  EXPECT_EQ(seq[5], (IntegerPartition{3}));
  EXPECT_TRUE(admissible(ex, seq));
  EXPECT_TRUE(moon_weight_identity(M, ex, seq));
}

TEST(Moon, RectangleMatchesScrambled) {
  std::mt19937 g(12);
  Box w(1, 1, 3, 2);
  for (std::string si : {"RR", "LR", "LL"})
    for (std::string sj : {"R", "L"}) {
      auto I = chain_from_steps(si == "RR" ? 1 : (si == "LR" ? 2 : 3), si);
      auto J = chain_from_steps(sj == "R" ? 1 : 2, sj);
      auto U = scrambled_exhaustion(w, I, J);
      ASSERT_TRUE(check_exhaustion(cells(w), U).empty());
      for (int t = 0; t < 10; ++t) {
        auto M = random_int(g, w, 3);
        auto r = scrambled_rsk(M, I, J);
        auto seq = moon_rsk(M, U);
        PartitionSequence expect = r.psi;
        for (std::size_t i = r.phi.size() - 1; i-- > 0;) expect.push_back(r.phi[i]);
        EXPECT_EQ(seq, expect);
      }
    }
}

TEST(Moon, BijectionSevenCells) {
  CellSet cross = cells_from_rows({{1, {2, 3}}, {2, {1, 3}}, {3, {2, 3}}});
  auto rep = verify_moon_bijection(cross, box_exhaustion(cross), 2);
  EXPECT_EQ(rep.fillings, 36);
  EXPECT_EQ(rep.distinct_outputs, 36);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
  EXPECT_EQ(rep.image_by_size, (std::vector<std::int64_t>{1, 7, 28}));
  auto rep0 = verify_moon_bijection(cross, box_exhaustion(cross), 0);
  EXPECT_EQ(rep0.fillings, 1);
  EXPECT_TRUE(rep0.ok());
}

TEST(Moon, AlternativeExhaustionStillBijective) {
  // Start from the single column-2 cell of row 1 growing upward is not a valid
  // first step, so use a different valid exhaustion of the cross.
  CellSet cross = cells_from_rows({{1, {2, 3}}, {2, {1, 3}}, {3, {2, 3}}});
  BoxExhaustion alt{{Box(1, 2, 3, 2), Box(1, 2, 2, 2), Box(2, 2, 2, 2), Box(2, 1, 2, 2), Box(2, 1, 2, 3)}};
  EXPECT_FALSE(check_exhaustion(cross, alt).empty());
  BoxExhaustion alt2{{Box(1, 2, 3, 2), Box(2, 2, 3, 2), Box(2, 2, 3, 3), Box(2, 1, 3, 3), Box(2, 1, 2, 3)}};
  ASSERT_TRUE(check_exhaustion(cross, alt2).empty()) << check_exhaustion(cross, alt2);
  auto rep = verify_moon_bijection(cross, alt2, 2);
  EXPECT_TRUE(rep.ok()) << rep.first_failure;
}

TEST(Verify, BudgetExceeded) {
  try {
    verify_scrambled_bijection(4, 4, classical_chain(1, 4), classical_chain(1, 4), 12, 1000);
    FAIL();
  } catch (const error& e) {
    EXPECT_EQ(e.code(), ErrorCode::BudgetExceeded);
  }
}
