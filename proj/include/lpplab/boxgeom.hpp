#pragma once

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lpplab/geometry.hpp"

namespace lpplab {

using BoxSet = std::vector<Box>;

struct Block {
  BoxSet boxes;
  Point offset{};
};

// Translates each block of domain boxes by its own offset.
class PiecewiseTranslation {
 public:
  PiecewiseTranslation() = default;
  explicit PiecewiseTranslation(std::vector<Block> blocks) : blocks_(std::move(blocks)) {
    std::map<Box, int> seen;
    std::map<Box, Box> images;
    for (std::size_t i = 0; i < blocks_.size(); ++i) {
      for (const auto& b : blocks_[i].boxes) {
        if (!b.valid()) throw error(ErrorCode::InvalidParams, "invalid box " + to_string(b));
        auto [it, fresh] = seen.emplace(b, int(i));
        if (!fresh && it->second != int(i))
          throw error(ErrorCode::InvalidParams, "box " + to_string(b) + " appears in two blocks");
        Box img = translate(b, blocks_[i].offset);
        for (const auto& [d, im] : images)
          if (im == img && d != b)
            throw error(ErrorCode::InvalidParams, "map is not injective at " + to_string(img));
        images.emplace(b, img);
      }
    }
    map_ = std::move(images);
  }

  const std::vector<Block>& blocks() const { return blocks_; }

  BoxSet domain() const {
    BoxSet d;
    for (const auto& [b, _] : map_) d.push_back(b);
    return d;
  }

  BoxSet image() const {
    BoxSet r;
    for (const auto& [_, im] : map_) r.push_back(im);
    return r;
  }

  bool contains(const Box& b) const { return map_.count(b) > 0; }

  Box operator()(const Box& b) const {
    auto it = map_.find(b);
    if (it == map_.end()) throw error(ErrorCode::InvalidParams, "box outside map domain");
    return it->second;
  }

  // Domain boxes in block order, duplicates removed.
  BoxSet ordered_domain() const {
    BoxSet d;
    for (const auto& bl : blocks_)
      for (const auto& b : bl.boxes)
        if (std::find(d.begin(), d.end(), b) == d.end()) d.push_back(b);
    return d;
  }

 private:
  std::vector<Block> blocks_;
  std::map<Box, Box> map_;
};

struct CrossingPreservation {
  bool horizontal_ok = true;
  bool disjoint_ok = true;
};

inline CrossingPreservation preserves_crossings(const PiecewiseTranslation& f) {
  CrossingPreservation r;
  BoxSet d = f.domain();
  for (const auto& u : d) {
    Box fu = f(u);
    for (const auto& v : d) {
      Box fv = f(v);
      if (in_H(u, v) != in_H(fu, fv)) r.horizontal_ok = false;
      if (in_N(u, v) != in_N(fu, fv)) r.disjoint_ok = false;
    }
  }
  return r;
}

using PairRelation = std::function<bool(const Box&, const Box&)>;

inline bool all_pairs(const BoxSet& a, const BoxSet& b, const PairRelation& rel) {
  for (const auto& x : a)
    for (const auto& y : b)
      if (!rel(x, y)) return false;
  return true;
}

inline bool H_or_N(const Box& a, const Box& b) { return in_H(a, b) || in_N(a, b); }
inline bool V_or_N(const Box& a, const Box& b) { return in_V(a, b) || in_N(a, b); }

inline BoxSet concat(const BoxSet& a, const BoxSet& b) {
  BoxSet r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline BoxSet translated(const BoxSet& s, Point c) {
  BoxSet r;
  for (const auto& b : s) r.push_back(translate(b, c));
  return r;
}

// Components of the graph joining boxes whose cell sets meet.
inline std::vector<BoxSet> connected_components(const BoxSet& s) {
  std::vector<int> comp(s.size(), -1);
  std::vector<BoxSet> out;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (comp[i] >= 0) continue;
    int id = int(out.size());
    out.emplace_back();
    std::vector<std::size_t> stack{i};
    comp[i] = id;
    while (!stack.empty()) {
      auto k = stack.back();
      stack.pop_back();
      out[id].push_back(s[k]);
      for (std::size_t j = 0; j < s.size(); ++j)
        if (comp[j] < 0 && !in_N(s[k], s[j])) {
          comp[j] = id;
          stack.push_back(j);
        }
    }
  }
  return out;
}

inline bool is_connected(const BoxSet& s) { return connected_components(s).size() <= 1; }

struct MarkovTriple {
  BoxSet E1, E2, F1, F2, G1, G2;
};

inline bool is_markov_triple(const MarkovTriple& t) {
  BoxSet E = concat(t.E1, t.E2), F = concat(t.F1, t.F2), G = concat(t.G1, t.G2);
  CellSet cf = cells(F);
  if (!is_subset(set_intersection(cells(E), cells(G)), cf)) return false;

  const BoxSet* Es[2] = {&t.E1, &t.E2};
  const BoxSet* Fs[2] = {&t.F1, &t.F2};
  const BoxSet* Gs[2] = {&t.G1, &t.G2};
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      if (i == j) continue;
      if (!all_pairs(*Es[i], *Fs[j], in_N)) return false;
      if (!all_pairs(*Fs[i], *Gs[j], in_N)) return false;
      if (!all_pairs(*Gs[j], *Es[i], in_N)) return false;
    }
  for (std::size_t a = 0; a < F.size(); ++a)
    for (std::size_t b = a + 1; b < F.size(); ++b)
      if (F[a] != F[b] && !in_N(F[a], F[b])) return false;

  return all_pairs(t.E1, t.F1, H_or_N) && all_pairs(t.F1, t.G1, H_or_N) &&
         all_pairs(t.E2, t.F2, V_or_N) && all_pairs(t.F2, t.G2, V_or_N);
}

struct MarkovQuadruple {
  BoxSet E1, E2, F1, F2, Fp1, Fp2, G1, G2;
};

inline bool is_markov_quadruple(const MarkovQuadruple& q) {
  if (!is_markov_triple({q.E1, q.E2, q.F1, q.F2, q.G1, q.G2})) return false;
  if (!is_markov_triple({q.E1, q.E2, q.Fp1, q.Fp2, q.G1, q.G2})) return false;
  if (!all_pairs(q.F1, q.Fp1, H_or_N) || !all_pairs(q.F2, q.Fp2, V_or_N)) return false;
  if (!all_pairs(q.F1, q.Fp2, in_N) || !all_pairs(q.F2, q.Fp1, in_N)) return false;
  CellSet cE = cells(concat(q.E1, q.E2)), cF = cells(concat(q.F1, q.F2));
  CellSet cFp = cells(concat(q.Fp1, q.Fp2)), cG = cells(concat(q.G1, q.G2));
  return is_subset(set_intersection(cF, cG), cFp) && is_subset(set_intersection(cE, cFp), cF);
}

struct ConnectingSet {
  BoxSet V1;  // from horizontally crossing pairs
  BoxSet V2;  // from vertically crossing pairs
  BoxSet all() const { return concat(V1, V2); }
};

inline ConnectingSet build_connecting_set(const BoxSet& U1, const BoxSet& U2, const BoxSet& W1,
                                          const BoxSet& W2) {
  if (!all_pairs(U1, W1, H_or_N) || !all_pairs(W2, U2, H_or_N) || !all_pairs(U1, W2, in_N) ||
      !all_pairs(U2, W1, in_N))
    throw error(ErrorCode::PreconditionViolated, "partitions do not satisfy the crossing hypotheses");

  BoxSet U = concat(U1, U2), W = concat(W1, W2);
  auto crosses = [](const Box& a, const Box& b) { return in_H(a, b) || in_V(a, b); };
  auto component_of = [](const BoxSet& s, const Box& b) {
    for (auto& c : connected_components(s))
      if (std::find(c.begin(), c.end(), b) != c.end()) return c;
    return BoxSet{};
  };

  ConnectingSet out;
  for (const auto& u : U)
    for (const auto& w : W) {
      if (!crosses(u, w)) continue;
      BoxSet Gw, Gu;
      for (const auto& x : U)
        if (crosses(x, w)) Gw.push_back(x);
      for (const auto& y : W)
        if (crosses(u, y)) Gu.push_back(y);
      CellSet region = set_intersection(cells(component_of(Gw, u)), cells(component_of(Gu, w)));
      auto v = as_box(region);
      if (!v) throw error(ErrorCode::PreconditionViolated, "connecting region is not a box");
      BoxSet& dst = in_H(u, w) ? out.V1 : out.V2;
      if (std::find(dst.begin(), dst.end(), *v) == dst.end()) dst.push_back(*v);
    }

  // A box can arise from both kinds only when u == w; keep it in one part.
  for (const auto& v : out.V1) {
    auto it = std::find(out.V2.begin(), out.V2.end(), v);
    if (it != out.V2.end()) out.V2.erase(it);
  }
  if (!is_markov_triple({U1, U2, out.V1, out.V2, W1, W2}))
    throw error(ErrorCode::PreconditionViolated, "constructed set is not a Markov triple");
  return out;
}

// Reachability of u⁺ from u⁻ by up-right steps through allowed cells.
inline bool path_exists(const Box& u, const CellSet& allowed) {
  int w = u.width(), h = u.height();
  std::vector<char> r(std::size_t(w) * h, 0);
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Point p{u.lo.x + x, u.lo.y + y};
      if (!allowed.count(p)) continue;
      bool ok = (x == 0 && y == 0) || (x > 0 && r[y * w + x - 1]) || (y > 0 && r[(y - 1) * w + x]);
      r[y * w + x] = ok;
    }
  return r.back();
}

struct ValidationResult {
  bool ok = true;
  std::string violated;

  static ValidationResult pass() { return {}; }
  static ValidationResult fail(std::string why) { return {false, std::move(why)}; }
};

struct TowerStatement {
  std::vector<BoxSet> levels;
  std::vector<Point> offsets;

  PiecewiseTranslation map() const {
    std::vector<Block> b;
    for (std::size_t i = 0; i < levels.size(); ++i) b.push_back({levels[i], offsets[i]});
    return PiecewiseTranslation(b);
  }
};

inline ValidationResult validate(const TowerStatement& s) {
  if (s.levels.size() != s.offsets.size())
    return ValidationResult::fail("each level needs exactly one offset");
  for (std::size_t i = 0; i + 1 < s.levels.size(); ++i) {
    if (!all_pairs(s.levels[i], s.levels[i + 1], in_H))
      return ValidationResult::fail("consecutive levels " + std::to_string(i + 1) + "," +
                                    std::to_string(i + 2) + " do not cross horizontally");
    if (!all_pairs(translated(s.levels[i], s.offsets[i]),
                   translated(s.levels[i + 1], s.offsets[i + 1]), in_H))
      return ValidationResult::fail("translated levels " + std::to_string(i + 1) + "," +
                                    std::to_string(i + 2) + " do not cross horizontally");
  }
  try {
    if (!preserves_crossings(s.map()).horizontal_ok)
      return ValidationResult::fail("map does not preserve horizontal crossings");
  } catch (const error& e) {
    return ValidationResult::fail(e.what());
  }
  return ValidationResult::pass();
}

struct PermutationStatement {
  std::vector<BoxSet> U;
  std::vector<Point> c;
  std::vector<BoxSet> V;
  std::vector<Point> d;

  PiecewiseTranslation map() const {
    std::vector<Block> b;
    for (std::size_t i = 0; i < U.size(); ++i) b.push_back({U[i], c[i]});
    for (std::size_t j = 0; j < V.size(); ++j) b.push_back({V[j], d[j]});
    return PiecewiseTranslation(b);
  }
};

inline bool components_disjoint(const std::vector<BoxSet>& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i)
    for (std::size_t j = i + 1; j < parts.size(); ++j)
      if (!all_pairs(parts[i], parts[j], in_N)) return false;
  return true;
}

inline ValidationResult validate(const PermutationStatement& s) {
  if (s.U.size() != s.c.size() || s.V.size() != s.d.size())
    return ValidationResult::fail("each component needs exactly one offset");
  BoxSet U, V, fU, fV;
  std::vector<BoxSet> fUs, fVs;
  for (std::size_t i = 0; i < s.U.size(); ++i) {
    U = concat(U, s.U[i]);
    fUs.push_back(translated(s.U[i], s.c[i]));
    fU = concat(fU, fUs.back());
  }
  for (std::size_t j = 0; j < s.V.size(); ++j) {
    V = concat(V, s.V[j]);
    fVs.push_back(translated(s.V[j], s.d[j]));
    fV = concat(fV, fVs.back());
  }
  if (!all_pairs(U, V, in_H)) return ValidationResult::fail("some (u,v) in U x V does not cross horizontally");
  if (!components_disjoint(s.U)) return ValidationResult::fail("components of U are not pairwise disjoint");
  if (!components_disjoint(s.V)) return ValidationResult::fail("components of V are not pairwise disjoint");
  if (!all_pairs(fU, fV, in_H)) return ValidationResult::fail("translated U x V does not cross horizontally");
  if (!components_disjoint(fUs)) return ValidationResult::fail("translated components of U meet");
  if (!components_disjoint(fVs)) return ValidationResult::fail("translated components of V meet");
  try {
    auto p = preserves_crossings(s.map());
    if (!p.horizontal_ok) return ValidationResult::fail("map does not preserve horizontal crossings");
    if (!p.disjoint_ok) return ValidationResult::fail("map does not preserve disjointness");
  } catch (const error& e) {
    return ValidationResult::fail(e.what());
  }
  return ValidationResult::pass();
}

inline bool is_unit_step(Point c) {
  return (std::abs(c.x) + std::abs(c.y)) == 1;
}

struct SlideStatement {
  BoxSet U1, U2, W1, W2;
  Point c{};

  PiecewiseTranslation map() const {
    return PiecewiseTranslation({{concat(U1, U2), c}, {concat(W1, W2), {0, 0}}});
  }
};

inline ValidationResult validate(const SlideStatement& s) {
  if (!all_pairs(s.U1, s.W1, in_H)) return ValidationResult::fail("U1 x W1 does not cross horizontally");
  if (!all_pairs(s.U2, s.W2, in_V)) return ValidationResult::fail("U2 x W2 does not cross vertically");
  if (!all_pairs(s.U1, s.W2, in_N)) return ValidationResult::fail("U1 x W2 is not disjoint");
  if (!all_pairs(s.U2, s.W1, in_N)) return ValidationResult::fail("U2 x W1 is not disjoint");
  if (!is_unit_step(s.c)) return ValidationResult::fail("slide offset is not a unit step");
  try {
    auto p = preserves_crossings(s.map());
    if (!p.horizontal_ok) return ValidationResult::fail("map does not preserve horizontal crossings");
    if (!p.disjoint_ok) return ValidationResult::fail("map does not preserve disjointness");
  } catch (const error& e) {
    return ValidationResult::fail(e.what());
  }
  return ValidationResult::pass();
}

struct ColumnTranspositionStatement {
  BoxSet Uh, Un, Wa, Wb;
  Box b;
  int k = 0;
  int l = 0;

  PiecewiseTranslation map() const {
    return PiecewiseTranslation(
        {{concat(Uh, Un), {0, 0}}, {Wa, {k, 0}}, {Wb, {l, 0}}});
  }
};

inline ValidationResult validate(const ColumnTranspositionStatement& s) {
  BoxSet W = concat(s.Wa, s.Wb);
  if (!all_pairs(s.Wa, s.Wb, in_N)) return ValidationResult::fail("Wa x Wb is not disjoint");
  if (!all_pairs(s.Un, W, in_N)) return ValidationResult::fail("Un x W is not disjoint");
  if (!all_pairs(s.Uh, W, in_H)) return ValidationResult::fail("Uh x W does not cross horizontally");
  if (!is_connected(s.Wa) || !is_connected(s.Wb)) return ValidationResult::fail("Wa or Wb is not connected");
  CellSet cb = cells(s.b);
  if (!is_subset(cells(W), cb)) return ValidationResult::fail("cells of W are not inside b");
  if (!set_intersection(cells(s.Un), cb).empty()) return ValidationResult::fail("cells of Un meet b");
  BoxSet fW = concat(translated(s.Wa, {s.k, 0}), translated(s.Wb, {s.l, 0}));
  if (!is_subset(cells(fW), cb)) return ValidationResult::fail("cells of f(W) are not inside b");
  try {
    auto p = preserves_crossings(s.map());
    if (!p.horizontal_ok) return ValidationResult::fail("map does not preserve horizontal crossings");
    if (!p.disjoint_ok) return ValidationResult::fail("map does not preserve disjointness");
  } catch (const error& e) {
    return ValidationResult::fail(e.what());
  }
  return ValidationResult::pass();
}

// Shared by the boundary-condition and disjointness-probability statements.
struct ShiftedMiddleStatement {
  BoxSet U, V, W;
  Point c{};

  PiecewiseTranslation map() const {
    return PiecewiseTranslation({{concat(U, W), {0, 0}}, {V, c}});
  }
};

inline ValidationResult validate(const ShiftedMiddleStatement& s) {
  if (!all_pairs(s.U, s.V, in_H)) return ValidationResult::fail("U x V does not cross horizontally");
  if (!all_pairs(s.V, s.W, in_H)) return ValidationResult::fail("V x W does not cross horizontally");
  BoxSet tV = translated(s.V, s.c);
  if (!all_pairs(s.U, tV, in_H)) return ValidationResult::fail("U x T_c V does not cross horizontally");
  if (!all_pairs(tV, s.W, in_H)) return ValidationResult::fail("T_c V x W does not cross horizontally");
  return ValidationResult::pass();
}

struct GeodesicStatement {
  BoxSet U, V;
  Box x, w;
  Point c{};
};

inline ValidationResult validate(const GeodesicStatement& s) {
  for (const auto& u : s.U)
    if (!in_H(u, s.w)) return ValidationResult::fail("some (u,w) does not cross horizontally");
  if (!in_H(s.w, s.x)) return ValidationResult::fail("(w,x) does not cross horizontally");
  if (!in_H(s.w, translate(s.x, s.c))) return ValidationResult::fail("(w,T_c x) does not cross horizontally");
  for (const auto& v : s.V)
    if (!in_H(s.x, v)) return ValidationResult::fail("some (x,v) does not cross horizontally");
  return ValidationResult::pass();
}

struct RestrictedStatement {
  Box u, v;
  CellSet Ru, Rv;
  Box w, x;
  Point c{};
};

inline CellSet translate_cells(const CellSet& s, Point c) {
  CellSet r;
  for (auto p : s) r.insert(p + c);
  return r;
}

inline CellSet without_column(const CellSet& s, int col, int y0, int y1) {
  CellSet r;
  for (auto p : s)
    if (!(p.x == col && p.y >= y0 && p.y <= y1)) r.insert(p);
  return r;
}

inline CellSet without_row(const CellSet& s, int row, int x0, int x1) {
  CellSet r;
  for (auto p : s)
    if (!(p.y == row && p.x >= x0 && p.x <= x1)) r.insert(p);
  return r;
}

inline ValidationResult validate(const RestrictedStatement& s) {
  if (!is_subset(s.Ru, cells(s.u)) || !is_subset(s.Rv, cells(s.v)))
    return ValidationResult::fail("restriction sets are not inside their boxes");
  if (!path_exists(s.u, s.Ru) || !path_exists(s.v, s.Rv))
    return ValidationResult::fail("no admissible path in a restriction set");
  if (!is_subset(cells(s.w), s.Ru) || !is_subset(cells(s.x), s.Rv))
    return ValidationResult::fail("w or x is not inside its restriction set");
  if (path_exists(s.u, without_column(s.Ru, s.w.lo.x, s.w.lo.y, s.w.hi.y)) ||
      path_exists(s.u, without_column(s.Ru, s.w.hi.x, s.w.lo.y, s.w.hi.y)))
    return ValidationResult::fail("some u-path misses a vertical side of w");
  if (path_exists(s.v, without_row(s.Rv, s.x.lo.y, s.x.lo.x, s.x.hi.x)) ||
      path_exists(s.v, without_row(s.Rv, s.x.hi.y, s.x.lo.x, s.x.hi.x)))
    return ValidationResult::fail("some v-path misses a horizontal side of x");
  CellSet cw = cells(s.w);
  if (!is_subset(set_intersection(s.Ru, s.Rv), cw)) return ValidationResult::fail("R_u and R_v meet outside w");
  if (!is_subset(set_intersection(s.Ru, translate_cells(s.Rv, s.c)), cw))
    return ValidationResult::fail("R_u and T_c R_v meet outside w");
  if (!in_H(s.w, s.x)) return ValidationResult::fail("(w,x) does not cross horizontally");
  if (!in_H(s.w, translate(s.x, s.c))) return ValidationResult::fail("(w,T_c x) does not cross horizontally");
  return ValidationResult::pass();
}

}  // namespace lpplab
