#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "lpplab/partition.hpp"

namespace lpplab {

struct IntegerPartition {
  std::vector<std::int64_t> parts;

  IntegerPartition() = default;
  IntegerPartition(std::initializer_list<std::int64_t> p) : parts(p) { normalize(); }
  explicit IntegerPartition(std::vector<std::int64_t> p) : parts(std::move(p)) { normalize(); }

  std::int64_t size() const {
    std::int64_t s = 0;
    for (auto p : parts) s += p;
    return s;
  }
  std::size_t length() const { return parts.size(); }
  bool empty() const { return parts.empty(); }
  std::int64_t operator[](std::size_t i) const { return i < parts.size() ? parts[i] : 0; }

  bool contains(const IntegerPartition& mu) const {
    if (mu.length() > length()) return false;
    for (std::size_t i = 0; i < mu.length(); ++i)
      if (mu.parts[i] > parts[i]) return false;
    return true;
  }

  friend bool operator==(const IntegerPartition&, const IntegerPartition&) = default;
  friend auto operator<=>(const IntegerPartition&, const IntegerPartition&) = default;

 private:
  void normalize() {
    while (!parts.empty() && parts.back() == 0) parts.pop_back();
    for (std::size_t i = 0; i + 1 < parts.size(); ++i)
      if (parts[i] < parts[i + 1]) throw error(ErrorCode::InvalidParams, "partition parts must weakly decrease");
    for (auto p : parts)
      if (p < 0) throw error(ErrorCode::InvalidParams, "partition parts must be nonnegative");
  }
};

inline std::string to_string(const IntegerPartition& p) {
  std::string s = "(";
  for (std::size_t i = 0; i < p.parts.size(); ++i) s += (i ? "," : "") + std::to_string(p.parts[i]);
  return s + ")";
}

using PartitionSequence = std::vector<IntegerPartition>;

inline std::string to_string(const PartitionSequence& s) {
  std::string r = "[";
  for (std::size_t i = 0; i < s.size(); ++i) r += (i ? "," : "") + to_string(s[i]);
  return r + "]";
}

// lambda / mu has at most one cell per column: lambda_1 >= mu_1 >= lambda_2 >= ...
inline bool is_horizontal_strip(const IntegerPartition& mu, const IntegerPartition& lambda) {
  if (!lambda.contains(mu)) return false;
  for (std::size_t i = 0; i + 1 < lambda.length(); ++i)
    if (lambda[i + 1] > mu[i]) return false;
  return true;
}

// Cell count of the symmetric difference of two Young diagrams.
inline std::int64_t symmetric_difference(const IntegerPartition& a, const IntegerPartition& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < std::max(a.length(), b.length()); ++i) s += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
  return s;
}

// All lambda containing mu with lambda / mu a horizontal strip of at most `budget` cells.
inline std::vector<IntegerPartition> add_strips(const IntegerPartition& mu, std::int64_t budget) {
  std::vector<IntegerPartition> out;
  std::vector<std::int64_t> cur(mu.length() + 1, 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t r, std::int64_t left) {
    if (r == cur.size()) {
      out.push_back(IntegerPartition(cur));
      return;
    }
    std::int64_t lo = mu[r];
    std::int64_t hi = r == 0 ? lo + left : std::min(mu[r - 1], lo + left);
    for (std::int64_t v = lo; v <= hi; ++v) {
      cur[r] = v;
      rec(r + 1, left - (v - lo));
    }
  };
  rec(0, budget);
  return out;
}

// All mu inside lambda with lambda / mu a horizontal strip of at most `budget` cells.
inline std::vector<IntegerPartition> remove_strips(const IntegerPartition& lambda, std::int64_t budget) {
  std::vector<IntegerPartition> out;
  std::vector<std::int64_t> cur(lambda.length(), 0);
  std::function<void(std::size_t, std::int64_t)> rec = [&](std::size_t r, std::int64_t left) {
    if (r == cur.size()) {
      out.push_back(IntegerPartition(cur));
      return;
    }
    std::int64_t hi = lambda[r];
    std::int64_t lo = std::max(lambda[r + 1], hi - left);
    for (std::int64_t v = lo; v <= hi; ++v) {
      cur[r] = v;
      rec(r + 1, left - (hi - v));
    }
  };
  rec(0, budget);
  return out;
}

// ---------------------------------------------------------------------------
// Encoding map onto the staircase T_u.

inline bool in_staircase(const Box& u, Point p) { return u.contains(p) && p.x + p.y >= u.lo.x + u.hi.y; }

inline CellSet staircase(const Box& u) {
  CellSet s;
  for (auto p : cells(u))
    if (in_staircase(u, p)) s.insert(p);
  return s;
}

// Moves a bottom-row start point up onto the lower boundary of T_u.
inline Point project_to_staircase(const Box& u, Point p) {
  if (p.y != u.lo.y || p.x < u.lo.x || p.x > u.hi.x)
    throw error(ErrorCode::InvalidParams, "projection is defined on the bottom row of the box");
  return {p.x, std::max(u.lo.y, u.lo.x + u.hi.y - p.x)};
}

inline Endpoint project_endpoint(const Box& u, const Endpoint& e) {
  Endpoint r;
  for (const auto& b : e.parts) r.parts.push_back(Box(project_to_staircase(u, b.lo), b.hi));
  return r;
}

template <class S>
Environment<typename S::scalar> encode_phi(const Environment<typename S::scalar>& env, const Box& u) {
  using T = typename S::scalar;
  using V = typename S::value;
  if (env.mode() == NumericMode::Float64)
    throw error(ErrorCode::WrongMode, "the encoding map is computed in exact arithmetic only");
  env.require_semiring(S::tag);
  if (!env.window().contains(u)) throw error(ErrorCode::OutOfWindow, "box outside the environment window");

  // Z(u_i^j) for u_i = (lo; (i, hi.y)); index j = 0 is the unit.
  std::map<std::pair<int, int>, V> z;
  auto Z = [&](int i, int j) -> V {
    if (j == 0) return S::one();
    auto key = std::make_pair(i, j);
    auto it = z.find(key);
    if (it != z.end()) return it->second;
    V v = multi_partition<S>(env, diagonal_endpoint(Box(u.lo, {i, u.hi.y}), j));
    z.emplace(key, v);
    return v;
  };
  auto scalar = [](const V& v) -> T {
    if constexpr (S::tag == SemiringTag::MaxPlus)
      return v.get();
    else
      return v;
  };

  std::vector<T> vals(std::size_t(u.area()), T(0));
  Environment<T> out(u, vals, env.semiring(), env.mode());
  for (int i = u.lo.x; i <= u.hi.x; ++i)
    for (int j = 0; j + u.lo.x <= i && j <= u.hi.y - u.lo.y; ++j) {
      V v;
      if (j + u.lo.x == i)
        v = S::divide(Z(i, j + 1), Z(i, j));
      else
        v = S::divide(S::times(Z(i, j + 1), Z(i - 1, j)), S::times(Z(i - 1, j + 1), Z(i, j)));
      out.mutable_values()[out.index({i, u.hi.y - j})] = scalar(v);
    }
  out.restrict_support(staircase(u));
  return out;
}

// ---------------------------------------------------------------------------
// Greene shape and the growth maps.

inline IntegerPartition profile_to_partition(const std::vector<Tropical<std::int64_t>>& d) {
  std::vector<std::int64_t> parts;
  for (const auto& v : d) parts.push_back(v.get());
  return IntegerPartition(parts);
}

inline void require_nonnegative(const Environment<std::int64_t>& env, const Box& u) {
  for (auto p : cells(u))
    if (env.in_support(p) && env(p) < 0)
      throw error(ErrorCode::NegativeWeight, "Greene shape needs nonnegative weights");
}

inline IntegerPartition greene_shape(const Environment<std::int64_t>& env, const Box& u) {
  env.require_semiring(SemiringTag::MaxPlus);
  require_nonnegative(env, u);
  return profile_to_partition(delta_profile<MaxPlusInt>(env, u));
}

// Nested intervals I_1 c ... c I_n with |I_i| = i.
struct IntervalChain {
  std::vector<std::pair<int, int>> intervals;

  std::size_t size() const { return intervals.size(); }

  void validate(int lo, int n) const {
    if (int(intervals.size()) != n) throw error(ErrorCode::InvalidChain, "chain length differs from the side length");
    for (int i = 0; i < n; ++i) {
      auto [a, b] = intervals[std::size_t(i)];
      if (b - a + 1 != i + 1) throw error(ErrorCode::InvalidChain, "interval " + std::to_string(i + 1) + " has the wrong size");
      if (a < lo || b > lo + n - 1) throw error(ErrorCode::InvalidChain, "interval leaves the side range");
      if (i > 0) {
        auto [pa, pb] = intervals[std::size_t(i - 1)];
        if (a > pa || b < pb) throw error(ErrorCode::InvalidChain, "intervals are not nested");
      }
    }
  }

  // Smallest index (1-based) whose interval contains k.
  int first_containing(int k) const {
    for (std::size_t i = 0; i < intervals.size(); ++i)
      if (intervals[i].first <= k && k <= intervals[i].second) return int(i) + 1;
    return 0;
  }
};

// Starts at `first` and extends by one to the left ('L') or right ('R') per step.
inline IntervalChain chain_from_steps(int first, const std::string& steps) {
  IntervalChain c;
  int a = first, b = first;
  c.intervals.push_back({a, b});
  for (char s : steps) {
    if (s == 'L')
      --a;
    else if (s == 'R')
      ++b;
    else
      throw error(ErrorCode::InvalidChain, std::string("unknown chain step '") + s + "'");
    c.intervals.push_back({a, b});
  }
  return c;
}

inline IntervalChain classical_chain(int lo, int n) { return chain_from_steps(lo, std::string(std::size_t(n - 1), 'R')); }
inline IntervalChain reversed_chain(int lo, int n) {
  return chain_from_steps(lo + n - 1, std::string(std::size_t(n - 1), 'L'));
}

struct ScrambledRSK {
  PartitionSequence phi;  // column chain I
  PartitionSequence psi;  // row chain J
  friend bool operator==(const ScrambledRSK&, const ScrambledRSK&) = default;
};

// The environment window is the n x m box; I chains its columns, J its rows.
inline ScrambledRSK scrambled_rsk(const Environment<std::int64_t>& env, const IntervalChain& I,
                                  const IntervalChain& J) {
  const Box& w = env.window();
  I.validate(w.lo.x, w.width());
  J.validate(w.lo.y, w.height());
  env.require_semiring(SemiringTag::MaxPlus);
  require_nonnegative(env, w);
  ScrambledRSK r;
  r.phi.push_back({});
  for (auto [a, b] : I.intervals) r.phi.push_back(greene_shape(env, Box(a, w.lo.y, b, w.hi.y)));
  r.psi.push_back({});
  for (auto [a, b] : J.intervals) r.psi.push_back(greene_shape(env, Box(w.lo.x, a, w.hi.x, b)));
  return r;
}

// Empty string when the strip and weight identities hold, else a description.
inline std::string check_scrambled(const Environment<std::int64_t>& env, const IntervalChain& I,
                                   const IntervalChain& J, const ScrambledRSK& r) {
  const Box& w = env.window();
  for (const auto* seq : {&r.phi, &r.psi})
    for (std::size_t i = 0; i + 1 < seq->size(); ++i)
      if (!is_horizontal_strip((*seq)[i], (*seq)[i + 1])) return "consecutive shapes do not differ by a horizontal strip";
  if (r.phi.back() != r.psi.back()) return "final shapes differ";
  for (int x = w.lo.x; x <= w.hi.x; ++x) {
    std::int64_t s = 0;
    for (int y = w.lo.y; y <= w.hi.y; ++y) s += env(x, y);
    int k = I.first_containing(x);
    if (r.phi[std::size_t(k)].size() - r.phi[std::size_t(k - 1)].size() != s) return "column sum identity fails";
  }
  for (int y = w.lo.y; y <= w.hi.y; ++y) {
    std::int64_t s = 0;
    for (int x = w.lo.x; x <= w.hi.x; ++x) s += env(x, y);
    int k = J.first_containing(y);
    if (r.psi[std::size_t(k)].size() - r.psi[std::size_t(k - 1)].size() != s) return "row sum identity fails";
  }
  return {};
}

// ---------------------------------------------------------------------------
// Moon polyominoes.

namespace detail {

inline std::map<int, std::set<int>> sections(const CellSet& s, bool rows) {
  std::map<int, std::set<int>> m;
  for (auto p : s) {
    if (rows)
      m[p.y].insert(p.x);
    else
      m[p.x].insert(p.y);
  }
  return m;
}

inline bool is_interval(const std::set<int>& s) { return s.empty() || *s.rbegin() - *s.begin() + 1 == int(s.size()); }

inline bool nested(const std::set<int>& a, const std::set<int>& b) {
  return std::includes(a.begin(), a.end(), b.begin(), b.end()) ||
         std::includes(b.begin(), b.end(), a.begin(), a.end());
}

}  // namespace detail

inline bool moon_check(const CellSet& s) {
  for (bool rows : {true, false}) {
    auto sec = detail::sections(s, rows);
    for (const auto& [k, v] : sec)
      if (!detail::is_interval(v)) return false;
    for (auto a = sec.begin(); a != sec.end(); ++a)
      for (auto b = std::next(a); b != sec.end(); ++b)
        if (!detail::nested(a->second, b->second)) return false;
  }
  return true;
}

// Cells from rows given as inclusive column intervals, keyed by row.
inline CellSet cells_from_rows(const std::map<int, std::pair<int, int>>& rows) {
  CellSet s;
  for (const auto& [y, r] : rows)
    for (int x = r.first; x <= r.second; ++x) s.insert({x, y});
  return s;
}

// u_1..u_k; the empty boxes at both ends are implicit.
struct BoxExhaustion {
  std::vector<Box> boxes;
  friend bool operator==(const BoxExhaustion&, const BoxExhaustion&) = default;
};

inline std::string to_string(const BoxExhaustion& u) {
  std::string s = "(empty";
  for (const auto& b : u.boxes) s += "," + to_string(b);
  return s + ",empty)";
}

inline bool adds_row(const Box& a, const Box& b) {
  return a.lo.x == b.lo.x && a.hi.x == b.hi.x &&
         ((b.lo.y == a.lo.y - 1 && b.hi.y == a.hi.y) || (b.lo.y == a.lo.y && b.hi.y == a.hi.y + 1));
}

inline bool removes_column(const Box& a, const Box& b) {
  return a.lo.y == b.lo.y && a.hi.y == b.hi.y &&
         ((b.lo.x == a.lo.x + 1 && b.hi.x == a.hi.x) || (b.lo.x == a.lo.x && b.hi.x == a.hi.x - 1));
}

inline std::string check_exhaustion(const CellSet& s, const BoxExhaustion& u) {
  if (u.boxes.empty()) return s.empty() ? std::string() : "empty exhaustion of a nonempty set";
  if (u.boxes.front().height() != 1) return "first box is not a single row";
  if (u.boxes.back().width() != 1) return "last box is not a single column";
  for (std::size_t i = 0; i + 1 < u.boxes.size(); ++i)
    if (!adds_row(u.boxes[i], u.boxes[i + 1]) && !removes_column(u.boxes[i], u.boxes[i + 1]))
      return "step " + std::to_string(i + 1) + " neither adds a row nor removes a column";
  if (cells(u.boxes) != s) return "boxes do not cover the set exactly";
  return {};
}

inline std::vector<Box> maximal_boxes(const CellSet& s) {
  auto rows = detail::sections(s, true);
  std::vector<Box> all;
  for (auto a = rows.begin(); a != rows.end(); ++a) {
    int lo = *a->second.begin(), hi = *a->second.rbegin();
    for (auto b = a; b != rows.end(); ++b) {
      if (b != a && b->first != std::prev(b)->first + 1) break;
      lo = std::max(lo, *b->second.begin());
      hi = std::min(hi, *b->second.rbegin());
      if (lo > hi) break;
      all.push_back(Box(lo, a->first, hi, b->first));
    }
  }
  std::vector<Box> out;
  for (const auto& u : all) {
    bool maximal = true;
    for (const auto& v : all)
      if (v != u && v.contains(u)) maximal = false;
    if (maximal) out.push_back(u);
  }
  std::sort(out.begin(), out.end(), [](const Box& a, const Box& b) { return a.width() > b.width(); });
  return out;
}

// Maximal boxes ordered by horizontal crossing, joined by removing columns
// (left first) and then adding rows (below first).
inline BoxExhaustion box_exhaustion(const CellSet& s) {
  if (!moon_check(s)) throw error(ErrorCode::NotMoon, "cell set is not a moon polyomino");
  BoxExhaustion ex;
  if (s.empty()) return ex;
  auto hat = maximal_boxes(s);
  for (std::size_t i = 0; i + 1 < hat.size(); ++i)
    if (!in_H(hat[i], hat[i + 1])) throw error(ErrorCode::NotMoon, "maximal boxes do not cross");
  auto& b = ex.boxes;
  Box cur(hat[0].lo.x, hat[0].lo.y, hat[0].hi.x, hat[0].lo.y);
  b.push_back(cur);
  while (cur.hi.y < hat[0].hi.y) b.push_back(cur = Box(cur.lo.x, cur.lo.y, cur.hi.x, cur.hi.y + 1));
  for (std::size_t i = 1; i < hat.size(); ++i) {
    const Box& t = hat[i];
    while (cur.lo.x < t.lo.x) b.push_back(cur = Box(cur.lo.x + 1, cur.lo.y, cur.hi.x, cur.hi.y));
    while (cur.hi.x > t.hi.x) b.push_back(cur = Box(cur.lo.x, cur.lo.y, cur.hi.x - 1, cur.hi.y));
    while (cur.lo.y > t.lo.y) b.push_back(cur = Box(cur.lo.x, cur.lo.y - 1, cur.hi.x, cur.hi.y));
    while (cur.hi.y < t.hi.y) b.push_back(cur = Box(cur.lo.x, cur.lo.y, cur.hi.x, cur.hi.y + 1));
  }
  while (cur.lo.x < cur.hi.x) b.push_back(cur = Box(cur.lo.x + 1, cur.lo.y, cur.hi.x, cur.hi.y));
  return ex;
}

// The exhaustion of a rectangle read off a pair of interval chains:
// row growth along J, then column shrinking along I in reverse.
inline BoxExhaustion scrambled_exhaustion(const Box& w, const IntervalChain& I, const IntervalChain& J) {
  I.validate(w.lo.x, w.width());
  J.validate(w.lo.y, w.height());
  BoxExhaustion ex;
  for (auto [a, b] : J.intervals) ex.boxes.push_back(Box(w.lo.x, a, w.hi.x, b));
  for (std::size_t i = I.size() - 1; i-- > 0;) ex.boxes.push_back(Box(I.intervals[i].first, w.lo.y, I.intervals[i].second, w.hi.y));
  return ex;
}

inline PartitionSequence moon_rsk(const Environment<std::int64_t>& env, const BoxExhaustion& u) {
  for (const auto& b : u.boxes)
    if (!env.window().contains(b)) throw error(ErrorCode::ShapeMismatch, "exhaustion box outside the filling window");
  PartitionSequence seq{{}};
  for (const auto& b : u.boxes) seq.push_back(greene_shape(env, b));
  seq.push_back({});
  return seq;
}

// Strip admissibility of a sequence against the step types of an exhaustion.
inline bool admissible(const BoxExhaustion& u, const PartitionSequence& seq) {
  if (seq.size() != u.boxes.size() + 2 || !seq.front().empty() || !seq.back().empty()) return false;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    bool grows = i == 0 || (i < u.boxes.size() && adds_row(u.boxes[i - 1], u.boxes[i]));
    if (grows ? !is_horizontal_strip(seq[i], seq[i + 1]) : !is_horizontal_strip(seq[i + 1], seq[i])) return false;
  }
  return true;
}

inline bool moon_weight_identity(const Environment<std::int64_t>& env, const BoxExhaustion& u,
                                 const PartitionSequence& seq) {
  std::vector<CellSet> cs{{}};
  for (const auto& b : u.boxes) cs.push_back(cells(b));
  cs.push_back({});
  for (std::size_t i = 0; i + 1 < cs.size(); ++i) {
    std::int64_t w = 0;
    for (auto p : cs[i])
      if (!cs[i + 1].count(p)) w += env(p);
    for (auto p : cs[i + 1])
      if (!cs[i].count(p)) w += env(p);
    if (symmetric_difference(seq[i], seq[i + 1]) != w) return false;
  }
  return true;
}

// Number of admissible sequences for the exhaustion, by half their total
// symmetric-difference size, up to `C`.
inline std::vector<std::int64_t> count_admissible(const BoxExhaustion& u, int C) {
  std::vector<std::int64_t> out(std::size_t(C + 1), 0);
  if (u.boxes.empty()) {
    out[0] = 1;
    return out;
  }
  // state: (partition, total symmetric difference so far)
  std::map<std::pair<IntegerPartition, std::int64_t>, std::int64_t> cur{{{IntegerPartition{}, 0}, 1}};
  const std::int64_t cap = 2 * std::int64_t(C);
  std::size_t k = u.boxes.size();
  for (std::size_t i = 0; i <= k; ++i) {
    bool grows = i == 0 || (i < k && adds_row(u.boxes[i - 1], u.boxes[i]));
    std::map<std::pair<IntegerPartition, std::int64_t>, std::int64_t> nxt;
    for (const auto& [st, n] : cur) {
      const auto& [lam, tot] = st;
      auto succ = grows ? add_strips(lam, cap - tot) : remove_strips(lam, cap - tot);
      for (const auto& mu : succ) {
        if (i == k && !mu.empty()) continue;
        nxt[{mu, tot + symmetric_difference(lam, mu)}] += n;
      }
    }
    cur = std::move(nxt);
  }
  for (const auto& [st, n] : cur)
    if (st.second % 2 == 0) out[std::size_t(st.second / 2)] += n;
  return out;
}

// Semistandard tableaux of each shape with entries at most n, as strip chains.
inline std::map<IntegerPartition, std::int64_t> count_tableaux(int n, int C) {
  std::map<IntegerPartition, std::int64_t> cur{{IntegerPartition{}, 1}};
  for (int i = 0; i < n; ++i) {
    std::map<IntegerPartition, std::int64_t> nxt;
    for (const auto& [lam, c] : cur)
      for (const auto& mu : add_strips(lam, C - lam.size())) nxt[mu] += c;
    cur = std::move(nxt);
  }
  return cur;
}

struct BijectionReport {
  std::int64_t fillings = 0;
  std::int64_t distinct_outputs = 0;
  bool injective = true;
  bool admissible = true;
  bool weight_identities = true;
  std::vector<std::int64_t> fillings_by_size;
  std::vector<std::int64_t> outputs_by_size;
  std::vector<std::int64_t> image_by_size;  // independent count of the target set
  std::string first_failure;

  bool image_matches() const { return outputs_by_size == image_by_size; }
  bool ok() const { return injective && admissible && weight_identities && image_matches(); }
};

inline constexpr std::int64_t kDefaultFillingBudget = 5'000'000;

inline void check_filling_budget(std::size_t cells_n, int C, std::int64_t budget) {
  // Number of fillings with sum <= C is binom(C + A, A).
  long double n = 1;
  for (int i = 1; i <= C; ++i) n = n * (long double)(cells_n + std::size_t(i)) / i;
  if (n > (long double)budget)
    throw error(ErrorCode::BudgetExceeded, "enumeration of " + std::to_string((long long)n) + " fillings exceeds budget");
}

inline BijectionReport verify_moon_bijection(const CellSet& s, const BoxExhaustion& u, int C,
                                             std::int64_t budget = kDefaultFillingBudget) {
  if (!moon_check(s)) throw error(ErrorCode::NotMoon, "cell set is not a moon polyomino");
  if (auto bad = check_exhaustion(s, u); !bad.empty()) throw error(ErrorCode::InvalidParams, bad);
  check_filling_budget(s.size(), C, budget);
  BijectionReport r;
  r.fillings_by_size.assign(std::size_t(C + 1), 0);
  r.outputs_by_size.assign(std::size_t(C + 1), 0);
  std::set<PartitionSequence> seen;
  Box window = s.empty() ? Box(0, 0, 0, 0) : bounding_box(s);
  CellSet active = s;
  for_each_environment(window, active, C, [&](const Environment<std::int64_t>& env, int c) {
    ++r.fillings;
    ++r.fillings_by_size[std::size_t(c)];
    auto seq = moon_rsk(env, u);
    if (!seen.insert(seq).second) {
      r.injective = false;
      if (r.first_failure.empty()) r.first_failure = "repeated output " + to_string(seq);
    } else {
      ++r.outputs_by_size[std::size_t(c)];
    }
    if (!admissible(u, seq)) {
      r.admissible = false;
      if (r.first_failure.empty()) r.first_failure = "inadmissible output " + to_string(seq);
    }
    if (!moon_weight_identity(env, u, seq)) {
      r.weight_identities = false;
      if (r.first_failure.empty()) r.first_failure = "weight identity fails for " + to_string(seq);
    }
  });
  r.distinct_outputs = std::int64_t(seen.size());
  r.image_by_size = count_admissible(u, C);
  return r;
}

inline BijectionReport verify_scrambled_bijection(int n, int m, const IntervalChain& I, const IntervalChain& J,
                                                  int C, std::int64_t budget = kDefaultFillingBudget) {
  Box w(1, 1, n, m);
  I.validate(1, n);
  J.validate(1, m);
  check_filling_budget(std::size_t(n) * std::size_t(m), C, budget);
  BijectionReport r;
  r.fillings_by_size.assign(std::size_t(C + 1), 0);
  r.outputs_by_size.assign(std::size_t(C + 1), 0);
  std::set<std::pair<PartitionSequence, PartitionSequence>> seen;
  for_each_environment(w, cells(w), C, [&](const Environment<std::int64_t>& env, int c) {
    ++r.fillings;
    ++r.fillings_by_size[std::size_t(c)];
    auto out = scrambled_rsk(env, I, J);
    if (!seen.insert({out.phi, out.psi}).second) {
      r.injective = false;
      if (r.first_failure.empty()) r.first_failure = "repeated output " + to_string(out.phi) + " " + to_string(out.psi);
    } else {
      ++r.outputs_by_size[std::size_t(c)];
    }
    auto bad = check_scrambled(env, I, J, out);
    if (!bad.empty()) {
      if (bad.find("identity") != std::string::npos)
        r.weight_identities = false;
      else
        r.admissible = false;
      if (r.first_failure.empty()) r.first_failure = bad;
    }
  });
  r.distinct_outputs = std::int64_t(seen.size());
  r.image_by_size.assign(std::size_t(C + 1), 0);
  auto tn = count_tableaux(n, C), tm = count_tableaux(m, C);
  for (const auto& [lam, a] : tn) {
    auto it = tm.find(lam);
    if (it != tm.end()) r.image_by_size[std::size_t(lam.size())] += a * it->second;
  }
  return r;
}

}  // namespace lpplab
