#pragma once

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "lpplab/environment.hpp"

namespace lpplab {

using Path = std::vector<Point>;

struct Endpoint {
  std::vector<Box> parts;

  Endpoint() = default;
  Endpoint(std::initializer_list<Box> b) : parts(b) {}
  explicit Endpoint(std::vector<Box> b) : parts(std::move(b)) {}

  std::size_t size() const { return parts.size(); }
  friend bool operator==(const Endpoint&, const Endpoint&) = default;
  friend bool operator<(const Endpoint& a, const Endpoint& b) { return a.parts < b.parts; }
};

inline std::string to_string(const Endpoint& e) {
  std::string s = "[";
  for (std::size_t i = 0; i < e.parts.size(); ++i) s += (i ? "," : "") + to_string(e.parts[i]);
  return s + "]";
}

using MaxPlusInt = MaxPlus<std::int64_t>;
using MaxPlusReal = MaxPlus<double>;
using MaxPlusExact = MaxPlus<Rational>;
using SumProductExact = SumProduct<Rational>;
using SumProductReal = SumProduct<double>;

template <class T>
double to_double(const T& v) {
  if constexpr (std::is_arithmetic_v<T>)
    return double(v);
  else
    return v.template convert_to<double>();
}

// u^k: k paths with starts shifted right along the bottom row.
inline Endpoint diagonal_endpoint(const Box& u, int k) {
  if (k < 1 || k > u.max_paths()) throw error(ErrorCode::InvalidParams, "k outside 1..min(width,height)");
  Endpoint e;
  for (int i = 0; i < k; ++i)
    e.parts.push_back(Box(u.lo + Point{i, 0}, u.hi - Point{k - 1 - i, 0}));
  return e;
}

// û^k: the same with starts shifted up the left column.
inline Endpoint diagonal_endpoint_hat(const Box& u, int k) {
  if (k < 1 || k > u.max_paths()) throw error(ErrorCode::InvalidParams, "k outside 1..min(width,height)");
  Endpoint e;
  for (int i = 0; i < k; ++i)
    e.parts.push_back(Box(u.lo + Point{0, i}, u.hi - Point{0, k - 1 - i}));
  return e;
}

namespace detail {

constexpr int kInactive = INT_MIN;

// Sweeps anti-diagonals t = x + y. Each state holds the column of every
// active path on the current diagonal; distinct columns on a diagonal are
// exactly vertex-disjointness.
template <class S, class Weight, class Allowed>
std::optional<typename S::value> frontier(const std::vector<Box>& parts, Weight&& weight,
                                          Allowed&& allowed) {
  using V = typename S::value;
  const int k = int(parts.size());
  if (k == 0) return S::one();
  std::vector<int> ts(k), te(k);
  int T0 = INT_MAX, T1 = INT_MIN;
  for (int i = 0; i < k; ++i) {
    if (!parts[i].valid()) throw error(ErrorCode::InvalidParams, "invalid box in endpoint");
    ts[i] = parts[i].lo.x + parts[i].lo.y;
    te[i] = parts[i].hi.x + parts[i].hi.y;
    T0 = std::min(T0, ts[i]);
    T1 = std::max(T1, te[i]);
  }

  auto fits = [&](int i, int t, int x) {
    const Box& b = parts[i];
    int y = t - x;
    return x >= b.lo.x && x <= b.hi.x && y >= b.lo.y && y <= b.hi.y && allowed(Point{x, y});
  };

  std::map<std::vector<int>, V> cur, nxt;
  {
    std::vector<int> st(k, kInactive);
    V w = S::one();
    bool ok = true;
    for (int i = 0; i < k && ok; ++i) {
      if (ts[i] != T0) continue;
      int x = parts[i].lo.x;
      if (!fits(i, T0, x)) ok = false;
      for (int j = 0; j < i && ok; ++j)
        if (st[j] == x) ok = false;
      if (ok) {
        st[i] = x;
        w = S::times(w, weight(Point{x, T0 - x}));
      }
    }
    if (!ok) return std::nullopt;
    cur.emplace(std::move(st), w);
  }

  std::vector<int> opts0(k), optn(k), pick(k);
  for (int t = T0; t < T1; ++t) {
    nxt.clear();
    const int t1 = t + 1;
    for (const auto& [st, val] : cur) {
      // Candidate moves per path: up keeps x, right increments x.
      for (int i = 0; i < k; ++i) {
        if (t1 < ts[i] || t1 > te[i]) {
          opts0[i] = kInactive;
          optn[i] = 1;
        } else if (t1 == ts[i]) {
          opts0[i] = parts[i].lo.x;
          optn[i] = 1;
        } else {
          opts0[i] = st[i];
          optn[i] = 2;
        }
      }
      std::fill(pick.begin(), pick.end(), 0);
      while (true) {
        std::vector<int> ns(k);
        bool ok = true;
        V w = val;
        for (int i = 0; i < k && ok; ++i) {
          if (opts0[i] == kInactive) {
            ns[i] = kInactive;
            continue;
          }
          int x = opts0[i] + pick[i];
          if (!fits(i, t1, x)) {
            ok = false;
            break;
          }
          for (int j = 0; j < i; ++j)
            if (ns[j] == x) {
              ok = false;
              break;
            }
          ns[i] = x;
          if (ok) w = S::times(w, weight(Point{x, t1 - x}));
        }
        if (ok) {
          auto it = nxt.find(ns);
          if (it == nxt.end())
            nxt.emplace(std::move(ns), std::move(w));
          else
            it->second = S::plus(it->second, w);
        }
        int i = 0;
        while (i < k && ++pick[i] >= optn[i]) pick[i++] = 0;
        if (i == k) break;
      }
    }
    std::swap(cur, nxt);
    if (cur.empty()) return std::nullopt;
  }
  V total = S::zero();
  for (const auto& [_, v] : cur) total = S::plus(total, v);
  return total;
}

template <class T>
void require_inside(const Environment<T>& env, const Box& u) {
  if (!env.window().contains(u))
    throw error(ErrorCode::OutOfWindow, "box " + to_string(u) + " not inside window " + to_string(env.window()));
}

// Prefix values Z(u⁻ → x) for every x in u, row-major.
template <class S, class T, class Allowed>
std::vector<typename S::value> prefix_table(const Environment<T>& env, const Box& u, Allowed&& allowed) {
  using V = typename S::value;
  int w = u.width(), h = u.height();
  std::vector<V> z(std::size_t(w) * h, S::zero());
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Point p{u.lo.x + x, u.lo.y + y};
      if (!env.in_support(p) || !allowed(p)) continue;
      V acc;
      if (x == 0 && y == 0)
        acc = S::one();
      else {
        acc = S::zero();
        if (x > 0) acc = S::plus(acc, z[std::size_t(y) * w + x - 1]);
        if (y > 0) acc = S::plus(acc, z[std::size_t(y - 1) * w + x]);
      }
      if (S::is_zero(acc)) continue;
      z[std::size_t(y) * w + x] = S::times(acc, S::lift(env(p)));
    }
  return z;
}

struct AllowAll {
  bool operator()(Point) const { return true; }
};

}  // namespace detail

template <class S>
typename S::value single_partition(const Environment<typename S::scalar>& env, const Box& u) {
  env.require_semiring(S::tag);
  detail::require_inside(env, u);
  return detail::prefix_table<S>(env, u, detail::AllowAll{}).back();
}

// Whether the tuple of boxes admits pairwise vertex-disjoint paths.
inline bool feasible(const Endpoint& e) {
  auto r = detail::frontier<Boolean<int>>(e.parts, [](Point) { return true; }, detail::AllowAll{});
  return r.has_value() && *r;
}

template <class S>
typename S::value multi_partition(const Environment<typename S::scalar>& env, const Endpoint& e) {
  env.require_semiring(S::tag);
  for (const auto& b : e.parts) detail::require_inside(env, b);
  auto r = detail::frontier<S>(
      e.parts, [&](Point p) { return S::lift(env(p)); }, [&](Point p) { return env.in_support(p); });
  if (!r) throw error(ErrorCode::InfeasibleEndpoint, "no disjoint path family for " + to_string(e));
  return *r;
}

namespace detail {

inline void enumerate_paths(const Box& u, const std::function<bool(Point)>& allowed,
                            const std::function<void(const Path&)>& emit) {
  Path p;
  std::function<void(Point)> go = [&](Point c) {
    if (!allowed(c)) return;
    p.push_back(c);
    if (c == u.hi)
      emit(p);
    else {
      if (c.x < u.hi.x) go({c.x + 1, c.y});
      if (c.y < u.hi.y) go({c.x, c.y + 1});
    }
    p.pop_back();
  };
  go(u.lo);
}

}  // namespace detail

// Every up-right path in u through allowed cells, in lexicographic step order
// (right before up).
inline std::vector<Path> all_paths(const Box& u, const std::function<bool(Point)>& allowed = nullptr) {
  std::vector<Path> out;
  auto ok = allowed ? allowed : [](Point) { return true; };
  detail::enumerate_paths(u, ok, [&](const Path& p) { out.push_back(p); });
  return out;
}

template <class S>
typename S::value path_weight(const Environment<typename S::scalar>& env, const Path& p) {
  auto w = S::one();
  for (auto c : p) w = S::times(w, S::lift(env(c)));
  return w;
}

inline constexpr std::uint64_t kDefaultBruteBudget = 20'000'000;

// Explicit enumeration over tuples of disjoint paths.
template <class S>
typename S::value brute_force_multi(const Environment<typename S::scalar>& env, const Endpoint& e,
                                    std::uint64_t budget = kDefaultBruteBudget) {
  using V = typename S::value;
  env.require_semiring(S::tag);
  for (const auto& b : e.parts) detail::require_inside(env, b);
  const Box& win = env.window();
  const std::size_t words = (std::size_t(win.area()) + 63) / 64;

  struct Cand {
    std::vector<std::uint64_t> bits;
    V w;
  };
  std::vector<std::vector<Cand>> cands(e.parts.size());
  double product = 1;
  for (std::size_t i = 0; i < e.parts.size(); ++i) {
    detail::enumerate_paths(
        e.parts[i], [&](Point p) { return env.in_support(p); },
        [&](const Path& p) {
          Cand c{std::vector<std::uint64_t>(words, 0), S::one()};
          for (auto q : p) {
            auto k = env.index(q);
            c.bits[k / 64] |= std::uint64_t(1) << (k % 64);
            c.w = S::times(c.w, S::lift(env(q)));
          }
          cands[i].push_back(std::move(c));
        });
    product *= double(cands[i].size());
    if (product > double(budget))
      throw error(ErrorCode::BudgetExceeded, "path tuple count exceeds budget for " + to_string(e));
  }

  bool any = false;
  V total = S::zero();
  std::vector<std::uint64_t> used(words, 0);
  std::function<void(std::size_t, const V&)> rec = [&](std::size_t i, const V& acc) {
    if (i == cands.size()) {
      total = any ? S::plus(total, acc) : acc;
      any = true;
      return;
    }
    for (const auto& c : cands[i]) {
      bool clash = false;
      for (std::size_t w = 0; w < words && !clash; ++w) clash = (used[w] & c.bits[w]) != 0;
      if (clash) continue;
      for (std::size_t w = 0; w < words; ++w) used[w] |= c.bits[w];
      rec(i + 1, S::times(acc, c.w));
      for (std::size_t w = 0; w < words; ++w) used[w] &= ~c.bits[w];
    }
  };
  rec(0, S::one());
  if (!any) throw error(ErrorCode::InfeasibleEndpoint, "no disjoint path family for " + to_string(e));
  return total;
}

// (Z(u^k) / Z(u^{k-1}))_k with Z(u^0) the unit.
template <class S>
std::vector<typename S::value> delta_profile(const Environment<typename S::scalar>& env, const Box& u) {
  std::vector<typename S::value> out;
  auto prev = S::one();
  for (int k = 1; k <= u.max_paths(); ++k) {
    auto z = multi_partition<S>(env, diagonal_endpoint(u, k));
    out.push_back(S::divide(z, prev));
    prev = z;
  }
  return out;
}

enum class EndpointFamily { D, Dhat, H, V, Hbar, Vbar };

inline EndpointFamily family_from_string(const std::string& s) {
  if (s == "D") return EndpointFamily::D;
  if (s == "Dhat") return EndpointFamily::Dhat;
  if (s == "H") return EndpointFamily::H;
  if (s == "V") return EndpointFamily::V;
  if (s == "Hbar") return EndpointFamily::Hbar;
  if (s == "Vbar") return EndpointFamily::Vbar;
  throw error(ErrorCode::InvalidParams, "unknown endpoint family '" + s + "'");
}

namespace detail {

inline void subsets(int n, int k, const std::function<void(const std::vector<int>&)>& fn) {
  std::vector<int> s(k);
  std::function<void(int, int)> go = [&](int pos, int from) {
    if (pos == k) {
      fn(s);
      return;
    }
    for (int v = from; v < n; ++v) {
      s[pos] = v;
      go(pos + 1, v + 1);
    }
  };
  go(0, 0);
}

// Tuples of sub-boxes spanning u in one direction, starts and ends matched in order.
inline std::vector<Endpoint> crossing_family(const Box& u, bool full_width) {
  std::vector<Endpoint> out;
  int n = full_width ? u.height() : u.width();
  for (int k = 1; k <= n; ++k)
    subsets(n, k, [&](const std::vector<int>& a) {
      subsets(n, k, [&](const std::vector<int>& b) {
        Endpoint e;
        for (int i = 0; i < k; ++i) {
          if (a[i] > b[i]) return;
          if (full_width)
            e.parts.push_back(Box({u.lo.x, u.lo.y + a[i]}, {u.hi.x, u.lo.y + b[i]}));
          else
            e.parts.push_back(Box({u.lo.x + a[i], u.lo.y}, {u.lo.x + b[i], u.hi.y}));
        }
        if (feasible(e)) out.push_back(std::move(e));
      });
    });
  return out;
}

}  // namespace detail

inline std::vector<Endpoint> endpoint_family(const Box& u, EndpointFamily fam) {
  std::vector<Endpoint> out;
  auto add_D = [&](const Box& b) {
    for (int k = 1; k <= b.max_paths(); ++k) {
      auto e = diagonal_endpoint(b, k);
      if (std::find(out.begin(), out.end(), e) == out.end()) out.push_back(e);
    }
  };
  switch (fam) {
    case EndpointFamily::D: add_D(u); break;
    case EndpointFamily::Dhat:
      for (int k = 1; k <= u.max_paths(); ++k) out.push_back(diagonal_endpoint_hat(u, k));
      break;
    case EndpointFamily::H:
      for (int i = 0; i <= u.hi.y - u.lo.y; ++i) add_D(Box(u.lo, u.hi - Point{0, i}));
      break;
    case EndpointFamily::V:
      for (int i = 0; i <= u.hi.x - u.lo.x; ++i) add_D(Box(u.lo, u.hi - Point{i, 0}));
      break;
    case EndpointFamily::Hbar: out = detail::crossing_family(u, true); break;
    case EndpointFamily::Vbar: out = detail::crossing_family(u, false); break;
  }
  return out;
}

// max over (p, q) in D1 x D2 with p below-left of q of f(p) + Z(p;q) + g(q).
template <class T>
Tropical<T> boundary_partition(const Environment<T>& env, const std::map<Point, Tropical<T>>& f,
                               const std::map<Point, Tropical<T>>& g) {
  using S = MaxPlus<T>;
  env.require_semiring(SemiringTag::MaxPlus);
  bool pair = false;
  for (const auto& [p, _] : f)
    for (const auto& [q, __] : g)
      if (northeast_of(p, q)) pair = true;
  if (!pair) throw error(ErrorCode::NoFeasiblePair, "no start point lies below-left of an end point");

  std::vector<Point> pts;
  for (const auto& [p, _] : f) pts.push_back(p);
  for (const auto& [q, _] : g) pts.push_back(q);
  Box hullb(pts[0], pts[0]);
  for (auto p : pts) hullb = hull(hullb, Box(p, p));
  detail::require_inside(env, hullb);

  int w = hullb.width(), h = hullb.height();
  std::vector<Tropical<T>> z(std::size_t(w) * h, S::zero());
  Tropical<T> best = S::zero();
  for (int y = 0; y < h; ++y)
    for (int x = 0; x < w; ++x) {
      Point p{hullb.lo.x + x, hullb.lo.y + y};
      Tropical<T> acc = S::zero();
      if (auto it = f.find(p); it != f.end()) acc = S::plus(acc, it->second);
      if (x > 0) acc = S::plus(acc, z[std::size_t(y) * w + x - 1]);
      if (y > 0) acc = S::plus(acc, z[std::size_t(y - 1) * w + x]);
      if (S::is_zero(acc) || !env.in_support(p)) continue;
      auto& cell = z[std::size_t(y) * w + x];
      cell = S::times(acc, S::lift(env(p)));
      if (auto it = g.find(p); it != g.end()) best = S::plus(best, S::times(cell, it->second));
    }
  return best;
}

template <class S>
typename S::value restricted_partition(const Environment<typename S::scalar>& env, const Box& u,
                                       const CellSet& R) {
  env.require_semiring(S::tag);
  detail::require_inside(env, u);
  auto v = detail::prefix_table<S>(env, u, [&](Point p) { return R.count(p) > 0; }).back();
  if (S::is_zero(v)) throw error(ErrorCode::NoAdmissiblePath, "no u-path inside the restriction set");
  return v;
}

// The geodesic lying below-right of every other geodesic.
template <class T>
Path leftmost_geodesic(const Environment<T>& env, const Box& u) {
  using S = MaxPlus<T>;
  env.require_semiring(SemiringTag::MaxPlus);
  detail::require_inside(env, u);
  auto z = detail::prefix_table<S>(env, u, detail::AllowAll{});
  if (S::is_zero(z.back())) throw error(ErrorCode::NoAdmissiblePath, "no path through the support");
  int w = u.width();
  Path p;
  int x = w - 1, y = u.height() - 1;
  p.push_back({u.lo.x + x, u.lo.y + y});
  while (x > 0 || y > 0) {
    if (y > 0 && (x == 0 || !(z[std::size_t(y - 1) * w + x] < z[std::size_t(y) * w + x - 1])))
      --y;
    else
      --x;
    p.push_back({u.lo.x + x, u.lo.y + y});
  }
  std::reverse(p.begin(), p.end());
  return p;
}

template <class T>
bool disjoint_geodesics_exist(const Environment<T>& env, const std::vector<Box>& vs) {
  using S = MaxPlus<T>;
  env.require_semiring(SemiringTag::MaxPlus);
  Endpoint e{vs};
  auto joint = multi_partition<S>(env, e).get();
  T sum = T(0);
  for (const auto& v : vs) sum += single_partition<S>(env, v).get();
  if constexpr (std::is_floating_point_v<T>) {
    return std::abs(joint - sum) <= 1e-9 * std::max<T>(1, std::abs(sum));
  } else {
    return joint == sum;
  }
}

// Draws a u-path with probability proportional to its weight.
template <class T, class Engine>
Path quenched_sample(const Environment<T>& env, const Box& u, Engine& eng) {
  using S = SumProduct<T>;
  env.require_semiring(SemiringTag::SumProduct);
  detail::require_inside(env, u);
  auto z = detail::prefix_table<S>(env, u, detail::AllowAll{});
  int w = u.width();
  int x = w - 1, y = u.height() - 1;
  Path p{{u.lo.x + x, u.lo.y + y}};
  while (x > 0 || y > 0) {
    if (x == 0)
      --y;
    else if (y == 0)
      --x;
    else {
      double left = to_double(z[std::size_t(y) * w + x - 1]);
      double down = to_double(z[std::size_t(y - 1) * w + x]);
      double r = double(eng() >> 11) * 0x1.0p-53;
      if (r * (left + down) < left)
        --x;
      else
        --y;
    }
    p.push_back({u.lo.x + x, u.lo.y + y});
  }
  std::reverse(p.begin(), p.end());
  return p;
}

inline Rational determinant(std::vector<std::vector<Rational>> a) {
  const std::size_t n = a.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      Rational f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Disjoint families from one row to another via a determinant of single-path values.
inline Rational lgv_partition(const Environment<Rational>& env, const Endpoint& e) {
  env.require_semiring(SemiringTag::SumProduct);
  if (env.mode() != NumericMode::ExactRational)
    throw error(ErrorCode::WrongMode, "determinant formula needs exact rationals");
  if (e.parts.empty()) return 1;
  int y0 = e.parts[0].lo.y, y1 = e.parts[0].hi.y;
  for (const auto& b : e.parts) {
    if (b.lo.y != y0 || b.hi.y != y1)
      throw error(ErrorCode::UnsupportedEndpointShape, "parts must share a start row and an end row");
    detail::require_inside(env, b);
  }
  auto parts = e.parts;
  std::sort(parts.begin(), parts.end(), [](const Box& a, const Box& b) { return a.lo.x < b.lo.x; });
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (parts[i].lo.x == parts[i + 1].lo.x || parts[i].hi.x == parts[i + 1].hi.x)
      throw error(ErrorCode::UnsupportedEndpointShape, "starts and ends must be distinct");
    if (parts[i].hi.x > parts[i + 1].hi.x) return 0;
  }
  const std::size_t k = parts.size();
  std::vector<std::vector<Rational>> L(k, std::vector<Rational>(k, 0));
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) {
      int a = parts[i].lo.x, b = parts[j].hi.x;
      if (a <= b) L[i][j] = single_partition<SumProductExact>(env, Box({a, y0}, {b, y1}));
    }
  return determinant(std::move(L));
}

}  // namespace lpplab
