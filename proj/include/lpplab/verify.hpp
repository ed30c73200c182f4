#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "lpplab/boxgeom.hpp"
#include "lpplab/environment.hpp"
#include "lpplab/partition.hpp"
#include "lpplab/stats.hpp"

namespace lpplab {

// Z(u^k); k = 1 is the plain last passage value of u.
struct Coordinate {
  Box u;
  int k = 1;

  Endpoint endpoint() const { return diagonal_endpoint(u, k); }
  friend bool operator==(const Coordinate&, const Coordinate&) = default;
};

inline std::string to_string(const Coordinate& c) {
  return "Z" + to_string(c.u) + (c.k == 1 ? "" : "^" + std::to_string(c.k));
}

template <class S>
typename S::value evaluate(const Environment<typename S::scalar>& env, const Coordinate& c) {
  if (c.k == 1) return single_partition<S>(env, c.u);
  return multi_partition<S>(env, c.endpoint());
}

template <class S>
double as_real(const typename S::value& v) {
  if constexpr (S::tag == SemiringTag::MaxPlus)
    return to_double(v.get());
  else
    return std::log(to_double(v));
}

inline CellSet coordinate_cells(const std::vector<Coordinate>& cs) {
  CellSet s;
  for (const auto& c : cs) add_cells(s, c.u);
  return s;
}

enum class StatementKind { Identity, Tower, Permutation, Slide, ColumnTransposition, Unchecked };

inline const char* to_string(StatementKind k) {
  switch (k) {
    case StatementKind::Identity: return "identity";
    case StatementKind::Tower: return "tower";
    case StatementKind::Permutation: return "permutation";
    case StatementKind::Slide: return "slide";
    case StatementKind::ColumnTransposition: return "column_transposition";
    case StatementKind::Unchecked: return "unchecked";
  }
  return "?";
}

// A map between box sets together with the Z-coordinates compared across it.
// Construction from a statement struct runs its validator.
class InvarianceStatement {
 public:
  static InvarianceStatement identity(const BoxSet& S, const std::vector<Coordinate>& extra = {}) {
    return InvarianceStatement(StatementKind::Identity, PiecewiseTranslation({{S, {0, 0}}}), extra);
  }
  static InvarianceStatement tower(const TowerStatement& s, const std::vector<Coordinate>& extra = {}) {
    require(validate(s));
    return InvarianceStatement(StatementKind::Tower, s.map(), extra);
  }
  static InvarianceStatement permutation(const PermutationStatement& s, const std::vector<Coordinate>& extra = {}) {
    require(validate(s));
    return InvarianceStatement(StatementKind::Permutation, s.map(), extra);
  }
  static InvarianceStatement slide(const SlideStatement& s, const std::vector<Coordinate>& extra = {}) {
    require(validate(s));
    return InvarianceStatement(StatementKind::Slide, s.map(), extra);
  }
  static InvarianceStatement column_transposition(const ColumnTranspositionStatement& s,
                                                  const std::vector<Coordinate>& extra = {}) {
    require(validate(s));
    return InvarianceStatement(StatementKind::ColumnTransposition, s.map(), extra);
  }
  // No hypotheses checked; for counterexamples and negative controls.
  static InvarianceStatement unchecked(const PiecewiseTranslation& f, const std::vector<Coordinate>& extra = {}) {
    return InvarianceStatement(StatementKind::Unchecked, f, extra);
  }

  // Adds Z(u^k) for k = 2..min(width,height) of every domain box.
  InvarianceStatement& with_all_diagonals() {
    for (const auto& u : map_.ordered_domain())
      for (int k = 2; k <= u.max_paths(); ++k) add({u, k});
    return *this;
  }

  StatementKind kind() const { return kind_; }
  bool hypotheses_checked() const { return kind_ != StatementKind::Unchecked; }
  const PiecewiseTranslation& map() const { return map_; }
  const std::vector<Coordinate>& coordinates() const { return coords_; }

  std::vector<Coordinate> image_coordinates() const {
    std::vector<Coordinate> r;
    for (const auto& c : coords_) r.push_back({map_(c.u), c.k});
    return r;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> r;
    for (const auto& c : coords_) r.push_back(to_string(c));
    return r;
  }

 private:
  InvarianceStatement(StatementKind k, PiecewiseTranslation f, const std::vector<Coordinate>& extra)
      : kind_(k), map_(std::move(f)) {
    for (const auto& u : map_.ordered_domain()) add({u, 1});
    for (const auto& c : extra) add(c);
  }

  static void require(const ValidationResult& r) {
    if (!r.ok) throw error(ErrorCode::HypothesesViolated, r.violated);
  }

  void add(const Coordinate& c) {
    if (!map_.contains(c.u)) throw error(ErrorCode::InvalidParams, "coordinate box " + to_string(c.u) + " not in domain");
    if (c.k < 1 || c.k > c.u.max_paths()) throw error(ErrorCode::InvalidParams, "diagonal order out of range");
    if (std::find(coords_.begin(), coords_.end(), c) == coords_.end()) coords_.push_back(c);
  }

  StatementKind kind_;
  PiecewiseTranslation map_;
  std::vector<Coordinate> coords_;
};

// ---------------------------------------------------------------------------
// Exact generating series

using ZVector = std::vector<std::int64_t>;
// Coefficient c counts grids of entry sum c realising the key.
using SeriesProfile = std::map<ZVector, std::vector<BigInt>>;

inline constexpr std::uint64_t kDefaultEnumerationBudget = 20'000'000;

inline BigInt binomial(std::int64_t n, std::int64_t k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (std::int64_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Number of nonnegative grids on `area` cells with sum at most C.
inline BigInt grid_count(std::int64_t area, int C) { return binomial(area + C, area); }

inline void check_enumeration_budget(std::int64_t area, int C, std::uint64_t budget) {
  BigInt n = grid_count(area, C);
  if (n > BigInt(budget))
    throw error(ErrorCode::BudgetExceeded, "enumeration of " + n.str() + " grids exceeds budget " +
                                               std::to_string(budget));
}

inline std::string to_string(const ZVector& z) {
  std::string s = "(";
  for (std::size_t i = 0; i < z.size(); ++i) s += (i ? "," : "") + std::to_string(z[i]);
  return s + ")";
}

inline SeriesProfile series_profile(const std::vector<Coordinate>& coords, int C,
                                    std::uint64_t budget = kDefaultEnumerationBudget) {
  CellSet active = coordinate_cells(coords);
  check_enumeration_budget(std::int64_t(active.size()), C, budget);
  SeriesProfile prof;
  for_each_environment(bounding_box(active), active, C, [&](const Environment<std::int64_t>& env, int sum) {
    ZVector z;
    z.reserve(coords.size());
    for (const auto& c : coords) z.push_back(evaluate<MaxPlusInt>(env, c).get());
    auto& row = prof[z];
    if (row.empty()) row.assign(std::size_t(C) + 1, 0);
    row[std::size_t(sum)] += 1;
  });
  return prof;
}

// Multiplies every series by (1-q)^area, truncated at degree C.
inline SeriesProfile normalize(const SeriesProfile& p, std::int64_t area, int C) {
  std::vector<BigInt> factor(std::size_t(C) + 1);
  for (int j = 0; j <= C; ++j) factor[std::size_t(j)] = (j % 2 ? -1 : 1) * binomial(area, j);
  SeriesProfile out;
  for (const auto& [key, g] : p) {
    std::vector<BigInt> h(std::size_t(C) + 1, 0);
    for (int c = 0; c <= C; ++c)
      for (int j = 0; j <= c; ++j) h[std::size_t(c)] += factor[std::size_t(j)] * g[std::size_t(c - j)];
    out[key] = std::move(h);
  }
  return out;
}

struct SeriesMismatch {
  std::string key;
  int degree = 0;
  BigInt lhs, rhs;
};

struct ExactReport {
  std::string check;
  int C = 0;
  std::size_t keys = 0;
  std::size_t mismatch_count = 0;
  std::vector<SeriesMismatch> mismatches;  // at most kMaxListed
  std::int64_t lhs_cells = 0, rhs_cells = 0;

  static constexpr std::size_t kMaxListed = 25;

  bool equal() const { return mismatch_count == 0; }

  void record(std::string key, int degree, BigInt l, BigInt r) {
    ++mismatch_count;
    if (mismatches.size() < kMaxListed) mismatches.push_back({std::move(key), degree, std::move(l), std::move(r)});
  }
};

inline ExactReport compare_profiles(const SeriesProfile& a, const SeriesProfile& b, int C) {
  ExactReport rep;
  rep.C = C;
  std::set<ZVector> keys;
  for (const auto& [k, _] : a) keys.insert(k);
  for (const auto& [k, _] : b) keys.insert(k);
  rep.keys = keys.size();
  const std::vector<BigInt> zero(std::size_t(C) + 1, 0);
  for (const auto& k : keys) {
    auto ia = a.find(k), ib = b.find(k);
    const auto& ga = ia == a.end() ? zero : ia->second;
    const auto& gb = ib == b.end() ? zero : ib->second;
    for (int c = 0; c <= C; ++c)
      if (ga[std::size_t(c)] != gb[std::size_t(c)]) rep.record(to_string(k), c, ga[std::size_t(c)], gb[std::size_t(c)]);
  }
  return rep;
}

// Law of the domain Z-vector against the law of the image Z-vector under
// homogeneous geometric weights, as power series in q up to degree C.
inline ExactReport exact_geometric_invariance(const InvarianceStatement& st, int C,
                                              std::uint64_t budget = kDefaultEnumerationBudget) {
  auto lhs = st.coordinates(), rhs = st.image_coordinates();
  std::int64_t al = std::int64_t(coordinate_cells(lhs).size()), ar = std::int64_t(coordinate_cells(rhs).size());
  check_enumeration_budget(al, C, budget);
  check_enumeration_budget(ar, C, budget);
  auto rep = compare_profiles(normalize(series_profile(lhs, C, budget), al, C),
                              normalize(series_profile(rhs, C, budget), ar, C), C);
  rep.check = std::string("exact_geometric_invariance[") + to_string(st.kind()) + "]";
  rep.lhs_cells = al;
  rep.rhs_cells = ar;
  return rep;
}

// ---------------------------------------------------------------------------
// Conditional independence of H(u) and V(u) given D(u)

enum class GridSupport { NonNegative, ZeroOne };

namespace detail {

using Poly = std::vector<BigInt>;

inline Poly truncated_product(const Poly& a, const Poly& b, int C) {
  Poly r(std::size_t(C) + 1, 0);
  for (int i = 0; i <= C; ++i) {
    if (a[std::size_t(i)] == 0) continue;
    for (int j = 0; i + j <= C; ++j) r[std::size_t(i + j)] += a[std::size_t(i)] * b[std::size_t(j)];
  }
  return r;
}

template <class F>
void for_each_zero_one_grid(const Box& u, int C, F&& fn) {
  CellSet cs = cells(u);
  std::vector<Point> pts(cs.begin(), cs.end());
  if (pts.size() > 24) throw error(ErrorCode::BudgetExceeded, "0/1 enumeration limited to 24 cells");
  Environment<std::int64_t> env(u, std::vector<std::int64_t>(std::size_t(u.area()), 0), SemiringTag::MaxPlus,
                                NumericMode::ExactInteger);
  for (std::uint32_t mask = 0; mask < (1u << pts.size()); ++mask) {
    int sum = __builtin_popcount(mask);
    if (sum > C) continue;
    auto& v = env.mutable_values();
    for (std::size_t i = 0; i < pts.size(); ++i) v[env.index(pts[i])] = (mask >> i) & 1u;
    fn(env, sum);
  }
}

}  // namespace detail

// For every pair (h, v) of H(u)- and V(u)-values sharing the D(u)-value d,
// checks G_{h,v} G_d = G_h G_v coefficient-wise up to degree C.
inline ExactReport exact_conditional_independence(const Box& u, int C,
                                                  GridSupport support = GridSupport::NonNegative,
                                                  std::uint64_t budget = kDefaultEnumerationBudget) {
  if (support == GridSupport::NonNegative) check_enumeration_budget(u.area(), C, budget);
  auto H = endpoint_family(u, EndpointFamily::H), V = endpoint_family(u, EndpointFamily::V),
       D = endpoint_family(u, EndpointFamily::D);
  auto values = [](const Environment<std::int64_t>& env, const std::vector<Endpoint>& fam) {
    ZVector z;
    for (const auto& e : fam) z.push_back(multi_partition<MaxPlusInt>(env, e).get());
    return z;
  };
  using detail::Poly;
  std::map<ZVector, Poly> Gh, Gv, Gd;
  std::map<std::pair<ZVector, ZVector>, Poly> Ghv;
  std::map<ZVector, ZVector> d_of_h, d_of_v;
  auto bump = [C](Poly& p, int sum) {
    if (p.empty()) p.assign(std::size_t(C) + 1, 0);
    p[std::size_t(sum)] += 1;
  };
  auto visit = [&](const Environment<std::int64_t>& env, int sum) {
    ZVector h = values(env, H), v = values(env, V), d = values(env, D);
    bump(Gh[h], sum);
    bump(Gv[v], sum);
    bump(Gd[d], sum);
    bump(Ghv[{h, v}], sum);
    d_of_h[h] = d;
    d_of_v[v] = d;
  };
  if (support == GridSupport::NonNegative)
    for_each_environment(u, cells(u), C, visit);
  else
    detail::for_each_zero_one_grid(u, C, visit);

  ExactReport rep;
  rep.check = support == GridSupport::NonNegative ? "exact_conditional_independence"
                                                  : "exact_conditional_independence[0/1]";
  rep.C = C;
  rep.lhs_cells = rep.rhs_cells = u.area();
  const Poly zero(std::size_t(C) + 1, 0);
  std::map<ZVector, std::vector<ZVector>> vs_by_d;
  for (const auto& [v, d] : d_of_v) vs_by_d[d].push_back(v);
  for (const auto& [h, d] : d_of_h)
    for (const auto& v : vs_by_d[d]) {
      ++rep.keys;
      auto it = Ghv.find({h, v});
      auto lhs = detail::truncated_product(it == Ghv.end() ? zero : it->second, Gd[d], C);
      auto rhs = detail::truncated_product(Gh[h], Gv[v], C);
      for (int c = 0; c <= C; ++c)
        if (lhs[std::size_t(c)] != rhs[std::size_t(c)])
          rep.record("h=" + to_string(h) + " v=" + to_string(v) + " d=" + to_string(d), c, lhs[std::size_t(c)],
                     rhs[std::size_t(c)]);
    }
  return rep;
}

// ---------------------------------------------------------------------------
// Monte Carlo

struct ModelSpec {
  Model model = Model::Exponential;
  ParamSequences params = homogeneous_additive(1.0);
  double p_one = 0.5;  // Bernoulli only

  static ModelSpec geometric(double q) { return {Model::Geometric, homogeneous_geometric(q), 0}; }
  static ModelSpec exponential(double rate = 1.0) { return {Model::Exponential, homogeneous_additive(rate), 0}; }
  static ModelSpec inverse_gamma(double shape) { return {Model::InverseGamma, homogeneous_additive(shape), 0}; }
  static ModelSpec bernoulli(double p_one) { return {Model::Bernoulli, {}, p_one}; }
  static ModelSpec inhomogeneous(Model m, ParamSequences p) { return {m, std::move(p), 0}; }
};

// Calls fn(env, S{}) with a freshly sampled environment of the model.
template <class Fn>
auto with_sampled_environment(const ModelSpec& m, const Box& window, const RandomSource& rng, Fn&& fn) {
  switch (m.model) {
    case Model::Geometric: return fn(sample_geometric(window, m.params, rng), MaxPlusInt{});
    case Model::Bernoulli: return fn(sample_bernoulli(window, m.p_one, rng), MaxPlusInt{});
    case Model::Exponential: return fn(sample_continuous(m.model, window, m.params, rng), MaxPlusReal{});
    case Model::InverseGamma: break;
  }
  return fn(sample_continuous(m.model, window, m.params, rng), SumProductReal{});
}

struct MCOptions {
  std::size_t N = 20000;
  std::uint64_t seed = 1;
  TwoSampleOptions test;
  bool keep_samples = false;
};

struct MCReport {
  std::string check;
  std::vector<std::string> names;
  std::size_t N = 0;
  std::uint64_t seed = 0;
  TwoSampleReport result;
  Samples lhs, rhs;  // filled when keep_samples is set

  bool accept() const { return result.accept; }
  double min_adjusted() const { return result.min_adjusted; }
};

inline constexpr std::uint64_t kLeftStream = 0x1EF7;
inline constexpr std::uint64_t kRightStream = 0x7161;

// draw(rng, right_side) returns one observation; each replicate gets its
// own substream so results do not depend on evaluation order.
template <class Draw>
MCReport run_two_sample(std::string check, std::vector<std::string> names, const MCOptions& opt, Draw&& draw) {
  if (opt.N == 0) throw error(ErrorCode::InvalidParams, "sample size must be positive");
  MCReport rep;
  rep.check = std::move(check);
  rep.names = std::move(names);
  rep.N = opt.N;
  rep.seed = opt.seed;
  RandomSource left{opt.seed, kLeftStream}, right{opt.seed, kRightStream};
  Samples X, Y;
  X.reserve(opt.N);
  Y.reserve(opt.N);
  for (std::size_t i = 0; i < opt.N; ++i) {
    X.push_back(draw(left.substream(i), false));
    Y.push_back(draw(right.substream(i), true));
  }
  rep.result = two_sample_compare(X, Y, rep.names, mix_key(opt.seed, 0xE7E7), opt.test);
  if (opt.keep_samples) {
    rep.lhs = std::move(X);
    rep.rhs = std::move(Y);
  }
  return rep;
}

inline Box coordinate_window(const std::vector<Coordinate>& cs) {
  BoxSet b;
  for (const auto& c : cs) b.push_back(c.u);
  return hull(b);
}

inline MCReport mc_invariance(const InvarianceStatement& st, const ModelSpec& model, const MCOptions& opt) {
  auto lhs = st.coordinates(), rhs = st.image_coordinates();
  Box wl = coordinate_window(lhs), wr = coordinate_window(rhs);
  auto draw = [&](const RandomSource& rng, bool right) {
    const auto& cs = right ? rhs : lhs;
    return with_sampled_environment(model, right ? wr : wl, rng, [&](const auto& env, auto s) {
      using S = decltype(s);
      std::vector<double> row;
      row.reserve(cs.size());
      for (const auto& c : cs) row.push_back(as_real<S>(evaluate<S>(env, c)));
      return row;
    });
  };
  return run_two_sample(std::string("mc_invariance[") + to_string(st.kind()) + "]", st.names(), opt, draw);
}

// Features of the part of a monotone path outside a box, read after
// translating by -back: cells before and after the box, the last cell
// before it and the first cell after it (the box corners stand in when
// there is no such cell).
inline std::vector<double> outside_path_summary(const Path& p, const Box& excluded, Point back) {
  std::int64_t before = 0, after = 0;
  bool seen = false;
  Point last_before = excluded.lo, first_after = excluded.hi;
  bool have_after = false;
  for (auto q : p) {
    if (excluded.contains(q)) {
      seen = true;
      continue;
    }
    if (!seen) {
      ++before;
      last_before = q;
    } else {
      ++after;
      if (!have_after) first_after = q, have_after = true;
    }
  }
  last_before = last_before - back;
  first_after = first_after - back;
  return {double(before), double(after), double(last_before.x), double(last_before.y), double(first_after.x),
          double(first_after.y)};
}

inline std::vector<std::string> outside_path_names(const std::string& tag) {
  return {tag + ".before", tag + ".after", tag + ".exit_x", tag + ".exit_y", tag + ".entry_x", tag + ".entry_y"};
}

namespace detail {

inline std::vector<std::string> geodesic_names(const GeodesicStatement& s) {
  std::vector<std::string> n;
  for (const auto& u : s.U)
    for (auto& x : outside_path_names("u" + to_string(u))) n.push_back(x);
  for (const auto& v : s.V)
    for (auto& x : outside_path_names("v" + to_string(v))) n.push_back(x);
  return n;
}

inline Box geodesic_window(const GeodesicStatement& s, bool right) {
  BoxSet b = s.U;
  for (const auto& v : s.V) b.push_back(right ? translate(v, s.c) : v);
  return hull(b);
}

// path(env, box, salt) yields the path observed for one box.
template <class PathFn>
std::vector<double> path_row(const GeodesicStatement& s, bool right, PathFn&& path) {
  std::vector<double> row;
  std::uint64_t salt = 0;
  for (const auto& u : s.U)
    for (double x : outside_path_summary(path(u, salt++), s.w, {0, 0})) row.push_back(x);
  Point back = right ? s.c : Point{0, 0};
  Box x = right ? translate(s.x, s.c) : s.x;
  for (const auto& v : s.V)
    for (double f : outside_path_summary(path(right ? translate(v, s.c) : v, salt++), x, back)) row.push_back(f);
  return row;
}

}  // namespace detail

// Leftmost geodesics outside w (for U) and outside x (for V), against the
// same with V and x shifted by c and read back at the original position.
inline MCReport mc_geodesic_invariance(const GeodesicStatement& s, const ModelSpec& model, const MCOptions& opt) {
  if (auto r = validate(s); !r.ok) throw error(ErrorCode::HypothesesViolated, r.violated);
  if (model.model == Model::InverseGamma)
    throw error(ErrorCode::InvalidParams, "geodesic statistics need a last passage model");
  auto draw = [&](const RandomSource& rng, bool right) {
    return with_sampled_environment(model, detail::geodesic_window(s, right), rng, [&](const auto& env, auto) {
      return detail::path_row(s, right, [&](const Box& b, std::uint64_t) { return leftmost_geodesic(env, b); });
    });
  };
  return run_two_sample("mc_geodesic_invariance", detail::geodesic_names(s), opt, draw);
}

// One quenched polymer path per box and environment, projected as above.
inline MCReport mc_quenched_invariance(const GeodesicStatement& s, const ModelSpec& model, const MCOptions& opt) {
  if (auto r = validate(s); !r.ok) throw error(ErrorCode::HypothesesViolated, r.violated);
  if (model.model != Model::InverseGamma) throw error(ErrorCode::InvalidParams, "quenched measures need inverse-gamma");
  auto draw = [&](const RandomSource& rng, bool right) {
    auto env = sample_continuous(Model::InverseGamma, detail::geodesic_window(s, right), model.params, rng);
    return detail::path_row(s, right, [&](const Box& b, std::uint64_t salt) {
      auto eng = rng.engine(salt);
      return quenched_sample(env, b, eng);
    });
  };
  return run_two_sample("mc_quenched_invariance", detail::geodesic_names(s), opt, draw);
}

// Z on U, V, W with the indicator that the selected V-boxes admit
// pairwise disjoint geodesics, against the same with V shifted by c.
inline MCReport mc_disjointness(const ShiftedMiddleStatement& s, const std::vector<std::size_t>& selected,
                                const ModelSpec& model, const MCOptions& opt) {
  if (auto r = validate(s); !r.ok) throw error(ErrorCode::HypothesesViolated, r.violated);
  if (model.model != Model::Geometric && model.model != Model::Exponential)
    throw error(ErrorCode::InvalidParams, "disjointness needs geometric or exponential weights");
  BoxSet sel;
  for (auto i : selected) {
    if (i >= s.V.size()) throw error(ErrorCode::InvalidParams, "selected index outside V");
    sel.push_back(s.V[i]);
  }
  if (sel.empty()) throw error(ErrorCode::InvalidParams, "no V-boxes selected");
  if (!feasible(Endpoint(sel))) throw error(ErrorCode::InfeasibleEndpoint, "selected boxes admit no disjoint paths");
  std::vector<std::string> names;
  for (const auto& b : concat(concat(s.U, s.V), s.W)) names.push_back("Z" + to_string(b));
  names.push_back("disjoint");
  auto draw = [&](const RandomSource& rng, bool right) {
    BoxSet V = right ? translated(s.V, s.c) : s.V;
    BoxSet chosen = right ? translated(sel, s.c) : sel;
    BoxSet all = concat(concat(s.U, V), s.W);
    return with_sampled_environment(model, hull(all), rng, [&](const auto& env, auto sr) {
      using S = decltype(sr);
      std::vector<double> row;
      for (const auto& b : all) row.push_back(as_real<S>(single_partition<S>(env, b)));
      row.push_back(disjoint_geodesics_exist(env, chosen) ? 1.0 : 0.0);
      return row;
    });
  };
  return run_two_sample("mc_disjointness", names, opt, draw);
}

// Tower under M_{alpha,beta} against its image under M_{alpha',beta'}.
inline MCReport mc_inhomogeneous(const InvarianceStatement& st, Model m, const ParamSequences& p,
                                 const ParamSequences& p2, const MCOptions& opt) {
  if (!rearrangement_valid(st.map(), p, p2))
    throw error(ErrorCode::InvalidRearrangement, "parameters are not an admissible rearrangement");
  if (m == Model::Bernoulli) throw error(ErrorCode::InvalidParams, "inhomogeneous Bernoulli is not supported");
  auto lhs = st.coordinates(), rhs = st.image_coordinates();
  Box wl = coordinate_window(lhs), wr = coordinate_window(rhs);
  ModelSpec ml = ModelSpec::inhomogeneous(m, p), mr = ModelSpec::inhomogeneous(m, p2);
  auto draw = [&](const RandomSource& rng, bool right) {
    const auto& cs = right ? rhs : lhs;
    return with_sampled_environment(right ? mr : ml, right ? wr : wl, rng, [&](const auto& env, auto sr) {
      using S = decltype(sr);
      std::vector<double> row;
      for (const auto& c : cs) row.push_back(as_real<S>(evaluate<S>(env, c)));
      return row;
    });
  };
  return run_two_sample("mc_inhomogeneous", st.names(), opt, draw);
}

// ---------------------------------------------------------------------------
// Negative controls

inline const Box kControlBox{1, 1, 2, 3};

struct EpsControlReport {
  Rational eps;
  Rational given_bottom;  // P(Z(1,1;2,3)=4 | Z(1,1;2,1)=1)
  Rational given_middle;  // P(Z(1,1;2,3)=4 | Z(1,2;2,2)=1)
  Rational cube;          // (1-eps)^3
  Rational total_variation;
  bool bound_holds = false;     // given_bottom <= 1/2
  bool middle_is_cube = false;  // given_middle == (1-eps)^3
  bool argument_applies = false;
  bool laws_differ = false;

  bool certified() const { return argument_applies && bound_holds && middle_is_cube && laws_differ; }
};

// (1-eps)^3 > 1/2 exactly when eps is below this value.
inline double nonintegrable_threshold() { return 1.0 - std::pow(2.0, -1.0 / 3.0); }

// Entries 1 with probability 1-eps on (1,1;2,3): compares the laws of
// (Z(u), Z(1,1;2,1)) and (Z(u), Z(1,2;2,2)) by exact enumeration.
inline EpsControlReport negative_control_exact_eps(const Rational& eps) {
  if (eps <= 0 || eps >= 1) throw error(ErrorCode::InvalidParams, "eps must lie in (0,1)");
  const Box bottom{1, 1, 2, 1}, middle{1, 2, 2, 2};
  std::map<std::pair<std::int64_t, std::int64_t>, Rational> lawA, lawB;
  Rational pb = 0, pb4 = 0, pm = 0, pm4 = 0;
  detail::for_each_zero_one_grid(kControlBox, 6, [&](const Environment<std::int64_t>& env, int ones) {
    Rational p = 1;
    for (int i = 0; i < ones; ++i) p *= 1 - eps;
    for (int i = ones; i < 6; ++i) p *= eps;
    auto z = single_partition<MaxPlusInt>(env, kControlBox).get();
    auto zb = single_partition<MaxPlusInt>(env, bottom).get();
    auto zm = single_partition<MaxPlusInt>(env, middle).get();
    lawA[{z, zb}] += p;
    lawB[{z, zm}] += p;
    if (zb == 1) {
      pb += p;
      if (z == 4) pb4 += p;
    }
    if (zm == 1) {
      pm += p;
      if (z == 4) pm4 += p;
    }
  });
  EpsControlReport r;
  r.eps = eps;
  r.given_bottom = pb4 / pb;
  r.given_middle = pm4 / pm;
  r.cube = (1 - eps) * (1 - eps) * (1 - eps);
  std::set<std::pair<std::int64_t, std::int64_t>> keys;
  for (const auto& [k, _] : lawA) keys.insert(k);
  for (const auto& [k, _] : lawB) keys.insert(k);
  Rational tv = 0;
  for (const auto& k : keys) {
    Rational a = lawA.count(k) ? lawA[k] : Rational(0), b = lawB.count(k) ? lawB[k] : Rational(0);
    tv += a > b ? a - b : b - a;
  }
  r.total_variation = tv / 2;
  r.bound_holds = r.given_bottom <= Rational(1, 2);
  r.middle_is_cube = r.given_middle == r.cube;
  r.argument_applies = r.cube > Rational(1, 2);
  r.laws_differ = r.total_variation > 0;
  return r;
}

// The bottom row shifted onto the middle row: a valid tower, so geometric
// weights leave the law unchanged while Bernoulli weights do not.
inline TowerStatement nonintegrable_tower() {
  return TowerStatement{{{Box{1, 1, 2, 1}}, {kControlBox}}, {{0, 1}, {0, 0}}};
}

// w = top row of u, moved to the bottom row; v = (2,2) stays.
inline InvarianceStatement not_in_F_statement() {
  const Box v{2, 2, 2, 2}, w{1, 3, 2, 3};
  return InvarianceStatement::unchecked(PiecewiseTranslation({{{kControlBox, v}, {0, 0}}, {{w}, {0, -2}}}));
}

inline ExactReport negative_control_not_in_F(int C = 4) {
  auto rep = exact_geometric_invariance(not_in_F_statement(), C);
  rep.check = "negative_control_not_in_F";
  return rep;
}

}  // namespace lpplab
