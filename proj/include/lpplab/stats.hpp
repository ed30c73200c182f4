#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "lpplab/rng.hpp"

namespace lpplab {

// Observations by row.
using Samples = std::vector<std::vector<double>>;

// Upper tail of the Kolmogorov distribution, P(K > lambda).
inline double kolmogorov_q(double lambda) {
  if (lambda <= 0) return 1.0;
  if (lambda < 1.18) {
    const double pi2 = M_PI * M_PI;
    double s = 0;
    for (int k = 1; k <= 50; ++k) {
      double t = std::exp(-(2.0 * k - 1) * (2.0 * k - 1) * pi2 / (8 * lambda * lambda));
      s += t;
      if (t < 1e-300) break;
    }
    return std::clamp(1.0 - std::sqrt(2 * M_PI) / lambda * s, 0.0, 1.0);
  }
  double s = 0;
  for (int k = 1; k <= 100; ++k) {
    double t = std::exp(-2.0 * k * k * lambda * lambda);
    s += (k % 2 ? 1 : -1) * t;
    if (t < 1e-300) break;
  }
  return std::clamp(2 * s, 0.0, 1.0);
}

struct KSResult {
  double statistic = 0;
  double p_value = 1;
};

inline KSResult ks_two_sample(std::vector<double> a, std::vector<double> b) {
  KSResult r;
  if (a.empty() || b.empty()) return r;
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::size_t i = 0, j = 0;
  double na = double(a.size()), nb = double(b.size()), d = 0;
  while (i < a.size() && j < b.size()) {
    double v = std::min(a[i], b[j]);
    while (i < a.size() && a[i] == v) ++i;
    while (j < b.size() && b[j] == v) ++j;
    d = std::max(d, std::abs(double(i) / na - double(j) / nb));
  }
  r.statistic = d;
  double ne = na * nb / (na + nb);
  double s = std::sqrt(ne);
  r.p_value = kolmogorov_q((s + 0.12 + 0.11 / s) * d);
  return r;
}

namespace detail {

inline double euclid(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k] - b[k]) * (a[k] - b[k]);
  return std::sqrt(s);
}

// Energy statistic n m / (n + m) * (2 E|X-Y| - E|X-X'| - E|Y-Y'|) for a
// labelling of the pooled sample given by the first n indices of `perm`.
inline double energy_from_matrix(const std::vector<double>& dist, std::size_t N, const std::vector<std::size_t>& perm,
                                 std::size_t n) {
  std::size_t m = N - n;
  double xy = 0, xx = 0, yy = 0;
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b) {
      double d = dist[perm[a] * N + perm[b]];
      bool ax = a < n, bx = b < n;
      if (ax && bx)
        xx += d;
      else if (!ax && !bx)
        yy += d;
      else
        xy += d;
    }
  double e = 2 * xy / (double(n) * double(m)) - 2 * xx / (double(n) * double(n)) - 2 * yy / (double(m) * double(m));
  return double(n) * double(m) / double(N) * e;
}

}  // namespace detail

struct EnergyResult {
  double statistic = 0;
  double p_value = 1;
  int permutations = 0;
  std::size_t used_x = 0, used_y = 0;
};

// Permutation test on at most `subsample` rows per side, coordinates scaled
// by the pooled standard deviation.
inline EnergyResult energy_test(const Samples& X, const Samples& Y, std::uint64_t seed, int permutations = 200,
                                std::size_t subsample = 500) {
  EnergyResult r;
  r.permutations = permutations;
  std::size_t n = std::min(X.size(), subsample), m = std::min(Y.size(), subsample);
  r.used_x = n;
  r.used_y = m;
  if (n == 0 || m == 0) return r;
  std::size_t dim = X[0].size(), N = n + m;
  Samples Z;
  Z.reserve(N);
  for (std::size_t i = 0; i < n; ++i) Z.push_back(X[i]);
  for (std::size_t i = 0; i < m; ++i) Z.push_back(Y[i]);
  for (std::size_t k = 0; k < dim; ++k) {
    double mean = 0, var = 0;
    for (const auto& z : Z) mean += z[k];
    mean /= double(N);
    for (const auto& z : Z) var += (z[k] - mean) * (z[k] - mean);
    double sd = std::sqrt(var / double(N));
    if (sd > 0)
      for (auto& z : Z) z[k] = (z[k] - mean) / sd;
  }
  std::vector<double> dist(N * N, 0.0);
  for (std::size_t a = 0; a < N; ++a)
    for (std::size_t b = a + 1; b < N; ++b) dist[a * N + b] = dist[b * N + a] = detail::euclid(Z[a], Z[b]);
  std::vector<std::size_t> perm(N);
  std::iota(perm.begin(), perm.end(), 0);
  r.statistic = detail::energy_from_matrix(dist, N, perm, n);
  SplitMix64 eng(seed);
  int ge = 0;
  for (int p = 0; p < permutations; ++p) {
    for (std::size_t i = N - 1; i > 0; --i) std::swap(perm[i], perm[std::size_t(eng() % (i + 1))]);
    if (detail::energy_from_matrix(dist, N, perm, n) >= r.statistic - 1e-12) ++ge;
  }
  r.p_value = double(1 + ge) / double(1 + permutations);
  return r;
}

struct ChiSquareResult {
  double statistic = 0;
  double p_value = 1;
  int df = 0;
};

// Homogeneity test on the joint values of two discrete samples. Categories
// with fewer than `min_count` pooled observations are merged into one.
inline ChiSquareResult chi_square_homogeneity(const Samples& X, const Samples& Y, std::size_t min_count = 10) {
  ChiSquareResult r;
  std::map<std::vector<double>, std::pair<double, double>> counts;
  for (const auto& x : X) counts[x].first += 1;
  for (const auto& y : Y) counts[y].second += 1;
  std::vector<std::pair<double, double>> cats;
  std::pair<double, double> other{0, 0};
  for (const auto& [_, c] : counts) {
    if (c.first + c.second >= double(min_count))
      cats.push_back(c);
    else
      other.first += c.first, other.second += c.second;
  }
  if (other.first + other.second > 0) {
    if (other.first + other.second >= double(min_count) || cats.empty()) {
      cats.push_back(other);
    } else {
      auto it = std::min_element(cats.begin(), cats.end(), [](auto& a, auto& b) {
        return a.first + a.second < b.first + b.second;
      });
      it->first += other.first;
      it->second += other.second;
    }
  }
  if (cats.size() < 2) return r;
  double nx = double(X.size()), ny = double(Y.size()), n = nx + ny;
  for (const auto& [a, b] : cats) {
    double t = a + b, ea = nx * t / n, eb = ny * t / n;
    r.statistic += (a - ea) * (a - ea) / ea + (b - eb) * (b - eb) / eb;
  }
  r.df = int(cats.size()) - 1;
  boost::math::chi_squared_distribution<double> dist(r.df);
  r.p_value = boost::math::cdf(boost::math::complement(dist, r.statistic));
  return r;
}

inline bool integer_valued(const Samples& S) {
  for (const auto& row : S)
    for (double v : row)
      if (v != std::floor(v)) return false;
  return true;
}

struct TestEntry {
  std::string name;
  double statistic = 0;
  double p_value = 1;
  double adjusted = 1;
};

struct TwoSampleOptions {
  double level = 0.01;
  int permutations = 200;
  std::size_t energy_subsample = 500;
  bool pairwise_differences = true;
  bool discrete_joint = true;  // chi-square on joint values when all are integers
};

struct TwoSampleReport {
  std::vector<TestEntry> tests;
  std::size_t n_x = 0, n_y = 0;
  double level = 0.01;
  double min_adjusted = 1;
  bool accept = true;
};

// Per-coordinate KS, KS on pairwise coordinate differences, the energy
// test and, for integer data, a joint chi-square; Bonferroni over the family.
inline TwoSampleReport two_sample_compare(const Samples& X, const Samples& Y, const std::vector<std::string>& names,
                                          std::uint64_t seed, const TwoSampleOptions& opt = {}) {
  TwoSampleReport rep;
  rep.n_x = X.size();
  rep.n_y = Y.size();
  rep.level = opt.level;
  std::size_t dim = X.empty() ? 0 : X[0].size();
  auto column = [](const Samples& S, auto&& f) {
    std::vector<double> v;
    v.reserve(S.size());
    for (const auto& row : S) v.push_back(f(row));
    return v;
  };
  auto label = [&](std::size_t k) { return k < names.size() ? names[k] : "x" + std::to_string(k); };
  for (std::size_t k = 0; k < dim; ++k) {
    auto f = [k](const std::vector<double>& r) { return r[k]; };
    auto ks = ks_two_sample(column(X, f), column(Y, f));
    rep.tests.push_back({"ks:" + label(k), ks.statistic, ks.p_value, 1});
  }
  if (opt.pairwise_differences)
    for (std::size_t a = 0; a < dim; ++a)
      for (std::size_t b = a + 1; b < dim; ++b) {
        auto f = [a, b](const std::vector<double>& r) { return r[a] - r[b]; };
        auto ks = ks_two_sample(column(X, f), column(Y, f));
        rep.tests.push_back({"ks:" + label(a) + "-" + label(b), ks.statistic, ks.p_value, 1});
      }
  if (dim > 0) {
    auto en = energy_test(X, Y, seed, opt.permutations, opt.energy_subsample);
    rep.tests.push_back({"energy", en.statistic, en.p_value, 1});
  }
  if (opt.discrete_joint && dim > 0 && integer_valued(X) && integer_valued(Y)) {
    auto cs = chi_square_homogeneity(X, Y);
    if (cs.df > 0) rep.tests.push_back({"chi2:joint", cs.statistic, cs.p_value, 1});
  }
  double m = double(rep.tests.size());
  for (auto& t : rep.tests) {
    t.adjusted = std::min(1.0, t.p_value * m);
    rep.min_adjusted = std::min(rep.min_adjusted, t.adjusted);
  }
  rep.accept = rep.min_adjusted >= opt.level;
  return rep;
}

}  // namespace lpplab
