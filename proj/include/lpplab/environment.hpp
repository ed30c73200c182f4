#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <boost/random/exponential_distribution.hpp>
#include <boost/random/gamma_distribution.hpp>
#include <boost/random/geometric_distribution.hpp>

#include "lpplab/boxgeom.hpp"
#include "lpplab/rng.hpp"
#include "lpplab/semiring.hpp"

namespace lpplab {

template <class T>
class Environment {
 public:
  Environment() = default;
  Environment(Box window, std::vector<T> values, SemiringTag tag, NumericMode mode)
      : window_(window), values_(std::move(values)), tag_(tag), mode_(mode) {
    if (!window_.valid()) throw error(ErrorCode::InvalidParams, "invalid window");
    if (std::int64_t(values_.size()) != window_.area())
      throw error(ErrorCode::ShapeMismatch, "value count " + std::to_string(values_.size()) +
                                                " does not match window area " +
                                                std::to_string(window_.area()));
  }

  const Box& window() const { return window_; }
  SemiringTag semiring() const { return tag_; }
  NumericMode mode() const { return mode_; }
  const std::vector<T>& values() const { return values_; }

  // Row-major, lowest row first.
  std::size_t index(Point p) const {
    return std::size_t(p.y - window_.lo.y) * std::size_t(window_.width()) +
           std::size_t(p.x - window_.lo.x);
  }

  bool in_window(Point p) const { return window_.contains(p); }

  // Cells outside the support carry no weight and block paths.
  bool in_support(Point p) const {
    if (!window_.contains(p)) return false;
    return support_.empty() || support_[index(p)];
  }
  bool has_mask() const { return !support_.empty(); }

  void restrict_support(const CellSet& s) {
    support_.assign(values_.size(), 0);
    for (auto p : s)
      if (window_.contains(p)) support_[index(p)] = 1;
  }

  const T& operator()(Point p) const {
    if (!window_.contains(p))
      throw error(ErrorCode::OutOfWindow, "cell (" + std::to_string(p.x) + "," +
                                              std::to_string(p.y) + ") outside window " +
                                              to_string(window_));
    return values_[index(p)];
  }
  const T& operator()(int x, int y) const { return (*this)(Point{x, y}); }

  // Used by enumerators that rewrite a grid in place.
  std::vector<T>& mutable_values() { return values_; }

  void require_semiring(SemiringTag t) const {
    if (t != tag_)
      throw error(ErrorCode::WrongSemiring, std::string("environment is ") + to_string(tag_) +
                                                ", operation needs " + to_string(t));
  }

 private:
  Box window_;
  std::vector<T> values_;
  SemiringTag tag_ = SemiringTag::MaxPlus;
  NumericMode mode_ = NumericMode::ExactInteger;
  std::vector<char> support_;
};

template <class T>
Environment<T> from_matrix(Box window, std::vector<T> values, SemiringTag tag, NumericMode mode) {
  if (tag == SemiringTag::SumProduct)
    for (const auto& v : values)
      if (!(v > T(0))) throw error(ErrorCode::NonPositiveWeight, "sum-product weights must be positive");
  return Environment<T>(window, std::move(values), tag, mode);
}

// Same value at every cell of the window.
template <class T>
Environment<T> constant_environment(Box window, T v, SemiringTag tag, NumericMode mode) {
  return from_matrix(window, std::vector<T>(std::size_t(window.area()), v), tag, mode);
}

enum class Model { Geometric, Exponential, InverseGamma, Bernoulli };

inline const char* to_string(Model m) {
  switch (m) {
    case Model::Geometric: return "geometric";
    case Model::Exponential: return "exponential";
    case Model::InverseGamma: return "inverse_gamma";
    case Model::Bernoulli: return "bernoulli";
  }
  return "?";
}

inline Model model_from_string(const std::string& s) {
  if (s == "geometric") return Model::Geometric;
  if (s == "exponential") return Model::Exponential;
  if (s == "inverse_gamma") return Model::InverseGamma;
  if (s == "bernoulli") return Model::Bernoulli;
  throw error(ErrorCode::InvalidParams, "unknown model '" + s + "'");
}

inline bool integer_valued(Model m) { return m == Model::Geometric || m == Model::Bernoulli; }

// Column parameters alpha and row parameters beta, sparse with defaults.
struct ParamSequences {
  std::map<int, double> alpha;
  double alpha_default = 0.5;
  std::map<int, double> beta;
  double beta_default = 0.5;

  double a(int i) const {
    auto it = alpha.find(i);
    return it == alpha.end() ? alpha_default : it->second;
  }
  double b(int j) const {
    auto it = beta.find(j);
    return it == beta.end() ? beta_default : it->second;
  }

  static ParamSequences constant(double a, double b) {
    ParamSequences p;
    p.alpha_default = a;
    p.beta_default = b;
    return p;
  }
};

// Homogeneous parametrisations: geometric(q) has alpha*beta = q, the
// continuous models have alpha + beta = rate (resp. shape).
inline ParamSequences homogeneous_geometric(double q) {
  double s = std::sqrt(q);
  return ParamSequences::constant(s, s);
}
inline ParamSequences homogeneous_additive(double total) {
  return ParamSequences::constant(total / 2, total / 2);
}

inline void validate_params(Model m, const Box& window, const ParamSequences& p) {
  for (int x = window.lo.x; x <= window.hi.x; ++x)
    for (int y = window.lo.y; y <= window.hi.y; ++y) {
      double a = p.a(x), b = p.b(y);
      if (m == Model::Geometric) {
        double q = a * b;
        if (!(q > 0 && q < 1))
          throw error(ErrorCode::InvalidParams, "geometric parameter outside (0,1) at column " +
                                                    std::to_string(x) + ", row " + std::to_string(y));
      } else if (m == Model::Exponential || m == Model::InverseGamma) {
        if (!(a + b > 0))
          throw error(ErrorCode::InvalidParams, "non-positive rate at column " + std::to_string(x) +
                                                    ", row " + std::to_string(y));
      }
    }
}

inline Environment<std::int64_t> sample_geometric(const Box& window, const ParamSequences& p,
                                                  const RandomSource& rng) {
  validate_params(Model::Geometric, window, p);
  std::vector<std::int64_t> v(std::size_t(window.area()));
  for (int y = window.lo.y; y <= window.hi.y; ++y)
    for (int x = window.lo.x; x <= window.hi.x; ++x) {
      auto eng = rng.cell(x, y);
      boost::random::geometric_distribution<std::int64_t, double> g(1.0 - p.a(x) * p.b(y));
      v[std::size_t(y - window.lo.y) * window.width() + (x - window.lo.x)] = g(eng);
    }
  return Environment<std::int64_t>(window, std::move(v), SemiringTag::MaxPlus, NumericMode::ExactInteger);
}

// Entries are 1 with probability p_one, else 0.
inline Environment<std::int64_t> sample_bernoulli(const Box& window, double p_one,
                                                  const RandomSource& rng) {
  if (!(p_one >= 0 && p_one <= 1)) throw error(ErrorCode::InvalidParams, "Bernoulli parameter outside [0,1]");
  std::vector<std::int64_t> v(std::size_t(window.area()));
  for (int y = window.lo.y; y <= window.hi.y; ++y)
    for (int x = window.lo.x; x <= window.hi.x; ++x) {
      auto eng = rng.cell(x, y);
      v[std::size_t(y - window.lo.y) * window.width() + (x - window.lo.x)] =
          eng.uniform01() < p_one ? 1 : 0;
    }
  return Environment<std::int64_t>(window, std::move(v), SemiringTag::MaxPlus, NumericMode::ExactInteger);
}

inline Environment<double> sample_continuous(Model m, const Box& window, const ParamSequences& p,
                                             const RandomSource& rng) {
  if (m != Model::Exponential && m != Model::InverseGamma)
    throw error(ErrorCode::InvalidParams, "continuous sampler needs exponential or inverse-gamma");
  validate_params(m, window, p);
  std::vector<double> v(std::size_t(window.area()));
  for (int y = window.lo.y; y <= window.hi.y; ++y)
    for (int x = window.lo.x; x <= window.hi.x; ++x) {
      auto eng = rng.cell(x, y);
      double r = p.a(x) + p.b(y);
      double val;
      if (m == Model::Exponential) {
        boost::random::exponential_distribution<double> e(r);
        val = e(eng);
      } else {
        boost::random::gamma_distribution<double> g(r, 1.0);
        val = 1.0 / g(eng);
      }
      v[std::size_t(y - window.lo.y) * window.width() + (x - window.lo.x)] = val;
    }
  SemiringTag tag = m == Model::Exponential ? SemiringTag::MaxPlus : SemiringTag::SumProduct;
  return Environment<double>(window, std::move(v), tag, NumericMode::Float64);
}

// Every nonnegative integer grid on the chosen cells with entry sum <= C,
// ordered by total sum. Cells of the window outside `cells` stay zero.
class EnvironmentEnumerator {
 public:
  EnvironmentEnumerator(Box window, int C) : EnvironmentEnumerator(window, cells(window), C) {}

  EnvironmentEnumerator(Box window, const CellSet& active, int C)
      : env_(window, std::vector<std::int64_t>(std::size_t(window.area()), 0), SemiringTag::MaxPlus,
             NumericMode::ExactInteger),
        C_(C) {
    if (C < 0) throw error(ErrorCode::InvalidParams, "sum cutoff must be nonnegative");
    for (auto p : active) {
      if (!window.contains(p)) throw error(ErrorCode::OutOfWindow, "enumerated cell outside window");
      idx_.push_back(env_.index(p));
    }
    if (std::int64_t(idx_.size()) < window.area()) env_.restrict_support(active);
  }

  const Environment<std::int64_t>& current() const { return env_; }
  int current_sum() const { return sum_; }

  // Advances to the next grid; the first call yields the all-zero grid.
  bool next() {
    if (!started_) {
      started_ = true;
      return true;
    }
    auto& v = env_.mutable_values();
    std::size_t A = idx_.size();
    if (A == 0) return false;
    if (A > 1) {
      for (std::size_t i = A - 1; i-- > 0;) {
        if (v[idx_[i]] > 0) {
          std::int64_t t = v[idx_[A - 1]];
          v[idx_[A - 1]] = 0;
          v[idx_[i]] -= 1;
          v[idx_[i + 1]] = t + 1;
          return true;
        }
      }
    }
    if (sum_ == C_) return false;
    ++sum_;
    for (auto k : idx_) v[k] = 0;
    v[idx_[0]] = sum_;
    return true;
  }

 private:
  Environment<std::int64_t> env_;
  std::vector<std::size_t> idx_;
  int C_;
  int sum_ = 0;
  bool started_ = false;
};

template <class F>
void for_each_environment(const Box& window, const CellSet& active, int C, F&& fn) {
  EnvironmentEnumerator e(window, active, C);
  while (e.next()) fn(e.current(), e.current_sum());
}

// Multiset check of parameter windows for inhomogeneous towers.
inline bool rearrangement_valid(const PiecewiseTranslation& f, const ParamSequences& p,
                                const ParamSequences& q) {
  auto same_multiset = [](std::vector<double> a, std::vector<double> b) {
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
  };
  for (const auto& block : f.blocks()) {
    if (block.boxes.empty()) continue;
    int lo1a = block.boxes[0].lo.x, lo1b = lo1a, hi1a = block.boxes[0].hi.x, hi1b = hi1a;
    int lo2a = block.boxes[0].lo.y, lo2b = lo2a, hi2a = block.boxes[0].hi.y, hi2b = hi2a;
    for (const auto& u : block.boxes) {
      lo1a = std::min(lo1a, u.lo.x), lo1b = std::max(lo1b, u.lo.x);
      hi1a = std::min(hi1a, u.hi.x), hi1b = std::max(hi1b, u.hi.x);
      lo2a = std::min(lo2a, u.lo.y), lo2b = std::max(lo2b, u.lo.y);
      hi2a = std::min(hi2a, u.hi.y), hi2b = std::max(hi2b, u.hi.y);
    }
    Point c = block.offset;
    for (int a = lo1a; a <= lo1b; ++a)
      for (int b = std::max(a, hi1a); b <= hi1b; ++b) {
        std::vector<double> orig, moved;
        for (int i = a; i <= b; ++i) {
          orig.push_back(p.a(i));
          moved.push_back(q.a(i + c.x));
        }
        if (!same_multiset(orig, moved)) return false;
      }
    for (int a = lo2a; a <= lo2b; ++a)
      for (int b = std::max(a, hi2a); b <= hi2b; ++b) {
        std::vector<double> orig, moved;
        for (int j = a; j <= b; ++j) {
          orig.push_back(p.b(j));
          moved.push_back(q.b(j + c.y));
        }
        if (!same_multiset(orig, moved)) return false;
      }
  }
  return true;
}

}  // namespace lpplab
