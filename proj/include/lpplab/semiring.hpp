#pragma once

#include <cstdint>
#include <ostream>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "lpplab/error.hpp"

namespace lpplab {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class SemiringTag { MaxPlus, SumProduct };
enum class NumericMode { ExactInteger, ExactRational, Float64 };

inline const char* to_string(SemiringTag t) {
  return t == SemiringTag::MaxPlus ? "MaxPlus" : "SumProduct";
}

inline const char* to_string(NumericMode m) {
  switch (m) {
    case NumericMode::ExactInteger: return "ExactInteger";
    case NumericMode::ExactRational: return "ExactRational";
    case NumericMode::Float64: return "Float64";
  }
  return "?";
}

inline SemiringTag semiring_from_string(const std::string& s) {
  if (s == "MaxPlus") return SemiringTag::MaxPlus;
  if (s == "SumProduct") return SemiringTag::SumProduct;
  throw error(ErrorCode::InvalidParams, "unknown semiring '" + s + "'");
}

inline NumericMode mode_from_string(const std::string& s) {
  if (s == "ExactInteger") return NumericMode::ExactInteger;
  if (s == "ExactRational") return NumericMode::ExactRational;
  if (s == "Float64") return NumericMode::Float64;
  throw error(ErrorCode::InvalidParams, "unknown numeric mode '" + s + "'");
}

// Max-plus value with an explicit bottom (the max of an empty set).
template <class T>
struct Tropical {
  bool bottom = true;
  T value{};

  static Tropical neg_inf() { return {}; }
  static Tropical of(T v) { return {false, std::move(v)}; }

  bool is_bottom() const { return bottom; }
  const T& get() const {
    if (bottom) throw error(ErrorCode::NoAdmissiblePath, "bottom element has no finite value");
    return value;
  }

  friend bool operator==(const Tropical& a, const Tropical& b) {
    if (a.bottom || b.bottom) return a.bottom == b.bottom;
    return a.value == b.value;
  }
  friend bool operator!=(const Tropical& a, const Tropical& b) { return !(a == b); }
  friend bool operator<(const Tropical& a, const Tropical& b) {
    if (b.bottom) return false;
    if (a.bottom) return true;
    return a.value < b.value;
  }
  friend std::ostream& operator<<(std::ostream& os, const Tropical& t) {
    if (t.bottom) return os << "-inf";
    return os << t.value;
  }
};

template <class T>
struct MaxPlus {
  using scalar = T;
  using value = Tropical<T>;
  static constexpr SemiringTag tag = SemiringTag::MaxPlus;

  static value zero() { return value::neg_inf(); }
  static value one() { return value::of(T(0)); }
  static value lift(const T& x) { return value::of(x); }
  static bool is_zero(const value& a) { return a.bottom; }
  static value plus(const value& a, const value& b) { return a < b ? b : a; }
  static value times(const value& a, const value& b) {
    if (a.bottom || b.bottom) return zero();
    return value::of(a.value + b.value);
  }
  static value divide(const value& a, const value& b) {
    if (b.bottom) throw error(ErrorCode::WrongMode, "division by the max-plus bottom");
    if (a.bottom) return zero();
    return value::of(a.value - b.value);
  }
};

template <class T>
struct SumProduct {
  using scalar = T;
  using value = T;
  static constexpr SemiringTag tag = SemiringTag::SumProduct;

  static value zero() { return T(0); }
  static value one() { return T(1); }
  static value lift(const T& x) { return x; }
  static bool is_zero(const value& a) { return a == T(0); }
  static value plus(const value& a, const value& b) { return a + b; }
  static value times(const value& a, const value& b) { return a * b; }
  static value divide(const value& a, const value& b) {
    if (b == T(0)) throw error(ErrorCode::WrongMode, "division by zero partition value");
    return a / b;
  }
};

// Path existence; accepts any weight type and ignores the weight.
template <class T>
struct Boolean {
  using scalar = T;
  using value = bool;

  static value zero() { return false; }
  static value one() { return true; }
  static value lift(const T&) { return true; }
  static bool is_zero(value a) { return !a; }
  static value plus(value a, value b) { return a || b; }
  static value times(value a, value b) { return a && b; }
};

// Counts paths, used for side-hitting checks.
template <class T>
struct Counting {
  using scalar = T;
  using value = BigInt;

  static value zero() { return 0; }
  static value one() { return 1; }
  static value lift(const T&) { return 1; }
  static bool is_zero(const value& a) { return a == 0; }
  static value plus(const value& a, const value& b) { return a + b; }
  static value times(const value& a, const value& b) { return a * b; }
};

}  // namespace lpplab
