#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "lpplab/error.hpp"

namespace lpplab {

// x is the column, y the row. Paths step +x or +y.
struct Point {
  int x = 0;
  int y = 0;

  friend constexpr bool operator==(Point, Point) = default;
  friend constexpr auto operator<=>(Point a, Point b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }
  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator-(Point a) { return {-a.x, -a.y}; }
};

inline std::ostream& operator<<(std::ostream& os, Point p) {
  return os << '(' << p.x << ',' << p.y << ')';
}

// a ↘ b
constexpr bool southeast_of(Point a, Point b) { return a.x <= b.x && a.y >= b.y; }
// a ↗ b
constexpr bool northeast_of(Point a, Point b) { return a.x <= b.x && a.y <= b.y; }

struct Box {
  Point lo;
  Point hi;

  constexpr Box() = default;
  constexpr Box(Point l, Point h) : lo(l), hi(h) {}
  constexpr Box(int x0, int y0, int x1, int y1) : lo{x0, y0}, hi{x1, y1} {}

  static Box checked(Point l, Point h) {
    if (!northeast_of(l, h)) throw error(ErrorCode::InvalidParams, "box corners out of order");
    return Box(l, h);
  }

  constexpr bool valid() const { return northeast_of(lo, hi); }
  constexpr int width() const { return hi.x - lo.x + 1; }
  constexpr int height() const { return hi.y - lo.y + 1; }
  constexpr std::int64_t area() const { return std::int64_t(width()) * height(); }
  constexpr bool contains(Point p) const {
    return lo.x <= p.x && p.x <= hi.x && lo.y <= p.y && p.y <= hi.y;
  }
  constexpr bool contains(const Box& b) const { return contains(b.lo) && contains(b.hi); }
  constexpr int max_paths() const { return std::min(width(), height()); }

  friend constexpr bool operator==(const Box&, const Box&) = default;
  friend constexpr auto operator<=>(const Box& a, const Box& b) {
    if (auto c = a.lo <=> b.lo; c != 0) return c;
    return a.hi <=> b.hi;
  }
};

inline std::ostream& operator<<(std::ostream& os, const Box& b) {
  return os << '(' << b.lo.x << ',' << b.lo.y << ';' << b.hi.x << ',' << b.hi.y << ')';
}

inline std::string to_string(const Box& b) {
  return "(" + std::to_string(b.lo.x) + "," + std::to_string(b.lo.y) + ";" +
         std::to_string(b.hi.x) + "," + std::to_string(b.hi.y) + ")";
}

inline std::optional<Box> intersect(const Box& a, const Box& b) {
  Box r({std::max(a.lo.x, b.lo.x), std::max(a.lo.y, b.lo.y)},
        {std::min(a.hi.x, b.hi.x), std::min(a.hi.y, b.hi.y)});
  if (!r.valid()) return std::nullopt;
  return r;
}

inline bool disjoint(const Box& a, const Box& b) { return !intersect(a, b).has_value(); }

inline Box hull(const Box& a, const Box& b) {
  return Box({std::min(a.lo.x, b.lo.x), std::min(a.lo.y, b.lo.y)},
             {std::max(a.hi.x, b.hi.x), std::max(a.hi.y, b.hi.y)});
}

inline Box hull(const std::vector<Box>& boxes) {
  if (boxes.empty()) throw error(ErrorCode::InvalidParams, "hull of an empty box set");
  Box h = boxes.front();
  for (const auto& b : boxes) h = hull(h, b);
  return h;
}

constexpr bool crosses_horizontally(const Box& u, const Box& v) {
  return southeast_of(u.lo, v.lo) && southeast_of(v.hi, u.hi);
}

constexpr bool crosses_vertically(const Box& u, const Box& v) {
  return southeast_of(v.lo, u.lo) && southeast_of(u.hi, v.hi);
}

enum class CrossingKind { Horizontal, Vertical, Disjoint, Overlap };

inline const char* to_string(CrossingKind k) {
  switch (k) {
    case CrossingKind::Horizontal: return "Horizontal";
    case CrossingKind::Vertical: return "Vertical";
    case CrossingKind::Disjoint: return "Disjoint";
    case CrossingKind::Overlap: return "Overlap";
  }
  return "?";
}

// Equal boxes cross both ways, so both flags are kept.
struct Crossing {
  bool horizontal = false;
  bool vertical = false;
  bool disjoint = false;

  CrossingKind kind() const {
    if (horizontal) return CrossingKind::Horizontal;
    if (vertical) return CrossingKind::Vertical;
    if (disjoint) return CrossingKind::Disjoint;
    return CrossingKind::Overlap;
  }
  bool crosses() const { return horizontal || vertical; }
};

inline Crossing classify(const Box& u, const Box& v) {
  return {crosses_horizontally(u, v), crosses_vertically(u, v), disjoint(u, v)};
}

inline bool in_H(const Box& u, const Box& v) { return crosses_horizontally(u, v); }
inline bool in_V(const Box& u, const Box& v) { return crosses_vertically(u, v); }
inline bool in_N(const Box& u, const Box& v) { return disjoint(u, v); }

constexpr Box translate(const Box& u, Point c) { return Box(u.lo + c, u.hi + c); }
constexpr Box reflect_diagonal(const Box& u) {
  return Box(Point{u.lo.y, u.lo.x}, Point{u.hi.y, u.hi.x});
}
constexpr Box reflect_origin(const Box& u) { return Box(-u.hi, -u.lo); }

struct Isometry {
  enum class Kind { Translate, R1, R2 };
  Kind kind = Kind::Translate;
  Point offset{};

  static Isometry translation(Point c) { return {Kind::Translate, c}; }
  static Isometry r1() { return {Kind::R1, {}}; }
  static Isometry r2() { return {Kind::R2, {}}; }
};

constexpr Box apply_isometry(const Box& u, const Isometry& g) {
  switch (g.kind) {
    case Isometry::Kind::Translate: return translate(u, g.offset);
    case Isometry::Kind::R1: return reflect_diagonal(u);
    case Isometry::Kind::R2: return reflect_origin(u);
  }
  return u;
}

using CellSet = std::set<Point>;

inline void add_cells(CellSet& s, const Box& b) {
  for (int x = b.lo.x; x <= b.hi.x; ++x)
    for (int y = b.lo.y; y <= b.hi.y; ++y) s.insert({x, y});
}

inline CellSet cells(const Box& b) {
  CellSet s;
  add_cells(s, b);
  return s;
}

inline CellSet cells(const std::vector<Box>& boxes) {
  CellSet s;
  for (const auto& b : boxes) add_cells(s, b);
  return s;
}

inline bool is_subset(const CellSet& a, const CellSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline CellSet set_intersection(const CellSet& a, const CellSet& b) {
  CellSet r;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::inserter(r, r.end()));
  return r;
}

// Smallest box containing every cell.
inline Box bounding_box(const CellSet& s) {
  if (s.empty()) throw error(ErrorCode::InvalidParams, "empty cell set has no bounding box");
  Point lo = *s.begin(), hi = *s.begin();
  for (auto p : s) {
    lo.x = std::min(lo.x, p.x);
    lo.y = std::min(lo.y, p.y);
    hi.x = std::max(hi.x, p.x);
    hi.y = std::max(hi.y, p.y);
  }
  return Box(lo, hi);
}

// Returns the box when the cell set is exactly a rectangle.
inline std::optional<Box> as_box(const CellSet& s) {
  if (s.empty()) return std::nullopt;
  Box b = bounding_box(s);
  if (b.area() != std::int64_t(s.size())) return std::nullopt;
  return b;
}

}  // namespace lpplab
