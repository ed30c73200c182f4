#pragma once

#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "lpplab/rsk.hpp"
#include "lpplab/verify.hpp"

namespace lpplab {

using json = nlohmann::ordered_json;

namespace io {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) {
  throw error(ErrorCode::InvalidScenario, where + ": " + what);
}

// Rejects keys outside `allowed`.
inline void check_keys(const json& j, const std::set<std::string>& allowed, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  for (const auto& [k, _] : j.items())
    if (!allowed.count(k)) bad(where, "unknown field '" + k + "'");
}

inline const json& need(const json& j, const std::string& key, const std::string& where) {
  if (!j.contains(key)) bad(where, "missing field '" + key + "'");
  return j.at(key);
}

inline std::int64_t to_int(const json& j, const std::string& where) {
  if (!j.is_number_integer()) bad(where, "expected an integer");
  return j.get<std::int64_t>();
}

inline double to_real(const json& j, const std::string& where) {
  if (!j.is_number()) bad(where, "expected a number");
  return j.get<double>();
}

inline std::string to_str(const json& j, const std::string& where) {
  if (!j.is_string()) bad(where, "expected a string");
  return j.get<std::string>();
}

inline bool to_bool(const json& j, const std::string& where) {
  if (!j.is_boolean()) bad(where, "expected true or false");
  return j.get<bool>();
}

inline Point point_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) bad(where, "a point is [x, y]");
  return {int(to_int(j[0], where)), int(to_int(j[1], where))};
}

inline Box box_from_json(const json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 4) bad(where, "a box is [x0, y0, x1, y1]");
  Box b(int(to_int(j[0], where)), int(to_int(j[1], where)), int(to_int(j[2], where)), int(to_int(j[3], where)));
  if (!b.valid()) bad(where, "box corners out of order in " + to_string(b));
  return b;
}

inline BoxSet boxes_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of boxes");
  BoxSet r;
  for (std::size_t i = 0; i < j.size(); ++i) r.push_back(box_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return r;
}

inline std::vector<BoxSet> box_sets_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of box lists");
  std::vector<BoxSet> r;
  for (std::size_t i = 0; i < j.size(); ++i) r.push_back(boxes_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return r;
}

inline std::vector<Point> points_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of points");
  std::vector<Point> r;
  for (std::size_t i = 0; i < j.size(); ++i) r.push_back(point_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return r;
}

inline json to_json(const Box& b) { return json::array({b.lo.x, b.lo.y, b.hi.x, b.hi.y}); }
inline json to_json(Point p) { return json::array({p.x, p.y}); }

// A list of [x, y] cells, or {"row": [lo, hi], ...} with inclusive column ranges.
inline CellSet cells_from_json(const json& j, const std::string& where) {
  CellSet s;
  if (j.is_array()) {
    for (const auto& p : points_from_json(j, where)) s.insert(p);
  } else if (j.is_object()) {
    std::map<int, std::pair<int, int>> rows;
    for (const auto& [k, v] : j.items()) {
      int y;
      try {
        std::size_t used = 0;
        y = std::stoi(k, &used);
        if (used != k.size()) throw std::invalid_argument(k);
      } catch (const std::exception&) {
        bad(where, "row key '" + k + "' is not an integer");
      }
      Point r = point_from_json(v, where + "." + k);
      if (r.x > r.y) bad(where, "empty row interval for row " + k);
      rows[y] = {r.x, r.y};
    }
    s = cells_from_rows(rows);
  } else {
    bad(where, "cells are a list of [x, y] or a row-interval object");
  }
  return s;
}

// [[a, b], ...] or {"first": k, "steps": "LR..."}.
inline IntervalChain chain_from_json(const json& j, const std::string& where) {
  if (j.is_array()) {
    IntervalChain c;
    for (std::size_t i = 0; i < j.size(); ++i) {
      Point p = point_from_json(j[i], where);
      c.intervals.push_back({p.x, p.y});
    }
    return c;
  }
  check_keys(j, {"first", "steps"}, where);
  return chain_from_steps(int(to_int(need(j, "first", where), where)), to_str(need(j, "steps", where), where));
}

inline json to_json(const IntervalChain& c) {
  json a = json::array();
  for (auto [x, y] : c.intervals) a.push_back(json::array({x, y}));
  return a;
}

inline json to_json(const IntegerPartition& p) { return json(p.parts); }

inline json to_json(const PartitionSequence& s) {
  json a = json::array();
  for (const auto& p : s) a.push_back(to_json(p));
  return a;
}

inline PartitionSequence partition_sequence_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) bad(where, "expected a list of part lists");
  PartitionSequence s;
  for (const auto& p : j) {
    if (!p.is_array()) bad(where, "a partition is a list of parts");
    std::vector<std::int64_t> parts;
    for (const auto& x : p) parts.push_back(to_int(x, where));
    s.emplace_back(parts);
  }
  return s;
}

inline Rational rational_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) return Rational(j.get<std::int64_t>());
  std::string s = to_str(j, where);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt num(s.substr(0, slash)), den(s.substr(slash + 1));
    if (den == 0) bad(where, "zero denominator");
    return Rational(num, den);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const error*>(&e)) throw;
    bad(where, "'" + s + "' is not an exact rational");
  }
}

inline std::string to_string(const Rational& r) {
  using boost::multiprecision::denominator;
  using boost::multiprecision::numerator;
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline json to_json(const BigInt& v) { return v.str(); }

inline std::map<int, double> index_map(const json& j, const std::string& where) {
  std::map<int, double> m;
  if (!j.is_object()) bad(where, "expected {\"index\": value}");
  for (const auto& [k, v] : j.items()) {
    int i;
    try {
      std::size_t used = 0;
      i = std::stoi(k, &used);
      if (used != k.size()) throw std::invalid_argument(k);
    } catch (const std::exception&) {
      bad(where, "index '" + k + "' is not an integer");
    }
    m[i] = to_real(v, where);
  }
  return m;
}

inline ParamSequences params_from_json(const json& j, const std::string& where) {
  check_keys(j, {"alpha", "alpha_default", "beta", "beta_default"}, where);
  ParamSequences p;
  if (j.contains("alpha")) p.alpha = index_map(j["alpha"], where + ".alpha");
  if (j.contains("beta")) p.beta = index_map(j["beta"], where + ".beta");
  if (j.contains("alpha_default")) p.alpha_default = to_real(j["alpha_default"], where);
  if (j.contains("beta_default")) p.beta_default = to_real(j["beta_default"], where);
  return p;
}

inline json to_json(const ParamSequences& p) {
  json a = json::object(), b = json::object();
  for (auto [k, v] : p.alpha) a[std::to_string(k)] = v;
  for (auto [k, v] : p.beta) b[std::to_string(k)] = v;
  return {{"alpha", a}, {"alpha_default", p.alpha_default}, {"beta", b}, {"beta_default", p.beta_default}};
}

// {"name": "geometric", "q": 0.5} | {"name": "exponential", "rate": 1}
// | {"name": "inverse_gamma", "shape": 3} | {"name": "bernoulli", "p_one": 0.95}
inline ModelSpec model_from_json(const json& j, const std::string& where) {
  std::string name = to_str(need(j, "name", where), where + ".name");
  Model m;
  try {
    m = model_from_string(name);
  } catch (const error&) {
    bad(where, "unknown model '" + name + "'");
  }
  switch (m) {
    case Model::Geometric: {
      check_keys(j, {"name", "q"}, where);
      double q = to_real(need(j, "q", where), where);
      if (!(q > 0 && q < 1)) bad(where, "q must lie in (0,1)");
      return ModelSpec::geometric(q);
    }
    case Model::Exponential: {
      check_keys(j, {"name", "rate"}, where);
      double r = j.contains("rate") ? to_real(j["rate"], where) : 1.0;
      if (!(r > 0)) bad(where, "rate must be positive");
      return ModelSpec::exponential(r);
    }
    case Model::InverseGamma: {
      check_keys(j, {"name", "shape"}, where);
      double s = to_real(need(j, "shape", where), where);
      if (!(s > 0)) bad(where, "shape must be positive");
      return ModelSpec::inverse_gamma(s);
    }
    case Model::Bernoulli: break;
  }
  check_keys(j, {"name", "p_one"}, where);
  double p = to_real(need(j, "p_one", where), where);
  if (!(p >= 0 && p <= 1)) bad(where, "p_one must lie in [0,1]");
  return ModelSpec::bernoulli(p);
}

inline json to_json(const ModelSpec& m) {
  json j{{"name", to_string(m.model)}};
  if (m.model == Model::Bernoulli)
    j["p_one"] = m.p_one;
  else
    j["params"] = to_json(m.params);
  return j;
}

inline TwoSampleOptions test_options_from_json(const json& j, const std::string& where) {
  check_keys(j, {"level", "permutations", "energy_subsample", "pairwise_differences", "discrete_joint"}, where);
  TwoSampleOptions o;
  if (j.contains("level")) o.level = to_real(j["level"], where);
  if (j.contains("permutations")) o.permutations = int(to_int(j["permutations"], where));
  if (j.contains("energy_subsample")) {
    auto n = to_int(j["energy_subsample"], where);
    if (n < 2) bad(where, "energy_subsample must be at least 2");
    o.energy_subsample = std::size_t(n);
  }
  if (j.contains("pairwise_differences")) o.pairwise_differences = to_bool(j["pairwise_differences"], where);
  if (j.contains("discrete_joint")) o.discrete_joint = to_bool(j["discrete_joint"], where);
  if (!(o.level > 0 && o.level < 1)) bad(where, "level must lie in (0,1)");
  if (o.permutations < 1) bad(where, "permutations must be positive");
  return o;
}

// Rows listed from the lowest row up.
template <class T, class Parse>
std::vector<T> matrix_from_json(const json& rows, const Box& window, Parse&& parse, const std::string& where) {
  if (!rows.is_array() || int(rows.size()) != window.height()) bad(where, "need one row per window row");
  std::vector<T> v;
  for (const auto& r : rows) {
    if (!r.is_array() || int(r.size()) != window.width()) bad(where, "row length differs from window width");
    for (const auto& x : r) v.push_back(parse(x));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Reports

inline json to_json(const ExactReport& r) {
  json mm = json::array();
  for (const auto& m : r.mismatches)
    mm.push_back({{"key", m.key}, {"degree", m.degree}, {"lhs", to_json(m.lhs)}, {"rhs", to_json(m.rhs)}});
  return {{"check", r.check},         {"C", r.C},
          {"keys", r.keys},           {"lhs_cells", r.lhs_cells},
          {"rhs_cells", r.rhs_cells}, {"equal", r.equal()},
          {"mismatch_count", r.mismatch_count}, {"mismatches", mm}};
}

inline json to_json(const TwoSampleReport& r) {
  json tests = json::array();
  for (const auto& t : r.tests)
    tests.push_back({{"name", t.name}, {"statistic", t.statistic}, {"p_value", t.p_value}, {"adjusted", t.adjusted}});
  return {{"n_x", r.n_x},
          {"n_y", r.n_y},
          {"level", r.level},
          {"min_adjusted", r.min_adjusted},
          {"verdict", r.accept ? "accept" : "reject"},
          {"tests", tests}};
}

inline json to_json(const MCReport& r) {
  json j{{"check", r.check}, {"coordinates", r.names}, {"N", r.N}, {"seed", r.seed}};
  j.update(to_json(r.result));
  return j;
}

inline json to_json(const BijectionReport& r) {
  return {{"fillings", r.fillings},
          {"distinct_outputs", r.distinct_outputs},
          {"injective", r.injective},
          {"admissible", r.admissible},
          {"weight_identities", r.weight_identities},
          {"fillings_by_size", r.fillings_by_size},
          {"outputs_by_size", r.outputs_by_size},
          {"image_by_size", r.image_by_size},
          {"image_matches", r.image_matches()},
          {"first_failure", r.first_failure},
          {"ok", r.ok()}};
}

inline json to_json(const EpsControlReport& r) {
  return {{"eps", to_string(r.eps)},
          {"given_bottom_row", to_string(r.given_bottom)},
          {"given_middle_row", to_string(r.given_middle)},
          {"one_minus_eps_cubed", to_string(r.cube)},
          {"total_variation", to_string(r.total_variation)},
          {"bottom_at_most_half", r.bound_holds},
          {"middle_equals_cube", r.middle_is_cube},
          {"cube_exceeds_half", r.argument_applies},
          {"threshold", nonintegrable_threshold()},
          {"laws_differ", r.laws_differ},
          {"certified", r.certified()}};
}

inline json to_json(const ScrambledRSK& r) { return {{"phi", to_json(r.phi)}, {"psi", to_json(r.psi)}}; }

inline json to_json(const BoxExhaustion& u) {
  json a = json::array();
  for (const auto& b : u.boxes) a.push_back(to_json(b));
  return a;
}

}  // namespace io
}  // namespace lpplab
