#pragma once

#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>

#include "lpplab/io.hpp"

namespace lpplab {

inline constexpr const char* kArtifactVersion = "0.1.0";
inline constexpr int kScenarioSchema = 1;

enum class ScenarioKind {
  Sample,
  ExactInvariance,
  MCInvariance,
  CondIndep,
  RSK,
  MoonRSK,
  EncodePhi,
  NegativeControl,
  Geodesic,
  Quenched,
  Disjointness,
  Inhomogeneous,
};

inline const std::vector<std::pair<ScenarioKind, std::string>>& scenario_kinds() {
  static const std::vector<std::pair<ScenarioKind, std::string>> k{
      {ScenarioKind::Sample, "Sample"},
      {ScenarioKind::ExactInvariance, "ExactInvariance"},
      {ScenarioKind::MCInvariance, "MCInvariance"},
      {ScenarioKind::CondIndep, "CondIndep"},
      {ScenarioKind::RSK, "RSK"},
      {ScenarioKind::MoonRSK, "MoonRSK"},
      {ScenarioKind::EncodePhi, "EncodePhi"},
      {ScenarioKind::NegativeControl, "NegativeControl"},
      {ScenarioKind::Geodesic, "Geodesic"},
      {ScenarioKind::Quenched, "Quenched"},
      {ScenarioKind::Disjointness, "Disjointness"},
      {ScenarioKind::Inhomogeneous, "Inhomogeneous"},
  };
  return k;
}

inline std::string to_string(ScenarioKind k) {
  for (const auto& [kind, name] : scenario_kinds())
    if (kind == k) return name;
  return "?";
}

struct Scenario {
  std::string id;
  std::string anchor;
  std::string source;
  ScenarioKind kind = ScenarioKind::Sample;
  std::string expect = "accept";
  std::uint64_t seed = 1;
  std::optional<std::int64_t> budget;
  json body;  // the whole document
};

namespace detail {

inline const std::set<std::string> kCommonKeys{"schema", "id", "kind", "anchor", "expect", "seed", "budget", "description"};

inline std::set<std::string> kind_keys(ScenarioKind k) {
  switch (k) {
    case ScenarioKind::Sample: return {"model", "boxes", "diagonals"};
    case ScenarioKind::ExactInvariance: return {"statement", "diagonals"};
    case ScenarioKind::MCInvariance: return {"statement", "diagonals", "model", "test"};
    case ScenarioKind::CondIndep: return {"box", "support"};
    case ScenarioKind::RSK: return {"n", "m", "I", "J", "matrix"};
    case ScenarioKind::MoonRSK: return {"cells", "exhaustion"};
    case ScenarioKind::EncodePhi: return {"box", "semiring", "rows"};
    case ScenarioKind::NegativeControl: return {"control", "eps", "model", "test", "reject_level"};
    case ScenarioKind::Geodesic:
    case ScenarioKind::Quenched: return {"U", "V", "w", "x", "c", "model", "test"};
    case ScenarioKind::Disjointness: return {"U", "V", "W", "c", "selected", "model", "test"};
    case ScenarioKind::Inhomogeneous: return {"statement", "diagonals", "family", "params", "params_image", "test"};
  }
  return {};
}

}  // namespace detail

inline Scenario parse_scenario(const json& j, const std::string& source) {
  const std::string where = source.empty() ? "scenario" : source;
  if (!j.is_object()) io::bad(where, "top level must be an object");
  Scenario s;
  s.source = source;
  if (io::to_int(io::need(j, "schema", where), where + ".schema") != kScenarioSchema)
    io::bad(where, "unsupported schema version");
  s.id = io::to_str(io::need(j, "id", where), where + ".id");
  if (s.id.empty() || s.id.find_first_of("/\\ ") != std::string::npos) io::bad(where, "id must be a plain file stem");
  std::string kind = io::to_str(io::need(j, "kind", where), where + ".kind");
  bool found = false;
  for (const auto& [k, name] : scenario_kinds())
    if (name == kind) s.kind = k, found = true;
  if (!found) io::bad(where, "unknown kind '" + kind + "'");
  s.anchor = io::to_str(io::need(j, "anchor", where), where + ".anchor");
  if (j.contains("expect")) {
    s.expect = io::to_str(j["expect"], where + ".expect");
    if (s.expect != "accept" && s.expect != "reject") io::bad(where, "expect is 'accept' or 'reject'");
  }
  if (j.contains("seed")) {
    auto v = io::to_int(j["seed"], where + ".seed");
    if (v < 0) io::bad(where, "seed must be nonnegative");
    s.seed = std::uint64_t(v);
  }
  if (j.contains("budget")) {
    s.budget = io::to_int(j["budget"], where + ".budget");
    if (*s.budget < 0) io::bad(where, "budget must be nonnegative");
  }
  auto allowed = detail::kCommonKeys;
  for (const auto& k : detail::kind_keys(s.kind)) allowed.insert(k);
  io::check_keys(j, allowed, where);
  s.body = j;
  return s;
}

inline Scenario load_scenario(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw error(ErrorCode::InvalidScenario, p.string() + ": cannot open");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw error(ErrorCode::InvalidScenario, p.string() + ": " + e.what());
  }
  return parse_scenario(j, p.string());
}

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  bool keep_samples = false;
};

struct RunResult {
  std::string outcome = "accept";
  bool matches = true;
  json report;
  std::vector<TestEntry> tests;
  std::vector<std::string> columns;
  Samples lhs, rhs;
};

namespace detail {

inline InvarianceStatement statement_from_json(const json& j, const json* diag, const std::string& where) {
  std::string type = io::to_str(io::need(j, "type", where), where + ".type");
  std::vector<Coordinate> extra;
  bool all = false;
  if (diag) {
    if (diag->is_boolean()) {
      all = diag->get<bool>();
    } else if (diag->is_array()) {
      for (const auto& d : *diag) {
        io::check_keys(d, {"box", "k"}, where + ".diagonals");
        extra.push_back({io::box_from_json(io::need(d, "box", where), where + ".diagonals"),
                         int(io::to_int(io::need(d, "k", where), where + ".diagonals"))});
      }
    } else {
      io::bad(where, "diagonals is true/false or a list of {box, k}");
    }
  }
  auto finish = [&](InvarianceStatement st) {
    if (all) st.with_all_diagonals();
    return st;
  };
  auto sets = [&](const char* k) { return io::box_sets_from_json(io::need(j, k, where), where + "." + k); };
  auto boxes = [&](const char* k) { return io::boxes_from_json(io::need(j, k, where), where + "." + k); };
  auto points = [&](const char* k) { return io::points_from_json(io::need(j, k, where), where + "." + k); };
  auto point = [&](const char* k) { return io::point_from_json(io::need(j, k, where), where + "." + k); };
  try {
    if (type == "identity") {
      io::check_keys(j, {"type", "boxes"}, where);
      return finish(InvarianceStatement::identity(boxes("boxes"), extra));
    }
    if (type == "tower") {
      io::check_keys(j, {"type", "levels", "offsets"}, where);
      return finish(InvarianceStatement::tower({sets("levels"), points("offsets")}, extra));
    }
    if (type == "permutation") {
      io::check_keys(j, {"type", "U", "c", "V", "d"}, where);
      return finish(InvarianceStatement::permutation({sets("U"), points("c"), sets("V"), points("d")}, extra));
    }
    if (type == "slide") {
      io::check_keys(j, {"type", "U1", "U2", "W1", "W2", "c"}, where);
      return finish(InvarianceStatement::slide({boxes("U1"), boxes("U2"), boxes("W1"), boxes("W2"), point("c")}, extra));
    }
    if (type == "column_transposition") {
      io::check_keys(j, {"type", "Uh", "Un", "Wa", "Wb", "b", "k", "l"}, where);
      ColumnTranspositionStatement s{boxes("Uh"), boxes("Un"), boxes("Wa"), boxes("Wb"),
                                     io::box_from_json(io::need(j, "b", where), where + ".b"),
                                     int(io::to_int(io::need(j, "k", where), where + ".k")),
                                     int(io::to_int(io::need(j, "l", where), where + ".l"))};
      return finish(InvarianceStatement::column_transposition(s, extra));
    }
  } catch (const error& e) {
    if (e.code() == ErrorCode::InvalidParams) io::bad(where, e.what());
    throw;
  }
  io::bad(where, "unknown statement type '" + type + "'");
}

inline MCOptions mc_options(const Scenario& s, const Overrides& o, std::int64_t default_n) {
  MCOptions opt;
  opt.N = std::size_t(o.budget ? *o.budget : s.budget.value_or(default_n));
  if (opt.N == 0) io::bad(s.id, "sample budget must be positive");
  opt.seed = o.seed.value_or(s.seed);
  opt.keep_samples = o.keep_samples;
  if (s.body.contains("test")) opt.test = io::test_options_from_json(s.body["test"], s.id + ".test");
  return opt;
}

inline int exact_budget(const Scenario& s, const Overrides& o, int def) {
  auto c = o.budget ? *o.budget : s.budget.value_or(def);
  if (c > 64) io::bad(s.id, "sum cutoff above 64 is not supported");
  return int(c);
}

inline ModelSpec scenario_model(const Scenario& s) {
  return io::model_from_json(io::need(s.body, "model", s.id), s.id + ".model");
}

inline void fill_mc(RunResult& r, MCReport rep) {
  r.outcome = rep.accept() ? "accept" : "reject";
  r.report = io::to_json(rep);
  r.tests = rep.result.tests;
  r.columns = rep.names;
  r.lhs = std::move(rep.lhs);
  r.rhs = std::move(rep.rhs);
}

inline GeodesicStatement geodesic_from_json(const Scenario& s) {
  const auto& j = s.body;
  return {io::boxes_from_json(io::need(j, "U", s.id), s.id + ".U"), io::boxes_from_json(io::need(j, "V", s.id), s.id + ".V"),
          io::box_from_json(io::need(j, "x", s.id), s.id + ".x"), io::box_from_json(io::need(j, "w", s.id), s.id + ".w"),
          io::point_from_json(io::need(j, "c", s.id), s.id + ".c")};
}

template <class S, class T>
json encode_phi_report(const Environment<T>& env, const Box& u, bool& ok, const std::function<json(const T&)>& out) {
  auto phi = encode_phi<S>(env, u);
  std::size_t checked = 0;
  ok = true;
  std::string failure;
  for (const auto& e : endpoint_family(u, EndpointFamily::Vbar)) {
    ++checked;
    auto lhs = multi_partition<S>(env, e);
    auto rhs = multi_partition<S>(phi, project_endpoint(u, e));
    if (!(lhs == rhs)) {
      ok = false;
      if (failure.empty()) failure = to_string(e);
    }
  }
  json rows = json::array();
  for (int y = u.lo.y; y <= u.hi.y; ++y) {
    json r = json::array();
    for (int x = u.lo.x; x <= u.hi.x; ++x) r.push_back(phi.in_support({x, y}) ? out(phi({x, y})) : json(nullptr));
    rows.push_back(r);
  }
  return {{"phi_rows", rows}, {"endpoints_checked", checked}, {"identity", ok}, {"first_failure", failure}};
}

}  // namespace detail

inline RunResult run_scenario(const Scenario& s, const Overrides& o = {}) {
  RunResult r;
  const json& j = s.body;
  const std::string& w = s.id;
  switch (s.kind) {
    case ScenarioKind::Sample: {
      ModelSpec m = detail::scenario_model(s);
      BoxSet boxes = io::boxes_from_json(io::need(j, "boxes", w), w + ".boxes");
      if (boxes.empty()) io::bad(w, "no boxes to sample");
      auto st = InvarianceStatement::identity(boxes);
      if (j.contains("diagonals") && io::to_bool(j["diagonals"], w + ".diagonals")) st.with_all_diagonals();
      std::int64_t n = o.budget ? *o.budget : s.budget.value_or(1000);
      if (n <= 0) io::bad(w, "sample budget must be positive");
      RandomSource rng{o.seed.value_or(s.seed), kLeftStream};
      Box window = coordinate_window(st.coordinates());
      for (std::int64_t i = 0; i < n; ++i)
        r.lhs.push_back(with_sampled_environment(m, window, rng.substream(std::uint64_t(i)), [&](const auto& env, auto sr) {
          using S = decltype(sr);
          std::vector<double> row;
          for (const auto& c : st.coordinates()) row.push_back(as_real<S>(evaluate<S>(env, c)));
          return row;
        }));
      r.columns = st.names();
      json stats = json::array();
      for (std::size_t k = 0; k < r.columns.size(); ++k) {
        double mean = 0, var = 0;
        for (const auto& row : r.lhs) mean += row[k];
        mean /= double(n);
        for (const auto& row : r.lhs) var += (row[k] - mean) * (row[k] - mean);
        stats.push_back({{"coordinate", r.columns[k]}, {"mean", mean}, {"sd", std::sqrt(var / double(n))}});
      }
      r.report = {{"model", io::to_json(m)}, {"N", n}, {"seed", o.seed.value_or(s.seed)}, {"summary", stats}};
      if (!o.keep_samples) r.lhs.clear();
      break;
    }
    case ScenarioKind::ExactInvariance: {
      auto st = detail::statement_from_json(io::need(j, "statement", w), j.contains("diagonals") ? &j["diagonals"] : nullptr,
                                            w + ".statement");
      auto rep = exact_geometric_invariance(st, detail::exact_budget(s, o, 6));
      r.outcome = rep.equal() ? "accept" : "reject";
      r.report = io::to_json(rep);
      break;
    }
    case ScenarioKind::MCInvariance: {
      auto st = detail::statement_from_json(io::need(j, "statement", w), j.contains("diagonals") ? &j["diagonals"] : nullptr,
                                            w + ".statement");
      ModelSpec m = detail::scenario_model(s);
      if (m.model == Model::Bernoulli) io::bad(w, "Bernoulli weights are only used by negative controls");
      detail::fill_mc(r, mc_invariance(st, m, detail::mc_options(s, o, 20000)));
      break;
    }
    case ScenarioKind::CondIndep: {
      Box u = io::box_from_json(io::need(j, "box", w), w + ".box");
      GridSupport sup = GridSupport::NonNegative;
      if (j.contains("support")) {
        auto v = io::to_str(j["support"], w + ".support");
        if (v == "zero_one")
          sup = GridSupport::ZeroOne;
        else if (v != "nonnegative")
          io::bad(w, "support is 'nonnegative' or 'zero_one'");
      }
      auto rep = exact_conditional_independence(u, detail::exact_budget(s, o, 6), sup);
      r.outcome = rep.equal() ? "accept" : "reject";
      r.report = io::to_json(rep);
      break;
    }
    case ScenarioKind::RSK: {
      int n = int(io::to_int(io::need(j, "n", w), w + ".n")), m = int(io::to_int(io::need(j, "m", w), w + ".m"));
      if (n < 1 || m < 1) io::bad(w, "n and m must be positive");
      auto I = io::chain_from_json(io::need(j, "I", w), w + ".I");
      auto J = io::chain_from_json(io::need(j, "J", w), w + ".J");
      auto rep = verify_scrambled_bijection(n, m, I, J, detail::exact_budget(s, o, 3));
      r.outcome = rep.ok() ? "accept" : "reject";
      r.report = {{"I", io::to_json(I)}, {"J", io::to_json(J)}, {"bijection", io::to_json(rep)}};
      if (j.contains("matrix")) {
        Box win(1, 1, n, m);
        auto vals = io::matrix_from_json<std::int64_t>(j["matrix"], win, [&](const json& x) { return io::to_int(x, w); },
                                                       w + ".matrix");
        Environment<std::int64_t> env(win, vals, SemiringTag::MaxPlus, NumericMode::ExactInteger);
        auto out = scrambled_rsk(env, I, J);
        r.report["filling"] = io::to_json(out);
        r.report["filling_check"] = check_scrambled(env, I, J, out);
      }
      break;
    }
    case ScenarioKind::MoonRSK: {
      CellSet cs = io::cells_from_json(io::need(j, "cells", w), w + ".cells");
      if (cs.empty()) io::bad(w, "empty cell set");
      BoxExhaustion u = j.contains("exhaustion") ? BoxExhaustion{io::boxes_from_json(j["exhaustion"], w + ".exhaustion")}
                                                 : box_exhaustion(cs);
      auto rep = verify_moon_bijection(cs, u, detail::exact_budget(s, o, 2));
      r.outcome = rep.ok() ? "accept" : "reject";
      r.report = {{"exhaustion", io::to_json(u)}, {"bijection", io::to_json(rep)}};
      break;
    }
    case ScenarioKind::EncodePhi: {
      Box u = io::box_from_json(io::need(j, "box", w), w + ".box");
      std::string sr = io::to_str(io::need(j, "semiring", w), w + ".semiring");
      bool ok = false;
      if (sr == "MaxPlus") {
        auto vals = io::matrix_from_json<std::int64_t>(io::need(j, "rows", w), u,
                                                       [&](const json& x) { return io::to_int(x, w + ".rows"); }, w + ".rows");
        Environment<std::int64_t> env(u, vals, SemiringTag::MaxPlus, NumericMode::ExactInteger);
        r.report = detail::encode_phi_report<MaxPlusInt, std::int64_t>(
            env, u, ok, [](const std::int64_t& v) { return json(v); });
      } else if (sr == "SumProduct") {
        auto vals = io::matrix_from_json<Rational>(io::need(j, "rows", w), u,
                                                   [&](const json& x) { return io::rational_from_json(x, w + ".rows"); },
                                                   w + ".rows");
        auto env = from_matrix(u, vals, SemiringTag::SumProduct, NumericMode::ExactRational);
        r.report = detail::encode_phi_report<SumProductExact, Rational>(
            env, u, ok, [](const Rational& v) { return json(io::to_string(v)); });
      } else {
        io::bad(w, "semiring is 'MaxPlus' or 'SumProduct'");
      }
      r.outcome = ok ? "accept" : "reject";
      break;
    }
    case ScenarioKind::NegativeControl: {
      std::string c = io::to_str(io::need(j, "control", w), w + ".control");
      double level = j.contains("reject_level") ? io::to_real(j["reject_level"], w) : 1e-3;
      if (c == "nonintegrable_exact") {
        auto rep = negative_control_exact_eps(io::rational_from_json(io::need(j, "eps", w), w + ".eps"));
        r.outcome = rep.certified() ? "reject" : "accept";
        r.report = io::to_json(rep);
      } else if (c == "not_in_F_exact") {
        auto rep = negative_control_not_in_F(detail::exact_budget(s, o, 4));
        r.outcome = rep.equal() ? "accept" : "reject";
        r.report = io::to_json(rep);
      } else if (c == "not_in_F_mc" || c == "nonintegrable_mc") {
        MCReport rep;
        auto opt = detail::mc_options(s, o, 50000);
        if (c == "not_in_F_mc") {
          rep = mc_invariance(not_in_F_statement(), detail::scenario_model(s), opt);
        } else {
          double eps = io::to_real(io::need(j, "eps", w), w + ".eps");
          if (!(eps > 0 && eps < 1)) io::bad(w, "eps must lie in (0,1)");
          rep = mc_invariance(InvarianceStatement::tower(nonintegrable_tower()), ModelSpec::bernoulli(1 - eps), opt);
        }
        detail::fill_mc(r, std::move(rep));
        r.outcome = r.report["min_adjusted"].get<double>() < level ? "reject" : "accept";
        r.report["reject_level"] = level;
      } else {
        io::bad(w, "unknown control '" + c + "'");
      }
      break;
    }
    case ScenarioKind::Geodesic:
    case ScenarioKind::Quenched: {
      auto g = detail::geodesic_from_json(s);
      auto m = detail::scenario_model(s);
      auto opt = detail::mc_options(s, o, 20000);
      detail::fill_mc(r, s.kind == ScenarioKind::Geodesic ? mc_geodesic_invariance(g, m, opt)
                                                          : mc_quenched_invariance(g, m, opt));
      break;
    }
    case ScenarioKind::Disjointness: {
      ShiftedMiddleStatement st{io::boxes_from_json(io::need(j, "U", w), w + ".U"),
                                io::boxes_from_json(io::need(j, "V", w), w + ".V"),
                                io::boxes_from_json(io::need(j, "W", w), w + ".W"),
                                io::point_from_json(io::need(j, "c", w), w + ".c")};
      std::vector<std::size_t> sel;
      const auto& js = io::need(j, "selected", w);
      if (!js.is_array()) io::bad(w, "selected is a list of indices into V");
      for (const auto& x : js) {
        auto v = io::to_int(x, w + ".selected");
        if (v < 0) io::bad(w, "negative index in selected");
        sel.push_back(std::size_t(v));
      }
      detail::fill_mc(r, mc_disjointness(st, sel, detail::scenario_model(s), detail::mc_options(s, o, 20000)));
      break;
    }
    case ScenarioKind::Inhomogeneous: {
      auto st = detail::statement_from_json(io::need(j, "statement", w), j.contains("diagonals") ? &j["diagonals"] : nullptr,
                                            w + ".statement");
      if (st.kind() != StatementKind::Tower) io::bad(w, "inhomogeneous scenarios need a tower statement");
      Model fam;
      try {
        fam = model_from_string(io::to_str(io::need(j, "family", w), w + ".family"));
      } catch (const error&) {
        io::bad(w, "unknown family");
      }
      auto p = io::params_from_json(io::need(j, "params", w), w + ".params");
      auto p2 = io::params_from_json(io::need(j, "params_image", w), w + ".params_image");
      detail::fill_mc(r, mc_inhomogeneous(st, fam, p, p2, detail::mc_options(s, o, 20000)));
      break;
    }
  }
  r.matches = r.outcome == s.expect;
  return r;
}

}  // namespace lpplab
