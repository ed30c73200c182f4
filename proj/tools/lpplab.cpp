#include <CLI11.hpp>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <iomanip>
#include <iostream>
#include <mutex>
#include <thread>

#include "lpplab/lpplab.hpp"

namespace fs = std::filesystem;
using namespace lpplab;

namespace {

enum Exit { kMatch = 0, kMismatch = 1, kInvalid = 2 };

std::string utc_now() {
  auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  std::ostringstream os;
  os << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return os.str();
}

void write_atomic(const fs::path& target, const std::string& text) {
  fs::create_directories(target.parent_path());
  std::ostringstream tag;
  tag << ".tmp." << std::this_thread::get_id();
  fs::path tmp = target;
  tmp += tag.str();
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw std::runtime_error("write failed for " + tmp.string());
  }
  fs::rename(tmp, target);
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

std::string samples_csv(const RunResult& r) {
  std::ostringstream os;
  os << "side";
  for (const auto& c : r.columns) os << ",\"" << c << '"';
  os << '\n';
  auto dump = [&](const char* side, const Samples& s) {
    for (const auto& row : s) {
      os << side;
      for (double v : row) os << ',' << num(v);
      os << '\n';
    }
  };
  dump("lhs", r.lhs);
  dump("rhs", r.rhs);
  return os.str();
}

std::string tests_csv(const RunResult& r) {
  std::ostringstream os;
  os << "test,statistic,p_value,adjusted\n";
  for (const auto& t : r.tests)
    os << '"' << t.name << "\"," << num(t.statistic) << ',' << num(t.p_value) << ',' << num(t.adjusted) << '\n';
  return os.str();
}

struct Outcome {
  std::string id, kind, expect, outcome, status;
  double wall_ms = 0;
  int code = kMatch;
};

Outcome execute(const Scenario& s, const Overrides& ov, const fs::path& out, bool csv) {
  auto t0 = std::chrono::steady_clock::now();
  RunResult r = run_scenario(s, ov);
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();

  json rec;
  rec["schema"] = kScenarioSchema;
  rec["scenario"] = s.id;
  rec["kind"] = to_string(s.kind);
  rec["anchor"] = s.anchor;
  rec["version"] = kArtifactVersion;
  rec["seed"] = ov.seed.value_or(s.seed);
  if (ov.budget || s.budget) rec["budget"] = ov.budget ? *ov.budget : *s.budget;
  rec["expect"] = s.expect;
  rec["outcome"] = r.outcome;
  rec["status"] = r.matches ? "match" : "mismatch";
  rec["report"] = r.report;
  rec["run"] = {{"timestamp", utc_now()}, {"wall_ms", ms}};
  write_atomic(out / (s.id + ".json"), rec.dump(2) + "\n");
  if (csv) {
    if (!r.columns.empty() && (!r.lhs.empty() || !r.rhs.empty())) write_atomic(out / (s.id + ".samples.csv"), samples_csv(r));
    if (!r.tests.empty()) write_atomic(out / (s.id + ".tests.csv"), tests_csv(r));
  }
  return {s.id, to_string(s.kind), s.expect, r.outcome, r.matches ? "match" : "mismatch", ms, r.matches ? kMatch : kMismatch};
}

fs::path output_dir(const std::string& flag, const char* fallback) {
  if (!flag.empty()) return flag;
  if (const char* env = std::getenv("LPPLAB_OUT"); env && *env) return env;
  return fallback;
}

int cmd_run(const std::string& file, std::optional<std::uint64_t> seed, std::optional<std::int64_t> budget,
            const std::string& out_flag, const std::string& format) {
  Scenario s;
  try {
    s = load_scenario(file);
  } catch (const std::exception& e) {
    std::cerr << "invalid scenario " << file << ": " << e.what() << '\n';
    return kInvalid;
  }
  Overrides ov{seed, budget, format == "csv"};
  try {
    auto o = execute(s, ov, output_dir(out_flag, "lpplab-out"), format == "csv");
    std::cout << o.id << ": " << o.outcome << " (expected " << o.expect << ", " << o.status << ")\n";
    return o.code;
  } catch (const std::exception& e) {
    std::cerr << file << ": " << e.what() << '\n';
    return kInvalid;
  }
}

int cmd_suite(const std::string& dir, unsigned jobs, const std::string& out_flag) {
  if (!fs::is_directory(dir)) {
    std::cerr << dir << ": not a directory\n";
    return kInvalid;
  }
  std::vector<fs::path> files;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ".json") files.push_back(e.path());
  std::sort(files.begin(), files.end());

  std::vector<Scenario> scenarios;
  std::set<std::string> ids;
  bool invalid = false;
  for (const auto& f : files) {
    try {
      auto s = load_scenario(f);
      if (!ids.insert(s.id).second) throw error(ErrorCode::InvalidScenario, "duplicate id '" + s.id + "'");
      scenarios.push_back(std::move(s));
    } catch (const std::exception& e) {
      std::cerr << "invalid scenario " << f.string() << ": " << e.what() << '\n';
      invalid = true;
    }
  }
  if (invalid) return kInvalid;

  fs::path out = output_dir(out_flag, "lpplab-suite");
  std::vector<Outcome> results(scenarios.size());
  std::atomic<std::size_t> next{0};
  std::mutex io_mu;
  auto worker = [&] {
    for (std::size_t i; (i = next++) < scenarios.size();) {
      const auto& s = scenarios[i];
      try {
        results[i] = execute(s, {}, out, false);
      } catch (const std::exception& e) {
        results[i] = {s.id, to_string(s.kind), s.expect, "error", "error", 0, kInvalid};
        std::lock_guard lk(io_mu);
        std::cerr << s.source << ": " << e.what() << '\n';
      }
      std::lock_guard lk(io_mu);
      std::cout << std::left << std::setw(28) << results[i].id << ' ' << std::setw(8) << results[i].outcome << ' '
                << results[i].status << '\n';
    }
  };
  jobs = std::max(1u, std::min<unsigned>(jobs, unsigned(std::max<std::size_t>(1, scenarios.size()))));
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < jobs; ++k) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();

  std::ostringstream csv;
  csv << "scenario,kind,expect,outcome,status,wall_ms\n";
  int code = kMatch;
  for (const auto& r : results) {
    csv << r.id << ',' << r.kind << ',' << r.expect << ',' << r.outcome << ',' << r.status << ',' << num(r.wall_ms) << '\n';
    code = std::max(code, r.code);
  }
  write_atomic(out / "suite.csv", csv.str());
  std::size_t matched = std::count_if(results.begin(), results.end(), [](const Outcome& r) { return r.code == kMatch; });
  std::cout << matched << "/" << results.size() << " scenarios matched their expected outcome\n";
  return code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Last passage percolation and polymer invariance lab"};
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one scenario file");
  std::string file, out, format = "json";
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> budget;
  run->add_option("file", file, "Scenario JSON")->required();
  run->add_option("--seed", seed, "Override the scenario seed");
  run->add_option("--budget", budget, "Override the budget (sum cutoff or sample count)")->check(CLI::NonNegativeNumber);
  run->add_option("--out", out, "Output directory");
  run->add_option("--format", format, "Report format")->check(CLI::IsMember({"json", "csv"}));

  auto* suite = app.add_subcommand("suite", "Run every scenario in a directory");
  std::string dir, suite_out;
  unsigned jobs = 1;
  suite->add_option("dir", dir, "Scenario directory")->required();
  suite->add_option("--jobs", jobs, "Concurrent scenarios")->check(CLI::PositiveNumber);
  suite->add_option("--out", suite_out, "Output directory");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kInvalid;
  }
  try {
    if (*run) return cmd_run(file, seed, budget, out, format);
    return cmd_suite(dir, jobs, suite_out);
  } catch (const std::exception& e) {
    std::cerr << e.what() << '\n';
    return kInvalid;
  }
}
