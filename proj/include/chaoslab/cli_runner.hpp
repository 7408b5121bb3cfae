#pragma once

// Experiment runner behind the chaoslab command line: config parsing,
// check execution, report.json / CSV output and report re-checking.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "chaoslab/chaos_lab.hpp"

namespace chaoslab {

using Json = nlohmann::ordered_json;

struct SystemEntry {
  std::string name;
  std::string kind;
  /// Spec string accepted by make_system.
  std::string spec;
};

struct CheckConfig {
  std::string id;
  std::string kind;
  std::string system;
  std::optional<Rat> eps;
  std::optional<Rat> delta;
  std::vector<Rat> eps_list;
  std::int64_t probes = 20;
  std::int64_t n = 1;
  std::int64_t steps = 0;
  SearchBudget budget;
  std::optional<std::string> point;
  std::optional<std::pair<std::string, Rat>> ball_u, ball_v;
  /// Target status: PASS / FAIL for chaos_check, a Status name otherwise.
  std::string expect;
};

struct ExperimentConfig {
  std::vector<SystemEntry> systems;
  std::vector<CheckConfig> checks;
  std::uint64_t seed = 0;
  std::string output = "out";
};

/// Throws ConfigParse naming the offending field, e.g. "checks[2].eps".
ExperimentConfig parse_config(const Json& doc);
ExperimentConfig load_config(const std::filesystem::path& path);

/// Instantiates every system; constructor failures are collected per system
/// and thrown together as ConstructorPrecondition.
std::vector<SystemHandle> build_systems(const ExperimentConfig& cfg);

struct RunOptions {
  unsigned jobs = 1;
  std::optional<std::uint64_t> seed;
  /// Width used for float distances in plot data.
  Rat tol = pow2(-30);
  bool recheck = false;
  std::optional<std::filesystem::path> output;
};

struct RunResult {
  Json report;
  Json timings;
  bool all_met = false;
  /// orbits/*.csv and plotdata/*.csv contents, relative to the output directory.
  std::vector<std::pair<std::string, std::string>> files;
  /// Claims that failed re-checking (only with RunOptions::recheck).
  std::int64_t recheck_failures = 0;
};

/// Runs all checks. The report depends only on the config and seed.
RunResult run_experiment(const ExperimentConfig& cfg, const RunOptions& opts);

/// Runs and writes report.json, timings.json, orbits/ and plotdata/ under
/// the output directory. Returns the exit code: 0 when every check meets its
/// target (and re-checks), 1 otherwise, 2 for config errors.
int run_command(const std::filesystem::path& config_path, const RunOptions& opts,
                std::ostream& out, std::ostream& err);

Json to_json(const Claim& c);
Json to_json(const WitnessReport& r, const SearchBudget& budget);

/// Re-evaluates every certificate of a report; returns the failing count.
std::int64_t recheck_report(const Json& report, std::ostream& err);

/// Human-readable summary of report.json.
std::string summarize_report(const Json& report);

/// CSV of x, g.x, g^2.x, ... for the first generator of factor 1.
std::string orbit_csv(const System& sys, const Point& x, std::int64_t steps);

}  // namespace chaoslab
