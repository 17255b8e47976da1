#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/growth.hpp"
#include "catpursuit/pursuit.hpp"
#include "catpursuit/verify.hpp"

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace catpursuit {

struct DyadicConfig {
  int m_min = 4;
  int m_max = 10;
  double horizon = 10.0;
};

struct ScenarioConfig {
  std::string name;
  nlohmann::json domain_json;
  std::shared_ptr<const DomainSpec> domain;
  Point pursuer;
  Point evader;
  nlohmann::json policy;
  double step = 0.0;
  std::size_t max_steps = 0;
  TieBreak tie_break = TieBreak::forbid();
  std::optional<std::uint64_t> seed;
  std::vector<std::string> checks;
  std::filesystem::path output_dir;
  std::optional<DyadicConfig> dyadic;
  bool allow_large_separation = false;
  bool plot = false;
  nlohmann::json expect;
};

/// Validates and builds the configuration. Throws Error(Schema) with the
/// offending field path. The output directory is `output` (default
/// "out/<name>"), placed under $CATPURSUIT_OUT_DIR when that is set.
ScenarioConfig parse_scenario(const nlohmann::json& doc);
ScenarioConfig load_scenario(const std::filesystem::path& path);

DomainSpec parse_domain(const nlohmann::json& doc, const std::string& where = "domain");
Point parse_point(const DomainSpec& spec, const nlohmann::json& doc, const std::string& where);
std::unique_ptr<EvaderPolicy> make_policy(const ScenarioConfig& config);
PrescribedCurve make_prescribed_curve(const ScenarioConfig& config);

struct RunSummary {
  std::string name;
  std::string domain;
  nlohmann::json domain_config;
  double curvature = 0.0;
  std::string outcome;
  std::size_t steps = 0;
  double step = 0.0;
  double l0 = 0.0;
  double ln = 0.0;
  double tail_slope = 0.0;
  std::optional<std::size_t> capture_step;
  std::optional<double> c;
  std::optional<double> b;
  std::map<std::string, GrowthFit> fits;
  std::vector<CheckReport> checks;
  std::map<std::string, std::string> artifacts;
  nlohmann::json dyadic;
  std::string error;

  bool passed() const;
  bool operator==(const RunSummary&) const = default;
};

nlohmann::json to_json(const RunSummary& summary);
RunSummary summary_from_json(const nlohmann::json& doc);

struct RunResult {
  PursuitTrace trace;
  std::optional<DyadicReport> dyadic;
  RunSummary summary;
};

/// Runs the scenario and its checks in memory; no files are written.
RunResult simulate(const ScenarioConfig& config);

/// simulate() plus trace.csv, positions.csv, summary.json and (if requested)
/// plot.svg in the output directory.
RunSummary run_scenario(const ScenarioConfig& config);

/// A list of scenarios, or {"name", "base": scenario, "vary": {"a.b": [...]}}
/// expanded over the cartesian product of the varied fields. Throws
/// Error(Configuration) when the expansion is empty.
std::vector<ScenarioConfig> parse_batch(const nlohmann::json& doc);

struct BatchResult {
  std::vector<RunSummary> runs;
  std::filesystem::path table;
};

/// Runs concurrently; failures are recorded in RunSummary::error. Writes an
/// aggregate batch.csv into `output_dir`.
BatchResult run_batch(const std::vector<ScenarioConfig>& configs, const std::filesystem::path& output_dir);

}  // namespace catpursuit
