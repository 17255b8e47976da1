#include "catpursuit/errors.hpp"
#include "catpursuit/scenario.hpp"
#include "catpursuit/svg.hpp"
#include "catpursuit/trace_io.hpp"
#include "catpursuit/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

namespace fs = std::filesystem;
using namespace catpursuit;
using nlohmann::json;

namespace {

void print_check(const CheckReport& c) {
  std::printf("  %-22s %s  worst=%.3g tol=%.3g", c.name.c_str(), c.pass ? "PASS" : "FAIL", c.worst, c.tolerance);
  if (c.index) std::printf(" at=%zu", *c.index);
  if (!c.note.empty()) std::printf("  (%s)", c.note.c_str());
  std::printf("\n");
}

void print_summary(const RunSummary& s) {
  std::printf("%s: %s on %s, %zu steps, L0=%.6g LN=%.6g", s.name.c_str(), s.outcome.c_str(), s.domain.c_str(),
              s.steps, s.l0, s.ln);
  if (s.capture_step) std::printf(", captured at step %zu", *s.capture_step);
  std::printf("\n");
  if (!s.error.empty()) std::printf("  error: %s\n", s.error.c_str());
  for (const auto& c : s.checks) print_check(c);
}

json read_json(const fs::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Configuration, "cannot read " + path.string());
  try {
    return json::parse(is);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, path.string() + ": " + e.what());
  }
}

std::optional<RunSummary> sibling_summary(const fs::path& trace) {
  const fs::path p = trace.parent_path() / "summary.json";
  if (!fs::exists(p)) return std::nullopt;
  return summary_from_json(read_json(p));
}

int cmd_run(const fs::path& scenario, const std::string& out) {
  ScenarioConfig cfg = load_scenario(scenario);
  if (!out.empty()) cfg.output_dir = out;
  const RunSummary s = run_scenario(cfg);
  print_summary(s);
  std::printf("  artifacts: %s\n", cfg.output_dir.string().c_str());
  return s.passed() ? 0 : 1;
}

int cmd_batch(const fs::path& sweep, const std::string& out) {
  const json doc = read_json(sweep);
  const auto configs = parse_batch(doc);
  fs::path dir = out;
  if (dir.empty()) {
    const char* env = std::getenv("CATPURSUIT_OUT_DIR");
    dir = fs::path(env && *env ? env : "out") / (doc.is_object() ? doc.value("name", "batch") : "batch");
  }
  const BatchResult res = run_batch(configs, dir);
  bool errors = false, failures = false;
  for (const auto& s : res.runs) {
    print_summary(s);
    errors |= !s.error.empty();
    failures |= !s.passed();
  }
  std::printf("table: %s\n", res.table.string().c_str());
  return errors ? 2 : failures ? 1 : 0;
}

int cmd_verify(const fs::path& trace_path, std::optional<double> curvature) {
  PursuitTrace tr = read_trace_csv(trace_path);
  if (curvature) {
    tr.curvature = *curvature;
  } else if (auto s = sibling_summary(trace_path)) {
    tr.curvature = s->curvature;
  } else {
    throw Error(ErrorKind::Configuration, "no summary.json next to the trace; pass --curvature");
  }
  std::vector<CheckReport> checks{check_separation_monotone(tr), check_angle_sandwich(tr)};
  if (tr.curvature <= 0.0) checks.push_back(check_tc_relation(tr));
  try {
    checks.push_back(check_sqrt_bound(sqrt_bound_report(tr)));
  } catch (const Error& e) {
    std::printf("  %-22s skipped (%s)\n", "sqrt_bound", e.detail().c_str());
  }
  bool ok = true;
  for (const auto& c : checks) {
    print_check(c);
    ok &= c.pass;
  }
  return ok ? 0 : 1;
}

int cmd_plot(const fs::path& trace_path, const fs::path& svg) {
  PursuitTrace tr = read_trace_csv(trace_path);
  const auto s = sibling_summary(trace_path);
  if (!s) throw Error(ErrorKind::Configuration, "plot needs summary.json next to the trace");
  const DomainSpec spec = parse_domain(s->domain_config);
  read_positions_csv(trace_path.parent_path() / "positions.csv", tr);
  emit_plot(spec, tr, svg);
  std::printf("wrote %s\n", svg.string().c_str());
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete pursuit on CAT(K) domains"};
  app.require_subcommand(1);

  std::string scenario, sweep, trace, svg, out;
  std::optional<double> curvature;

  auto* run = app.add_subcommand("run", "Run one scenario and write its artifacts");
  run->add_option("scenario", scenario, "Scenario JSON")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out, "Output directory");

  auto* batch = app.add_subcommand("batch", "Run a list or sweep of scenarios");
  batch->add_option("sweep", sweep, "Batch JSON")->required()->check(CLI::ExistingFile);
  batch->add_option("--out", out, "Directory for batch.csv");

  auto* verify = app.add_subcommand("verify", "Re-run the trace checks on a trace.csv");
  verify->add_option("trace", trace, "Trace CSV")->required()->check(CLI::ExistingFile);
  verify->add_option("--curvature", curvature, "Curvature bound K (default: from summary.json)");

  auto* plot = app.add_subcommand("plot", "Draw a planar trace as SVG");
  plot->add_option("trace", trace, "Trace CSV")->required()->check(CLI::ExistingFile);
  plot->add_option("svg", svg, "Output SVG")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*run) return cmd_run(scenario, out);
    if (*batch) return cmd_batch(sweep, out);
    if (*verify) return cmd_verify(trace, curvature);
    if (*plot) return cmd_plot(trace, svg);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
  return 2;
}
