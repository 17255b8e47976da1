#include "catpursuit/scenario.hpp"

#include "catpursuit/errors.hpp"
#include "catpursuit/metric_tree.hpp"
#include "catpursuit/svg.hpp"
#include "catpursuit/tolerances.hpp"
#include "catpursuit/trace_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <future>
#include <numbers>
#include <set>

namespace catpursuit {

using nlohmann::json;

namespace {

[[noreturn]] void schema(const std::string& where, const std::string& what) {
  throw Error(ErrorKind::Schema, where + ": " + what);
}

const json& field(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.is_object()) schema(where, "expected an object");
  auto it = doc.find(key);
  if (it == doc.end()) schema(where + "." + key, "required field is missing");
  return *it;
}

double number(const json& v, const std::string& where) {
  if (!v.is_number()) schema(where, "expected a number");
  return v.get<double>();
}

double number(const json& doc, const std::string& key, const std::string& where) {
  return number(field(doc, key, where), where + "." + key);
}

double number_or(const json& doc, const std::string& key, double fallback, const std::string& where) {
  return doc.contains(key) ? number(doc, key, where) : fallback;
}

long long integer(const json& v, const std::string& where) {
  if (!v.is_number_integer()) schema(where, "expected an integer");
  return v.get<long long>();
}

long long integer(const json& doc, const std::string& key, const std::string& where) {
  return integer(field(doc, key, where), where + "." + key);
}

Eigen::VectorXd vector_of(const json& v, const std::string& where) {
  if (!v.is_array() || v.empty()) schema(where, "expected a nonempty array of numbers");
  Eigen::VectorXd x(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) x[static_cast<Eigen::Index>(i)] = number(v[i], where + "[" + std::to_string(i) + "]");
  return x;
}

Eigen::Vector2d vec2(const json& v, const std::string& where) {
  const Eigen::VectorXd x = vector_of(v, where);
  if (x.size() != 2) schema(where, "expected two coordinates");
  return x;
}

std::string string_of(const json& doc, const std::string& key, const std::string& where) {
  const json& v = field(doc, key, where);
  if (!v.is_string()) schema(where + "." + key, "expected a string");
  return v.get<std::string>();
}

bool flag(const json& doc, const std::string& key, const std::string& where) {
  if (!doc.contains(key)) return false;
  if (!doc[key].is_boolean()) schema(where + "." + key, "expected true or false");
  return doc[key].get<bool>();
}

TieBreak parse_tie_break(const json& doc) {
  if (!doc.contains("tie_break")) return TieBreak::forbid();
  const json& v = doc["tie_break"];
  if (!v.is_string()) schema("tie_break", "expected a string");
  const std::string s = v.get<std::string>();
  const auto counter = doc.contains("tie_counter") ? integer(doc, "tie_counter", "scenario") : 0;
  if (s == "forbid") return TieBreak::forbid();
  if (s == "upper") return TieBreak::upper();
  if (s == "lower") return TieBreak::lower();
  if (s == "alternate") return TieBreak::alternate(counter);
  schema("tie_break", "unknown tie-break '" + s + "'");
}

const std::set<std::string>& known_checks() {
  static const std::set<std::string> names{"separation_monotone", "angle_sandwich",    "tc_relation",
                                           "sqrt_bound",          "sqrt_bound_refused", "limit_geodesic",
                                           "dyadic_convergence"};
  return names;
}

std::filesystem::path output_root() {
  if (const char* env = std::getenv("CATPURSUIT_OUT_DIR"); env && *env) return env;
  return "out";
}

// JSON has no NaN or infinity; spell them as strings so summaries round-trip.
json finite_or_null(double x) { return std::isfinite(x) ? json(x) : json(format_double(x)); }

double from_json_double(const json& v) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
  }
  return std::numeric_limits<double>::quiet_NaN();
}

CheckReport failed_check(const std::string& name, const std::string& why) {
  CheckReport r;
  r.name = name;
  r.pass = false;
  r.worst = std::numeric_limits<double>::infinity();
  r.note = why;
  return r;
}

}  // namespace

DomainSpec parse_domain(const json& doc, const std::string& where) {
  const std::string kind = string_of(doc, "kind", where);
  if (kind == "euclidean") {
    return DomainSpec::euclidean(static_cast<int>(doc.contains("dim") ? integer(doc, "dim", where) : 2));
  }
  if (kind == "disk") return DomainSpec::convex_disk(number(doc, "radius", where));
  if (kind == "polygon") {
    const json& vs = field(doc, "vertices", where);
    if (!vs.is_array()) schema(where + ".vertices", "expected an array");
    std::vector<Eigen::Vector2d> pts;
    for (std::size_t i = 0; i < vs.size(); ++i) pts.push_back(vec2(vs[i], where + ".vertices[" + std::to_string(i) + "]"));
    return DomainSpec::convex_polygon(std::move(pts));
  }
  if (kind == "sphere") return DomainSpec::sphere(number(doc, "radius", where));
  if (kind == "plane_minus_disks") {
    const json& ds = field(doc, "disks", where);
    if (!ds.is_array()) schema(where + ".disks", "expected an array");
    std::vector<Disk> disks;
    for (std::size_t i = 0; i < ds.size(); ++i) {
      const std::string w = where + ".disks[" + std::to_string(i) + "]";
      disks.push_back({vec2(field(ds[i], "center", w), w + ".center"), number(ds[i], "radius", w)});
    }
    return DomainSpec::plane_minus_disks(std::move(disks));
  }
  if (kind == "tree") {
    const json& es = field(doc, "edges", where);
    if (!es.is_array()) schema(where + ".edges", "expected an array");
    std::vector<TreeEdge> edges;
    for (std::size_t i = 0; i < es.size(); ++i) {
      const std::string w = where + ".edges[" + std::to_string(i) + "]";
      if (!es[i].is_array() || es[i].size() != 3) schema(w, "expected [u, v, length]");
      edges.push_back({static_cast<int>(integer(es[i][0], w)), static_cast<int>(integer(es[i][1], w)),
                       number(es[i][2], w)});
    }
    return DomainSpec::metric_tree(static_cast<int>(integer(doc, "vertices", where)), std::move(edges));
  }
  if (kind == "random_tree") {
    return DomainSpec::random_metric_tree(static_cast<int>(integer(doc, "edges", where)),
                                          static_cast<std::uint64_t>(integer(doc, "seed", where)),
                                          number_or(doc, "min_length", 0.5, where),
                                          number_or(doc, "max_length", 2.0, where));
  }
  schema(where + ".kind", "unknown domain kind '" + kind + "'");
}

Point parse_point(const DomainSpec& spec, const json& doc, const std::string& where) {
  Point p;
  if (spec.kind() == DomainKind::MetricTree) {
    if (doc.is_object() && doc.contains("vertex")) {
      const auto v = integer(doc, "vertex", where);
      if (v < 0 || v >= spec.tree().vertex_count()) schema(where + ".vertex", "no such vertex");
      p = Point(spec.tree().at_vertex(static_cast<int>(v)));
    } else {
      p = Point::on_tree(static_cast<int>(integer(doc, "edge", where)), number(doc, "offset", where));
    }
  } else {
    p = Point(vector_of(doc, where));
  }
  try {
    validate_point(spec, p);
  } catch (const Error& e) {
    schema(where, e.detail());
  }
  return canonical(spec, p);
}

PrescribedCurve make_prescribed_curve(const ScenarioConfig& cfg) {
  const json& pol = cfg.policy;
  const std::string kind = string_of(pol, "kind", "policy");
  if (kind == "stationary") return PrescribedCurve::stationary(cfg.evader);
  if (cfg.evader.on_tree()) schema("policy.kind", kind + " needs a coordinate domain");
  if (kind == "line") return PrescribedCurve::line(cfg.evader.coords(), vector_of(field(pol, "velocity", "policy"), "policy.velocity"));
  if (kind == "circle") {
    const Eigen::Vector2d c = vec2(field(pol, "center", "policy"), "policy.center");
    const Eigen::Vector2d rel = cfg.evader.coords().head<2>() - c;
    return PrescribedCurve::circle(c, rel.norm(), std::atan2(rel.y(), rel.x()), number_or(pol, "speed", 1.0, "policy"));
  }
  schema("policy.kind", "'" + kind + "' is not a prescribed curve (use line, circle or stationary)");
}

std::unique_ptr<EvaderPolicy> make_policy(const ScenarioConfig& cfg) {
  const json& pol = cfg.policy;
  const std::string kind = string_of(pol, "kind", "policy");
  const DomainSpec& spec = *cfg.domain;
  const bool coords = spec.kind() != DomainKind::MetricTree;
  auto need = [&](bool ok, const char* what) {
    if (!ok) schema("policy.kind", kind + " needs " + what + ", not " + to_string(spec.kind()));
  };
  if (kind == "runner") {
    need(coords, "a coordinate domain");
    return geodesic_runner(vector_of(field(pol, "direction", "policy"), "policy.direction"));
  }
  if (kind == "runner_to") return geodesic_runner_to(parse_point(spec, field(pol, "target", "policy"), "policy.target"));
  if (kind == "waypoints") {
    const json& ps = field(pol, "points", "policy");
    if (!ps.is_array()) schema("policy.points", "expected an array");
    std::vector<Point> pts;
    for (std::size_t i = 0; i < ps.size(); ++i) pts.push_back(parse_point(spec, ps[i], "policy.points[" + std::to_string(i) + "]"));
    return waypoints(std::move(pts), flag(pol, "loop", "policy"));
  }
  if (kind == "spiral") {
    need(spec.planar(), "a planar domain");
    return spiral(pol.contains("center") ? vec2(pol["center"], "policy.center") : Eigen::Vector2d::Zero(),
                  number_or(pol, "scale", 1.0, "policy"), number(pol, "u0", "policy"));
  }
  if (kind == "antipodal") {
    need(spec.kind() == DomainKind::PlaneMinusDisks, "a plane_minus_disks domain");
    return antipodal_oscillator(static_cast<int>(pol.contains("disk") ? integer(pol, "disk", "policy") : 0));
  }
  if (kind == "orbiter") {
    need(spec.kind() == DomainKind::PlaneMinusDisks, "a plane_minus_disks domain");
    return circle_orbiter(static_cast<int>(pol.contains("disk") ? integer(pol, "disk", "policy") : 0),
                          static_cast<int>(pol.contains("orientation") ? integer(pol, "orientation", "policy") : 1));
  }
  if (kind == "random_walk") {
    if (!cfg.seed) schema("seed", "required for the random_walk policy");
    return random_walk(*cfg.seed);
  }
  if (kind == "zigzag") {
    need(spec.planar(), "a planar domain");
    return zigzag(vec2(field(pol, "heading", "policy"), "policy.heading"), number(pol, "angle", "policy"),
                  static_cast<int>(integer(pol, "period", "policy")));
  }
  if (kind == "line" || kind == "circle" || kind == "stationary") return prescribed(make_prescribed_curve(cfg));
  schema("policy.kind", "unknown policy '" + kind + "'");
}

ScenarioConfig parse_scenario(const json& doc) {
  if (!doc.is_object()) schema("scenario", "expected a JSON object");
  ScenarioConfig cfg;
  cfg.name = string_of(doc, "name", "scenario");
  cfg.domain_json = field(doc, "domain", "scenario");
  try {
    cfg.domain = std::make_shared<const DomainSpec>(parse_domain(cfg.domain_json));
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Schema) throw;
    schema("domain", e.detail());
  }
  const DomainSpec& spec = *cfg.domain;
  cfg.policy = field(doc, "policy", "scenario");
  if (!cfg.policy.is_object()) schema("policy", "expected an object");
  if (doc.contains("seed")) cfg.seed = static_cast<std::uint64_t>(integer(doc, "seed", "scenario"));
  cfg.step = number(doc, "step", "scenario");
  if (!(cfg.step > 0.0)) schema("step", "must be positive");
  cfg.pursuer = parse_point(spec, field(doc, "pursuer", "scenario"), "pursuer");
  if (doc.contains("evader")) {
    cfg.evader = parse_point(spec, doc["evader"], "evader");
  } else if (cfg.policy.value("kind", "") == "spiral") {
    const Eigen::Vector2d c = cfg.policy.contains("center") ? vec2(cfg.policy["center"], "policy.center")
                                                            : Eigen::Vector2d::Zero();
    cfg.evader = Point(Eigen::VectorXd(spiral_point(c, number_or(cfg.policy, "scale", 1.0, "policy"),
                                                    number(cfg.policy, "u0", "policy"))));
    try {
      validate_point(spec, cfg.evader);
    } catch (const Error& e) {
      schema("evader", e.detail());
    }
  } else {
    schema("scenario.evader", "required field is missing");
  }

  if (doc.contains("dyadic")) {
    const json& d = doc["dyadic"];
    DyadicConfig dy;
    dy.m_min = static_cast<int>(integer(d, "m_min", "dyadic"));
    dy.m_max = static_cast<int>(integer(d, "m_max", "dyadic"));
    dy.horizon = number(d, "horizon", "dyadic");
    if (dy.m_min < 0 || dy.m_max < dy.m_min || dy.m_max > 20) schema("dyadic", "need 0 <= m_min <= m_max <= 20");
    if (!(dy.horizon > 0.0)) schema("dyadic.horizon", "must be positive");
    cfg.dyadic = dy;
  } else if (doc.contains("max_steps")) {
    const auto n = integer(doc, "max_steps", "scenario");
    if (n < 1) schema("max_steps", "must be at least 1");
    cfg.max_steps = static_cast<std::size_t>(n);
  } else if (doc.contains("horizon")) {
    const double T = number(doc, "horizon", "scenario");
    if (!(T > 0.0)) schema("horizon", "must be positive");
    cfg.max_steps = static_cast<std::size_t>(std::llround(T / cfg.step));
  } else {
    schema("scenario.max_steps", "one of max_steps, horizon or dyadic is required");
  }

  cfg.tie_break = parse_tie_break(doc);
  cfg.allow_large_separation = flag(doc, "allow_large_separation", "scenario");
  cfg.plot = flag(doc, "plot", "scenario");
  if (doc.contains("checks")) {
    const json& cs = doc["checks"];
    if (!cs.is_array()) schema("checks", "expected an array of check names");
    for (std::size_t i = 0; i < cs.size(); ++i) {
      const std::string w = "checks[" + std::to_string(i) + "]";
      if (!cs[i].is_string()) schema(w, "expected a string");
      const std::string name = cs[i].get<std::string>();
      if (!known_checks().count(name)) schema(w, "unknown check '" + name + "'");
      if (std::find(cfg.checks.begin(), cfg.checks.end(), name) != cfg.checks.end()) schema(w, "duplicate check");
      cfg.checks.push_back(name);
    }
  }
  if (doc.contains("expect")) {
    cfg.expect = doc["expect"];
    if (!cfg.expect.is_object()) schema("expect", "expected an object");
  }
  const std::string out = doc.contains("output") ? string_of(doc, "output", "scenario") : cfg.name;
  cfg.output_dir = output_root() / out;

  // Policy compatibility is part of validation.
  if (cfg.dyadic) {
    make_prescribed_curve(cfg);
  } else {
    make_policy(cfg);
  }
  return cfg;
}

ScenarioConfig load_scenario(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw Error(ErrorKind::Configuration, "cannot read " + path.string());
  json doc;
  try {
    doc = json::parse(is);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::Schema, path.string() + ": " + e.what());
  }
  return parse_scenario(doc);
}

bool RunSummary::passed() const {
  return error.empty() && std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.pass; });
}

namespace {

json dyadic_json(const DyadicReport& rep) {
  json levels = json::array();
  for (const auto& l : rep.levels) {
    levels.push_back({{"m", l.m},
                      {"step", l.step},
                      {"steps", l.steps},
                      {"capture_step", l.capture_step ? json(*l.capture_step) : json(nullptr)},
                      {"gap_to_next", finite_or_null(l.gap_to_next)},
                      {"separation_ratio", finite_or_null(l.separation_ratio)}});
  }
  return {{"horizon", rep.horizon}, {"horizon_rounded", rep.horizon_rounded}, {"levels", levels}};
}

CheckReport dyadic_check(const DyadicReport& rep, double final_gap) {
  CheckReport r;
  r.name = "dyadic_convergence";
  r.tolerance = 0.0;
  std::vector<double> gaps;
  for (const auto& l : rep.levels) {
    if (std::isfinite(l.gap_to_next)) gaps.push_back(l.gap_to_next);
  }
  double worst = 0.0;
  for (std::size_t i = 0; i + 1 < gaps.size(); ++i) {
    // Strict decrease: a nonnegative difference is a violation.
    if (gaps[i + 1] >= gaps[i] && gaps[i + 1] - gaps[i] >= worst) {
      worst = std::max(worst, gaps[i + 1] - gaps[i] + std::numeric_limits<double>::min());
      r.index = i + 1;
    }
  }
  const double last = gaps.empty() ? 0.0 : gaps.back();
  if (last >= final_gap) {
    worst = std::max(worst, last - final_gap + std::numeric_limits<double>::min());
    r.index = gaps.size() - 1;
  }
  r.worst = worst;
  r.pass = worst <= 0.0;
  r.context["final_gap"] = last;
  r.context["final_gap_bound"] = final_gap;
  if (rep.horizon_rounded) r.note = "horizon rounded down to a multiple of the coarsest step";
  return r;
}

CheckReport run_check(const std::string& name, const RunResult& res, const ScenarioConfig& cfg) {
  const PursuitTrace& tr = res.trace;
  try {
    if (name == "separation_monotone") return check_separation_monotone(tr);
    if (name == "angle_sandwich") return check_angle_sandwich(tr);
    if (name == "tc_relation") return check_tc_relation(tr);
    if (name == "sqrt_bound") return check_sqrt_bound(sqrt_bound_report(tr));
    if (name == "sqrt_bound_refused") {
      try {
        sqrt_bound_report(tr);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Hypothesis) throw;
        CheckReport r;
        r.name = name;
        r.note = e.detail();
        return r;
      }
      return failed_check(name, "the report accepted a trace outside its hypothesis");
    }
    if (name == "limit_geodesic") {
      const double width = cfg.expect.value("window", 1.0);
      const auto series = limit_geodesic_diagnostic(tr, {width});
      CheckReport r;
      r.name = name;
      r.tolerance = 1e-3;
      const auto& rot = series.front().rotation;
      const auto tail = rot.begin() + static_cast<std::ptrdiff_t>(rot.size() - rot.size() / 4);
      r.worst = *std::max_element(tail, rot.end());
      r.pass = series.front().converging;
      r.context["width"] = width;
      r.context["first_window"] = rot.front();
      return r;
    }
    if (name == "dyadic_convergence") {
      if (!res.dyadic) return failed_check(name, "scenario has no dyadic section");
      return dyadic_check(*res.dyadic, cfg.expect.value("final_gap_below", 1e-2));
    }
  } catch (const Error& e) {
    return failed_check(name, e.what());
  }
  return failed_check(name, "unknown check");
}

void add_expectations(RunResult& res, const ScenarioConfig& cfg) {
  const json& ex = cfg.expect;
  if (ex.contains("outcome")) {
    CheckReport r;
    r.name = "expect_outcome";
    const std::string want = ex["outcome"].get<std::string>();
    r.pass = res.summary.outcome == want;
    r.worst = r.pass ? 0.0 : 1.0;
    if (!r.pass) r.note = "expected " + want + ", got " + res.summary.outcome;
    res.summary.checks.push_back(r);
  }
  if (ex.contains("tau_p_per_step")) {
    CheckReport r;
    r.name = "expect_tau_per_step";
    r.tolerance = tol::angle;
    const double want = ex["tau_p_per_step"].get<double>();
    const auto& tau = res.trace.tau_p;
    double worst = 0.0;
    for (std::size_t k = 2; k < tau.size(); ++k) {
      const double v = std::abs(tau[k] - tau[k - 1] - want);
      if (v > worst) {
        worst = v;
        r.index = k;
      }
    }
    r.worst = worst;
    r.pass = worst <= r.tolerance && tau.size() > 2;
    res.summary.checks.push_back(r);
  }
}

}  // namespace

RunResult simulate(const ScenarioConfig& cfg) {
  RunResult res;
  const DomainSpec& spec = *cfg.domain;
  if (cfg.dyadic) {
    res.dyadic = run_dyadic(spec, cfg.pursuer, make_prescribed_curve(cfg), cfg.dyadic->m_min, cfg.dyadic->m_max,
                            cfg.dyadic->horizon, cfg.tie_break);
    res.trace = res.dyadic->traces.back();
    res.dyadic->traces.clear();
  } else {
    auto policy = make_policy(cfg);
    RunOptions opt;
    opt.max_steps = cfg.max_steps;
    opt.tie_break = cfg.tie_break;
    opt.allow_large_separation = cfg.allow_large_separation;
    res.trace = run_discrete(spec, cfg.pursuer, cfg.evader, *policy, cfg.step, opt);
  }
  const PursuitTrace& tr = res.trace;

  RunSummary& s = res.summary;
  s.name = cfg.name;
  s.domain = spec.describe();
  s.domain_config = cfg.domain_json;
  s.curvature = spec.curvature_bound();
  s.steps = tr.size() - 1;
  s.step = tr.step;
  s.l0 = tr.separation.front();
  s.ln = tr.separation.back();
  s.capture_step = tr.capture_step;
  try {
    const Classification c = capture_classifier(tr);
    s.outcome = to_string(c.outcome);
    s.tail_slope = c.tail_slope;
    for (const auto& [key, fit] : {std::pair{"tauP", c.tau_p}, {"tauE", c.tau_e}, {"cP", c.c_p}, {"cE", c.c_e}}) {
      if (fit) s.fits[key] = *fit;
    }
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::InsufficientData) throw;
    s.outcome = to_string(Outcome::Undecided);
  }
  try {
    const SqrtBoundReport rep = sqrt_bound_report(tr);
    if (std::isfinite(rep.c)) s.c = rep.c;
    s.b = rep.b;
  } catch (const Error&) {
    // outside the bound's hypothesis; nothing to report
  }
  if (res.dyadic) s.dyadic = dyadic_json(*res.dyadic);
  for (const auto& name : cfg.checks) s.checks.push_back(run_check(name, res, cfg));
  add_expectations(res, cfg);
  return res;
}

RunSummary run_scenario(const ScenarioConfig& cfg) {
  RunResult res = simulate(cfg);
  RunSummary& s = res.summary;
  std::filesystem::create_directories(cfg.output_dir);
  const auto trace_path = cfg.output_dir / "trace.csv";
  const auto pos_path = cfg.output_dir / "positions.csv";
  const auto summary_path = cfg.output_dir / "summary.json";
  write_trace_csv(res.trace, trace_path);
  write_positions_csv(res.trace, pos_path);
  s.artifacts["trace"] = trace_path.string();
  s.artifacts["positions"] = pos_path.string();
  s.artifacts["summary"] = summary_path.string();
  if (cfg.plot && cfg.domain->planar()) {
    const auto svg_path = cfg.output_dir / "plot.svg";
    emit_plot(*cfg.domain, res.trace, svg_path);
    s.artifacts["plot"] = svg_path.string();
  }
  std::ofstream os(summary_path);
  if (!os) throw Error(ErrorKind::Configuration, "cannot write " + summary_path.string());
  os << to_json(s).dump(2) << '\n';
  return s;
}

json to_json(const RunSummary& s) {
  json fits = json::object();
  for (const auto& [k, f] : s.fits) {
    fits[k] = {{"exponent", finite_or_null(f.exponent)}, {"half_width", finite_or_null(f.half_width)}, {"intercept", finite_or_null(f.intercept)}, {"points", f.points}};
  }
  json checks = json::array();
  for (const auto& c : s.checks) {
    json ctx = json::object();
    for (const auto& [k, v] : c.context) ctx[k] = finite_or_null(v);
    checks.push_back({{"name", c.name},
                      {"pass", c.pass},
                      {"worst", finite_or_null(c.worst)},
                      {"index", c.index ? json(*c.index) : json(nullptr)},
                      {"tolerance", finite_or_null(c.tolerance)},
                      {"context", ctx},
                      {"note", c.note}});
  }
  return {{"name", s.name},
          {"domain", s.domain},
          {"domain_config", s.domain_config},
          {"curvature", s.curvature},
          {"outcome", s.outcome},
          {"steps", s.steps},
          {"step", s.step},
          {"L0", finite_or_null(s.l0)},
          {"LN", finite_or_null(s.ln)},
          {"tail_slope", finite_or_null(s.tail_slope)},
          {"capture_step", s.capture_step ? json(*s.capture_step) : json(nullptr)},
          {"C", s.c ? finite_or_null(*s.c) : json(nullptr)},
          {"B", s.b ? finite_or_null(*s.b) : json(nullptr)},
          {"fits", fits},
          {"checks", checks},
          {"artifacts", s.artifacts},
          {"dyadic", s.dyadic},
          {"passed", s.passed()},
          {"error", s.error}};
}

RunSummary summary_from_json(const json& doc) {
  try {
    RunSummary s;
    s.name = doc.at("name").get<std::string>();
    s.domain = doc.at("domain").get<std::string>();
    s.domain_config = doc.at("domain_config");
    s.curvature = doc.at("curvature").get<double>();
    s.outcome = doc.at("outcome").get<std::string>();
    s.steps = doc.at("steps").get<std::size_t>();
    s.step = doc.at("step").get<double>();
    s.l0 = from_json_double(doc.at("L0"));
    s.ln = from_json_double(doc.at("LN"));
    s.tail_slope = from_json_double(doc.at("tail_slope"));
    if (!doc.at("capture_step").is_null()) s.capture_step = doc["capture_step"].get<std::size_t>();
    if (!doc.at("C").is_null()) s.c = from_json_double(doc["C"]);
    if (!doc.at("B").is_null()) s.b = from_json_double(doc["B"]);
    for (const auto& [k, f] : doc.at("fits").items()) {
      s.fits[k] = {from_json_double(f.at("exponent")), from_json_double(f.at("half_width")), from_json_double(f.at("intercept")),
                   f.at("points").get<std::size_t>()};
    }
    for (const auto& c : doc.at("checks")) {
      CheckReport r;
      r.name = c.at("name").get<std::string>();
      r.pass = c.at("pass").get<bool>();
      r.worst = from_json_double(c.at("worst"));
      if (!c.at("index").is_null()) r.index = c["index"].get<std::size_t>();
      r.tolerance = from_json_double(c.at("tolerance"));
      for (const auto& [k, v] : c.at("context").items()) r.context[k] = from_json_double(v);
      r.note = c.at("note").get<std::string>();
      s.checks.push_back(std::move(r));
    }
    s.artifacts = doc.at("artifacts").get<std::map<std::string, std::string>>();
    s.dyadic = doc.at("dyadic");
    s.error = doc.at("error").get<std::string>();
    return s;
  } catch (const json::exception& e) {
    throw Error(ErrorKind::Schema, std::string("summary: ") + e.what());
  }
}

std::vector<ScenarioConfig> parse_batch(const json& doc) {
  std::vector<json> docs;
  if (doc.is_array()) {
    docs.assign(doc.begin(), doc.end());
  } else if (doc.is_object() && doc.contains("base")) {
    const json& base = doc["base"];
    const json vary = doc.value("vary", json::object());
    if (!vary.is_object()) schema("vary", "expected an object of dotted paths");
    docs.push_back(base);
    for (const auto& [key, values] : vary.items()) {
      if (!values.is_array()) schema("vary." + key, "expected an array of values");
      std::vector<json> next;
      for (const auto& d : docs) {
        for (const auto& v : values) {
          json copy = d;
          std::string ptr = "/" + key;
          std::replace(ptr.begin(), ptr.end(), '.', '/');
          copy[json::json_pointer(ptr)] = v;
          next.push_back(std::move(copy));
        }
      }
      docs = std::move(next);
    }
    const std::string stem = base.value("name", doc.value("name", "batch"));
    if (!vary.empty()) {
      for (std::size_t i = 0; i < docs.size(); ++i) {
        docs[i]["name"] = stem + "_" + std::to_string(i);
        docs[i]["output"] = doc.value("name", stem) + "/" + docs[i]["name"].get<std::string>();
      }
    }
  } else {
    schema("batch", "expected a list of scenarios or {\"base\", \"vary\"}");
  }
  if (docs.empty()) throw Error(ErrorKind::Configuration, "batch is empty");
  std::vector<ScenarioConfig> out;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    try {
      out.push_back(parse_scenario(docs[i]));
    } catch (const Error& e) {
      throw Error(e.kind(), "batch entry " + std::to_string(i) + ": " + e.detail());
    }
  }
  return out;
}

BatchResult run_batch(const std::vector<ScenarioConfig>& configs, const std::filesystem::path& output_dir) {
  if (configs.empty()) throw Error(ErrorKind::Configuration, "batch is empty");
  std::vector<std::future<RunSummary>> jobs;
  for (const auto& cfg : configs) {
    jobs.push_back(std::async(std::launch::async, [&cfg] {
      try {
        return run_scenario(cfg);
      } catch (const std::exception& e) {
        RunSummary s;
        s.name = cfg.name;
        s.domain = cfg.domain->describe();
        s.outcome = "error";
        s.error = e.what();
        return s;
      }
    }));
  }
  BatchResult res;
  for (auto& j : jobs) res.runs.push_back(j.get());

  std::filesystem::create_directories(output_dir);
  res.table = output_dir / "batch.csv";
  std::ofstream os(res.table);
  if (!os) throw Error(ErrorKind::Configuration, "cannot write " + res.table.string());
  os << "name,outcome,steps,L0,LN,capture_step,C,passed,error\n";
  for (const auto& s : res.runs) {
    os << s.name << ',' << s.outcome << ',' << s.steps << ',' << format_double(s.l0) << ',' << format_double(s.ln)
       << ',' << (s.capture_step ? std::to_string(*s.capture_step) : "") << ',' << (s.c ? format_double(*s.c) : "")
       << ',' << (s.passed() ? 1 : 0) << ",\"" << s.error << "\"\n";
  }
  return res;
}

}  // namespace catpursuit
