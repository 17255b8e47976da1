#include "catpursuit/errors.hpp"
#include "catpursuit/geodesic.hpp"
#include "catpursuit/pursuit.hpp"
#include "catpursuit/trace_io.hpp"
#include "catpursuit/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

using namespace catpursuit;
using std::numbers::pi;

namespace {

// Always jumps 2D along +x; violates the step bound.
class Sprinter final : public EvaderPolicy {
 public:
  Point next(const StepContext& ctx) override {
    return Point(Eigen::VectorXd(ctx.evader.coords() + Eigen::Vector2d(2 * ctx.step_size, 0)));
  }
  std::string name() const override { return "sprinter"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Sprinter>(*this); }
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream is(p);
  std::stringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("pursuit step examples") {
  const auto E = DomainSpec::euclidean(2);
  auto p = pursuit_step(E, Point::xy(0, 0), Point::xy(10, 0), 1.0);
  REQUIRE(p);
  CHECK((p->coords() - Eigen::Vector2d(1, 0)).norm() < 1e-15);
  CHECK_FALSE(pursuit_step(E, Point::xy(0, 0), Point::xy(1, 0), 1.0));

  const auto S = DomainSpec::sphere(1.0);
  const Point a = Point::xyz(1, 0, 0), b = Point::xyz(std::cos(1.0), std::sin(1.0), 0);
  p = pursuit_step(S, a, b, 0.5);
  REQUIRE(p);
  CHECK(distance(S, a, *p) == doctest::Approx(0.5));
  CHECK(distance(S, *p, b) == doctest::Approx(0.5));

  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 1.0}});
  CHECK_THROWS_AS(pursuit_step(U, Point::xy(-2, 0), Point::xy(2, 0), 2.0), Error);
  p = pursuit_step(U, Point::xy(-2, 0), Point::xy(2, 0), 2.0, TieBreak::upper());
  REQUIRE(p);
  const double angle = 2 * pi / 3 - (2 - std::sqrt(3.0));
  CHECK((p->coords() - Eigen::Vector2d(std::cos(angle), std::sin(angle))).norm() < 1e-12);
  CHECK(distance(U, *p, Point::xy(2, 0)) == doctest::Approx(2 * std::sqrt(3.0) + pi / 3 - 2).epsilon(1e-12));
}

TEST_CASE("collinear chase keeps its distance") {
  const auto E = DomainSpec::euclidean(2);
  auto runner = geodesic_runner(Eigen::Vector2d(1, 0));
  RunOptions opt;
  opt.max_steps = 2000;
  const auto tr = run_discrete(E, Point::xy(0, 0), Point::xy(5, 0), *runner, 0.1, opt);
  CHECK_FALSE(tr.capture_step);
  CHECK(tr.size() == 2001);
  for (double L : tr.separation) CHECK(std::abs(L - 5.0) < 1e-9);
  CHECK(tr.tau_p.back() == 0.0);
  CHECK(check_separation_monotone(tr).pass);
}

TEST_CASE("perpendicular chase approaches half the initial distance") {
  const auto E = DomainSpec::euclidean(2);
  auto runner = geodesic_runner(Eigen::Vector2d(1, 0));
  RunOptions opt;
  opt.max_steps = 2000000;
  opt.circumradius = false;
  const auto tr = run_discrete(E, Point::xy(0, 0), Point::xy(0, 5), *runner, 1e-3, opt);
  // Classical equal-speed pursuit: L -> L0 (1 + cos theta0) / 2.
  CHECK(std::abs(tr.separation.back() - 2.5) < 1e-2);
  CHECK(tr.separation.back() > 2.5 - 1e-9);
}

TEST_CASE("compact domains capture a random walker") {
  const auto disk = DomainSpec::convex_disk(1.0);
  const auto tree = DomainSpec::random_metric_tree(20, 4);
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    RunOptions opt;
    opt.max_steps = 1000000;
    auto walk = random_walk(seed);
    const auto a = run_discrete(disk, Point::xy(-0.5, 0), Point::xy(0.7, 0.1), *walk, 0.05, opt);
    CHECK(a.capture_step);
    CHECK(a.separation.back() <= 0.05);
    auto walk2 = random_walk(seed);
    const auto b = run_discrete(tree, Point::on_tree(0, 0.0), Point::on_tree(19, 0.3), *walk2, 0.05, opt);
    CHECK(b.capture_step);
  }
}

TEST_CASE("engine errors") {
  const auto E = DomainSpec::euclidean(2);
  Sprinter sprinter;
  RunOptions opt;
  try {
    run_discrete(E, Point::xy(0, 0), Point::xy(5, 0), sprinter, 0.1, opt);
    FAIL("expected a policy violation");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PolicyViolation);
    CHECK(std::string(e.what()).find("step 0") != std::string::npos);
  }

  const auto S = DomainSpec::sphere(1.0);
  auto runner = geodesic_runner(Eigen::Vector3d(0, 0, 1));
  try {
    run_discrete(S, Point::xyz(1, 0, 0), Point::xyz(-1, 0, 0), *runner, 0.1, opt);
    FAIL("expected a precondition error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Precondition);
  }
  auto stay = prescribed(PrescribedCurve::stationary(Point::xy(0.05, 0)));
  // Starting inside the capture radius is a capture at step 0.
  const auto at_once = run_discrete(E, Point::xy(0, 0), Point::xy(0.05, 0), *stay, 0.1, opt);
  CHECK(at_once.capture_step == std::optional<std::size_t>(0));
  CHECK(at_once.size() == 1);
}

TEST_CASE("identical runs serialize identically") {
  const auto disk = DomainSpec::convex_disk(1.0);
  RunOptions opt;
  opt.max_steps = 500;
  auto w1 = random_walk(9), w2 = random_walk(9);
  const auto a = run_discrete(disk, Point::xy(-0.9, 0), Point::xy(0.9, 0), *w1, 0.01, opt);
  const auto b = run_discrete(disk, Point::xy(-0.9, 0), Point::xy(0.9, 0), *w2, 0.01, opt);
  const auto dir = std::filesystem::temp_directory_path() / "catpursuit_determinism";
  std::filesystem::create_directories(dir);
  write_trace_csv(a, dir / "a.csv");
  write_trace_csv(b, dir / "b.csv");
  write_positions_csv(a, dir / "pa.csv");
  write_positions_csv(b, dir / "pb.csv");
  CHECK(slurp(dir / "a.csv") == slurp(dir / "b.csv"));
  CHECK(slurp(dir / "pa.csv") == slurp(dir / "pb.csv"));
}

TEST_CASE("trace invariants on every domain") {
  struct Case {
    DomainSpec spec;
    Point p, e;
    std::unique_ptr<EvaderPolicy> policy;
  };
  std::vector<Case> cases;
  cases.push_back({DomainSpec::euclidean(3), Point::xyz(0, 0, 0), Point::xyz(1, 2, 0.5), random_walk(2)});
  cases.push_back({DomainSpec::sphere(1.0), Point::xyz(1, 0, 0), Point::xyz(0, 0.6, 0.8), random_walk(3)});
  cases.push_back({DomainSpec::plane_minus_disks({{{0, 0}, 1.0}}), Point::xy(-1.5, 0.2), Point::xy(0.5, -1.3),
                   random_walk(4)});
  cases.push_back({DomainSpec::random_metric_tree(10, 2), Point::on_tree(0, 0.1), Point::on_tree(9, 0.2),
                   random_walk(5)});
  for (auto& c : cases) {
    CAPTURE(c.spec.describe());
    RunOptions opt;
    opt.max_steps = 300;
    const auto tr = run_discrete(c.spec, c.p, c.e, *c.policy, 0.05, opt);
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < tr.size(); ++i) {
      CHECK(tr.increment[i] >= -1e-9);
      sum += tr.increment[i];
      CHECK(contains(c.spec, tr.evader[i + 1]));
      CHECK(distance(c.spec, tr.evader[i], tr.evader[i + 1]) <= 0.05 + 1e-12);
    }
    CHECK(std::abs(sum - (tr.separation.front() - tr.separation.back())) < 1e-9);
    for (std::size_t k = 1; k < tr.size(); ++k) {
      CHECK(tr.tau_p[k] >= tr.tau_p[k - 1]);
      CHECK(tr.tau_e[k] >= tr.tau_e[k - 1]);
    }
    if (tr.capture_step) CHECK(tr.separation[*tr.capture_step] <= 0.05);
    CHECK(check_separation_monotone(tr).pass);
    CHECK(check_angle_sandwich(tr).pass);
  }
}

TEST_CASE("orbit witnesses the equality case") {
  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 2.0}});
  auto orbit = circle_orbiter(0, 1);
  RunOptions opt;
  opt.max_steps = 500;
  const auto tr = run_discrete(U, Point::xy(2 * std::cos(-0.5), 2 * std::sin(-0.5)), Point::xy(2, 0), *orbit, 0.1, opt);
  CHECK_FALSE(tr.capture_step);
  for (std::size_t i = 0; i + 2 < tr.size(); ++i) {
    CHECK(std::abs(tr.beta[i] - pi) < 1e-6);
    CHECK(std::abs(tr.separation[i] - 1.0) < 1e-9);
  }
  CHECK(tr.tau_p.back() < 1e-6);
}

TEST_CASE("antipodal oscillation turns by pi each step") {
  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 2.0}});
  auto osc = antipodal_oscillator(0);
  RunOptions opt;
  opt.max_steps = 200;
  opt.tie_break = TieBreak::alternate();
  opt.allow_large_separation = true;
  const auto tr = run_discrete(U, Point::xy(-2, 0), Point::xy(2, 0), *osc, 0.5, opt);
  REQUIRE(tr.size() == 201);
  for (std::size_t k = 2; k < tr.size(); ++k) CHECK(std::abs(tr.tau_p[k] - (k - 1) * pi) < 1e-6 * k);
  CHECK_THROWS_AS(sqrt_bound_report(tr), Error);
  opt.allow_large_separation = false;
  auto osc2 = antipodal_oscillator(0);
  CHECK_THROWS_AS(run_discrete(U, Point::xy(-2, 0), Point::xy(2, 0), *osc2, 0.5, opt), Error);
}

TEST_CASE("dyadic refinement") {
  const auto E = DomainSpec::euclidean(2);
  const auto still = run_dyadic(E, Point::xy(0, 0), PrescribedCurve::stationary(Point::xy(3, 0)), 2, 5, 2.0);
  for (const auto& l : still.levels) {
    if (std::isfinite(l.gap_to_next)) CHECK(l.gap_to_next < 1e-12);
  }

  const auto line = run_dyadic(E, Point::xy(0, 0), PrescribedCurve::line(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)),
                               4, 10, 10.0);
  REQUIRE(line.levels.size() == 7);
  CHECK(line.levels.front().step == 1.0 / 16);
  for (std::size_t m = 0; m + 2 < line.levels.size(); ++m) CHECK(line.levels[m + 1].gap_to_next < line.levels[m].gap_to_next);
  CHECK(line.levels[line.levels.size() - 2].gap_to_next < 1e-2);
  CHECK(std::isnan(line.levels.back().gap_to_next));
  CHECK_FALSE(line.horizon_rounded);

  const auto rounded = run_dyadic(E, Point::xy(0, 0), PrescribedCurve::line(Eigen::Vector2d(1, 0), Eigen::Vector2d(0, 1)),
                                  2, 3, 1.1);
  CHECK(rounded.horizon_rounded);
  CHECK(rounded.horizon == 1.0);

  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 2.0}});
  const auto orbit = run_dyadic(U, Point::xy(2 * std::cos(-0.5), 2 * std::sin(-0.5)),
                                PrescribedCurve::circle(Eigen::Vector2d(0, 0), 2.0, 0.0, 1.0), 4, 8, 5.0);
  for (const auto& l : orbit.levels) CHECK(l.separation_ratio > 0.5);
}
