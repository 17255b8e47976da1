#include "oracles.hpp"

#include "catpursuit/domain.hpp"
#include "catpursuit/errors.hpp"
#include "catpursuit/geodesic.hpp"
#include "catpursuit/metric_tree.hpp"
#include "catpursuit/plane_disks.hpp"
#include "catpursuit/pursuit.hpp"
#include "catpursuit/tolerances.hpp"
#include "catpursuit/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <functional>
#include <numbers>
#include <random>

using namespace catpursuit;
using std::numbers::pi;

namespace {

std::vector<DomainSpec> shipped_domains() {
  return {DomainSpec::euclidean(2),
          DomainSpec::euclidean(3),
          DomainSpec::convex_disk(1.0),
          DomainSpec::convex_polygon({{0, 0}, {3, 0}, {3, 2}, {1, 3}, {-1, 1}}),
          DomainSpec::sphere(1.5),
          DomainSpec::plane_minus_disks({{{0, 0}, 1.0}, {{3, 0.5}, 1.2}}),
          DomainSpec::random_metric_tree(20, 5)};
}

ErrorKind kind_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("no error thrown");
  return ErrorKind::Range;
}

}  // namespace

TEST_CASE("distance examples") {
  CHECK(distance(DomainSpec::euclidean(2), Point::xy(0, 0), Point::xy(3, 4)) == doctest::Approx(5.0).epsilon(1e-15));
  const auto S = DomainSpec::sphere(1.0);
  CHECK(distance(S, Point::xyz(0, 0, 1), Point::xyz(0, 0, -1)) == doctest::Approx(pi));
  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 1.0}});
  const double d = distance(U, Point::xy(-2, 0), Point::xy(2, 0));
  CHECK(std::abs(d - (2 * std::sqrt(3.0) + pi / 3)) < 1e-12);
  CHECK(std::abs(d - oracle::plane_disks_distance(U.disks(), {-2, 0}, {2, 0})) < tol::oracle);
}

TEST_CASE("shortest path examples") {
  const auto E = DomainSpec::euclidean(2);
  const auto line = shortest_path(E, Point::xy(0, 0), Point::xy(1, 1));
  REQUIRE(line.pieces.size() == 1);
  CHECK(std::holds_alternative<LinePiece>(line.pieces[0]));
  CHECK(line.length == doctest::Approx(std::sqrt(2.0)));

  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 1.0}});
  CHECK(kind_of([&] { shortest_path(U, Point::xy(-2, 0), Point::xy(2, 0)); }) == ErrorKind::Ambiguity);
  try {
    shortest_path(U, Point::xy(-2, 0), Point::xy(2, 0));
  } catch (const AmbiguityError& e) {
    CHECK(e.candidates().size() == 2);
  }
  const auto up = shortest_path(U, Point::xy(-2, 0), Point::xy(2, 0), TieBreak::upper());
  REQUIRE(up.pieces.size() == 3);
  REQUIRE(std::holds_alternative<ArcPiece>(up.pieces[1]));
  const auto& arc = std::get<ArcPiece>(up.pieces[1]);
  auto wrap = [](double a) { return std::remainder(a, 2 * pi); };
  CHECK(std::abs(wrap(arc.start_angle - 2 * pi / 3)) < 1e-12);
  CHECK(std::abs(wrap(arc.end_angle - pi / 3)) < 1e-12);
  CHECK(arc.orientation == -1);
  const auto low = shortest_path(U, Point::xy(-2, 0), Point::xy(2, 0), TieBreak::lower());
  CHECK(point_along(U, low, low.length / 2).coords().y() < -0.99);

  const auto tangent = point_along(U, up, std::sqrt(3.0)).coords();
  CHECK((tangent - Eigen::Vector2d(-0.5, std::sqrt(3.0) / 2)).norm() < 1e-12);

  const auto S = DomainSpec::sphere(1.0);
  CHECK(kind_of([&] { shortest_path(S, Point::xyz(1, 0, 0), Point::xyz(-1, 0, 0)); }) == ErrorKind::Ambiguity);
  const auto over = shortest_path(S, Point::xyz(1, 0, 0), Point::xyz(-1, 0, 0), TieBreak::upper());
  CHECK(over.length == doctest::Approx(pi));
  CHECK(point_along(S, over, pi / 2).coords().z() > 0.99);
}

TEST_CASE("point_along endpoints and range") {
  const auto E = DomainSpec::euclidean(2);
  const auto path = shortest_path(E, Point::xy(0, 0), Point::xy(10, 0));
  CHECK((point_along(E, path, 1.0).coords() - Eigen::Vector2d(1, 0)).norm() < 1e-15);
  CHECK(same_point(E, point_along(E, path, 0.0), path.start));
  CHECK(same_point(E, point_along(E, path, path.length), path.finish));
  CHECK(kind_of([&] { point_along(E, path, 10.5); }) == ErrorKind::Range);
  CHECK(kind_of([&] { point_along(E, path, -0.1); }) == ErrorKind::Range);
}

TEST_CASE("directions and angles") {
  const auto E = DomainSpec::euclidean(2);
  const auto path = shortest_path(E, Point::xy(0, 0), Point::xy(1, 0));
  CHECK((direction_at(E, path, PathEnd::Start).tangent - Eigen::Vector2d(1, 0)).norm() < 1e-15);
  CHECK(angle_at(E, Point::xy(0, 0), Point::xy(1, 0), Point::xy(0, 1)) == doctest::Approx(pi / 2));
  CHECK(angle_at(E, Point::xy(0, 0), Point::xy(1, 2), Point::xy(1, 2)) == 0.0);
  CHECK(kind_of([&] { direction_at(E, shortest_path(E, Point::xy(1, 1), Point::xy(1, 1)), PathEnd::Start); }) ==
        ErrorKind::Degenerate);

  // Arc entered tangentially: the line direction carries over.
  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 1.0}});
  const auto up = shortest_path(U, Point::xy(-2, 0), Point::xy(2, 0), TieBreak::upper());
  const auto first = subpath(U, up, 0.0, std::sqrt(3.0));
  const auto rest = subpath(U, up, std::sqrt(3.0), up.length);
  CHECK(angle_between(direction_at(U, first, PathEnd::Finish), direction_at(U, rest, PathEnd::Start)) < 1e-9);

  // Star tree: centre vertex 0 with three leaves.
  const auto T = DomainSpec::metric_tree(4, {{0, 1, 1.0}, {0, 2, 1.0}, {0, 3, 2.0}});
  const Point centre(T.tree().at_vertex(0));
  const auto out = shortest_path(T, centre, Point::on_tree(2, 1.5));
  const auto dir = direction_at(T, out, PathEnd::Start);
  CHECK(dir.edge == 2);
  CHECK(dir.sense == 1);
  CHECK(angle_at(T, centre, Point::on_tree(0, 0.5), Point::on_tree(1, 0.5)) == pi);
  CHECK(angle_at(T, centre, Point::on_tree(2, 0.5), Point::on_tree(2, 1.5)) == 0.0);
}

TEST_CASE("plane-minus-disks distance matches the visibility oracle") {
  const std::vector<Disk> disks{{{0, 0}, 1.0}, {{3.5, 0.3}, 1.5}, {{0.5, 3.2}, 1.1}};
  const auto U = DomainSpec::plane_minus_disks(disks);
  std::mt19937_64 rng(11);
  int done = 0;
  for (int k = 0; k < 50; ++k) {
    const auto p = sample_point(U, rng), q = sample_point(U, rng);
    const double d = distance(U, p, q);
    const double ref = oracle::plane_disks_distance(disks, p.coords(), q.coords());
    CHECK(d <= ref + 1e-9);
    CHECK(ref - d < tol::oracle);
    ++done;
  }
  CHECK(done == 50);
}

TEST_CASE("metric tree distance matches the spliced-graph oracle") {
  const auto T = DomainSpec::random_metric_tree(30, 9);
  std::mt19937_64 rng(3);
  for (int k = 0; k < 200; ++k) {
    const auto p = sample_point(T, rng), q = sample_point(T, rng);
    const double ref = oracle::tree_distance(T.tree().vertex_count(), T.tree().edges(), p.location(), q.location());
    CHECK(std::abs(distance(T, p, q) - ref) < 1e-12);
    CHECK(std::abs(shortest_path(T, p, q).length - ref) < 1e-12);
  }
}

TEST_CASE("sphere distance matches the atan2 form") {
  const auto S = DomainSpec::sphere(2.5);
  std::mt19937_64 rng(4);
  for (int k = 0; k < 200; ++k) {
    const auto p = sample_point(S, rng), q = sample_point(S, rng);
    CHECK(std::abs(distance(S, p, q) - oracle::sphere_distance(p.coords(), q.coords(), 2.5)) < 1e-12);
  }
}

TEST_CASE("metric axioms, geodesic consistency and path invariants") {
  for (const auto& spec : shipped_domains()) {
    CAPTURE(spec.describe());
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    double worst_triangle = 0.0, worst_split = 0.0, worst_gap = 0.0, worst_turn = 0.0, worst_sum = 0.0;
    for (int k = 0; k < 1000; ++k) {
      const auto p = sample_point(spec, rng), q = sample_point(spec, rng), r = sample_point(spec, rng);
      const double pq = distance(spec, p, q), qr = distance(spec, q, r), pr = distance(spec, p, r);
      CHECK(pq == doctest::Approx(distance(spec, q, p)).epsilon(1e-12));
      worst_triangle = std::max(worst_triangle, pr - pq - qr);
      if (k % 10 != 0) continue;
      GeodesicPath path;
      try {
        path = shortest_path(spec, p, q);
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Ambiguity) throw;
        continue;
      }
      CHECK(std::abs(path.length - pq) < 1e-9);
      double sum = 0.0;
      for (const auto& piece : path.pieces) sum += piece_length(piece);
      worst_sum = std::max(worst_sum, std::abs(sum - path.length));
      const auto res = junction_residual(spec, path);
      worst_gap = std::max(worst_gap, res.gap);
      worst_turn = std::max(worst_turn, res.turn);
      const auto x = point_along(spec, path, unit(rng) * path.length);
      CHECK(contains(spec, x));
      worst_split = std::max(worst_split, std::abs(distance(spec, p, x) + distance(spec, x, q) - pq));
      CHECK(distance(spec, p, p) == 0.0);
    }
    CHECK(worst_triangle <= 1e-9);
    CHECK(worst_split <= 1e-8);
    CHECK(worst_gap <= 1e-9);
    CHECK(worst_turn <= 1e-9);
    CHECK(worst_sum <= 1e-9);
  }
}

TEST_CASE("angle triangle inequality") {
  for (const auto& spec : shipped_domains()) {
    CAPTURE(spec.describe());
    std::mt19937_64 rng(8);
    double worst = 0.0;
    int checked = 0;
    for (int k = 0; k < 300; ++k) {
      const auto p = sample_point(spec, rng), q = sample_point(spec, rng), r = sample_point(spec, rng),
                 w = sample_point(spec, rng);
      try {
        const double a = angle_at(spec, p, q, r), b = angle_at(spec, p, q, w), c = angle_at(spec, p, w, r);
        worst = std::max(worst, a - b - c);
        ++checked;
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::Ambiguity && e.kind() != ErrorKind::Degenerate) throw;
      }
    }
    CHECK(checked > 250);
    CHECK(worst <= 1e-9);
  }
}

TEST_CASE("invalid domains and points") {
  CHECK(kind_of([] { DomainSpec::euclidean(0); }) == ErrorKind::InvalidDomain);
  CHECK(kind_of([] { DomainSpec::sphere(0.0); }) == ErrorKind::InvalidDomain);
  CHECK(kind_of([] { DomainSpec::convex_disk(-1.0); }) == ErrorKind::InvalidDomain);
  CHECK(kind_of([] { DomainSpec::convex_polygon({{0, 0}, {2, 0}, {1, 0.2}, {2, 2}, {0, 2}}); }) ==
        ErrorKind::InvalidDomain);
  CHECK(kind_of([] { DomainSpec::plane_minus_disks({{{0, 0}, 1.0}, {{1.5, 0}, 1.0}}); }) ==
        ErrorKind::InvalidDomain);
  CHECK(kind_of([] { DomainSpec::plane_minus_disks({{{0, 0}, 0.5}}); }) == ErrorKind::InvalidDomain);
  CHECK(kind_of([] { DomainSpec::metric_tree(3, {{0, 1, 1.0}, {1, 0, 1.0}}); }) == ErrorKind::InvalidDomain);
  CHECK(kind_of([] { DomainSpec::metric_tree(3, {{0, 1, 1.0}, {1, 2, 0.0}}); }) == ErrorKind::InvalidDomain);

  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 1.0}});
  CHECK(kind_of([&] { validate_point(U, Point::xy(0.2, 0.1)); }) == ErrorKind::InvalidPoint);
  try {
    distance(U, Point::xy(0.2, 0.1), Point::xy(3, 0));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("disk 0") != std::string::npos);
  }
  CHECK(contains(U, Point::xy(1.0, 0.0)));
  CHECK_FALSE(contains(DomainSpec::convex_disk(1.0), Point::xy(0.8, 0.8)));
  CHECK_FALSE(contains(DomainSpec::sphere(1.0), Point::xyz(0, 0, 1.1)));
  const auto T = DomainSpec::metric_tree(2, {{0, 1, 1.0}});
  CHECK_FALSE(contains(T, Point::on_tree(0, 1.5)));
  CHECK_FALSE(contains(T, Point::on_tree(3, 0.5)));
}

TEST_CASE("domain metadata") {
  CHECK(DomainSpec::sphere(2.0).curvature_bound() == doctest::Approx(0.25));
  CHECK(DomainSpec::sphere(2.0).threshold() == doctest::Approx(2 * pi));
  CHECK(std::isinf(DomainSpec::euclidean(3).threshold()));
  CHECK(DomainSpec::convex_disk(1.0).compact());
  CHECK_FALSE(DomainSpec::plane_minus_disks({{{0, 0}, 1.0}}).compact());
  CHECK(DomainSpec::random_metric_tree(20, 1).compact());
  CHECK(DomainSpec::random_metric_tree(20, 1).tree().edge_count() == 20);
}
