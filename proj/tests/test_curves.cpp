#include "oracles.hpp"

#include "catpursuit/curves.hpp"
#include "catpursuit/errors.hpp"
#include "catpursuit/growth.hpp"
#include "catpursuit/policies.hpp"
#include "catpursuit/thue_morse.hpp"
#include "catpursuit/winding.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace catpursuit;
using std::numbers::pi;

namespace {

const DomainSpec E2 = DomainSpec::euclidean(2);

PolygonalCurve plane_curve(std::initializer_list<std::pair<double, double>> pts) {
  std::vector<Point> v;
  for (auto [x, y] : pts) v.push_back(Point::xy(x, y));
  return PolygonalCurve(E2, v);
}

// Inscribed polygon on the spiral u (cos 2 pi u, sin 2 pi u).
PolygonalCurve spiral_polygon(double u_max, double mesh, double u_min = 0.0) {
  std::vector<Point> v;
  for (double u = u_min; u <= u_max + 1e-12; u += mesh) v.push_back(Point(Eigen::VectorXd(spiral_point({0, 0}, 1.0, u))));
  return PolygonalCurve(E2, v);
}

// Tangent direction of the spiral is 2 pi u + atan(2 pi u); it only turns left.
double spiral_rotation(double u) { return 2 * pi * u + std::atan(2 * pi * u); }

}  // namespace

TEST_CASE("total rotation examples") {
  CHECK(total_rotation(plane_curve({{0, 0}, {1, 0}, {2, 0}})) == doctest::Approx(0.0));
  CHECK(total_rotation(plane_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}})) == doctest::Approx(pi));
  CHECK_THROWS_AS(plane_curve({{0, 0}, {1, 0}, {1, 0}, {2, 0}}), Error);
  CHECK(PolygonalCurve::without_repeats(E2, {Point::xy(0, 0), Point::xy(1, 0), Point::xy(1, 0)}).size() == 2);
}

TEST_CASE("spiral total rotation is linear in u") {
  std::vector<double> us, taus;
  for (double U : {2.0, 4.0, 6.0, 8.0, 10.0}) {
    const double tau = total_rotation(spiral_polygon(U, 1e-3));
    // The inscribed polygon loses the turn inside its first and last chords.
    CHECK(std::abs(tau - spiral_rotation(U)) < 0.05);
    us.push_back(U);
    taus.push_back(tau);
  }
  const double slope = tail_slope(us, taus, 1.0);
  CHECK(std::abs(slope / (2 * pi) - 1.0) < 0.02);
}

TEST_CASE("tc and circumradius series") {
  const auto square = plane_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  const auto s = tc_function(square);
  REQUIRE(s.t.size() == 4);
  CHECK(s.tau[0] == 0.0);
  CHECK(s.tau[1] == doctest::Approx(pi / 2));
  CHECK(s.tau[2] == doctest::Approx(pi));
  CHECK(s.t[2] == doctest::Approx(2.0));

  const auto straight = plane_curve({{0, 0}, {1, 0}, {2.5, 0}, {4, 0}});
  const auto c = circumradius_function(straight);
  for (std::size_t k = 0; k < c.t.size(); ++k) CHECK(c.c[k] == doctest::Approx(c.t[k]));
  CHECK(tc_function(straight).tau.back() == 0.0);

  const auto sp = spiral_polygon(5.0, 1e-2);
  const auto tc = tc_function(sp);
  const auto cr = circumradius_function(sp);
  for (std::size_t k = 1; k < cr.t.size(); ++k) {
    CHECK(tc.tau[k] >= tc.tau[k - 1]);
    CHECK(cr.c[k] >= cr.c[k - 1]);
    CHECK(cr.c[k] >= cr.r[k] - 1e-9);
    CHECK(cr.c[k] <= cr.t[k] + 1e-9);
  }
  CHECK(cr.c.front() == 0.0);
}

TEST_CASE("circumradius on a sphere samples piece interiors") {
  const auto S = DomainSpec::sphere(1.0);
  // Two chords that pass over the far side of the start point's ball.
  const Eigen::Vector3d far = Eigen::Vector3d(-1, 0, 0.01).normalized();
  const PolygonalCurve curve(S, {Point::xyz(1, 0, 0), Point::xyz(0, 1, 0), Point(Eigen::VectorXd(far))});
  const auto c = circumradius_function(curve, 64);
  CHECK(c.c.back() == doctest::Approx(oracle::sphere_distance({1, 0, 0}, far, 1.0)).epsilon(1e-9));
  CHECK_THROWS_AS(circumradius_function(curve, 0), Error);
}

TEST_CASE("closed orbit around a radius-2 disk") {
  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 2.0}});
  std::vector<Point> v;
  for (int k = 0; k <= 400; ++k) {
    const double a = 2 * pi * k / 400.0;
    v.push_back(Point::xy(2 * std::cos(a), 2 * std::sin(a)));
  }
  const auto c = circumradius_function(PolygonalCurve(U, v, TieBreak::upper()), 8);
  // Intrinsic distance to the far side of the orbit is half the circumference.
  const double cmax = *std::max_element(c.c.begin(), c.c.end());
  CHECK(cmax == doctest::Approx(2 * pi).epsilon(1e-9));
  CHECK(cmax > 4.0);
}

TEST_CASE("comparison angle") {
  CHECK(comparison_angle(0, 1, 1, 1) == doctest::Approx(pi / 3));
  CHECK(comparison_angle(0, 2, 1, 1) == doctest::Approx(pi));
  CHECK(comparison_angle(1, pi / 2, pi / 2, pi / 2) == doctest::Approx(pi / 2));
  CHECK_THROWS_AS(comparison_angle(0, 3, 1, 1), Error);
  CHECK_THROWS_AS(comparison_angle(1, 3, 2, 2), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> side(0.1, 1.0);
  for (int k = 0; k < 500; ++k) {
    const double b = side(rng), c = side(rng);
    const double a = std::abs(b - c) + (b + c - std::abs(b - c)) * std::uniform_real_distribution<double>(0.01, 0.99)(rng);
    CHECK(std::abs(comparison_angle(0, a, b, c) - oracle::euclid_angle(a, b, c)) < 1e-9);
    CHECK(std::abs(comparison_angle(1e-8, a, b, c) - comparison_angle(0, a, b, c)) < 1e-4);
    CHECK(std::abs(comparison_angle(1.0, a, b, c) - oracle::spherical_angle(1.0, a, b, c)) < 1e-9);
    const double s = side(rng), u = side(rng);
    CHECK(std::abs(model_distance(0, a, b, c, s, u) - oracle::model_distance(0, a, b, c, s, u)) < 1e-9);
    CHECK(std::abs(model_distance(1, a, b, c, s, u) - oracle::model_distance(1, a, b, c, s, u)) < 1e-9);
  }
}

TEST_CASE("chord-arc certificate") {
  const auto half_square = chord_arc_certificate(plane_curve({{0, 0}, {1, 0}, {1, 1}}));
  CHECK(std::abs(half_square.max_ratio - std::sqrt(2.0)) < 1e-12);

  std::vector<Point> arc;
  for (int k = 0; k <= 2000; ++k) {
    const double a = pi / 2 * k / 2000.0;
    arc.push_back(Point::xy(std::cos(a), std::sin(a)));
  }
  const auto quarter = chord_arc_certificate(PolygonalCurve(E2, arc));
  CHECK(quarter.subarcs.size() == 1);
  CHECK(quarter.max_ratio == doctest::Approx((pi / 2) / std::sqrt(2.0)).epsilon(1e-6));

  // A turn above pi/2 is always a cut.
  const auto hairpin = chord_arc_certificate(plane_curve({{0, 0}, {1, 0}, {0, 0.1}}));
  CHECK(hairpin.subarcs.size() == 2);
  for (const auto& s : hairpin.subarcs) CHECK(s.ratio == doctest::Approx(1.0));

  std::mt19937_64 rng(2);
  std::normal_distribution<double> step(0.0, 1.0);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Point> v{Point::xy(0, 0)};
    for (int k = 0; k < 50; ++k) v.push_back(Point(Eigen::VectorXd(v.back().coords() + Eigen::Vector2d(step(rng), step(rng)))));
    const auto rep = chord_arc_certificate(PolygonalCurve(E2, v));
    CHECK(rep.worst_excess <= 1e-9);
    for (const auto& s : rep.subarcs) CHECK(s.turn <= pi / 2 + 1e-12);
    if (rep.aggregate_applicable) CHECK(rep.aggregate_holds);
  }
  CHECK_THROWS_AS(chord_arc_certificate(PolygonalCurve(DomainSpec::sphere(1), {Point::xyz(1, 0, 0), Point::xyz(0, 1, 0)})),
                  Error);
}

TEST_CASE("spherical length bound") {
  CHECK(spherical_length_bound(0.0, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(spherical_length_bound(pi / 3, pi / 3) == doctest::Approx(2 * std::acos(std::sqrt(2.0 / 3.0))).epsilon(1e-10));
  CHECK(spherical_length_bound(pi / 3, pi / 3) == doctest::Approx(1.23096).epsilon(1e-5));
  CHECK(spherical_length_bound(pi / 2, 0.0) == doctest::Approx(0.0));
  CHECK_THROWS_AS(spherical_length_bound(2.0, 1.2), Error);
}

TEST_CASE("growth exponent fits") {
  std::vector<double> t, y, flat;
  for (int k = 1; k <= 1000; ++k) {
    t.push_back(k);
    y.push_back(std::sqrt(k));
    flat.push_back(3.0);
  }
  CHECK(std::abs(fit_growth_exponent(t, y).exponent - 0.5) < 1e-6);
  CHECK(std::abs(fit_growth_exponent(t, flat).exponent) < 1e-12);
  flat[900] = 0.0;
  CHECK_THROWS_AS(fit_growth_exponent(t, flat), Error);
  CHECK_THROWS_AS(fit_growth_exponent(std::vector<double>(t.begin(), t.begin() + 8),
                                      std::vector<double>(y.begin(), y.begin() + 8), 1.0),
                  Error);
}

TEST_CASE("spiral tau and c grow like the square root of arclength") {
  const auto sp = spiral_polygon(40.0, 1e-3, 1.0);
  const auto tc = tc_function(sp);
  const auto cr = circumradius_function(sp);
  std::vector<double> t, tau, c;
  for (std::size_t k = 1; k < tc.t.size(); k += 10) {
    t.push_back(tc.t[k]);
    tau.push_back(tc.tau[k]);
    c.push_back(cr.c[k]);
  }
  CHECK(std::abs(fit_growth_exponent(t, tau).exponent - 0.5) < 0.05);
  CHECK(std::abs(fit_growth_exponent(t, c).exponent - 0.5) < 0.05);
}

TEST_CASE("asymptotic ray") {
  const auto straight = asymptotic_ray_fit(plane_curve({{0, 0}, {1, 1}, {2, 2}, {5, 5}}));
  for (double r : straight.residual) CHECK(r < 1e-12);

  std::vector<Point> v{Point::xy(0, 0)};
  double heading = 0.0;
  for (int i = 1; i <= 12000; ++i) {
    v.push_back(Point(Eigen::VectorXd(v.back().coords() + Eigen::Vector2d(std::cos(heading), std::sin(heading)))));
    heading += std::ldexp(1.0, -i);
  }
  const auto fit = asymptotic_ray_fit(PolygonalCurve(E2, v), 100.0, 1e4);
  CHECK(*std::max_element(fit.residual.begin(), fit.residual.end()) < 2.0);
  REQUIRE(fit.exponent.has_value());
  CHECK(fit.exponent->exponent <= 0.05);
  CHECK_THROWS_AS(asymptotic_ray_fit(plane_curve({{0, 0}, {1, 0}, {0, 0}})), Error);
}

TEST_CASE("window rotation") {
  const auto square = plane_curve({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(window_total_rotation(square, 1.0, 0.25) == doctest::Approx(pi / 2));
  CHECK(window_total_rotation(plane_curve({{0, 0}, {1, 0}, {3, 0}}), 1.5, 1.0) == 0.0);
  CHECK_THROWS_AS(window_total_rotation(square, 0.1, 0.5), Error);
}

TEST_CASE("inscribed polygons rotate less") {
  std::mt19937_64 rng(17);
  std::normal_distribution<double> step(0.0, 1.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Point> v{Point::xy(0, 0)};
    for (int k = 0; k < 12; ++k) v.push_back(Point(Eigen::VectorXd(v.back().coords() + Eigen::Vector2d(step(rng), step(rng)))));
    const PolygonalCurve gamma(E2, v);
    std::vector<double> ts{0.0, gamma.length()};
    for (int k = 0; k < 6; ++k) ts.push_back(unit(rng) * gamma.length());
    std::sort(ts.begin(), ts.end());
    std::vector<Point> w;
    for (double t : ts) w.push_back(gamma.point_at(t));
    const auto sigma = PolygonalCurve::without_repeats(E2, w);
    if (sigma.size() < 3) continue;
    CHECK(total_rotation(sigma) <= total_rotation(gamma) + 1e-9);
  }
}

TEST_CASE("inscribed polygons on a sphere converge") {
  // A small circle at colatitude 1 traced once; its geodesic curvature is cot 1.
  const auto S = DomainSpec::sphere(1.0);
  auto polygon = [&](int n) {
    std::vector<Point> v;
    for (int k = 0; k <= n; ++k) {
      const double a = 1.999 * pi * k / n;
      v.push_back(Point::xyz(std::sin(1.0) * std::cos(a), std::sin(1.0) * std::sin(a), std::cos(1.0)));
    }
    return total_rotation(PolygonalCurve(S, v));
  };
  // The end chords each drop about half a chord's turn, so the error is O(1/n).
  double prev = polygon(1024);
  for (int n = 2048; n <= 131072; n *= 2) {
    const double next = polygon(n);
    if (n == 131072) CHECK(std::abs(next - prev) < 1e-4);
    prev = next;
  }
  CHECK(prev == doctest::Approx(1.999 * pi * std::cos(1.0)).epsilon(1e-4));
}

TEST_CASE("Thue-Morse word") {
  CHECK(thue_morse_word(8) == std::vector<int>{1, 2, 2, 1, 2, 1, 1, 2});
  const auto w = thue_morse_word(4096);
  CHECK(is_cube_free(w));
  CHECK_FALSE(is_cube_free(std::vector<int>{1, 1, 1}));
  CHECK_FALSE(is_cube_free(std::vector<int>{2, 1, 2, 1, 2, 1, 2}));
  CHECK(is_cube_free(std::vector<int>{1, 1, 2, 1, 1}));
}

TEST_CASE("winding geodesics") {
  const auto U = DomainSpec::plane_minus_disks({{{0, 0}, 1.0}, {{5, 0}, 1.0}});
  const std::vector<int> one{1};
  const auto single = build_winding_geodesic(U, one);
  int arcs = 0;
  for (const auto& p : single.pieces) arcs += std::holds_alternative<ArcPiece>(p);
  CHECK(arcs <= 1);
  CHECK(junction_residual(U, single).turn <= 1e-9);

  const std::vector<int> two{1, 2};
  const auto alt = build_winding_geodesic(U, two);
  const auto res = junction_residual(U, alt);
  CHECK(res.gap <= 1e-9);
  CHECK(res.turn <= 1e-9);
  REQUIRE(alt.pieces.size() >= 3);
  CHECK(std::holds_alternative<LinePiece>(alt.pieces.front()));
  CHECK(std::holds_alternative<LinePiece>(alt.pieces.back()));

  // A run of two adds one full circuit.
  const std::vector<int> rep{1, 1};
  CHECK(build_winding_geodesic(U, rep).length > build_winding_geodesic(U, one).length + 2 * pi - 1e-9);

  const auto word = thue_morse_word(64);
  const auto tm = build_winding_geodesic(U, word);
  const auto r64 = junction_residual(U, tm);
  CHECK(r64.turn <= 1e-9);
  CHECK(r64.gap <= 1e-9);

  CHECK_THROWS_AS(build_winding_geodesic(DomainSpec::plane_minus_disks({{{0, 0}, 1.0}}), one), Error);
}
