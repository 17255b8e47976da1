#include "catpursuit/policies.hpp"

#include "catpursuit/errors.hpp"
#include "catpursuit/geodesic.hpp"
#include "catpursuit/metric_tree.hpp"
#include "catpursuit/tolerances.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <utility>

namespace catpursuit {

namespace {

constexpr double two_pi = 2.0 * std::numbers::pi;

Eigen::Vector2d planar(const Point& p) { return p.coords().head<2>(); }

/// Great-circle step of arclength s from x in tangent direction t.
Eigen::VectorXd sphere_step(double radius, const Eigen::VectorXd& x, const Eigen::VectorXd& t, double s) {
  const double a = s / radius;
  return std::cos(a) * x + std::sin(a) * radius * t;
}

Eigen::VectorXd tangent_part(const Eigen::VectorXd& x, const Eigen::VectorXd& v) {
  const Eigen::VectorXd n = x.normalized();
  return v - v.dot(n) * n;
}

const Disk& disk_of(const DomainSpec& spec, int disk) {
  if (spec.kind() != DomainKind::PlaneMinusDisks || disk < 0 ||
      disk >= static_cast<int>(spec.disks().size())) {
    throw Error(ErrorKind::Configuration, "policy refers to a removed disk that does not exist");
  }
  return spec.disks()[static_cast<std::size_t>(disk)];
}

class Runner final : public EvaderPolicy {
 public:
  explicit Runner(Eigen::VectorXd direction) : direction_(std::move(direction)) {
    if (!(direction_.norm() > 0.0)) throw Error(ErrorKind::Configuration, "runner direction is zero");
    direction_.normalize();
  }

  Point next(const StepContext& ctx) override {
    const Eigen::VectorXd& e = ctx.evader.coords();
    if (ctx.spec.kind() == DomainKind::Sphere) {
      if (tangent_.size() == 0) {
        tangent_ = tangent_part(e, direction_);
        if (!(tangent_.norm() > tol::geometric)) {
          throw Error(ErrorKind::Configuration, "runner direction is normal to the sphere");
        }
        tangent_.normalize();
      }
      const double R = ctx.spec.sphere_radius();
      const Eigen::VectorXd x = sphere_step(R, e, tangent_, ctx.step_size);
      tangent_ = (-std::sin(ctx.step_size / R) * e / R + std::cos(ctx.step_size / R) * tangent_).normalized();
      return Point(Eigen::VectorXd(x * (R / x.norm())));
    }
    if (e.size() != direction_.size()) throw Error(ErrorKind::Configuration, "runner direction has wrong dimension");
    return Point(Eigen::VectorXd(e + ctx.step_size * direction_));
  }
  std::string name() const override { return "runner"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Runner>(*this); }

 private:
  Eigen::VectorXd direction_;
  Eigen::VectorXd tangent_;
};

/// One step of length <= D toward `target` along a geodesic.
Point toward(const StepContext& ctx, const Point& target) {
  const double d = distance(ctx.spec, ctx.evader, target);
  if (d <= ctx.step_size) return target;
  const GeodesicPath path = shortest_path(ctx.spec, ctx.evader, target, TieBreak::upper());
  return point_along(ctx.spec, path, ctx.step_size);
}

class RunnerTo final : public EvaderPolicy {
 public:
  explicit RunnerTo(Point target) : target_(std::move(target)) {}
  Point next(const StepContext& ctx) override { return toward(ctx, target_); }
  std::string name() const override { return "runner_to"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<RunnerTo>(*this); }

 private:
  Point target_;
};

class Waypoints final : public EvaderPolicy {
 public:
  Waypoints(std::vector<Point> points, bool loop) : points_(std::move(points)), loop_(loop) {
    if (points_.empty()) throw Error(ErrorKind::Configuration, "waypoint list is empty");
  }
  Point next(const StepContext& ctx) override {
    if (same_point(ctx.spec, ctx.evader, points_[k_], tol::geometric)) {
      if (k_ + 1 < points_.size()) {
        ++k_;
      } else if (loop_) {
        k_ = 0;
      } else {
        return ctx.evader;
      }
    }
    return toward(ctx, points_[k_]);
  }
  std::string name() const override { return "waypoints"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Waypoints>(*this); }

 private:
  std::vector<Point> points_;
  bool loop_;
  std::size_t k_ = 0;
};

class Spiral final : public EvaderPolicy {
 public:
  Spiral(Eigen::Vector2d center, double scale, double u0) : center_(center), scale_(scale), u_(u0) {
    if (!(scale_ > 0.0) || !(u0 >= 0.0)) throw Error(ErrorKind::Configuration, "spiral needs scale > 0, u0 >= 0");
  }
  Point next(const StepContext& ctx) override {
    if (!ctx.spec.planar()) throw Error(ErrorKind::Unsupported, "spiral evader needs a planar domain");
    const Eigen::Vector2d here = spiral_point(center_, scale_, u_);
    const double D = ctx.step_size;
    auto chord = [&](double u) { return (spiral_point(center_, scale_, u) - here).norm(); };
    // Speed |gamma'(u)| >= 2 pi scale u, so this first bracket is short.
    double hi = u_ + D / (scale_ * std::max(1.0, two_pi * u_));
    while (chord(hi) < D) hi = u_ + 2.0 * (hi - u_);
    double lo = u_;
    for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, hi); ++it) {
      const double mid = 0.5 * (lo + hi);
      (chord(mid) < D ? lo : hi) = mid;
    }
    u_ = lo;
    return Point(Eigen::VectorXd(spiral_point(center_, scale_, u_)));
  }
  std::string name() const override { return "spiral"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Spiral>(*this); }

 private:
  Eigen::Vector2d center_;
  double scale_;
  double u_;
};

class Antipodal final : public EvaderPolicy {
 public:
  explicit Antipodal(int disk) : disk_(disk) {}
  Point next(const StepContext& ctx) override {
    const Disk& d = disk_of(ctx.spec, disk_);
    const Eigen::Vector2d v = d.center - planar(ctx.pursuer_next);
    if (!(v.norm() > 0.0)) throw Error(ErrorKind::Degenerate, "pursuer at the disk center");
    return Point(Eigen::VectorXd(Eigen::Vector2d(d.center + d.radius * v.normalized())));
  }
  std::string name() const override { return "antipodal"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Antipodal>(*this); }

 private:
  int disk_;
};

class Orbiter final : public EvaderPolicy {
 public:
  Orbiter(int disk, int orientation) : disk_(disk), orientation_(orientation >= 0 ? 1 : -1) {}
  Point next(const StepContext& ctx) override {
    const Disk& d = disk_of(ctx.spec, disk_);
    const Eigen::Vector2d v = planar(ctx.evader) - d.center;
    if (std::abs(v.norm() - d.radius) > tol::geometric * std::max(1.0, d.radius)) {
      throw Error(ErrorKind::PolicyViolation, "orbiting evader is off its circle");
    }
    const double a = std::atan2(v.y(), v.x()) + orientation_ * ctx.step_size / d.radius;
    return Point(Eigen::VectorXd(Eigen::Vector2d(d.center + d.radius * Eigen::Vector2d(std::cos(a), std::sin(a)))));
  }
  std::string name() const override { return "orbiter"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Orbiter>(*this); }

 private:
  int disk_;
  int orientation_;
};

class RandomWalk final : public EvaderPolicy {
 public:
  explicit RandomWalk(std::uint64_t seed) : rng_(seed) {}

  Point next(const StepContext& ctx) override {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double D = ctx.step_size;
    if (ctx.spec.kind() == DomainKind::MetricTree) return tree_step(ctx, D * unit(rng_));
    for (int attempt = 0; attempt < 100; ++attempt) {
      const double len = D * unit(rng_);
      Point cand = coordinate_step(ctx, len);
      if (!contains(ctx.spec, cand)) continue;
      if (ctx.spec.kind() == DomainKind::PlaneMinusDisks && distance(ctx.spec, ctx.evader, cand) > D) continue;
      return cand;
    }
    return ctx.evader;
  }
  std::string name() const override { return "random_walk"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<RandomWalk>(*this); }

 private:
  Point coordinate_step(const StepContext& ctx, double len) {
    std::normal_distribution<double> normal;
    const Eigen::VectorXd& e = ctx.evader.coords();
    Eigen::VectorXd dir(e.size());
    for (Eigen::Index i = 0; i < dir.size(); ++i) dir[i] = normal(rng_);
    if (ctx.spec.kind() == DomainKind::Sphere) {
      dir = tangent_part(e, dir);
      if (!(dir.norm() > 0.0)) return ctx.evader;
      const double R = ctx.spec.sphere_radius();
      Eigen::VectorXd x = sphere_step(R, e, dir.normalized(), len);
      return Point(Eigen::VectorXd(x * (R / x.norm())));
    }
    if (!(dir.norm() > 0.0)) return ctx.evader;
    return Point(Eigen::VectorXd(e + len * dir.normalized()));
  }

  Point tree_step(const StepContext& ctx, double len) {
    const MetricTreeIndex& tree = ctx.spec.tree();
    TreeLocation loc = tree.canonical(ctx.evader.location());
    std::uniform_int_distribution<int> coin(0, 1);
    int sense = coin(rng_) ? 1 : -1;
    while (true) {
      const TreeEdge& e = tree.edge(loc.edge);
      const double room = sense > 0 ? e.length - loc.offset : loc.offset;
      if (len <= room) {
        loc.offset += sense * len;
        return Point(tree.canonical(loc));
      }
      len -= room;
      const int vertex = sense > 0 ? e.v : e.u;
      const auto& inc = tree.incident(vertex);
      std::uniform_int_distribution<std::size_t> pick(0, inc.size() - 1);
      loc.edge = inc[pick(rng_)];
      const TreeEdge& ne = tree.edge(loc.edge);
      loc.offset = ne.u == vertex ? 0.0 : ne.length;
      sense = ne.u == vertex ? 1 : -1;
    }
  }

  std::mt19937_64 rng_;
};

class Zigzag final : public EvaderPolicy {
 public:
  Zigzag(Eigen::Vector2d heading, double angle, int period) : heading_(heading), angle_(angle), period_(period) {
    if (!(heading_.norm() > 0.0) || period_ < 1) throw Error(ErrorKind::Configuration, "bad zigzag parameters");
    heading_.normalize();
  }
  Point next(const StepContext& ctx) override {
    const double a = ((ctx.step / period_) % 2 == 0) ? angle_ : -angle_;
    const Eigen::Vector2d dir = Eigen::Rotation2Dd(a) * heading_;
    return Point(Eigen::VectorXd(Eigen::Vector2d(planar(ctx.evader) + ctx.step_size * dir)));
  }
  std::string name() const override { return "zigzag"; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Zigzag>(*this); }

 private:
  Eigen::Vector2d heading_;
  double angle_;
  int period_;
};

class Prescribed final : public EvaderPolicy {
 public:
  Prescribed(PrescribedCurve curve, double t0) : curve_(std::move(curve)), t0_(t0) {}
  Point next(const StepContext& ctx) override {
    return curve_.at(t0_ + static_cast<double>(ctx.step + 1) * ctx.step_size);
  }
  std::string name() const override { return "prescribed:" + curve_.name; }
  std::unique_ptr<EvaderPolicy> clone() const override { return std::make_unique<Prescribed>(*this); }

 private:
  PrescribedCurve curve_;
  double t0_;
};

}  // namespace

Eigen::Vector2d spiral_point(const Eigen::Vector2d& center, double scale, double u) {
  return center + scale * u * Eigen::Vector2d(std::cos(two_pi * u), std::sin(two_pi * u));
}

PrescribedCurve PrescribedCurve::stationary(Point p) {
  return {"stationary", [p = std::move(p)](double) { return p; }};
}

PrescribedCurve PrescribedCurve::line(Eigen::VectorXd origin, Eigen::VectorXd velocity) {
  if (origin.size() != velocity.size()) throw Error(ErrorKind::Configuration, "line velocity has wrong dimension");
  if (velocity.norm() > 1.0 + tol::point) throw Error(ErrorKind::Configuration, "line speed exceeds 1");
  return {"line", [o = std::move(origin), v = std::move(velocity)](double t) { return Point(Eigen::VectorXd(o + t * v)); }};
}

PrescribedCurve PrescribedCurve::circle(Eigen::Vector2d center, double radius, double start_angle, double speed) {
  if (!(radius > 0.0) || std::abs(speed) > 1.0 + tol::point) {
    throw Error(ErrorKind::Configuration, "circle needs radius > 0 and speed <= 1");
  }
  return {"circle", [=](double t) {
            const double a = start_angle + speed * t / radius;
            return Point(Eigen::VectorXd(Eigen::Vector2d(center + radius * Eigen::Vector2d(std::cos(a), std::sin(a)))));
          }};
}

std::unique_ptr<EvaderPolicy> geodesic_runner(Eigen::VectorXd direction) {
  return std::make_unique<Runner>(std::move(direction));
}
std::unique_ptr<EvaderPolicy> geodesic_runner_to(Point target) { return std::make_unique<RunnerTo>(std::move(target)); }
std::unique_ptr<EvaderPolicy> waypoints(std::vector<Point> points, bool loop) {
  return std::make_unique<Waypoints>(std::move(points), loop);
}
std::unique_ptr<EvaderPolicy> spiral(Eigen::Vector2d center, double scale, double u0) {
  return std::make_unique<Spiral>(center, scale, u0);
}
std::unique_ptr<EvaderPolicy> antipodal_oscillator(int disk) { return std::make_unique<Antipodal>(disk); }
std::unique_ptr<EvaderPolicy> circle_orbiter(int disk, int orientation) {
  return std::make_unique<Orbiter>(disk, orientation);
}
std::unique_ptr<EvaderPolicy> random_walk(std::uint64_t seed) { return std::make_unique<RandomWalk>(seed); }
std::unique_ptr<EvaderPolicy> zigzag(Eigen::Vector2d heading, double angle, int period) {
  return std::make_unique<Zigzag>(heading, angle, period);
}
std::unique_ptr<EvaderPolicy> prescribed(PrescribedCurve curve, double t0) {
  return std::make_unique<Prescribed>(std::move(curve), t0);
}

}  // namespace catpursuit
