#pragma once

#include "catpursuit/domain.hpp"

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace catpursuit {

/// What the evader sees when choosing E_{i+1}: both current positions, the
/// pursuer's next position, and the step bound.
struct StepContext {
  const DomainSpec& spec;
  std::int64_t step;
  const Point& pursuer;
  const Point& evader;
  const Point& pursuer_next;
  double step_size;
};

class EvaderPolicy {
 public:
  virtual ~EvaderPolicy() = default;
  virtual Point next(const StepContext& ctx) = 0;
  virtual std::string name() const = 0;
  /// Independent copy, including any per-run state accumulated so far.
  virtual std::unique_ptr<EvaderPolicy> clone() const = 0;
};

/// Evader curve parametrised by time, speed at most 1.
struct PrescribedCurve {
  std::string name;
  std::function<Point(double)> at;

  static PrescribedCurve stationary(Point p);
  static PrescribedCurve line(Eigen::VectorXd origin, Eigen::VectorXd velocity);
  static PrescribedCurve circle(Eigen::Vector2d center, double radius, double start_angle, double speed);
};

/// Straight run at full speed along `direction` (coordinate domains), or
/// toward `target` along geodesics and then standing still.
std::unique_ptr<EvaderPolicy> geodesic_runner(Eigen::VectorXd direction);
std::unique_ptr<EvaderPolicy> geodesic_runner_to(Point target);
/// Visits the points in order at full speed; stays at the last one unless
/// `loop` is set.
std::unique_ptr<EvaderPolicy> waypoints(std::vector<Point> points, bool loop);
/// Moves along center + scale * u * (cos 2 pi u, sin 2 pi u), advancing u so
/// each chord has length D. Planar coordinate domains only.
std::unique_ptr<EvaderPolicy> spiral(Eigen::Vector2d center, double scale, double u0);
Eigen::Vector2d spiral_point(const Eigen::Vector2d& center, double scale, double u);
/// Jumps to the point of the boundary circle of disk `disk` opposite to the
/// pursuer's next position.
std::unique_ptr<EvaderPolicy> antipodal_oscillator(int disk);
/// Moves counterclockwise (orientation +1) or clockwise along the boundary
/// circle of disk `disk` by arclength D per step.
std::unique_ptr<EvaderPolicy> circle_orbiter(int disk, int orientation = 1);
/// Uniform random step of length in [0, D] in a uniform direction, retried
/// until the target is valid. Metric trees move along edges.
std::unique_ptr<EvaderPolicy> random_walk(std::uint64_t seed);
/// Alternates heading +-`angle` off `heading` every `period` steps, full speed.
std::unique_ptr<EvaderPolicy> zigzag(Eigen::Vector2d heading, double angle, int period);
/// E_{i+1} = curve(t0 + (i+1) D).
std::unique_ptr<EvaderPolicy> prescribed(PrescribedCurve curve, double t0 = 0.0);

}  // namespace catpursuit
