#include "catpursuit/svg.hpp"

#include "catpursuit/errors.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

namespace catpursuit {

void emit_plot(const DomainSpec& spec, const PursuitTrace& tr, const std::filesystem::path& path) {
  if (!spec.planar()) throw Error(ErrorKind::Unsupported, std::string("cannot plot a ") + to_string(spec.kind()) + " domain");
  if (tr.pursuer.empty()) throw Error(ErrorKind::IncompleteTrace, "trace has no positions");

  Eigen::Vector2d lo(1e300, 1e300), hi(-1e300, -1e300);
  auto grow = [&](const Eigen::Vector2d& p, double pad = 0.0) {
    lo = lo.cwiseMin(p - Eigen::Vector2d::Constant(pad));
    hi = hi.cwiseMax(p + Eigen::Vector2d::Constant(pad));
  };
  for (const auto* pts : {&tr.pursuer, &tr.evader}) {
    for (const auto& p : *pts) grow(p.coords().head<2>());
  }
  for (const auto& d : spec.disks()) grow(d.center, d.radius);
  if (spec.kind() == DomainKind::ConvexRegion) {
    if (spec.polygon().empty()) {
      grow(Eigen::Vector2d::Zero(), spec.disk_radius());
    } else {
      for (const auto& v : spec.polygon()) grow(v);
    }
  }
  const double span = std::max({hi.x() - lo.x(), hi.y() - lo.y(), 1e-9});
  const double size = 800.0, margin = 20.0, scale = (size - 2 * margin) / span;
  auto X = [&](double x) { return margin + (x - lo.x()) * scale; };
  auto Y = [&](double y) { return size - margin - (y - lo.y()) * scale; };

  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream os(path);
  if (!os) throw Error(ErrorKind::Configuration, "cannot write " + path.string());
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << size << "\" height=\"" << size << "\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (const auto& d : spec.disks()) {
    os << "<circle cx=\"" << X(d.center.x()) << "\" cy=\"" << Y(d.center.y()) << "\" r=\"" << d.radius * scale
       << "\" fill=\"#ddd\" stroke=\"#888\"/>\n";
  }
  if (spec.kind() == DomainKind::ConvexRegion) {
    if (spec.polygon().empty()) {
      os << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0) << "\" r=\"" << spec.disk_radius() * scale
         << "\" fill=\"none\" stroke=\"#888\"/>\n";
    } else {
      os << "<polygon fill=\"none\" stroke=\"#888\" points=\"";
      for (const auto& v : spec.polygon()) os << X(v.x()) << ',' << Y(v.y()) << ' ';
      os << "\"/>\n";
    }
  }

  // Long runs are thinned so the file stays viewable.
  const std::size_t stride = std::max<std::size_t>(1, tr.pursuer.size() / 4000);
  auto polyline = [&](const std::vector<Point>& pts, const char* colour) {
    os << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t k = 0; k < pts.size(); k += stride) {
      os << X(pts[k].coords()[0]) << ',' << Y(pts[k].coords()[1]) << ' ';
    }
    os << X(pts.back().coords()[0]) << ',' << Y(pts.back().coords()[1]) << "\"/>\n";
    for (std::size_t k = 0; k < pts.size(); k += stride) {
      os << "<circle cx=\"" << X(pts[k].coords()[0]) << "\" cy=\"" << Y(pts[k].coords()[1])
         << "\" r=\"1.5\" fill=\"" << colour << "\"/>\n";
    }
  };
  polyline(tr.pursuer, "#c0392b");
  polyline(tr.evader, "#2471a3");
  os << "</svg>\n";
}

}  // namespace catpursuit
