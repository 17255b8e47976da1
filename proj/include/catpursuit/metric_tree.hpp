#pragma once

#include "catpursuit/domain.hpp"
#include "catpursuit/geodesic.hpp"

#include <optional>
#include <vector>

namespace catpursuit {

/// Precomputed all-pairs vertex distances and next-hop edges for a metric
/// tree. Sized for the few-hundred-vertex trees used as playing fields.
class MetricTreeIndex {
 public:
  MetricTreeIndex(int vertex_count, std::vector<TreeEdge> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<TreeEdge>& edges() const { return edges_; }
  const TreeEdge& edge(int id) const { return edges_.at(static_cast<std::size_t>(id)); }
  const std::vector<int>& incident(int vertex) const { return incident_.at(static_cast<std::size_t>(vertex)); }

  double vertex_distance(int a, int b) const { return dist_[index(a, b)]; }
  /// First edge on the path from a toward b (a != b).
  int next_edge(int a, int b) const { return next_[index(a, b)]; }

  /// Vertex id when the location sits on an edge endpoint.
  std::optional<int> vertex_at(const TreeLocation& loc) const;
  TreeLocation at_vertex(int vertex) const;
  TreeLocation canonical(const TreeLocation& loc) const;
  bool valid(const TreeLocation& loc) const;

  double distance(const TreeLocation& a, const TreeLocation& b) const;
  GeodesicPath shortest_path(const TreeLocation& a, const TreeLocation& b) const;

 private:
  std::size_t index(int a, int b) const {
    return static_cast<std::size_t>(a) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(b);
  }

  int n_ = 0;
  std::vector<TreeEdge> edges_;
  std::vector<std::vector<int>> incident_;
  std::vector<double> dist_;
  std::vector<int> next_;
};

}  // namespace catpursuit
