#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cubeopt {

/// Finite tree with unit-length edges and string vertex labels.
class MetricTree {
 public:
  using Edge = std::pair<std::string, std::string>;

  /// Throws InputError unless the graph is a tree with at least one edge.
  MetricTree(std::vector<std::string> vertices, std::vector<Edge> edges);

  const std::vector<std::string>& vertices() const { return vertices_; }
  const std::vector<Edge>& edges() const { return edges_; }
  std::size_t vertex_id(const std::string& label) const;
  /// Index of the edge joining u and v (either order). Throws InputError if absent.
  std::size_t edge_id(const std::string& u, const std::string& v) const;
  /// Edge indices incident to vertex id v.
  const std::vector<std::size_t>& incident(std::size_t v) const { return incident_[v]; }
  /// The endpoint of edge e other than vertex id v.
  std::size_t other(std::size_t e, std::size_t v) const;
  std::size_t endpoint(std::size_t e, int which) const { return which == 0 ? ends_[e].first : ends_[e].second; }
  /// Number of edges between two vertices.
  int hops(std::size_t u, std::size_t v) const { return hops_[u][v]; }

 private:
  std::vector<std::string> vertices_;
  std::vector<Edge> edges_;
  std::map<std::string, std::size_t> index_;
  std::vector<std::pair<std::size_t, std::size_t>> ends_;
  std::vector<std::vector<std::size_t>> incident_;
  std::vector<std::vector<int>> hops_;
};

/// Point at distance delta from endpoint `from` along `edge`.
struct TreePoint {
  MetricTree::Edge edge;
  std::string from;
  double delta = 0.0;
};

double tree_distance(const MetricTree& tree, const TreePoint& p, const TreePoint& q);

/// Label of the vertex p sits on, if delta is exactly 0 or 1.
std::optional<std::string> vertex_of(const MetricTree& tree, const TreePoint& p);

struct TreeMeanResult {
  TreePoint mean;
  /// Edges examined by the walk, in order.
  std::vector<std::size_t> visited_edges;
};

/// Exact minimizer of sum_a d(a, x)^2 by the edge walk from the smallest vertex label.
TreeMeanResult tree_mean(const MetricTree& tree, const std::vector<TreePoint>& points);

}  // namespace cubeopt
