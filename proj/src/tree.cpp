#include "cubeopt/tree.hpp"

#include <algorithm>
#include <cmath>
#include <queue>

#include "cubeopt/error.hpp"

namespace cubeopt {

MetricTree::MetricTree(std::vector<std::string> vertices, std::vector<Edge> edges)
    : vertices_(std::move(vertices)), edges_(std::move(edges)) {
  for (std::size_t i = 0; i < vertices_.size(); ++i) {
    if (!index_.emplace(vertices_[i], i).second) {
      throw InputError("tree: duplicate vertex '" + vertices_[i] + "'");
    }
  }
  if (edges_.empty()) throw InputError("tree: needs at least one edge");
  if (edges_.size() + 1 != vertices_.size()) {
    throw InputError("tree: expected |E| = |V| - 1");
  }
  incident_.resize(vertices_.size());
  for (std::size_t e = 0; e < edges_.size(); ++e) {
    const std::size_t u = vertex_id(edges_[e].first);
    const std::size_t v = vertex_id(edges_[e].second);
    if (u == v) throw InputError("tree: loop at '" + edges_[e].first + "'");
    ends_.emplace_back(u, v);
    incident_[u].push_back(e);
    incident_[v].push_back(e);
  }
  const std::size_t n = vertices_.size();
  hops_.assign(n, std::vector<int>(n, -1));
  for (std::size_t s = 0; s < n; ++s) {
    std::queue<std::size_t> q;
    q.push(s);
    hops_[s][s] = 0;
    while (!q.empty()) {
      const std::size_t v = q.front();
      q.pop();
      for (std::size_t e : incident_[v]) {
        const std::size_t w = other(e, v);
        if (hops_[s][w] < 0) {
          hops_[s][w] = hops_[s][v] + 1;
          q.push(w);
        }
      }
    }
    for (std::size_t v = 0; v < n; ++v) {
      if (hops_[s][v] < 0) throw InputError("tree: graph is not connected");
    }
  }
}

std::size_t MetricTree::vertex_id(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) throw InputError("tree: unknown vertex '" + label + "'");
  return it->second;
}

std::size_t MetricTree::edge_id(const std::string& u, const std::string& v) const {
  const std::size_t a = vertex_id(u), b = vertex_id(v);
  for (std::size_t e : incident_[a]) {
    if (other(e, a) == b) return e;
  }
  throw InputError("tree: no edge " + u + "-" + v);
}

std::size_t MetricTree::other(std::size_t e, std::size_t v) const {
  return ends_[e].first == v ? ends_[e].second : ends_[e].first;
}

namespace {

struct Located {
  std::size_t edge;
  std::size_t from;
  double delta;
};

Located locate(const MetricTree& tree, const TreePoint& p) {
  if (!(p.delta >= 0.0 && p.delta <= 1.0)) throw InputError("tree point: delta outside [0,1]");
  const std::size_t e = tree.edge_id(p.edge.first, p.edge.second);
  const std::size_t f = tree.vertex_id(p.from);
  if (f != tree.endpoint(e, 0) && f != tree.endpoint(e, 1)) {
    throw InputError("tree point: '" + p.from + "' is not an endpoint of its edge");
  }
  return {e, f, p.delta};
}

// Distance from a located point to vertex v.
double to_vertex(const MetricTree& tree, const Located& a, std::size_t v) {
  const std::size_t g = tree.other(a.edge, a.from);
  return std::min(a.delta + tree.hops(a.from, v), (1.0 - a.delta) + tree.hops(g, v));
}

}  // namespace

double tree_distance(const MetricTree& tree, const TreePoint& p, const TreePoint& q) {
  const Located a = locate(tree, p), b = locate(tree, q);
  if (a.edge == b.edge) {
    const double sb = b.from == a.from ? b.delta : 1.0 - b.delta;
    return std::abs(a.delta - sb);
  }
  const std::size_t g = tree.other(b.edge, b.from);
  return std::min(b.delta + to_vertex(tree, a, b.from), (1.0 - b.delta) + to_vertex(tree, a, g));
}

std::optional<std::string> vertex_of(const MetricTree& tree, const TreePoint& p) {
  const Located a = locate(tree, p);
  if (a.delta == 0.0) return tree.vertices()[a.from];
  if (a.delta == 1.0) return tree.vertices()[tree.other(a.edge, a.from)];
  return std::nullopt;
}

TreeMeanResult tree_mean(const MetricTree& tree, const std::vector<TreePoint>& points) {
  if (points.empty()) throw InputError("tree mean: no points");
  std::vector<Located> pts;
  for (const auto& p : points) pts.push_back(locate(tree, p));
  const auto& labels = tree.vertices();
  const double m = static_cast<double>(pts.size());

  std::size_t v = static_cast<std::size_t>(
      std::min_element(labels.begin(), labels.end()) - labels.begin());
  std::vector<char> done(tree.edges().size(), 0);
  TreeMeanResult out;
  for (;;) {
    // Unoptimized incident edges, visited in order of the far endpoint's label.
    std::vector<std::size_t> open;
    for (std::size_t e : tree.incident(v)) {
      if (!done[e]) open.push_back(e);
    }
    if (open.empty()) break;
    std::sort(open.begin(), open.end(), [&](std::size_t a, std::size_t b) {
      return labels[tree.other(a, v)] < labels[tree.other(b, v)];
    });
    const std::size_t e = open.front();
    const std::size_t w = tree.other(e, v);
    done[e] = 1;
    out.visited_edges.push_back(e);

    // On e = [v, w] with v at 0, d(a, t) = d(a, v) - t for anchors on w's side of v
    // (including those inside e) and d(a, v) + t for the rest.
    double s = 0.0;
    for (const auto& a : pts) {
      const double dv = to_vertex(tree, a, v);
      const bool beyond = a.edge == e ? dv > 0.0 : tree.hops(w, a.from) < tree.hops(v, a.from);
      s += beyond ? dv : -dv;
    }
    const double xbar = s / m;
    if (xbar >= 1.0) {
      v = w;
    } else if (xbar > 0.0) {
      out.mean = {tree.edges()[e], labels[v], xbar};
      return out;
    }
  }
  const std::size_t e = tree.incident(v).front();
  out.mean = {tree.edges()[e], labels[v], 0.0};
  return out;
}

}  // namespace cubeopt
