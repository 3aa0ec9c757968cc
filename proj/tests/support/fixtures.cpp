#include "fixtures.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace fixtures {

long planar_euler(const std::vector<std::pair<int, int>>& squares) {
  std::set<std::pair<int, int>> v;
  std::set<std::tuple<int, int, int>> e;  // (x, y, dir): dir 0 horizontal from (x,y), 1 vertical
  for (auto [x, y] : squares) {
    for (int dx = 0; dx <= 1; ++dx) {
      for (int dy = 0; dy <= 1; ++dy) v.insert({x + dx, y + dy});
    }
    e.insert({x, y, 0});
    e.insert({x, y + 1, 0});
    e.insert({x, y, 1});
    e.insert({x + 1, y, 1});
  }
  return static_cast<long>(v.size()) - static_cast<long>(e.size()) + static_cast<long>(squares.size());
}

CubicalComplex random_planar(std::mt19937_64& rng, int max_squares, int min_squares) {
  std::uniform_int_distribution<int> size(min_squares, max_squares);
  for (;;) {
    const int target = size(rng);
    std::vector<std::pair<int, int>> sq{{0, 0}};
    std::set<std::pair<int, int>> have(sq.begin(), sq.end());
    while (static_cast<int>(sq.size()) < target) {
      const auto base = sq[std::uniform_int_distribution<std::size_t>(0, sq.size() - 1)(rng)];
      static const int dirs[4][2] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
      const auto* d = dirs[std::uniform_int_distribution<int>(0, 3)(rng)];
      std::pair<int, int> next{base.first + d[0], base.second + d[1]};
      if (have.insert(next).second) sq.push_back(next);
    }
    if (planar_euler(sq) != 1) continue;
    std::vector<Cube> cubes;
    for (auto [x, y] : sq) cubes.push_back(square(x, y));
    return CubicalComplex(2, cubes);
  }
}

RandomTree random_tree(std::mt19937_64& rng, int edges, int points) {
  std::vector<std::string> labels;
  for (int i = 0; i <= edges; ++i) labels.push_back("v" + std::to_string(i));
  std::shuffle(labels.begin(), labels.end(), rng);
  std::vector<cubeopt::MetricTree::Edge> es;
  for (int i = 1; i <= edges; ++i) {
    const int parent = std::uniform_int_distribution<int>(0, i - 1)(rng);
    es.emplace_back(labels[parent], labels[i]);
  }
  RandomTree out{cubeopt::MetricTree(labels, es), {}};
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int k = 0; k < points; ++k) {
    const auto& e = es[std::uniform_int_distribution<std::size_t>(0, es.size() - 1)(rng)];
    out.points.push_back({e, u(rng) < 0.5 ? e.first : e.second, u(rng)});
  }
  return out;
}

Point TreeEmbedding::place(const cubeopt::MetricTree& tree, const cubeopt::TreePoint& p) const {
  const Point& a = vertex_pos[tree.vertex_id(p.from)];
  const std::string& other = p.edge.first == p.from ? p.edge.second : p.edge.first;
  const Point& b = vertex_pos[tree.vertex_id(other)];
  Point x(a.size());
  for (std::size_t i = 0; i < x.size(); ++i) x[i] = a[i] + p.delta * (b[i] - a[i]);
  return x;
}

TreeEmbedding embed_tree(const cubeopt::MetricTree& tree) {
  const auto& labels = tree.vertices();
  const std::size_t n = labels.size(), m = tree.edges().size();
  const std::size_t root = std::min_element(labels.begin(), labels.end()) - labels.begin();
  std::vector<Point> pos(n);
  std::vector<char> seen(n, 0);
  pos[root] = Point(m, 0.0);
  seen[root] = 1;
  std::vector<std::size_t> stack{root};
  std::vector<Cube> cubes;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (std::size_t e : tree.incident(v)) {
      const std::size_t w = tree.other(e, v);
      if (seen[w]) continue;
      seen[w] = 1;
      pos[w] = pos[v];
      pos[w][e] += 1.0;
      std::vector<int> base(pos[v].begin(), pos[v].end());
      cubes.push_back(Cube{base, {static_cast<int>(e)}});
      stack.push_back(w);
    }
  }
  return {CubicalComplex(m, cubes), pos};
}

}  // namespace fixtures
