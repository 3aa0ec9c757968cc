#include "cubeopt/geodesic.hpp"

#include <functional>
#include <limits>
#include <map>
#include <queue>

#include "cubeopt/core.hpp"
#include "cubeopt/error.hpp"

namespace cubeopt {

namespace detail {

GeodesicPath make_path(std::vector<Point> points, std::vector<std::size_t> cells) {
  GeodesicPath path;
  path.breakpoints.push_back(points.front());
  for (std::size_t k = 0; k < cells.size(); ++k) {
    if (dist(path.breakpoints.back(), points[k + 1]) < kZeroSegment) {
      // The target is kept exactly; earlier coincident points collapse onto their predecessor.
      if (k + 1 == cells.size() && path.breakpoints.size() > 1) path.breakpoints.back() = points[k + 1];
      continue;
    }
    path.breakpoints.push_back(points[k + 1]);
    path.cell_sequence.push_back(cells[k]);
  }
  if (path.cell_sequence.empty() && points.front() != points.back()) {
    path.breakpoints.push_back(points.back());
    path.cell_sequence.push_back(cells.front());
  }
  for (std::size_t k = 0; k < path.cell_sequence.size(); ++k) {
    path.length += dist(path.breakpoints[k], path.breakpoints[k + 1]);
  }
  return path;
}

}  // namespace detail

namespace {

constexpr double kTieWindow = 1e-9;

std::vector<std::vector<int>> endpoints_of(const Cube& c) {
  if (c.axes.empty()) return {c.base};
  auto hi = c.base;
  hi[c.axes.front()] += 1;
  return {c.base, hi};
}

Point as_point(const std::vector<int>& v) { return Point(v.begin(), v.end()); }

// Metric-graph shortest path for complexes made of edges and vertices.
GeodesicPath graph_geodesic(const CubicalComplex& complex, std::span<const double> x,
                            std::span<const double> y, const std::vector<std::size_t>& xs,
                            const std::vector<std::size_t>& ys) {
  std::map<std::vector<int>, std::size_t> id;
  std::vector<std::vector<int>> verts;
  auto vid = [&](const std::vector<int>& v) {
    auto [it, inserted] = id.emplace(v, verts.size());
    if (inserted) verts.push_back(v);
    return it->second;
  };
  struct Arc {
    std::size_t to, cube;
  };
  std::vector<std::vector<Arc>> arcs;
  for (std::size_t c = 0; c < complex.size(); ++c) {
    const auto ends = endpoints_of(complex.cube(c));
    std::vector<std::size_t> ids;
    for (const auto& e : ends) ids.push_back(vid(e));
    arcs.resize(verts.size());
    if (ids.size() == 2) {
      arcs[ids[0]].push_back({ids[1], c});
      arcs[ids[1]].push_back({ids[0], c});
    }
  }
  const std::size_t nv = verts.size();
  constexpr double inf = std::numeric_limits<double>::infinity();
  constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<double> d(nv, inf);
  std::vector<std::size_t> pred(nv, none), pred_cube(nv, none);
  using Item = std::pair<double, std::size_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (std::size_t c : xs) {
    for (const auto& e : endpoints_of(complex.cube(c))) {
      const std::size_t v = id.at(e);
      const double dv = dist(x, as_point(e));
      if (dv < d[v]) {
        d[v] = dv;
        pred_cube[v] = c;
        pq.push({dv, v});
      }
    }
  }
  while (!pq.empty()) {
    auto [dv, v] = pq.top();
    pq.pop();
    if (dv > d[v]) continue;
    for (const auto& a : arcs[v]) {
      if (d[v] + 1.0 < d[a.to]) {
        d[a.to] = d[v] + 1.0;
        pred[a.to] = v;
        pred_cube[a.to] = a.cube;
        pq.push({d[a.to], a.to});
      }
    }
  }
  double best = inf;
  std::size_t best_v = none, best_c = none;
  for (std::size_t c : ys) {
    for (const auto& e : endpoints_of(complex.cube(c))) {
      const std::size_t v = id.at(e);
      const double total = d[v] + dist(as_point(e), y);
      if (total < best) {
        best = total;
        best_v = v;
        best_c = c;
      }
    }
  }
  std::vector<Point> pts{Point(y.begin(), y.end())};
  std::vector<std::size_t> cells{best_c};
  for (std::size_t v = best_v; v != none; v = pred[v]) {
    pts.push_back(as_point(verts[v]));
    cells.push_back(pred_cube[v]);
  }
  pts.emplace_back(x.begin(), x.end());
  std::reverse(pts.begin(), pts.end());
  std::reverse(cells.begin(), cells.end());
  return detail::make_path(std::move(pts), std::move(cells));
}

GeodesicPath enumerate_geodesic(const CubicalComplex& complex, std::span<const double> x,
                                std::span<const double> y, const std::vector<std::size_t>& xs) {
  if (complex.size() > kMaxEnumeratedCubes) {
    throw GeometryError("geodesic: complex has " + std::to_string(complex.size()) +
                        " maximal cubes and no core; enumeration supports at most " +
                        std::to_string(kMaxEnumeratedCubes));
  }
  const double straight = dist(x, y);
  double best = std::numeric_limits<double>::infinity();
  std::vector<GeodesicPath> found;

  std::vector<std::size_t> seq;
  std::vector<char> on_path(complex.size(), 0);
  Cube last_face;
  std::function<void(double)> dfs = [&](double chain) {
    const std::size_t last = seq.back();
    if (complex.cube(last).contains(y)) {
      const auto rb = rubber_band(complex, seq, x, y);
      if (rb.length <= best + kTieWindow) {
        auto p = detail::make_path(rb.polyline, rb.cells);
        p.converged = rb.converged;
        best = std::min(best, p.length);
        found.push_back(std::move(p));
      }
      return;
    }
    for (std::size_t nb : complex.neighbors(last)) {
      if (on_path[nb] || complex.cube(nb).contains(x)) continue;
      const Cube face = *cube_intersection(complex.cube(last), complex.cube(nb));
      const double step = seq.size() == 1 ? face.distance_to(x) : face.distance_to(last_face);
      const double lb = std::max(straight, chain + step + face.distance_to(y));
      if (lb > best + kTieWindow) continue;
      const Cube saved = last_face;
      last_face = face;
      seq.push_back(nb);
      on_path[nb] = 1;
      dfs(chain + step);
      on_path[nb] = 0;
      seq.pop_back();
      last_face = saved;
    }
  };
  for (std::size_t s : xs) {
    seq = {s};
    on_path[s] = 1;
    dfs(0.0);
    on_path[s] = 0;
  }
  if (found.empty()) throw GeometryError("geodesic: no cube path joins the points");

  const GeodesicPath* pick = nullptr;
  for (const auto& p : found) {
    if (p.length > best + kTieWindow) continue;
    if (!pick || p.cell_sequence < pick->cell_sequence) pick = &p;
  }
  return *pick;
}

}  // namespace

GeodesicPath geodesic(const CubicalComplex& complex, std::span<const double> x,
                      std::span<const double> y) {
  complex.require_member(x, "geodesic source");
  complex.require_member(y, "geodesic target");
  const auto xs = cells_containing(complex, x);
  const auto ys = cells_containing(complex, y);
  for (std::size_t c : xs) {
    if (complex.cube(c).contains(y)) {
      return detail::make_path({Point(x.begin(), x.end()), Point(y.begin(), y.end())}, {c});
    }
  }
  if (auto core = find_core(complex)) return core_geodesic(complex, *core, x, y);
  if (complex.dim() <= 1) return graph_geodesic(complex, x, y, xs, ys);
  return enumerate_geodesic(complex, x, y, xs);
}

double distance(const CubicalComplex& complex, std::span<const double> x,
                std::span<const double> y) {
  return geodesic(complex, x, y).length;
}

Point point_along(const GeodesicPath& path, double t) {
  const double slack = 1e-12 * (1.0 + path.length);
  if (t < -slack || t > path.length + slack) {
    throw std::out_of_range("point_along: arclength outside [0, length]");
  }
  double rest = std::clamp(t, 0.0, path.length);
  for (std::size_t k = 0; k < path.segments(); ++k) {
    const auto& a = path.breakpoints[k];
    const auto& b = path.breakpoints[k + 1];
    const double len = dist(a, b);
    if (rest <= len || k + 1 == path.segments()) {
      return lerp(a, b, len > 0.0 ? std::min(rest / len, 1.0) : 0.0);
    }
    rest -= len;
  }
  return path.breakpoints.front();
}

}  // namespace cubeopt
