#include "cubeopt/subgradient.hpp"

#include "cubeopt/error.hpp"

namespace cubeopt {
namespace {

constexpr double kDegenerate = 1e-11;

void require_in_cell(const Cube& cell, std::span<const double> x) {
  if (!cell.contains(x)) throw MembershipError("point not in cell " + to_string(cell));
}

}  // namespace

InitialSegment initial_segment(const CubicalComplex& complex, const GeodesicPath& path,
                               const Cube& cell) {
  if (path.segments() == 0 || path.length < kZeroSegment) {
    throw GeometryError("initial segment of a trivial geodesic");
  }
  require_in_cell(cell, path.source());
  InitialSegment s{path.breakpoints[1], path.cell_sequence[0]};
  if (!cube_intersection(cell, complex.cube(s.cell))) {
    throw GeometryError("initial cell does not meet the given cell");
  }
  return s;
}

Vec subgradient_from_geodesic(const CubicalComplex& complex, const Cube& cell,
                              const GeodesicPath& path) {
  const Point& x = path.source();
  require_in_cell(cell, x);
  Vec g(x.size(), 0.0);
  if (path.segments() == 0 || path.length < kZeroSegment) return g;

  const auto [y, q] = initial_segment(complex, path, cell);
  const Cube face = *cube_intersection(cell, complex.cube(q));
  const Point z = face.clamp(y);
  const Vec xz = sub(x, z);
  const double r = norm(xz);
  if (r <= kDegenerate) return g;

  const Vec yx = sub(y, x);
  // cos∠yxz = <y - x, z - x> / (|y - x| |z - x|)
  const double cosine = -dot(yx, xz) / (norm(yx) * r);
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (cell.is_free(static_cast<int>(i))) g[i] = cosine / r * xz[i];
  }
  return g;
}

CellSubgradient distance_subgradient(const CubicalComplex& complex, const Cube& cell,
                                     std::span<const double> x, std::span<const double> anchor) {
  complex.require_member(anchor, "anchor");
  require_in_cell(cell, x);
  const auto path = geodesic(complex, x, anchor);
  return {cell, Point(x.begin(), x.end()), Point(anchor.begin(), anchor.end()),
          subgradient_from_geodesic(complex, cell, path)};
}

std::pair<double, double> cosine_bound_check(const CubicalComplex& complex,
                                             std::span<const double> a,
                                             std::span<const double> x,
                                             std::span<const double> w) {
  const auto xa = geodesic(complex, x, a);
  const auto xw = geodesic(complex, x, w);
  if (xa.length < kZeroSegment || xw.length < kZeroSegment) {
    throw GeometryError("cosine bound needs a != x and w != x");
  }
  const double lhs = (xa.length - distance(complex, a, w)) / xw.length;
  const Vec u = sub(xa.breakpoints[1], x);
  const Vec v = sub(xw.breakpoints[1], x);
  return {lhs, dot(u, v) / (norm(u) * norm(v))};
}

}  // namespace cubeopt
