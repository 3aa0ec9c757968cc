#pragma once

#include <cstddef>
#include <utility>

#include "cubeopt/complex.hpp"
#include "cubeopt/geodesic.hpp"

namespace cubeopt {

/// A Euclidean subgradient at x of the distance to `anchor`, restricted to `cell`.
struct CellSubgradient {
  Cube cell;
  Point base_point;
  Point anchor;
  /// Ambient vector, zero off the cell's free axes.
  Vec vector;
};

struct InitialSegment {
  Point end;          // y: first breakpoint after x
  std::size_t cell;   // Q: cube holding [x, y]
};

/// First nontrivial segment of `path` and its cube. The path source must lie in `cell`.
InitialSegment initial_segment(const CubicalComplex& complex, const GeodesicPath& path,
                               const Cube& cell);

/// Subgradient of d_a restricted to P at x, read off an already computed geodesic [x, a]:
/// with y, Q the initial segment, F = P ∩ Q and z the nearest point of F to y,
/// g = cos(∠yxz) / |x - z| * (x - z), and g = 0 when x = a or z = x.
Vec subgradient_from_geodesic(const CubicalComplex& complex, const Cube& cell,
                              const GeodesicPath& path);

CellSubgradient distance_subgradient(const CubicalComplex& complex, const Cube& cell,
                                     std::span<const double> x, std::span<const double> anchor);

/// ((d(a,x) - d(a,w)) / d(x,w), cos∠axw). The angle is taken between the initial
/// segments of [x,a] and [x,w], which is the Euclidean angle when they share a cube.
std::pair<double, double> cosine_bound_check(const CubicalComplex& complex,
                                             std::span<const double> a,
                                             std::span<const double> x,
                                             std::span<const double> w);

}  // namespace cubeopt
