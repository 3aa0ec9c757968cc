#pragma once

#include <cstddef>
#include <vector>

#include "cubeopt/complex.hpp"

namespace cubeopt {

/// Segments shorter than this are dropped from reported paths.
inline constexpr double kZeroSegment = 1e-11;

/// Polyline realization of a geodesic. Segment k joins breakpoints[k] and
/// breakpoints[k+1] inside maximal cube cell_sequence[k].
struct GeodesicPath {
  std::vector<Point> breakpoints;
  std::vector<std::size_t> cell_sequence;
  double length = 0.0;
  /// False when an inner solve hit its iteration cap; the path is the best found.
  bool converged = true;

  const Point& source() const { return breakpoints.front(); }
  const Point& target() const { return breakpoints.back(); }
  std::size_t segments() const { return cell_sequence.size(); }
};

struct RubberBandOptions {
  double tol = 1e-10;
  std::size_t max_iter = 100000;
};

struct RubberBandResult {
  double length = 0.0;
  /// Breakpoints p_1..p_m (one per consecutive pair of cubes); coincident points
  /// mark cubes the optimal path does not need.
  std::vector<Point> breakpoints;
  /// The same optimum with unneeded cubes removed: polyline[k], polyline[k+1]
  /// lie in cube cells[k]; polyline runs from x to y.
  std::vector<std::size_t> cells;
  std::vector<Point> polyline;
  std::size_t iterations = 0;
  bool converged = true;
};

/// Shortest polyline from x to y that passes through the cubes of `sequence` in
/// order, with the k-th breakpoint in the common face of cubes k and k+1.
RubberBandResult rubber_band(const CubicalComplex& complex, const std::vector<std::size_t>& sequence,
                             std::span<const double> x, std::span<const double> y,
                             const RubberBandOptions& opts = {});

/// The geodesic from x to y. Uses a straight segment when one cube holds both
/// points, the core closed form when the complex has a core, a vertex-graph
/// search for 1-dimensional complexes, and otherwise the shortest rubber band
/// over simple cube paths (at most kMaxEnumeratedCubes maximal cubes).
GeodesicPath geodesic(const CubicalComplex& complex, std::span<const double> x,
                      std::span<const double> y);

double distance(const CubicalComplex& complex, std::span<const double> x,
                std::span<const double> y);

/// Arclength parameterization: point_along(p, 0) = source, point_along(p, length) = target.
Point point_along(const GeodesicPath& path, double t);

inline constexpr std::size_t kMaxEnumeratedCubes = 12;

namespace detail {

/// Builds a path from raw polyline points and their segment cubes, dropping
/// segments shorter than kZeroSegment.
GeodesicPath make_path(std::vector<Point> points, std::vector<std::size_t> cells);

}  // namespace detail

}  // namespace cubeopt
