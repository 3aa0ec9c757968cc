#pragma once

#include <optional>
#include <vector>

#include "cubeopt/complex.hpp"
#include "cubeopt/geodesic.hpp"

namespace cubeopt {

/// A face shared by every maximal cell, equal to the intersection of each pair.
struct CoreInfo {
  Cube core;

  /// Orthogonal projection onto the core from inside any maximal cell (a clamp,
  /// since the core is an axis-aligned face of every cell).
  Point project(std::span<const double> p) const { return core.clamp(p); }
};

std::optional<CoreInfo> find_core(const CubicalComplex& complex);

/// Two-segment geodesic through the spine point
/// z = (|y - y_F| x_F + |x - x_F| y_F) / (|x - x_F| + |y - y_F|).
/// Points sharing a cube are joined by a straight segment.
GeodesicPath core_geodesic(const CubicalComplex& complex, const CoreInfo& info,
                           std::span<const double> x, std::span<const double> y);

bool core_certifies_cat0(const CubicalComplex& complex);

}  // namespace cubeopt
