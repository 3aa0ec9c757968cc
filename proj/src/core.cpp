#include "cubeopt/core.hpp"

#include "cubeopt/error.hpp"

namespace cubeopt {

std::optional<CoreInfo> find_core(const CubicalComplex& complex) {
  if (complex.size() == 1) return CoreInfo{complex.cube(0)};
  std::optional<Cube> core;
  for (std::size_t i = 0; i < complex.size(); ++i) {
    for (std::size_t j = i + 1; j < complex.size(); ++j) {
      auto f = cube_intersection(complex.cube(i), complex.cube(j));
      if (!f) return std::nullopt;
      if (!core) {
        core = *f;
      } else if (*core != *f) {
        return std::nullopt;
      }
    }
  }
  return CoreInfo{*core};
}

GeodesicPath core_geodesic(const CubicalComplex& complex, const CoreInfo& info,
                           std::span<const double> x, std::span<const double> y) {
  const auto xs = cells_containing(complex, x);
  const auto ys = cells_containing(complex, y);
  for (std::size_t c : xs) {
    if (complex.cube(c).contains(y)) {
      return detail::make_path({Point(x.begin(), x.end()), Point(y.begin(), y.end())}, {c});
    }
  }
  const Point xf = info.project(x);
  const Point yf = info.project(y);
  const double hx = dist(x, xf);
  const double hy = dist(y, yf);
  // No common cube means at least one of the points is off the core.
  Point z(x.size());
  for (std::size_t i = 0; i < z.size(); ++i) z[i] = (hy * xf[i] + hx * yf[i]) / (hx + hy);
  z = info.core.clamp(z);
  return detail::make_path({Point(x.begin(), x.end()), z, Point(y.begin(), y.end())},
                           {xs.front(), ys.front()});
}

bool core_certifies_cat0(const CubicalComplex& complex) { return find_core(complex).has_value(); }

}  // namespace cubeopt
