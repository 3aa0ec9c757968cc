#include "cubeopt/balls.hpp"

#include <cmath>

#include "cubeopt/error.hpp"
#include "cubeopt/geodesic.hpp"

namespace cubeopt {

Point ball_project(const CubicalComplex& complex, std::span<const double> x,
                   std::span<const double> a, double rho) {
  if (!(rho > 0.0)) throw InputError("ball radius must be positive");
  const auto path = geodesic(complex, a, x);
  if (path.length <= rho) return Point(x.begin(), x.end());
  return point_along(path, rho);
}

FeasibilityResult solve_feasibility(const CubicalComplex& complex, const std::vector<Point>& anchors,
                                    const std::vector<double>& radii, std::span<const double> x0,
                                    double tol_feas, const MinimizeOptions& opts) {
  const Objective obj = Objective::balls(anchors, radii);
  FeasibilityResult res;
  res.report = minimize(complex, obj, x0, opts);
  res.witness = res.report.minimizer;
  res.penalty_value = res.report.value;
  res.feasible = res.penalty_value <= tol_feas;
  return res;
}

BisectionResult distance_to_intersection(const CubicalComplex& complex, std::span<const double> b,
                                         const std::vector<Point>& anchors,
                                         const std::vector<double>& radii, double tol_bisect,
                                         double tol_feas, const MinimizeOptions& opts) {
  if (!(tol_bisect > 0.0)) throw InputError("bisection tolerance must be positive");
  complex.require_member(b, "query point");
  const auto base = solve_feasibility(complex, anchors, radii, b, tol_feas, opts);
  if (!base.feasible) {
    throw InfeasibleError("the balls do not intersect (penalty " +
                          std::to_string(base.penalty_value) + ")");
  }
  BisectionResult out;
  out.witness = base.witness;
  out.witness_residual = base.penalty_value;
  out.hi = distance(complex, b, base.witness);

  auto more_anchors = anchors;
  more_anchors.emplace_back(b.begin(), b.end());
  auto more_radii = radii;
  more_radii.push_back(0.0);
  const std::size_t cap =
      2 + static_cast<std::size_t>(std::ceil(std::log2(std::max(out.hi, tol_bisect) / tol_bisect)));
  while (out.hi - out.lo > tol_bisect) {
    if (out.steps >= cap) throw GeometryError("bisection did not close its bracket");
    const double mid = 0.5 * (out.lo + out.hi);
    more_radii.back() = mid;
    const auto r = solve_feasibility(complex, more_anchors, more_radii, out.witness, tol_feas, opts);
    ++out.steps;
    if (r.feasible) {
      out.hi = mid;
      out.witness = r.witness;
      out.witness_residual = r.penalty_value;
    } else {
      out.lo = mid;
    }
  }
  return out;
}

}  // namespace cubeopt
