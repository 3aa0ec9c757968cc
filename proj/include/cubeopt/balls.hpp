#pragma once

#include <cstddef>
#include <vector>

#include "cubeopt/complex.hpp"
#include "cubeopt/decomposition.hpp"

namespace cubeopt {

inline constexpr double kFeasibilityTol = 1e-7;

/// Nearest point to x in the closed ball of radius rho about a.
Point ball_project(const CubicalComplex& complex, std::span<const double> x,
                   std::span<const double> a, double rho);

struct FeasibilityResult {
  bool feasible = false;
  /// Minimizer found for sum_a max(d_a - r_a, 0).
  Point witness;
  double penalty_value = 0.0;
  SolveReport report;
};

/// Decides whether the balls B(a, r_a) intersect by minimizing the penalty from x0.
FeasibilityResult solve_feasibility(const CubicalComplex& complex, const std::vector<Point>& anchors,
                                    const std::vector<double>& radii, std::span<const double> x0,
                                    double tol_feas = kFeasibilityTol,
                                    const MinimizeOptions& opts = {});

struct BisectionResult {
  double lo = 0.0;
  double hi = 0.0;
  std::size_t steps = 0;
  /// A point of the intersection (within the feasibility slack) at distance <= hi + slack from b.
  Point witness;
  double witness_residual = 0.0;
};

/// Bracket for the distance from b to the intersection of the balls. Throws
/// InfeasibleError when the intersection is empty.
BisectionResult distance_to_intersection(const CubicalComplex& complex, std::span<const double> b,
                                         const std::vector<Point>& anchors,
                                         const std::vector<double>& radii, double tol_bisect,
                                         double tol_feas = kFeasibilityTol,
                                         const MinimizeOptions& opts = {});

}  // namespace cubeopt
