#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cubeopt/complex.hpp"

namespace cubeopt {

enum class ObjectiveKind { power_mean, circumcenter, balls };

std::string to_string(ObjectiveKind kind);

/// Convex objective over an anchor set A.
///   power_mean:   sum_a w_a d_a(x)^q
///   circumcenter: max_a d_a(x)^2
///   balls:        sum_a max(d_a(x) - r_a, 0)
struct Objective {
  ObjectiveKind kind = ObjectiveKind::power_mean;
  double q = 2.0;
  std::vector<Point> anchors;
  std::vector<double> weights;  // power_mean; empty means all ones
  std::vector<double> radii;    // balls

  static Objective mean(std::vector<Point> anchors);
  static Objective median(std::vector<Point> anchors);
  static Objective circumcenter(std::vector<Point> anchors);
  static Objective balls(std::vector<Point> anchors, std::vector<double> radii);

  double weight(std::size_t i) const { return weights.empty() ? 1.0 : weights[i]; }

  /// Throws InputError on malformed fields and MembershipError for anchors outside the complex.
  void validate(const CubicalComplex& complex) const;
};

/// Objective value from precomputed anchor distances.
double value_from_distances(const Objective& obj, const std::vector<double>& d);

/// f(x). Costs one geodesic per anchor.
double eval(const CubicalComplex& complex, const Objective& obj, std::span<const double> x);

struct CellEvaluation {
  double value = 0.0;
  /// Subgradient of f restricted to the cell, as an ambient vector.
  Vec subgradient;
  std::vector<double> distances;
};

/// Value and one subgradient of f restricted to `cell` at x (x must lie in the cell).
/// Costs one geodesic per anchor.
CellEvaluation cell_value_subgradient(const CubicalComplex& complex, const Objective& obj,
                                      const Cube& cell, std::span<const double> x);

/// Upper bound on the norm of any cell subgradient over the whole cell, given the
/// anchor distances at the cell center (every point is within sqrt(n)/2 of it).
double cell_lipschitz_bound(const Objective& obj, const Cube& cell,
                            const std::vector<double>& center_distances);

}  // namespace cubeopt
