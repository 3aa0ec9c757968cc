#include "cubeopt/objective.hpp"

#include <cmath>

#include "cubeopt/error.hpp"
#include "cubeopt/geodesic.hpp"
#include "cubeopt/subgradient.hpp"

namespace cubeopt {

std::string to_string(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::power_mean: return "power_mean";
    case ObjectiveKind::circumcenter: return "circumcenter";
    case ObjectiveKind::balls: return "balls";
  }
  return "?";
}

Objective Objective::mean(std::vector<Point> anchors) {
  Objective o;
  o.anchors = std::move(anchors);
  return o;
}

Objective Objective::median(std::vector<Point> anchors) {
  Objective o;
  o.q = 1.0;
  o.anchors = std::move(anchors);
  return o;
}

Objective Objective::circumcenter(std::vector<Point> anchors) {
  Objective o;
  o.kind = ObjectiveKind::circumcenter;
  o.anchors = std::move(anchors);
  return o;
}

Objective Objective::balls(std::vector<Point> anchors, std::vector<double> radii) {
  Objective o;
  o.kind = ObjectiveKind::balls;
  o.anchors = std::move(anchors);
  o.radii = std::move(radii);
  return o;
}

void Objective::validate(const CubicalComplex& complex) const {
  if (anchors.empty()) throw InputError("objective: anchor set is empty");
  for (const auto& a : anchors) {
    if (a.size() != complex.ambient_dim()) {
      throw InputError("objective: anchor dimension " + std::to_string(a.size()) +
                       " does not match ambient dimension " +
                       std::to_string(complex.ambient_dim()));
    }
    complex.require_member(a, "anchor");
  }
  if (kind == ObjectiveKind::power_mean) {
    if (!(q >= 1.0) || !std::isfinite(q)) throw InputError("objective: q must be >= 1");
    if (!weights.empty()) {
      if (weights.size() != anchors.size()) throw InputError("objective: one weight per anchor");
      for (double w : weights) {
        if (!(w > 0.0) || !std::isfinite(w)) throw InputError("objective: weights must be positive");
      }
    }
  }
  if (kind == ObjectiveKind::balls) {
    if (radii.size() != anchors.size()) throw InputError("objective: one radius per anchor");
    for (double r : radii) {
      if (!(r > 0.0) || !std::isfinite(r)) throw InputError("objective: radii must be positive");
    }
  }
}

double value_from_distances(const Objective& obj, const std::vector<double>& d) {
  double f = 0.0;
  switch (obj.kind) {
    case ObjectiveKind::power_mean:
      for (std::size_t i = 0; i < d.size(); ++i) {
        f += obj.weight(i) * (obj.q == 2.0 ? d[i] * d[i] : obj.q == 1.0 ? d[i] : std::pow(d[i], obj.q));
      }
      break;
    case ObjectiveKind::circumcenter:
      for (double di : d) f = std::max(f, di * di);
      break;
    case ObjectiveKind::balls:
      for (std::size_t i = 0; i < d.size(); ++i) f += std::max(d[i] - obj.radii[i], 0.0);
      break;
  }
  return f;
}

double eval(const CubicalComplex& complex, const Objective& obj, std::span<const double> x) {
  complex.require_member(x);
  std::vector<double> d;
  for (const auto& a : obj.anchors) d.push_back(distance(complex, x, a));
  return value_from_distances(obj, d);
}

CellEvaluation cell_value_subgradient(const CubicalComplex& complex, const Objective& obj,
                                      const Cube& cell, std::span<const double> x) {
  if (!cell.contains(x)) throw MembershipError("point not in cell " + to_string(cell));
  const std::size_t m = obj.anchors.size();
  CellEvaluation out;
  out.subgradient.assign(x.size(), 0.0);
  std::vector<Vec> v(m);
  for (std::size_t i = 0; i < m; ++i) {
    const auto path = geodesic(complex, x, obj.anchors[i]);
    out.distances.push_back(path.length);
    v[i] = subgradient_from_geodesic(complex, cell, path);
  }
  const auto& d = out.distances;
  out.value = value_from_distances(obj, d);

  switch (obj.kind) {
    case ObjectiveKind::power_mean:
      for (std::size_t i = 0; i < m; ++i) {
        if (d[i] <= 0.0) continue;
        const double s = obj.weight(i) * obj.q * (obj.q == 1.0 ? 1.0 : std::pow(d[i], obj.q - 1.0));
        axpy(s, v[i], out.subgradient);
      }
      break;
    case ObjectiveKind::circumcenter: {
      std::size_t star = 0;
      for (std::size_t i = 1; i < m; ++i) {
        if (d[i] > d[star]) star = i;
      }
      axpy(2.0 * d[star], v[star], out.subgradient);
      break;
    }
    case ObjectiveKind::balls:
      for (std::size_t i = 0; i < m; ++i) {
        if (d[i] > obj.radii[i]) axpy(1.0, v[i], out.subgradient);
      }
      break;
  }
  return out;
}

double cell_lipschitz_bound(const Objective& obj, const Cube& cell,
                            const std::vector<double>& center_distances) {
  const double reach = 0.5 * std::sqrt(static_cast<double>(cell.dim()));
  double L = 0.0;
  switch (obj.kind) {
    case ObjectiveKind::power_mean:
      for (std::size_t i = 0; i < center_distances.size(); ++i) {
        L += obj.weight(i) * obj.q * std::pow(center_distances[i] + reach, obj.q - 1.0);
      }
      break;
    case ObjectiveKind::circumcenter:
      for (double d : center_distances) L = std::max(L, 2.0 * (d + reach));
      break;
    case ObjectiveKind::balls:
      L = static_cast<double>(center_distances.size());
      break;
  }
  return L;
}

}  // namespace cubeopt
