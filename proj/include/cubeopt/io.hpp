#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "cubeopt/balls.hpp"
#include "cubeopt/complex.hpp"
#include "cubeopt/decomposition.hpp"
#include "cubeopt/geodesic.hpp"
#include "cubeopt/objective.hpp"
#include "cubeopt/tree.hpp"

namespace cubeopt {

using Json = nlohmann::json;

/// Parses JSON text, mapping syntax errors to InputError.
Json parse_json(const std::string& text, const std::string& what = "input");
Json read_json_file(const std::string& path);

Json to_json(const Cube& c);
Cube cube_from_json(const Json& j, std::size_t ambient_dim);
Json to_json(const CubicalComplex& complex);
CubicalComplex complex_from_json(const Json& j);

Json point_to_json(std::span<const double> p);
Point point_from_json(const Json& j, std::size_t dim, const std::string& what = "point");
std::vector<Point> points_from_json(const Json& j, std::size_t dim, const std::string& what);

Json to_json(const GeodesicPath& path);

Json to_json(const Objective& obj);
/// Accepts {"kind", "q", "anchors", "weights", "radii"}; kind defaults to power_mean.
Objective objective_from_json(const Json& j, std::size_t ambient_dim);

Json to_json(const CellSolveResult& r);
Json to_json(const SolveReport& r);
Json to_json(const FeasibilityResult& r);
Json to_json(const BisectionResult& r);

struct TreeInput {
  MetricTree tree;
  std::vector<TreePoint> points;
};

Json to_json(const TreePoint& p);
TreePoint tree_point_from_json(const Json& j);
TreeInput tree_from_json(const Json& j);

}  // namespace cubeopt
