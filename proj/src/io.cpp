#include "cubeopt/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "cubeopt/error.hpp"

namespace cubeopt {
namespace {

const Json& field(const Json& j, const char* key, const std::string& what) {
  if (!j.is_object() || !j.contains(key)) {
    throw InputError(what + ": missing field '" + key + "'");
  }
  return j.at(key);
}

std::vector<int> int_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of integers");
  std::vector<int> out;
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InputError(what + ": expected integers");
    out.push_back(v.get<int>());
  }
  return out;
}

std::vector<double> real_array(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of numbers");
  std::vector<double> out;
  for (const auto& v : j) {
    if (!v.is_number()) throw InputError(what + ": expected numbers");
    out.push_back(v.get<double>());
    if (!std::isfinite(out.back())) throw InputError(what + ": non-finite number");
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text, const std::string& what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(what + ": " + e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str(), path);
}

Json to_json(const Cube& c) { return {{"base", c.base}, {"axes", c.axes}}; }

Cube cube_from_json(const Json& j, std::size_t ambient_dim) {
  Cube c{int_array(field(j, "base", "cube"), "cube base"), int_array(field(j, "axes", "cube"), "cube axes")};
  if (c.base.size() != ambient_dim) {
    throw InputError("cube base has length " + std::to_string(c.base.size()) + ", expected " +
                     std::to_string(ambient_dim));
  }
  for (std::size_t i = 0; i < c.axes.size(); ++i) {
    if (c.axes[i] < 0 || c.axes[i] >= static_cast<int>(ambient_dim)) {
      throw InputError("cube axis out of range in " + to_string(c));
    }
    if (i > 0 && c.axes[i] <= c.axes[i - 1]) {
      throw InputError("cube axes must be sorted ascending and distinct in " + to_string(c));
    }
  }
  return c;
}

Json to_json(const CubicalComplex& complex) {
  Json cubes = Json::array();
  for (const auto& c : complex.cubes()) cubes.push_back(to_json(c));
  return {{"ambient_dim", complex.ambient_dim()}, {"maximal_cubes", cubes}};
}

CubicalComplex complex_from_json(const Json& j) {
  const Json& n = field(j, "ambient_dim", "complex");
  if (!n.is_number_integer() || n.get<long>() <= 0) {
    throw InputError("complex: ambient_dim must be a positive integer");
  }
  const auto N = n.get<std::size_t>();
  const Json& list = field(j, "maximal_cubes", "complex");
  if (!list.is_array()) throw InputError("complex: maximal_cubes must be an array");
  std::vector<Cube> cubes;
  for (const auto& c : list) cubes.push_back(cube_from_json(c, N));
  return CubicalComplex(N, std::move(cubes));
}

CubicalComplex load_complex(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return complex_from_json(parse_json(ss.str(), "complex"));
}

CubicalComplex load_complex_string(const std::string& text) {
  return complex_from_json(parse_json(text, "complex"));
}

CubicalComplex load_complex_file(const std::string& path) {
  return complex_from_json(read_json_file(path));
}

Json point_to_json(std::span<const double> p) { return Json(std::vector<double>(p.begin(), p.end())); }

Point point_from_json(const Json& j, std::size_t dim, const std::string& what) {
  Point p = real_array(j, what);
  if (p.size() != dim) {
    throw InputError(what + " has " + std::to_string(p.size()) + " coordinates, expected " +
                     std::to_string(dim));
  }
  return p;
}

std::vector<Point> points_from_json(const Json& j, std::size_t dim, const std::string& what) {
  if (!j.is_array()) throw InputError(what + ": expected an array of points");
  std::vector<Point> out;
  for (const auto& p : j) out.push_back(point_from_json(p, dim, what));
  return out;
}

Json to_json(const GeodesicPath& path) {
  Json bp = Json::array();
  for (const auto& p : path.breakpoints) bp.push_back(point_to_json(p));
  return {{"length", path.length},
          {"breakpoints", bp},
          {"cell_sequence", path.cell_sequence},
          {"converged", path.converged}};
}

Json to_json(const Objective& obj) {
  Json anchors = Json::array();
  for (const auto& a : obj.anchors) anchors.push_back(point_to_json(a));
  Json j{{"kind", to_string(obj.kind)}, {"anchors", anchors}};
  if (obj.kind == ObjectiveKind::power_mean) {
    j["q"] = obj.q;
    if (!obj.weights.empty()) j["weights"] = obj.weights;
  }
  if (obj.kind == ObjectiveKind::balls) j["radii"] = obj.radii;
  return j;
}

Objective objective_from_json(const Json& j, std::size_t ambient_dim) {
  if (!j.is_object()) throw InputError("objective: expected a JSON object");
  Objective obj;
  const std::string kind = j.value("kind", std::string("power_mean"));
  if (kind == "power_mean") {
    obj.kind = ObjectiveKind::power_mean;
  } else if (kind == "circumcenter") {
    obj.kind = ObjectiveKind::circumcenter;
  } else if (kind == "balls") {
    obj.kind = ObjectiveKind::balls;
  } else {
    throw InputError("objective: unknown kind '" + kind + "'");
  }
  obj.anchors = points_from_json(field(j, "anchors", "objective"), ambient_dim, "anchor");
  if (j.contains("q")) {
    if (!j["q"].is_number()) throw InputError("objective: q must be a number");
    obj.q = j["q"].get<double>();
  }
  if (j.contains("weights")) obj.weights = real_array(j["weights"], "weights");
  if (j.contains("radii")) obj.radii = real_array(j["radii"], "radii");
  return obj;
}

Json to_json(const CellSolveResult& r) {
  Json trace = Json::array();
  for (const auto& t : r.trace) {
    trace.push_back({{"iteration", t.iteration}, {"geodesics", t.geodesics}, {"best_value", t.best_value}});
  }
  return {{"minimizer", point_to_json(r.minimizer)},
          {"value", r.value},
          {"iterations", r.iterations},
          {"geodesic_count", r.geodesic_count},
          {"converged", r.converged},
          {"trace", trace}};
}

Json to_json(const SolveReport& r) {
  Json subs = Json::array();
  for (const auto& s : r.subproblem_results) subs.push_back(to_json(s));
  return {{"minimizer", point_to_json(r.minimizer)},
          {"value", r.value},
          {"visited_cells", r.visited_cells},
          {"subproblem_results", subs},
          {"total_geodesics", r.total_geodesics},
          {"certified", r.certified},
          {"warnings", r.warnings}};
}

Json to_json(const FeasibilityResult& r) {
  return {{"status", r.feasible ? "feasible" : "infeasible"},
          {"witness", point_to_json(r.witness)},
          {"penalty_value", r.penalty_value},
          {"total_geodesics", r.report.total_geodesics}};
}

Json to_json(const BisectionResult& r) {
  return {{"lo", r.lo},
          {"hi", r.hi},
          {"steps", r.steps},
          {"witness", point_to_json(r.witness)},
          {"witness_residual", r.witness_residual}};
}

Json to_json(const TreePoint& p) {
  return {{"edge", {p.edge.first, p.edge.second}}, {"from", p.from}, {"delta", p.delta}};
}

TreePoint tree_point_from_json(const Json& j) {
  const Json& e = field(j, "edge", "tree point");
  if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
    throw InputError("tree point: edge must be a pair of labels");
  }
  const Json& from = field(j, "from", "tree point");
  const Json& delta = field(j, "delta", "tree point");
  if (!from.is_string() || !delta.is_number()) throw InputError("tree point: bad from/delta");
  return {{e[0].get<std::string>(), e[1].get<std::string>()}, from.get<std::string>(), delta.get<double>()};
}

TreeInput tree_from_json(const Json& j) {
  const Json& vs = field(j, "vertices", "tree");
  const Json& es = field(j, "edges", "tree");
  if (!vs.is_array() || !es.is_array()) throw InputError("tree: vertices and edges must be arrays");
  std::vector<std::string> vertices;
  for (const auto& v : vs) {
    if (!v.is_string()) throw InputError("tree: vertex labels must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<MetricTree::Edge> edges;
  for (const auto& e : es) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_string() || !e[1].is_string()) {
      throw InputError("tree: each edge must be a pair of labels");
    }
    edges.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  TreeInput out{MetricTree(std::move(vertices), std::move(edges)), {}};
  if (j.contains("points")) {
    for (const auto& p : j["points"]) out.points.push_back(tree_point_from_json(p));
  }
  return out;
}

}  // namespace cubeopt
