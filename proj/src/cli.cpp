#include "cubeopt/cli.hpp"

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "cubeopt/balls.hpp"
#include "cubeopt/core.hpp"
#include "cubeopt/decomposition.hpp"
#include "cubeopt/error.hpp"
#include "cubeopt/io.hpp"
#include "cubeopt/subgradient.hpp"
#include "cubeopt/tree.hpp"

namespace cubeopt::cli {
namespace {

struct Config {
  std::string complex_path;
  std::string objective;
  std::string anchors;
  std::string radii;
  double q = 2.0;
  std::string solver = "ellipsoid";
  double tol = 1e-9;
  std::size_t max_iter = 0;
  std::string trace;
  unsigned seed = 42;
  bool exhaustive = false;
  std::string output;
  std::string x, y, a, b, x0, cell, tree;
  double bisect_tol = 1e-3;
  double cpp_c = 1.0;
};

// "[1, 2]" (JSON) or "1,2" / "1 2".
Point parse_point(const std::string& text, std::size_t dim, const std::string& what) {
  if (text.empty()) throw InputError("missing " + what);
  if (text.front() == '[') return point_from_json(parse_json(text, what), dim, what);
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  Point p;
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      p.push_back(std::stod(tok, &used));
      if (used != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw InputError(what + ": cannot parse '" + tok + "'");
    }
  }
  if (p.size() != dim) {
    throw InputError(what + " has " + std::to_string(p.size()) + " coordinates, expected " +
                     std::to_string(dim));
  }
  return p;
}

// Inline JSON or a file holding JSON.
Json json_arg(const std::string& text, const std::string& what) {
  if (text.empty()) throw InputError("missing " + what);
  const char c = text.front();
  if (c == '{' || c == '[') return parse_json(text, what);
  return read_json_file(text);
}

Objective load_objective(const Config& cfg, const CubicalComplex& complex) {
  const std::size_t N = complex.ambient_dim();
  const std::string& o = cfg.objective;
  Objective obj;
  if (o == "mean" || o == "median" || o == "power_mean" || o == "circumcenter" || o == "balls") {
    if (cfg.anchors.empty()) throw InputError("--objective " + o + " needs --anchors");
    auto anchors = points_from_json(json_arg(cfg.anchors, "anchors"), N, "anchor");
    if (o == "mean") obj = Objective::mean(std::move(anchors));
    if (o == "median") obj = Objective::median(std::move(anchors));
    if (o == "power_mean") {
      obj = Objective::mean(std::move(anchors));
      obj.q = cfg.q;
    }
    if (o == "circumcenter") obj = Objective::circumcenter(std::move(anchors));
    if (o == "balls") {
      if (cfg.radii.empty()) throw InputError("--objective balls needs --radii");
      const Json r = json_arg(cfg.radii, "radii");
      if (!r.is_array()) throw InputError("radii: expected an array");
      obj = Objective::balls(std::move(anchors), r.get<std::vector<double>>());
    }
  } else {
    obj = objective_from_json(json_arg(o, "objective"), N);
  }
  obj.validate(complex);
  return obj;
}

Cube load_cell(const std::string& text, const CubicalComplex& complex) {
  if (text.empty()) throw InputError("missing --cell");
  if (std::all_of(text.begin(), text.end(), ::isdigit)) {
    const std::size_t i = std::stoul(text);
    if (i >= complex.size()) throw InputError("--cell index out of range");
    return complex.cube(i);
  }
  const Cube c = cube_from_json(json_arg(text, "cell"), complex.ambient_dim());
  for (const auto& m : complex.cubes()) {
    if (m.contains(c)) return c;
  }
  throw InputError("--cell " + to_string(c) + " is not a cube of the complex");
}

class Session {
 public:
  Session(const Config& cfg, std::ostream& out, std::ostream& err) : cfg_(cfg), out_(out), err_(err) {}

  const CubicalComplex& complex() {
    if (!complex_) {
      if (cfg_.complex_path.empty()) throw InputError("missing --complex");
      complex_ = load_complex_file(cfg_.complex_path);
      for (const auto& w : complex_->warnings()) err_ << "warning: " << w << '\n';
    }
    return *complex_;
  }

  void emit(const Json& j) {
    if (cfg_.output.empty()) {
      out_ << j.dump(2) << '\n';
      return;
    }
    std::ofstream f(cfg_.output);
    if (!f) throw InputError("cannot write '" + cfg_.output + "'");
    f << j.dump(2) << '\n';
  }

  void write_trace(const std::string& path, const std::vector<TracePoint>& trace) {
    std::ofstream f(path);
    if (!f) throw InputError("cannot write '" + path + "'");
    write_trace_csv(f, trace);
  }

  MinimizeOptions minimize_options() const {
    MinimizeOptions m;
    m.cell.kind = parse_solver(cfg_.solver);
    m.cell.tol = cfg_.tol;
    m.cell.max_iter = cfg_.max_iter;
    m.exhaustive = cfg_.exhaustive;
    m.cpp.c = cfg_.cpp_c;
    return m;
  }

  void warn_if_not_cat0() {
    const auto& c = complex();
    if (!check_link_condition(c).ok) {
      err_ << "warning: the complex fails the link condition; results assume CAT(0)\n";
    } else if (check_simply_connected(c) != Tristate::yes) {
      err_ << "warning: simple connectivity not established; results assume CAT(0)\n";
    }
  }

  int validate() {
    const auto& c = complex();
    const auto link = check_link_condition(c);
    const auto sc = check_simply_connected(c);
    const auto core = find_core(c);
    Json j{{"maximal_cubes", c.size()},
           {"dimension", c.dim()},
           {"euler_characteristic", euler_characteristic(c)},
           {"link_condition", link.ok},
           {"simply_connected", to_string(sc)},
           {"core", core ? to_json(core->core) : Json(nullptr)},
           {"warnings", c.warnings()}};
    if (link.violation) {
      j["link_violation"] = {{"vertex", link.violation->vertex}, {"edges", link.violation->edges}};
      err_ << "link condition fails at vertex " << point_to_json(Point(link.violation->vertex.begin(), link.violation->vertex.end())).dump() << '\n';
    }
    const Tristate cat0 = !link.ok || sc == Tristate::no ? Tristate::no : sc;
    j["cat0"] = to_string(cat0);
    emit(j);
    if (cat0 == Tristate::unknown) err_ << "warning: could not decide simple connectivity\n";
    return cat0 == Tristate::no ? kFailed : kOk;
  }

  int dist() {
    const auto& c = complex();
    const auto x = parse_point(cfg_.x, c.ambient_dim(), "--x");
    const auto y = parse_point(cfg_.y, c.ambient_dim(), "--y");
    const auto path = geodesic(c, x, y);
    Json bp = Json::array();
    for (const auto& p : path.breakpoints) bp.push_back(point_to_json(p));
    emit({{"length", path.length}, {"breakpoints", bp}});
    return kOk;
  }

  int geodesic_cmd() {
    const auto& c = complex();
    const auto x = parse_point(cfg_.x, c.ambient_dim(), "--x");
    const auto y = parse_point(cfg_.y, c.ambient_dim(), "--y");
    const auto path = geodesic(c, x, y);
    if (!path.converged) err_ << "warning: geodesic solver hit its iteration cap\n";
    emit(to_json(path));
    return kOk;
  }

  int subgrad() {
    const auto& c = complex();
    const Cube cell = load_cell(cfg_.cell, c);
    const auto x = parse_point(cfg_.x, c.ambient_dim(), "--x");
    const auto a = parse_point(cfg_.a, c.ambient_dim(), "--a");
    emit(point_to_json(distance_subgradient(c, cell, x, a).vector));
    return kOk;
  }

  int solve() {
    const auto& c = complex();
    warn_if_not_cat0();
    const auto obj = load_objective(cfg_, c);
    const auto x0 = cfg_.x0.empty() ? obj.anchors.front() : parse_point(cfg_.x0, c.ambient_dim(), "--x0");
    const auto rep = minimize(c, obj, x0, minimize_options());
    for (const auto& w : rep.warnings) err_ << "warning: " << w << '\n';
    if (!cfg_.trace.empty()) write_trace(cfg_.trace, rep.trace);
    emit(to_json(rep));
    return rep.certified ? kOk : kFailed;
  }

  int compare() {
    const auto& c = complex();
    const auto obj = load_objective(cfg_, c);
    const Cube cell = load_cell(cfg_.cell.empty() ? "0" : cfg_.cell, c);
    const auto x0 = cfg_.x0.empty() ? cell.center() : parse_point(cfg_.x0, c.ambient_dim(), "--x0");
    Json j;
    auto report = [&](const std::string& name, const CellSolveResult& r) {
      j[name] = {{"minimizer", point_to_json(r.minimizer)},
                 {"value", r.value},
                 {"geodesics", r.geodesic_count},
                 {"iterations", r.iterations}};
      if (!cfg_.trace.empty()) write_trace(cfg_.trace + "_" + name + ".csv", r.trace);
    };
    report("ellipsoid", solve_cell(c, obj, cell, {SolverKind::ellipsoid, cfg_.tol, cfg_.max_iter}));
    report("subgrad", solve_cell(c, obj, cell, {SolverKind::subgradient, cfg_.tol, cfg_.max_iter}));
    if (obj.kind == ObjectiveKind::power_mean && (obj.q == 1.0 || obj.q == 2.0)) {
      CppOptions o;
      o.c = cfg_.cpp_c;
      if (cfg_.max_iter) o.max_cycles = cfg_.max_iter;
      report("cpp", cyclic_proximal_point(c, obj, x0, o));
    }
    emit(j);
    return kOk;
  }

  int tree_mean_cmd() {
    if (cfg_.tree.empty()) throw InputError("missing --tree");
    const auto in = tree_from_json(json_arg(cfg_.tree, "tree"));
    const auto r = tree_mean(in.tree, in.points);
    double value = 0.0;
    for (const auto& p : in.points) {
      const double d = tree_distance(in.tree, p, r.mean);
      value += d * d;
    }
    const auto v = vertex_of(in.tree, r.mean);
    Json edges = Json::array();
    for (std::size_t e : r.visited_edges) {
      edges.push_back({in.tree.edges()[e].first, in.tree.edges()[e].second});
    }
    emit({{"mean", to_json(r.mean)},
          {"vertex", v ? Json(*v) : Json(nullptr)},
          {"value", value},
          {"visited_edges", edges}});
    return kOk;
  }

  int balls() {
    const auto& c = complex();
    const auto obj = balls_objective();
    const auto x0 = cfg_.x0.empty() ? obj.anchors.front() : parse_point(cfg_.x0, c.ambient_dim(), "--x0");
    const auto r = solve_feasibility(c, obj.anchors, obj.radii, x0, kFeasibilityTol, minimize_options());
    emit(to_json(r));
    return r.feasible ? kOk : kFailed;
  }

  int ball_dist() {
    const auto& c = complex();
    const auto obj = balls_objective();
    const auto b = parse_point(cfg_.b, c.ambient_dim(), "--b");
    try {
      const auto r = distance_to_intersection(c, b, obj.anchors, obj.radii, cfg_.bisect_tol,
                                              kFeasibilityTol, minimize_options());
      emit(to_json(r));
      return kOk;
    } catch (const InfeasibleError& e) {
      emit({{"status", "infeasible"}});
      err_ << "error: " << e.what() << '\n';
      return kFailed;
    }
  }

  int core() {
    const auto& c = complex();
    const auto core = find_core(c);
    emit({{"core", core ? to_json(core->core) : Json(nullptr)}, {"cat0_certified", core.has_value()}});
    return kOk;
  }

 private:
  Objective balls_objective() {
    auto obj = load_objective(cfg_, complex());
    if (obj.kind != ObjectiveKind::balls) throw InputError("this command needs a balls objective");
    return obj;
  }

  const Config& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  std::optional<CubicalComplex> complex_;
};

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Config cfg;
  CLI::App app{"Convex optimization on CAT(0) cubical complexes", "cubeopt"};
  app.require_subcommand(1);
  app.option_defaults()->always_capture_default();

  auto common = [&](CLI::App* sub) {
    sub->add_option("--complex", cfg.complex_path, "Complex JSON file")->required();
    sub->add_option("--output", cfg.output, "Write JSON here instead of stdout");
    sub->add_option("--seed", cfg.seed, "Seed for randomized steps");
  };
  auto objective = [&](CLI::App* sub) {
    sub->add_option("--objective", cfg.objective,
                    "Objective JSON (file or inline) or one of mean, median, power_mean, "
                    "circumcenter, balls")
        ->required();
    sub->add_option("--anchors", cfg.anchors, "Anchor points (JSON array, inline or file) for shorthands");
    sub->add_option("--q", cfg.q, "Exponent for --objective power_mean");
    sub->add_option("--radii", cfg.radii, "Radii (JSON array) for --objective balls");
  };
  auto solver = [&](CLI::App* sub) {
    sub->add_option("--solver", cfg.solver, "ellipsoid, subgrad or cpp")
        ->check(CLI::IsMember({"ellipsoid", "subgrad", "cpp"}));
    sub->add_option("--tol", cfg.tol, "Cell solver tolerance");
    sub->add_option("--max-iter", cfg.max_iter, "Iteration cap (0: solver default)");
    sub->add_option("--cpp-step", cfg.cpp_c, "Step constant c of cyclic proximal point (mu_k = c/k)");
    sub->add_option("--x0", cfg.x0, "Start point (default: first anchor)");
    sub->add_flag("--exhaustive", cfg.exhaustive, "Solve every maximal cell");
  };

  auto* validate = app.add_subcommand("validate", "Check the link condition, simple connectivity and core");
  common(validate);
  auto* dist = app.add_subcommand("dist", "Intrinsic distance between --x and --y");
  common(dist);
  auto* geo = app.add_subcommand("geodesic", "Geodesic polyline between --x and --y");
  common(geo);
  for (auto* s : {dist, geo}) {
    s->add_option("--x", cfg.x, "Source point, e.g. [0.5,0] or 0.5,0")->required();
    s->add_option("--y", cfg.y, "Target point")->required();
  }
  auto* sub = app.add_subcommand("subgrad", "Subgradient of d_a restricted to --cell at --x");
  common(sub);
  sub->add_option("--cell", cfg.cell, "Cube index or {\"base\":[..],\"axes\":[..]}")->required();
  sub->add_option("--x", cfg.x, "Point in the cell")->required();
  sub->add_option("--a", cfg.a, "Anchor")->required();
  auto* solve = app.add_subcommand("solve", "Minimize an objective with the cell-decomposition loop");
  common(solve);
  objective(solve);
  solver(solve);
  solve->add_option("--trace", cfg.trace, "Write a geodesics,best_value CSV");
  auto* compare = app.add_subcommand("compare", "Run ellipsoid, subgrad and cpp on one cell");
  common(compare);
  objective(compare);
  solver(compare);
  compare->add_option("--cell", cfg.cell, "Cube index or JSON cube (default 0)");
  compare->add_option("--trace", cfg.trace, "Trace prefix; writes <prefix>_<solver>.csv");
  auto* tree = app.add_subcommand("tree-mean", "Exact mean on a metric tree");
  tree->add_option("--tree", cfg.tree, "Tree JSON with points")->required();
  tree->add_option("--output", cfg.output, "Write JSON here instead of stdout");
  auto* balls = app.add_subcommand("balls", "Do the balls intersect?");
  common(balls);
  objective(balls);
  solver(balls);
  auto* bdist = app.add_subcommand("ball-dist", "Bracket the distance from --b to the intersection of balls");
  common(bdist);
  objective(bdist);
  solver(bdist);
  bdist->add_option("--b", cfg.b, "Query point")->required();
  bdist->add_option("--bisect-tol", cfg.bisect_tol, "Target bracket width");
  auto* core = app.add_subcommand("core", "Find a core and report whether it certifies CAT(0)");
  common(core);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kInputError;
  }

  Session session(cfg, out, err);
  try {
    if (*validate) return session.validate();
    if (*dist) return session.dist();
    if (*geo) return session.geodesic_cmd();
    if (*sub) return session.subgrad();
    if (*solve) return session.solve();
    if (*compare) return session.compare();
    if (*tree) return session.tree_mean_cmd();
    if (*balls) return session.balls();
    if (*bdist) return session.ball_dist();
    if (*core) return session.core();
  } catch (const InfeasibleError& e) {
    err << "error: " << e.what() << '\n';
    return kFailed;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
  return kInputError;
}

}  // namespace cubeopt::cli
