#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include "cubeopt/complex.hpp"
#include "cubeopt/objective.hpp"

namespace cubeopt {

/// The unit box lies in { u : <normal, u> <= offset } and the query does not.
struct Separation {
  Vec normal;
  double offset = 0.0;
};

/// f(query) and a subgradient of f on the box, in chart coordinates.
struct Cut {
  double value = 0.0;
  Vec subgradient;
};

using OracleResponse = std::variant<Separation, Cut>;

/// Coordinate hyperplane of the most violated bound of [0,1]^n, if u is outside.
std::optional<Separation> unit_box_separation(std::span<const double> u);

/// Separation/subgradient oracle for a convex function on [0,1]^n.
class CellOracle {
 public:
  virtual ~CellOracle() = default;
  virtual std::size_t dim() const = 0;
  virtual OracleResponse query(std::span<const double> u) = 0;
  /// M = f(center) + L sqrt(n)/2, an upper bound on max f - min f over the box.
  virtual double range_bound() = 0;
  /// Geodesic (distance) evaluations performed so far.
  virtual std::size_t geodesics() const { return 0; }
};

/// Restriction of an objective to one maximal cube, in that cube's chart.
class ObjectiveCellOracle final : public CellOracle {
 public:
  ObjectiveCellOracle(const CubicalComplex& complex, const Objective& obj, const Cube& cell);

  std::size_t dim() const override { return chart_.dim(); }
  OracleResponse query(std::span<const double> u) override;
  double range_bound() override;
  std::size_t geodesics() const override { return geodesics_; }

  const Chart& chart() const { return chart_; }
  double lipschitz();

 private:
  void evaluate_center();

  const CubicalComplex& complex_;
  const Objective& obj_;
  Chart chart_;
  std::size_t geodesics_ = 0;
  std::optional<Cut> center_cut_;
  double lipschitz_ = 0.0;
};

/// Oracle from a plain function with a known Lipschitz constant (tests, examples).
class FunctionOracle final : public CellOracle {
 public:
  using Fn = std::function<std::pair<double, Vec>(std::span<const double>)>;
  FunctionOracle(std::size_t n, Fn fn, double lipschitz)
      : n_(n), fn_(std::move(fn)), lipschitz_(lipschitz) {}

  std::size_t dim() const override { return n_; }
  OracleResponse query(std::span<const double> u) override;
  double range_bound() override;
  std::size_t geodesics() const override { return calls_; }

 private:
  std::size_t n_;
  Fn fn_;
  double lipschitz_;
  std::size_t calls_ = 0;
};

struct TracePoint {
  std::size_t iteration = 0;
  std::size_t geodesics = 0;
  double best_value = 0.0;
};

struct CellSolveResult {
  Point minimizer;     // ambient coordinates (filled by solve_cell and the CPP solver)
  Vec chart_minimizer; // chart coordinates for per-cell solvers
  double value = 0.0;
  std::size_t iterations = 0;
  std::size_t geodesic_count = 0;
  /// One entry per improvement of the best value.
  std::vector<TracePoint> trace;
  /// Best value after each iteration (index t-1 for iteration t).
  std::vector<double> history;
  /// M in the ellipsoid gap bound 2 sqrt(n) M exp(-t / 2n^2); 0 for other solvers.
  double gap_scale = 0.0;
  bool converged = false;
  std::size_t restarts = 0;
};

/// Certified gap bound of the ellipsoid method after t oracle calls.
double ellipsoid_gap_bound(std::size_t n, double gap_scale, std::size_t t);

struct EllipsoidOptions {
  double tol = 1e-9;
  std::size_t max_iter = 0;  // 0: 50 n^2 ln(max(n,2) 1e6)
};

std::size_t default_ellipsoid_iterations(std::size_t n);

/// Central-cut ellipsoid method on [0,1]^n starting from the ball of radius sqrt(n)/2
/// about the midpoint. Stops once the gap bound is below tol.
CellSolveResult ellipsoid_minimize(CellOracle& oracle, const EllipsoidOptions& opts = {});

struct SubgradientOptions {
  double c = 0.0;  // 0: sqrt(n)
  std::size_t max_iter = 10000;
};

/// Projected subgradient method u <- clamp(u - (c / sqrt(k)) g) from the midpoint.
CellSolveResult subgradient_minimize(CellOracle& oracle, const SubgradientOptions& opts = {});

enum class SolverKind { ellipsoid, subgradient, cpp };
SolverKind parse_solver(const std::string& name);
std::string to_string(SolverKind kind);

struct CellSolverOptions {
  SolverKind kind = SolverKind::ellipsoid;
  double tol = 1e-9;
  std::size_t max_iter = 0;  // 0: solver default
};

/// Minimizes the objective restricted to a maximal cube with a per-cell solver.
CellSolveResult solve_cell(const CubicalComplex& complex, const Objective& obj, const Cube& cell,
                           const CellSolverOptions& opts = {});

struct CppOptions {
  double c = 1.0;
  std::size_t max_cycles = 1000;
  /// Count k per proximal step instead of per cycle.
  bool per_step = false;
  /// Stop early once a whole cycle moves the iterate less than this.
  double tol = 0.0;
};

/// Cyclic proximal point for power means with q in {1, 2}: for each anchor in turn,
/// move along [x, a] (q = 2: fraction 2 mu w / (1 + 2 mu w) of d; q = 1: min(mu w, d)),
/// with mu = c / k. f is evaluated after every cycle.
CellSolveResult cyclic_proximal_point(const CubicalComplex& complex, const Objective& obj,
                                      std::span<const double> x0, const CppOptions& opts = {});

/// `geodesics,best_value` CSV, one row per improvement.
void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace);

}  // namespace cubeopt
