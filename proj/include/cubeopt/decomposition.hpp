#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "cubeopt/complex.hpp"
#include "cubeopt/objective.hpp"
#include "cubeopt/solvers.hpp"

namespace cubeopt {

struct SolveReport {
  Point minimizer;
  double value = 0.0;
  std::vector<std::size_t> visited_cells;
  std::vector<CellSolveResult> subproblem_results;
  std::size_t total_geodesics = 0;
  bool certified = false;
  /// Best value against cumulative geodesic count, starting with f(x0).
  std::vector<TracePoint> trace;
  std::vector<std::string> warnings;
};

struct MinimizeOptions {
  CellSolverOptions cell;
  /// Solve every maximal cell and keep the best (smallest index on ties).
  bool exhaustive = false;
  /// Optional ranking of cube indices; candidates with a lower rank are solved first.
  /// Empty means smallest index first.
  std::vector<std::size_t> priority;
  /// Used when cell.kind is cpp (which runs on the whole complex and is never certified).
  CppOptions cpp;
};

/// Cell-decomposition outer loop: while some maximal cell containing the incumbent
/// is unsolved, minimize f on it and move the incumbent when the cell minimum is
/// lower by more than cell.tol. The report is certified when the loop ends on its
/// own and every cell solve met its stopping rule.
SolveReport minimize(const CubicalComplex& complex, const Objective& obj,
                     std::span<const double> x0, const MinimizeOptions& opts = {});

}  // namespace cubeopt
