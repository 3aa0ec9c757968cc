#include "cubeopt/decomposition.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include "cubeopt/error.hpp"

namespace cubeopt {
namespace {

std::vector<std::size_t> ranks(const MinimizeOptions& opts, std::size_t cells) {
  std::vector<std::size_t> rank(cells);
  std::iota(rank.begin(), rank.end(), 0);
  if (opts.priority.empty()) return rank;
  std::vector<char> seen(cells, 0);
  std::fill(rank.begin(), rank.end(), std::numeric_limits<std::size_t>::max());
  for (std::size_t r = 0; r < opts.priority.size(); ++r) {
    const std::size_t c = opts.priority[r];
    if (c >= cells || seen[c]) throw InputError("priority must list distinct cube indices");
    seen[c] = 1;
    rank[c] = r;
  }
  return rank;
}

SolveReport run_cpp(const CubicalComplex& complex, const Objective& obj,
                    std::span<const double> x0, const MinimizeOptions& opts) {
  CppOptions cpp = opts.cpp;
  if (opts.cell.max_iter) cpp.max_cycles = opts.cell.max_iter;
  auto r = cyclic_proximal_point(complex, obj, x0, cpp);
  SolveReport rep;
  rep.minimizer = r.minimizer;
  rep.value = r.value;
  rep.total_geodesics = r.geodesic_count;
  rep.trace = r.trace;
  rep.subproblem_results.push_back(std::move(r));
  rep.warnings.push_back("cyclic proximal point gives no optimality certificate");
  return rep;
}

// Cell solvers stop short of the faces where minimizers often sit, which would hide the
// neighbouring cells from the outer loop. Coordinates within kSnap of a face are moved
// onto it when that costs at most tol.
constexpr double kSnap = 1e-4;

void snap_to_faces(const CubicalComplex& complex, const Objective& obj, const Cube& cell,
                   double tol, CellSolveResult& r) {
  Point p = r.minimizer;
  bool moved = false;
  for (int a : cell.axes) {
    const double near = std::round(p[a]);
    if (p[a] != near && std::abs(p[a] - near) <= kSnap) {
      p[a] = near;
      moved = true;
    }
  }
  if (!moved) return;
  const double v = eval(complex, obj, p);
  r.geodesic_count += obj.anchors.size();
  if (v > r.value + tol) return;
  r.minimizer = p;
  r.value = v;
}

}  // namespace

SolveReport minimize(const CubicalComplex& complex, const Objective& obj,
                     std::span<const double> x0, const MinimizeOptions& opts) {
  obj.validate(complex);
  complex.require_member(x0, "start point");
  if (opts.cell.kind == SolverKind::cpp) return run_cpp(complex, obj, x0, opts);

  const auto rank = ranks(opts, complex.size());
  SolveReport rep;
  rep.minimizer.assign(x0.begin(), x0.end());
  rep.value = eval(complex, obj, x0);
  rep.total_geodesics = obj.anchors.size();
  rep.trace.push_back({0, rep.total_geodesics, rep.value});
  std::vector<char> solved(complex.size(), 0);

  auto solve = [&](std::size_t p) {
    auto r = solve_cell(complex, obj, complex.cube(p), opts.cell);
    snap_to_faces(complex, obj, complex.cube(p), opts.cell.tol, r);
    solved[p] = 1;
    rep.visited_cells.push_back(p);
    for (const auto& t : r.trace) {
      if (t.best_value < rep.trace.back().best_value) {
        rep.trace.push_back({rep.trace.size(), rep.total_geodesics + t.geodesics, t.best_value});
      }
    }
    rep.total_geodesics += r.geodesic_count;
    if (!r.converged) {
      rep.warnings.push_back("cell " + std::to_string(p) + ": solver stopped at its iteration cap");
    }
    const bool better = r.value < rep.value - opts.cell.tol;
    if (better) {
      rep.minimizer = r.minimizer;
      rep.value = r.value;
    }
    rep.subproblem_results.push_back(std::move(r));
    return better;
  };

  if (opts.exhaustive) {
    std::vector<std::size_t> order(complex.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return rank[a] < rank[b]; });
    for (std::size_t p : order) solve(p);
  } else {
    for (;;) {
      std::size_t pick = complex.size();
      for (std::size_t c : cells_containing(complex, rep.minimizer)) {
        if (solved[c]) continue;
        if (pick == complex.size() || rank[c] < rank[pick]) pick = c;
      }
      if (pick == complex.size()) break;
      solve(pick);
    }
  }
  rep.certified = std::all_of(rep.subproblem_results.begin(), rep.subproblem_results.end(),
                              [](const CellSolveResult& r) { return r.converged; });
  return rep;
}

}  // namespace cubeopt
