// One PASS/FAIL line per acceptance criterion. Exits nonzero if any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "cubeopt/balls.hpp"
#include "cubeopt/decomposition.hpp"
#include "cubeopt/error.hpp"
#include "cubeopt/geodesic.hpp"
#include "cubeopt/subgradient.hpp"
#include "cubeopt/tree.hpp"
#include "fixtures.hpp"
#include "grid_oracle.hpp"

using namespace cubeopt;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << " [" << why << "]";
    }
  }
};

using Clock = std::chrono::steady_clock;
double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

int failures = 0;

void report(int id, const std::string& name, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  if (!o.pass) ++failures;
  std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << id << " (" << name << "):" << o.detail.str()
            << std::endl;
}

// Minimum of the objective on a cube: the better of a chart grid and a tight ellipsoid run.
double reference_cell_min(const CubicalComplex& k, const Objective& obj, const Cube& cell) {
  const auto ch = chart_of(cell);
  const std::size_t n = ch.dim();
  const int steps = n == 1 ? 2000 : 100;
  double best = std::numeric_limits<double>::infinity();
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<double>(idx[i]) / steps;
    best = std::min(best, eval(k, obj, ch.embed(u)));
    std::size_t i = 0;
    while (i < n && ++idx[i] > steps) idx[i++] = 0;
    if (i == n) break;
  }
  return std::min(best, solve_cell(k, obj, cell, {SolverKind::ellipsoid, 1e-13, 0}).value);
}

// Worst violation of history[t-1] - fmin <= bound(t) + tol over a cell solve.
double certificate_excess(const CellSolveResult& r, std::size_t n, double fmin, double tol) {
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t t = 1; t <= r.history.size(); ++t) {
    worst = std::max(worst, r.history[t - 1] - fmin - ellipsoid_gap_bound(n, r.gap_scale, t) - tol);
  }
  return worst;
}

// Geodesic count at which a trace first reaches best_value <= target; 0 if never.
std::size_t geodesics_to_reach(const std::vector<TracePoint>& trace, double target) {
  for (const auto& p : trace) {
    if (p.best_value <= target) return p.geodesics;
  }
  return 0;
}

bool nonincreasing(const std::vector<TracePoint>& trace) {
  for (std::size_t i = 1; i < trace.size(); ++i) {
    if (trace[i].best_value > trace[i - 1].best_value || trace[i].geodesics < trace[i - 1].geodesics) return false;
  }
  return true;
}

const std::vector<Point> kBookAnchors{{0.5, 0, 0.2}, {0, 0.5, 0.5}, {-0.5, 0, 0.7}};

MetricTree spider_tree() {
  return MetricTree({"c", "l1", "l2", "l3"}, {{"c", "l1"}, {"c", "l2"}, {"c", "l3"}});
}

}  // namespace

int main() {
  const auto L = fixtures::l_complex();
  const auto l_obj = Objective::mean(fixtures::l_anchors());
  const double alpha = fixtures::kAlpha;
  SolveReport l_report;
  SolveReport book_report;

  report(1, "exact mean on the L-complex", [&](Outcome& o) {
    const auto t0 = Clock::now();
    l_report = minimize(L, l_obj, l_obj.anchors.front());
    const double secs = seconds_since(t0);
    const auto& x = l_report.minimizer;
    const double err = std::max(std::abs(x[0] + alpha), std::abs(x[1] - alpha));
    const double origin = eval(L, l_obj, Point{0, 0});
    o.detail << " x=(" << x[0] << ", " << x[1] << ") err=" << err << " f=" << l_report.value
             << " f(origin)=" << origin << " time=" << secs << "s";
    o.require(err <= 1e-5, "coordinate error");
    o.require(l_report.value < origin && std::abs(origin - 3) < 1e-12, "value not below 3");
    o.require(secs < 5, "runtime");
  });

  report(2, "worked subgradient example", [&](Outcome& o) {
    const auto k = fixtures::pqst();
    const auto g = distance_subgradient(k, k.cube(0), Point{0.5, 0}, Point{-0.5, -2}).vector;
    const double err = std::max(std::abs(g[0] - 1 / std::sqrt(5.0)), std::abs(g[1]));
    o.detail << " g=(" << g[0] << ", " << g[1] << ") err=" << err;
    o.require(err <= 1e-8, "subgradient mismatch");
  });

  report(3, "nearest point on F", [&](Outcome& o) {
    const Cube F{{0, 0, 0}, {1}};
    const Point z = F.clamp(Point{-1, 2.0 / 3.0, 0});
    o.detail << " z=(" << z[0] << ", " << z[1] << ", " << z[2] << ")";
    o.require(z == Point{0, 2.0 / 3.0, 0}, "clamp is not exact");
  });

  report(4, "spider stickiness", [&](Outcome& o) {
    const auto tree = spider_tree();
    auto mean_at_center = [&](const std::vector<double>& deltas) {
      std::vector<TreePoint> pts;
      for (int i = 0; i < 3; ++i) pts.push_back({{"c", "l" + std::to_string(i + 1)}, "c", deltas[i]});
      const auto v = vertex_of(tree, tree_mean(tree, pts).mean);
      return v && *v == "c";
    };
    o.require(mean_at_center({0.5, 0.5, 0.5}), "unperturbed mean off center");
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> eps(-0.04, 0.04);
    int stuck = 0;
    for (int i = 0; i < 100; ++i) stuck += mean_at_center({0.5 + eps(rng), 0.5 + eps(rng), 0.5 + eps(rng)});
    o.detail << " perturbed instances at the center: " << stuck << "/100";
    o.require(stuck == 100, "perturbation moved the mean");
  });

  report(5, "open book spine mean", [&](Outcome& o) {
    const auto k = fixtures::open_book();
    book_report = minimize(k, Objective::mean(kBookAnchors), kBookAnchors.front());
    const auto& x = book_report.minimizer;
    const double err = std::max({std::abs(x[0]), std::abs(x[1]), std::abs(x[2] - 1.4 / 3)});
    o.detail << " x=(" << x[0] << ", " << x[1] << ", " << x[2] << ") err=" << err;
    o.require(err <= 1e-5, "not the spine mean");
  });

  report(6, "geodesics against the grid oracle", [&](Outcome& o) {
    const auto t0 = Clock::now();
    const double h = 1.0 / 64;
    const double diag = distance(L, Point{-1, 1}, Point{1, -1});
    o.require(std::abs(diag - 2 * std::sqrt(2.0)) <= 1e-6, "d((-1,1),(1,-1)) != 2 sqrt 2");
    std::mt19937_64 rng(6);
    std::vector<CubicalComplex> ks{L};
    for (int i = 0; i < 20; ++i) ks.push_back(fixtures::random_planar(rng, 8));
    double worst = 0.0;
    int pairs = 0;
    for (const auto& k : ks) {
      const fixtures::GridOracle grid(k, 64);
      for (int i = 0; i < 50; ++i) {
        const auto x = fixtures::random_point(k, rng);
        const auto y = fixtures::random_point(k, rng);
        const double d = distance(k, x, y);
        const double g = grid.distance(x, y);
        worst = std::max(worst, std::abs(d - g));
        // The grid overestimates; it can never beat the true geodesic.
        o.require(g >= d - 1e-9, "grid shorter than geodesic");
        ++pairs;
      }
    }
    const double secs = seconds_since(t0);
    o.detail << " complexes=" << ks.size() << " pairs=" << pairs << " worst |d - grid|=" << worst
             << " (2h=" << 2 * h << ") diag err=" << std::abs(diag - 2 * std::sqrt(2.0)) << " time=" << secs << "s";
    o.require(worst <= 2 * h, "grid disagreement");
    o.require(secs < 60, "runtime");
  });

  report(7, "subgradient inequality", [&](Outcome& o) {
    std::mt19937_64 rng(7);
    std::vector<CubicalComplex> ks{L, fixtures::pqst(), fixtures::open_book(), fixtures::spider3()};
    for (int i = 0; i < 16; ++i) ks.push_back(fixtures::random_planar(rng, 6));
    long tuples = 0, violations = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (int rep = 0; rep < 500; ++rep) {
      const auto& k = ks[rep % ks.size()];
      const std::size_t p = std::uniform_int_distribution<std::size_t>(0, k.size() - 1)(rng);
      const auto x = fixtures::random_point(k.cube(p), rng);
      const auto a = fixtures::random_point(k, rng);
      const auto g = distance_subgradient(k, k.cube(p), x, a).vector;
      const double dx = distance(k, a, x);
      for (int i = 0; i < 20; ++i) {
        const auto w = fixtures::random_point(k.cube(p), rng);
        const double slack = dot(g, sub(w, x)) - (distance(k, a, w) - dx);
        worst = std::max(worst, slack);
        violations += slack > 1e-8;
        ++tuples;
      }
    }
    o.detail << " tuples=" << tuples << " violations=" << violations << " max(<g,w-x> - (d_a(w)-d_a(x)))=" << worst;
    o.require(tuples >= 10000, "too few tuples");
    o.require(violations == 0, "violations");
  });

  report(8, "ellipsoid certificate", [&](Outcome& o) {
    const auto book = fixtures::open_book();
    const auto book_obj = Objective::mean(kBookAnchors);
    struct Case {
      const CubicalComplex* k;
      const Objective* obj;
      const SolveReport* rep;
    };
    int checked = 0;
    double worst = -std::numeric_limits<double>::infinity();
    for (const Case& c : {Case{&L, &l_obj, &l_report}, Case{&book, &book_obj, &book_report}}) {
      o.require(!c.rep->subproblem_results.empty(), "no subproblems recorded");
      for (std::size_t i = 0; i < c.rep->subproblem_results.size(); ++i) {
        const Cube& cell = c.k->cube(c.rep->visited_cells[i]);
        const auto& r = c.rep->subproblem_results[i];
        const double fmin = reference_cell_min(*c.k, *c.obj, cell);
        worst = std::max(worst, certificate_excess(r, cell.dim(), fmin, 1e-9));
        o.require(r.history.size() == r.iterations && r.gap_scale > 0, "missing history");
        ++checked;
      }
    }
    o.detail << " subproblems=" << checked << " max(gap - bound - tol)=" << worst;
    o.require(worst <= 0.0, "gap exceeded the bound");
  });

  report(9, "cross-solver and pipeline agreement", [&](Outcome& o) {
    std::mt19937_64 rng(9);
    double worst_tree = 0.0;
    for (int rep = 0; rep < 20; ++rep) {
      const int edges = std::uniform_int_distribution<int>(1, 10)(rng);
      const int points = std::uniform_int_distribution<int>(1, 8)(rng);
      const auto t = fixtures::random_tree(rng, edges, points);
      const auto emb = fixtures::embed_tree(t.tree);
      std::vector<Point> A;
      for (const auto& p : t.points) A.push_back(emb.place(t.tree, p));
      const auto r = minimize(emb.complex, Objective::mean(A), A.front());
      const auto m = emb.place(t.tree, tree_mean(t.tree, t.points).mean);
      worst_tree = std::max(worst_tree, max_abs_diff(r.minimizer, m));
    }
    double worst_cell = 0.0;
    for (std::size_t c : l_report.visited_cells) {
      const auto e = solve_cell(L, l_obj, L.cube(c), {SolverKind::ellipsoid, 1e-9, 0});
      const auto s = solve_cell(L, l_obj, L.cube(c), {SolverKind::subgradient, 1e-9, 0});
      worst_cell = std::max(worst_cell, max_abs_diff(e.minimizer, s.minimizer));
    }
    o.detail << " trees: max |solve - tree_mean|=" << worst_tree << "; L cells " << l_report.visited_cells.size()
             << ": max |ellipsoid - subgrad|=" << worst_cell;
    o.require(worst_tree <= 1e-6, "tree pipeline disagreement");
    o.require(worst_cell <= 1e-3, "cell solver disagreement");
  });

  report(10, "solver comparison on cell P1", [&](Outcome& o) {
    const Cube& p1 = L.cube(0);
    const double fstar = reference_cell_min(L, l_obj, p1);
    const auto e = solve_cell(L, l_obj, p1, {SolverKind::ellipsoid, 1e-9, 0});
    const auto s = solve_cell(L, l_obj, p1, {SolverKind::subgradient, 1e-9, 0});
    const auto c = cyclic_proximal_point(L, l_obj, p1.center());
    const std::size_t ge = geodesics_to_reach(e.trace, fstar + 1e-6);
    const std::size_t gs = geodesics_to_reach(s.trace, fstar + 1e-3);
    const std::size_t gc = geodesics_to_reach(c.trace, fstar + 1e-2);
    o.detail << " f*=" << fstar << " geodesics: ellipsoid@1e-6=" << ge << " subgrad@1e-3=" << gs
             << " cpp@1e-2=" << gc;
    o.require(ge > 0 && gs > 0 && gc > 0, "a solver never reached its gap");
    o.require(ge < gs, "ellipsoid not ahead of subgrad");
    o.require(gs < gc, "subgrad not ahead of cpp");
    o.require(nonincreasing(e.trace) && nonincreasing(s.trace) && nonincreasing(c.trace), "trace increases");
  });

  report(11, "intersecting balls", [&](Outcome& o) {
    std::mt19937_64 rng(11);
    int feasible = 0, instances = 0;
    double worst_residual = 0.0;
    std::size_t max_steps = 0;
    double max_width = 0.0;
    std::vector<CubicalComplex> ks{L, fixtures::pqst(), fixtures::open_book()};
    for (int rep = 0; rep < 12; ++rep) {
      const auto& k = ks[rep % ks.size()];
      const auto p = fixtures::random_point(k, rng);
      std::vector<Point> A;
      std::vector<double> r;
      const int m = std::uniform_int_distribution<int>(2, 4)(rng);
      for (int i = 0; i < m; ++i) {
        A.push_back(fixtures::random_point(k, rng));
        r.push_back(distance(k, A.back(), p) + 0.01);
      }
      const auto res = solve_feasibility(k, A, r, A.front());
      double residual = 0.0;
      for (int i = 0; i < m; ++i) residual += std::max(distance(k, A[i], res.witness) - r[i], 0.0);
      worst_residual = std::max(worst_residual, residual);
      feasible += res.feasible && residual <= 1e-7;
      ++instances;
      if (rep < 6) {
        const auto b = fixtures::random_point(k, rng);
        const auto bis = distance_to_intersection(k, b, A, r, 1e-3);
        max_steps = std::max(max_steps, bis.steps);
        max_width = std::max(max_width, bis.hi - bis.lo);
      }
    }
    const auto sep = solve_feasibility(L, {{-1, 1}, {1, -1}}, {1.4, 1.4}, Point{-1, 1});
    bool throws = false;
    try {
      distance_to_intersection(L, Point{0, 0}, {{-1, 1}, {1, -1}}, {1.4, 1.4}, 1e-3);
    } catch (const InfeasibleError&) {
      throws = true;
    }
    o.detail << " feasible=" << feasible << "/" << instances << " worst residual=" << worst_residual
             << " separated instance feasible=" << std::boolalpha << sep.feasible
             << " (penalty " << sep.penalty_value << ") bisection max width=" << max_width
             << " max steps=" << max_steps;
    o.require(feasible == instances, "constructed instance not feasible");
    o.require(!sep.feasible && throws, "separated instance not infeasible");
    o.require(max_width <= 1e-3 && max_steps <= 12, "bisection");
  });

  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed") << std::endl;
  return failures == 0 ? 0 : 1;
}
