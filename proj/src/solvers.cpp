#include "cubeopt/solvers.hpp"

#include <Eigen/Dense>
#include <cmath>
#include <limits>
#include <ostream>

#include "cubeopt/error.hpp"
#include "cubeopt/geodesic.hpp"

namespace cubeopt {
namespace {

constexpr double kConditionLimit = 1e14;

Vec midpoint(std::size_t n) { return Vec(n, 0.5); }

bool is_zero(std::span<const double> g) {
  return std::all_of(g.begin(), g.end(), [](double v) { return v == 0.0; });
}

// Records an oracle value; returns true on improvement.
bool record(CellSolveResult& res, std::size_t t, std::size_t geodesics, double value,
            std::span<const double> u) {
  if (res.trace.empty() || value < res.value) {
    res.value = value;
    res.chart_minimizer.assign(u.begin(), u.end());
    res.trace.push_back({t, geodesics, value});
    return true;
  }
  return false;
}

}  // namespace

std::optional<Separation> unit_box_separation(std::span<const double> u) {
  double worst = 0.0;
  std::size_t axis = 0;
  bool upper = false;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (-u[i] > worst) {
      worst = -u[i];
      axis = i;
      upper = false;
    }
    if (u[i] - 1.0 > worst) {
      worst = u[i] - 1.0;
      axis = i;
      upper = true;
    }
  }
  if (!(worst > 0.0)) return std::nullopt;
  Separation s{Vec(u.size(), 0.0), upper ? 1.0 : 0.0};
  s.normal[axis] = upper ? 1.0 : -1.0;
  return s;
}

ObjectiveCellOracle::ObjectiveCellOracle(const CubicalComplex& complex, const Objective& obj,
                                         const Cube& cell)
    : complex_(complex), obj_(obj), chart_(chart_of(cell)) {}

void ObjectiveCellOracle::evaluate_center() {
  if (center_cut_) return;
  const Point x = chart_.embed(midpoint(dim()));
  const auto e = cell_value_subgradient(complex_, obj_, chart_.cube, x);
  geodesics_ += obj_.anchors.size();
  center_cut_ = Cut{e.value, chart_.restrict_vector(e.subgradient)};
  lipschitz_ = cell_lipschitz_bound(obj_, chart_.cube, e.distances);
}

double ObjectiveCellOracle::lipschitz() {
  evaluate_center();
  return lipschitz_;
}

double ObjectiveCellOracle::range_bound() {
  evaluate_center();
  return center_cut_->value + lipschitz_ * std::sqrt(static_cast<double>(dim())) / 2.0;
}

OracleResponse ObjectiveCellOracle::query(std::span<const double> u) {
  if (auto s = unit_box_separation(u)) return *s;
  if (center_cut_ && max_abs_diff(u, midpoint(dim())) == 0.0) return *center_cut_;
  const Point x = chart_.embed(u);
  const auto e = cell_value_subgradient(complex_, obj_, chart_.cube, x);
  geodesics_ += obj_.anchors.size();
  return Cut{e.value, chart_.restrict_vector(e.subgradient)};
}

OracleResponse FunctionOracle::query(std::span<const double> u) {
  if (auto s = unit_box_separation(u)) return *s;
  ++calls_;
  auto [v, g] = fn_(u);
  return Cut{v, std::move(g)};
}

double FunctionOracle::range_bound() {
  ++calls_;
  return fn_(midpoint(n_)).first + lipschitz_ * std::sqrt(static_cast<double>(n_)) / 2.0;
}

double ellipsoid_gap_bound(std::size_t n, double gap_scale, std::size_t t) {
  const double nn = static_cast<double>(n);
  return 2.0 * std::sqrt(nn) * gap_scale * std::exp(-static_cast<double>(t) / (2.0 * nn * nn));
}

std::size_t default_ellipsoid_iterations(std::size_t n) {
  const double nn = static_cast<double>(n);
  return static_cast<std::size_t>(std::ceil(50.0 * nn * nn * std::log(std::max(nn, 2.0) * 1e6)));
}

CellSolveResult ellipsoid_minimize(CellOracle& oracle, const EllipsoidOptions& opts) {
  const std::size_t n = oracle.dim();
  CellSolveResult res;
  if (n == 0) {
    const auto cut = std::get<Cut>(oracle.query(Vec{}));
    record(res, 1, oracle.geodesics(), cut.value, Vec{});
    res.history.push_back(res.value);
    res.iterations = 1;
    res.geodesic_count = oracle.geodesics();
    res.converged = true;
    return res;
  }
  const auto N = static_cast<Eigen::Index>(n);
  const double nn = static_cast<double>(n);
  const std::size_t max_iter = opts.max_iter ? opts.max_iter : default_ellipsoid_iterations(n);
  res.gap_scale = oracle.range_bound();

  Eigen::VectorXd c = Eigen::VectorXd::Constant(N, 0.5);
  Eigen::MatrixXd A = Eigen::MatrixXd::Identity(N, N) * (nn / 4.0);
  auto restart = [&] {
    c = res.trace.empty() ? Eigen::VectorXd::Constant(N, 0.5)
                          : Eigen::Map<const Eigen::VectorXd>(res.chart_minimizer.data(), N).eval();
    A = Eigen::MatrixXd::Identity(N, N) * (nn / 4.0);
    ++res.restarts;
  };

  for (std::size_t t = 1; t <= max_iter; ++t) {
    res.iterations = t;
    const Vec u(c.data(), c.data() + N);
    const auto resp = oracle.query(u);
    Vec g;
    if (const auto* sep = std::get_if<Separation>(&resp)) {
      g = sep->normal;
    } else {
      const auto& cut = std::get<Cut>(resp);
      record(res, t, oracle.geodesics(), cut.value, u);
      g = cut.subgradient;
      if (is_zero(g)) {
        res.history.push_back(res.value);
        res.converged = true;
        break;
      }
    }
    res.history.push_back(res.trace.empty() ? std::numeric_limits<double>::infinity() : res.value);
    if (!res.trace.empty() && ellipsoid_gap_bound(n, res.gap_scale, t) <= opts.tol) {
      res.converged = true;
      break;
    }

    const Eigen::Map<const Eigen::VectorXd> gv(g.data(), N);
    const Eigen::VectorXd Ag = A * gv;
    const double gAg = gv.dot(Ag);
    if (!(gAg > 0.0) || !std::isfinite(gAg)) {
      restart();
      continue;
    }
    const Eigen::VectorXd b = Ag / std::sqrt(gAg);
    if (n == 1) {
      c -= b / 2.0;
      A /= 4.0;
    } else {
      c -= b / (nn + 1.0);
      A = (nn * nn / (nn * nn - 1.0)) * (A - (2.0 / (nn + 1.0)) * b * b.transpose());
    }
    A = 0.5 * (A + A.transpose()).eval();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(A, Eigen::EigenvaluesOnly);
    const double lo = eig.eigenvalues().minCoeff();
    const double hi = eig.eigenvalues().maxCoeff();
    if (!(lo > 0.0) || hi / lo > kConditionLimit) restart();
  }
  res.geodesic_count = oracle.geodesics();
  return res;
}

CellSolveResult subgradient_minimize(CellOracle& oracle, const SubgradientOptions& opts) {
  const std::size_t n = oracle.dim();
  const double c = opts.c > 0.0 ? opts.c : std::sqrt(static_cast<double>(n));
  CellSolveResult res;
  Vec u = midpoint(n);
  for (std::size_t k = 1; k <= std::max<std::size_t>(opts.max_iter, 1); ++k) {
    res.iterations = k;
    const auto cut = std::get<Cut>(oracle.query(u));
    record(res, k, oracle.geodesics(), cut.value, u);
    res.history.push_back(res.value);
    if (is_zero(cut.subgradient)) {
      res.converged = true;
      break;
    }
    const double step = c / std::sqrt(static_cast<double>(k));
    for (std::size_t i = 0; i < n; ++i) u[i] = std::clamp(u[i] - step * cut.subgradient[i], 0.0, 1.0);
  }
  res.geodesic_count = oracle.geodesics();
  return res;
}

SolverKind parse_solver(const std::string& name) {
  if (name == "ellipsoid") return SolverKind::ellipsoid;
  if (name == "subgrad" || name == "subgradient") return SolverKind::subgradient;
  if (name == "cpp") return SolverKind::cpp;
  throw InputError("unknown solver '" + name + "' (expected ellipsoid, subgrad or cpp)");
}

std::string to_string(SolverKind kind) {
  switch (kind) {
    case SolverKind::ellipsoid: return "ellipsoid";
    case SolverKind::subgradient: return "subgrad";
    case SolverKind::cpp: return "cpp";
  }
  return "?";
}

CellSolveResult solve_cell(const CubicalComplex& complex, const Objective& obj, const Cube& cell,
                           const CellSolverOptions& opts) {
  ObjectiveCellOracle oracle(complex, obj, cell);
  CellSolveResult res;
  switch (opts.kind) {
    case SolverKind::ellipsoid:
      res = ellipsoid_minimize(oracle, {opts.tol, opts.max_iter});
      break;
    case SolverKind::subgradient: {
      SubgradientOptions so;
      if (opts.max_iter) so.max_iter = opts.max_iter;
      res = subgradient_minimize(oracle, so);
      break;
    }
    case SolverKind::cpp:
      throw InputError("cyclic proximal point works on the whole complex, not on a cell");
  }
  Vec u = res.chart_minimizer;
  for (double& v : u) v = std::clamp(v, 0.0, 1.0);
  res.minimizer = oracle.chart().embed(u);
  return res;
}

CellSolveResult cyclic_proximal_point(const CubicalComplex& complex, const Objective& obj,
                                      std::span<const double> x0, const CppOptions& opts) {
  if (obj.kind != ObjectiveKind::power_mean || (obj.q != 1.0 && obj.q != 2.0)) {
    throw InputError("cyclic proximal point needs a power mean with q = 1 or q = 2");
  }
  complex.require_member(x0, "start point");
  const std::size_t m = obj.anchors.size();
  CellSolveResult res;
  Point x(x0.begin(), x0.end());
  std::size_t geodesics = m;
  auto improve = [&](std::size_t it, double value) {
    if (res.trace.empty() || value < res.value) {
      res.value = value;
      res.minimizer = x;
      res.trace.push_back({it, geodesics, value});
    }
  };
  improve(0, eval(complex, obj, x));

  std::size_t step = 0;
  for (std::size_t cycle = 1; cycle <= opts.max_cycles; ++cycle) {
    res.iterations = cycle;
    const Point start = x;
    for (std::size_t i = 0; i < m; ++i) {
      ++step;
      const double mu = opts.c / static_cast<double>(opts.per_step ? step : cycle);
      const auto path = geodesic(complex, x, obj.anchors[i]);
      ++geodesics;
      const double d = path.length;
      if (d <= 0.0) continue;
      const double w = mu * obj.weight(i);
      const double t = obj.q == 2.0 ? d * (2.0 * w / (1.0 + 2.0 * w)) : std::min(w, d);
      x = point_along(path, t);
    }
    geodesics += m;
    improve(cycle, eval(complex, obj, x));
    res.history.push_back(res.value);
    if (opts.tol > 0.0 && dist(start, x) < opts.tol) {
      res.converged = true;
      break;
    }
  }
  res.geodesic_count = geodesics;
  return res;
}

void write_trace_csv(std::ostream& out, const std::vector<TracePoint>& trace) {
  out << "geodesics,best_value\n";
  out.precision(17);
  for (const auto& p : trace) out << p.geodesics << ',' << p.best_value << '\n';
}

}  // namespace cubeopt
