// Shortest polyline through a fixed sequence of cubes.
//
// The breakpoints live in the boxes F_k = C_{k-1} ∩ C_k. The total length is
// convex but not smooth at coincident breakpoints, so the solver minimizes
// sum_k sqrt(|p_{k+1} - p_k|^2 + eps^2) by projected Newton, shrinking eps.
// Segments that collapse are merged away (dropping the cube that only carried
// a point), after which the remaining problem is smooth and a final pass with
// a negligible eps converges to machine precision.

#include <Eigen/Dense>
#include <limits>

#include "cubeopt/error.hpp"
#include "cubeopt/geodesic.hpp"

namespace cubeopt {
namespace {

constexpr double kMergeLength = 1e-6;
constexpr double kFinalEps = 1e-13;

struct Var {
  std::size_t point;
  int axis;
  double lo, hi;
};

class Chain {
 public:
  Chain(const CubicalComplex& complex, std::vector<std::size_t> cells, std::span<const double> x,
        std::span<const double> y)
      : complex_(complex), cells_(std::move(cells)) {
    const std::size_t m = cells_.size() - 1;
    for (std::size_t k = 0; k < m; ++k) {
      auto f = cube_intersection(complex_.cube(cells_[k]), complex_.cube(cells_[k + 1]));
      if (!f) throw GeometryError("rubber band: consecutive cubes do not intersect");
      faces_.push_back(*f);
    }
    pts_.emplace_back(x.begin(), x.end());
    for (std::size_t k = 0; k < m; ++k) {
      pts_.push_back(faces_[k].clamp(lerp(x, y, double(k + 1) / double(m + 1))));
    }
    pts_.emplace_back(y.begin(), y.end());
    owner_.resize(pts_.size());
    for (std::size_t i = 0; i < owner_.size(); ++i) owner_[i] = i;
    rebuild_vars();
  }

  double length(double eps) const {
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < pts_.size(); ++k) {
      const double d = dist(pts_[k], pts_[k + 1]);
      s += eps > 0.0 ? std::sqrt(d * d + eps * eps) : d;
    }
    return s;
  }

  /// Projected Newton on the eps-smoothed length. Returns iterations used.
  std::size_t newton(double eps, double gtol, std::size_t max_iter) {
    const std::size_t n = vars_.size();
    if (n == 0) return 0;
    const std::size_t N = complex_.ambient_dim();
    Eigen::VectorXd z(n), g(n), d(n);
    Eigen::MatrixXd H(n, n);
    std::size_t it = 0;
    for (; it < max_iter; ++it) {
      for (std::size_t j = 0; j < n; ++j) z[j] = pts_[vars_[j].point][vars_[j].axis];
      g.setZero();
      H.setZero();
      for (std::size_t k = 0; k + 1 < pts_.size(); ++k) {
        const Vec delta = sub(pts_[k + 1], pts_[k]);
        const double s = std::sqrt(dot(delta, delta) + eps * eps);
        if (s <= 0.0) continue;
        for (std::size_t a = 0; a < N; ++a) {
          const int ia = index_[k][a], ja = index_[k + 1][a];
          const double w = delta[a] / s;
          if (ia >= 0) g[ia] -= w;
          if (ja >= 0) g[ja] += w;
          for (std::size_t b = 0; b < N; ++b) {
            const int ib = index_[k][b], jb = index_[k + 1][b];
            if (ia < 0 && ja < 0) break;
            const double m = ((a == b ? 1.0 : 0.0) - delta[a] * delta[b] / (s * s)) / s;
            if (ia >= 0 && ib >= 0) H(ia, ib) += m;
            if (ja >= 0 && jb >= 0) H(ja, jb) += m;
            if (ia >= 0 && jb >= 0) H(ia, jb) -= m;
            if (ja >= 0 && ib >= 0) H(ja, ib) -= m;
          }
        }
      }
      double pg = 0.0;
      for (std::size_t j = 0; j < n; ++j) {
        pg = std::max(pg, std::abs(z[j] - std::clamp(z[j] - g[j], vars_[j].lo, vars_[j].hi)));
      }
      if (pg < gtol) break;

      const double tiny = std::min(1e-10, pg);
      std::vector<int> free_idx;
      std::vector<char> active(n, 0);
      for (std::size_t j = 0; j < n; ++j) {
        active[j] = (z[j] <= vars_[j].lo + tiny && g[j] > 0.0) ||
                    (z[j] >= vars_[j].hi - tiny && g[j] < 0.0);
        if (!active[j]) free_idx.push_back(static_cast<int>(j));
      }
      d = -g;
      if (!free_idx.empty()) {
        const auto nf = static_cast<Eigen::Index>(free_idx.size());
        Eigen::MatrixXd Hf(nf, nf);
        Eigen::VectorXd gf(nf);
        double scale = 1.0;
        for (Eigen::Index r = 0; r < nf; ++r) {
          gf[r] = g[free_idx[r]];
          for (Eigen::Index c = 0; c < nf; ++c) Hf(r, c) = H(free_idx[r], free_idx[c]);
          scale = std::max(scale, Hf(r, r));
        }
        Hf.diagonal().array() += 1e-14 * scale;
        Eigen::LDLT<Eigen::MatrixXd> ldlt(Hf);
        Eigen::VectorXd df = ldlt.solve(-gf);
        if (ldlt.info() != Eigen::Success || !df.allFinite() || df.dot(gf) >= 0.0) df = -gf;
        for (Eigen::Index r = 0; r < nf; ++r) d[free_idx[r]] = df[r];
      }

      const double phi0 = length(eps);
      const auto saved = pts_;
      bool accepted = false;
      double alpha = 1.0;
      for (int ls = 0; ls < 60; ++ls, alpha *= 0.5) {
        double pred = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
          const double zj = std::clamp(z[j] + alpha * d[j], vars_[j].lo, vars_[j].hi);
          pred += g[j] * (z[j] - zj);
          pts_[vars_[j].point][vars_[j].axis] = zj;
        }
        const double phi1 = length(eps);
        if (phi1 <= phi0 - 1e-4 * pred && phi1 < phi0) {
          accepted = true;
          break;
        }
      }
      if (!accepted) {
        pts_ = saved;
        break;
      }
    }
    return it;
  }

  /// Collapses one short segment whose cube can be removed. Returns true if a merge happened.
  bool merge_one() {
    const std::size_t m = faces_.size();
    for (std::size_t k = 0; k + 1 < pts_.size(); ++k) {
      if (dist(pts_[k], pts_[k + 1]) >= kMergeLength || m == 0) continue;
      if (k == 0) {
        if (!complex_.cube(cells_[1]).contains(pts_[0])) continue;
        cells_.erase(cells_.begin());
        faces_.erase(faces_.begin());
        remove_point(1, 0);
      } else if (k == m) {
        if (!complex_.cube(cells_[m - 1]).contains(pts_[m + 1])) continue;
        cells_.erase(cells_.begin() + static_cast<long>(m));
        faces_.erase(faces_.begin() + static_cast<long>(m - 1));
        remove_point(m, m + 1);
      } else {
        auto g = cube_intersection(complex_.cube(cells_[k - 1]), complex_.cube(cells_[k + 1]));
        if (!g) continue;
        pts_[k] = g->clamp(lerp(pts_[k], pts_[k + 1], 0.5));
        cells_.erase(cells_.begin() + static_cast<long>(k));
        faces_[k - 1] = *g;
        faces_.erase(faces_.begin() + static_cast<long>(k));
        remove_point(k + 1, k);
      }
      rebuild_vars();
      return true;
    }
    return false;
  }

  const std::vector<Point>& points() const { return pts_; }
  const std::vector<std::size_t>& cells() const { return cells_; }
  /// Current polyline point carrying original point i.
  const Point& original(std::size_t i) const { return pts_[owner_[i]]; }

 private:
  void remove_point(std::size_t r, std::size_t survivor) {
    for (auto& o : owner_) {
      if (o == r) o = survivor;
    }
    for (auto& o : owner_) {
      if (o > r) --o;
    }
    pts_.erase(pts_.begin() + static_cast<long>(r));
  }

  void rebuild_vars() {
    const std::size_t N = complex_.ambient_dim();
    vars_.clear();
    index_.assign(pts_.size(), std::vector<int>(N, -1));
    for (std::size_t k = 0; k < faces_.size(); ++k) {
      const Cube& f = faces_[k];
      for (int a : f.axes) {
        index_[k + 1][a] = static_cast<int>(vars_.size());
        vars_.push_back({k + 1, a, f.lower(a), f.upper(a)});
      }
      // Pin fixed coordinates exactly.
      for (std::size_t a = 0; a < N; ++a) {
        if (!f.is_free(int(a))) pts_[k + 1][a] = f.base[a];
      }
    }
  }

  const CubicalComplex& complex_;
  std::vector<std::size_t> cells_;
  std::vector<Cube> faces_;
  std::vector<Point> pts_;
  std::vector<std::size_t> owner_;
  std::vector<Var> vars_;
  std::vector<std::vector<int>> index_;
};

}  // namespace

RubberBandResult rubber_band(const CubicalComplex& complex, const std::vector<std::size_t>& sequence,
                             std::span<const double> x, std::span<const double> y,
                             const RubberBandOptions& opts) {
  if (sequence.empty()) throw GeometryError("rubber band: empty cube sequence");
  for (std::size_t c : sequence) {
    if (c >= complex.size()) throw GeometryError("rubber band: cube index out of range");
  }
  if (!complex.cube(sequence.front()).contains(x)) {
    throw MembershipError("rubber band: source not in first cube");
  }
  if (!complex.cube(sequence.back()).contains(y)) {
    throw MembershipError("rubber band: target not in last cube");
  }

  Chain chain(complex, sequence, x, y);
  RubberBandResult res;
  std::size_t budget = opts.max_iter;
  auto run = [&](double eps, double gtol, std::size_t cap) {
    const std::size_t used = chain.newton(eps, gtol, std::min(cap, budget));
    res.iterations += used;
    budget -= std::min(budget, used);
  };

  for (;;) {
    for (double eps = 1e-1; eps >= 1e-8 * 0.999; eps *= 0.1) run(eps, 1e-10, 60);
    if (!chain.merge_one()) break;
    while (chain.merge_one()) {
    }
  }
  run(kFinalEps, std::max(opts.tol * 1e-3, 1e-15), 200);
  // Collapse anything the final pass shrank, then polish once more.
  if (chain.merge_one()) {
    while (chain.merge_one()) {
    }
    run(kFinalEps, std::max(opts.tol * 1e-3, 1e-15), 200);
  }
  res.converged = budget > 0;
  res.length = chain.length(0.0);
  res.cells = chain.cells();
  res.polyline = chain.points();
  for (std::size_t k = 1; k + 1 < sequence.size() + 1; ++k) res.breakpoints.push_back(chain.original(k));
  return res;
}

}  // namespace cubeopt
