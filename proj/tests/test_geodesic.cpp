#include <doctest.h>

#include <cmath>
#include <random>

#include "cubeopt/error.hpp"
#include "cubeopt/geodesic.hpp"
#include "fixtures.hpp"
#include "grid_oracle.hpp"

using namespace cubeopt;
using doctest::Approx;

namespace {

// Minimum of |x-p| + |p-y| over p in a face box, by sampling a fine grid of the box.
double sampled_one_break(const Cube& face, const Point& x, const Point& y, int steps) {
  double best = 1e300;
  const auto ch = chart_of(face);
  const std::size_t n = ch.dim();
  std::vector<int> idx(n, 0);
  for (;;) {
    Vec u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = static_cast<double>(idx[i]) / steps;
    const Point p = ch.embed(u);
    best = std::min(best, dist(x, p) + dist(p, y));
    std::size_t k = 0;
    while (k < n && ++idx[k] > steps) idx[k++] = 0;
    if (k == n) break;
  }
  return best;
}

}  // namespace

TEST_SUITE("geodesics") {

TEST_CASE("bent geodesic through the corner of the L") {
  const auto k = fixtures::l_complex();
  const auto g = geodesic(k, Point{-1, 1}, Point{1, -1});
  CHECK(g.length == Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
  REQUIRE(g.breakpoints.size() == 3);
  CHECK(dist(g.breakpoints[1], Point{0, 0}) < 1e-9);
  fixtures::GridOracle grid(k);
  CHECK(std::abs(grid.distance({-1, 1}, {1, -1}) - g.length) <= 2.0 / 64);
}

TEST_CASE("trivial geodesics") {
  const auto k = fixtures::l_complex();
  CHECK(distance(k, Point{-0.3, 0.2}, Point{-0.3, 0.2}) == 0.0);
  const auto g = geodesic(k, Point{-0.3, 0.2}, Point{-0.9, 0.7});
  CHECK(g.segments() == 1);
  CHECK(g.length == Approx(std::hypot(0.6, 0.5)));
  CHECK_THROWS_AS(geodesic(k, Point{0.5, 0.5}, Point{0, 0}), MembershipError);
}

TEST_CASE("worked example: geodesic bends at (0,-1)") {
  const auto k = fixtures::pqst();
  const Point x{0.5, 0}, a{-0.5, -2};
  const auto g = geodesic(k, x, a);
  REQUIRE(g.breakpoints.size() == 3);
  CHECK(max_abs_diff(g.breakpoints[1], Point{0, -1}) < 1e-9);
  // Piecewise formula for d_a on the upper region: sqrt5/2 + |w - (0,-1)|.
  CHECK(g.length == Approx(std::sqrt(5.0) / 2 + std::hypot(0.5, 1.0)).epsilon(1e-12));
  fixtures::GridOracle grid(k);
  CHECK(std::abs(grid.distance(x, a) - g.length) <= 2.0 / 64);
  // Arclength |x - y| lands on the breakpoint.
  CHECK(max_abs_diff(point_along(g, std::hypot(0.5, 1.0)), Point{0, -1}) < 1e-9);
}

TEST_CASE("piecewise distance formula of the worked example") {
  const auto k = fixtures::pqst();
  const Point a{-0.5, -2};
  std::mt19937_64 rng(2);
  for (int i = 0; i < 200; ++i) {
    const Point w = fixtures::random_point(k, rng);
    const double expect = (w[0] >= 0 && w[1] >= 2 * w[0] - 1)
                              ? std::sqrt(5.0) / 2 + std::hypot(w[0], w[1] + 1)
                              : std::hypot(w[0] + 0.5, w[1] + 2);
    CHECK(distance(k, w, a) == Approx(expect).epsilon(1e-9));
  }
}

TEST_CASE("rubber band on fixed sequences") {
  const auto k = fixtures::l_complex();
  SUBCASE("single cube") {
    const auto r = rubber_band(k, {0}, Point{-1, 1}, Point{0, 0});
    CHECK(r.length == Approx(std::sqrt(2.0)));
    CHECK(r.breakpoints.empty());
  }
  SUBCASE("P1 then P3 meet at the origin") {
    const auto r = rubber_band(k, {0, 2}, Point{-1, 1}, Point{1, -1});
    CHECK(r.length == Approx(2 * std::sqrt(2.0)).epsilon(1e-12));
    REQUIRE(r.breakpoints.size() == 1);
    CHECK(max_abs_diff(r.breakpoints[0], Point{0, 0}) == 0.0);
  }
  SUBCASE("P1 then P2 across an edge matches sampling") {
    const Point x{-0.5, 0.9}, y{-0.2, -0.7};
    const auto r = rubber_band(k, {0, 1}, x, y);
    const double s = sampled_one_break(Cube{{-1, 0}, {0}}, x, y, 100000);
    CHECK(r.length <= s + 1e-12);
    CHECK(r.length == Approx(s).epsilon(1e-9));
  }
  SUBCASE("Q then T in the worked example") {
    const auto p = fixtures::pqst();
    const auto r = rubber_band(p, {1, 3}, Point{0.5, 0}, Point{-0.5, -2});
    REQUIRE(r.breakpoints.size() == 1);
    CHECK(max_abs_diff(r.breakpoints[0], Point{0, -1}) == 0.0);
  }
  SUBCASE("a detour sequence collapses") {
    // P1, P2, P3 between points that see each other through the origin.
    const auto r = rubber_band(k, {0, 1, 2}, Point{-1, 1}, Point{1, -1});
    CHECK(r.length == Approx(2 * std::sqrt(2.0)).epsilon(1e-10));
    CHECK(r.cells.size() <= 3);
  }
  SUBCASE("invalid input") {
    CHECK_THROWS_AS(rubber_band(k, {0, 2}, Point{-1, 1}, Point{-1, -1}), MembershipError);
    CHECK_THROWS_AS(rubber_band(k, {}, Point{-1, 1}, Point{-1, 1}), GeometryError);
  }
}

TEST_CASE("rubber band is stable under tighter tolerance") {
  const auto k = fixtures::l_complex();
  const Point x{-0.7, 0.35}, y{0.45, -0.8};
  double prev = rubber_band(k, {0, 1, 2}, x, y, {1e-4, 100000}).length;
  for (double tol : {1e-6, 1e-8, 1e-10, 1e-12}) {
    const double len = rubber_band(k, {0, 1, 2}, x, y, {tol, 100000}).length;
    CHECK(len <= prev + tol);
    prev = len;
  }
}

TEST_CASE("point_along") {
  const auto k = fixtures::l_complex();
  const auto g = geodesic(k, Point{-1, 0.2}, Point{-0.2, 0.6});
  CHECK(point_along(g, 0) == g.source());
  CHECK(max_abs_diff(point_along(g, g.length / 2), Point{-0.6, 0.4}) < 1e-15);
  CHECK(max_abs_diff(point_along(g, g.length), g.target()) < 1e-15);
  CHECK_THROWS_AS(point_along(g, -0.1), std::out_of_range);
  CHECK_THROWS_AS(point_along(g, g.length + 0.1), std::out_of_range);
}

TEST_CASE("metric properties on random planar complexes") {
  std::mt19937_64 rng(17);
  for (int rep = 0; rep < 10; ++rep) {
    const auto k = fixtures::random_planar(rng, 7);
    for (int i = 0; i < 20; ++i) {
      const auto x = fixtures::random_point(k, rng);
      const auto y = fixtures::random_point(k, rng);
      const auto z = fixtures::random_point(k, rng);
      const double dxy = distance(k, x, y);
      CHECK(std::abs(dxy - distance(k, y, x)) <= 1e-8);
      CHECK(distance(k, x, z) <= dxy + distance(k, y, z) + 1e-8);
      CHECK(dxy >= dist(x, y) - 1e-12);
      const auto g = geodesic(k, x, y);
      const auto m = point_along(g, g.length / 2);
      const double dxz = distance(k, x, z), dyz = distance(k, y, z), dmz = distance(k, m, z);
      CHECK(dmz * dmz <= 0.5 * dxz * dxz + 0.5 * dyz * dyz - 0.25 * dxy * dxy + 1e-7);
    }
  }
}

TEST_CASE("reported paths are consistent") {
  std::mt19937_64 rng(23);
  for (int rep = 0; rep < 10; ++rep) {
    const auto k = fixtures::random_planar(rng, 8);
    for (int i = 0; i < 10; ++i) {
      const auto g = geodesic(k, fixtures::random_point(k, rng), fixtures::random_point(k, rng));
      double len = 0.0;
      for (std::size_t s = 0; s < g.segments(); ++s) {
        const auto& c = k.cube(g.cell_sequence[s]);
        CHECK(c.contains(g.breakpoints[s], 1e-9));
        CHECK(c.contains(g.breakpoints[s + 1], 1e-9));
        CHECK(dist(g.breakpoints[s], g.breakpoints[s + 1]) >= kZeroSegment);
        len += dist(g.breakpoints[s], g.breakpoints[s + 1]);
      }
      CHECK(len == Approx(g.length).epsilon(1e-14));
    }
  }
}

TEST_CASE("one-dimensional complexes") {
  // Path 0 - 1 - 2 - 3 along the x axis, bent at 2 into the y direction.
  const CubicalComplex k(2, {Cube{{0, 0}, {0}}, Cube{{1, 0}, {0}}, Cube{{2, 0}, {1}}});
  const auto g = geodesic(k, Point{0.25, 0}, Point{2, 0.5});
  CHECK(g.length == Approx(2.25));
  CHECK(g.breakpoints.size() == 4);
}

TEST_CASE("large complexes without a core are rejected") {
  std::vector<Cube> row;
  for (int i = 0; i < 13; ++i) row.push_back(fixtures::square(i, 0));
  const CubicalComplex k(2, row);
  CHECK(distance(k, Point{0.5, 0.5}, Point{0.9, 0.1}) == Approx(std::hypot(0.4, 0.4)));
  CHECK_THROWS_AS(distance(k, Point{0.5, 0.5}, Point{12.5, 0.5}), GeometryError);
}

}  // TEST_SUITE
