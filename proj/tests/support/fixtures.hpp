#pragma once

#include <cmath>
#include <random>
#include <vector>

#include "cubeopt/complex.hpp"
#include "cubeopt/tree.hpp"

namespace fixtures {

using cubeopt::Cube;
using cubeopt::CubicalComplex;
using cubeopt::Point;

inline Cube square(int x, int y) { return Cube{{x, y}, {0, 1}}; }

/// P1 = [-1,0]x[0,1], P2 = [-1,0]x[-1,0], P3 = [0,1]x[-1,0].
inline CubicalComplex l_complex() {
  return CubicalComplex(2, {square(-1, 0), square(-1, -1), square(0, -1)});
}

/// P = [0,1]^2, Q = [0,1]x[-1,0], S = [0,1]x[-2,-1], T = [-1,0]x[-2,-1].
inline CubicalComplex pqst() {
  return CubicalComplex(2, {square(0, 0), square(0, -1), square(0, -2), square(-1, -2)});
}

/// Three pages around the spine {0}x{0}x[0,1].
inline CubicalComplex open_book() {
  return CubicalComplex(3, {Cube{{0, 0, 0}, {0, 2}}, Cube{{0, 0, 0}, {1, 2}}, Cube{{-1, 0, 0}, {0, 2}}});
}

/// Three unit legs from the origin along the axes of Z^3.
inline CubicalComplex spider3() {
  return CubicalComplex(3, {Cube{{0, 0, 0}, {0}}, Cube{{0, 0, 0}, {1}}, Cube{{0, 0, 0}, {2}}});
}

/// The three faces of [0,1]^3 that contain the origin.
inline CubicalComplex three_faces() {
  return CubicalComplex(3, {Cube{{0, 0, 0}, {0, 1}}, Cube{{0, 0, 0}, {0, 2}}, Cube{{0, 0, 0}, {1, 2}}});
}

/// Eight squares around the missing square [0,1]^2.
inline CubicalComplex annulus() {
  std::vector<Cube> cs;
  for (int x = -1; x <= 1; ++x) {
    for (int y = -1; y <= 1; ++y) {
      if (x != 0 || y != 0) cs.push_back(square(x, y));
    }
  }
  return CubicalComplex(2, cs);
}

inline const double kAlpha = (2.0 - std::sqrt(2.0)) / 6.0;

inline std::vector<Point> l_anchors() { return {{1, 0}, {0, 1}, {-1, 0}}; }

/// Uniform point of a cube.
inline Point random_point(const Cube& c, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  Point p(c.base.begin(), c.base.end());
  for (int a : c.axes) p[a] += u(rng);
  return p;
}

/// Uniform cube, then uniform point in it.
inline Point random_point(const CubicalComplex& k, std::mt19937_64& rng) {
  std::uniform_int_distribution<std::size_t> pick(0, k.size() - 1);
  return random_point(k.cube(pick(rng)), rng);
}

/// Simply connected union of at most `max_squares` lattice squares, grown by
/// attaching squares along edges and rejecting results with holes.
CubicalComplex random_planar(std::mt19937_64& rng, int max_squares, int min_squares = 2);

/// Euler characteristic of a union of lattice squares by direct counting.
long planar_euler(const std::vector<std::pair<int, int>>& squares);

struct RandomTree {
  cubeopt::MetricTree tree;
  std::vector<cubeopt::TreePoint> points;
};

/// Random labelled tree with `edges` edges and `points` uniform points on it.
RandomTree random_tree(std::mt19937_64& rng, int edges, int points);

/// Lattice embedding of a tree: the vertex with the smallest label sits at 0 and
/// edge i goes along axis i, so every point's coordinates follow from its path.
struct TreeEmbedding {
  CubicalComplex complex;
  std::vector<Point> vertex_pos;  // by vertex id
  Point place(const cubeopt::MetricTree& tree, const cubeopt::TreePoint& p) const;
};
TreeEmbedding embed_tree(const cubeopt::MetricTree& tree);

}  // namespace fixtures
