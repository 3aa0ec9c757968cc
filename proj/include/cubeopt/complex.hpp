#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubeopt/vec.hpp"

namespace cubeopt {

/// Absolute per-coordinate slack used by every membership test.
inline constexpr double kMembershipTol = 1e-12;

/// Axis-aligned unit cube of the integer lattice Z^N.
///
/// The realized set is { u : base_i <= u_i <= base_i + 1 for i in axes,
/// u_i = base_i otherwise }. `axes` is sorted ascending and duplicate free.
struct Cube {
  std::vector<int> base;
  std::vector<int> axes;

  std::size_t ambient_dim() const { return base.size(); }
  std::size_t dim() const { return axes.size(); }

  bool is_free(int axis) const;
  double lower(std::size_t i) const { return base[i]; }
  double upper(std::size_t i) const;

  bool contains(std::span<const double> p, double tol = kMembershipTol) const;
  /// True when every point of `other` lies in this cube.
  bool contains(const Cube& other) const;

  /// Componentwise clamp onto the box; the nearest point in Euclidean distance.
  Point clamp(std::span<const double> p) const;
  /// Euclidean distance from p to the box.
  double distance_to(std::span<const double> p) const;
  /// Euclidean distance between two boxes.
  double distance_to(const Cube& other) const;

  Point center() const;

  friend bool operator==(const Cube&, const Cube&) = default;
  friend auto operator<=>(const Cube&, const Cube&) = default;
};

/// Intersection box of two cubes, possibly 0-dimensional, or nothing when disjoint.
std::optional<Cube> cube_intersection(const Cube& c1, const Cube& c2);

std::string to_string(const Cube& c);

/// Isometric identification of a cube with [0,1]^n on its free axes.
struct Chart {
  Cube cube;
  std::vector<int> free_axes;
  std::vector<double> fixed_values;  // indexed by ambient axis; meaningful on non-free axes

  std::size_t dim() const { return free_axes.size(); }
  /// Ambient point of the cube -> coordinates in [0,1]^n. Throws MembershipError outside.
  Vec extract(std::span<const double> p) const;
  /// Chart coordinates -> ambient point. Throws MembershipError outside [0,1]^n.
  Point embed(std::span<const double> u) const;
  /// Ambient vector -> its free-axis components (the chart differential).
  Vec restrict_vector(std::span<const double> v) const;
  /// Chart vector -> ambient vector, zero on non-free axes.
  Vec extend_vector(std::span<const double> u) const;
};

Chart chart_of(const Cube& cube);

/// Finite subcomplex of the lattice cubing of R^N, given by its maximal cubes.
/// Immutable after construction; all queries are const and reentrant.
class CubicalComplex {
 public:
  /// Validates and normalizes: drops dominated cubes and duplicates (recorded in
  /// warnings()), computes adjacency, rejects disconnected unions.
  CubicalComplex(std::size_t ambient_dim, std::vector<Cube> cubes);

  std::size_t ambient_dim() const { return ambient_dim_; }
  std::size_t size() const { return cubes_.size(); }
  const Cube& cube(std::size_t i) const { return cubes_[i]; }
  const std::vector<Cube>& cubes() const { return cubes_; }
  /// Indices of cubes with nonempty intersection with cube i (ascending, excluding i).
  const std::vector<std::size_t>& neighbors(std::size_t i) const { return adjacency_[i]; }
  const std::vector<std::string>& warnings() const { return warnings_; }
  /// Largest dimension among maximal cubes.
  std::size_t dim() const;

  bool contains(std::span<const double> p) const;
  /// Throws MembershipError (with `what` in the message) unless p is in the complex.
  void require_member(std::span<const double> p, const char* what = "point") const;
  /// Index of the cube equal to c, if c is one of the maximal cubes.
  std::optional<std::size_t> index_of(const Cube& c) const;

 private:
  std::size_t ambient_dim_;
  std::vector<Cube> cubes_;
  std::vector<std::vector<std::size_t>> adjacency_;
  std::vector<std::string> warnings_;
};

/// Parses the JSON complex format
/// `{"ambient_dim": N, "maximal_cubes": [{"base": [...], "axes": [...]}, ...]}`.
CubicalComplex load_complex(std::istream& in);
CubicalComplex load_complex_string(const std::string& text);
CubicalComplex load_complex_file(const std::string& path);

/// Maximal cubes containing x (ascending indices). Throws MembershipError when empty.
std::vector<std::size_t> cells_containing(const CubicalComplex& complex, std::span<const double> x);

struct LinkViolation {
  std::vector<int> vertex;
  /// Edges at the vertex as signed axis directions: +k+1 for +e_k, -(k+1) for -e_k.
  std::vector<int> edges;
};

struct LinkReport {
  bool ok = true;
  std::optional<LinkViolation> violation;  // the first violation found
};

/// Gromov link condition at every vertex.
LinkReport check_link_condition(const CubicalComplex& complex);

enum class Tristate { yes, no, unknown };
std::string to_string(Tristate t);

/// V - E + F - ..., counting every face of every maximal cube once.
long euler_characteristic(const CubicalComplex& complex);

/// Decides simple connectivity for complexes with a core, for graphs, and for
/// complexes in Z^2 (by the Euler characteristic); unknown otherwise.
Tristate check_simply_connected(const CubicalComplex& complex);

/// All faces of a cube (including itself), as cubes.
std::vector<Cube> faces_of(const Cube& cube);

}  // namespace cubeopt
