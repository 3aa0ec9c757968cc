#include "cubeopt/complex.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

#include "cubeopt/core.hpp"
#include "cubeopt/error.hpp"

namespace cubeopt {

bool Cube::is_free(int axis) const { return std::binary_search(axes.begin(), axes.end(), axis); }

double Cube::upper(std::size_t i) const {
  return is_free(static_cast<int>(i)) ? base[i] + 1.0 : static_cast<double>(base[i]);
}

bool Cube::contains(std::span<const double> p, double tol) const {
  if (p.size() != base.size()) return false;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < lower(i) - tol || p[i] > upper(i) + tol) return false;
  }
  return true;
}

bool Cube::contains(const Cube& other) const {
  if (other.base.size() != base.size()) return false;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (other.lower(i) < lower(i) || other.upper(i) > upper(i)) return false;
  }
  return true;
}

Point Cube::clamp(std::span<const double> p) const {
  Point r(p.begin(), p.end());
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = std::clamp(r[i], lower(i), upper(i));
  return r;
}

double Cube::distance_to(std::span<const double> p) const { return dist(p, clamp(p)); }

double Cube::distance_to(const Cube& other) const {
  double s = 0.0;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const double gap = std::max({0.0, other.lower(i) - upper(i), lower(i) - other.upper(i)});
    s += gap * gap;
  }
  return std::sqrt(s);
}

Point Cube::center() const {
  Point c(base.begin(), base.end());
  for (int a : axes) c[a] += 0.5;
  return c;
}

std::optional<Cube> cube_intersection(const Cube& c1, const Cube& c2) {
  if (c1.base.size() != c2.base.size()) return std::nullopt;
  Cube r;
  r.base.resize(c1.base.size());
  for (std::size_t i = 0; i < c1.base.size(); ++i) {
    const int lo = std::max(c1.base[i], c2.base[i]);
    const int hi = std::min(c1.base[i] + (c1.is_free(int(i)) ? 1 : 0),
                            c2.base[i] + (c2.is_free(int(i)) ? 1 : 0));
    if (lo > hi) return std::nullopt;
    r.base[i] = lo;
    if (hi - lo == 1) r.axes.push_back(static_cast<int>(i));
  }
  return r;
}

std::string to_string(const Cube& c) {
  std::ostringstream os;
  os << "{base=(";
  for (std::size_t i = 0; i < c.base.size(); ++i) os << (i ? "," : "") << c.base[i];
  os << "), axes={";
  for (std::size_t i = 0; i < c.axes.size(); ++i) os << (i ? "," : "") << c.axes[i];
  os << "}}";
  return os.str();
}

// ---------------------------------------------------------------------------
// Chart

Vec Chart::extract(std::span<const double> p) const {
  if (!cube.contains(p)) throw MembershipError("point outside chart cube " + to_string(cube));
  Vec u(free_axes.size());
  for (std::size_t k = 0; k < free_axes.size(); ++k) {
    const int a = free_axes[k];
    u[k] = std::clamp(p[a] - cube.base[a], 0.0, 1.0);
  }
  return u;
}

Point Chart::embed(std::span<const double> u) const {
  if (u.size() != free_axes.size()) throw MembershipError("chart coordinate has wrong length");
  Point p(fixed_values.begin(), fixed_values.end());
  for (std::size_t k = 0; k < free_axes.size(); ++k) {
    if (u[k] < -kMembershipTol || u[k] > 1.0 + kMembershipTol) {
      throw MembershipError("chart coordinate outside [0,1]");
    }
    const int a = free_axes[k];
    p[a] = cube.base[a] + std::clamp(u[k], 0.0, 1.0);
  }
  return p;
}

Vec Chart::restrict_vector(std::span<const double> v) const {
  Vec u(free_axes.size());
  for (std::size_t k = 0; k < free_axes.size(); ++k) u[k] = v[free_axes[k]];
  return u;
}

Vec Chart::extend_vector(std::span<const double> u) const {
  Vec v(cube.ambient_dim(), 0.0);
  for (std::size_t k = 0; k < free_axes.size(); ++k) v[free_axes[k]] = u[k];
  return v;
}

Chart chart_of(const Cube& cube) {
  Chart ch;
  ch.cube = cube;
  ch.free_axes = cube.axes;
  ch.fixed_values.assign(cube.base.begin(), cube.base.end());
  return ch;
}

// ---------------------------------------------------------------------------
// CubicalComplex

CubicalComplex::CubicalComplex(std::size_t ambient_dim, std::vector<Cube> cubes)
    : ambient_dim_(ambient_dim) {
  if (ambient_dim == 0) throw InputError("ambient_dim must be positive");
  if (cubes.empty()) throw InputError("complex has no cubes");
  for (auto& c : cubes) {
    if (c.base.size() != ambient_dim) {
      throw InputError("cube base length " + std::to_string(c.base.size()) +
                       " does not match ambient_dim " + std::to_string(ambient_dim));
    }
    for (std::size_t k = 0; k < c.axes.size(); ++k) {
      if (c.axes[k] < 0 || static_cast<std::size_t>(c.axes[k]) >= ambient_dim) {
        throw InputError("cube axis out of range in " + to_string(c));
      }
      if (k > 0 && c.axes[k] <= c.axes[k - 1]) {
        throw InputError("cube axes must be sorted and distinct in " + to_string(c));
      }
    }
  }

  // Keep the first copy of each cube that no other cube strictly contains.
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    bool keep = true;
    for (std::size_t j = 0; j < cubes.size() && keep; ++j) {
      if (i == j || !cubes[j].contains(cubes[i])) continue;
      if (cubes[i] == cubes[j]) {
        if (j < i) {
          warnings_.push_back("duplicate cube " + to_string(cubes[i]) + " dropped");
          keep = false;
        }
      } else {
        warnings_.push_back("cube " + to_string(cubes[i]) + " is a face of " +
                            to_string(cubes[j]) + "; dropped");
        keep = false;
      }
    }
    if (keep) cubes_.push_back(cubes[i]);
  }

  adjacency_.resize(cubes_.size());
  for (std::size_t i = 0; i < cubes_.size(); ++i) {
    for (std::size_t j = i + 1; j < cubes_.size(); ++j) {
      if (cube_intersection(cubes_[i], cubes_[j])) {
        adjacency_[i].push_back(j);
        adjacency_[j].push_back(i);
      }
    }
  }
  for (auto& a : adjacency_) std::sort(a.begin(), a.end());

  std::vector<char> seen(cubes_.size(), 0);
  std::queue<std::size_t> q;
  q.push(0);
  seen[0] = 1;
  std::size_t reached = 1;
  while (!q.empty()) {
    const std::size_t c = q.front();
    q.pop();
    for (std::size_t n : adjacency_[c]) {
      if (!seen[n]) {
        seen[n] = 1;
        ++reached;
        q.push(n);
      }
    }
  }
  if (reached != cubes_.size()) throw InputError("complex is disconnected");
}

std::size_t CubicalComplex::dim() const {
  std::size_t d = 0;
  for (const auto& c : cubes_) d = std::max(d, c.dim());
  return d;
}

bool CubicalComplex::contains(std::span<const double> p) const {
  if (p.size() != ambient_dim_) return false;
  return std::any_of(cubes_.begin(), cubes_.end(), [&](const Cube& c) { return c.contains(p); });
}

void CubicalComplex::require_member(std::span<const double> p, const char* what) const {
  if (p.size() != ambient_dim_) {
    throw MembershipError(std::string(what) + " has " + std::to_string(p.size()) +
                          " coordinates, expected " + std::to_string(ambient_dim_));
  }
  if (!contains(p)) throw MembershipError(std::string(what) + " is not in the complex");
}

std::optional<std::size_t> CubicalComplex::index_of(const Cube& c) const {
  for (std::size_t i = 0; i < cubes_.size(); ++i) {
    if (cubes_[i] == c) return i;
  }
  return std::nullopt;
}

std::vector<std::size_t> cells_containing(const CubicalComplex& complex,
                                          std::span<const double> x) {
  complex.require_member(x);
  std::vector<std::size_t> r;
  for (std::size_t i = 0; i < complex.size(); ++i) {
    if (complex.cube(i).contains(x)) r.push_back(i);
  }
  return r;
}

// ---------------------------------------------------------------------------
// Link condition

namespace {

std::vector<std::vector<int>> vertices_of(const Cube& c) {
  std::vector<std::vector<int>> out;
  const std::size_t n = c.axes.size();
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    auto v = c.base;
    for (std::size_t k = 0; k < n; ++k) {
      if (mask & (std::size_t{1} << k)) v[c.axes[k]] += 1;
    }
    out.push_back(std::move(v));
  }
  return out;
}

// Edge from v in direction sign * e_axis lies in c.
bool cube_has_edge(const Cube& c, const std::vector<int>& v, int axis, int sign) {
  if (!c.is_free(axis)) return false;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] < c.base[i] || v[i] > c.base[i] + (c.is_free(int(i)) ? 1 : 0)) return false;
  }
  const int w = v[axis] + sign;
  return w >= c.base[axis] && w <= c.base[axis] + 1;
}

}  // namespace

LinkReport check_link_condition(const CubicalComplex& complex) {
  std::set<std::vector<int>> verts;
  for (const auto& c : complex.cubes()) {
    for (auto& v : vertices_of(c)) verts.insert(std::move(v));
  }
  const int n = static_cast<int>(complex.ambient_dim());
  for (const auto& v : verts) {
    struct Edge {
      int code;
      std::vector<std::size_t> cubes;  // cubes containing the edge
    };
    std::vector<Edge> edges;
    for (int axis = 0; axis < n; ++axis) {
      for (int sign : {-1, 1}) {
        Edge e{sign * (axis + 1), {}};
        for (std::size_t i = 0; i < complex.size(); ++i) {
          if (cube_has_edge(complex.cube(i), v, axis, sign)) e.cubes.push_back(i);
        }
        if (!e.cubes.empty()) edges.push_back(std::move(e));
      }
    }
    auto common = [&](const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
      std::vector<std::size_t> r;
      std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r));
      return r;
    };
    // Pairwise "span a square" relation; a cube containing both edges contains that square.
    const std::size_t m = edges.size();
    std::vector<std::vector<char>> square(m, std::vector<char>(m, 0));
    for (std::size_t i = 0; i < m; ++i) {
      for (std::size_t j = i + 1; j < m; ++j) {
        square[i][j] = square[j][i] = !common(edges[i].cubes, edges[j].cubes).empty();
      }
    }
    // Backtrack over cliques of size >= 3; a clique must share a cube.
    std::optional<LinkViolation> bad;
    std::vector<std::size_t> clique;
    std::function<void(std::size_t, const std::vector<std::size_t>&)> extend =
        [&](std::size_t start, const std::vector<std::size_t>& shared) {
          for (std::size_t j = start; j < m && !bad; ++j) {
            bool ok = true;
            for (std::size_t c : clique) ok = ok && square[c][j];
            if (!ok) continue;
            auto next = clique.empty() ? edges[j].cubes : common(shared, edges[j].cubes);
            clique.push_back(j);
            if (clique.size() >= 3 && next.empty()) {
              LinkViolation viol{v, {}};
              for (std::size_t c : clique) viol.edges.push_back(edges[c].code);
              bad = viol;
            } else {
              extend(j + 1, next);
            }
            clique.pop_back();
          }
        };
    extend(0, {});
    if (bad) return {false, bad};
  }
  return {true, std::nullopt};
}

// ---------------------------------------------------------------------------
// Simple connectivity

std::string to_string(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    default: return "unknown";
  }
}

std::vector<Cube> faces_of(const Cube& cube) {
  std::vector<Cube> out;
  const std::size_t n = cube.axes.size();
  std::size_t total = 1;
  for (std::size_t k = 0; k < n; ++k) total *= 3;
  for (std::size_t code = 0; code < total; ++code) {
    Cube f;
    f.base = cube.base;
    std::size_t c = code;
    for (std::size_t k = 0; k < n; ++k, c /= 3) {
      const int a = cube.axes[k];
      switch (c % 3) {
        case 0: f.axes.push_back(a); break;
        case 1: break;
        case 2: f.base[a] += 1; break;
      }
    }
    out.push_back(std::move(f));
  }
  return out;
}

long euler_characteristic(const CubicalComplex& complex) {
  std::set<Cube> faces;
  for (const auto& c : complex.cubes()) {
    for (auto& f : faces_of(c)) faces.insert(std::move(f));
  }
  long chi = 0;
  for (const auto& f : faces) chi += (f.dim() % 2 == 0) ? 1 : -1;
  return chi;
}

Tristate check_simply_connected(const CubicalComplex& complex) {
  if (core_certifies_cat0(complex)) return Tristate::yes;
  // Connected graphs and connected subcomplexes of the plane have free
  // fundamental group of rank 1 - chi.
  if (complex.dim() <= 1 || complex.ambient_dim() <= 2) {
    return euler_characteristic(complex) == 1 ? Tristate::yes : Tristate::no;
  }
  return Tristate::unknown;
}

}  // namespace cubeopt
