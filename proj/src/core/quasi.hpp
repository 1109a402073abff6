#pragma once

#include <array>
#include <optional>
#include <vector>

#include "complex.hpp"

namespace plsplit {

/// A point given relative to a tetrahedron by nonnegative integer
/// barycentric weights. The nonzero weights name its carrier face.
struct PointLocus {
  int tet = 0;
  std::array<int, 4> bary{1, 1, 1, 1};
};

/// A closed cell of the window: dimension 0..3 and class id
/// (vertex/edge/face class, or tet index for dimension 3).
struct Cell {
  int dim = 3;
  int id = 0;
};

/// Sorted tets whose closure contains the point.
std::vector<int> point_star(const Triangulation& tri, const PointLocus& p);
/// Sorted tets containing the closed cell.
std::vector<int> cell_star(const Triangulation& tri, const Cell& c);

/// Combinatorial distance between tets: length of the shortest chain of
/// tets in which consecutive members share a point. -1 if unreachable.
std::vector<int> tet_distances(const Triangulation& tri, const std::vector<int>& sources);

/// Minimal size of a chain of closed tets joining x to y, minus one.
int quasi_distance(const Triangulation& tri, const PointLocus& x, const PointLocus& y);

/// Minimal number of closed tets covering every listed point and cell.
int subset_size(const Triangulation& tri, const std::vector<PointLocus>& points,
                const std::vector<Cell>& cells = {});

/// Minimum hitting set size over the given tet stars (exact search).
int min_hitting_set(const std::vector<std::vector<int>>& stars);

struct GeometryAudit {
  int tets = 0;
  int vertices = 0;
  int edges = 0;
  int faces = 0;
  int boundary_faces = 0;
  int max_vertex_degree = 0;  // distinct tets containing one vertex class
  bool orientable = false;
  std::optional<int> declared_bound;
  bool bound_ok = true;
};

/// Reports bounded-geometry data. Throws BoundViolated when a declared
/// bound is given and exceeded.
GeometryAudit geometry_audit(const Triangulation& tri, std::optional<int> declared_bound = {});

}  // namespace plsplit
