#pragma once

#include <array>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "common.hpp"

namespace plsplit {

/// Face gluing of one tetrahedron face. `tet < 0` marks a boundary face.
struct Gluing {
  int tet = -1;
  Perm4 perm;  // maps this tet's vertex labels to the partner's
  bool boundary() const { return tet < 0; }
  friend bool operator==(const Gluing&, const Gluing&) = default;
};

/// Identifies a tetrahedron of a (possibly infinite) periodic complex.
struct GlobalTet {
  long block = 0;
  int local = 0;
  friend auto operator<=>(const GlobalTet&, const GlobalTet&) = default;
};

/// Per-tetrahedron gluing table: face f of tet t.
using GluingTable = std::vector<std::array<Gluing, 4>>;

/// A finite complex of glued tetrahedra with its skeleta.
///
/// Immutable after construction. Construction validates involutivity and
/// computes vertex, edge and face classes as equivalence classes of
/// tetrahedron corners under the gluing maps.
class Triangulation {
 public:
  Triangulation() = default;
  explicit Triangulation(GluingTable gluings, std::vector<GlobalTet> origin = {});

  int size() const { return static_cast<int>(gluings_.size()); }
  const Gluing& gluing(int tet, int face) const { return gluings_[tet][face]; }
  const GluingTable& gluings() const { return gluings_; }

  int num_vertices() const { return num_vertices_; }
  int num_edges() const { return static_cast<int>(edge_reps_.size()); }
  int num_faces() const { return static_cast<int>(face_reps_.size()); }
  int num_boundary_faces() const;

  int vertex_class(int tet, int v) const { return vertex_class_[tet][v]; }
  int edge_class(int tet, int e) const { return edge_class_[tet][e]; }
  /// +1 if the tet edge, oriented from its lower to its higher label, agrees
  /// with the direction of the class representative; -1 otherwise.
  int edge_direction(int tet, int e) const { return edge_dir_[tet][e]; }
  int face_class(int tet, int f) const { return face_class_[tet][f]; }

  /// Representative (tet, local edge) of an edge class.
  std::array<int, 2> edge_rep(int edge_class) const { return edge_reps_[edge_class]; }
  /// Representative (tet, local face) of a face class.
  std::array<int, 2> face_rep(int face_class) const { return face_reps_[face_class]; }
  /// Maps tet-local labels of the face (tet, f) to labels of the face's representative tet.
  Perm4 face_to_rep(int tet, int f) const { return face_to_rep_[tet][f]; }

  /// Sorted distinct tets containing the vertex class.
  const std::vector<int>& vertex_star(int vertex_class) const { return vertex_stars_[vertex_class]; }
  /// Sorted distinct tets containing the edge class.
  const std::vector<int>& edge_star(int edge_class) const { return edge_stars_[edge_class]; }
  /// Number of tet-edges in the class (degree counted with multiplicity).
  int edge_degree(int edge_class) const { return edge_degrees_[edge_class]; }

  bool orientable() const { return orientation_.has_value(); }
  const std::optional<std::vector<int>>& orientation() const { return orientation_; }

  const std::vector<GlobalTet>& origin() const { return origin_; }
  /// Window index of a global tet, or -1.
  int find_global(const GlobalTet& g) const;

  /// Euler characteristic V - E + F - T of the cell structure.
  long euler_characteristic() const {
    return static_cast<long>(num_vertices_) - num_edges() + num_faces() - size();
  }

  friend bool operator==(const Triangulation& a, const Triangulation& b) { return a.gluings_ == b.gluings_; }

 private:
  void validate() const;
  void build_skeleta();
  void build_orientation();

  GluingTable gluings_;
  std::vector<GlobalTet> origin_;
  int num_vertices_ = 0;
  std::vector<std::array<int, 4>> vertex_class_;
  std::vector<std::array<int, 6>> edge_class_;
  std::vector<std::array<int, 6>> edge_dir_;
  std::vector<std::array<int, 4>> face_class_;
  std::vector<std::array<Perm4, 4>> face_to_rep_;
  std::vector<std::array<int, 2>> edge_reps_;
  std::vector<std::array<int, 2>> face_reps_;
  std::vector<std::vector<int>> vertex_stars_;
  std::vector<std::vector<int>> edge_stars_;
  std::vector<int> edge_degrees_;
  std::optional<std::vector<int>> orientation_;
};

/// Glues face `face` of `tet` to `partner` via `perm`, writing both directions.
void glue(GluingTable& table, int tet, int face, int partner, Perm4 perm);

/// Parses the `.tri` text format. Errors carry a line-anchored diagnostic.
Triangulation parse_tri(std::istream& in);
Triangulation parse_tri_string(const std::string& text);
/// Emits the `.tri` text format; parse_tri(emit_tri(T)) == T.
std::string emit_tri(const Triangulation& tri);

}  // namespace plsplit
