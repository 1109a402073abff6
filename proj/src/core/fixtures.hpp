#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "complex.hpp"
#include "lazy.hpp"

namespace plsplit {

Triangulation single_tet();
/// Two tets glued along all four faces by the identity (4 vertices).
Triangulation s3_double();
/// Two tets forming a one-vertex triangulation of the 3-sphere.
Triangulation s3_one_vertex();

/// Glues tets whose faces carry equal vertex-key triples. Keys inside one
/// tet must be distinct. With `wrap`, boundary faces whose wrapped keys
/// equal another boundary face's keys are glued as well.
GluingTable glue_by_keys(const std::vector<std::array<long, 4>>& tets,
                         const std::function<long(long)>& wrap = {});

/// A triangulated surface whose vertex keys are totally ordered; each
/// triangle lists its three distinct keys.
struct OrderedSurface {
  std::vector<std::array<long, 3>> triangles;
  std::vector<long> vertices() const;
  /// Throws InvalidArgument unless every edge lies in at most two triangles
  /// and no two triangles share their vertex set.
  void check_simplicial() const;
  long euler_characteristic() const;
  int boundary_edges() const;
};

/// n x m square grid on a torus, each square split along its rising diagonal.
OrderedSurface torus_grid(int n, int m);
/// Closed orientable surface of genus g >= 1 from a (g*s) x (g*s) grid whose
/// boundary is glued by the word a1 b1 a1^-1 b1^-1 ... with segments of length s.
OrderedSurface genus_surface(int g, int s = 3);

/// S^1 x surface with `layers` layers of Freudenthal prisms.
struct ProductComplex {
  OrderedSurface base;
  int layers = 1;
  Triangulation tri;
  std::vector<int> tet_triangle;            // base triangle under each tet
  std::vector<int> tet_layer;
  std::vector<std::array<long, 4>> keys;   // vertex keys: base_key * (layers + 1) + level
  long base_key(long key) const { return key / (layers + 1); }
  int level(long key) const { return static_cast<int>(key % (layers + 1)); }
};

ProductComplex product_complex(const OrderedSurface& base, int layers);

/// A surface invariant under translation by one block. Vertices are
/// (block offset, local id) pairs; block k owns the triangles listed with
/// offsets relative to k. Offsets must lie in {-1, 0, 1}.
struct PeriodicSurface {
  int locals = 0;
  std::vector<std::array<std::array<int, 2>, 3>> triangles;  // (offset, local)
  long key(long block, int local) const { return block * locals + local; }
};

/// Strip R x [0, h] (or R x S^1 when `wrap_vertical`) with `width` columns per block.
PeriodicSurface periodic_strip(int width, int height, bool wrap_vertical);

/// Strip R x [0, h] whose top boundary carries, per block, a gap of one
/// unit followed by four segments of length p glued as a b a^-1 b^-1.
/// The result has one handle per block, hence infinite genus.
PeriodicSurface periodic_handle_strip(int p, int height);

/// S^1 x (periodic surface) as a periodic generator.
struct PeriodicProduct {
  PeriodicSurface base;
  int layers = 1;
  PeriodicSpec spec;
  std::vector<int> tet_triangle;                       // per local tet
  std::vector<std::array<std::array<int, 3>, 4>> tet_vertices;  // per local tet: (offset, base local, level)
};

PeriodicProduct periodic_product(const PeriodicSurface& base, int layers);

}  // namespace plsplit
