#pragma once

#include <functional>
#include <vector>

#include "fixtures.hpp"
#include "normal.hpp"

namespace plsplit {

/// A normal curve on an ordered surface: arc counts per triangle at each of
/// its corners, corners listed in increasing key order.
struct BaseCurve {
  std::vector<std::array<long, 3>> corners;
};

/// Boundary of a regular neighbourhood of a vertex set of the base.
BaseCurve region_boundary(const OrderedSurface& base, const std::function<bool(long key)>& in_region);

/// Disk counts in one prism tet over a base triangle, given the base vertex
/// of each tet vertex and the arc counts at each base vertex.
TetCoords vertical_tet_coords(const std::array<long, 4>& base_vertex, const std::array<long, 3>& triangle,
                              const std::array<long, 3>& corners);

/// The preimage of a base curve: a vertical (saturated) surface.
NormalCoordinates vertical_surface(const ProductComplex& pc, const BaseCurve& curve);
/// Level surface separating levels `layer` and `layer + 1` over the whole base.
NormalCoordinates horizontal_surface(const ProductComplex& pc, int layer);

/// Vertical surface over the boundary of a base vertex region, on a window
/// of the periodic product. Vertices are (block, base local).
NormalCoordinates vertical_surface_on_window(const PeriodicProduct& pp, const Triangulation& window,
                                             const std::function<bool(long block, int local)>& in_region);
/// Level surface over every window tet of the given layer.
NormalCoordinates horizontal_surface_on_window(const PeriodicProduct& pp, const Triangulation& window, int layer);

/// Splits a surface into its connected components.
std::vector<NormalCoordinates> surface_components(const Triangulation& tri, const NormalCoordinates& c);

}  // namespace plsplit
