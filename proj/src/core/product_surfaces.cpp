#include "product_surfaces.hpp"

#include <algorithm>
#include <map>

namespace plsplit {

namespace {

// Corner cut off by the neighbourhood boundary of a region in a triangle
// whose membership flags are given, or -1.
int region_corner(const std::array<bool, 3>& in) {
  int k = static_cast<int>(in[0]) + in[1] + in[2];
  for (int i = 0; i < 3; ++i) {
    if (k == 1 && in[i]) return i;
    if (k == 2 && !in[i]) return i;
  }
  return -1;
}

TetCoords level_tet_coords(const std::array<int, 4>& level, int layer) {
  TetCoords c{};
  std::vector<int> upper, lower;
  for (int i = 0; i < 4; ++i) (level[i] == layer + 1 ? upper : lower).push_back(i);
  if (upper.size() == 1) c[upper[0]] = 1;
  else if (lower.size() == 1) c[lower[0]] = 1;
  else c[kQuad0 + quad_type_of_pair(upper[0], upper[1])] = 1;
  return c;
}

std::array<long, 3> sorted_triangle(std::array<long, 3> t) {
  std::sort(t.begin(), t.end());
  return t;
}

}  // namespace

BaseCurve region_boundary(const OrderedSurface& base, const std::function<bool(long key)>& in_region) {
  BaseCurve curve;
  for (const auto& raw : base.triangles) {
    auto t = sorted_triangle(raw);
    std::array<long, 3> corners{};
    int c = region_corner({in_region(t[0]), in_region(t[1]), in_region(t[2])});
    if (c >= 0) corners[c] = 1;
    curve.corners.push_back(corners);
  }
  return curve;
}

TetCoords vertical_tet_coords(const std::array<long, 4>& base_vertex, const std::array<long, 3>& triangle,
                              const std::array<long, 3>& corners) {
  TetCoords c{};
  for (int i = 0; i < 3; ++i) {
    if (corners[i] == 0) continue;
    std::vector<int> over;
    for (int v = 0; v < 4; ++v)
      if (base_vertex[v] == triangle[i]) over.push_back(v);
    if (over.size() == 1) c[over[0]] += corners[i];
    else if (over.size() == 2) c[kQuad0 + quad_type_of_pair(over[0], over[1])] += corners[i];
    else throw Error(ErrorCode::InvalidArgument, "tet does not lie over the triangle");
  }
  return c;
}

NormalCoordinates vertical_surface(const ProductComplex& pc, const BaseCurve& curve) {
  if (curve.corners.size() != pc.base.triangles.size())
    throw Error(ErrorCode::InvalidArgument, "base curve does not match the base surface");
  NormalCoordinates out(pc.tri.size());
  for (int t = 0; t < pc.tri.size(); ++t) {
    int ti = pc.tet_triangle[t];
    std::array<long, 4> bv{};
    for (int i = 0; i < 4; ++i) bv[i] = pc.base_key(pc.keys[t][i]);
    out.tets[t] = vertical_tet_coords(bv, sorted_triangle(pc.base.triangles[ti]), curve.corners[ti]);
  }
  return out;
}

NormalCoordinates horizontal_surface(const ProductComplex& pc, int layer) {
  if (layer < 0 || layer >= pc.layers) throw Error(ErrorCode::InvalidArgument, "layer out of range");
  NormalCoordinates out(pc.tri.size());
  for (int t = 0; t < pc.tri.size(); ++t) {
    if (pc.tet_layer[t] != layer) continue;
    std::array<int, 4> lv{};
    for (int i = 0; i < 4; ++i) lv[i] = pc.level(pc.keys[t][i]);
    out.tets[t] = level_tet_coords(lv, layer);
  }
  return out;
}

NormalCoordinates vertical_surface_on_window(const PeriodicProduct& pp, const Triangulation& window,
                                             const std::function<bool(long block, int local)>& in_region) {
  if (window.origin().size() != static_cast<size_t>(window.size()))
    throw Error(ErrorCode::InvalidArgument, "window has no block origins");
  const long locals = pp.base.locals;
  NormalCoordinates out(window.size());
  for (int t = 0; t < window.size(); ++t) {
    const GlobalTet& g = window.origin()[t];
    const auto& verts = pp.tet_vertices.at(g.local);
    std::array<long, 4> bv{};
    for (int i = 0; i < 4; ++i) bv[i] = (g.block + verts[i][0]) * locals + verts[i][1];
    std::array<long, 3> tri{};
    std::vector<long> distinct(bv.begin(), bv.end());
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::copy(distinct.begin(), distinct.end(), tri.begin());
    std::array<bool, 3> in{};
    for (int i = 0; i < 3; ++i) {
      long key = tri[i];
      long block = key >= 0 ? key / locals : -((-key + locals - 1) / locals);
      in[i] = in_region(block, static_cast<int>(key - block * locals));
    }
    std::array<long, 3> corners{};
    int c = region_corner(in);
    if (c >= 0) corners[c] = 1;
    out.tets[t] = vertical_tet_coords(bv, tri, corners);
  }
  return out;
}

NormalCoordinates horizontal_surface_on_window(const PeriodicProduct& pp, const Triangulation& window, int layer) {
  if (layer < 0 || layer >= pp.layers) throw Error(ErrorCode::InvalidArgument, "layer out of range");
  if (window.origin().size() != static_cast<size_t>(window.size()))
    throw Error(ErrorCode::InvalidArgument, "window has no block origins");
  NormalCoordinates out(window.size());
  for (int t = 0; t < window.size(); ++t) {
    const auto& verts = pp.tet_vertices.at(window.origin()[t].local);
    std::array<int, 4> lv{};
    bool in_layer = true;
    for (int i = 0; i < 4; ++i) {
      lv[i] = verts[i][2];
      if (lv[i] != layer && lv[i] != layer + 1) in_layer = false;
    }
    if (in_layer) out.tets[t] = level_tet_coords(lv, layer);
  }
  return out;
}

std::vector<NormalCoordinates> surface_components(const Triangulation& tri, const NormalCoordinates& c) {
  auto s = realize_surface(tri, c);
  auto r = analyze_surface(s);
  std::vector<NormalCoordinates> out;
  for (int i = 0; i < static_cast<int>(r.components.size()); ++i) out.push_back(component_coordinates(s, r, i));
  return out;
}

}  // namespace plsplit
