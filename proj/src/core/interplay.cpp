#include "interplay.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <numeric>
#include <set>

#include "quasi.hpp"
#include "union_find.hpp"

namespace plsplit {

// ---------------------------------------------------------------------------
// Homology bases and dual paths.

SurfaceBasis surface_basis(const RealizedSurface& s, const SurfaceReport& r, int component) {
  SurfaceBasis basis;
  basis.component = component;
  const auto& comp = r.components.at(component);
  if (comp.boundary_circles > 0) return basis;
  std::vector<int> arcs;
  for (int a = 0; a < static_cast<int>(s.arcs.size()); ++a)
    if (r.disk_component[s.arcs[a].disks[0]] == component) arcs.push_back(a);
  // primal spanning tree over crossings
  std::map<int, std::vector<int>> incident;
  for (int a : arcs) {
    incident[s.arcs[a].ends[0]].push_back(a);
    if (s.arcs[a].ends[1] != s.arcs[a].ends[0]) incident[s.arcs[a].ends[1]].push_back(a);
  }
  if (incident.empty()) return basis;
  std::map<int, int> parent_arc;  // crossing -> arc to its parent (-1 at the root)
  std::set<int> tree;
  {
    int root = incident.begin()->first;
    parent_arc[root] = -1;
    std::deque<int> queue{root};
    while (!queue.empty()) {
      int x = queue.front();
      queue.pop_front();
      for (int a : incident[x]) {
        int y = s.arcs[a].ends[0] == x ? s.arcs[a].ends[1] : s.arcs[a].ends[0];
        if (parent_arc.count(y)) continue;
        parent_arc[y] = a;
        tree.insert(a);
        queue.push_back(y);
      }
    }
  }
  // dual spanning tree over disks through the remaining arcs
  std::set<int> cotree;
  {
    std::map<int, std::vector<int>> disk_arcs;
    for (int a : arcs)
      if (!tree.count(a) && s.arcs[a].disks[1] >= 0) {
        disk_arcs[s.arcs[a].disks[0]].push_back(a);
        disk_arcs[s.arcs[a].disks[1]].push_back(a);
      }
    std::set<int> seen{comp.disks.front()};
    std::deque<int> queue{comp.disks.front()};
    while (!queue.empty()) {
      int d = queue.front();
      queue.pop_front();
      for (int a : disk_arcs[d]) {
        int e = s.arcs[a].disks[0] == d ? s.arcs[a].disks[1] : s.arcs[a].disks[0];
        if (seen.count(e)) continue;
        seen.insert(e);
        cotree.insert(a);
        queue.push_back(e);
      }
    }
  }
  auto path_to_root = [&](int x) {
    std::vector<std::pair<int, int>> steps;  // (arc, coefficient walking toward the root)
    while (parent_arc.at(x) >= 0) {
      int a = parent_arc.at(x);
      int y = s.arcs[a].ends[0] == x ? s.arcs[a].ends[1] : s.arcs[a].ends[0];
      steps.push_back({a, s.arcs[a].ends[0] == x ? 1 : -1});
      x = y;
    }
    return steps;
  };
  for (int a : arcs) {
    if (tree.count(a) || cotree.count(a)) continue;
    std::map<int, int> cycle;
    cycle[a] += 1;
    // close up: ends[1] -> root -> ends[0]
    for (auto [arc, c] : path_to_root(s.arcs[a].ends[1])) cycle[arc] += c;
    for (auto [arc, c] : path_to_root(s.arcs[a].ends[0])) cycle[arc] -= c;
    for (auto it = cycle.begin(); it != cycle.end();)
      it = it->second == 0 ? cycle.erase(it) : std::next(it);
    basis.cycles.push_back(std::move(cycle));
  }
  return basis;
}

std::vector<long> dual_path_class(const RealizedSurface& s, const SurfaceReport& r, const SurfaceBasis& basis,
                                  const std::vector<DualStep>& path) {
  std::vector<long> out(basis.cycles.size(), 0);
  for (const auto& step : path) {
    const auto& arc = s.arcs.at(step.arc);
    int d = arc.disks[step.side];
    int delta = arc.dirs[step.side] * (r.disk_side[d] ? -1 : 1);
    for (size_t k = 0; k < basis.cycles.size(); ++k) {
      auto it = basis.cycles[k].find(step.arc);
      if (it != basis.cycles[k].end()) out[k] += static_cast<long>(it->second) * delta;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Intersections.

namespace {

struct Point2 {
  double x = 0.0, y = 0.0;
};

double logistic(double p) { return 1.0 / (1.0 + std::exp(-p)); }

// Endpoints of an arc in the standard triangle of its face representative.
std::array<Point2, 2> arc_segment(const Triangulation& tri, const RealizedSurface& s,
                                  const std::vector<double>& params, int arc_id) {
  const auto& arc = s.arcs[arc_id];
  auto [rt, rf] = tri.face_rep(arc.face_class);
  auto fv = face_vertices(rf);
  auto corner_point = [&](int v) {
    if (v == fv[0]) return Point2{0, 0};
    if (v == fv[1]) return Point2{1, 0};
    return Point2{0, 1};
  };
  std::array<int, 2> others{};
  int k = 0;
  for (int v : fv)
    if (v != arc.corner) others[k++] = v;
  std::array<int, 2> edges{edge_index(arc.corner, others[0]), edge_index(arc.corner, others[1])};
  if (edges[1] < edges[0]) std::swap(edges[0], edges[1]);
  std::array<Point2, 2> out{};
  for (int i = 0; i < 2; ++i) {
    int e = edges[i];
    int u = kEdgeVertices[e][0], w = kEdgeVertices[e][1];
    double lambda = logistic(tri.edge_direction(rt, e) * params[arc.ends[i]]);
    Point2 pu = corner_point(u), pw = corner_point(w);
    out[i] = {pu.x + lambda * (pw.x - pu.x), pu.y + lambda * (pw.y - pu.y)};
  }
  return out;
}

// Proper crossing of two segments: fractions along each, or nullopt.
std::optional<std::array<double, 2>> cross(const std::array<Point2, 2>& p, const std::array<Point2, 2>& q) {
  double rx = p[1].x - p[0].x, ry = p[1].y - p[0].y;
  double sx = q[1].x - q[0].x, sy = q[1].y - q[0].y;
  double den = rx * sy - ry * sx;
  if (std::abs(den) < 1e-15) return std::nullopt;
  double qpx = q[0].x - p[0].x, qpy = q[0].y - p[0].y;
  double t = (qpx * sy - qpy * sx) / den;
  double u = (qpx * ry - qpy * rx) / den;
  if (t <= 0.0 || t >= 1.0 || u <= 0.0 || u >= 1.0) return std::nullopt;
  return std::array<double, 2>{t, u};
}

IntersectionPattern intersect_shifted(const RealizedSurface& a, const RealizedSurface& b,
                                      const std::vector<int>& shift_sign, int dir, IntersectionPattern p);

}  // namespace

IntersectionPattern intersect_surfaces(const RealizedSurface& a, const RealizedSurface& b) {
  if (!a.tri || !b.tri || !(*a.tri == *b.tri))
    throw Error(ErrorCode::InvalidArgument, "surfaces live on different complexes");
  const Triangulation& tri = *a.tri;
  IntersectionPattern p;
  p.report_a = analyze_surface(a);
  p.report_b = analyze_surface(b);
  for (int c = 0; c < static_cast<int>(p.report_a.components.size()); ++c)
    p.bases_a.push_back(surface_basis(a, p.report_a, c));
  for (int c = 0; c < static_cast<int>(p.report_b.components.size()); ++c)
    p.bases_b.push_back(surface_basis(b, p.report_b, c));
  if (a.coords == b.coords) {
    p.equal = true;
    return p;
  }
  // Tied crossings of B move toward one side of B, so coinciding sheets
  // separate; a one-sided B moves along the edge direction only.
  std::vector<int> shift_sign(b.num_crossings(), 1);
  bool two_sided = true;
  try {
    auto front = front_sides(b);
    for (int d = 0; d < static_cast<int>(b.disks.size()); ++d) {
      const Disk& disk = b.disks[d];
      for (int e = 0; e < 6; ++e) {
        int x = b.disk_crossing[d][e];
        if (x < 0) continue;
        int v = kEdgeVertices[e][1];
        bool corner_v = disk.type < kQuad0 ? disk.type == v : quad_zero_side(disk.type - kQuad0, v);
        bool toward_v = corner_v == (front[d] == 0);
        shift_sign[x] = (toward_v ? 1 : -1) * tri.edge_direction(disk.tet, e);
      }
    }
  } catch (const Error& err) {
    if (err.code() != ErrorCode::OneSided) throw;
    two_sided = false;
  }
  // Both pushes are tried; the one with fewer circles, then fewer nodes, wins.
  std::optional<IntersectionPattern> best;
  std::optional<Error> failure;
  for (int dir : two_sided ? std::vector<int>{1, -1} : std::vector<int>{1}) {
    try {
      IntersectionPattern cand = intersect_shifted(a, b, shift_sign, dir, p);
      if (!best || cand.circles.size() < best->circles.size() ||
          (cand.circles.size() == best->circles.size() && cand.nodes.size() < best->nodes.size()))
        best = std::move(cand);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::NotTransverse) throw;
      if (!failure) failure = err;
    }
  }
  if (!best) throw *failure;
  return std::move(*best);
}

namespace {

IntersectionPattern intersect_shifted(const RealizedSurface& a, const RealizedSurface& b,
                                      const std::vector<int>& shift_sign, int dir, IntersectionPattern p) {
  const Triangulation& tri = *a.tri;
  std::vector<double> bparams = b.params;
  for (int e = 0; e < tri.num_edges(); ++e) {
    for (int k = b.crossing_offset[e]; k < b.crossing_offset[e + 1]; ++k) {
      bool tie = false;
      for (int j = a.crossing_offset[e]; j < a.crossing_offset[e + 1]; ++j)
        if (std::abs(a.params[j] - bparams[k]) < 1e-12) tie = true;
      if (tie) {
        bparams[k] += dir * shift_sign[k] * 1e-6 * (k - b.crossing_offset[e] + 1);
        ++p.perturbed;
      }
    }
  }
  p.params_b = bparams;
  std::map<int, std::vector<int>> arcs_a, arcs_b;
  for (int i = 0; i < static_cast<int>(a.arcs.size()); ++i) arcs_a[a.arcs[i].face_class].push_back(i);
  for (int i = 0; i < static_cast<int>(b.arcs.size()); ++i) arcs_b[b.arcs[i].face_class].push_back(i);
  std::map<std::array<int, 2>, int> node_id;
  for (const auto& [fc, list_a] : arcs_a) {
    auto it = arcs_b.find(fc);
    if (it == arcs_b.end()) continue;
    for (int ia : list_a) {
      auto sa = arc_segment(tri, a, a.params, ia);
      for (int ib : it->second) {
        auto sb = arc_segment(tri, b, bparams, ib);
        auto x = cross(sa, sb);
        if (!x) continue;
        node_id[{ia, ib}] = static_cast<int>(p.nodes.size());
        p.nodes.push_back(IntersectionNode{fc, ia, ib, (*x)[0], (*x)[1]});
      }
    }
  }
  // chords, with the tet face through which each end is reached
  struct ChordEnd {
    int node, face;
  };
  struct RawChord {
    int tet, da, db;
    ChordEnd ends[2];
  };
  std::vector<RawChord> chords;
  std::map<int, std::vector<int>> disks_a, disks_b;
  for (int d = 0; d < static_cast<int>(a.disks.size()); ++d) disks_a[a.disks[d].tet].push_back(d);
  for (int d = 0; d < static_cast<int>(b.disks.size()); ++d) disks_b[b.disks[d].tet].push_back(d);
  for (const auto& [t, list_a] : disks_a) {
    auto it = disks_b.find(t);
    if (it == disks_b.end()) continue;
    for (int da : list_a)
      for (int db : it->second) {
        std::vector<ChordEnd> found;
        for (int f = 0; f < 4; ++f) {
          int xa = a.disk_arc[da][f], xb = b.disk_arc[db][f];
          if (xa < 0 || xb < 0) continue;
          auto n = node_id.find({xa, xb});
          if (n != node_id.end()) found.push_back({n->second, f});
        }
        if (found.empty()) continue;
        if (found.size() != 2)
          throw Error(ErrorCode::NotTransverse, "disks meet in " + std::to_string(found.size()) +
                                                    " boundary points in tet " + std::to_string(t));
        chords.push_back(RawChord{t, da, db, {found[0], found[1]}});
      }
  }
  std::vector<std::vector<int>> at_node(p.nodes.size());
  for (int c = 0; c < static_cast<int>(chords.size()); ++c)
    for (const auto& end : chords[c].ends) at_node[end.node].push_back(c);
  for (const auto& list : at_node)
    if (list.size() > 2) throw Error(ErrorCode::NotTransverse, "more than two chords meet at a point");
  std::vector<bool> used(chords.size(), false);
  auto trace = [&](int start_chord, int start_end) {
    IntersectionCircle circle;
    int c = start_chord, i_from = start_end;
    while (true) {
      used[c] = true;
      const auto& rc = chords[c];
      const ChordEnd& in = rc.ends[i_from];
      const ChordEnd& out = rc.ends[1 - i_from];
      circle.chords.push_back({rc.tet, rc.da, rc.db, in.node, out.node, in.face, out.face});
      if (in.node == out.node) break;
      int next = -1;
      for (int o : at_node[out.node])
        if (o != c) next = o;
      if (next < 0) {
        circle.closed = false;
        break;
      }
      if (used[next]) break;
      c = next;
      const auto& nc = chords[c];
      i_from = (nc.ends[0].node == out.node && !(nc.ends[1].node == out.node && nc.ends[0].face == out.face)) ? 0 : 1;
    }
    return circle;
  };
  auto finish = [&](IntersectionCircle circle) {
    const auto& first = circle.chords.front();
    circle.component_a = p.report_a.disk_component[first.disk_a];
    circle.component_b = p.report_b.disk_component[first.disk_b];
    if (circle.closed) {
      std::vector<DualStep> path_a, path_b;
      const int m = static_cast<int>(circle.chords.size());
      for (int k = 0; k < m; ++k) {
        const auto& ch = circle.chords[k];
        const IntersectionNode& node = p.nodes[ch.to];
        path_a.push_back({node.arc_a, arc_side(a, node.arc_a, ch.disk_a, ch.face_to)});
        path_b.push_back({node.arc_b, arc_side(b, node.arc_b, ch.disk_b, ch.face_to)});
      }
      const auto& basis_a = p.bases_a[circle.component_a];
      const auto& basis_b = p.bases_b[circle.component_b];
      if (p.report_a.components[circle.component_a].boundary_circles == 0) {
        circle.class_a = dual_path_class(a, p.report_a, basis_a, path_a);
        circle.essential_a = std::any_of(circle.class_a.begin(), circle.class_a.end(), [](long x) { return x != 0; });
      }
      if (p.report_b.components[circle.component_b].boundary_circles == 0) {
        circle.class_b = dual_path_class(b, p.report_b, basis_b, path_b);
        circle.essential_b = std::any_of(circle.class_b.begin(), circle.class_b.end(), [](long x) { return x != 0; });
      }
    }
    p.circles.push_back(std::move(circle));
  };
  // open chains first, starting from their free ends
  for (int n = 0; n < static_cast<int>(p.nodes.size()); ++n)
    if (at_node[n].size() == 1 && !used[at_node[n][0]]) {
      int c = at_node[n][0];
      finish(trace(c, chords[c].ends[0].node == n ? 0 : 1));
    }
  for (int c = 0; c < static_cast<int>(chords.size()); ++c)
    if (!used[c]) finish(trace(c, 0));
  return p;
}

}  // namespace

// ---------------------------------------------------------------------------
// Special classes.

std::vector<long> normalize_class(std::vector<long> c) {
  long g = 0;
  for (long x : c) g = std::gcd(g, x < 0 ? -x : x);
  if (g == 0) return c;
  int sign = 0;
  for (long x : c)
    if (x != 0) {
      sign = x > 0 ? 1 : -1;
      break;
    }
  for (long& x : c) x = x / g * sign;
  return c;
}

SpecialClass special_class(const std::vector<IntersectionPattern>& patterns, const std::vector<bool>& side_a,
                           int component) {
  if (side_a.size() != patterns.size()) throw Error(ErrorCode::InvalidArgument, "one side flag per pattern expected");
  SpecialClass out;
  for (size_t i = 0; i < patterns.size(); ++i) {
    bool contributed = false;
    for (const auto& c : patterns[i].circles) {
      if (!c.closed) continue;
      int comp = side_a[i] ? c.component_a : c.component_b;
      bool essential = side_a[i] ? c.essential_a : c.essential_b;
      const auto& cls = side_a[i] ? c.class_a : c.class_b;
      if (comp != component || !essential || cls.empty()) continue;
      auto n = normalize_class(cls);
      if (std::find(out.seen.begin(), out.seen.end(), n) == out.seen.end()) out.seen.push_back(n);
      contributed = true;
    }
    if (contributed) ++out.witnesses;
  }
  if (out.seen.empty()) throw Error(ErrorCode::NoEssentialIntersections, "no essential intersection circle on the torus");
  out.curve_class = out.seen.front();
  if (out.seen.size() > 1) out.status = SpecialClass::Status::ConflictingWitnesses;
  return out;
}

// ---------------------------------------------------------------------------
// Seifert neighbourhoods.

namespace {

// The face containing two edges that share a vertex.
int face_between(int e1, int e2) {
  int mask = (1 << kEdgeVertices[e1][0]) | (1 << kEdgeVertices[e1][1]) | (1 << kEdgeVertices[e2][0]) |
             (1 << kEdgeVertices[e2][1]);
  for (int v = 0; v < 4; ++v)
    if (!(mask & (1 << v))) return v;
  return -1;
}

// Splits one surface along the intersection circles and records, per circle,
// the piece and front/back side of each of its two local halves.
struct SplitSide {
  std::vector<int> piece_of_half;  // circle * 2 + half -> piece
  int pieces = 0;
};

SplitSide split_along(const RealizedSurface& s, bool is_a, const IntersectionPattern& p,
                      std::vector<int>& node_index, std::vector<int>& seg_offset) {
  const int narcs = static_cast<int>(s.arcs.size());
  std::vector<std::vector<int>> on_arc(narcs);
  for (int n = 0; n < static_cast<int>(p.nodes.size()); ++n)
    on_arc[is_a ? p.nodes[n].arc_a : p.nodes[n].arc_b].push_back(n);
  node_index.assign(p.nodes.size(), 0);
  seg_offset.assign(narcs + 1, 0);
  for (int a = 0; a < narcs; ++a) {
    auto& list = on_arc[a];
    std::sort(list.begin(), list.end(), [&](int x, int y) {
      return is_a ? p.nodes[x].along_a < p.nodes[y].along_a : p.nodes[x].along_b < p.nodes[y].along_b;
    });
    for (int k = 0; k < static_cast<int>(list.size()); ++k) node_index[list[k]] = k;
    seg_offset[a + 1] = seg_offset[a] + static_cast<int>(list.size()) + 1;
  }
  UnionFind uf(seg_offset.back());
  // chords grouped by disk, ends keyed by (face, node)
  std::map<int, std::vector<std::array<int, 4>>> chords_in;  // disk -> (face_from, from, face_to, to)
  for (const auto& c : p.circles)
    for (const auto& ch : c.chords)
      chords_in[is_a ? ch.disk_a : ch.disk_b].push_back({ch.face_from, ch.from, ch.face_to, ch.to});
  for (int d = 0; d < static_cast<int>(s.disks.size()); ++d) {
    auto cycle = disk_cycle(s.disks[d].type);
    const int len = static_cast<int>(cycle.size());
    std::vector<int> seq;
    std::map<std::array<int, 2>, int> gap;  // (face, node) -> index of the segment before it in seq
    for (int i = 0; i < len; ++i) {
      int e1 = cycle[i], e2 = cycle[(i + 1) % len];
      int f = face_between(e1, e2);
      int arc = s.disk_arc[d][f];
      int m = static_cast<int>(on_arc[arc].size());
      int dir = s.disk_arc_dir[d][f];
      for (int k = 0; k <= m; ++k) {
        int seg = dir > 0 ? k : m - k;
        if (k > 0) {
          int node = on_arc[arc][dir > 0 ? k - 1 : m - k];
          gap[{f, node}] = static_cast<int>(seq.size()) - 1;
        }
        seq.push_back(seg_offset[arc] + seg);
      }
    }
    // corners of the disk join consecutive arcs
    const int L = static_cast<int>(seq.size());
    {
      int pos = 0;
      for (int i = 0; i < len; ++i) {
        int f = face_between(cycle[i], cycle[(i + 1) % len]);
        int m = static_cast<int>(on_arc[s.disk_arc[d][f]].size());
        pos += m + 1;
        uf.unite(seq[(pos - 1) % L], seq[pos % L]);
      }
    }
    for (const auto& ch : chords_in[d]) {
      auto g1 = gap.find({ch[0], ch[1]});
      auto g2 = gap.find({ch[2], ch[3]});
      if (g1 == gap.end() || g2 == gap.end())
        throw Error(ErrorCode::NonParallelCircles, "intersection chord does not end on its disk");
      int p1 = g1->second, p2 = g2->second;
      uf.unite(seq[p1], seq[(p2 + 1) % L]);
      uf.unite(seq[(p1 + 1) % L], seq[p2]);
    }
  }
  SplitSide out;
  auto labels = uf.labels(&out.pieces);
  for (const auto& c : p.circles) {
    int node = c.chords.front().to;
    int arc = is_a ? p.nodes[node].arc_a : p.nodes[node].arc_b;
    int k = node_index[node];
    out.piece_of_half.push_back(labels[seg_offset[arc] + k]);
    out.piece_of_half.push_back(labels[seg_offset[arc] + k + 1]);
  }
  return out;
}

// +1 or -1: side of point q relative to the directed segment.
int side_of(const std::array<Point2, 2>& seg, Point2 q) {
  double c = (seg[1].x - seg[0].x) * (q.y - seg[0].y) - (seg[1].y - seg[0].y) * (q.x - seg[0].x);
  return c > 0 ? 1 : -1;
}

Point2 rep_corner_point(const Triangulation& tri, int face_class, int v) {
  auto fv = face_vertices(tri.face_rep(face_class)[1]);
  if (v == fv[0]) return {0, 0};
  if (v == fv[1]) return {1, 0};
  return {0, 1};
}

// Whether the front side of the surface at an arc is the arc's corner side.
bool front_is_corner(const RealizedSurface& s, const std::vector<int>& front, int arc) {
  const auto& a = s.arcs[arc];
  int d = a.disks[0];
  bool kappa = cuts_toward_corner(s.disks[d].type, a.faces[0]);
  return kappa == (front[d] == 0);
}

}  // namespace

SeifertDatum seifert_neighborhood(const RealizedSurface& a, const RealizedSurface& b, const IntersectionPattern& p) {
  if (p.equal || p.circles.empty()) throw Error(ErrorCode::NonParallelCircles, "no intersection circles");
  std::vector<long> cls_a, cls_b;
  for (const auto& c : p.circles) {
    if (!c.closed || !c.essential_a || !c.essential_b || c.class_a.empty() || c.class_b.empty())
      throw Error(ErrorCode::NonParallelCircles, "intersection contains an open or inessential curve");
    auto na = normalize_class(c.class_a), nb = normalize_class(c.class_b);
    if (cls_a.empty()) {
      cls_a = na;
      cls_b = nb;
    } else if (na != cls_a || nb != cls_b) {
      throw Error(ErrorCode::NonParallelCircles, "intersection circles are not parallel");
    }
  }
  const int n = static_cast<int>(p.circles.size());
  std::vector<int> idx_a, off_a, idx_b, off_b;
  SplitSide sa = split_along(a, true, p, idx_a, off_a);
  SplitSide sb = split_along(b, false, p, idx_b, off_b);
  auto front_a = front_sides(a);
  auto front_b = front_sides(b);
  const Triangulation& tri = *a.tri;
  // side of A holding each B half, and side of B holding each A half (1 = front)
  std::vector<int> a_side_of_bhalf(2 * n), b_side_of_ahalf(2 * n);
  for (int i = 0; i < n; ++i) {
    const auto& node = p.nodes[p.circles[i].chords.front().to];
    auto seg_a = arc_segment(tri, a, a.params, node.arc_a);
    auto seg_b = arc_segment(tri, b, p.params_b, node.arc_b);
    Point2 corner_a = rep_corner_point(tri, node.face_class, a.arcs[node.arc_a].corner);
    Point2 corner_b = rep_corner_point(tri, node.face_class, b.arcs[node.arc_b].corner);
    bool fa = front_is_corner(a, front_a, node.arc_a);
    bool fb = front_is_corner(b, front_b, node.arc_b);
    // half 0 of A runs toward ends[0] of its arc
    bool a0_on_corner_of_b = side_of(seg_b, seg_a[0]) == side_of(seg_b, corner_b);
    b_side_of_ahalf[2 * i] = a0_on_corner_of_b == fb;
    b_side_of_ahalf[2 * i + 1] = !b_side_of_ahalf[2 * i];
    bool b0_on_corner_of_a = side_of(seg_a, seg_b[0]) == side_of(seg_a, corner_a);
    a_side_of_bhalf[2 * i] = b0_on_corner_of_a == fa;
    a_side_of_bhalf[2 * i + 1] = !a_side_of_bhalf[2 * i];
  }
  auto ends_of = [&](const SplitSide& side) {
    std::map<int, std::vector<int>> halves;
    for (int h = 0; h < 2 * n; ++h) halves[side.piece_of_half[h]].push_back(h);
    std::vector<int> other(2 * n, -1);
    for (const auto& [piece, list] : halves) {
      if (list.size() != 2) throw Error(ErrorCode::NonParallelCircles, "a complementary piece is not an annulus");
      other[list[0]] = list[1];
      other[list[1]] = list[0];
    }
    return std::make_pair(other, static_cast<int>(halves.size()));
  };
  auto [other_a, rects_a] = ends_of(sa);
  auto [other_b, rects_b] = ends_of(sb);
  if (rects_a != sa.pieces || rects_b != sb.pieces)
    throw Error(ErrorCode::NonParallelCircles, "a complementary piece meets no circle");
  // quadrant (i, ha, hb) -> 4i + 2ha + hb
  UnionFind quads(4 * n);
  for (int i = 0; i < n; ++i)
    for (int ha = 0; ha < 2; ++ha)
      for (int hb = 0; hb < 2; ++hb) {
        int q = 4 * i + 2 * ha + hb;
        int ta = other_a[2 * i + ha];  // along the A rectangle
        int j = ta / 2, ha2 = ta % 2;
        for (int hb2 = 0; hb2 < 2; ++hb2)
          if (a_side_of_bhalf[2 * j + hb2] == a_side_of_bhalf[2 * i + hb]) quads.unite(q, 4 * j + 2 * ha2 + hb2);
        int tb = other_b[2 * i + hb];  // along the B rectangle
        int k = tb / 2, hb3 = tb % 2;
        for (int ha3 = 0; ha3 < 2; ++ha3)
          if (b_side_of_ahalf[2 * k + ha3] == b_side_of_ahalf[2 * i + ha]) quads.unite(q, 4 * k + 2 * ha3 + hb3);
      }
  SeifertDatum d;
  d.circles = n;
  d.squares = n;
  d.rectangles = rects_a + rects_b;
  d.gluings = 2 * d.rectangles;
  d.euler = static_cast<long>(d.squares) + d.rectangles - d.gluings;
  quads.labels(&d.boundary_circles);
  d.genus = static_cast<int>((2 - d.euler - d.boundary_circles) / 2);
  d.fiber_class_a = cls_a;
  d.fiber_class_b = cls_b;
  return d;
}

// ---------------------------------------------------------------------------
// Disk equivalence and interval shrinking.

std::vector<int> disk_equivalence(const DiskFamily& family) {
  const int n = static_cast<int>(family.disk_types.size());
  for (const auto& comp : family.components)
    if (static_cast<int>(comp.size()) != n)
      throw Error(ErrorCode::InvalidArgument, "component list does not match the disk count");
  for (size_t k = 0; k + 1 < family.components.size(); ++k) {
    const auto& now = family.components[k];
    const auto& next = family.components[k + 1];
    for (int d = 0; d < n; ++d) {
      if (now[d] >= 0 && next[d] < 0)
        throw Error(ErrorCode::NotMonotone, "disk " + std::to_string(d) + " present at index " + std::to_string(k) +
                                                " but absent at index " + std::to_string(k + 1));
      for (int e = d + 1; e < n; ++e)
        if (now[d] >= 0 && now[d] == now[e] && next[d] != next[e])
          throw Error(ErrorCode::NotMonotone, "disks " + std::to_string(d) + " and " + std::to_string(e) +
                                                  " share a component at index " + std::to_string(k) +
                                                  " but not at index " + std::to_string(k + 1));
    }
  }
  UnionFind uf(n);
  for (const auto& comp : family.components)
    for (int d = 0; d < n; ++d)
      for (int e = d + 1; e < n; ++e)
        if (comp[d] >= 0 && comp[d] == comp[e] && family.disk_types[d] == family.disk_types[e]) uf.unite(d, e);
  std::vector<int> out(n, -1);
  std::map<int, int> label;
  for (int d = 0; d < n; ++d) {
    auto [it, fresh] = label.emplace(uf.find(d), static_cast<int>(label.size()));
    out[d] = it->second;
  }
  return out;
}

double IntervalHull::remap(double x) const {
  if (hi == lo) return shrunk_lo;
  return shrunk_lo + (x - lo) * (shrunk_hi - shrunk_lo) / (hi - lo);
}

std::vector<IntervalHull> disjointify_intervals(const std::vector<std::vector<double>>& classes) {
  const int n = static_cast<int>(classes.size());
  std::vector<IntervalHull> out(n);
  for (int i = 0; i < n; ++i) {
    if (classes[i].empty()) throw Error(ErrorCode::InvalidArgument, "empty crossing class");
    auto [mn, mx] = std::minmax_element(classes[i].begin(), classes[i].end());
    out[i].class_id = i;
    out[i].lo = *mn;
    out[i].hi = *mx;
  }
  bool disjoint = true;
  for (int i = 0; i < n && disjoint; ++i)
    for (int j = i + 1; j < n; ++j)
      if (!(out[i].hi < out[j].lo || out[j].hi < out[i].lo)) {
        disjoint = false;
        break;
      }
  if (disjoint) {
    for (auto& h : out) {
      double mid = 0.5 * (h.lo + h.hi), half = 0.45 * (h.hi - h.lo);
      h.shrunk_lo = mid - half;
      h.shrunk_hi = mid + half;
    }
    return out;
  }
  // Elementary intervals between consecutive hull endpoints; each wide hull
  // takes the least used one inside it and an anchor there.
  std::vector<double> cuts;
  for (const auto& h : out) {
    cuts.push_back(h.lo);
    cuts.push_back(h.hi);
  }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  std::set<double> points;
  for (const auto& h : out)
    if (h.lo == h.hi && !points.insert(h.lo).second)
      throw Error(ErrorCode::InvalidArgument, "two one-point classes coincide");
  std::vector<int> used(cuts.size(), 0), slot(n, -1), rank(n, 0);
  for (int i = 0; i < n; ++i) {
    if (out[i].lo == out[i].hi) continue;
    int best = -1;
    for (size_t k = 0; k + 1 < cuts.size(); ++k)
      if (cuts[k] >= out[i].lo && cuts[k + 1] <= out[i].hi && (best < 0 || used[k] < used[best]))
        best = static_cast<int>(k);
    slot[i] = best;
    rank[i] = used[best]++;
  }
  std::vector<double> anchor(n);
  std::vector<double> all;
  for (int i = 0; i < n; ++i) {
    if (slot[i] < 0) {
      anchor[i] = out[i].lo;
    } else {
      double a = cuts[slot[i]], b = cuts[slot[i] + 1];
      anchor[i] = a + (b - a) * (rank[i] + 1) / (used[slot[i]] + 1);
    }
    all.push_back(anchor[i]);
  }
  std::sort(all.begin(), all.end());
  double eps = std::numeric_limits<double>::infinity();
  for (size_t k = 0; k + 1 < all.size(); ++k) eps = std::min(eps, (all[k + 1] - all[k]) / 3);
  for (int i = 0; i < n; ++i)
    if (slot[i] >= 0) eps = std::min(eps, std::min(anchor[i] - out[i].lo, out[i].hi - anchor[i]) / 2);
  for (int i = 0; i < n; ++i) {
    double r = slot[i] < 0 ? 0.0 : eps;
    out[i].shrunk_lo = anchor[i] - r;
    out[i].shrunk_hi = anchor[i] + r;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Limits of surface sequences.

namespace {

struct Neighbor {
  GlobalTet tet;
  Perm4 perm;
};

// Partner of a face in the infinite complex, if glued.
std::optional<Neighbor> neighbor(const PeriodicSpec& spec, const GlobalTet& g, int face) {
  const Gluing& in = spec.internal[g.local][face];
  if (!in.boundary()) return Neighbor{{g.block, in.tet}, in.perm};
  for (const auto& s : spec.shifts) {
    if (s.tet == g.local && s.face == face) return Neighbor{{g.block + 1, s.partner}, s.perm};
    if (s.partner == g.local && s.perm[s.face] == face) return Neighbor{{g.block - 1, s.tet}, s.perm.inverse()};
  }
  return std::nullopt;
}

bool face_carries_arcs(const TetCoords& c, int face) {
  for (int v = 0; v < 4; ++v)
    if (v != face && arc_count(c, face, v) != 0) return true;
  return false;
}

}  // namespace

SurfaceSequenceLimit limit_surface(const LazyComplex& complex, const SurfaceSequence& seq,
                                   const std::vector<GlobalTet>& region, int min_tail) {
  const int n = static_cast<int>(seq.members.size());
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty surface sequence");
  const int need = std::min(std::max(min_tail, 1), n);
  auto value = [&](int k, const GlobalTet& g) {
    auto it = seq.members[k].find(g);
    return it == seq.members[k].end() ? TetCoords{} : it->second;
  };
  SurfaceSequenceLimit out;
  std::set<GlobalTet> in_region(region.begin(), region.end());
  for (const auto& g : in_region) {
    TetCoords last = value(n - 1, g);
    int n0 = n - 1;
    while (n0 > 0 && value(n0 - 1, g) == last) --n0;
    if (n - n0 < need)
      throw Error(ErrorCode::Unstable, "tet (" + std::to_string(g.block) + ":" + std::to_string(g.local) +
                                           ") is constant only over the last " + std::to_string(n - n0) +
                                           " members");
    out.stabilization[g] = n0;
    if (std::any_of(last.begin(), last.end(), [](long x) { return x != 0; })) out.limit[g] = last;
  }
  bool leaves = false;
  for (const auto& g : in_region) {
    TetCoords c = value(n - 1, g);
    for (int f = 0; f < 4; ++f) {
      auto nb = neighbor(complex.spec(), g, f);
      if (!nb) continue;
      if (!in_region.count(nb->tet)) {
        if (face_carries_arcs(c, f)) leaves = true;
        continue;
      }
      TetCoords d = value(n - 1, nb->tet);
      for (int v = 0; v < 4; ++v)
        if (v != f && arc_count(c, f, v) != arc_count(d, nb->perm[f], nb->perm[v]))
          throw Error(ErrorCode::NotNormal, "limit fails a matching equation on tet (" + std::to_string(g.block) +
                                                ":" + std::to_string(g.local) + ") face " + std::to_string(f));
      ++out.verified_faces;
    }
  }
  if (out.limit.empty()) out.support = SurfaceSequenceLimit::Support::Empty;
  else out.support = leaves ? SurfaceSequenceLimit::Support::Noncompact : SurfaceSequenceLimit::Support::Compact;
  return out;
}

const char* ends_kind_name(EndsReport::Kind k) {
  switch (k) {
    case EndsReport::Kind::Torus: return "Torus";
    case EndsReport::Kind::Annulus: return "Annulus";
    case EndsReport::Kind::Violation: return "Violation";
  }
  return "Violation";
}

namespace {

struct WindowSlice {
  std::shared_ptr<const Triangulation> tri;
  RealizedSurface surface;
  SurfaceReport report;
  std::vector<bool> frontier_disk;  // disk has an arc on the window frontier
};

WindowSlice slice(LazyComplex& complex, const NscSurface& surface, GlobalTet center, int radius, int max_tets) {
  auto tri = std::make_shared<const Triangulation>(complex.window(center, radius));
  if (tri->size() > max_tets)
    throw Error(ErrorCode::BudgetExceeded, "window of radius " + std::to_string(radius) + " has " +
                                               std::to_string(tri->size()) + " tets, above " +
                                               std::to_string(max_tets));
  WindowSlice w{tri, realize_surface(tri, nsc_on_window(surface, *tri, true)), {}, {}};
  w.report = analyze_surface(w.surface);
  w.frontier_disk.assign(w.surface.disks.size(), false);
  for (const auto& a : w.surface.arcs) {
    if (!a.boundary) continue;
    int d = a.disks[0];
    if (complex.is_frontier(*tri, w.surface.disks[d].tet, a.faces[0])) w.frontier_disk[d] = true;
  }
  return w;
}

int genus_of(const ComponentReport& c) { return static_cast<int>((2 - c.euler - c.boundary_circles) / 2); }

// Components of the part of `outer` lying outside the tets of `inner`
// that reach the frontier of `outer`.
int count_ends(const WindowSlice& inner, const WindowSlice& outer) {
  std::set<GlobalTet> inside(inner.tri->origin().begin(), inner.tri->origin().end());
  const auto& s = outer.surface;
  const int nd = static_cast<int>(s.disks.size());
  std::vector<bool> keep(nd);
  for (int d = 0; d < nd; ++d) keep[d] = !inside.count(outer.tri->origin()[s.disks[d].tet]);
  UnionFind uf(nd);
  for (const auto& a : s.arcs)
    if (!a.boundary && keep[a.disks[0]] && keep[a.disks[1]]) uf.unite(a.disks[0], a.disks[1]);
  std::set<int> ends;
  for (int d = 0; d < nd; ++d)
    if (keep[d] && outer.frontier_disk[d]) ends.insert(uf.find(d));
  return static_cast<int>(ends.size());
}

struct DiskCheck {
  bool disk = false;
  int diam = 0, boundary_diam = 0;
};

// Euler characteristic, boundary and diameters of a union of disks.
DiskCheck check_subdisk(const WindowSlice& w, const std::vector<int>& disks) {
  const auto& s = w.surface;
  std::set<int> members(disks.begin(), disks.end());
  std::set<int> verts, edges;
  std::map<int, int> uses;
  for (int d : disks) {
    for (int e = 0; e < 6; ++e)
      if (s.disk_crossing[d][e] >= 0) verts.insert(s.disk_crossing[d][e]);
    for (int f = 0; f < 4; ++f)
      if (s.disk_arc[d][f] >= 0) {
        edges.insert(s.disk_arc[d][f]);
        ++uses[s.disk_arc[d][f]];
      }
  }
  long euler = static_cast<long>(verts.size()) - static_cast<long>(edges.size()) + static_cast<long>(disks.size());
  UnionFind loops(static_cast<int>(s.num_crossings()));
  std::set<int> on_boundary, boundary_tets;
  for (auto [arc, k] : uses) {
    const auto& a = s.arcs[arc];
    bool inner = !a.boundary && members.count(a.disks[0]) && members.count(a.disks[1]);
    if (inner && (k == 2 || a.disks[0] == a.disks[1])) continue;
    loops.unite(a.ends[0], a.ends[1]);
    on_boundary.insert(a.ends[0]);
    for (int side = 0; side < 2; ++side)
      if (a.disks[side] >= 0 && members.count(a.disks[side])) boundary_tets.insert(s.disks[a.disks[side]].tet);
  }
  std::set<int> circles;
  for (int x : on_boundary) circles.insert(loops.find(x));
  DiskCheck out;
  out.disk = euler == 1 && circles.size() == 1;
  if (!out.disk) return out;
  std::set<int> tets;
  for (int d : disks) tets.insert(s.disks[d].tet);
  auto diameter = [&](const std::set<int>& ts) {
    int best = 0;
    for (int t : ts) {
      auto dist = tet_distances(*w.tri, {t});
      for (int u : ts) best = std::max(best, dist[u]);
    }
    return best;
  };
  out.diam = diameter(tets);
  out.boundary_diam = diameter(boundary_tets);
  return out;
}

}  // namespace

EndsReport classify_limit_ends(LazyComplex& complex, const NscSurface& surface, GlobalTet center, int radius,
                               long disk_slack_bound, int max_tets) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "radius must be positive");
  std::vector<WindowSlice> w;
  for (int k = 0; k < 3; ++k) w.push_back(slice(complex, surface, center, radius << k, max_tets));
  EndsReport rep;
  const auto& last = w.back();
  rep.compact = std::none_of(last.frontier_disk.begin(), last.frontier_disk.end(), [](bool b) { return b; });
  for (const auto& x : w) {
    int g = 0;
    for (const auto& c : x.report.components) {
      g = std::max(g, genus_of(c));
      if (!c.orientable) rep.planar = false;
    }
    rep.genus_per_radius.push_back(g);
    if (g > 0) rep.planar = false;
  }
  // Subdisk test on stars of crossings.
  const auto& s = last.surface;
  std::vector<std::vector<int>> star(s.num_crossings());
  for (int d = 0; d < static_cast<int>(s.disks.size()); ++d)
    for (int e = 0; e < 6; ++e)
      if (s.disk_crossing[d][e] >= 0) star[s.disk_crossing[d][e]].push_back(d);
  rep.disk_slack = std::numeric_limits<long>::min();
  for (int x = 0; x < s.num_crossings(); ++x) {
    auto chk = check_subdisk(last, star[x]);
    if (!chk.disk) continue;
    long slack = chk.diam - chk.boundary_diam;
    rep.disk_slack = std::max(rep.disk_slack, slack);
    if (slack > disk_slack_bound && rep.disk_slack_ok) {
      rep.disk_slack_ok = false;
      rep.witness = "star of crossing " + std::to_string(x) + " has diameter " + std::to_string(chk.diam) +
                    " against boundary diameter " + std::to_string(chk.boundary_diam);
    }
  }
  if (rep.disk_slack == std::numeric_limits<long>::min()) rep.disk_slack = 0;
  if (rep.compact) {
    const auto& r = last.report;
    bool torus = r.components.size() == 1 && r.components[0].kind == SurfaceKind::Torus;
    rep.kind = torus && rep.disk_slack_ok ? EndsReport::Kind::Torus : EndsReport::Kind::Violation;
    if (!torus && rep.witness.empty())
      rep.witness = "compact limit with " + std::to_string(r.components.size()) + " components and euler " +
                    std::to_string(r.euler);
    return rep;
  }
  for (int k = 0; k + 1 < 3; ++k) rep.ends_per_radius.push_back(count_ends(w[k], w[k + 1]));
  if (rep.ends_per_radius[0] != rep.ends_per_radius[1])
    throw Error(ErrorCode::BudgetExceeded, "end count not stable: " + std::to_string(rep.ends_per_radius[0]) +
                                               " then " + std::to_string(rep.ends_per_radius[1]));
  rep.ends = rep.ends_per_radius[1];
  if (!rep.planar && rep.witness.empty()) {
    for (size_t k = 0; k < w.size(); ++k)
      for (size_t c = 0; c < w[k].report.components.size(); ++c)
        if (rep.witness.empty() &&
            (genus_of(w[k].report.components[c]) > 0 || !w[k].report.components[c].orientable))
          rep.witness = "component " + std::to_string(c) + " at radius " + std::to_string(radius << k) +
                        " has genus " + std::to_string(genus_of(w[k].report.components[c]));
  }
  bool annulus = rep.ends == 2 && rep.planar && rep.disk_slack_ok;
  rep.kind = annulus ? EndsReport::Kind::Annulus : EndsReport::Kind::Violation;
  if (!annulus && rep.witness.empty()) rep.witness = std::to_string(rep.ends) + " ends";
  return rep;
}

}  // namespace plsplit
