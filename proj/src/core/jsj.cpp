#include "jsj.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <sstream>

#include "homology.hpp"
#include "quasi.hpp"
#include "union_find.hpp"

namespace plsplit {

// ---------------------------------------------------------------------------
// Cutting.

long boundary_euler(const Triangulation& tri) {
  std::set<int> verts, edges;
  long faces = 0;
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      if (!tri.gluing(t, f).boundary()) continue;
      ++faces;
      for (int v : face_vertices(f)) verts.insert(tri.vertex_class(t, v));
      auto fv = face_vertices(f);
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) edges.insert(tri.edge_class(t, edge_index(fv[i], fv[j])));
    }
  return static_cast<long>(verts.size()) - static_cast<long>(edges.size()) + faces;
}

namespace {

// A point of a cut tet: a tet vertex, a crossing on an edge (position from
// the lower label), a block center or a polygon center.
struct Pt {
  int kind = 0;
  int a = 0, b = 0;
  long pos = 0;
  friend auto operator<=>(const Pt&, const Pt&) = default;
};

Pt vertex_pt(int a) { return {0, a, 0, 0}; }
Pt crossing_pt(int u, int v, long from_u, long n) {
  return u < v ? Pt{1, u, v, from_u} : Pt{1, v, u, n - 1 - from_u};
}

struct Polygon {
  int block = 0;
  int face = -1;  // tet face holding it, -1 for a disk side
  std::vector<Pt> pts;
};

// Blocks and boundary polygons of one tet.
struct TetCut {
  std::vector<BlockId> blocks;
  std::vector<Polygon> polys;
};

class TetCutter {
 public:
  TetCutter(int tet, const TetCoords& c) : tet_(tet), c_(c) {
    for (int k = 0; k < 3; ++k)
      if (c[kQuad0 + k] > 0) {
        q_ = k;
        nq_ = c[kQuad0 + k];
      }
  }

  TetCut run() {
    for (int f = 0; f < 4; ++f) face_pieces(f);
    for (int v = 0; v < 4; ++v)
      for (long i = 0; i < c_[v]; ++i) {
        std::vector<Pt> pts;
        for (int x = 0; x < 4; ++x)
          if (x != v) pts.push_back(at(v, x, i));
        add(block(v, static_cast<int>(i)), -1, pts);
        add(i + 1 < c_[v] ? block(v, static_cast<int>(i) + 1) : beyond(v), -1, pts);
      }
    if (q_ >= 0) {
      int a = 0, b = q_ + 1;
      std::vector<int> rest;
      for (int x = 1; x < 4; ++x)
        if (x != b) rest.push_back(x);
      for (long k = 0; k < nq_; ++k) {
        std::vector<Pt> pts{at(a, rest[0], c_[a] + k), at(a, rest[1], c_[a] + k), at(b, rest[1], c_[b] + k),
                            at(b, rest[0], c_[b] + k)};
        add(central(static_cast<int>(k)), -1, pts);
        add(central(static_cast<int>(k) + 1), -1, pts);
      }
    }
    return std::move(out_);
  }

 private:
  bool zero(int v) const { return q_ >= 0 && quad_zero_side(q_, v); }
  long n(int u, int v) const { return edge_crossings(c_, edge_index(u, v)); }
  Pt at(int u, int v, long from_u) const { return crossing_pt(u, v, from_u, n(u, v)); }

  int id(const BlockId& b) {
    auto [it, fresh] = index_.emplace(b, static_cast<int>(out_.blocks.size()));
    if (fresh) out_.blocks.push_back(b);
    return it->second;
  }
  int block(int corner, int layer) { return id({tet_, corner, layer}); }
  int central(int layer) { return id({tet_, -1, layer}); }
  int beyond(int v) { return central(nq_ == 0 || zero(v) ? 0 : static_cast<int>(nq_)); }
  // Block on the corner side of the i-th arc (from corner x) of a face.
  int outer(int x, long i) {
    if (i < c_[x]) return block(x, static_cast<int>(i));
    long m = i - c_[x];
    return central(static_cast<int>(zero(x) ? m : nq_ - m));
  }

  void add(int blk, int face, std::vector<Pt> pts) { out_.polys.push_back({blk, face, std::move(pts)}); }

  void face_pieces(int f) {
    auto fv = face_vertices(f);
    std::array<long, 4> a{};
    for (int x : fv) a[x] = arc_count(c_, f, x);
    for (int i = 0; i < 3; ++i) {
      int x = fv[i], y = fv[(i + 1) % 3], z = fv[(i + 2) % 3];
      if (a[x] == 0) continue;
      add(outer(x, 0), f, {vertex_pt(x), at(x, y, 0), at(x, z, 0)});
      for (long j = 0; j + 1 < a[x]; ++j)
        add(outer(x, j + 1), f, {at(x, y, j), at(x, y, j + 1), at(x, z, j + 1), at(x, z, j)});
    }
    std::vector<Pt> pts;
    auto push = [&](const Pt& p) {
      if (pts.empty() || pts.back() != p) pts.push_back(p);
    };
    for (int i = 0; i < 3; ++i) {
      int x = fv[i], y = fv[(i + 1) % 3];
      push(a[x] > 0 ? at(x, y, a[x] - 1) : vertex_pt(x));
      push(a[y] > 0 ? at(x, y, a[x]) : vertex_pt(y));
    }
    if (pts.size() > 1 && pts.front() == pts.back()) pts.pop_back();
    int blk = nq_ == 0 ? central(0) : central(zero(f) ? static_cast<int>(nq_) : 0);
    add(blk, f, pts);
  }

  int tet_;
  TetCoords c_;
  int q_ = -1;
  long nq_ = 0;
  TetCut out_;
  std::map<BlockId, int> index_;
};

// Opposite vertex maps to opposite vertex; shared keys map to each other.
template <class Key>
Perm4 match_keys(const std::array<Key, 4>& k1, const std::array<Key, 4>& k2, int face1, int face2) {
  std::array<int, 4> img{};
  img[face1] = face2;
  for (int x = 0; x < 4; ++x) {
    if (x == face1) continue;
    int hit = -1;
    for (int y = 0; y < 4; ++y)
      if (y != face2 && k2[y] == k1[x]) hit = y;
    if (hit < 0) throw Error(ErrorCode::InvalidArgument, "internal: cut faces do not match");
    img[x] = hit;
  }
  return Perm4(img[0], img[1], img[2], img[3]);
}

void glue_faces(GluingTable& table, int t1, int f1, int t2, const Perm4& p) {
  int f2 = p[f1];
  if (!table[t1][f1].boundary() || !table[t2][f2].boundary())
    throw Error(ErrorCode::InvalidArgument, "internal: cut face glued twice");
  table[t1][f1] = {t2, p};
  table[t2][f2] = {t1, p.inverse()};
}

std::vector<std::vector<int>> gluing_components(const Triangulation& tri) {
  UnionFind uf(tri.size());
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (!tri.gluing(t, f).boundary()) uf.unite(t, tri.gluing(t, f).tet);
  std::map<int, std::vector<int>> groups;
  for (int t = 0; t < tri.size(); ++t) groups[uf.find(t)].push_back(t);
  std::vector<std::vector<int>> out;
  for (auto& [root, ts] : groups) out.push_back(std::move(ts));
  return out;
}

}  // namespace

CutResult cut_along(const Triangulation& tri, const NormalCoordinates& s) {
  if (s.size() != tri.size()) throw Error(ErrorCode::InvalidArgument, "surface does not match the window");
  auto rs = realize_surface(tri, s);
  front_sides(rs);
  CutResult res;
  res.surface_euler = analyze_surface(rs).euler;
  res.boundary_euler_before = boundary_euler(tri);

  std::vector<std::pair<Triangulation, std::vector<BlockId>>> pieces;
  if (s.is_zero()) {
    for (const auto& comp : gluing_components(tri)) {
      std::vector<BlockId> src;
      for (int t : comp) src.push_back({t, -1, 0});
      pieces.emplace_back(restrict_to(tri, comp), src);
    }
  } else {
    using Key = Pt;
    std::vector<std::array<Key, 4>> keys;
    std::vector<BlockId> source;
    // (tet, block, edge) -> coned tets over that polygon edge, for face 1
    std::map<std::tuple<int, int, Pt, Pt>, std::vector<int>> edge_users;
    // (face class, polygon in rep labels, edge in rep labels) -> (coned tet, rep keys)
    struct FaceUse {
      int tet;
      std::array<Pt, 4> rep;
    };
    std::map<std::tuple<int, std::vector<Pt>, Pt, Pt>, std::vector<FaceUse>> face_users;
    GluingTable table;
    for (int t = 0; t < tri.size(); ++t) {
      TetCut cut = TetCutter(t, s.tets[t]).run();
      for (int p = 0; p < static_cast<int>(cut.polys.size()); ++p) {
        const auto& poly = cut.polys[p];
        const int m = static_cast<int>(poly.pts.size());
        const int first = static_cast<int>(keys.size());
        Perm4 to_rep;
        std::vector<Pt> rep_poly;
        auto rep_of = [&](const Pt& x) {
          if (x.kind == 0) return vertex_pt(to_rep[x.a]);
          long nn = edge_crossings(s.tets[t], edge_index(x.a, x.b));
          return crossing_pt(to_rep[x.a], to_rep[x.b], x.pos, nn);
        };
        bool glued_face = poly.face >= 0 && !tri.gluing(t, poly.face).boundary();
        if (glued_face) {
          to_rep = tri.face_to_rep(t, poly.face);
          for (const auto& x : poly.pts) rep_poly.push_back(rep_of(x));
          std::sort(rep_poly.begin(), rep_poly.end());
        }
        for (int i = 0; i < m; ++i) {
          const Pt& u = poly.pts[i];
          const Pt& v = poly.pts[(i + 1) % m];
          int nt = static_cast<int>(keys.size());
          keys.push_back({Pt{2, poly.block, 0, 0}, Pt{3, p, 0, 0}, u, v});
          source.push_back(cut.blocks[poly.block]);
          table.push_back({});
          edge_users[{t, poly.block, std::min(u, v), std::max(u, v)}].push_back(nt);
          if (glued_face) {
            Pt ru = rep_of(u), rv = rep_of(v);
            face_users[{tri.face_class(t, poly.face), rep_poly, std::min(ru, rv), std::max(ru, rv)}].push_back(
                {nt, {Pt{4, 0, 0, 0}, Pt{3, -1, 0, 0}, ru, rv}});
          }
        }
        for (int i = 0; i < m; ++i) {
          int a = first + i, b = first + (i + 1) % m;
          if (m == 1) continue;
          glue_faces(table, a, 2, b, match_keys(keys[a], keys[b], 2, 3));
        }
      }
    }
    for (const auto& [k, users] : edge_users) {
      if (users.size() != 2) throw Error(ErrorCode::InvalidArgument, "internal: block polygon edge not shared");
      glue_faces(table, users[0], 1, users[1], match_keys(keys[users[0]], keys[users[1]], 1, 1));
    }
    for (const auto& [k, users] : face_users) {
      if (users.size() != 2) throw Error(ErrorCode::InvalidArgument, "internal: face piece not matched");
      glue_faces(table, users[0].tet, 0, users[1].tet, match_keys(users[0].rep, users[1].rep, 0, 0));
    }
    Triangulation cut(table);
    for (const auto& comp : gluing_components(cut)) {
      std::vector<BlockId> src;
      for (int t : comp) src.push_back(source[t]);
      pieces.emplace_back(restrict_to(cut, comp), src);
    }
  }
  for (auto& [w, src] : pieces) {
    CutComponent c;
    c.window = std::move(w);
    c.source = std::move(src);
    c.betti = betti_numbers(c.window);
    c.boundary_euler = boundary_euler(c.window);
    res.boundary_euler_after += c.boundary_euler;
    for (const auto& b : c.source) res.block_component[b] = static_cast<int>(res.components.size());
    res.components.push_back(std::move(c));
  }
  return res;
}

BlockId block_of(const Triangulation& tri, const NormalCoordinates& s, const NormalCoordinates& t) {
  if (!quads_compatible(s, t)) throw Error(ErrorCode::QuadConflict, "surfaces have conflicting quads");
  auto sum = realize_surface(tri, s + t);
  auto rep = analyze_surface(sum);
  int comp = -1;
  for (int i = 0; i < static_cast<int>(rep.components.size()) && comp < 0; ++i)
    if (component_coordinates(sum, rep, i) == t) comp = i;
  if (comp < 0) throw Error(ErrorCode::InvalidArgument, "surfaces are not disjoint");
  const Disk& d = sum.disks[rep.components[comp].disks.front()];
  long below = 0;
  for (int k = 0; k < static_cast<int>(sum.disks.size()); ++k) {
    const Disk& e = sum.disks[k];
    if (e.tet == d.tet && e.type == d.type && e.index < d.index && rep.disk_component[k] != comp) ++below;
  }
  const TetCoords& c = s.tets[d.tet];
  if (d.type >= kQuad0) return {d.tet, -1, static_cast<int>(below)};
  if (below < c[d.type]) return {d.tet, d.type, static_cast<int>(below)};
  int q = -1;
  long nq = 0;
  for (int k = 0; k < 3; ++k)
    if (c[kQuad0 + k] > 0) {
      q = k;
      nq = c[kQuad0 + k];
    }
  bool zero = q >= 0 && quad_zero_side(q, d.type);
  return {d.tet, -1, nq == 0 || zero ? 0 : static_cast<int>(nq)};
}

// ---------------------------------------------------------------------------
// Census.

const char* torus_label_name(TorusLabel l) { return l == TorusLabel::Canonical ? "Canonical" : "Noncanonical"; }

long TorusCensus::max_census_weight() const {
  long m = 0;
  for (const auto& t : tori) m = std::max(m, t.weight);
  return m;
}

long TorusCensus::max_canonical_weight() const {
  long m = 0;
  for (const auto& t : tori)
    if (t.label == TorusLabel::Canonical) m = std::max(m, t.weight);
  return m;
}

namespace {

bool essential_circle(const IntersectionPattern& p) {
  for (const auto& c : p.circles)
    if (c.closed && c.essential_a && c.essential_b) return true;
  return false;
}

bool meets_essentially(const Triangulation& tri, const NormalCoordinates& a, const NormalCoordinates& b) {
  if (a == b) return false;
  auto sa = realize_surface(tri, a), sb = realize_surface(tri, b);
  return essential_circle(intersect_surfaces(sa, sb));
}

bool disjoint(const Triangulation& tri, const NormalCoordinates& a, const NormalCoordinates& b) {
  if (!quads_compatible(a, b)) return false;
  if (a == b) return true;
  auto sa = realize_surface(tri, a), sb = realize_surface(tri, b);
  return intersect_surfaces(sa, sb).circles.empty();
}

bool is_single_torus(const Triangulation& tri, const NormalCoordinates& c) {
  auto r = analyze_surface(realize_surface(tri, c));
  return r.components.size() == 1 && r.components[0].kind == SurfaceKind::Torus;
}

bool subset_of(const std::vector<int>& support, const std::set<int>& region) {
  return std::all_of(support.begin(), support.end(), [&](int t) { return region.count(t) > 0; });
}

bool meets(const std::vector<int>& support, const std::set<int>& region) {
  return std::any_of(support.begin(), support.end(), [&](int t) { return region.count(t) > 0; });
}

}  // namespace

TorusCensus torus_census(const Triangulation& window, long max_weight, long budget) {
  EnumerateOptions opt;
  opt.max_weight = max_weight;
  opt.closed = true;
  opt.budget = budget;
  TorusCensus census;
  census.max_weight = max_weight;
  for (const auto& c : enumerate_bounded(window, opt)) {
    if (c.is_zero() || !is_single_torus(window, c)) continue;
    census.tori.push_back({c, weight(window, c), TorusLabel::Canonical, {}});
  }
  const int n = static_cast<int>(census.tori.size());
  std::vector<RealizedSurface> real;
  for (const auto& t : census.tori) real.push_back(realize_surface(window, t.coords));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (!essential_circle(intersect_surfaces(real[i], real[j]))) continue;
      census.tori[i].essential_partners.push_back(j);
      census.tori[j].essential_partners.push_back(i);
    }
  for (auto& t : census.tori)
    if (!t.essential_partners.empty()) t.label = TorusLabel::Noncanonical;
  return census;
}

// ---------------------------------------------------------------------------
// Hypotheses.

const char* hypothesis_name(Hypothesis h) {
  switch (h) {
    case Hypothesis::A: return "A";
    case Hypothesis::B: return "B";
    case Hypothesis::C: return "C";
    case Hypothesis::D: return "D";
  }
  return "?";
}

const char* verdict_name(HypothesisVerdict::Result r) {
  switch (r) {
    case HypothesisVerdict::Result::VerifiedOnWindow: return "VerifiedOnWindow";
    case HypothesisVerdict::Result::Counterexample: return "Counterexample";
    case HypothesisVerdict::Result::Inconclusive: return "Inconclusive";
  }
  return "?";
}

namespace {

bool canonical_now(const Triangulation& window, const TorusCensus& census, int i) {
  for (int j = 0; j < static_cast<int>(census.tori.size()); ++j)
    if (j != i && meets_essentially(window, census.tori[i].coords, census.tori[j].coords)) return false;
  return true;
}

// Special class of a census torus from its essential partners.
std::optional<std::vector<long>> census_special_class(const Triangulation& window, const TorusCensus& census,
                                                      int i) {
  const auto& t = census.tori[i];
  if (t.essential_partners.empty()) return std::nullopt;
  auto si = realize_surface(window, t.coords);
  std::vector<IntersectionPattern> pats;
  for (int j : t.essential_partners)
    pats.push_back(intersect_surfaces(si, realize_surface(window, census.tori[j].coords)));
  auto sc = special_class(pats, std::vector<bool>(pats.size(), true));
  if (sc.status != SpecialClass::Status::Found) return std::nullopt;
  return sc.curve_class;
}

// Closed dual path of at most `max_len` steps through `disk` with class +-curve_class.
bool special_curve_through(const RealizedSurface& s, const SurfaceReport& r, const SurfaceBasis& basis, int disk,
                           const std::vector<long>& curve_class, long max_len) {
  using State = std::pair<int, std::vector<long>>;
  std::set<State> seen{{disk, std::vector<long>(basis.cycles.size(), 0)}};
  std::vector<State> frontier(seen.begin(), seen.end());
  for (long step = 0; step < max_len && !frontier.empty(); ++step) {
    std::vector<State> next;
    for (const auto& [d, cls] : frontier)
      for (int f = 0; f < 4; ++f) {
        int arc = s.disk_arc[d][f];
        if (arc < 0 || s.arcs[arc].boundary) continue;
        const auto& a = s.arcs[arc];
        for (int side = 0; side < 2; ++side) {
          if (a.disks[side] != d || a.faces[side] != f) continue;
          auto inc = dual_path_class(s, r, basis, {DualStep{arc, side}});
          State nxt{a.disks[1 - side], cls};
          for (size_t k = 0; k < inc.size(); ++k) nxt.second[k] += inc[k];
          if (nxt.first == disk && std::any_of(nxt.second.begin(), nxt.second.end(), [](long x) { return x != 0; }) &&
              normalize_class(nxt.second) == curve_class)
            return true;
          if (seen.insert(nxt).second) next.push_back(nxt);
        }
      }
    frontier = std::move(next);
  }
  return false;
}

std::set<int> intersection_tets(const Triangulation& window, const NormalCoordinates& a, const NormalCoordinates& b) {
  auto p = intersect_surfaces(realize_surface(window, a), realize_surface(window, b));
  std::set<int> out;
  for (const auto& c : p.circles)
    for (const auto& ch : c.chords) out.insert(ch.tet);
  return out;
}

long disks_in(const TetCoords& c) { return std::accumulate(c.begin(), c.end(), 0L); }

// Per-witness searches; each returns true when the hypothesis holds there.
bool check_a(const Triangulation& window, const TorusCensus& census, const HypothesisConstants& k, int i) {
  return !canonical_now(window, census, i) || weight(window, census.tori[i].coords) <= k.C1;
}

bool check_b(const Triangulation& window, const TorusCensus& census, const HypothesisConstants& k, int i, int disk,
             const std::vector<long>& curve_class) {
  auto s = realize_surface(window, census.tori[i].coords);
  auto r = analyze_surface(s);
  auto basis = surface_basis(s, r, 0);
  return special_curve_through(s, r, basis, disk, curve_class, k.C2);
}

bool check_c(const Triangulation& window, const TorusCensus& census, const HypothesisConstants& k, int i, int tet) {
  auto dist = tet_distances(window, {tet});
  for (int j : census.tori[i].essential_partners) {
    if (census.tori[j].weight > k.C3) continue;
    for (int u : intersection_tets(window, census.tori[i].coords, census.tori[j].coords))
      if (dist[u] >= 0 && dist[u] <= k.C4) return true;
  }
  return false;
}

int single_disk_type(const TetCoords& c) {
  for (int x = 0; x < 7; ++x)
    if (c[x] == 1) return x;
  return -1;
}

bool check_d(const TorusCensus& census, int i, int j, int tet) {
  int ti = single_disk_type(census.tori[i].coords.tets[tet]);
  int tj = single_disk_type(census.tori[j].coords.tets[tet]);
  const auto& pi = census.tori[i].essential_partners;
  for (int k : census.tori[j].essential_partners) {
    if (k == i || std::find(pi.begin(), pi.end(), k) == pi.end()) continue;
    const auto& c = census.tori[k].coords.tets[tet];
    if (c[ti] > 0 || c[tj] > 0) return true;
  }
  return false;
}

}  // namespace

HypothesisVerdict check_hypotheses(const Triangulation& window, const TorusCensus& census,
                                   const HypothesisConstants& consts, Hypothesis which) {
  for (long x : {consts.C1, consts.C2, consts.C3, consts.C4})
    if (x < 0) throw Error(ErrorCode::InvalidArgument, "hypothesis constants must be nonnegative");
  HypothesisVerdict v;
  v.hypothesis = which;
  v.consts = consts;
  v.census_weight = census.max_weight;
  v.window_tets = window.size();
  const int n = static_cast<int>(census.tori.size());
  bool inconclusive = false;
  auto noncanonical = [&](int i) { return census.tori[i].label == TorusLabel::Noncanonical; };
  std::ostringstream bounds;
  bounds << "census closed tori of weight <= " << census.max_weight << " (" << n << " tori)";
  switch (which) {
    case Hypothesis::A:
      for (int i = 0; i < n; ++i)
        if (!check_a(window, census, consts, i))
          v.witnesses.push_back({i, -1, -1, -1, "canonical torus of weight " + std::to_string(census.tori[i].weight)});
      break;
    case Hypothesis::B:
      bounds << "; closed dual paths of length <= " << consts.C2;
      for (int i = 0; i < n; ++i) {
        if (!noncanonical(i)) continue;
        auto curve_class = census_special_class(window, census, i);
        if (!curve_class) {
          inconclusive = true;
          continue;
        }
        auto s = realize_surface(window, census.tori[i].coords);
        auto r = analyze_surface(s);
        auto basis = surface_basis(s, r, 0);
        for (int d = 0; d < static_cast<int>(s.disks.size()); ++d)
          if (!special_curve_through(s, r, basis, d, *curve_class, consts.C2)) {
            v.witnesses.push_back({i, -1, s.disks[d].tet, d, "no special curve of length <= C2 through the disk"});
            break;
          }
      }
      break;
    case Hypothesis::C: {
      bounds << "; partners of weight <= " << consts.C3 << " within distance " << consts.C4;
      bool exhausted = census.max_weight >= consts.C3;
      for (int i = 0; i < n; ++i) {
        if (!noncanonical(i)) continue;
        for (int t = 0; t < window.size(); ++t) {
          if (disks_in(census.tori[i].coords.tets[t]) < 2) continue;
          if (check_c(window, census, consts, i, t)) continue;
          if (exhausted) v.witnesses.push_back({i, -1, t, -1, "no partner meets it near this tet"});
          else inconclusive = true;
        }
      }
      break;
    }
    case Hypothesis::D:
      bounds << "; annuli from census tori meeting both";
      for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
          if (!noncanonical(i) || !noncanonical(j)) continue;
          bool shared = false;
          for (int t = 0; t < window.size() && !shared; ++t)
            shared = disks_in(census.tori[i].coords.tets[t]) == 1 && disks_in(census.tori[j].coords.tets[t]) == 1;
          if (!shared || !disjoint(window, census.tori[i].coords, census.tori[j].coords)) continue;
          for (int t = 0; t < window.size(); ++t)
            if (disks_in(census.tori[i].coords.tets[t]) == 1 && disks_in(census.tori[j].coords.tets[t]) == 1 &&
                !check_d(census, i, j, t))
              inconclusive = true;
        }
      break;
  }
  v.bounds = bounds.str();
  if (!v.witnesses.empty()) v.result = HypothesisVerdict::Result::Counterexample;
  else if (inconclusive) v.result = HypothesisVerdict::Result::Inconclusive;
  return v;
}

bool replay_witness(const Triangulation& window, const TorusCensus& census, const HypothesisConstants& consts,
                    Hypothesis which, const HypothesisWitness& w) {
  if (w.torus < 0 || w.torus >= static_cast<int>(census.tori.size()))
    throw Error(ErrorCode::InvalidArgument, "witness names no census torus");
  switch (which) {
    case Hypothesis::A: return !check_a(window, census, consts, w.torus);
    case Hypothesis::B: {
      auto curve_class = census_special_class(window, census, w.torus);
      return curve_class && !check_b(window, census, consts, w.torus, w.disk, *curve_class);
    }
    case Hypothesis::C: return !check_c(window, census, consts, w.torus, w.tet);
    case Hypothesis::D: return w.partner >= 0 && !check_d(census, w.torus, w.partner, w.tet);
  }
  return false;
}

// ---------------------------------------------------------------------------
// Splittings and certificates.

const char* member_label_name(MemberLabel l) {
  switch (l) {
    case MemberLabel::Canonical: return "Canonical";
    case MemberLabel::Noncanonical: return "Noncanonical";
    case MemberLabel::Annulus: return "Annulus";
  }
  return "?";
}

const char* piece_label_name(PieceLabel l) {
  switch (l) {
    case PieceLabel::Seifert: return "Seifert";
    case PieceLabel::Atoroidal: return "Atoroidal";
    case PieceLabel::Unlabeled: return "Unlabeled";
  }
  return "?";
}

bool SplittingReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionVerdict& c) { return c.holds; });
}

bool AuditReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const ConditionVerdict& c) { return c.holds; });
}

namespace {

ConditionVerdict verdict(std::string name, long bound) {
  ConditionVerdict v;
  v.name = std::move(name);
  v.search_bound = bound;
  return v;
}

void violate(ConditionVerdict& v, std::string what) {
  v.holds = false;
  v.violations.push_back(std::move(what));
}

NormalCoordinates sum_of(int n, const std::vector<NormalCoordinates>& cs) {
  NormalCoordinates out(n);
  for (const auto& c : cs) out = out + c;
  return out;
}

// Components of the blocks over `region` after cutting along `cut`.
struct RegionPieces {
  int count = 0;
  std::map<BlockId, int> piece;
};

RegionPieces region_pieces(const Triangulation& window, const NormalCoordinates& cut, const std::set<int>& region) {
  auto res = cut_along(window, cut);
  RegionPieces out;
  std::map<std::pair<int, int>, int> root_id;
  for (int c = 0; c < static_cast<int>(res.components.size()); ++c) {
    const auto& comp = res.components[c];
    UnionFind uf(comp.window.size());
    auto inside = [&](int t) { return region.count(comp.source[t].tet) > 0; };
    for (int t = 0; t < comp.window.size(); ++t)
      for (int f = 0; f < 4; ++f) {
        const auto& g = comp.window.gluing(t, f);
        if (!g.boundary() && inside(t) && inside(g.tet)) uf.unite(t, g.tet);
      }
    for (int t = 0; t < comp.window.size(); ++t) {
      if (!inside(t)) continue;
      auto [it, fresh] = root_id.emplace(std::make_pair(c, uf.find(t)), out.count);
      if (fresh) ++out.count;
      out.piece[comp.source[t]] = it->second;
    }
  }
  return out;
}

}  // namespace

SplittingReport validate_splitting(const Triangulation& window, const SplittingCollection& c,
                                   const std::vector<PieceLabel>& piece_labels, const TorusCensus& census) {
  if (c.labels.size() != c.members.size())
    throw Error(ErrorCode::InvalidArgument, "one label per member is required");
  const long w = census.max_weight;
  const int m = static_cast<int>(c.members.size());
  SplittingReport rep;

  auto dis = verdict("disjointness", w);
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (!disjoint(window, c.members[i], c.members[j]))
        violate(dis, "members " + std::to_string(i) + " and " + std::to_string(j) + " intersect");
  rep.checks.push_back(dis);

  auto fin = verdict("local finiteness", w);
  rep.checks.push_back(fin);

  auto types = verdict("member types", w);
  for (int i = 0; i < m; ++i) {
    auto r = analyze_surface(realize_surface(window, c.members[i]));
    SurfaceKind want = c.labels[i] == MemberLabel::Annulus ? SurfaceKind::Annulus : SurfaceKind::Torus;
    if (r.components.size() != 1 || r.components[0].kind != want)
      violate(types, "member " + std::to_string(i) + " is not a single " + kind_name(want));
  }
  rep.checks.push_back(types);

  auto c1 = verdict("condition 1: pieces Seifert fibered or atoroidal", w);
  std::optional<CutResult> cut;
  NormalCoordinates all = sum_of(window.size(), c.members);
  if (dis.holds) {
    cut = cut_along(window, all);
    rep.pieces = static_cast<int>(cut->components.size());
    if (static_cast<int>(piece_labels.size()) != rep.pieces)
      violate(c1, std::to_string(rep.pieces) + " pieces but " + std::to_string(piece_labels.size()) + " labels");
    for (size_t k = 0; k < piece_labels.size(); ++k)
      if (piece_labels[k] == PieceLabel::Unlabeled) violate(c1, "piece " + std::to_string(k) + " is unlabeled");
  } else {
    violate(c1, "members are not disjoint");
  }
  rep.checks.push_back(c1);

  auto c2 = verdict("condition 2: tori canonical", w);
  auto c3 = verdict("condition 3: canonical tori represented", w);
  auto c4 = verdict("condition 4: tori homotopic into Seifert pieces", w);
  for (int i = 0; i < m; ++i) {
    if (c.labels[i] == MemberLabel::Annulus) continue;
    for (int k = 0; k < static_cast<int>(census.tori.size()); ++k)
      if (meets_essentially(window, c.members[i], census.tori[k].coords))
        violate(c2, "member " + std::to_string(i) + " meets census torus " + std::to_string(k));
  }
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j)
      if (c.labels[i] != MemberLabel::Annulus && c.members[i] == c.members[j])
        violate(c3, "members " + std::to_string(i) + " and " + std::to_string(j) + " are homotopic");
  for (int k = 0; k < static_cast<int>(census.tori.size()); ++k) {
    const auto& t = census.tori[k];
    if (t.label == TorusLabel::Canonical) {
      bool found = false;
      for (int i = 0; i < m; ++i) found |= c.labels[i] != MemberLabel::Annulus && c.members[i] == t.coords;
      if (!found) violate(c3, "canonical census torus " + std::to_string(k) + " is not a member");
    }
    bool crosses = false;
    for (int i = 0; i < m && !crosses; ++i) crosses = meets_essentially(window, c.members[i], t.coords);
    if (crosses) {
      violate(c4, "census torus " + std::to_string(k) + " meets a member essentially");
      continue;
    }
    if (!cut) continue;
    int piece = 0;
    if (!all.is_zero()) {
      try {
        piece = cut->block_component.at(block_of(window, all, t.coords));
      } catch (const Error&) {
        violate(c4, "census torus " + std::to_string(k) + " cannot be placed off the members");
        continue;
      }
    }
    if (piece >= static_cast<int>(piece_labels.size()) || piece_labels[piece] != PieceLabel::Seifert)
      violate(c4, "census torus " + std::to_string(k) + " lies in piece " + std::to_string(piece) +
                      ", which is not labeled Seifert");
  }
  rep.checks.push_back(c2);
  rep.checks.push_back(c3);
  rep.checks.push_back(c4);
  return rep;
}

AuditReport audit_graph_submanifold(const Triangulation& window, const GraphCertificate& cert,
                                    const TorusCensus& census, long c1) {
  const long w = census.max_weight;
  AuditReport rep;
  for (int t : cert.region)
    if (t < 0 || t >= window.size()) throw Error(ErrorCode::InvalidArgument, "region names a missing tet");

  auto dis = verdict("canonical tori disjoint", w);
  for (size_t i = 0; i < cert.canonical_tori.size(); ++i)
    for (size_t j = i + 1; j < cert.canonical_tori.size(); ++j)
      if (!disjoint(window, cert.canonical_tori[i], cert.canonical_tori[j]))
        violate(dis, "tori " + std::to_string(i) + " and " + std::to_string(j) + " of the canonical tori intersect");
  rep.checks.push_back(dis);

  auto can = verdict("canonical tori of weight <= C1", w);
  for (size_t i = 0; i < cert.canonical_tori.size(); ++i) {
    if (!subset_of(cert.canonical_tori[i].support(), cert.region)) violate(can, "canonical torus " + std::to_string(i) + " leaves the region");
    if (weight(window, cert.canonical_tori[i]) > c1) violate(can, "canonical torus " + std::to_string(i) + " is heavier than C1");
    for (size_t k = 0; k < census.tori.size(); ++k)
      if (meets_essentially(window, cert.canonical_tori[i], census.tori[k].coords))
        violate(can, "canonical torus " + std::to_string(i) + " meets census torus " + std::to_string(k));
  }
  rep.checks.push_back(can);

  auto pieces = verdict("pieces Seifert", w);
  if (dis.holds) {
    auto sp = region_pieces(window, sum_of(window.size(), cert.canonical_tori), cert.region);
    if (static_cast<int>(cert.piece_labels.size()) != sp.count)
      violate(pieces, std::to_string(sp.count) + " pieces but " + std::to_string(cert.piece_labels.size()) + " labels");
    for (size_t k = 0; k < cert.piece_labels.size(); ++k)
      if (cert.piece_labels[k] != PieceLabel::Seifert) violate(pieces, "piece " + std::to_string(k) + " is not Seifert");
  } else {
    violate(pieces, "canonical tori are not disjoint");
  }
  rep.checks.push_back(pieces);

  auto inside = verdict("noncanonical census tori inside the region", w);
  auto either = verdict("canonical census tori inside or outside the region", w);
  auto listed = verdict("tori listed outside", w);
  for (size_t k = 0; k < census.tori.size(); ++k) {
    auto sup = census.tori[k].coords.support();
    bool in = subset_of(sup, cert.region), touches = meets(sup, cert.region);
    if (census.tori[k].label == TorusLabel::Noncanonical && !in)
      violate(inside, "census torus " + std::to_string(k) + " leaves the region");
    if (census.tori[k].label == TorusLabel::Canonical && touches && !in)
      violate(either, "census torus " + std::to_string(k) + " straddles the boundary of the region");
  }
  for (int k : cert.outside) {
    if (k < 0 || k >= static_cast<int>(census.tori.size()))
      throw Error(ErrorCode::InvalidArgument, "outside list names no census torus");
    if (subset_of(census.tori[k].coords.support(), cert.region))
      violate(listed, "census torus " + std::to_string(k) + " lies in the region but is listed outside");
  }
  rep.checks.push_back(inside);
  rep.checks.push_back(either);
  rep.checks.push_back(listed);

  auto par = verdict("boundary tori not parallel", w);
  for (size_t i = 0; i < cert.boundary.size(); ++i) {
    if (!is_single_torus(window, cert.boundary[i])) violate(par, "boundary member " + std::to_string(i) + " is not a torus");
    for (size_t j = i + 1; j < cert.boundary.size(); ++j)
      if (cert.boundary[i] == cert.boundary[j])
        violate(par, "boundary tori " + std::to_string(i) + " and " + std::to_string(j) + " are parallel");
  }
  rep.checks.push_back(par);
  return rep;
}

// ---------------------------------------------------------------------------
// Growth and limits.

int region_boundary_components(const Triangulation& tri, const std::set<int>& region) {
  std::vector<std::array<int, 2>> faces;
  for (int t : region)
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g.boundary() && !region.count(g.tet)) faces.push_back({t, f});
    }
  UnionFind uf(static_cast<int>(faces.size()));
  std::map<int, int> by_edge;
  for (int i = 0; i < static_cast<int>(faces.size()); ++i) {
    auto fv = face_vertices(faces[i][1]);
    for (int a = 0; a < 3; ++a)
      for (int b = a + 1; b < 3; ++b) {
        int e = tri.edge_class(faces[i][0], edge_index(fv[a], fv[b]));
        auto [it, fresh] = by_edge.emplace(e, i);
        if (!fresh) uf.unite(i, it->second);
      }
  }
  int n = 0;
  uf.labels(&n);
  return n;
}

TautSequence grow_taut_sequence(const Triangulation& window,
                                const std::vector<std::pair<NormalCoordinates, NormalCoordinates>>& seeds,
                                const TorusCensus& census, long c1) {
  TautSequence seq;
  seq.stages.push_back({});
  for (size_t k = 0; k < seeds.size(); ++k) {
    const auto& [a, b] = seeds[k];
    auto sa = realize_surface(window, a), sb = realize_surface(window, b);
    auto p = intersect_surfaces(sa, sb);
    if (!essential_circle(p))
      throw Error(ErrorCode::SeedDegenerate, "seed pair " + std::to_string(k) + " has no essential circle");
    TautStage st;
    st.region = seq.stages.back().region;
    for (int t : a.support()) st.region.insert(t);
    for (int t : b.support()) st.region.insert(t);
    try {
      st.datum = seifert_neighborhood(sa, sb, p);
    } catch (const Error& e) {
      if (e.code() != ErrorCode::NonParallelCircles) throw;
    }
    const auto& prev = seq.stages.back().region;
    st.includes_previous = std::includes(st.region.begin(), st.region.end(), prev.begin(), prev.end());
    st.boundary_components = region_boundary_components(window, st.region);
    GraphCertificate cert;
    cert.region = st.region;
    int pieces = region_pieces(window, NormalCoordinates(window.size()), st.region).count;
    cert.piece_labels.assign(pieces, PieceLabel::Seifert);
    if (st.datum) cert.seifert_evidence.push_back(*st.datum);
    st.audit = audit_graph_submanifold(window, cert, census, c1);
    seq.stages.push_back(std::move(st));
  }
  return seq;
}

LimitAssembly assemble_limit_region(LazyComplex& complex, const LimitStages& stages,
                                    const std::vector<GlobalTet>& focus, GlobalTet center, int radius,
                                    long disk_slack_bound) {
  if (focus.empty()) throw Error(ErrorCode::InvalidArgument, "empty focus region");
  LimitAssembly out;
  for (size_t k = 0; k < stages.regions.size(); ++k) {
    if (k > 0 && !std::includes(stages.regions[k].begin(), stages.regions[k].end(), stages.regions[k - 1].begin(),
                                stages.regions[k - 1].end()))
      throw Error(ErrorCode::NotMonotone, "stage " + std::to_string(k) + " does not contain the previous stage");
    out.region.insert(stages.regions[k].begin(), stages.regions[k].end());
  }
  long lo = focus.front().block, hi = lo;
  for (const auto& g : focus) {
    lo = std::min(lo, g.block);
    hi = std::max(hi, g.block);
  }
  auto window = std::make_shared<const Triangulation>(complex.materialize(lo, hi));
  // Crossing classes per edge: the k-th crossing of one boundary sequence
  // followed through the stages.
  std::map<int, std::map<std::pair<int, int>, std::vector<double>>> classes;
  for (size_t b = 0; b < stages.boundary.size(); ++b)
    for (const auto& member : stages.boundary[b].members) {
      NormalCoordinates c(window->size());
      for (const auto& [g, tc] : member) {
        int t = window->find_global(g);
        if (t >= 0) c.tets[t] = tc;
      }
      auto s = realize_surface(window, c);
      for (int e = 0; e < window->num_edges(); ++e)
        for (int k = 0; k < s.crossing_count(e); ++k)
          classes[e][{static_cast<int>(b), k}].push_back(s.params[s.crossing_offset[e] + k]);
    }
  for (const auto& [e, byclass] : classes) {
    std::vector<std::vector<double>> pts;
    for (const auto& [key, ps] : byclass) pts.push_back(ps);
    auto hulls = disjointify_intervals(pts);
    for (size_t i = 0; i < hulls.size(); ++i)
      for (size_t j = i + 1; j < hulls.size(); ++j)
        if (!(hulls[i].shrunk_hi < hulls[j].shrunk_lo || hulls[j].shrunk_hi < hulls[i].shrunk_lo) &&
            !(hulls[i].shrunk_lo == hulls[i].shrunk_hi && hulls[j].shrunk_lo == hulls[j].shrunk_hi &&
              hulls[i].shrunk_lo != hulls[j].shrunk_lo))
          throw Error(ErrorCode::OverlapUnresolved, "remapped hulls collide on edge " + std::to_string(e));
    ++out.remapped_edges;
  }
  for (const auto& seq : stages.boundary) {
    auto lim = limit_surface(complex, seq, focus);
    NscSurface f;
    f.name = "limit";
    for (const auto& [g, c] : lim.limit) {
      NscEntry e;
      e.kind = NscEntry::Kind::Global;
      e.block = g.block;
      e.local = g.local;
      e.coords = c;
      f.entries.push_back(e);
    }
    out.ends.push_back(classify_limit_ends(complex, f, center, radius, disk_slack_bound));
    out.limits.push_back(std::move(lim));
  }
  return out;
}

}  // namespace plsplit
