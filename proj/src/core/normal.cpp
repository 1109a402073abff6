#include "normal.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>

#include "union_find.hpp"

namespace plsplit {

namespace {

std::string tet_face(int t, int f) { return "tet " + std::to_string(t) + " face " + std::to_string(f); }

bool quad_meets_edge(int q, int a, int b) { return quad_partner(q, a) != b; }

int nonzero_quad(const TetCoords& c) {
  int found = -1;
  for (int q = 0; q < 3; ++q) {
    if (c[kQuad0 + q] == 0) continue;
    if (found >= 0) return -2;
    found = q;
  }
  return found;
}

}  // namespace

long edge_crossings(const TetCoords& c, int e) {
  int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
  long n = c[a] + c[b];
  for (int q = 0; q < 3; ++q)
    if (quad_meets_edge(q, a, b)) n += c[kQuad0 + q];
  return n;
}

long arc_count(const TetCoords& c, int f, int v) { return c[v] + c[kQuad0 + quad_cutting(f, v)]; }

bool NormalCoordinates::is_zero() const {
  for (const auto& t : tets)
    for (long x : t)
      if (x != 0) return false;
  return true;
}

std::vector<int> NormalCoordinates::support() const {
  std::vector<int> out;
  for (int t = 0; t < size(); ++t)
    if (std::any_of(tets[t].begin(), tets[t].end(), [](long x) { return x != 0; })) out.push_back(t);
  return out;
}

NormalCoordinates NormalCoordinates::operator+(const NormalCoordinates& o) const {
  if (o.size() != size()) throw Error(ErrorCode::InvalidArgument, "coordinate vectors differ in length");
  NormalCoordinates out(size());
  for (int t = 0; t < size(); ++t)
    for (int i = 0; i < 7; ++i) out.tets[t][i] = tets[t][i] + o.tets[t][i];
  return out;
}

NormalCoordinates NormalCoordinates::scaled(long k) const {
  NormalCoordinates out = *this;
  for (auto& t : out.tets)
    for (long& x : t) x *= k;
  return out;
}

bool quads_compatible(const NormalCoordinates& c) {
  return std::none_of(c.tets.begin(), c.tets.end(), [](const TetCoords& t) { return nonzero_quad(t) == -2; });
}

bool quads_compatible(const NormalCoordinates& a, const NormalCoordinates& b) {
  return quads_compatible(a + b);
}

bool satisfies_matching(const Triangulation& tri, const NormalCoordinates& c, std::string* why) {
  if (c.size() != tri.size()) {
    if (why) *why = "coordinate vector has " + std::to_string(c.size()) + " tets, complex has " +
                    std::to_string(tri.size());
    return false;
  }
  for (int t = 0; t < tri.size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      if (g.boundary()) continue;
      for (int v : face_vertices(f)) {
        long here = arc_count(c.tets[t], f, v);
        long there = arc_count(c.tets[g.tet], g.perm[f], g.perm[v]);
        if (here != there) {
          if (why)
            *why = tet_face(t, f) + " corner " + std::to_string(v) + ": " + std::to_string(here) + " arcs vs " +
                   std::to_string(there);
          return false;
        }
      }
    }
  }
  return true;
}

std::vector<long> edge_weights(const Triangulation& tri, const NormalCoordinates& c) {
  if (c.size() != tri.size()) throw Error(ErrorCode::InvalidArgument, "coordinate vector length mismatch");
  std::vector<long> w(tri.num_edges(), -1);
  for (int t = 0; t < tri.size(); ++t) {
    for (int e = 0; e < 6; ++e) {
      long n = edge_crossings(c.tets[t], e);
      long& slot = w[tri.edge_class(t, e)];
      if (slot < 0) slot = n;
      else if (slot != n)
        throw Error(ErrorCode::NotNormal, "edge class " + std::to_string(tri.edge_class(t, e)) +
                                              " is crossed " + std::to_string(slot) + " and " +
                                              std::to_string(n) + " times from different tets");
    }
  }
  return w;
}

long weight(const Triangulation& tri, const NormalCoordinates& c) {
  auto w = edge_weights(tri, c);
  return std::accumulate(w.begin(), w.end(), 0L);
}

// ---------------------------------------------------------------------------
// Bounded enumeration: depth-first over tets in breadth-first order. A tet
// reached through a face has its triangle counts on that face's corners
// fixed by the neighbour's arcs up to the choice of quad; only the triangle
// type opposite the face is free.

namespace {

class BoundedSearch {
 public:
  BoundedSearch(const Triangulation& tri, const EnumerateOptions& opt) : tri_(tri), opt_(opt) {
    if (opt.max_weight < 0 && opt.max_coord < 0)
      throw Error(ErrorCode::InvalidArgument, "bounded enumeration needs a weight or coordinate bound");
    cap_ = opt.max_coord >= 0 ? opt.max_coord : opt.max_weight;
    if (opt.max_weight >= 0) cap_ = std::min(cap_, opt.max_weight);
    const int n = tri.size();
    closed_face_.assign(n, {false, false, false, false});
    if (opt.closed) {
      for (int t = 0; t < n; ++t)
        for (int f = 0; f < 4; ++f) closed_face_[t][f] = tri.gluing(t, f).boundary();
      for (auto [t, f] : opt.extra_closed_faces) {
        if (t < 0 || t >= n || f < 0 || f > 3) throw Error(ErrorCode::InvalidArgument, "closed face out of range");
        closed_face_[t][f] = true;
      }
    }
    order_pos_.assign(n, -1);
    for (int s = 0; s < n; ++s) {
      if (order_pos_[s] >= 0) continue;
      std::deque<int> queue{s};
      order_pos_[s] = static_cast<int>(order_.size());
      order_.push_back(s);
      parent_face_.push_back(-1);
      while (!queue.empty()) {
        int t = queue.front();
        queue.pop_front();
        for (int f = 0; f < 4; ++f) {
          const Gluing& g = tri.gluing(t, f);
          if (g.boundary() || order_pos_[g.tet] >= 0) continue;
          order_pos_[g.tet] = static_cast<int>(order_.size());
          order_.push_back(g.tet);
          parent_face_.push_back(g.perm[f]);
          queue.push_back(g.tet);
        }
      }
    }
    current_ = NormalCoordinates(n);
    class_value_.assign(tri.num_edges(), 0);
    class_refs_.assign(tri.num_edges(), 0);
  }

  std::vector<NormalCoordinates> run() {
    descend(0);
    std::sort(out_.begin(), out_.end());
    return out_;
  }

 private:
  void descend(int k) {
    if (k == static_cast<int>(order_.size())) {
      out_.push_back(current_);
      return;
    }
    int t = order_[k];
    int pf = parent_face_[k];
    if (pf < 0) {
      root_candidates(k, t);
      return;
    }
    const Gluing& g = tri_.gluing(t, pf);
    std::array<long, 4> arcs{};
    for (int v : face_vertices(pf)) arcs[v] = arc_count(current_.tets[g.tet], g.perm[pf], g.perm[v]);
    for (int q = -1; q < 3; ++q) {
      int corner = q < 0 ? -1 : quad_partner(q, pf);
      long qmax = q < 0 ? 0 : std::min(arcs[corner], cap_);
      for (long Q = (q < 0 ? 0 : 1); Q <= qmax; ++Q) {
        TetCoords c{};
        for (int v : face_vertices(pf)) c[v] = arcs[v] - (v == corner ? Q : 0);
        if (q >= 0) c[kQuad0 + q] = Q;
        bool ok = true;
        for (int v : face_vertices(pf))
          if (c[v] > cap_) ok = false;
        if (!ok) continue;
        for (long tf = 0; tf <= cap_; ++tf) {
          c[pf] = tf;
          if (!try_candidate(k, t, c)) {
            // larger t_f only increases crossings; stop once over the weight bound
            if (over_weight_) break;
          }
        }
      }
    }
  }

  void root_candidates(int k, int t) {
    TetCoords c{};
    for (int q = -1; q < 3; ++q) {
      long qlo = q < 0 ? 0 : 1, qhi = q < 0 ? 0 : cap_;
      for (long Q = qlo; Q <= qhi; ++Q) {
        c = TetCoords{};
        if (q >= 0) c[kQuad0 + q] = Q;
        root_triangles(k, t, c, 0);
      }
    }
  }

  void root_triangles(int k, int t, TetCoords& c, int v) {
    if (v == 4) {
      try_candidate(k, t, c);
      return;
    }
    for (long x = 0; x <= cap_; ++x) {
      c[v] = x;
      if (opt_.max_weight >= 0) {
        bool over = false;
        for (int e = 0; e < 6; ++e)
          if (kEdgeVertices[e][1] <= v && edge_crossings(c, e) > opt_.max_weight) over = true;
        if (over) break;
      }
      root_triangles(k, t, c, v + 1);
    }
    c[v] = 0;
  }

  // Returns false if rejected; sets over_weight_ when rejected for weight.
  bool try_candidate(int k, int t, const TetCoords& c) {
    over_weight_ = false;
    if (++nodes_ > opt_.budget)
      throw Error(ErrorCode::WindowTooLarge,
                  "bounded enumeration exceeded " + std::to_string(opt_.budget) + " search nodes");
    for (int f = 0; f < 4; ++f) {
      if (!closed_face_[t][f]) continue;
      for (int v : face_vertices(f))
        if (arc_count(c, f, v) != 0) return false;
    }
    current_.tets[t] = c;
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri_.gluing(t, f);
      if (g.boundary() || order_pos_[g.tet] > k) continue;
      for (int v : face_vertices(f))
        if (arc_count(c, f, v) != arc_count(current_.tets[g.tet], g.perm[f], g.perm[v])) {
          current_.tets[t] = TetCoords{};
          return false;
        }
    }
    std::array<int, 6> pushed{};
    int npushed = 0;
    bool ok = true;
    long added = 0;
    for (int e = 0; e < 6 && ok; ++e) {
      int cls = tri_.edge_class(t, e);
      long n = edge_crossings(c, e);
      if (class_refs_[cls] > 0) {
        if (class_value_[cls] != n) ok = false;
      } else {
        class_value_[cls] = n;
        added += n;
      }
      if (ok) {
        ++class_refs_[cls];
        pushed[npushed++] = cls;
      }
    }
    if (ok && opt_.max_weight >= 0 && weight_ + added > opt_.max_weight) {
      ok = false;
      over_weight_ = true;
    }
    if (ok) {
      weight_ += added;
      descend(k + 1);
      weight_ -= added;
    }
    for (int i = 0; i < npushed; ++i) --class_refs_[pushed[i]];
    current_.tets[t] = TetCoords{};
    return ok;
  }

  const Triangulation& tri_;
  const EnumerateOptions& opt_;
  long cap_ = 0;
  std::vector<std::array<bool, 4>> closed_face_;
  std::vector<int> order_;
  std::vector<int> order_pos_;
  std::vector<int> parent_face_;
  NormalCoordinates current_;
  std::vector<long> class_value_;
  std::vector<int> class_refs_;
  long weight_ = 0;
  long nodes_ = 0;
  bool over_weight_ = false;
  std::vector<NormalCoordinates> out_;
};

}  // namespace

std::vector<NormalCoordinates> enumerate_bounded(const Triangulation& tri, const EnumerateOptions& opt) {
  return BoundedSearch(tri, opt).run();
}

// ---------------------------------------------------------------------------
// Vertex enumeration by double description in standard coordinates, with
// rays violating the quad constraints discarded after every step.

namespace {

using Int = __int128;

constexpr size_t kMaxRays = 20000;

struct Ray {
  std::vector<long> v;
  std::vector<uint64_t> zero;  // bitset of zero coordinates
};

std::vector<uint64_t> zero_set(const std::vector<long>& v) {
  std::vector<uint64_t> z((v.size() + 63) / 64, 0);
  for (size_t i = 0; i < v.size(); ++i)
    if (v[i] == 0) z[i / 64] |= uint64_t{1} << (i % 64);
  return z;
}

bool contains(const std::vector<uint64_t>& big, const std::vector<uint64_t>& small) {
  for (size_t i = 0; i < big.size(); ++i)
    if ((small[i] & ~big[i]) != 0) return false;
  return true;
}

Int gcd128(Int a, Int b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Int t = a % b;
    a = b;
    b = t;
  }
  return a;
}

bool quad_ok(const std::vector<long>& v) {
  for (size_t t = 0; t * 7 < v.size(); ++t) {
    int nz = 0;
    for (int q = 0; q < 3; ++q)
      if (v[t * 7 + kQuad0 + q] != 0) ++nz;
    if (nz > 1) return false;
  }
  return true;
}

}  // namespace

std::vector<NormalCoordinates> enumerate_vertex(const Triangulation& tri, int max_tets) {
  const int n = tri.size();
  if (n > max_tets)
    throw Error(ErrorCode::WindowTooLarge, "vertex enumeration is limited to " + std::to_string(max_tets) +
                                               " tets, window has " + std::to_string(n));
  const int dim = 7 * n;
  std::vector<std::vector<long>> equations;
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      if (g.boundary()) continue;
      if (g.tet < t || (g.tet == t && g.perm[f] < f)) continue;
      for (int v : face_vertices(f)) {
        std::vector<long> h(dim, 0);
        h[7 * t + v] += 1;
        h[7 * t + kQuad0 + quad_cutting(f, v)] += 1;
        int pv = g.perm[v], pf = g.perm[f];
        h[7 * g.tet + pv] -= 1;
        h[7 * g.tet + kQuad0 + quad_cutting(pf, pv)] -= 1;
        if (std::any_of(h.begin(), h.end(), [](long x) { return x != 0; })) equations.push_back(std::move(h));
      }
    }
  }
  std::vector<Ray> rays;
  for (int i = 0; i < dim; ++i) {
    Ray r;
    r.v.assign(dim, 0);
    r.v[i] = 1;
    r.zero = zero_set(r.v);
    rays.push_back(std::move(r));
  }
  for (const auto& h : equations) {
    std::vector<Int> dot(rays.size());
    for (size_t i = 0; i < rays.size(); ++i) {
      Int s = 0;
      for (int j = 0; j < dim; ++j)
        if (h[j] != 0) s += static_cast<Int>(h[j]) * rays[i].v[j];
      dot[i] = s;
    }
    std::vector<Ray> next;
    std::vector<size_t> pos, neg;
    for (size_t i = 0; i < rays.size(); ++i) {
      if (dot[i] == 0) next.push_back(rays[i]);
      else if (dot[i] > 0) pos.push_back(i);
      else neg.push_back(i);
    }
    for (size_t p : pos) {
      for (size_t m : neg) {
        std::vector<uint64_t> common(rays[p].zero.size());
        for (size_t w = 0; w < common.size(); ++w) common[w] = rays[p].zero[w] & rays[m].zero[w];
        bool adjacent = true;
        for (size_t r = 0; r < rays.size() && adjacent; ++r)
          if (r != p && r != m && contains(rays[r].zero, common)) adjacent = false;
        if (!adjacent) continue;
        std::vector<Int> comb(dim);
        Int g = 0;
        for (int j = 0; j < dim; ++j) {
          comb[j] = dot[p] * rays[m].v[j] - dot[m] * rays[p].v[j];
          g = gcd128(g, comb[j]);
        }
        Ray r;
        r.v.resize(dim);
        for (int j = 0; j < dim; ++j) {
          Int x = comb[j] / g;
          if (x > std::numeric_limits<long>::max())
            throw Error(ErrorCode::WindowTooLarge, "vertex enumeration overflowed 64-bit coordinates");
          r.v[j] = static_cast<long>(x);
        }
        if (!quad_ok(r.v)) continue;
        r.zero = zero_set(r.v);
        next.push_back(std::move(r));
      }
    }
    rays = std::move(next);
    if (rays.size() > kMaxRays)
      throw Error(ErrorCode::WindowTooLarge, "vertex enumeration exceeded " + std::to_string(kMaxRays) +
                                                 " intermediate rays");
  }
  std::vector<NormalCoordinates> out;
  for (const auto& r : rays) {
    NormalCoordinates c(n);
    for (int t = 0; t < n; ++t)
      for (int i = 0; i < 7; ++i) c.tets[t][i] = r.v[7 * t + i];
    out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Realization.

std::vector<int> disk_cycle(int type) {
  if (type < kQuad0) {
    std::vector<int> out;
    for (int x = 0; x < 4; ++x)
      if (x != type) out.push_back(edge_index(type, x));
    return out;
  }
  int q = type - kQuad0;
  int a = 0, b = quad_partner(q, 0);
  std::array<int, 2> cd{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != a && v != b) cd[k++] = v;
  return {edge_index(a, cd[0]), edge_index(a, cd[1]), edge_index(b, cd[1]), edge_index(b, cd[0])};
}

int RealizedSurface::crossing_edge(int crossing) const {
  auto it = std::upper_bound(crossing_offset.begin(), crossing_offset.end(), crossing);
  return static_cast<int>(it - crossing_offset.begin()) - 1;
}

namespace {

// Position of a disk's crossing on tet edge (a, b), counted from a.
long position_from(const TetCoords& c, int type, int index, int a, int b) {
  long n = edge_crossings(c, edge_index(a, b));
  if (type == a) return index;
  if (type == b) return n - 1 - index;
  int q = type - kQuad0;
  long Q = c[type];
  return c[a] + (quad_zero_side(q, a) ? index : Q - 1 - index);
}

bool disk_meets_edge(int type, int a, int b) {
  if (type < kQuad0) return type == a || type == b;
  return quad_meets_edge(type - kQuad0, a, b);
}

// Corner of face f cut off by the disk's arc there, or -1.
int disk_corner(int type, int f) {
  if (type < kQuad0) return type == f ? -1 : type;
  return quad_partner(type - kQuad0, f);
}

}  // namespace

RealizedSurface realize_surface(std::shared_ptr<const Triangulation> tri_ptr, const NormalCoordinates& c) {
  const Triangulation& tri = *tri_ptr;
  if (c.size() != tri.size())
    throw Error(ErrorCode::InvalidArgument, "coordinate vector length does not match the complex");
  for (int t = 0; t < c.size(); ++t) {
    for (long x : c.tets[t])
      if (x < 0) throw Error(ErrorCode::NotNormal, "negative coordinate in tet " + std::to_string(t));
    if (nonzero_quad(c.tets[t]) == -2)
      throw Error(ErrorCode::QuadConflict, "tet " + std::to_string(t) + " has two nonzero quad types");
  }
  std::string why;
  if (!satisfies_matching(tri, c, &why)) throw Error(ErrorCode::NotNormal, "matching equations fail: " + why);
  auto weights = edge_weights(tri, c);

  RealizedSurface s;
  s.tri = tri_ptr;
  s.coords = c;
  s.crossing_offset.assign(tri.num_edges() + 1, 0);
  for (int e = 0; e < tri.num_edges(); ++e) s.crossing_offset[e + 1] = s.crossing_offset[e] + static_cast<int>(weights[e]);
  s.params.resize(s.num_crossings());
  for (int e = 0; e < tri.num_edges(); ++e) {
    long n = weights[e];
    for (long k = 0; k < n; ++k)
      s.params[s.crossing_offset[e] + k] = -1.0 + 2.0 * static_cast<double>(k + 1) / static_cast<double>(n + 1);
  }

  for (int t = 0; t < tri.size(); ++t)
    for (int type = 0; type < 7; ++type)
      for (long j = 0; j < c.tets[t][type]; ++j) s.disks.push_back(Disk{t, type, static_cast<int>(j)});

  const int nd = static_cast<int>(s.disks.size());
  s.disk_crossing.assign(nd, {-1, -1, -1, -1, -1, -1});
  s.disk_arc.assign(nd, {-1, -1, -1, -1});
  s.disk_arc_dir.assign(nd, {0, 0, 0, 0});
  std::map<std::array<int, 3>, int> arc_ids;
  for (int d = 0; d < nd; ++d) {
    const Disk& disk = s.disks[d];
    const TetCoords& tc = c.tets[disk.tet];
    for (int e = 0; e < 6; ++e) {
      int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
      if (!disk_meets_edge(disk.type, a, b)) continue;
      long n = edge_crossings(tc, e);
      long pos = position_from(tc, disk.type, disk.index, a, b);
      long k = tri.edge_direction(disk.tet, e) > 0 ? pos : n - 1 - pos;
      s.disk_crossing[d][e] = s.crossing_offset[tri.edge_class(disk.tet, e)] + static_cast<int>(k);
    }
    auto cycle = disk_cycle(disk.type);
    for (int f = 0; f < 4; ++f) {
      int corner = disk_corner(disk.type, f);
      if (corner < 0) continue;
      std::array<int, 2> others{};
      int k = 0;
      for (int v : face_vertices(f))
        if (v != corner) others[k++] = v;
      int e1 = edge_index(corner, others[0]), e2 = edge_index(corner, others[1]);
      Perm4 to_rep = tri.face_to_rep(disk.tet, f);
      int r1 = edge_index(to_rep[corner], to_rep[others[0]]);
      int r2 = edge_index(to_rep[corner], to_rep[others[1]]);
      if (r2 < r1) std::swap(e1, e2);
      int index = static_cast<int>(position_from(tc, disk.type, disk.index, corner, others[0]));
      std::array<int, 3> key{tri.face_class(disk.tet, f), to_rep[corner], index};
      std::array<int, 2> ends{s.disk_crossing[d][e1], s.disk_crossing[d][e2]};
      auto it = arc_ids.find(key);
      int id;
      if (it == arc_ids.end()) {
        id = static_cast<int>(s.arcs.size());
        arc_ids.emplace(key, id);
        RealizedSurface::Arc arc;
        arc.face_class = key[0];
        arc.corner = key[1];
        arc.index = index;
        arc.ends = ends;
        arc.disks = {d, -1};
        arc.boundary = tri.gluing(disk.tet, f).boundary();
        s.arcs.push_back(arc);
      } else {
        id = it->second;
        auto& arc = s.arcs[id];
        if (arc.ends != ends || arc.disks[1] >= 0)
          throw Error(ErrorCode::NotNormal, "arcs do not match across " + tet_face(disk.tet, f));
        arc.disks[1] = d;
      }
      s.disk_arc[d][f] = id;
      int i1 = static_cast<int>(std::find(cycle.begin(), cycle.end(), e1) - cycle.begin());
      int i2 = static_cast<int>(std::find(cycle.begin(), cycle.end(), e2) - cycle.begin());
      int len = static_cast<int>(cycle.size());
      s.disk_arc_dir[d][f] = ((i1 + 1) % len == i2) ? 1 : -1;
      int side = s.arcs[id].disks[1] == d ? 1 : 0;
      s.arcs[id].dirs[side] = s.disk_arc_dir[d][f];
      s.arcs[id].faces[side] = f;
    }
  }
  for (const auto& arc : s.arcs)
    if (!arc.boundary && arc.disks[1] < 0)
      throw Error(ErrorCode::NotNormal, "unmatched arc on face class " + std::to_string(arc.face_class));
  return s;
}

RealizedSurface realize_surface(const Triangulation& tri, const NormalCoordinates& c) {
  return realize_surface(std::make_shared<const Triangulation>(tri), c);
}

// ---------------------------------------------------------------------------
// Analysis.

int arc_side(const RealizedSurface& s, int arc, int disk, int face) {
  const auto& a = s.arcs.at(arc);
  for (int side = 0; side < 2; ++side)
    if (a.disks[side] == disk && a.faces[side] == face) return side;
  throw Error(ErrorCode::InvalidArgument, "disk does not carry the arc through that face");
}

bool cuts_toward_corner(int type, int f) {
  if (type < kQuad0) return true;
  int q = type - kQuad0;
  return quad_zero_side(q, quad_partner(q, f));
}

std::vector<int> front_sides(const RealizedSurface& s) {
  const int nd = static_cast<int>(s.disks.size());
  UnionFind uf(nd);
  for (const auto& arc : s.arcs) {
    if (arc.disks[1] < 0) continue;
    int rel = cuts_toward_corner(s.disks[arc.disks[0]].type, arc.faces[0]) !=
              cuts_toward_corner(s.disks[arc.disks[1]].type, arc.faces[1]);
    if (!uf.unite(arc.disks[0], arc.disks[1], rel))
      throw Error(ErrorCode::OneSided, "surface is one-sided near disk " + std::to_string(arc.disks[0]));
  }
  std::vector<int> out(nd);
  for (int d = 0; d < nd; ++d) uf.find(d, out[d]);
  return out;
}

const char* kind_name(SurfaceKind k) {
  switch (k) {
    case SurfaceKind::Sphere: return "Sphere";
    case SurfaceKind::Torus: return "Torus";
    case SurfaceKind::Klein: return "Klein";
    case SurfaceKind::Disk: return "Disk";
    case SurfaceKind::Annulus: return "Annulus";
    case SurfaceKind::Other: return "Other";
  }
  return "Other";
}

SurfaceKind classify(long euler, bool orientable, int boundary_circles) {
  if (boundary_circles == 0) {
    if (euler == 2 && orientable) return SurfaceKind::Sphere;
    if (euler == 0) return orientable ? SurfaceKind::Torus : SurfaceKind::Klein;
  } else if (orientable) {
    if (boundary_circles == 1 && euler == 1) return SurfaceKind::Disk;
    if (boundary_circles == 2 && euler == 0) return SurfaceKind::Annulus;
  }
  return SurfaceKind::Other;
}

SurfaceReport analyze_surface(const RealizedSurface& s, const std::vector<std::array<int, 2>>& extra_boundary) {
  const Triangulation& tri = *s.tri;
  const int nd = static_cast<int>(s.disks.size());
  std::vector<bool> extra_face(tri.num_faces(), false);
  for (auto [t, f] : extra_boundary) extra_face[tri.face_class(t, f)] = true;
  auto is_boundary = [&](const RealizedSurface::Arc& a) { return a.boundary || extra_face[a.face_class]; };

  UnionFind uf(nd);
  std::vector<bool> conflict_at(nd, false);
  for (int a = 0; a < static_cast<int>(s.arcs.size()); ++a) {
    const auto& arc = s.arcs[a];
    if (is_boundary(arc) || arc.disks[1] < 0) continue;
    int d0 = arc.disks[0], d1 = arc.disks[1];
    int rel = arc.dirs[0] == arc.dirs[1] ? 1 : 0;
    if (!uf.unite(d0, d1, rel)) conflict_at[d0] = true;
  }
  SurfaceReport r;
  int ncomp = 0;
  r.disk_component = uf.labels(&ncomp);
  r.components.resize(ncomp);
  r.disk_side.assign(nd, 0);
  for (int d = 0; d < nd; ++d) {
    int par = 0;
    uf.find(d, par);
    r.disk_side[d] = par;
    auto& comp = r.components[r.disk_component[d]];
    comp.disks.push_back(d);
    comp.faces += 1;
    if (conflict_at[d]) comp.orientable = false;
  }
  // crossing and arc ownership through incident disks
  std::vector<int> crossing_comp(s.num_crossings(), -1);
  for (int d = 0; d < nd; ++d)
    for (int x : s.disk_crossing[d])
      if (x >= 0) crossing_comp[x] = r.disk_component[d];
  for (int x = 0; x < s.num_crossings(); ++x)
    if (crossing_comp[x] >= 0) r.components[crossing_comp[x]].vertices += 1;
  UnionFind bd(s.num_crossings());
  std::vector<bool> on_boundary(s.num_crossings(), false);
  for (const auto& arc : s.arcs) {
    int comp = r.disk_component[arc.disks[0]];
    if (is_boundary(arc)) {
      r.components[comp].edges += 1;
      bd.unite(arc.ends[0], arc.ends[1]);
      on_boundary[arc.ends[0]] = on_boundary[arc.ends[1]] = true;
    } else {
      r.components[comp].edges += 1;
    }
  }
  std::vector<bool> root_seen(s.num_crossings(), false);
  for (int x = 0; x < s.num_crossings(); ++x) {
    if (!on_boundary[x]) continue;
    int root = bd.find(x);
    if (root_seen[root]) continue;
    root_seen[root] = true;
    r.components[crossing_comp[x]].boundary_circles += 1;
  }
  for (auto& comp : r.components) {
    comp.euler = comp.vertices - comp.edges + comp.faces;
    comp.kind = classify(comp.euler, comp.orientable, comp.boundary_circles);
    r.euler += comp.euler;
  }
  return r;
}

NormalCoordinates component_coordinates(const RealizedSurface& s, const SurfaceReport& r, int component) {
  NormalCoordinates out(s.coords.size());
  for (int d : r.components.at(component).disks) out.tets[s.disks[d].tet][s.disks[d].type] += 1;
  return out;
}

// ---------------------------------------------------------------------------
// Curves.

NormalizeResult normalize_curve(const Triangulation& tri, const NormalCurve& curve) {
  const int n = curve.length();
  for (int i = 0; i < n; ++i) {
    const auto& seg = curve.segments[i];
    std::string where = "segment " + std::to_string(i);
    if (seg.tet < 0 || seg.tet >= tri.size() || seg.entry < 0 || seg.entry > 3 || seg.exit < 0 || seg.exit > 3)
      throw Error(ErrorCode::NotGeneralPosition, where + ": tet or face out of range");
    for (double w : seg.point)
      if (!(w > 0.0)) throw Error(ErrorCode::NotGeneralPosition, where + ": exit point lies on an edge");
    const Gluing& g = tri.gluing(seg.tet, seg.exit);
    const auto& next = curve.segments[(i + 1) % n];
    if (g.boundary()) throw Error(ErrorCode::NotGeneralPosition, where + ": exits through a boundary face");
    if (g.tet != next.tet || g.perm[seg.exit] != next.entry)
      throw Error(ErrorCode::NotGeneralPosition, where + ": exit face is not glued to the next entry face");
  }
  NormalizeResult r;
  std::vector<NormalCurve::Segment> segs = curve.segments;
  bool changed = true;
  while (changed && !segs.empty()) {
    changed = false;
    const int m = static_cast<int>(segs.size());
    for (int i = 0; i < m; ++i) {
      if (segs[i].entry != segs[i].exit) continue;
      r.moves.push_back("backtrack in tet " + std::to_string(segs[i].tet) + " at face " +
                        std::to_string(segs[i].entry));
      if (m <= 2) {
        segs.clear();
      } else {
        int prev = (i + m - 1) % m, next = (i + 1) % m;
        NormalCurve::Segment merged{segs[prev].tet, segs[prev].entry, segs[next].exit, segs[next].point};
        std::vector<NormalCurve::Segment> out;
        for (int j = 0; j < m; ++j) {
          if (j == i || j == next) continue;
          out.push_back(j == prev ? merged : segs[j]);
        }
        // keep the cyclic start stable when the merged segment wrapped around
        segs = std::move(out);
      }
      changed = true;
      break;
    }
  }
  r.curve.segments = std::move(segs);
  r.trivial = r.curve.segments.empty();
  return r;
}

// ---------------------------------------------------------------------------
// .nsc files: `surf <name> tet <id>: t0 t1 t2 t3 q0 q1 q2`, where <id> is a
// window index, `block:local`, or `*:local` for every block.

namespace {

[[noreturn]] void nsc_fail(int line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

NscEntry parse_nsc_id(const std::string& id, int line) {
  NscEntry e;
  auto colon = id.find(':');
  try {
    size_t used = 0;
    if (colon == std::string::npos) {
      e.kind = NscEntry::Kind::Index;
      e.tet = std::stoi(id, &used);
      if (used != id.size() || e.tet < 0) nsc_fail(line, "bad tet id '" + id + "'");
      return e;
    }
    std::string head = id.substr(0, colon), tail = id.substr(colon + 1);
    e.local = std::stoi(tail, &used);
    if (used != tail.size() || e.local < 0) nsc_fail(line, "bad local id in '" + id + "'");
    if (head == "*") {
      e.kind = NscEntry::Kind::Periodic;
    } else {
      e.kind = NscEntry::Kind::Global;
      e.block = std::stol(head, &used);
      if (used != head.size()) nsc_fail(line, "bad block id in '" + id + "'");
    }
  } catch (const std::logic_error&) {
    nsc_fail(line, "bad tet id '" + id + "'");
  }
  return e;
}

std::string nsc_id(const NscEntry& e) {
  switch (e.kind) {
    case NscEntry::Kind::Index: return std::to_string(e.tet);
    case NscEntry::Kind::Global: return std::to_string(e.block) + ":" + std::to_string(e.local);
    case NscEntry::Kind::Periodic: return "*:" + std::to_string(e.local);
  }
  return "";
}

}  // namespace

std::vector<NscSurface> parse_nsc(std::istream& in) {
  std::vector<NscSurface> out;
  std::map<std::string, size_t> by_name;
  std::string raw;
  int lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    auto hash = raw.find('#');
    if (hash != std::string::npos) raw.resize(hash);
    std::istringstream ls(raw);
    std::string word;
    if (!(ls >> word)) continue;
    if (word != "surf") nsc_fail(lineno, "expected 'surf', got '" + word + "'");
    std::string name, tet_kw, id;
    if (!(ls >> name)) nsc_fail(lineno, "expected 'surf <name>'");
    if (!(ls >> tet_kw)) {
      // a bare declaration names a surface that may have no entries
      if (by_name.emplace(name, out.size()).second) out.push_back(NscSurface{name, {}});
      continue;
    }
    if (tet_kw != "tet" || !(ls >> id)) nsc_fail(lineno, "expected 'surf <name> tet <id>:'");
    if (id.empty() || id.back() != ':') {
      std::string colon;
      if (!(ls >> colon) || colon != ":") nsc_fail(lineno, "expected ':' after tet id");
    } else {
      id.pop_back();
    }
    NscEntry e = parse_nsc_id(id, lineno);
    for (int i = 0; i < 7; ++i) {
      std::string tok;
      if (!(ls >> tok)) nsc_fail(lineno, "expected 7 coordinates");
      try {
        size_t used = 0;
        e.coords[i] = std::stol(tok, &used);
        if (used != tok.size() || e.coords[i] < 0) nsc_fail(lineno, "bad coordinate '" + tok + "'");
      } catch (const std::logic_error&) {
        nsc_fail(lineno, "bad coordinate '" + tok + "'");
      }
    }
    std::string extra;
    if (ls >> extra) nsc_fail(lineno, "unexpected trailing token '" + extra + "'");
    auto [it, fresh] = by_name.emplace(name, out.size());
    if (fresh) out.push_back(NscSurface{name, {}});
    out[it->second].entries.push_back(e);
  }
  return out;
}

std::vector<NscSurface> parse_nsc_string(const std::string& text) {
  std::istringstream in(text);
  return parse_nsc(in);
}

std::string emit_nsc(const std::vector<NscSurface>& surfaces) {
  std::ostringstream out;
  for (const auto& s : surfaces) {
    if (s.entries.empty()) out << "surf " << s.name << '\n';
    for (const auto& e : s.entries) {
      out << "surf " << s.name << " tet " << nsc_id(e) << ":";
      for (long x : e.coords) out << ' ' << x;
      out << '\n';
    }
  }
  return out.str();
}

NscSurface to_nsc(const std::string& name, const NormalCoordinates& c) {
  NscSurface s{name, {}};
  for (int t : c.support()) {
    NscEntry e;
    e.tet = t;
    e.coords = c.tets[t];
    s.entries.push_back(e);
  }
  return s;
}

NormalCoordinates nsc_on_window(const NscSurface& s, const Triangulation& window, bool clip) {
  NormalCoordinates c(window.size());
  for (const auto& e : s.entries) {
    switch (e.kind) {
      case NscEntry::Kind::Index:
        if (e.tet >= window.size()) {
          if (clip) break;
          throw Error(ErrorCode::NotCovered, "surface " + s.name + ": tet " + std::to_string(e.tet) +
                                                 " is outside the complex");
        }
        c.tets[e.tet] = e.coords;
        break;
      case NscEntry::Kind::Global: {
        int t = window.find_global(GlobalTet{e.block, e.local});
        if (t < 0) {
          if (clip) break;
          throw Error(ErrorCode::NotCovered, "surface " + s.name + ": tet " + nsc_id(e) + " is outside the window");
        }
        c.tets[t] = e.coords;
        break;
      }
      case NscEntry::Kind::Periodic:
        if (window.origin().empty())
          throw Error(ErrorCode::InvalidArgument, "periodic surface entries need a window with block origins");
        for (int t = 0; t < window.size(); ++t)
          if (window.origin()[t].local == e.local) c.tets[t] = e.coords;
        break;
    }
  }
  return c;
}

}  // namespace plsplit
