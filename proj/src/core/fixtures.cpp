#include "fixtures.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "union_find.hpp"

namespace plsplit {

Triangulation single_tet() { return Triangulation(GluingTable(1)); }

Triangulation s3_double() {
  GluingTable t(2);
  for (int f = 0; f < 4; ++f) glue(t, 0, f, 1, Perm4());
  return Triangulation(std::move(t));
}

Triangulation s3_one_vertex() {
  return parse_tri_string(
      "tet 0: 0->0/1023 1->0/1023 2->1/1203 3->1/0231\n"
      "tet 1: 0->0/2013 1->0/0312 2->1/0132 3->1/0132\n");
}

GluingTable glue_by_keys(const std::vector<std::array<long, 4>>& tets, const std::function<long(long)>& wrap) {
  const int n = static_cast<int>(tets.size());
  GluingTable table(n);
  auto face_keys = [&](int t, int f, bool wrapped) {
    std::array<long, 3> k{};
    int i = 0;
    for (int v = 0; v < 4; ++v)
      if (v != f) k[i++] = wrapped ? wrap(tets[t][v]) : tets[t][v];
    std::sort(k.begin(), k.end());
    return k;
  };
  auto perm_between = [&](int t, int f, int u, int g, bool wrapped) {
    int img[4];
    img[f] = g;
    for (int v = 0; v < 4; ++v) {
      if (v == f) continue;
      long key = wrapped ? wrap(tets[t][v]) : tets[t][v];
      img[v] = -1;
      for (int w = 0; w < 4; ++w)
        if (w != g && tets[u][w] == key) img[v] = w;
      if (img[v] < 0) throw Error(ErrorCode::InvalidArgument, "face keys do not match");
    }
    return Perm4(img[0], img[1], img[2], img[3]);
  };
  for (const auto& k : tets) {
    std::set<long> s(k.begin(), k.end());
    if (s.size() != 4) throw Error(ErrorCode::InvalidArgument, "repeated key inside one tet");
  }
  std::map<std::array<long, 3>, std::vector<std::array<int, 2>>> faces;
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) faces[face_keys(t, f, false)].push_back({t, f});
  for (const auto& [k, list] : faces) {
    if (list.size() > 2) throw Error(ErrorCode::InvalidArgument, "face key triple shared by more than two tets");
    if (list.size() == 2)
      glue(table, list[0][0], list[0][1], list[1][0], perm_between(list[0][0], list[0][1], list[1][0], list[1][1], false));
  }
  if (wrap) {
    for (int t = 0; t < n; ++t)
      for (int f = 0; f < 4; ++f) {
        if (!table[t][f].boundary()) continue;
        bool moves = true;
        for (int v = 0; v < 4; ++v)
          if (v != f && wrap(tets[t][v]) == tets[t][v]) moves = false;
        if (!moves) continue;
        auto it = faces.find(face_keys(t, f, true));
        if (it == faces.end()) continue;
        for (auto [u, g] : it->second)
          if (table[u][g].boundary() && !(u == t && g == f)) {
            glue(table, t, f, u, perm_between(t, f, u, g, true));
            break;
          }
      }
  }
  return table;
}

std::vector<long> OrderedSurface::vertices() const {
  std::set<long> s;
  for (const auto& t : triangles) s.insert(t.begin(), t.end());
  return {s.begin(), s.end()};
}

namespace {

std::map<std::array<long, 2>, int> edge_counts(const std::vector<std::array<long, 3>>& tris) {
  std::map<std::array<long, 2>, int> edges;
  for (const auto& t : tris)
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) ++edges[{std::min(t[i], t[j]), std::max(t[i], t[j])}];
  return edges;
}

}  // namespace

void OrderedSurface::check_simplicial() const {
  std::set<std::array<long, 3>> seen;
  for (auto t : triangles) {
    std::sort(t.begin(), t.end());
    if (t[0] == t[1] || t[1] == t[2]) throw Error(ErrorCode::InvalidArgument, "triangle with a repeated vertex");
    if (!seen.insert(t).second) throw Error(ErrorCode::InvalidArgument, "two triangles share their vertices");
  }
  for (const auto& [e, c] : edge_counts(triangles))
    if (c > 2) throw Error(ErrorCode::InvalidArgument, "edge in more than two triangles");
}

long OrderedSurface::euler_characteristic() const {
  return static_cast<long>(vertices().size()) - static_cast<long>(edge_counts(triangles).size()) +
         static_cast<long>(triangles.size());
}

int OrderedSurface::boundary_edges() const {
  int b = 0;
  for (const auto& [e, c] : edge_counts(triangles))
    if (c == 1) ++b;
  return b;
}

namespace {

void add_square(std::vector<std::array<long, 3>>& out, long p00, long p10, long p11, long p01) {
  out.push_back({p00, p10, p11});
  out.push_back({p00, p01, p11});
}

}  // namespace

OrderedSurface torus_grid(int n, int m) {
  if (n < 3 || m < 3) throw Error(ErrorCode::InvalidArgument, "torus grid needs at least 3 x 3 squares");
  OrderedSurface s;
  auto id = [&](int i, int j) { return static_cast<long>((i % n) * m + (j % m)); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < m; ++j) add_square(s.triangles, id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
  return s;
}

OrderedSurface genus_surface(int g, int seg) {
  if (g < 1 || seg < 3) throw Error(ErrorCode::InvalidArgument, "genus surface needs g >= 1 and segment length >= 3");
  const int P = g * seg;
  auto pid = [&](int i, int j) { return i * (P + 1) + j; };
  UnionFind uf((P + 1) * (P + 1));
  // counterclockwise boundary walk
  std::vector<int> walk;
  for (int i = 0; i < P; ++i) walk.push_back(pid(i, 0));
  for (int j = 0; j < P; ++j) walk.push_back(pid(P, j));
  for (int i = P; i > 0; --i) walk.push_back(pid(i, P));
  for (int j = P; j > 0; --j) walk.push_back(pid(0, j));
  walk.push_back(walk.front());
  auto point = [&](int segment, int k) { return walk[segment * seg + k]; };
  for (int h = 0; h < g; ++h)
    for (int k = 0; k <= seg; ++k) {
      uf.unite(point(4 * h, k), point(4 * h + 2, seg - k));
      uf.unite(point(4 * h + 1, k), point(4 * h + 3, seg - k));
    }
  int count = 0;
  auto label = uf.labels(&count);
  OrderedSurface s;
  for (int i = 0; i < P; ++i)
    for (int j = 0; j < P; ++j)
      add_square(s.triangles, label[pid(i, j)], label[pid(i + 1, j)], label[pid(i + 1, j + 1)], label[pid(i, j + 1)]);
  s.check_simplicial();
  return s;
}

namespace {

// Freudenthal tets of the prism over an ordered triangle at one layer.
std::array<std::array<long, 4>, 3> prism_tets(std::array<long, 3> tri, int level, int layers) {
  std::sort(tri.begin(), tri.end());
  auto k = [&](long v, int lv) { return v * (layers + 1) + lv; };
  long a = tri[0], b = tri[1], c = tri[2];
  return {{{k(a, level), k(b, level), k(c, level), k(c, level + 1)},
           {k(a, level), k(b, level), k(b, level + 1), k(c, level + 1)},
           {k(a, level), k(a, level + 1), k(b, level + 1), k(c, level + 1)}}};
}

}  // namespace

ProductComplex product_complex(const OrderedSurface& base, int layers) {
  if (layers < 1) throw Error(ErrorCode::InvalidArgument, "product needs at least one layer");
  base.check_simplicial();
  ProductComplex pc;
  pc.base = base;
  pc.layers = layers;
  for (int ti = 0; ti < static_cast<int>(base.triangles.size()); ++ti)
    for (int lv = 0; lv < layers; ++lv)
      for (const auto& t : prism_tets(base.triangles[ti], lv, layers)) {
        pc.keys.push_back(t);
        pc.tet_triangle.push_back(ti);
        pc.tet_layer.push_back(lv);
      }
  const long L = layers;
  auto wrap = [L](long key) { return key % (L + 1) == L ? key - L : key; };
  pc.tri = Triangulation(glue_by_keys(pc.keys, wrap));
  return pc;
}

PeriodicSurface periodic_strip(int width, int height, bool wrap_vertical) {
  if (width < 1 || height < 1 || (wrap_vertical && height < 3))
    throw Error(ErrorCode::InvalidArgument, "strip too small");
  PeriodicSurface s;
  const int H = wrap_vertical ? height : height + 1;
  s.locals = width * H;
  auto v = [&](int x, int y) -> std::array<int, 2> {
    int off = 0;
    if (x == width) {
      x = 0;
      off = 1;
    }
    if (wrap_vertical) y %= height;
    return {off, x * H + y};
  };
  for (int x = 0; x < width; ++x)
    for (int y = 0; y < height; ++y) {
      s.triangles.push_back({v(x, y), v(x + 1, y), v(x + 1, y + 1)});
      s.triangles.push_back({v(x, y), v(x, y + 1), v(x + 1, y + 1)});
    }
  return s;
}

PeriodicSurface periodic_handle_strip(int p, int height) {
  if (p < 3 || height < 2) throw Error(ErrorCode::InvalidArgument, "handle strip needs p >= 3 and height >= 2");
  const int w = 1 + 4 * p;
  const int H = height + 1;
  PeriodicSurface s;
  s.locals = w * H;
  // top-row identifications inside one block, on x in [0, w]
  UnionFind uf(w + 1);
  for (int k = 0; k <= p; ++k) {
    uf.unite(1 + k, 1 + 3 * p - k);
    uf.unite(1 + p + k, 1 + 4 * p - k);
  }
  std::vector<int> rep(w + 1);
  for (int x = 0; x <= w; ++x) {
    rep[x] = x;
    for (int y = 0; y <= w; ++y)
      if (uf.same(x, y)) {
        rep[x] = y;
        break;
      }
  }
  auto v = [&](int x, int y) -> std::array<int, 2> {
    int off = 0;
    if (y == height) {
      if (x == 0) {
        x = w;
        off = -1;
      }
      x = rep[x];
      if (x == w) {
        x = 0;
        off += 1;
      }
      return {off, x * H + y};
    }
    if (x == w) {
      x = 0;
      off = 1;
    }
    return {off, x * H + y};
  };
  for (int x = 0; x < w; ++x)
    for (int y = 0; y < height; ++y) {
      s.triangles.push_back({v(x, y), v(x + 1, y), v(x + 1, y + 1)});
      s.triangles.push_back({v(x, y), v(x, y + 1), v(x + 1, y + 1)});
    }
  return s;
}

PeriodicProduct periodic_product(const PeriodicSurface& base, int layers) {
  if (layers < 1) throw Error(ErrorCode::InvalidArgument, "product needs at least one layer");
  PeriodicProduct pp;
  pp.base = base;
  pp.layers = layers;
  // blocks start at 1 so every key stays nonnegative
  constexpr int kFirst = 1, kLast = 5, kMid = 3;
  std::vector<std::array<long, 4>> keys;
  std::vector<int> owner;
  std::vector<int> local_index;
  OrderedSurface window_base;
  for (int b = kFirst; b <= kLast; ++b) {
    int local = 0;
    for (int ti = 0; ti < static_cast<int>(base.triangles.size()); ++ti) {
      std::array<long, 3> tri{};
      for (int i = 0; i < 3; ++i) tri[i] = base.key(b + base.triangles[ti][i][0], base.triangles[ti][i][1]);
      window_base.triangles.push_back(tri);
      for (int lv = 0; lv < layers; ++lv)
        for (const auto& t : prism_tets(tri, lv, layers)) {
          keys.push_back(t);
          owner.push_back(b);
          local_index.push_back(local++);
          if (b == kMid) {
            pp.tet_triangle.push_back(ti);
            std::array<std::array<int, 3>, 4> verts{};
            for (int i = 0; i < 4; ++i) {
              long bk = t[i] / (layers + 1);
              int lv2 = static_cast<int>(t[i] % (layers + 1));
              long blk = bk / base.locals;
              verts[i] = {static_cast<int>(blk - b), static_cast<int>(bk - blk * base.locals), lv2};
            }
            pp.tet_vertices.push_back(verts);
          }
        }
    }
  }
  window_base.check_simplicial();
  const long L = layers;
  auto wrap = [L](long key) { return key % (L + 1) == L ? key - L : key; };
  GluingTable table = glue_by_keys(keys, wrap);
  const int n = static_cast<int>(pp.tet_triangle.size());
  pp.spec.internal.assign(n, {});
  int first = (kMid - kFirst) * n;
  for (int t = first; t < first + n; ++t)
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = table[t][f];
      if (g.boundary()) continue;
      int ob = owner[g.tet];
      if (ob == kMid) {
        pp.spec.internal[t - first][f] = Gluing{local_index[g.tet], g.perm};
      } else if (ob == kMid + 1) {
        pp.spec.shifts.push_back({t - first, f, local_index[g.tet], g.perm});
      } else if (ob != kMid - 1) {
        throw Error(ErrorCode::InvalidArgument, "periodic surface glues blocks more than one apart");
      }
    }
  // declared bound: largest vertex star seen around a central block
  pp.spec.bound = 1 << 20;
  LazyComplex probe(pp.spec);
  Triangulation big = probe.materialize(-3, 3);
  int bound = 0;
  for (int v = 0; v < big.num_vertices(); ++v) bound = std::max(bound, static_cast<int>(big.vertex_star(v).size()));
  pp.spec.bound = bound;
  return pp;
}

}  // namespace plsplit
