#include "homology.hpp"

#include <unordered_map>

namespace plsplit {

namespace {

constexpr int64_t kPrime = 2147483647;

int64_t mod(int64_t a) {
  a %= kPrime;
  return a < 0 ? a + kPrime : a;
}

int64_t power(int64_t b, int64_t e) {
  int64_t r = 1;
  b = mod(b);
  while (e) {
    if (e & 1) r = r * b % kPrime;
    b = b * b % kPrime;
    e >>= 1;
  }
  return r;
}

int64_t inverse(int64_t a) { return power(a, kPrime - 2); }

void add_entry(std::map<int, long>& col, int row, long v) {
  long& x = col[row];
  x += v;
  if (x == 0) col.erase(row);
}

}  // namespace

ChainComplex chain_complex(const Triangulation& tri) {
  ChainComplex cc;
  cc.dims = {tri.num_vertices(), tri.num_edges(), tri.num_faces(), tri.size()};

  cc.d1.resize(tri.num_edges());
  for (int e = 0; e < tri.num_edges(); ++e) {
    auto [t, le] = tri.edge_rep(e);
    int a = kEdgeVertices[le][0], b = kEdgeVertices[le][1];
    add_entry(cc.d1[e], tri.vertex_class(t, b), 1);
    add_entry(cc.d1[e], tri.vertex_class(t, a), -1);
  }

  cc.d2.resize(tri.num_faces());
  for (int f = 0; f < tri.num_faces(); ++f) {
    auto [t, lf] = tri.face_rep(f);
    auto v = face_vertices(lf);
    // boundary of [v0 v1 v2] = [v1 v2] - [v0 v2] + [v0 v1]
    const std::array<std::array<int, 2>, 3> sides{{{v[1], v[2]}, {v[0], v[2]}, {v[0], v[1]}}};
    for (int i = 0; i < 3; ++i) {
      int le = edge_index(sides[i][0], sides[i][1]);
      long sign = (i % 2 == 0 ? 1 : -1) * tri.edge_direction(t, le);
      add_entry(cc.d2[f], tri.edge_class(t, le), sign);
    }
  }

  cc.d3.resize(tri.size());
  for (int t = 0; t < tri.size(); ++t) {
    for (int i = 0; i < 4; ++i) {
      auto v = face_vertices(i);
      Perm4 p = tri.face_to_rep(t, i);
      // sign of the induced ordering of the face's vertices in the representative
      std::array<int, 3> img{p[v[0]], p[v[1]], p[v[2]]};
      int inv = (img[0] > img[1]) + (img[0] > img[2]) + (img[1] > img[2]);
      long eps = (inv % 2 == 0) ? 1 : -1;
      long sign = (i % 2 == 0 ? 1 : -1) * eps;
      add_entry(cc.d3[t], tri.face_class(t, i), sign);
    }
  }
  return cc;
}

int rank_mod_p(const SparseColumns& cols) {
  std::unordered_map<int, std::map<int, int64_t>> pivots;  // pivot row -> reduced column
  int rank = 0;
  for (const auto& c : cols) {
    std::map<int, int64_t> col;
    for (auto [r, v] : c) {
      int64_t m = mod(v);
      if (m) col[r] = m;
    }
    while (!col.empty()) {
      auto it = std::prev(col.end());
      int row = it->first;
      auto pv = pivots.find(row);
      if (pv == pivots.end()) {
        pivots.emplace(row, std::move(col));
        ++rank;
        break;
      }
      int64_t factor = it->second * inverse(pv->second.at(row)) % kPrime;
      for (auto [r, v] : pv->second) {
        int64_t nv = mod(col[r] - factor * v % kPrime);
        if (nv)
          col[r] = nv;
        else
          col.erase(r);
      }
    }
  }
  return rank;
}

std::array<int, 4> betti_numbers(const Triangulation& tri) {
  auto cc = chain_complex(tri);
  int r1 = rank_mod_p(cc.d1), r2 = rank_mod_p(cc.d2), r3 = rank_mod_p(cc.d3);
  return {cc.dims[0] - r1, cc.dims[1] - r1 - r2, cc.dims[2] - r2 - r3, cc.dims[3] - r3};
}

}  // namespace plsplit
