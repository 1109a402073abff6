#pragma once

// Independent reference computations used by the unit and acceptance tests.
// None of them call the library routine they are compared against.

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "complex.hpp"
#include "fixtures.hpp"
#include "hypmetric.hpp"
#include "interplay.hpp"
#include "normal.hpp"
#include "quasi.hpp"

namespace oracle {

using plsplit::GluingTable;
using plsplit::NormalCoordinates;
using plsplit::Perm4;
using plsplit::TetCoords;
using plsplit::Triangulation;

// Quad q splits {0, q+1} from the other two vertices.
inline bool in_quad_side(int q, int v) { return v == 0 || v == q + 1; }

// Arcs of c in face f (opposite vertex f) cutting off corner v.
inline long arcs_at(const TetCoords& c, int f, int v) {
  long n = c[v];
  for (int q = 0; q < 3; ++q)
    if (in_quad_side(q, v) == in_quad_side(q, f)) n += c[4 + q];
  return n;
}

// Every tet vector with entries in [0, bound] and at most one quad type.
inline std::vector<TetCoords> tet_candidates(long bound) {
  std::vector<TetCoords> out;
  std::vector<std::array<long, 3>> quads{{0, 0, 0}};
  for (int q = 0; q < 3; ++q)
    for (long k = 1; k <= bound; ++k) {
      std::array<long, 3> a{0, 0, 0};
      a[q] = k;
      quads.push_back(a);
    }
  for (long a = 0; a <= bound; ++a)
    for (long b = 0; b <= bound; ++b)
      for (long c = 0; c <= bound; ++c)
        for (long d = 0; d <= bound; ++d)
          for (const auto& q : quads) out.push_back(TetCoords{a, b, c, d, q[0], q[1], q[2]});
  return out;
}

// Brute-force integer scan: every embedded vector with coordinates <= bound
// whose arc counts agree across each glued face. Tets are placed in order;
// candidates for tet t are bucketed by their arcs on faces glued to earlier tets.
inline std::set<NormalCoordinates> brute_force_solutions(const Triangulation& tri, long bound) {
  const int n = tri.size();
  const auto all = tet_candidates(bound);
  struct Slot {
    std::vector<int> faces;  // faces glued to earlier tets
    std::map<std::vector<long>, std::vector<TetCoords>> buckets;
  };
  std::vector<Slot> slots(n);
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const auto& g = tri.gluing(t, f);
      if (!g.boundary() && g.tet < t) slots[t].faces.push_back(f);
    }
    for (const auto& c : all) {
      bool ok = true;
      for (int f = 0; f < 4 && ok; ++f) {
        const auto& g = tri.gluing(t, f);
        if (g.boundary() || g.tet != t) continue;
        for (int v = 0; v < 4 && ok; ++v)
          if (v != f && arcs_at(c, f, v) != arcs_at(c, g.perm[f], g.perm[v])) ok = false;
      }
      if (!ok) continue;
      std::vector<long> key;
      for (int f : slots[t].faces)
        for (int v = 0; v < 4; ++v)
          if (v != f) key.push_back(arcs_at(c, f, v));
      slots[t].buckets[key].push_back(c);
    }
  }
  std::set<NormalCoordinates> out;
  NormalCoordinates cur(n);
  std::function<void(int)> place = [&](int t) {
    if (t == n) {
      out.insert(cur);
      return;
    }
    std::vector<long> key;
    for (int f : slots[t].faces) {
      const auto& g = tri.gluing(t, f);
      for (int v = 0; v < 4; ++v)
        if (v != f) key.push_back(arcs_at(cur.tets[g.tet], g.perm[f], g.perm[v]));
    }
    auto it = slots[t].buckets.find(key);
    if (it == slots[t].buckets.end()) return;
    for (const auto& c : it->second) {
      cur.tets[t] = c;
      place(t + 1);
    }
    cur.tets[t] = TetCoords{};
  };
  place(0);
  return out;
}

// V - E + F of the cell structure induced on the 2-skeleton: vertices are
// edge crossings, edges are normal arcs, faces are normal disks. Each
// crossing or arc is counted once per edge or face class; the coordinates
// are assumed to satisfy the matching equations.
inline long cell_count_euler(const Triangulation& tri, const NormalCoordinates& c) {
  long disks = 0;
  for (const auto& t : c.tets)
    for (long x : t) disks += x;
  std::map<int, long> crossings;  // per edge class
  for (int t = 0; t < tri.size(); ++t)
    for (int e = 0; e < 6; ++e) {
      const int a = plsplit::kEdgeVertices[e][0], b = plsplit::kEdgeVertices[e][1];
      // crossings on edge ab: triangles at a or b, and quads separating a from b
      long k = c.tets[t][a] + c.tets[t][b];
      for (int q = 0; q < 3; ++q)
        if (in_quad_side(q, a) != in_quad_side(q, b)) k += c.tets[t][4 + q];
      crossings[tri.edge_class(t, e)] = k;
    }
  std::map<int, long> arcs;  // per face class
  for (int t = 0; t < tri.size(); ++t)
    for (int f = 0; f < 4; ++f) {
      long k = 0;
      for (int v = 0; v < 4; ++v)
        if (v != f) k += arcs_at(c.tets[t], f, v);
      arcs[tri.face_class(t, f)] = k;
    }
  long v = 0, e = 0;
  for (const auto& [_, k] : crossings) v += k;
  for (const auto& [_, k] : arcs) e += k;
  return v - e + disks;
}

// Betti numbers b0..b3 over the rationals from dense boundary matrices
// built from the vertex, edge and face classes of the complex.
inline std::array<int, 4> betti(const Triangulation& tri) {
  const int V = tri.num_vertices(), E = tri.num_edges(), F = tri.num_faces(), T = tri.size();
  Eigen::MatrixXd d1 = Eigen::MatrixXd::Zero(V, E), d2 = Eigen::MatrixXd::Zero(E, F),
                  d3 = Eigen::MatrixXd::Zero(F, T);
  for (int e = 0; e < E; ++e) {
    const auto [t, le] = tri.edge_rep(e);
    const int s = tri.edge_direction(t, le);
    d1(tri.vertex_class(t, plsplit::kEdgeVertices[le][1]), e) += s;
    d1(tri.vertex_class(t, plsplit::kEdgeVertices[le][0]), e) -= s;
  }
  for (int f = 0; f < F; ++f) {
    const auto [t, lf] = tri.face_rep(f);
    const auto vs = plsplit::face_vertices(lf);
    const int sides[3][3] = {{1, 2, 1}, {0, 2, -1}, {0, 1, 1}};  // [b,c] - [a,c] + [a,b]
    for (const auto& sd : sides) {
      const int le = plsplit::edge_index(vs[sd[0]], vs[sd[1]]);
      d2(tri.edge_class(t, le), f) += sd[2] * tri.edge_direction(t, le);
    }
  }
  for (int t = 0; t < T; ++t)
    for (int lf = 0; lf < 4; ++lf) {
      const Perm4 p = tri.face_to_rep(t, lf);
      const auto vs = plsplit::face_vertices(lf);
      int inv = 0;
      for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j)
          if (p[vs[i]] > p[vs[j]]) ++inv;
      const int s = (lf % 2 == 0 ? 1 : -1) * (inv % 2 == 0 ? 1 : -1);
      d3(tri.face_class(t, lf), t) += s;
    }
  auto rank = [](const Eigen::MatrixXd& m) {
    if (m.size() == 0) return 0;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
    lu.setThreshold(1e-9);
    return static_cast<int>(lu.rank());
  };
  const int r1 = rank(d1), r2 = rank(d2), r3 = rank(d3);
  return {V - r1, E - r1 - r2, F - r2 - r3, T - r3};
}

// Minimum of a convex function on [lo, hi] by ternary search.
inline double ternary_min(const std::function<double(double)>& f, double lo, double hi, double* arg = nullptr) {
  for (int i = 0; i < 200 && hi - lo > 1e-12; ++i) {
    const double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
    if (f(m1) < f(m2))
      hi = m2;
    else
      lo = m1;
  }
  const double x = (lo + hi) / 2;
  if (arg) *arg = x;
  return f(x);
}

// Grid search on a coarse lattice, then nested ternary refinement around the
// best grid point. Supports one or two variables on [-R, R]^n.
inline double grid_min(const std::function<double(const std::vector<double>&)>& f, int n, double R = 20.0) {
  const int steps = 400;
  const double h = 2 * R / steps;
  std::vector<double> best(n, 0.0);
  double best_val = f(best);
  if (n == 1) {
    for (int i = 0; i <= steps; ++i) {
      const double x = -R + i * h;
      const double y = f({x});
      if (y < best_val) best_val = y, best = {x};
    }
    return ternary_min([&](double x) { return f({x}); }, best[0] - h, best[0] + h);
  }
  for (int i = 0; i <= steps; ++i)
    for (int j = 0; j <= steps; ++j) {
      const std::vector<double> x{-R + i * h, -R + j * h};
      const double y = f(x);
      if (y < best_val) best_val = y, best = x;
    }
  const double x0 = best[0], y0 = best[1];
  return ternary_min(
      [&](double x) { return ternary_min([&](double y) { return f({x, y}); }, y0 - h, y0 + h); }, x0 - h, x0 + h);
}

// Largest combinatorial distance between two tets carrying disks of c. Any
// two points of the surface lie in such tets, so this bounds its diameter.
inline int support_diameter(const Triangulation& tri, const NormalCoordinates& c) {
  const auto support = c.support();
  int d = 0;
  for (int t : support) {
    const auto dist = plsplit::tet_distances(tri, {t});
    for (int u : support) d = std::max(d, dist[u]);
  }
  return d;
}

// Three tets glued into a closed complex with no boundary faces.
inline Triangulation three_tet_closed() {
  GluingTable g(3);
  plsplit::glue(g, 0, 0, 1, Perm4());
  plsplit::glue(g, 1, 1, 2, Perm4());
  plsplit::glue(g, 2, 2, 0, Perm4());
  plsplit::glue(g, 0, 3, 1, Perm4());
  plsplit::glue(g, 0, 1, 2, Perm4(0, 3, 2, 1));
  plsplit::glue(g, 1, 2, 2, Perm4(2, 1, 0, 3));
  return Triangulation(std::move(g));
}


// Arcs in one model triangle, or two triangles sharing a side, with one or
// two free crossing parameters. Each free parameter also meets a fixed
// endpoint, so every configuration has a finite minimum.
inline std::vector<plsplit::LengthProblem> length_configurations() {
  using plsplit::LengthProblem;
  using S = plsplit::ModelSide;
  auto free_end = [](S side, int var, double sign = 1.0, double offset = 0.0) {
    return LengthProblem::End{side, var, sign, offset};
  };
  auto fixed = [](S side, double at) { return LengthProblem::End{side, -1, 1.0, at}; };
  auto make = [](int vars, std::vector<LengthProblem::Term> terms) {
    LengthProblem p;
    p.num_vars = vars;
    p.terms = std::move(terms);
    return p;
  };
  return {
      make(1, {{free_end(S::A, 0), fixed(S::B, 0.0)}}),
      make(1, {{free_end(S::A, 0), fixed(S::B, 2.5)}}),
      make(1, {{free_end(S::A, 0), fixed(S::C, -1.0)}}),
      make(1, {{free_end(S::C, 0), fixed(S::B, 1.7)}}),
      make(1, {{free_end(S::A, 0), fixed(S::B, 0.5)}, {free_end(S::A, 0), fixed(S::C, 0.2)}}),
      make(1, {{free_end(S::C, 0), fixed(S::A, 0.4)}, {free_end(S::C, 0, -1.0, 0.3), fixed(S::B, -1.2)}}),
      make(2, {{free_end(S::A, 0), fixed(S::C, 0.3)},
               {free_end(S::A, 0, -1.0), free_end(S::B, 1)},
               {free_end(S::B, 1), fixed(S::C, -0.4)}}),
      make(2, {{free_end(S::A, 0), free_end(S::B, 1)},
               {free_end(S::A, 0), fixed(S::C, 1.0)},
               {free_end(S::B, 1), fixed(S::C, -1.0)}}),
      make(2, {{free_end(S::C, 0), fixed(S::A, 0.0)},
               {free_end(S::C, 0, -1.0), free_end(S::B, 1)},
               {free_end(S::B, 1), fixed(S::A, 2.0)}}),
      make(2, {{free_end(S::B, 0), fixed(S::C, 0.7)},
               {free_end(S::B, 0), free_end(S::A, 1)},
               {free_end(S::A, 1, -1.0), fixed(S::C, -0.3)}}),
  };
}

// Class of a fiber on a vertical torus of a product complex, from the base
// projection: the disks over one base triangle that are joined through arcs
// inside that triangle's prism form a closed loop around the circle factor.
// Returns the loop's class in the torus basis, normalized up to sign, or an
// empty vector when no such loop exists.
inline std::vector<long> fiber_class(const plsplit::ProductComplex& pc, const plsplit::RealizedSurface& s,
                                     const plsplit::SurfaceReport& r, const plsplit::SurfaceBasis& basis) {
  const int nd = static_cast<int>(s.disks.size());
  for (int start = 0; start < nd; ++start) {
    if (r.disk_component[start] != basis.component) continue;
    const int tri = pc.tet_triangle[s.disks[start].tet];
    auto over = [&](int d) { return d >= 0 && pc.tet_triangle[s.disks[d].tet] == tri; };
    std::vector<plsplit::DualStep> path;
    int cur = start, prev_arc = -1;
    bool closed = false;
    for (int steps = 0; steps <= nd; ++steps) {
      int next_arc = -1, side = -1;
      for (int f = 0; f < 4 && next_arc < 0; ++f) {
        const int a = s.disk_arc[cur][f];
        if (a < 0 || a == prev_arc || s.arcs[a].boundary) continue;
        const auto& arc = s.arcs[a];
        const int k = arc.disks[0] == cur ? 0 : 1;
        if (over(arc.disks[1 - k])) next_arc = a, side = k;
      }
      if (next_arc < 0) break;
      path.push_back({next_arc, side});
      prev_arc = next_arc;
      cur = s.arcs[next_arc].disks[1 - side];
      if (cur == start) {
        closed = true;
        break;
      }
    }
    if (!closed) continue;
    auto c = plsplit::dual_path_class(s, r, basis, path);
    if (std::any_of(c.begin(), c.end(), [](long x) { return x != 0; })) return plsplit::normalize_class(c);
  }
  return {};
}

// Random nested families of crossing classes on one edge: hulls form a chain
// of nested intervals, each class holds its hull endpoints plus interior
// points, and an occasional one-point class sits at a fresh position.
template <class Rng>
std::vector<std::vector<double>> nested_hull_instance(Rng& rng) {
  std::uniform_int_distribution<int> count(2, 5), extra(0, 3);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const int k = count(rng);
  std::vector<std::vector<double>> classes;
  double lo = 0.0, hi = 10.0;
  for (int i = 0; i < k; ++i) {
    std::vector<double> pts{lo, hi};
    for (int j = extra(rng); j > 0; --j) pts.push_back(lo + (hi - lo) * u(rng));
    classes.push_back(pts);
    const double a = lo + (hi - lo) * (0.05 + 0.4 * u(rng)), b = hi - (hi - lo) * (0.05 + 0.4 * u(rng));
    lo = a;
    hi = b;
  }
  if (u(rng) < 0.3) classes.push_back({10.0 + 1.0 + u(rng)});
  std::shuffle(classes.begin(), classes.end(), rng);
  return classes;
}

// Two tets glued along one face.
inline Triangulation two_tet_chain() {
  GluingTable g(2);
  plsplit::glue(g, 0, 3, 1, Perm4(0, 1, 2, 3));
  return Triangulation(std::move(g));
}

}  // namespace oracle
