#include "quasi.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <set>

namespace plsplit {

namespace {

void check_tet(const Triangulation& tri, int t) {
  if (t < 0 || t >= tri.size())
    throw Error(ErrorCode::NotCovered, "tet " + std::to_string(t) + " is not in the window");
}

std::vector<int> sorted_unique(std::vector<int> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

std::vector<int> point_star(const Triangulation& tri, const PointLocus& p) {
  check_tet(tri, p.tet);
  std::vector<int> carrier;
  for (int v = 0; v < 4; ++v) {
    if (p.bary[v] < 0) throw Error(ErrorCode::InvalidArgument, "negative barycentric weight");
    if (p.bary[v] > 0) carrier.push_back(v);
  }
  switch (carrier.size()) {
    case 0:
      throw Error(ErrorCode::InvalidArgument, "point has all-zero barycentric weights");
    case 1:
      return tri.vertex_star(tri.vertex_class(p.tet, carrier[0]));
    case 2:
      return tri.edge_star(tri.edge_class(p.tet, edge_index(carrier[0], carrier[1])));
    case 3: {
      int f = 6 - carrier[0] - carrier[1] - carrier[2];
      std::vector<int> out{p.tet};
      if (!tri.gluing(p.tet, f).boundary()) out.push_back(tri.gluing(p.tet, f).tet);
      return sorted_unique(out);
    }
    default:
      return {p.tet};
  }
}

std::vector<int> cell_star(const Triangulation& tri, const Cell& c) {
  switch (c.dim) {
    case 0:
      if (c.id < 0 || c.id >= tri.num_vertices()) break;
      return tri.vertex_star(c.id);
    case 1:
      if (c.id < 0 || c.id >= tri.num_edges()) break;
      return tri.edge_star(c.id);
    case 2: {
      if (c.id < 0 || c.id >= tri.num_faces()) break;
      auto [t, f] = tri.face_rep(c.id);
      std::vector<int> out{t};
      if (!tri.gluing(t, f).boundary()) out.push_back(tri.gluing(t, f).tet);
      return sorted_unique(out);
    }
    case 3:
      check_tet(tri, c.id);
      return {c.id};
    default:
      throw Error(ErrorCode::InvalidArgument, "cell dimension must be 0..3");
  }
  throw Error(ErrorCode::NotCovered, "cell id is not in the window");
}

std::vector<int> tet_distances(const Triangulation& tri, const std::vector<int>& sources) {
  std::vector<int> dist(tri.size(), -1);
  std::deque<int> queue;
  for (int s : sources) {
    check_tet(tri, s);
    if (dist[s] < 0) {
      dist[s] = 0;
      queue.push_back(s);
    }
  }
  std::vector<char> vertex_seen(tri.num_vertices(), 0);
  while (!queue.empty()) {
    int t = queue.front();
    queue.pop_front();
    for (int v = 0; v < 4; ++v) {
      int vc = tri.vertex_class(t, v);
      // every vertex class is expanded once, from its nearest tet
      if (vertex_seen[vc]) continue;
      vertex_seen[vc] = 1;
      for (int u : tri.vertex_star(vc))
        if (dist[u] < 0) {
          dist[u] = dist[t] + 1;
          queue.push_back(u);
        }
    }
  }
  return dist;
}

int quasi_distance(const Triangulation& tri, const PointLocus& x, const PointLocus& y) {
  auto sx = point_star(tri, x);
  auto sy = point_star(tri, y);
  auto dist = tet_distances(tri, sx);
  int best = -1;
  for (int t : sy)
    if (dist[t] >= 0 && (best < 0 || dist[t] < best)) best = dist[t];
  if (best < 0) throw Error(ErrorCode::Disconnected, "points are not joined inside the window");
  return best;
}

int min_hitting_set(const std::vector<std::vector<int>>& stars) {
  if (stars.empty()) return 0;
  // drop stars that contain another star; they are hit automatically
  std::vector<std::vector<int>> sets;
  for (auto s : stars) sets.push_back(sorted_unique(std::move(s)));
  std::sort(sets.begin(), sets.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
  std::vector<std::vector<int>> core;
  for (const auto& s : sets) {
    bool redundant = false;
    for (const auto& c : core)
      if (std::includes(s.begin(), s.end(), c.begin(), c.end())) {
        redundant = true;
        break;
      }
    if (!redundant) core.push_back(s);
  }
  int best = static_cast<int>(core.size());
  std::set<int> chosen;
  std::function<void(int)> search = [&](int depth) {
    if (depth >= best) return;
    const std::vector<int>* open = nullptr;
    for (const auto& s : core) {
      bool hit = std::any_of(s.begin(), s.end(), [&](int t) { return chosen.count(t) > 0; });
      if (!hit) {
        if (!open || s.size() < open->size()) open = &s;
      }
    }
    if (!open) {
      best = depth;
      return;
    }
    for (int t : *open) {
      chosen.insert(t);
      search(depth + 1);
      chosen.erase(t);
    }
  };
  search(0);
  return best;
}

int subset_size(const Triangulation& tri, const std::vector<PointLocus>& points,
                const std::vector<Cell>& cells) {
  std::vector<std::vector<int>> stars;
  for (const auto& p : points) stars.push_back(point_star(tri, p));
  for (const auto& c : cells) stars.push_back(cell_star(tri, c));
  return min_hitting_set(stars);
}

GeometryAudit geometry_audit(const Triangulation& tri, std::optional<int> declared_bound) {
  GeometryAudit a;
  a.tets = tri.size();
  a.vertices = tri.num_vertices();
  a.edges = tri.num_edges();
  a.faces = tri.num_faces();
  a.boundary_faces = tri.num_boundary_faces();
  for (int v = 0; v < tri.num_vertices(); ++v)
    a.max_vertex_degree = std::max(a.max_vertex_degree, static_cast<int>(tri.vertex_star(v).size()));
  a.orientable = tri.orientable();
  a.declared_bound = declared_bound;
  if (declared_bound && a.max_vertex_degree > *declared_bound) {
    a.bound_ok = false;
    throw Error(ErrorCode::BoundViolated, "vertex class meets " + std::to_string(a.max_vertex_degree) +
                                              " tets, above the declared bound " +
                                              std::to_string(*declared_bound));
  }
  return a;
}

}  // namespace plsplit
