#include <doctest.h>

#include <numeric>
#include <random>

#include "complex.hpp"
#include "fixtures.hpp"
#include "homology.hpp"
#include "lazy.hpp"
#include "oracles.hpp"
#include "quasi.hpp"

using namespace plsplit;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::Ok;
}

PeriodicSpec strip_generator() { return periodic_product(periodic_strip(1, 3, true), 1).spec; }

}  // namespace

TEST_CASE("single tet has 4 boundary faces, 4 vertices, 6 edges") {
  const Triangulation t = single_tet();
  CHECK(t.size() == 1);
  CHECK(t.num_boundary_faces() == 4);
  CHECK(t.num_vertices() == 4);
  CHECK(t.num_edges() == 6);
  CHECK(t.num_faces() == 4);
}

TEST_CASE("two-tet sphere gluings are involutive and validated") {
  for (const auto& t : {s3_double(), s3_one_vertex()}) {
    CHECK(t.size() == 2);
    CHECK(t.num_boundary_faces() == 0);
    for (int a = 0; a < t.size(); ++a)
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = t.gluing(a, f);
        const Gluing& back = t.gluing(g.tet, g.perm[f]);
        CHECK(back.tet == a);
        CHECK(back.perm == g.perm.inverse());
      }
    CHECK(oracle::betti(t) == std::array<int, 4>{1, 0, 0, 1});
  }
  CHECK(s3_double().num_vertices() == 4);
  CHECK(s3_one_vertex().num_vertices() == 1);
}

TEST_CASE("non-involutive and self gluings are rejected") {
  GluingTable one_way(2);
  one_way[0][0] = Gluing{1, Perm4()};
  CHECK(code_of([&] { Triangulation t(one_way); }) == ErrorCode::InvalidGluing);

  GluingTable self(1);
  self[0][2] = Gluing{0, Perm4()};
  CHECK(code_of([&] { Triangulation t(self); }) == ErrorCode::InvalidGluing);

  GluingTable doubled(3);
  glue(doubled, 0, 0, 1, Perm4());
  doubled[2][0] = Gluing{0, Perm4()};
  CHECK(code_of([&] { Triangulation t(doubled); }) == ErrorCode::InvalidGluing);
}

TEST_CASE(".tri round trip and line-anchored parse errors") {
  for (const auto& t : {single_tet(), s3_double(), s3_one_vertex(), oracle::three_tet_closed()}) {
    const std::string text = emit_tri(t);
    const Triangulation back = parse_tri_string(text);
    CHECK(back == t);
    CHECK(emit_tri(back) == text);
  }
  LazyComplex lc(strip_generator());
  const Triangulation w = lc.materialize(-1, 1);
  const Triangulation back = parse_tri_string(emit_tri(w));
  CHECK(back == w);
  CHECK(back.origin() == w.origin());

  try {
    parse_tri_string("tet 0: bd bd bd\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Parse);
    CHECK(std::string(e.what()).rfind("line 1:", 0) == 0);
  }
  try {
    parse_tri_string("tet 0: 0->bd 1->bd 2->bd 3->bd\nbogus\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).rfind("line 2:", 0) == 0);
  }
}

TEST_CASE("generator text round trip") {
  const PeriodicSpec spec = strip_generator();
  const std::string text = emit_periodic(spec);
  CHECK(parse_periodic_string(text) == spec);
  CHECK(code_of([] { parse_periodic_string("block 1\n"); }) == ErrorCode::Parse);
}

TEST_CASE("lazy complex starts with the seed block and expands monotonically") {
  LazyComplex lc(strip_generator());
  CHECK(lc.expanded_range() == std::array<long, 2>{0, 0});
  CHECK(lc.expanded().size() == lc.spec().block_size());

  std::vector<std::set<GlobalTet>> balls;
  std::vector<int> sizes;
  for (int r = 0; r <= 6; ++r) {
    const Triangulation w = lc.window({0, 0}, r);
    balls.emplace_back(w.origin().begin(), w.origin().end());
    sizes.push_back(w.size());
    CHECK(lc.window({0, 0}, r) == w);
  }
  for (size_t r = 1; r < balls.size(); ++r)
    CHECK(std::includes(balls[r].begin(), balls[r].end(), balls[r - 1].begin(), balls[r - 1].end()));
  // linear growth along a one-dimensional chain of blocks
  CHECK(sizes[6] - sizes[5] == sizes[5] - sizes[4]);
  CHECK(sizes[5] - sizes[4] > 0);
}

TEST_CASE("radius 0 window is the set of tets sharing a point with the center") {
  LazyComplex lc(strip_generator());
  const Triangulation w = lc.window({0, 0}, 0);
  const Triangulation big = lc.materialize(-3, 3);
  const int c = big.find_global({0, 0});
  std::set<GlobalTet> expect;
  for (int v = 0; v < 4; ++v)
    for (int t : big.vertex_star(big.vertex_class(c, v))) expect.insert(big.origin()[t]);
  CHECK(std::set<GlobalTet>(w.origin().begin(), w.origin().end()) == expect);
}

TEST_CASE("lazy complex errors") {
  PeriodicSpec spec = strip_generator();
  spec.bound = 1;
  LazyComplex tight(spec);
  CHECK(code_of([&] { tight.window({0, 0}, 1); }) == ErrorCode::BoundViolated);
  LazyComplex capped(strip_generator(), 8);
  CHECK(code_of([&] { capped.window({0, 0}, 6); }) == ErrorCode::GeneratorExhausted);
  LazyComplex lc(strip_generator());
  CHECK(code_of([&] { lc.window({0, 0}, -1); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("subset_size examples and monotonicity") {
  const Triangulation t = s3_double();
  CHECK(subset_size(t, {PointLocus{0, {1, 1, 1, 1}}}) == 1);
  const ProductComplex pc = product_complex(torus_grid(3, 3), 1);
  const int edge = pc.tri.edge_class(0, 0);
  CHECK(pc.tri.edge_star(edge).size() > 1);
  CHECK(subset_size(pc.tri, {}, {Cell{1, edge}}) == 1);
  const auto far = tet_distances(pc.tri, {0});
  const int other = static_cast<int>(std::max_element(far.begin(), far.end()) - far.begin());
  CHECK(subset_size(pc.tri, {PointLocus{0, {1, 1, 1, 1}}, PointLocus{other, {1, 1, 1, 1}}}) == 2);
  CHECK(code_of([&] { subset_size(t, {PointLocus{5, {1, 1, 1, 1}}}); }) == ErrorCode::NotCovered);

  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<PointLocus> pts;
    int prev = 0;
    for (int k = 0; k < 5; ++k) {
      PointLocus p{static_cast<int>(rng() % pc.tri.size()), {}};
      for (auto& b : p.bary) b = static_cast<int>(rng() % 2);
      if (p.bary == std::array<int, 4>{0, 0, 0, 0}) p.bary[rng() % 4] = 1;
      pts.push_back(p);
      const int now = subset_size(pc.tri, pts);
      CHECK(now >= prev);
      prev = now;
    }
  }
}

TEST_CASE("quasi_distance is a quasimetric with slack 1") {
  const ProductComplex pc = product_complex(torus_grid(3, 3), 1);
  const auto dist = tet_distances(pc.tri, {0});
  std::vector<int> order(pc.tri.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return dist[a] < dist[b]; });
  order.resize(30);
  std::sort(order.begin(), order.end());
  const Triangulation w = restrict_to(pc.tri, order);
  std::vector<PointLocus> pts;
  for (int t = 0; t < w.size(); ++t) {
    pts.push_back(PointLocus{t, {1, 1, 1, 1}});
    pts.push_back(PointLocus{t, {1, 0, 0, 0}});
    pts.push_back(PointLocus{t, {0, 1, 1, 0}});
  }
  const size_t n = pts.size();
  std::vector<std::vector<int>> d(n, std::vector<int>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) d[i][j] = quasi_distance(w, pts[i], pts[j]);
  for (size_t i = 0; i < n; ++i) {
    CHECK(d[i][i] == 0);
    for (size_t j = 0; j < n; ++j) {
      CHECK(d[i][j] == d[j][i]);
      for (size_t k = 0; k < n; ++k)
        if (d[i][k] > d[i][j] + d[j][k] + 1) FAIL("triangle inequality with slack 1 fails");
    }
  }
}

TEST_CASE("quasi_distance on tets sharing a face and along a chain") {
  const Triangulation t = oracle::two_tet_chain();
  CHECK(quasi_distance(t, {0, {1, 1, 1, 1}}, {1, {1, 1, 1, 1}}) == 1);
  CHECK(quasi_distance(t, {0, {1, 1, 1, 0}}, {1, {1, 1, 1, 1}}) == 0);

  CHECK(code_of([&] {
    GluingTable two(2);
    quasi_distance(Triangulation(two), {0, {1, 1, 1, 1}}, {1, {1, 1, 1, 1}});
  }) == ErrorCode::Disconnected);

  // block distance in a periodic chain grows linearly
  LazyComplex lc(strip_generator());
  const Triangulation w = lc.materialize(0, 8);
  std::vector<int> by_block;
  for (long b = 0; b <= 8; ++b)
    by_block.push_back(quasi_distance(w, {w.find_global({0, 0}), {1, 1, 1, 1}},
                                      {w.find_global({b, 0}), {1, 1, 1, 1}}));
  const auto oracle_bfs = tet_distances(w, {w.find_global({0, 0})});
  for (long b = 0; b <= 8; ++b) CHECK(by_block[b] == oracle_bfs[w.find_global({b, 0})]);
  CHECK(by_block[8] - by_block[6] == by_block[6] - by_block[4]);
}

TEST_CASE("geometry audit") {
  CHECK(geometry_audit(single_tet()).max_vertex_degree == 1);
  const GeometryAudit s3 = geometry_audit(s3_double());
  CHECK(s3.max_vertex_degree == 2);
  CHECK(s3.vertices == 4);
  CHECK(s3.orientable);
  LazyComplex lc(strip_generator());
  const Triangulation w = lc.window({0, 0}, 3);
  const GeometryAudit a = geometry_audit(w, lc.declared_bound());
  CHECK(a.bound_ok);
  CHECK(a.max_vertex_degree <= lc.declared_bound());
  CHECK(code_of([&] { geometry_audit(w, 1); }) == ErrorCode::BoundViolated);
}

TEST_CASE("betti numbers match the dense rational oracle") {
  std::vector<Triangulation> fixtures{single_tet(), s3_double(), s3_one_vertex(), oracle::three_tet_closed(),
                                      oracle::two_tet_chain(), product_complex(torus_grid(3, 3), 1).tri};
  LazyComplex lc(strip_generator());
  fixtures.push_back(lc.materialize(0, 1));
  for (const auto& t : fixtures) CHECK(betti_numbers(t) == oracle::betti(t));
  CHECK(betti_numbers(product_complex(torus_grid(3, 3), 1).tri) == std::array<int, 4>{1, 3, 3, 1});
}
