#include <doctest.h>

#include <random>

#include "examples.hpp"
#include "fixtures.hpp"
#include "interplay.hpp"
#include "lazy.hpp"
#include "oracles.hpp"
#include "product_surfaces.hpp"

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

struct ProductTori {
  ProductComplex pc = product_complex(torus_grid(6, 6), 1);
  std::vector<RealizedSurface> tori;  // column, row, slope
  // base classes of the three curves in (i, j) grid coordinates
  std::vector<std::array<long, 2>> base{{1, 0}, {0, 1}, {1, 2}};
  ProductTori() {
    const Example ex = generate_example("product", 1);
    for (int i = 0; i < 3; ++i) tori.push_back(realize_surface(pc.tri, nsc_on_window(ex.surfaces[i], pc.tri)));
  }
};

const ProductTori& product_tori() {
  static const ProductTori p;
  return p;
}

IntersectionPattern fake_pattern(const std::vector<std::vector<long>>& classes) {
  IntersectionPattern p;
  for (const auto& c : classes) {
    IntersectionCircle circle;
    circle.class_a = c;
    circle.class_b = c;
    circle.essential_a = circle.essential_b = std::any_of(c.begin(), c.end(), [](long x) { return x != 0; });
    p.circles.push_back(circle);
  }
  return p;
}

}  // namespace

TEST_CASE("a surface meets itself as Equal") {
  const auto& p = product_tori();
  const IntersectionPattern self = intersect_surfaces(p.tori[0], p.tori[0]);
  CHECK(self.equal);
  CHECK(self.circles.empty());
}

TEST_CASE("parallel copies are disjoint") {
  const ProductComplex pc = product_complex(torus_grid(3, 3), 2);
  const RealizedSurface a = realize_surface(pc.tri, horizontal_surface(pc, 0));
  const RealizedSurface b = realize_surface(pc.tri, horizontal_surface(pc, 1));
  CHECK(intersect_surfaces(a, b).circles.empty());
  CHECK(intersect_surfaces(b, a).circles.empty());
  const RealizedSurface twice = realize_surface(pc.tri, horizontal_surface(pc, 0).scaled(2));
  CHECK(analyze_surface(twice).components.size() == 2);
}

TEST_CASE("vertical tori meet in one fiber per base intersection point") {
  const auto& p = product_tori();
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) {
      if (a == b) continue;
      const IntersectionPattern pat = intersect_surfaces(p.tori[a], p.tori[b]);
      const long det = std::abs(p.base[a][0] * p.base[b][1] - p.base[a][1] * p.base[b][0]);
      CHECK(static_cast<long>(pat.circles.size()) == det);
      for (const auto& c : pat.circles) {
        CHECK(c.closed);
        CHECK(c.essential_a);
        CHECK(c.essential_b);
        const bool zero_a = std::all_of(c.class_a.begin(), c.class_a.end(), [](long x) { return x == 0; });
        CHECK(zero_a == !c.essential_a);
      }
    }
}

TEST_CASE("special class is the fiber class on both sides") {
  const auto& p = product_tori();
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const IntersectionPattern pat = intersect_surfaces(p.tori[a], p.tori[b]);
      const SpecialClass on_a = special_class({pat}, {true});
      const SpecialClass on_b = special_class({pat}, {false});
      CHECK(on_a.status == SpecialClass::Status::Found);
      CHECK(on_a.curve_class == oracle::fiber_class(p.pc, p.tori[a], pat.report_a, pat.bases_a[0]));
      CHECK(on_b.curve_class == oracle::fiber_class(p.pc, p.tori[b], pat.report_b, pat.bases_b[0]));
    }
}

TEST_CASE("special class from several partners, sign quotient, and stability") {
  const auto& p = product_tori();
  const IntersectionPattern ab = intersect_surfaces(p.tori[0], p.tori[1]);
  const IntersectionPattern ac = intersect_surfaces(p.tori[0], p.tori[2]);
  const SpecialClass both = special_class({ab, ac}, {true, true});
  CHECK(both.status == SpecialClass::Status::Found);
  CHECK(both.witnesses == 2);
  const SpecialClass more = special_class({ab, ac, ab}, {true, true, true});
  CHECK(more.curve_class == both.curve_class);

  CHECK(special_class({fake_pattern({{1, 0}, {1, 0}})}, {true}).curve_class == std::vector<long>{1, 0});
  CHECK(special_class({fake_pattern({{1, 0}}), fake_pattern({{-1, 0}})}, {true, true}).curve_class ==
        std::vector<long>{1, 0});
  CHECK(special_class({fake_pattern({{1, 0}}), fake_pattern({{0, 1}})}, {true, true}).status ==
        SpecialClass::Status::ConflictingWitnesses);
  CHECK(code_of([] { special_class({fake_pattern({})}, {true}); }) == ErrorCode::NoEssentialIntersections);
  CHECK(code_of([] { special_class({fake_pattern({{0, 0}})}, {true}); }) == ErrorCode::NoEssentialIntersections);
}

TEST_CASE("normalize_class makes classes primitive up to sign") {
  CHECK(normalize_class({-2, 4}) == std::vector<long>{1, -2});
  CHECK(normalize_class({0, -3}) == std::vector<long>{0, 1});
  CHECK(normalize_class({0, 0}) == std::vector<long>{0, 0});
}

TEST_CASE("intersection circle count is order symmetric") {
  const ProductComplex pc = product_complex(torus_grid(3, 3), 1);
  EnumerateOptions o;
  o.max_weight = 12;
  o.closed = true;
  std::vector<RealizedSurface> tori;
  for (const auto& c : enumerate_bounded(pc.tri, o)) {
    if (c.is_zero()) continue;
    RealizedSurface s = realize_surface(pc.tri, c);
    const SurfaceReport r = analyze_surface(s);
    if (r.components.size() == 1 && r.components[0].kind == SurfaceKind::Torus) tori.push_back(std::move(s));
  }
  REQUIRE(tori.size() >= 2);
  for (size_t i = 0; i < tori.size(); ++i)
    for (size_t j = i + 1; j < tori.size(); ++j) {
      const auto ab = intersect_surfaces(tori[i], tori[j]);
      const auto ba = intersect_surfaces(tori[j], tori[i]);
      CHECK(ab.circles.size() == ba.circles.size());
      auto essential = [](const IntersectionPattern& p, bool side_a) {
        int n = 0;
        for (const auto& c : p.circles) n += (side_a ? c.essential_a : c.essential_b) ? 1 : 0;
        return n;
      };
      CHECK(essential(ab, true) == essential(ba, false));
    }
}

TEST_CASE("Seifert neighbourhood base satisfies the rectangle count identity") {
  const auto& p = product_tori();
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) {
      const IntersectionPattern pat = intersect_surfaces(p.tori[a], p.tori[b]);
      const SeifertDatum d = seifert_neighborhood(p.tori[a], p.tori[b], pat);
      const int n = static_cast<int>(pat.circles.size());
      CHECK(d.circles == n);
      CHECK(d.euler == d.squares + d.rectangles - d.gluings);
      CHECK(d.squares == n);
      CHECK(d.rectangles == 2 * n);
      CHECK(d.euler == -n);
      CHECK(d.boundary_tori() == d.boundary_circles);
      CHECK(d.boundary_circles >= 1);
      // closed base surface of genus g with k boundary circles has chi = 2 - 2g - k
      CHECK(d.euler == 2 - 2 * d.genus - d.boundary_circles);
      CHECK(normalize_class(d.fiber_class_a) == special_class({pat}, {true}).curve_class);
    }
  const ProductComplex pc = product_complex(torus_grid(3, 3), 2);
  const RealizedSurface x = realize_surface(pc.tri, horizontal_surface(pc, 0));
  const RealizedSurface y = realize_surface(pc.tri, horizontal_surface(pc, 1));
  CHECK(code_of([&] { seifert_neighborhood(x, y, intersect_surfaces(x, y)); }) == ErrorCode::NonParallelCircles);
}

TEST_CASE("disk equivalence examples") {
  DiskFamily two_types{{0, kQuad0}, {{0, 0}}};
  const auto a = disk_equivalence(two_types);
  CHECK(a[0] != a[1]);

  DiskFamily together{{1, 1}, {{0, 0}}};
  const auto b = disk_equivalence(together);
  CHECK(b[0] == b[1]);

  DiskFamily chain{{2, 2, 2}, {{0, 0, 1}, {0, 0, 0}}};
  const auto c = disk_equivalence(chain);
  CHECK(c[0] == c[1]);
  CHECK(c[1] == c[2]);

  DiskFamily apart{{2, 2, 2}, {{0, 0, 1}, {0, 0, 1}}};
  const auto d = disk_equivalence(apart);
  CHECK(d[0] == d[1]);
  CHECK(d[1] != d[2]);

  // a disk present at index 0 and missing later breaks monotonicity
  DiskFamily shrinking{{0, 0}, {{0, 0}, {0, -1}}};
  CHECK(code_of([&] { disk_equivalence(shrinking); }) == ErrorCode::NotMonotone);
  // two components merging is fine, splitting is not
  DiskFamily splitting{{3, 3}, {{0, 0}, {0, 1}}};
  CHECK(code_of([&] { disk_equivalence(splitting); }) == ErrorCode::NotMonotone);
}

TEST_CASE("disjointify: disjoint hulls, nested hulls, single class") {
  const auto disjoint = disjointify_intervals({{0, 1, 2}, {5, 7}});
  REQUIRE(disjoint.size() == 2);
  CHECK(disjoint[0].shrunk_lo == doctest::Approx(0.1));
  CHECK(disjoint[0].shrunk_hi == doctest::Approx(1.9));
  CHECK(disjoint[1].shrunk_lo == doctest::Approx(5.1));
  CHECK(disjoint[1].shrunk_hi == doctest::Approx(6.9));

  const auto nested = disjointify_intervals({{0, 10}, {4, 6}});
  CHECK((nested[0].shrunk_hi < nested[1].shrunk_lo || nested[1].shrunk_hi < nested[0].shrunk_lo));
  for (const auto& h : nested) {
    CHECK(h.lo < h.shrunk_lo);
    CHECK(h.shrunk_lo < h.shrunk_hi);
    CHECK(h.shrunk_hi < h.hi);
  }

  const auto single = disjointify_intervals({{3, 4, 8}});
  CHECK(single[0].lo < single[0].shrunk_lo);
  CHECK(single[0].shrunk_hi < single[0].hi);
  CHECK(code_of([] { disjointify_intervals({{1.0}, {1.0}}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("disjointify output is pairwise disjoint and order preserving") {
  std::mt19937 rng(19);
  for (int trial = 0; trial < 100; ++trial) {
    const auto classes = oracle::nested_hull_instance(rng);
    const auto hulls = disjointify_intervals(classes);
    REQUIRE(hulls.size() == classes.size());
    for (size_t i = 0; i < hulls.size(); ++i) {
      const auto& h = hulls[i];
      CHECK(h.class_id == static_cast<int>(i));
      CHECK(h.lo <= h.shrunk_lo);
      CHECK(h.shrunk_hi <= h.hi);
      if (h.lo < h.hi) {
        CHECK(h.lo < h.shrunk_lo);
        CHECK(h.shrunk_hi < h.hi);
      }
      auto pts = classes[i];
      std::sort(pts.begin(), pts.end());
      for (size_t k = 1; k < pts.size(); ++k)
        if (pts[k - 1] < pts[k]) CHECK(h.remap(pts[k - 1]) < h.remap(pts[k]));
      for (size_t j = i + 1; j < hulls.size(); ++j)
        CHECK((h.shrunk_hi < hulls[j].shrunk_lo || hulls[j].shrunk_hi < h.shrunk_lo));
    }
  }
}

TEST_CASE("limit of a constant sequence is the surface itself") {
  const PeriodicProduct pp = periodic_product(periodic_strip(1, 4, false), 1);
  LazyComplex lc(pp.spec);
  const Example ex = generate_example("periodic-annulus", 3);
  const SurfaceSequence seq = example_sequence(ex);
  SurfaceSequence constant;
  for (int i = 0; i < 4; ++i) constant.members.push_back(seq.members[1]);
  std::vector<GlobalTet> region;
  for (long b = -1; b <= 3; ++b)
    for (int l = 0; l < pp.spec.block_size(); ++l) region.push_back({b, l});
  const SurfaceSequenceLimit lim = limit_surface(lc, constant, region);
  CHECK(lim.limit == seq.members[1]);
  CHECK(lim.support == SurfaceSequenceLimit::Support::Compact);
  for (const auto& [g, k] : lim.stabilization) CHECK(k == 0);
  CHECK(lim.verified_faces > 0);
}

TEST_CASE("alternating sequences are unstable") {
  const Example ex = generate_example("periodic-annulus", 3);
  LazyComplex lc(*ex.generator);
  const SurfaceSequence seq = example_sequence(ex);
  SurfaceSequence alternating;
  for (int i = 0; i < 6; ++i) alternating.members.push_back(seq.members[i % 2]);
  std::vector<GlobalTet> region;
  for (const auto& [g, c] : seq.members[1]) region.push_back(g);
  CHECK(code_of([&] { limit_surface(lc, alternating, region); }) == ErrorCode::Unstable);
}

TEST_CASE("translated tori converge to the empty surface") {
  const Example ex = generate_example("periodic-annulus", 2);
  LazyComplex lc(*ex.generator);
  const auto first = example_sequence(ex).members[0];
  SurfaceSequence translated;
  for (long n = 0; n < 5; ++n) {
    std::map<GlobalTet, TetCoords> m;
    for (const auto& [g, c] : first) m[GlobalTet{g.block + n, g.local}] = c;
    translated.members.push_back(m);
  }
  std::vector<GlobalTet> region;
  for (long b = -1; b <= 1; ++b)
    for (int l = 0; l < ex.generator->block_size(); ++l) region.push_back({b, l});
  const SurfaceSequenceLimit lim = limit_surface(lc, translated, region);
  CHECK(lim.support == SurfaceSequenceLimit::Support::Empty);
  CHECK(lim.limit.empty());
}

TEST_CASE("growing tubes converge to a two-ended planar annulus") {
  const Example ex = generate_example("periodic-annulus", 12);
  LazyComplex lc(*ex.generator);
  const SurfaceSequence seq = example_sequence(ex);
  std::vector<GlobalTet> region;
  for (long b = -1; b <= 9; ++b)
    for (int l = 0; l < ex.generator->block_size(); ++l) region.push_back({b, l});
  const SurfaceSequenceLimit lim = limit_surface(lc, seq, region);
  CHECK(lim.support == SurfaceSequenceLimit::Support::Noncompact);
  NscSurface f{"limit", {}};
  for (const auto& [g, c] : lim.limit) {
    NscEntry e;
    e.kind = NscEntry::Kind::Global;
    e.block = g.block;
    e.local = g.local;
    e.coords = c;
    f.entries.push_back(e);
  }
  // the limit satisfies the matching equations on the window it covers
  const Triangulation w = lc.materialize(-1, 9);
  CHECK(satisfies_matching(w, nsc_on_window(f, w, true)));
  const EndsReport ends = classify_limit_ends(lc, f, {0, 0}, 1, 2);
  CHECK(ends.kind == EndsReport::Kind::Annulus);
  CHECK(ends.ends == 2);
  CHECK(ends.planar);
  CHECK_FALSE(ends.compact);
}

TEST_CASE("a compact limit is classified by its Euler characteristic") {
  const Example ex = generate_example("periodic-annulus", 3);
  LazyComplex lc(*ex.generator);
  const EndsReport ends = classify_limit_ends(lc, ex.surfaces[1], {0, 0}, 1, 2);
  CHECK(ends.compact);
  CHECK(ends.kind == EndsReport::Kind::Torus);
}

TEST_CASE("a noncompact limit with genus is a Violation with a witness") {
  const PeriodicProduct pp = periodic_product(periodic_handle_strip(3, 2), 1);
  LazyComplex lc(pp.spec);
  const Triangulation three = lc.materialize(-1, 1);
  const NormalCoordinates level = horizontal_surface_on_window(pp, three, 0);
  NscSurface s{"level", {}};
  for (int t : level.support()) {
    if (three.origin()[t].block != 0) continue;
    NscEntry e;
    e.kind = NscEntry::Kind::Periodic;
    e.local = three.origin()[t].local;
    e.coords = level.tets[t];
    s.entries.push_back(e);
  }
  const EndsReport r = classify_limit_ends(lc, s, {0, 0}, 1, 2);
  CHECK(r.kind == EndsReport::Kind::Violation);
  CHECK_FALSE(r.planar);
  CHECK_FALSE(r.witness.empty());
}

TEST_CASE("end classification refuses windows over budget") {
  const Example ex = generate_example("periodic-annulus", 3);
  LazyComplex lc(*ex.generator);
  CHECK(code_of([&] { classify_limit_ends(lc, ex.surfaces[1], {0, 0}, 1, 2, 10); }) == ErrorCode::BudgetExceeded);
}
