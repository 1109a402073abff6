#include <doctest.h>

#include "examples.hpp"
#include "fixtures.hpp"
#include "homology.hpp"
#include "jsj.hpp"
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

const ProductComplex& three_torus() {
  static const ProductComplex pc = product_complex(torus_grid(3, 3), 1);
  return pc;
}

const TorusCensus& three_torus_census() {
  static const TorusCensus c = torus_census(three_torus().tri, 12);
  return c;
}

const ConditionVerdict& check_named(const std::vector<ConditionVerdict>& checks, const std::string& prefix) {
  for (const auto& c : checks)
    if (c.name.rfind(prefix, 0) == 0) return c;
  throw std::runtime_error("no check named " + prefix);
}

bool mentions_torus(const ConditionVerdict& c, int i) {
  const std::string needle = "census torus " + std::to_string(i) + " ";
  for (const auto& v : c.violations)
    if (v.find(needle) != std::string::npos) return true;
  return false;
}

std::vector<Triangulation> small_fixtures() {
  return {single_tet(), s3_double(), s3_one_vertex(), oracle::three_tet_closed(), oracle::two_tet_chain()};
}

}  // namespace

TEST_CASE("cutting along the empty surface returns the window") {
  for (const auto& t : small_fixtures()) {
    const CutResult r = cut_along(t, NormalCoordinates(t.size()));
    REQUIRE(r.components.size() == 1);
    CHECK(r.components[0].window.size() == t.size());
    CHECK(r.components[0].betti == betti_numbers(t));
    CHECK(r.euler_identity());
  }
}

TEST_CASE("the vertex-linking sphere separates the two-tet sphere") {
  const Triangulation t = s3_double();
  NormalCoordinates link(t.size());
  const int v = t.vertex_class(0, 0);
  for (int a = 0; a < t.size(); ++a)
    for (int k = 0; k < 4; ++k)
      if (t.vertex_class(a, k) == v) link.tets[a][k] = 1;
  const CutResult r = cut_along(t, link);
  CHECK(r.components.size() == 2);
  CHECK(r.surface_euler == 2);
  CHECK(r.euler_identity());
  for (const auto& c : r.components) CHECK(c.betti == oracle::betti(c.window));
}

TEST_CASE("a vertical torus does not separate the three-torus") {
  const auto& pc = three_torus();
  const NormalCoordinates column = three_torus_census().tori[0].coords;
  const CutResult r = cut_along(pc.tri, column);
  REQUIRE(r.components.size() == 1);
  CHECK(r.surface_euler == 0);
  CHECK(r.euler_identity());
  CHECK(r.components[0].betti == oracle::betti(r.components[0].window));
  CHECK(r.components[0].betti[0] == 1);
}

TEST_CASE("cut Euler accounting and component homology on small fixtures") {
  for (const auto& t : small_fixtures()) {
    EnumerateOptions opt;
    opt.max_weight = 6;
    for (const auto& c : enumerate_bounded(t, opt)) {
      const CutResult r = cut_along(t, c);
      CHECK(r.euler_identity());
      for (const auto& comp : r.components)
        if (comp.window.size() <= 20) CHECK(comp.betti == oracle::betti(comp.window));
    }
  }
}

TEST_CASE("census verdicts") {
  const auto& pc = three_torus();
  const TorusCensus& census = three_torus_census();
  CHECK(census.tori.size() == 18);
  CHECK(census.max_census_weight() == 12);
  for (const auto& t : census.tori) {
    CHECK(analyze_surface(realize_surface(pc.tri, t.coords)).euler == 0);
    CHECK((t.label == TorusLabel::Noncanonical) == !t.essential_partners.empty());
  }

  HypothesisConstants k;
  k.C1 = census.max_census_weight();
  k.C3 = 2;
  CHECK(check_hypotheses(pc.tri, census, k, Hypothesis::A).result == HypothesisVerdict::Result::VerifiedOnWindow);
  const HypothesisVerdict b = check_hypotheses(pc.tri, census, k, Hypothesis::B);
  CHECK(b.result == HypothesisVerdict::Result::Counterexample);
  CHECK_FALSE(b.witnesses.empty());
  for (const auto& w : b.witnesses) CHECK(replay_witness(pc.tri, census, k, Hypothesis::B, w));
  CHECK(check_hypotheses(pc.tri, census, k, Hypothesis::D).result != HypothesisVerdict::Result::Counterexample);
}

TEST_CASE("verdicts that hold at a census weight hold at every smaller weight") {
  const auto& pc = three_torus();
  std::map<std::string, bool> prev;
  for (long w : {12L, 8L, 4L}) {
    const TorusCensus census = torus_census(pc.tri, w);
    HypothesisConstants k;
    k.C1 = 12;
    for (auto h : {Hypothesis::A, Hypothesis::B, Hypothesis::C, Hypothesis::D}) {
      const bool ok = check_hypotheses(pc.tri, census, k, h).result == HypothesisVerdict::Result::VerifiedOnWindow;
      const std::string key = hypothesis_name(h);
      if (prev.count(key) && prev[key]) CHECK(ok);
      prev[key] = ok;
    }
    GraphCertificate cert;
    for (int t = 0; t < pc.tri.size(); ++t) cert.region.insert(t);
    cert.piece_labels = {PieceLabel::Seifert};
    for (const auto& c : audit_graph_submanifold(pc.tri, cert, census, 12).checks) {
      if (prev.count(c.name) && prev[c.name]) CHECK(c.holds);
      prev[c.name] = c.holds;
      CHECK(c.search_bound == w);
    }
  }
}

TEST_CASE("an empty collection on the sphere is a valid splitting") {
  const Triangulation t = s3_double();
  const SplittingReport r = validate_splitting(t, {}, {PieceLabel::Atoroidal}, torus_census(t, 8));
  CHECK(r.pieces == 1);
  CHECK(r.ok());
}

TEST_CASE("two parallel copies of one torus") {
  const auto& pc = three_torus();
  const TorusCensus& census = three_torus_census();
  SplittingCollection c;
  c.members = {census.tori[0].coords, census.tori[0].coords};
  c.labels = {MemberLabel::Canonical, MemberLabel::Canonical};
  const SplittingReport r = validate_splitting(pc.tri, c, {PieceLabel::Seifert, PieceLabel::Seifert}, census);
  CHECK(r.pieces == 2);
  CHECK(check_named(r.checks, "disjointness").holds);
  const ConditionVerdict& c3 = check_named(r.checks, "condition 3");
  CHECK_FALSE(c3.holds);
  CHECK(std::find(c3.violations.begin(), c3.violations.end(), "members 0 and 1 are homotopic") != c3.violations.end());
}

TEST_CASE("the motivating annulus splits into labeled pieces") {
  const Example ex = generate_example("motivating", 1);
  const TorusCensus census = torus_census(ex.window, 12);
  SplittingCollection c;
  c.members = {nsc_on_window(ex.surfaces[0], ex.window)};
  c.labels = {MemberLabel::Annulus};
  const SplittingReport r = validate_splitting(ex.window, c, ex.piece_labels, census);
  CHECK(r.pieces == 2);
  CHECK(check_named(r.checks, "disjointness").holds);
  CHECK(check_named(r.checks, "condition 1").holds);
  CHECK(check_named(r.checks, "condition 4").holds);
  for (const auto& v : r.checks) CHECK(v.search_bound == 12);

  HypothesisConstants k;
  k.C1 = census.max_census_weight();
  CHECK(check_hypotheses(ex.window, census, k, Hypothesis::A).result ==
        HypothesisVerdict::Result::VerifiedOnWindow);
}

TEST_CASE("graph certificate audits") {
  const auto& pc = three_torus();
  const TorusCensus& census = three_torus_census();
  GraphCertificate cert;
  for (int t = 0; t < pc.tri.size(); ++t) cert.region.insert(t);
  cert.piece_labels = {PieceLabel::Seifert};
  CHECK(audit_graph_submanifold(pc.tri, cert, census, 12).ok());

  GraphCertificate outside = cert;
  outside.outside = {0};
  const AuditReport a = audit_graph_submanifold(pc.tri, outside, census, 12);
  CHECK_FALSE(a.ok());
  CHECK_FALSE(check_named(a.checks, "tori listed outside").holds);

  GraphCertificate parallel = cert;
  parallel.boundary = {census.tori[0].coords, census.tori[0].coords};
  const AuditReport p = audit_graph_submanifold(pc.tri, parallel, census, 12);
  CHECK_FALSE(check_named(p.checks, "boundary tori not parallel").holds);
}

TEST_CASE("growing regions from seed pairs") {
  const auto& pc = three_torus();
  const TorusCensus& census = three_torus_census();
  const TautSequence none = grow_taut_sequence(pc.tri, {}, census, 12);
  REQUIRE(none.stages.size() == 1);
  CHECK(none.stages[0].region.empty());

  std::vector<std::pair<NormalCoordinates, NormalCoordinates>> seeds;
  std::vector<std::pair<int, int>> seed_ids;
  for (int i = 0; i < static_cast<int>(census.tori.size()) && seeds.size() < 2; i += 4)
    if (!census.tori[i].essential_partners.empty()) {
      const int j = census.tori[i].essential_partners[0];
      seeds.emplace_back(census.tori[i].coords, census.tori[j].coords);
      seed_ids.emplace_back(i, j);
    }
  REQUIRE(seeds.size() == 2);
  const TautSequence seq = grow_taut_sequence(pc.tri, seeds, census, 12);
  REQUIRE(seq.stages.size() == 3);
  for (size_t k = 1; k < seq.stages.size(); ++k) {
    const auto& prev = seq.stages[k - 1].region;
    const auto& now = seq.stages[k].region;
    CHECK(std::includes(now.begin(), now.end(), prev.begin(), prev.end()));
    CHECK(seq.stages[k].includes_previous);
    CHECK(seq.stages[k].boundary_components == region_boundary_components(pc.tri, now));
    for (int id : {seed_ids[k - 1].first, seed_ids[k - 1].second}) {
      for (int t : census.tori[id].coords.support()) CHECK(now.count(t) == 1);
      CHECK_FALSE(mentions_torus(check_named(seq.stages[k].audit.checks, "noncanonical"), id));
    }
  }

  const ProductComplex two = product_complex(torus_grid(3, 3), 2);
  CHECK(code_of([&] {
          grow_taut_sequence(two.tri, {{horizontal_surface(two, 0), horizontal_surface(two, 1)}},
                             torus_census(two.tri, 4), 12);
        }) == ErrorCode::SeedDegenerate);
}

TEST_CASE("assembling the limit of growing tubes") {
  const Example ex = generate_example("periodic-annulus", 12);
  LazyComplex lc(*ex.generator);
  const SurfaceSequence seq = example_sequence(ex);
  LimitStages stages;
  for (const auto& m : seq.members) {
    std::set<GlobalTet> r;
    for (const auto& [g, c] : m) r.insert(g);
    stages.regions.push_back(r);
  }
  stages.boundary = {seq};
  std::vector<GlobalTet> focus;
  for (long b = -1; b <= 9; ++b)
    for (int l = 0; l < ex.generator->block_size(); ++l) focus.push_back({b, l});
  const LimitAssembly a = assemble_limit_region(lc, stages, focus, {0, 0}, 1, 2);
  CHECK(a.region == stages.regions.back());
  REQUIRE(a.ends.size() == 1);
  CHECK(a.limits[0].support == SurfaceSequenceLimit::Support::Noncompact);
  CHECK(a.ends[0].kind == EndsReport::Kind::Annulus);
  CHECK(a.ends[0].ends == 2);
  CHECK(a.ends[0].planar);
  CHECK(a.remapped_edges > 0);

  std::swap(stages.regions[0], stages.regions[3]);
  CHECK(code_of([&] { assemble_limit_region(lc, stages, focus, {0, 0}, 1, 2); }) == ErrorCode::NotMonotone);
  CHECK(code_of([&] { assemble_limit_region(lc, stages, {}, {0, 0}, 1, 2); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("named examples") {
  const Example product = generate_example("product", 2);
  CHECK(product.window.size() == 216);
  CHECK(product.window.num_boundary_faces() == 0);

  const Example mot = generate_example("motivating", 2);
  const CutResult cut = cut_along(mot.window, nsc_on_window(mot.surfaces[0], mot.window));
  CHECK(cut.components.size() == 2);
  CHECK(mot.piece_labels.size() == 2);
  CHECK(std::count(mot.piece_labels.begin(), mot.piece_labels.end(), PieceLabel::Atoroidal) == 1);
  CHECK(std::count(mot.piece_labels.begin(), mot.piece_labels.end(), PieceLabel::Seifert) == 1);

  const Example pa = generate_example("periodic-annulus", 5);
  CHECK(pa.surfaces.size() == 5);
  CHECK(pa.generator.has_value());

  CHECK(code_of([] { generate_example("klein", 1); }) == ErrorCode::UnknownExample);
  CHECK(code_of([] { generate_example("product", 0); }) == ErrorCode::InvalidArgument);
  for (const auto& n : example_names()) CHECK_NOTHROW(generate_example(n, default_example_param(n)));
}
