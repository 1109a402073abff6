#include "examples.hpp"

#include <set>

#include "product_surfaces.hpp"

namespace plsplit {

namespace {

constexpr int kHandleLength = 3;
constexpr int kHandleHeight = 2;
constexpr int kStripHeight = 4;
constexpr int kTubeRow = 2;

NscSurface global_surface(const std::string& name, const Triangulation& window, const NormalCoordinates& c) {
  NscSurface s{name, {}};
  for (int t : c.support()) {
    NscEntry e;
    e.kind = NscEntry::Kind::Global;
    e.block = window.origin()[t].block;
    e.local = window.origin()[t].local;
    e.coords = c.tets[t];
    s.entries.push_back(e);
  }
  return s;
}

Example motivating(int radius) {
  if (radius < 1) throw Error(ErrorCode::InvalidArgument, "motivating example needs radius >= 1");
  const PeriodicProduct pp = periodic_product(periodic_handle_strip(kHandleLength, kHandleHeight), 1);
  const int H = kHandleHeight + 1;
  auto below = [H](long, int local) { return local % H == 0; };
  LazyComplex lc(pp.spec);
  Example ex;
  ex.generator = pp.spec;
  ex.window = lc.materialize(-radius, radius);
  // one block of the annulus, away from the ends of a three-block window
  const Triangulation three = lc.materialize(-1, 1);
  const NormalCoordinates seed = vertical_surface_on_window(pp, three, below);
  NscSurface annulus{"annulus", {}};
  for (int t : seed.support()) {
    if (three.origin()[t].block != 0) continue;
    NscEntry e;
    e.kind = NscEntry::Kind::Periodic;
    e.local = three.origin()[t].local;
    e.coords = seed.tets[t];
    annulus.entries.push_back(e);
  }
  ex.surfaces.push_back(annulus);
  // X is the piece holding the corner slabs at the bottom row of the strip
  const CutResult cut = cut_along(ex.window, nsc_on_window(annulus, ex.window));
  ex.piece_labels.assign(cut.components.size(), PieceLabel::Seifert);
  for (const auto& [block, comp] : cut.block_component) {
    if (block.corner < 0 || block.layer != 0) continue;
    const GlobalTet g = ex.window.origin()[block.tet];
    if (below(0, pp.tet_vertices[g.local][block.corner][1])) ex.piece_labels[comp] = PieceLabel::Atoroidal;
  }
  ex.description = "S^1 x (strip with one handle per block), blocks [-" + std::to_string(radius) + ", " +
                   std::to_string(radius) + "]; the vertical annulus over the bottom row splits it into X " +
                   "(labeled atoroidal) and Y (Seifert fibered)";
  return ex;
}

Example product(int genus) {
  if (genus < 1) throw Error(ErrorCode::InvalidArgument, "product example needs genus >= 1");
  Example ex;
  if (genus == 1) {
    const ProductComplex pc = product_complex(torus_grid(6, 6), 1);
    ex.window = pc.tri;
    std::set<long> slope;
    for (int s = 0, i = 0, j = 0; s < 12; ++s) {
      slope.insert(i * 6 + j);
      if (s % 2 == 0) {
        j = (j + 1) % 6;
      } else {
        i = (i + 1) % 6;
        j = (j + 1) % 6;
      }
    }
    auto first = [&](const std::function<bool(long)>& region) {
      return surface_components(pc.tri, vertical_surface(pc, region_boundary(pc.base, region)))[0];
    };
    ex.surfaces.push_back(to_nsc("column", first([](long k) { return k % 6 == 0; })));
    ex.surfaces.push_back(to_nsc("row", first([](long k) { return k / 6 == 0; })));
    ex.surfaces.push_back(to_nsc("slope", first([&](long k) { return slope.count(k) > 0; })));
    ex.surfaces.push_back(to_nsc("level", horizontal_surface(pc, 0)));
    ex.description = "S^1 x (6 x 6 torus grid), one circle layer";
  } else {
    const ProductComplex pc = product_complex(genus_surface(genus), 1);
    ex.window = pc.tri;
    ex.surfaces.push_back(to_nsc("level", horizontal_surface(pc, 0)));
    ex.description = "S^1 x (closed surface of genus " + std::to_string(genus) + "), one circle layer";
  }
  return ex;
}

Example periodic_annulus(int n) {
  if (n < 2) throw Error(ErrorCode::InvalidArgument, "periodic-annulus example needs at least 2 tori");
  const PeriodicProduct pp = periodic_product(periodic_strip(1, kStripHeight, false), 1);
  LazyComplex lc(pp.spec);
  Example ex;
  ex.generator = pp.spec;
  ex.window = lc.materialize(-1, n);
  for (int k = 1; k <= n; ++k) {
    auto tube = vertical_surface_on_window(
        pp, ex.window, [k](long b, int local) { return local == kTubeRow && b >= 0 && b < k; });
    ex.surfaces.push_back(global_surface("U" + std::to_string(k), ex.window, tube));
  }
  ex.description = "S^1 x (strip of height " + std::to_string(kStripHeight) +
                   "); torus U_k is the vertical torus around the middle row over blocks [0, k-1]";
  return ex;
}

}  // namespace

const std::vector<std::string>& example_names() {
  static const std::vector<std::string> names{"motivating", "product", "periodic-annulus"};
  return names;
}

int default_example_param(const std::string& name) {
  if (name == "motivating") return 1;
  if (name == "product") return 1;
  if (name == "periodic-annulus") return 5;
  throw Error(ErrorCode::UnknownExample, "unknown example '" + name + "'");
}

Example generate_example(const std::string& name, int param) {
  Example ex;
  if (name == "motivating") {
    ex = motivating(param);
  } else if (name == "product") {
    ex = product(param);
  } else if (name == "periodic-annulus") {
    ex = periodic_annulus(param);
  } else {
    throw Error(ErrorCode::UnknownExample, "unknown example '" + name + "'");
  }
  ex.name = name;
  ex.param = param;
  return ex;
}

SurfaceSequence example_sequence(const Example& ex) {
  SurfaceSequence seq;
  for (const auto& s : ex.surfaces) {
    std::map<GlobalTet, TetCoords> member;
    for (const auto& e : s.entries) {
      if (e.kind != NscEntry::Kind::Global)
        throw Error(ErrorCode::InvalidArgument, "sequence members need block-addressed entries");
      member[GlobalTet{e.block, e.local}] = e.coords;
    }
    seq.members.push_back(std::move(member));
  }
  return seq;
}

}  // namespace plsplit
