#include "plsplit/plsplit.h"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "examples.hpp"
#include "homology.hpp"
#include "hypmetric.hpp"
#include "interplay.hpp"
#include "jsj.hpp"
#include "lazy.hpp"
#include "normal.hpp"
#include "quasi.hpp"

using nlohmann::json;
using namespace plsplit;

struct plsplit_complex {
  std::shared_ptr<const Triangulation> tri;
};

struct plsplit_generator {
  PeriodicSpec spec;
  std::unique_ptr<LazyComplex> lazy;
};

struct plsplit_surfaces {
  std::vector<NscSurface> list;
};

namespace {

constexpr const char* kVersion = "0.1.0";

thread_local std::string g_last_error;

template <class F>
plsplit_status guard(F&& body) {
  try {
    body();
    g_last_error.clear();
    return PLSPLIT_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return static_cast<plsplit_status>(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return PLSPLIT_E_BUDGET_EXCEEDED;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return PLSPLIT_E_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(ErrorCode::InvalidArgument, what);
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put_json(const json& j, char** out) { *out = dup(j.dump(2) + "\n"); }

// Reals are reported with 12 significant digits.
double real(double x) {
  if (!std::isfinite(x)) return x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return std::strtod(buf, nullptr);
}

const NscSurface& surface_at(const plsplit_surfaces* s, int index) {
  require(s != nullptr, "surfaces handle is null");
  if (index < 0 || index >= static_cast<int>(s->list.size()))
    throw Error(ErrorCode::InvalidArgument, "surface index " + std::to_string(index) + " out of range");
  return s->list[index];
}

NormalCoordinates coords_of(const plsplit_complex* cx, const plsplit_surfaces* s, int index) {
  require(cx != nullptr, "complex handle is null");
  return nsc_on_window(surface_at(s, index), *cx->tri);
}

json coords_json(const NormalCoordinates& c) {
  json out = json::array();
  for (int t : c.support()) out.push_back({{"tet", t}, {"coords", c.tets[t]}});
  return out;
}

json component_json(const ComponentReport& c) {
  return {{"disks", c.disks.size()},          {"vertices", c.vertices},
          {"edges", c.edges},                 {"faces", c.faces},
          {"euler", c.euler},                 {"orientable", c.orientable},
          {"boundary_circles", c.boundary_circles}, {"kind", kind_name(c.kind)}};
}

json surface_report_json(const SurfaceReport& r) {
  json comps = json::array();
  for (const auto& c : r.components) comps.push_back(component_json(c));
  return {{"euler", r.euler}, {"components", comps}};
}

json pattern_json(const IntersectionPattern& p) {
  json circles = json::array();
  for (const auto& c : p.circles)
    circles.push_back({{"closed", c.closed},
                       {"chords", c.chords.size()},
                       {"component_a", c.component_a},
                       {"component_b", c.component_b},
                       {"class_a", c.class_a},
                       {"class_b", c.class_b},
                       {"essential_a", c.essential_a},
                       {"essential_b", c.essential_b}});
  return {{"equal", p.equal},
          {"perturbed_crossings", p.perturbed},
          {"nodes", p.nodes.size()},
          {"circles", circles},
          {"surface_a", surface_report_json(p.report_a)},
          {"surface_b", surface_report_json(p.report_b)}};
}

json datum_json(const SeifertDatum& d) {
  return {{"circles", d.circles},     {"squares", d.squares},
          {"rectangles", d.rectangles}, {"gluings", d.gluings},
          {"euler", d.euler},         {"boundary_circles", d.boundary_circles},
          {"genus", d.genus},         {"fiber_class_a", d.fiber_class_a},
          {"fiber_class_b", d.fiber_class_b}};
}

json census_json(const TorusCensus& census) {
  json tori = json::array();
  for (const auto& t : census.tori)
    tori.push_back({{"weight", t.weight},
                    {"label", torus_label_name(t.label)},
                    {"essential_partners", t.essential_partners},
                    {"coords", coords_json(t.coords)}});
  return {{"max_weight", census.max_weight},
          {"count", census.tori.size()},
          {"max_census_weight", census.max_census_weight()},
          {"max_canonical_weight", census.max_canonical_weight()},
          {"tori", tori}};
}

json check_json(const ConditionVerdict& c) {
  return {{"name", c.name}, {"holds", c.holds}, {"search_bound", c.search_bound}, {"violations", c.violations}};
}

Hypothesis parse_hypothesis(const char* h) {
  require(h != nullptr, "hypothesis is null");
  std::string s(h);
  if (s == "A") return Hypothesis::A;
  if (s == "B") return Hypothesis::B;
  if (s == "C") return Hypothesis::C;
  if (s == "D") return Hypothesis::D;
  throw Error(ErrorCode::InvalidArgument, "unknown hypothesis '" + s + "' (expected A, B, C or D)");
}

std::vector<std::string> split_names(const char* text) {
  std::vector<std::string> out;
  if (!text) return out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ','))
    if (!item.empty()) out.push_back(item);
  return out;
}

MemberLabel parse_member_label(const std::string& s) {
  for (auto l : {MemberLabel::Canonical, MemberLabel::Noncanonical, MemberLabel::Annulus})
    if (s == member_label_name(l)) return l;
  throw Error(ErrorCode::InvalidArgument, "unknown member label '" + s + "'");
}

PieceLabel parse_piece_label(const std::string& s) {
  for (auto l : {PieceLabel::Seifert, PieceLabel::Atoroidal, PieceLabel::Unlabeled})
    if (s == piece_label_name(l)) return l;
  throw Error(ErrorCode::InvalidArgument, "unknown piece label '" + s + "'");
}

const char* support_name(SurfaceSequenceLimit::Support s) {
  switch (s) {
    case SurfaceSequenceLimit::Support::Compact: return "Compact";
    case SurfaceSequenceLimit::Support::Noncompact: return "Noncompact";
    case SurfaceSequenceLimit::Support::Empty: return "Empty";
  }
  return "Empty";
}

}  // namespace

extern "C" {

const char* plsplit_version(void) { return kVersion; }

const char* plsplit_status_name(plsplit_status status) {
  static thread_local std::string name;
  if (status == PLSPLIT_E_INTERNAL) return "Internal";
  if (status < PLSPLIT_OK || status > PLSPLIT_E_IO) return "Unknown";
  name = std::string(error_name(static_cast<ErrorCode>(status)));
  return name.c_str();
}

int plsplit_is_budget_error(plsplit_status status) {
  return status != PLSPLIT_E_INTERNAL && status >= PLSPLIT_OK && status <= PLSPLIT_E_IO &&
         is_budget_error(static_cast<ErrorCode>(status));
}

const char* plsplit_last_error(void) { return g_last_error.c_str(); }

void plsplit_free_string(char* s) { std::free(s); }

plsplit_status plsplit_sha256_hex(const void* data, size_t len, char* out) {
  return guard([&] {
    require(out != nullptr && (data != nullptr || len == 0), "null buffer");
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int n = 0;
    if (EVP_Digest(data, len, md, &n, EVP_sha256(), nullptr) != 1) throw Error(ErrorCode::Io, "SHA-256 failed");
    for (unsigned i = 0; i < n; ++i) std::snprintf(out + 2 * i, 3, "%02x", md[i]);
  });
}

plsplit_status plsplit_complex_parse(const char* text, plsplit_complex** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto cx = std::make_unique<plsplit_complex>();
    cx->tri = std::make_shared<const Triangulation>(parse_tri_string(text));
    *out = cx.release();
  });
}

void plsplit_complex_free(plsplit_complex* cx) { delete cx; }

int plsplit_complex_size(const plsplit_complex* cx) { return cx ? cx->tri->size() : -1; }

plsplit_status plsplit_complex_emit(const plsplit_complex* cx, char** text) {
  return guard([&] {
    require(cx != nullptr && text != nullptr, "null argument");
    *text = dup(emit_tri(*cx->tri));
  });
}

plsplit_status plsplit_complex_audit(const plsplit_complex* cx, char** json_out) {
  return guard([&] {
    require(cx != nullptr && json_out != nullptr, "null argument");
    const GeometryAudit a = geometry_audit(*cx->tri);
    json j = {{"tets", a.tets},
              {"vertices", a.vertices},
              {"edges", a.edges},
              {"faces", a.faces},
              {"boundary_faces", a.boundary_faces},
              {"max_vertex_degree", a.max_vertex_degree},
              {"orientable", a.orientable},
              {"euler", cx->tri->euler_characteristic()},
              {"betti", betti_numbers(*cx->tri)}};
    put_json(j, json_out);
  });
}

plsplit_status plsplit_generator_parse(const char* text, plsplit_generator** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto gen = std::make_unique<plsplit_generator>();
    gen->spec = parse_periodic_string(text);
    gen->lazy = std::make_unique<LazyComplex>(gen->spec);
    *out = gen.release();
  });
}

void plsplit_generator_free(plsplit_generator* gen) { delete gen; }

plsplit_status plsplit_generator_emit(const plsplit_generator* gen, char** text) {
  return guard([&] {
    require(gen != nullptr && text != nullptr, "null argument");
    *text = dup(emit_periodic(gen->spec));
  });
}

plsplit_status plsplit_generator_window(plsplit_generator* gen, long block, int local, int radius,
                                        plsplit_complex** out) {
  return guard([&] {
    require(gen != nullptr && out != nullptr, "null argument");
    require(radius >= 0, "radius must be nonnegative");
    require(local >= 0 && local < gen->spec.block_size(), "local tet out of range");
    auto cx = std::make_unique<plsplit_complex>();
    cx->tri = std::make_shared<const Triangulation>(gen->lazy->window(GlobalTet{block, local}, radius));
    *out = cx.release();
  });
}

plsplit_status plsplit_generator_blocks(const plsplit_generator* gen, long lo, long hi, plsplit_complex** out) {
  return guard([&] {
    require(gen != nullptr && out != nullptr, "null argument");
    auto cx = std::make_unique<plsplit_complex>();
    cx->tri = std::make_shared<const Triangulation>(gen->lazy->materialize(lo, hi));
    *out = cx.release();
  });
}

plsplit_status plsplit_surfaces_parse(const char* text, plsplit_surfaces** out) {
  return guard([&] {
    require(text != nullptr && out != nullptr, "null argument");
    auto s = std::make_unique<plsplit_surfaces>();
    s->list = parse_nsc_string(text);
    *out = s.release();
  });
}

void plsplit_surfaces_free(plsplit_surfaces* s) { delete s; }

int plsplit_surfaces_count(const plsplit_surfaces* s) { return s ? static_cast<int>(s->list.size()) : -1; }

const char* plsplit_surfaces_name(const plsplit_surfaces* s, int index) {
  if (!s || index < 0 || index >= static_cast<int>(s->list.size())) return nullptr;
  return s->list[index].name.c_str();
}

int plsplit_surfaces_find(const plsplit_surfaces* s, const char* name) {
  if (!s || !name) return -1;
  for (size_t i = 0; i < s->list.size(); ++i)
    if (s->list[i].name == name) return static_cast<int>(i);
  return -1;
}

plsplit_status plsplit_surfaces_emit(const plsplit_surfaces* s, char** text) {
  return guard([&] {
    require(s != nullptr && text != nullptr, "null argument");
    *text = dup(emit_nsc(s->list));
  });
}

plsplit_status plsplit_enumerate(const plsplit_complex* cx, long max_weight, int closed, long budget, char** json_out,
                                 plsplit_surfaces** found) {
  return guard([&] {
    require(cx != nullptr && json_out != nullptr, "null argument");
    require(max_weight >= 0 && budget >= 0, "bounds must be nonnegative");
    EnumerateOptions opt;
    opt.max_weight = max_weight;
    opt.closed = closed != 0;
    opt.budget = budget;
    const auto sols = enumerate_bounded(*cx->tri, opt);
    auto out = std::make_unique<plsplit_surfaces>();
    json list = json::array();
    for (size_t i = 0; i < sols.size(); ++i) {
      const std::string name = "s" + std::to_string(i);
      json item = {{"name", name}, {"weight", weight(*cx->tri, sols[i])}, {"coords", coords_json(sols[i])}};
      if (!sols[i].is_zero()) {
        auto r = analyze_surface(realize_surface(cx->tri, sols[i]));
        item["euler"] = r.euler;
        item["components"] = r.components.size();
      }
      list.push_back(item);
      out->list.push_back(to_nsc(name, sols[i]));
    }
    put_json({{"count", sols.size()}, {"closed", opt.closed}, {"solutions", list}}, json_out);
    if (found) *found = out.release();
  });
}

plsplit_status plsplit_analyze(const plsplit_complex* cx, const plsplit_surfaces* s, int index, char** json_out) {
  return guard([&] {
    require(json_out != nullptr, "null argument");
    const auto c = coords_of(cx, s, index);
    const auto real_s = realize_surface(cx->tri, c);
    const auto r = analyze_surface(real_s);
    const auto area = pl_area(JRMetricData::regular(*cx->tri), real_s);
    json j = surface_report_json(r);
    j["surface"] = surface_at(s, index).name;
    j["weight"] = area.weight;
    j["length"] = real(area.length);
    put_json(j, json_out);
  });
}

plsplit_status plsplit_minimize(const plsplit_complex* cx, const plsplit_surfaces* s, int index, char** json_out) {
  return guard([&] {
    require(json_out != nullptr, "null argument");
    const auto c = coords_of(cx, s, index);
    const auto real_s = realize_surface(cx->tri, c);
    const MinimizeOptions opt;
    const auto r = minimize_length(JRMetricData::regular(*cx->tri), real_s, opt);
    json params = json::array();
    for (double x : r.x) params.push_back(real(x));
    put_json({{"surface", surface_at(s, index).name},
              {"weight", real_s.weight()},
              {"status", status_name(r.status)},
              {"initial_length", real(r.initial_length)},
              {"length", real(r.length)},
              {"iterations", r.iterations},
              {"grad_norm", real(r.grad_norm)},
              {"drifting", r.drifting},
              {"params", params},
              {"tolerances", {{"grad_tol", opt.grad_tol}, {"drift_bound", opt.drift_bound},
                              {"max_iterations", opt.max_iterations}}}},
             json_out);
  });
}

plsplit_status plsplit_intersect(const plsplit_complex* cx, const plsplit_surfaces* s, int a, int b,
                                 char** json_out) {
  return guard([&] {
    require(json_out != nullptr, "null argument");
    const auto ra = realize_surface(cx->tri, coords_of(cx, s, a));
    const auto rb = realize_surface(cx->tri, coords_of(cx, s, b));
    json j = pattern_json(intersect_surfaces(ra, rb));
    j["a"] = surface_at(s, a).name;
    j["b"] = surface_at(s, b).name;
    put_json(j, json_out);
  });
}

plsplit_status plsplit_special(const plsplit_complex* cx, const plsplit_surfaces* s, int torus, const int* partners,
                               int count, char** json_out) {
  return guard([&] {
    require(json_out != nullptr && (partners != nullptr || count == 0), "null argument");
    require(count > 0, "special class needs at least one partner");
    const auto rt = realize_surface(cx->tri, coords_of(cx, s, torus));
    std::vector<IntersectionPattern> patterns;
    json pairs = json::array();
    for (int i = 0; i < count; ++i) {
      const auto rp = realize_surface(cx->tri, coords_of(cx, s, partners[i]));
      patterns.push_back(intersect_surfaces(rt, rp));
      json pair = {{"partner", surface_at(s, partners[i]).name}, {"circles", patterns.back().circles.size()}};
      try {
        pair["seifert"] = datum_json(seifert_neighborhood(rt, rp, patterns.back()));
      } catch (const Error& e) {
        pair["seifert_error"] = std::string(error_name(e.code()));
      }
      pairs.push_back(pair);
    }
    const auto sc = special_class(patterns, std::vector<bool>(patterns.size(), true));
    put_json({{"torus", surface_at(s, torus).name},
              {"status", sc.status == SpecialClass::Status::Found ? "Found" : "ConflictingWitnesses"},
              {"curve_class", sc.curve_class},
              {"seen", sc.seen},
              {"witnesses", sc.witnesses},
              {"pairs", pairs}},
             json_out);
  });
}

plsplit_status plsplit_cut(const plsplit_complex* cx, const plsplit_surfaces* s, int index, char** json_out) {
  return guard([&] {
    require(json_out != nullptr, "null argument");
    const auto r = cut_along(*cx->tri, coords_of(cx, s, index));
    json comps = json::array();
    for (const auto& c : r.components)
      comps.push_back({{"tets", c.window.size()}, {"betti", c.betti}, {"boundary_euler", c.boundary_euler}});
    put_json({{"surface", surface_at(s, index).name},
              {"components", comps},
              {"surface_euler", r.surface_euler},
              {"boundary_euler_before", r.boundary_euler_before},
              {"boundary_euler_after", r.boundary_euler_after},
              {"euler_identity", r.euler_identity()}},
             json_out);
  });
}

plsplit_status plsplit_check(const plsplit_complex* cx, const char* hypothesis, const plsplit_constants* consts,
                             long census_weight, long budget, char** json_out) {
  return guard([&] {
    require(cx != nullptr && consts != nullptr && json_out != nullptr, "null argument");
    require(consts->c1 >= 0 && consts->c2 >= 0 && consts->c3 >= 0 && consts->c4 >= 0,
            "constants must be nonnegative");
    require(census_weight >= 0 && budget >= 0, "bounds must be nonnegative");
    const Hypothesis h = parse_hypothesis(hypothesis);
    const TorusCensus census = torus_census(*cx->tri, census_weight, budget);
    HypothesisConstants k;
    k.C1 = consts->c1;
    k.C2 = consts->c2;
    k.C3 = consts->c3;
    k.C4 = consts->c4;
    const HypothesisVerdict v = check_hypotheses(*cx->tri, census, k, h);
    json witnesses = json::array();
    for (const auto& w : v.witnesses)
      witnesses.push_back({{"torus", w.torus},
                           {"partner", w.partner},
                           {"tet", w.tet},
                           {"disk", w.disk},
                           {"detail", w.detail},
                           {"replays", replay_witness(*cx->tri, census, k, h, w)}});
    json verdict = {{"hypothesis", hypothesis_name(v.hypothesis)},
                    {"result", verdict_name(v.result)},
                    {"constants", {{"C1", v.consts.C1},
                                   {"C2", v.consts.C2},
                                   {"C3", v.consts.C3},
                                   {"C4", v.consts.C4},
                                   {"C2_prime", v.consts.C2_prime},
                                   {"C2_second", v.consts.C2_second},
                                   {"derivation", v.consts.derivation}}},
                    {"census_weight", v.census_weight},
                    {"window_tets", v.window_tets},
                    {"bounds", v.bounds},
                    {"witnesses", witnesses}};
    put_json({{"census", census_json(census)}, {"verdict", verdict}}, json_out);
  });
}

plsplit_status plsplit_validate(const plsplit_complex* cx, const plsplit_surfaces* s, const char* member_labels,
                                const char* piece_labels, long census_weight, long budget, char** json_out) {
  return guard([&] {
    require(cx != nullptr && s != nullptr && json_out != nullptr, "null argument");
    require(census_weight >= 0 && budget >= 0, "bounds must be nonnegative");
    SplittingCollection c;
    const auto mnames = split_names(member_labels);
    if (mnames.size() != s->list.size())
      throw Error(ErrorCode::InvalidArgument, "one member label per surface expected");
    for (size_t i = 0; i < s->list.size(); ++i) {
      c.members.push_back(nsc_on_window(s->list[i], *cx->tri));
      c.labels.push_back(parse_member_label(mnames[i]));
    }
    std::vector<PieceLabel> pieces;
    for (const auto& n : split_names(piece_labels)) pieces.push_back(parse_piece_label(n));
    const TorusCensus census = torus_census(*cx->tri, census_weight, budget);
    const SplittingReport rep = validate_splitting(*cx->tri, c, pieces, census);
    json checks = json::array();
    for (const auto& v : rep.checks) checks.push_back(check_json(v));
    put_json({{"ok", rep.ok()},
              {"pieces", rep.pieces},
              {"checks", checks},
              {"census", {{"max_weight", census.max_weight},
                          {"count", census.tori.size()},
                          {"max_census_weight", census.max_census_weight()}}}},
             json_out);
  });
}

plsplit_status plsplit_limit(plsplit_generator* gen, const plsplit_surfaces* s, long lo, long hi, int radius,
                             long disk_slack_bound, long max_tets, char** json_out) {
  return guard([&] {
    require(gen != nullptr && s != nullptr && json_out != nullptr, "null argument");
    require(hi >= lo, "empty block range");
    require(radius >= 1 && disk_slack_bound >= 0 && max_tets > 0, "bounds must be positive");
    Example ex;
    ex.surfaces = s->list;
    const SurfaceSequence seq = example_sequence(ex);
    std::vector<GlobalTet> region;
    for (long b = lo; b <= hi; ++b)
      for (int l = 0; l < gen->spec.block_size(); ++l) region.push_back(GlobalTet{b, l});
    const auto lim = limit_surface(*gen->lazy, seq, region);
    int last = 0;
    for (const auto& [g, k] : lim.stabilization) last = std::max(last, k);
    json j = {{"members", seq.members.size()},
              {"support", support_name(lim.support)},
              {"limit_tets", lim.limit.size()},
              {"verified_faces", lim.verified_faces},
              {"stabilized_by", last},
              {"blocks", {lo, hi}}};
    if (lim.support != SurfaceSequenceLimit::Support::Empty) {
      NscSurface f{"limit", {}};
      for (const auto& [g, c] : lim.limit) {
        NscEntry e;
        e.kind = NscEntry::Kind::Global;
        e.block = g.block;
        e.local = g.local;
        e.coords = c;
        f.entries.push_back(e);
      }
      const auto ends = classify_limit_ends(*gen->lazy, f, GlobalTet{0, 0}, radius, disk_slack_bound,
                                            static_cast<int>(max_tets));
      j["ends"] = {{"kind", ends_kind_name(ends.kind)},
                   {"compact", ends.compact},
                   {"ends", ends.ends},
                   {"ends_per_radius", ends.ends_per_radius},
                   {"genus_per_radius", ends.genus_per_radius},
                   {"planar", ends.planar},
                   {"disk_slack_ok", ends.disk_slack_ok},
                   {"disk_slack", ends.disk_slack},
                   {"witness", ends.witness}};
    }
    put_json(j, json_out);
  });
}

plsplit_status plsplit_generate_example(const char* name, int param, char** tri_text, char** gen_text,
                                        char** nsc_text, char** meta_json) {
  return guard([&] {
    require(name != nullptr && tri_text != nullptr && gen_text != nullptr && nsc_text != nullptr &&
                meta_json != nullptr,
            "null argument");
    const Example ex = generate_example(name, param);
    json labels = json::array();
    for (auto l : ex.piece_labels) labels.push_back(piece_label_name(l));
    json names = json::array();
    for (const auto& s : ex.surfaces) names.push_back(s.name);
    const json meta = {{"example", ex.name},         {"param", ex.param},
                       {"description", ex.description}, {"tets", ex.window.size()},
                       {"surfaces", names},          {"piece_labels", labels},
                       {"has_generator", ex.generator.has_value()}};
    *tri_text = dup(emit_tri(ex.window));
    *gen_text = ex.generator ? dup(emit_periodic(*ex.generator)) : nullptr;
    *nsc_text = dup(emit_nsc(ex.surfaces));
    put_json(meta, meta_json);
  });
}

plsplit_status plsplit_example_default_param(const char* name, int* param) {
  return guard([&] {
    require(name != nullptr && param != nullptr, "null argument");
    *param = default_example_param(name);
  });
}

}  // extern "C"
