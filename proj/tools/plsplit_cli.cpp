#include <CLI11.hpp>
#include <json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "plsplit/plsplit.h"

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

constexpr long kDefaultBudget = 10'000'000;
constexpr long kDefaultCensusWeight = 12;
constexpr int kDefaultRadius = 2;

// Raised for any failure; carries the status the exit code derives from.
struct Failure {
  plsplit_status status;
  std::string message;
};

[[noreturn]] void fail(plsplit_status status, const std::string& message) { throw Failure{status, message}; }

void check(plsplit_status st) {
  if (st != PLSPLIT_OK) fail(st, plsplit_last_error());
}

struct Text {
  char* p = nullptr;
  ~Text() { plsplit_free_string(p); }
  std::string str() const { return p ? std::string(p) : std::string(); }
};

struct ComplexPtr {
  plsplit_complex* p = nullptr;
  ~ComplexPtr() { plsplit_complex_free(p); }
};

struct GeneratorPtr {
  plsplit_generator* p = nullptr;
  ~GeneratorPtr() { plsplit_generator_free(p); }
};

struct SurfacesPtr {
  plsplit_surfaces* p = nullptr;
  ~SurfacesPtr() { plsplit_surfaces_free(p); }
};

struct Options {
  std::optional<long> weight;
  std::optional<int> radius;
  std::optional<long> c1, c2, c3, c4;
  std::optional<long> budget;
  std::string out;
  std::vector<std::string> args;
};

struct Report {
  std::string command;
  json inputs = json::array();
  json bounds = json::object();
  json result;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(PLSPLIT_E_IO, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out || !(out << text)) fail(PLSPLIT_E_IO, "cannot write '" + path.string() + "'");
}

std::string digest(const std::string& bytes) {
  char hex[65];
  check(plsplit_sha256_hex(bytes.data(), bytes.size(), hex));
  return hex;
}

std::string read_input(Report& rep, const std::string& path) {
  std::string text = read_file(path);
  rep.inputs.push_back({{"path", path}, {"sha256", digest(text)}});
  return text;
}

json parse_json(const Text& t) { return json::parse(t.str()); }

long budget_of(const Options& o) {
  if (o.budget) return *o.budget;
  if (const char* env = std::getenv("PLSPLIT_BUDGET")) {
    char* end = nullptr;
    long v = std::strtol(env, &end, 10);
    if (!*env || *end || v < 0) fail(PLSPLIT_E_INVALID_ARGUMENT, "PLSPLIT_BUDGET must be a nonnegative integer");
    return v;
  }
  return kDefaultBudget;
}

void need_args(const Options& o, size_t lo, size_t hi, const char* usage) {
  if (o.args.size() < lo || o.args.size() > hi) fail(PLSPLIT_E_INVALID_ARGUMENT, std::string("usage: ") + usage);
}

bool is_generator_path(const std::string& path) { return fs::path(path).extension() == ".gen"; }

// A `.tri` file as is, or a window of a `.gen` generator about local tet 0 of block 0.
void load_complex(Report& rep, const Options& o, const std::string& path, ComplexPtr& cx) {
  std::string text = read_input(rep, path);
  if (is_generator_path(path)) {
    GeneratorPtr gen;
    check(plsplit_generator_parse(text.c_str(), &gen.p));
    const int radius = o.radius.value_or(kDefaultRadius);
    rep.bounds["radius"] = radius;
    check(plsplit_generator_window(gen.p, 0, 0, radius, &cx.p));
  } else {
    check(plsplit_complex_parse(text.c_str(), &cx.p));
  }
}

void load_surfaces(Report& rep, const std::string& path, SurfacesPtr& s) {
  std::string text = read_input(rep, path);
  check(plsplit_surfaces_parse(text.c_str(), &s.p));
}

int surface_index(const SurfacesPtr& s, const std::string& name) {
  int i = plsplit_surfaces_find(s.p, name.c_str());
  if (i < 0) fail(PLSPLIT_E_INVALID_ARGUMENT, "no surface named '" + name + "'");
  return i;
}

plsplit_constants constants_of(const Options& o, Report& rep) {
  plsplit_constants k{o.c1.value_or(0), o.c2.value_or(0), o.c3.value_or(0), o.c4.value_or(0)};
  rep.bounds["C1"] = k.c1;
  rep.bounds["C2"] = k.c2;
  rep.bounds["C3"] = k.c3;
  rep.bounds["C4"] = k.c4;
  return k;
}

void cmd_enum(const Options& o, Report& rep) {
  need_args(o, 1, 1, "enum <complex> --weight W");
  if (!o.weight) fail(PLSPLIT_E_INVALID_ARGUMENT, "enum needs --weight");
  ComplexPtr cx;
  load_complex(rep, o, o.args[0], cx);
  const long budget = budget_of(o);
  rep.bounds["weight"] = *o.weight;
  rep.bounds["budget"] = budget;
  Text j;
  check(plsplit_enumerate(cx.p, *o.weight, 0, budget, &j.p, nullptr));
  rep.result = parse_json(j);
}

void cmd_minimize(const Options& o, Report& rep) {
  need_args(o, 3, 3, "minimize <complex> <surfaces.nsc> <name>");
  ComplexPtr cx;
  SurfacesPtr s;
  load_complex(rep, o, o.args[0], cx);
  load_surfaces(rep, o.args[1], s);
  Text a, m;
  const int i = surface_index(s, o.args[2]);
  check(plsplit_analyze(cx.p, s.p, i, &a.p));
  check(plsplit_minimize(cx.p, s.p, i, &m.p));
  rep.result = {{"analysis", parse_json(a)}, {"minimization", parse_json(m)}};
}

void cmd_intersect(const Options& o, Report& rep) {
  need_args(o, 4, 4, "intersect <complex> <surfaces.nsc> <a> <b>");
  ComplexPtr cx;
  SurfacesPtr s;
  load_complex(rep, o, o.args[0], cx);
  load_surfaces(rep, o.args[1], s);
  Text j;
  check(plsplit_intersect(cx.p, s.p, surface_index(s, o.args[2]), surface_index(s, o.args[3]), &j.p));
  rep.result = parse_json(j);
}

void cmd_special(const Options& o, Report& rep) {
  need_args(o, 4, 1000, "special <complex> <surfaces.nsc> <torus> <partner>...");
  ComplexPtr cx;
  SurfacesPtr s;
  load_complex(rep, o, o.args[0], cx);
  load_surfaces(rep, o.args[1], s);
  std::vector<int> partners;
  for (size_t i = 3; i < o.args.size(); ++i) partners.push_back(surface_index(s, o.args[i]));
  Text j;
  check(plsplit_special(cx.p, s.p, surface_index(s, o.args[2]), partners.data(), static_cast<int>(partners.size()),
                        &j.p));
  rep.result = parse_json(j);
}

void cmd_cut(const Options& o, Report& rep) {
  need_args(o, 3, 3, "cut <complex> <surfaces.nsc> <name>");
  ComplexPtr cx;
  SurfacesPtr s;
  load_complex(rep, o, o.args[0], cx);
  load_surfaces(rep, o.args[1], s);
  Text j;
  check(plsplit_cut(cx.p, s.p, surface_index(s, o.args[2]), &j.p));
  rep.result = parse_json(j);
}

void cmd_check(const Options& o, Report& rep) {
  need_args(o, 2, 2, "check <complex> <A|B|C|D> [--C1..--C4] [--weight W]");
  ComplexPtr cx;
  load_complex(rep, o, o.args[0], cx);
  const plsplit_constants k = constants_of(o, rep);
  const long weight = o.weight.value_or(kDefaultCensusWeight);
  const long budget = budget_of(o);
  rep.bounds["weight"] = weight;
  rep.bounds["budget"] = budget;
  Text j;
  check(plsplit_check(cx.p, o.args[1].c_str(), &k, weight, budget, &j.p));
  rep.result = parse_json(j);
}

struct ExampleFiles {
  std::string tri, gen, nsc;
  json meta;
};

ExampleFiles make_example(const std::string& name, std::optional<int> param) {
  int p = 0;
  if (param) {
    p = *param;
  } else {
    check(plsplit_example_default_param(name.c_str(), &p));
  }
  Text tri, gen, nsc, meta;
  check(plsplit_generate_example(name.c_str(), p, &tri.p, &gen.p, &nsc.p, &meta.p));
  return {tri.str(), gen.str(), nsc.str(), parse_json(meta)};
}

std::optional<int> example_param(const Options& o) {
  if (o.args.size() > 1) {
    try {
      size_t used = 0;
      int v = std::stoi(o.args[1], &used);
      if (used == o.args[1].size()) return v;
    } catch (const std::exception&) {
    }
    fail(PLSPLIT_E_INVALID_ARGUMENT, "example parameter must be an integer");
  }
  if (o.radius) return *o.radius;
  return std::nullopt;
}

void cmd_gen(const Options& o, Report& rep) {
  need_args(o, 1, 2, "gen <motivating|product|periodic-annulus> [param] --out DIR");
  if (o.out.empty()) fail(PLSPLIT_E_INVALID_ARGUMENT, "gen needs --out DIR");
  const std::string& name = o.args[0];
  ExampleFiles ex = make_example(name, example_param(o));
  fs::create_directories(o.out);
  const fs::path dir(o.out);
  json files = json::array();
  auto emit = [&](const std::string& ext, const std::string& text) {
    const std::string file = name + ext;
    write_file(dir / file, text);
    files.push_back({{"file", file}, {"sha256", digest(text)}});
  };
  emit(".tri", ex.tri);
  if (!ex.gen.empty()) emit(".gen", ex.gen);
  emit(".nsc", ex.nsc);
  rep.bounds["param"] = ex.meta["param"];
  rep.result = ex.meta;
  rep.result["files"] = files;
}

std::string join_labels(const json& labels) {
  std::string out;
  for (const auto& l : labels) out += (out.empty() ? "" : ",") + l.get<std::string>();
  return out;
}

void pipeline_motivating(const Options& o, const ExampleFiles& ex, Report& rep) {
  ComplexPtr cx;
  SurfacesPtr s;
  check(plsplit_complex_parse(ex.tri.c_str(), &cx.p));
  check(plsplit_surfaces_parse(ex.nsc.c_str(), &s.p));
  const long weight = o.weight.value_or(kDefaultCensusWeight);
  const long budget = budget_of(o);
  rep.bounds["weight"] = weight;
  rep.bounds["budget"] = budget;
  Text audit;
  check(plsplit_complex_audit(cx.p, &audit.p));
  // C1 defaults to the census maximum, read off a first census pass
  plsplit_constants k = constants_of(o, rep);
  if (!o.c1) {
    Text first;
    check(plsplit_check(cx.p, "A", &k, weight, budget, &first.p));
    k.c1 = parse_json(first)["census"]["max_census_weight"].get<long>();
    rep.bounds["C1"] = k.c1;
  }
  json verdicts = json::object();
  for (const char* h : {"A", "B", "C", "D"}) {
    Text j;
    check(plsplit_check(cx.p, h, &k, weight, budget, &j.p));
    json r = parse_json(j);
    verdicts[h] = r["verdict"];
    if (std::string(h) == "A") rep.result["census"] = r["census"];
  }
  std::string members;
  for (int i = 0; i < plsplit_surfaces_count(s.p); ++i) members += (i ? "," : "") + std::string("Annulus");
  Text v;
  check(plsplit_validate(cx.p, s.p, members.c_str(), join_labels(ex.meta["piece_labels"]).c_str(), weight, budget,
                         &v.p));
  rep.result["audit"] = parse_json(audit);
  rep.result["hypotheses"] = verdicts;
  rep.result["splitting"] = parse_json(v);
}

void pipeline_product(const ExampleFiles& ex, Report& rep) {
  ComplexPtr cx;
  SurfacesPtr s;
  check(plsplit_complex_parse(ex.tri.c_str(), &cx.p));
  check(plsplit_surfaces_parse(ex.nsc.c_str(), &s.p));
  Text audit;
  check(plsplit_complex_audit(cx.p, &audit.p));
  rep.result["audit"] = parse_json(audit);
  json surfaces = json::array();
  for (int i = 0; i < plsplit_surfaces_count(s.p); ++i) {
    Text a, c;
    check(plsplit_analyze(cx.p, s.p, i, &a.p));
    check(plsplit_cut(cx.p, s.p, i, &c.p));
    surfaces.push_back({{"analysis", parse_json(a)}, {"cut", parse_json(c)}});
  }
  rep.result["surfaces"] = surfaces;
  const int column = plsplit_surfaces_find(s.p, "column");
  if (column >= 0) {
    std::vector<int> partners{plsplit_surfaces_find(s.p, "row"), plsplit_surfaces_find(s.p, "slope")};
    Text j;
    check(plsplit_special(cx.p, s.p, column, partners.data(), 2, &j.p));
    rep.result["special"] = parse_json(j);
  }
}

void pipeline_periodic(const Options& o, const ExampleFiles& ex, Report& rep) {
  GeneratorPtr gen;
  SurfacesPtr s;
  check(plsplit_generator_parse(ex.gen.c_str(), &gen.p));
  check(plsplit_surfaces_parse(ex.nsc.c_str(), &s.p));
  const int n = plsplit_surfaces_count(s.p);
  const int radius = o.radius.value_or(1);
  const long c = o.c2.value_or(2);
  const long max_tets = budget_of(o);
  rep.bounds["radius"] = radius;
  rep.bounds["C2"] = c;
  rep.bounds["budget"] = max_tets;
  Text j;
  check(plsplit_limit(gen.p, s.p, -1, n - 3, radius, c, max_tets, &j.p));
  rep.result["limit"] = parse_json(j);
}

void cmd_pipeline(const Options& o, Report& rep) {
  need_args(o, 1, 2, "pipeline <motivating|product|periodic-annulus> [param]");
  const std::string& name = o.args[0];
  std::optional<int> param = o.args.size() > 1 ? example_param(o) : std::nullopt;
  if (!param && name == "periodic-annulus") param = 16;
  ExampleFiles ex = make_example(name, param);
  rep.bounds["param"] = ex.meta["param"];
  rep.inputs.push_back({{"example", name}, {"sha256", digest(ex.tri + ex.gen + ex.nsc)}});
  rep.result = {{"example", ex.meta}};
  if (name == "motivating") {
    pipeline_motivating(o, ex, rep);
  } else if (name == "product") {
    pipeline_product(ex, rep);
  } else {
    pipeline_periodic(o, ex, rep);
  }
}

std::string render(const Report& rep) {
  json out = {{"tool", "plsplit"},
              {"version", plsplit_version()},
              {"command", rep.command},
              {"inputs", rep.inputs},
              {"bounds", rep.bounds},
              {"result", rep.result}};
  return out.dump(2) + "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Normal surfaces, tori and splitting certificates on triangulated 3-manifolds"};
  app.require_subcommand(1);
  app.set_version_flag("--version", plsplit_version());
  Options o;
  const std::vector<std::pair<std::string, std::string>> commands{
      {"gen", "Generate a named example"},
      {"enum", "Enumerate embedded normal surfaces up to a weight"},
      {"minimize", "Minimize the PL length of a surface"},
      {"intersect", "Intersection pattern of two surfaces"},
      {"special", "Special class of a torus from its intersections"},
      {"cut", "Cut a complex along a surface"},
      {"check", "Check one hypothesis on a torus census"},
      {"pipeline", "Run the full chain on a named example"}};
  for (const auto& [name, help] : commands) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("args", o.args, "Positional arguments");
    sub->add_option("--weight", o.weight, "Weight bound")->check(CLI::NonNegativeNumber);
    sub->add_option("--radius", o.radius, "Window radius")->check(CLI::NonNegativeNumber);
    sub->add_option("--C1", o.c1, "Hypothesis constant C1")->check(CLI::NonNegativeNumber);
    sub->add_option("--C2", o.c2, "Hypothesis constant C2")->check(CLI::NonNegativeNumber);
    sub->add_option("--C3", o.c3, "Hypothesis constant C3")->check(CLI::NonNegativeNumber);
    sub->add_option("--C4", o.c4, "Hypothesis constant C4")->check(CLI::NonNegativeNumber);
    sub->add_option("--budget", o.budget, "Search budget (default: $PLSPLIT_BUDGET)")->check(CLI::NonNegativeNumber);
    sub->add_option("--out", o.out, "Report path (directory for gen)");
  }
  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }
  Report rep;
  rep.command = app.get_subcommands().front()->get_name();
  try {
    if (rep.command == "gen") {
      cmd_gen(o, rep);
    } else if (rep.command == "enum") {
      cmd_enum(o, rep);
    } else if (rep.command == "minimize") {
      cmd_minimize(o, rep);
    } else if (rep.command == "intersect") {
      cmd_intersect(o, rep);
    } else if (rep.command == "special") {
      cmd_special(o, rep);
    } else if (rep.command == "cut") {
      cmd_cut(o, rep);
    } else if (rep.command == "check") {
      cmd_check(o, rep);
    } else {
      cmd_pipeline(o, rep);
    }
    const std::string text = render(rep);
    if (rep.command == "gen") {
      write_file(fs::path(o.out) / (o.args[0] + ".json"), text);
      std::cout << text;
    } else if (o.out.empty()) {
      std::cout << text;
    } else {
      write_file(o.out, text);
    }
    return 0;
  } catch (const Failure& f) {
    std::cerr << "error: " << plsplit_status_name(f.status) << ": " << f.message << "\n";
    return plsplit_is_budget_error(f.status) ? 2 : 1;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: Io: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 1;
  }
}
