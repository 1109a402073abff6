#include <doctest.h>

#include <plsplit/plsplit.h>

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

using json = nlohmann::json;

namespace {

struct Text {
  char* p = nullptr;
  ~Text() { plsplit_free_string(p); }
  json parse() const { return json::parse(p); }
  std::string str() const { return p ? p : ""; }
};

struct Complex {
  plsplit_complex* p = nullptr;
  ~Complex() { plsplit_complex_free(p); }
};

struct Surfaces {
  plsplit_surfaces* p = nullptr;
  ~Surfaces() { plsplit_surfaces_free(p); }
};

struct Generator {
  plsplit_generator* p = nullptr;
  ~Generator() { plsplit_generator_free(p); }
};

struct ExampleTexts {
  Text tri, gen, nsc, meta;
};

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void generate(const char* name, int param, ExampleTexts& ex) {
  REQUIRE(plsplit_generate_example(name, param, &ex.tri.p, &ex.gen.p, &ex.nsc.p, &ex.meta.p) == PLSPLIT_OK);
}

}  // namespace

TEST_CASE("status names and budget classification") {
  CHECK(std::string(plsplit_status_name(PLSPLIT_OK)) == "Ok");
  CHECK(std::string(plsplit_status_name(PLSPLIT_E_PARSE)) == "Parse");
  CHECK(std::string(plsplit_status_name(PLSPLIT_E_UNKNOWN_EXAMPLE)) == "UnknownExample");
  CHECK(plsplit_is_budget_error(PLSPLIT_E_WINDOW_TOO_LARGE));
  CHECK(plsplit_is_budget_error(PLSPLIT_E_BUDGET_EXCEEDED));
  CHECK_FALSE(plsplit_is_budget_error(PLSPLIT_E_PARSE));
  CHECK(std::string(plsplit_version()).size() > 0);
}

TEST_CASE("sha256 of a known string") {
  char hex[65];
  REQUIRE(plsplit_sha256_hex("abc", 3, hex) == PLSPLIT_OK);
  CHECK(std::string(hex) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}

TEST_CASE("complex parse, emit and audit") {
  ExampleTexts ex;
  generate("product", 1, ex);
  Complex cx;
  REQUIRE(plsplit_complex_parse(ex.tri.p, &cx.p) == PLSPLIT_OK);
  CHECK(plsplit_complex_size(cx.p) == 216);
  Text back;
  REQUIRE(plsplit_complex_emit(cx.p, &back.p) == PLSPLIT_OK);
  CHECK(back.str() == ex.tri.str());
  Text audit;
  REQUIRE(plsplit_complex_audit(cx.p, &audit.p) == PLSPLIT_OK);
  const json a = audit.parse();
  CHECK(a["tets"] == 216);
  CHECK(a["betti"] == json::array({1, 3, 3, 1}));
  CHECK(a["orientable"] == true);
}

TEST_CASE("parse errors carry the line") {
  Complex cx;
  CHECK(plsplit_complex_parse("tet 0: 0->bd 1->bd 2->bd 3->bd\nbogus\n", &cx.p) == PLSPLIT_E_PARSE);
  CHECK(cx.p == nullptr);
  CHECK(std::string(plsplit_last_error()).rfind("line 2:", 0) == 0);
  Surfaces s;
  CHECK(plsplit_surfaces_parse("surf\n", &s.p) == PLSPLIT_E_PARSE);
}

TEST_CASE("null arguments are rejected") {
  CHECK(plsplit_complex_parse(nullptr, nullptr) == PLSPLIT_E_INVALID_ARGUMENT);
  Text t;
  CHECK(plsplit_complex_emit(nullptr, &t.p) == PLSPLIT_E_INVALID_ARGUMENT);
  CHECK(plsplit_sha256_hex(nullptr, 0, nullptr) == PLSPLIT_E_INVALID_ARGUMENT);
}

TEST_CASE("enumeration, analysis and cutting") {
  ExampleTexts ex;
  generate("product", 1, ex);
  Complex cx;
  REQUIRE(plsplit_complex_parse(ex.tri.p, &cx.p) == PLSPLIT_OK);
  Surfaces s;
  REQUIRE(plsplit_surfaces_parse(ex.nsc.p, &s.p) == PLSPLIT_OK);
  CHECK(plsplit_surfaces_count(s.p) == 4);
  const int column = plsplit_surfaces_find(s.p, "column");
  REQUIRE(column >= 0);
  CHECK(std::string(plsplit_surfaces_name(s.p, column)) == "column");
  CHECK(plsplit_surfaces_find(s.p, "missing") == -1);
  Text emitted;
  REQUIRE(plsplit_surfaces_emit(s.p, &emitted.p) == PLSPLIT_OK);
  CHECK(emitted.str() == ex.nsc.str());

  Text an;
  REQUIRE(plsplit_analyze(cx.p, s.p, column, &an.p) == PLSPLIT_OK);
  CHECK(an.parse()["euler"] == 0);
  Text cut;
  REQUIRE(plsplit_cut(cx.p, s.p, column, &cut.p) == PLSPLIT_OK);
  CHECK(cut.parse()["euler_identity"] == true);

  const int partners[2] = {plsplit_surfaces_find(s.p, "row"), plsplit_surfaces_find(s.p, "slope")};
  Text sp;
  REQUIRE(plsplit_special(cx.p, s.p, column, partners, 2, &sp.p) == PLSPLIT_OK);
  CHECK(sp.parse()["status"] == "Found");

  Text en;
  Surfaces found;
  REQUIRE(plsplit_enumerate(cx.p, 2, 0, 10'000'000, &en.p, &found.p) == PLSPLIT_OK);
  CHECK(en.parse()["count"] == plsplit_surfaces_count(found.p));
  CHECK(plsplit_enumerate(cx.p, 12, 1, 10, &en.p, nullptr) == PLSPLIT_E_WINDOW_TOO_LARGE);
  CHECK(plsplit_analyze(cx.p, s.p, 99, &an.p) == PLSPLIT_E_INVALID_ARGUMENT);
}

TEST_CASE("hypothesis check and splitting validation on the motivating example") {
  ExampleTexts ex;
  generate("motivating", 1, ex);
  Complex cx;
  REQUIRE(plsplit_complex_parse(ex.tri.p, &cx.p) == PLSPLIT_OK);
  Surfaces s;
  REQUIRE(plsplit_surfaces_parse(ex.nsc.p, &s.p) == PLSPLIT_OK);
  plsplit_constants k{12, 0, 0, 0};
  Text chk;
  REQUIRE(plsplit_check(cx.p, "A", &k, 12, 10'000'000, &chk.p) == PLSPLIT_OK);
  const json c = chk.parse();
  CHECK(c["verdict"]["result"] == "VerifiedOnWindow");
  CHECK(c["census"]["max_census_weight"] == 12);
  CHECK(plsplit_check(cx.p, "E", &k, 12, 10'000'000, &chk.p) == PLSPLIT_E_INVALID_ARGUMENT);
  plsplit_constants negative{-1, 0, 0, 0};
  CHECK(plsplit_check(cx.p, "A", &negative, 12, 10'000'000, &chk.p) == PLSPLIT_E_INVALID_ARGUMENT);

  Text v;
  const json meta = ex.meta.parse();
  std::string labels;
  for (const auto& l : meta["piece_labels"]) labels += (labels.empty() ? "" : ",") + l.get<std::string>();
  REQUIRE(plsplit_validate(cx.p, s.p, "Annulus", labels.c_str(), 12, 10'000'000, &v.p) == PLSPLIT_OK);
  const json r = v.parse();
  CHECK(r["pieces"] == 2);
  for (const auto& check : r["checks"])
    if (check["name"].get<std::string>().rfind("condition 1", 0) == 0) CHECK(check["holds"] == true);
}

TEST_CASE("generator windows and the limit of growing tubes") {
  ExampleTexts ex;
  generate("periodic-annulus", 12, ex);
  REQUIRE(ex.gen.p != nullptr);
  Generator gen;
  REQUIRE(plsplit_generator_parse(ex.gen.p, &gen.p) == PLSPLIT_OK);
  Text gen_back;
  REQUIRE(plsplit_generator_emit(gen.p, &gen_back.p) == PLSPLIT_OK);
  CHECK(gen_back.str() == ex.gen.str());

  Complex w0, w1, blocks;
  REQUIRE(plsplit_generator_window(gen.p, 0, 0, 1, &w0.p) == PLSPLIT_OK);
  REQUIRE(plsplit_generator_window(gen.p, 0, 0, 3, &w1.p) == PLSPLIT_OK);
  CHECK(plsplit_complex_size(w0.p) < plsplit_complex_size(w1.p));
  REQUIRE(plsplit_generator_blocks(gen.p, 0, 1, &blocks.p) == PLSPLIT_OK);

  Surfaces s;
  REQUIRE(plsplit_surfaces_parse(ex.nsc.p, &s.p) == PLSPLIT_OK);
  Text lim;
  REQUIRE(plsplit_limit(gen.p, s.p, -1, 9, 1, 2, 10'000'000, &lim.p) == PLSPLIT_OK);
  const json l = lim.parse();
  CHECK(l["support"] == "Noncompact");
  CHECK(l["ends"]["kind"] == "Annulus");
  CHECK(l["ends"]["ends"] == 2);
  CHECK(plsplit_limit(gen.p, s.p, -1, 9, 1, 2, 10, &lim.p) == PLSPLIT_E_BUDGET_EXCEEDED);
}

TEST_CASE("example generation") {
  ExampleTexts ex;
  CHECK(plsplit_generate_example("klein", 1, &ex.tri.p, &ex.gen.p, &ex.nsc.p, &ex.meta.p) ==
        PLSPLIT_E_UNKNOWN_EXAMPLE);
  int param = 0;
  REQUIRE(plsplit_example_default_param("periodic-annulus", &param) == PLSPLIT_OK);
  CHECK(param == 5);
  ExampleTexts product;
  generate("product", 1, product);
  CHECK(product.gen.p == nullptr);
  CHECK(product.meta.parse()["tets"] == 216);
}

TEST_CASE("shipped data files round trip exactly") {
  int files = 0;
  for (const auto& entry : std::filesystem::directory_iterator(PLSPLIT_DATA_DIR)) {
    const auto& path = entry.path();
    if (path.stem() == "malformed") continue;
    const std::string text = slurp(path);
    Text back;
    if (path.extension() == ".tri") {
      Complex cx;
      REQUIRE(plsplit_complex_parse(text.c_str(), &cx.p) == PLSPLIT_OK);
      REQUIRE(plsplit_complex_emit(cx.p, &back.p) == PLSPLIT_OK);
    } else if (path.extension() == ".nsc") {
      Surfaces s;
      REQUIRE(plsplit_surfaces_parse(text.c_str(), &s.p) == PLSPLIT_OK);
      REQUIRE(plsplit_surfaces_emit(s.p, &back.p) == PLSPLIT_OK);
    } else if (path.extension() == ".gen") {
      Generator g;
      REQUIRE(plsplit_generator_parse(text.c_str(), &g.p) == PLSPLIT_OK);
      REQUIRE(plsplit_generator_emit(g.p, &back.p) == PLSPLIT_OK);
    } else {
      continue;
    }
    ++files;
    CHECK_MESSAGE(back.str() == text, path.filename().string());
  }
  CHECK(files >= 7);
}
