#include "complex.hpp"

#include <algorithm>
#include <deque>
#include <istream>
#include <map>
#include <sstream>

#include "union_find.hpp"

namespace plsplit {

void glue(GluingTable& table, int tet, int face, int partner, Perm4 perm) {
  table[tet][face] = Gluing{partner, perm};
  table[partner][perm[face]] = Gluing{tet, perm.inverse()};
}

Triangulation::Triangulation(GluingTable gluings, std::vector<GlobalTet> origin)
    : gluings_(std::move(gluings)), origin_(std::move(origin)) {
  if (!origin_.empty() && origin_.size() != gluings_.size())
    throw Error(ErrorCode::InvalidArgument, "origin labels do not match tetrahedron count");
  validate();
  build_skeleta();
  build_orientation();
}

void Triangulation::validate() const {
  const int n = size();
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = gluings_[t][f];
      if (g.boundary()) continue;
      auto where = "tet " + std::to_string(t) + " face " + std::to_string(f);
      if (g.tet >= n) throw Error(ErrorCode::InvalidGluing, where + ": partner tet out of range");
      if (!g.perm.valid()) throw Error(ErrorCode::InvalidGluing, where + ": invalid permutation");
      int pf = g.perm[f];
      if (g.tet == t && pf == f)
        throw Error(ErrorCode::InvalidGluing, where + ": face glued to itself");
      const Gluing& back = gluings_[g.tet][pf];
      if (back.tet != t || !(back.perm == g.perm.inverse()))
        throw Error(ErrorCode::InvalidGluing, where + ": gluing is not involutive");
    }
  }
}

void Triangulation::build_skeleta() {
  const int n = size();
  UnionFind vuf(4 * n);
  UnionFind euf(6 * n);
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = gluings_[t][f];
      if (g.boundary()) continue;
      for (int v = 0; v < 4; ++v)
        if (v != f) vuf.unite(4 * t + v, 4 * g.tet + g.perm[v]);
      for (int e = 0; e < 6; ++e) {
        int a = kEdgeVertices[e][0], b = kEdgeVertices[e][1];
        if (a == f || b == f) continue;
        int pa = g.perm[a], pb = g.perm[b];
        int rel = pa < pb ? 0 : 1;
        if (!euf.unite(6 * t + e, 6 * g.tet + edge_index(pa, pb), rel))
          throw Error(ErrorCode::InvalidGluing,
                      "edge of tet " + std::to_string(t) + " is identified with itself reversed");
      }
    }
  }
  vertex_class_.assign(n, {});
  auto vl = vuf.labels(&num_vertices_);
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) vertex_class_[t][v] = vl[4 * t + v];

  edge_class_.assign(n, {});
  edge_dir_.assign(n, {});
  int ne = 0;
  auto el = euf.labels(&ne);
  edge_reps_.assign(ne, {-1, -1});
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      int c = el[6 * t + e];
      edge_class_[t][e] = c;
      if (edge_reps_[c][0] < 0) edge_reps_[c] = {t, e};
    }
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < 6; ++e) {
      auto rep = edge_reps_[edge_class_[t][e]];
      int p1 = 0, p2 = 0;
      euf.find(6 * t + e, p1);
      euf.find(6 * rep[0] + rep[1], p2);
      edge_dir_[t][e] = (p1 ^ p2) ? -1 : 1;
    }

  face_class_.assign(n, {-1, -1, -1, -1});
  face_to_rep_.assign(n, {});
  face_reps_.clear();
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f) {
      if (face_class_[t][f] >= 0) continue;
      int c = static_cast<int>(face_reps_.size());
      face_reps_.push_back({t, f});
      face_class_[t][f] = c;
      face_to_rep_[t][f] = Perm4();
      const Gluing& g = gluings_[t][f];
      if (!g.boundary()) {
        int pf = g.perm[f];
        face_class_[g.tet][pf] = c;
        face_to_rep_[g.tet][pf] = g.perm.inverse();
      }
    }

  vertex_stars_.assign(num_vertices_, {});
  edge_stars_.assign(ne, {});
  edge_degrees_.assign(ne, 0);
  for (int t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) vertex_stars_[vertex_class_[t][v]].push_back(t);
    for (int e = 0; e < 6; ++e) {
      edge_stars_[edge_class_[t][e]].push_back(t);
      ++edge_degrees_[edge_class_[t][e]];
    }
  }
  for (auto* stars : {&vertex_stars_, &edge_stars_})
    for (auto& s : *stars) {
      std::sort(s.begin(), s.end());
      s.erase(std::unique(s.begin(), s.end()), s.end());
    }
}

void Triangulation::build_orientation() {
  const int n = size();
  std::vector<int> sign(n, 0);
  for (int start = 0; start < n; ++start) {
    if (sign[start]) continue;
    sign[start] = 1;
    std::deque<int> queue{start};
    while (!queue.empty()) {
      int t = queue.front();
      queue.pop_front();
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = gluings_[t][f];
        if (g.boundary()) continue;
        // an odd gluing permutation preserves orientation between equally signed tets
        int want = -g.perm.sign() * sign[t];
        if (sign[g.tet] == 0) {
          sign[g.tet] = want;
          queue.push_back(g.tet);
        } else if (sign[g.tet] != want) {
          orientation_.reset();
          return;
        }
      }
    }
  }
  orientation_ = std::move(sign);
}

int Triangulation::num_boundary_faces() const {
  int c = 0;
  for (const auto& row : gluings_)
    for (const auto& g : row)
      if (g.boundary()) ++c;
  return c;
}

int Triangulation::find_global(const GlobalTet& g) const {
  for (int i = 0; i < size(); ++i)
    if (origin_[i] == g) return i;
  return -1;
}

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

Triangulation parse_tri(std::istream& in) {
  std::map<int, std::array<std::optional<Gluing>, 4>> faces;
  std::map<int, GlobalTet> origins;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word)) continue;
    if (word == "origin") {
      int id = 0;
      long block = 0;
      int local = 0;
      if (!(ls >> id >> block >> local)) parse_fail(lineno, "expected 'origin <id> <block> <local>'");
      origins[id] = GlobalTet{block, local};
      continue;
    }
    if (word != "tet") parse_fail(lineno, "expected 'tet' or 'origin', got '" + word + "'");
    std::string idtok;
    if (!(ls >> idtok) || idtok.empty() || idtok.back() != ':')
      parse_fail(lineno, "expected 'tet <id>:'");
    idtok.pop_back();
    int id = 0;
    try {
      size_t used = 0;
      id = std::stoi(idtok, &used);
      if (used != idtok.size() || id < 0) throw std::invalid_argument("id");
    } catch (const std::exception&) {
      parse_fail(lineno, "bad tetrahedron id '" + idtok + "'");
    }
    if (faces.count(id)) parse_fail(lineno, "duplicate tet " + std::to_string(id));
    auto& row = faces[id];
    std::string tok;
    while (ls >> tok) {
      auto arrow = tok.find("->");
      if (arrow == std::string::npos || arrow != 1 || tok[0] < '0' || tok[0] > '3')
        parse_fail(lineno, "bad face token '" + tok + "' (want <face>-><tet>/<perm> or <face>->bd)");
      int f = tok[0] - '0';
      if (row[f]) parse_fail(lineno, "face " + std::to_string(f) + " given twice");
      std::string rest = tok.substr(3);
      if (rest == "bd") {
        row[f] = Gluing{};
        continue;
      }
      auto slash = rest.find('/');
      if (slash == std::string::npos) parse_fail(lineno, "bad face token '" + tok + "'");
      Gluing g;
      try {
        size_t used = 0;
        g.tet = std::stoi(rest.substr(0, slash), &used);
        if (used != slash || g.tet < 0) throw std::invalid_argument("tet");
        g.perm = Perm4::parse(rest.substr(slash + 1));
      } catch (const Error& e) {
        parse_fail(lineno, e.what());
      } catch (const std::exception&) {
        parse_fail(lineno, "bad face token '" + tok + "'");
      }
      row[f] = g;
    }
  }
  const int n = static_cast<int>(faces.size());
  GluingTable table(n);
  int expect = 0;
  for (const auto& [id, row] : faces) {
    if (id != expect) throw Error(ErrorCode::Parse, "tet ids must be 0.." + std::to_string(n - 1));
    for (int f = 0; f < 4; ++f) table[id][f] = row[f].value_or(Gluing{});
    ++expect;
  }
  std::vector<GlobalTet> origin;
  if (!origins.empty()) {
    if (static_cast<int>(origins.size()) != n)
      throw Error(ErrorCode::Parse, "origin lines must cover every tet");
    origin.resize(n);
    for (const auto& [id, g] : origins) {
      if (id < 0 || id >= n) throw Error(ErrorCode::Parse, "origin for unknown tet");
      origin[id] = g;
    }
  }
  return Triangulation(std::move(table), std::move(origin));
}

Triangulation parse_tri_string(const std::string& text) {
  std::istringstream in(text);
  return parse_tri(in);
}

std::string emit_tri(const Triangulation& tri) {
  std::ostringstream out;
  for (int t = 0; t < tri.size(); ++t) {
    out << "tet " << t << ":";
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(t, f);
      out << ' ' << f << "->";
      if (g.boundary())
        out << "bd";
      else
        out << g.tet << '/' << g.perm.str();
    }
    out << '\n';
  }
  for (int t = 0; t < static_cast<int>(tri.origin().size()); ++t)
    out << "origin " << t << ' ' << tri.origin()[t].block << ' ' << tri.origin()[t].local << '\n';
  return out.str();
}

}  // namespace plsplit
