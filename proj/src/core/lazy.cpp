#include "lazy.hpp"

#include <algorithm>
#include <istream>
#include <sstream>

#include "quasi.hpp"

namespace plsplit {

void validate_periodic(const PeriodicSpec& spec) {
  const int n = spec.block_size();
  if (n == 0) throw Error(ErrorCode::InvalidGluing, "periodic block has no tets");
  if (spec.bound <= 0) throw Error(ErrorCode::InvalidArgument, "periodic generator needs a positive bound");
  // internal gluings alone must already be involutive
  Triangulation block(spec.internal);
  std::vector<std::array<int, 4>> used_out(n, {0, 0, 0, 0}), used_in(n, {0, 0, 0, 0});
  for (const auto& s : spec.shifts) {
    if (s.tet < 0 || s.tet >= n || s.partner < 0 || s.partner >= n || s.face < 0 || s.face > 3 ||
        !s.perm.valid())
      throw Error(ErrorCode::InvalidGluing, "shift refers to a missing tet or face");
    int g = s.perm[s.face];
    if (!spec.internal[s.tet][s.face].boundary() || !spec.internal[s.partner][g].boundary())
      throw Error(ErrorCode::InvalidGluing, "shift uses a face that is glued inside the block");
    if (used_out[s.tet][s.face]++ || used_in[s.partner][g]++)
      throw Error(ErrorCode::InvalidGluing, "face assigned to more than one shift");
    if (used_in[s.tet][s.face] || used_out[s.partner][g])
      throw Error(ErrorCode::InvalidGluing, "face used both as shift source and target");
  }
}

namespace {

[[noreturn]] void fail(int line, const std::string& msg) {
  throw Error(ErrorCode::Parse, "line " + std::to_string(line) + ": " + msg);
}

}  // namespace

PeriodicSpec parse_periodic(std::istream& in) {
  PeriodicSpec spec;
  std::string line;
  int lineno = 0;
  bool header = false;
  int declared = -1;
  std::ostringstream tets;
  std::vector<std::pair<int, std::string>> shift_lines;
  while (std::getline(in, line)) {
    ++lineno;
    std::string body = line;
    if (auto h = body.find('#'); h != std::string::npos) body.resize(h);
    std::istringstream ls(body);
    std::string word;
    if (!(ls >> word)) {
      tets << '\n';
      continue;
    }
    if (!header) {
      if (word != "periodic") fail(lineno, "generator spec must start with 'periodic'");
      header = true;
      tets << '\n';
      continue;
    }
    if (word == "block") {
      if (!(ls >> declared) || declared <= 0) fail(lineno, "expected 'block <positive count>'");
      tets << '\n';
    } else if (word == "bound") {
      if (!(ls >> spec.bound) || spec.bound <= 0) fail(lineno, "expected 'bound <positive int>'");
      tets << '\n';
    } else if (word == "shift") {
      shift_lines.emplace_back(lineno, body);
      tets << '\n';
    } else if (word == "tet") {
      tets << body << '\n';
    } else {
      fail(lineno, "unknown keyword '" + word + "'");
    }
  }
  if (!header) throw Error(ErrorCode::Parse, "empty generator spec");
  Triangulation block = parse_tri_string(tets.str());
  spec.internal = block.gluings();
  if (declared >= 0 && declared != block.size())
    throw Error(ErrorCode::Parse, "block declares " + std::to_string(declared) + " tets but lists " +
                                      std::to_string(block.size()));
  for (const auto& [ln, text] : shift_lines) {
    // shift <a>:<f> -> <b>/<perm>
    std::istringstream ls(text);
    std::string kw, src, arrow, dst;
    if (!(ls >> kw >> src >> arrow >> dst) || arrow != "->") fail(ln, "expected 'shift <tet>:<face> -> <tet>/<perm>'");
    auto colon = src.find(':');
    auto slash = dst.find('/');
    if (colon == std::string::npos || slash == std::string::npos) fail(ln, "malformed shift");
    PeriodicSpec::Shift s;
    try {
      s.tet = std::stoi(src.substr(0, colon));
      s.face = std::stoi(src.substr(colon + 1));
      s.partner = std::stoi(dst.substr(0, slash));
      s.perm = Perm4::parse(dst.substr(slash + 1));
    } catch (const Error& e) {
      fail(ln, e.what());
    } catch (const std::exception&) {
      fail(ln, "malformed shift");
    }
    spec.shifts.push_back(s);
  }
  validate_periodic(spec);
  return spec;
}

PeriodicSpec parse_periodic_string(const std::string& text) {
  std::istringstream in(text);
  return parse_periodic(in);
}

std::string emit_periodic(const PeriodicSpec& spec) {
  std::ostringstream out;
  out << "periodic\nblock " << spec.block_size() << "\nbound " << spec.bound << '\n';
  out << emit_tri(Triangulation(spec.internal));
  for (const auto& s : spec.shifts)
    out << "shift " << s.tet << ':' << s.face << " -> " << s.partner << '/' << s.perm.str() << '\n';
  return out.str();
}

Triangulation restrict_to(const Triangulation& tri, const std::vector<int>& tets) {
  std::vector<int> index(tri.size(), -1);
  for (int i = 0; i < static_cast<int>(tets.size()); ++i) index[tets[i]] = i;
  GluingTable table(tets.size());
  std::vector<GlobalTet> origin;
  for (int i = 0; i < static_cast<int>(tets.size()); ++i) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.gluing(tets[i], f);
      if (!g.boundary() && index[g.tet] >= 0) table[i][f] = Gluing{index[g.tet], g.perm};
    }
    if (!tri.origin().empty()) origin.push_back(tri.origin()[tets[i]]);
  }
  return Triangulation(std::move(table), std::move(origin));
}

LazyComplex::LazyComplex(PeriodicSpec spec, long max_blocks) : spec_(std::move(spec)), max_blocks_(max_blocks) {
  validate_periodic(spec_);
  const int n = spec_.block_size();
  shift_out_.assign(n, {-1, -1, -1, -1});
  shift_in_.assign(n, {-1, -1, -1, -1});
  for (int i = 0; i < static_cast<int>(spec_.shifts.size()); ++i) {
    const auto& s = spec_.shifts[i];
    shift_out_[s.tet][s.face] = i;
    shift_in_[s.partner][s.perm[s.face]] = i;
  }
}

Triangulation LazyComplex::materialize(long lo, long hi) const {
  if (hi < lo) throw Error(ErrorCode::InvalidArgument, "empty block range");
  const int n = spec_.block_size();
  const long blocks = hi - lo + 1;
  GluingTable table(blocks * n);
  std::vector<GlobalTet> origin(blocks * n);
  for (long b = 0; b < blocks; ++b) {
    for (int t = 0; t < n; ++t) {
      int id = static_cast<int>(b * n + t);
      origin[id] = GlobalTet{lo + b, t};
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = spec_.internal[t][f];
        if (!g.boundary()) table[id][f] = Gluing{static_cast<int>(b * n + g.tet), g.perm};
      }
    }
    if (b + 1 < blocks)
      for (const auto& s : spec_.shifts)
        glue(table, static_cast<int>(b * n + s.tet), s.face, static_cast<int>((b + 1) * n + s.partner), s.perm);
  }
  return Triangulation(std::move(table), std::move(origin));
}

Triangulation LazyComplex::expanded() const {
  std::lock_guard lock(mutex_);
  return materialize(lo_, hi_);
}

std::array<long, 2> LazyComplex::expanded_range() const {
  std::lock_guard lock(mutex_);
  return {lo_, hi_};
}

Triangulation LazyComplex::window(GlobalTet center, int radius) {
  if (radius < 0) throw Error(ErrorCode::InvalidArgument, "radius must be nonnegative");
  if (center.local < 0 || center.local >= spec_.block_size())
    throw Error(ErrorCode::InvalidArgument, "center tet is not in the block");
  const int n = spec_.block_size();
  long m = std::max(2, radius + 2);
  while (true) {
    if (2 * m + 1 > max_blocks_)
      throw Error(ErrorCode::GeneratorExhausted,
                  "a vertex class keeps growing past " + std::to_string(max_blocks_) + " blocks");
    const long lo = center.block - m, hi = center.block + m;
    Triangulation big = materialize(lo, hi);
    for (int v = 0; v < big.num_vertices(); ++v)
      if (static_cast<int>(big.vertex_star(v).size()) > spec_.bound)
        throw Error(ErrorCode::BoundViolated, "vertex class meets more tets than the declared bound " +
                                                  std::to_string(spec_.bound));
    int c = static_cast<int>((center.block - lo) * n + center.local);
    auto dist = tet_distances(big, {c});
    // vertex classes reaching the outermost blocks may be incomplete
    std::vector<char> touches_edge(big.num_vertices(), 0);
    for (int t = 0; t < big.size(); ++t) {
      long b = big.origin()[t].block;
      if (b == lo || b == hi)
        for (int v = 0; v < 4; ++v) touches_edge[big.vertex_class(t, v)] = 1;
    }
    bool complete = true;
    std::vector<int> chosen;
    for (int t = 0; t < big.size(); ++t) {
      if (dist[t] < 0 || dist[t] > radius + 1) continue;
      chosen.push_back(t);
      if (dist[t] <= radius)
        for (int v = 0; v < 4; ++v)
          if (touches_edge[big.vertex_class(t, v)]) complete = false;
    }
    if (!complete) {
      m *= 2;
      continue;
    }
    {
      std::lock_guard lock(mutex_);
      lo_ = std::min(lo_, lo);
      hi_ = std::max(hi_, hi);
    }
    return restrict_to(big, chosen);
  }
}

std::vector<std::array<int, 2>> LazyComplex::frontier_faces(const Triangulation& window) const {
  std::vector<std::array<int, 2>> out;
  for (int t = 0; t < window.size(); ++t)
    for (int f = 0; f < 4; ++f)
      if (is_frontier(window, t, f)) out.push_back({t, f});
  return out;
}

bool LazyComplex::is_frontier(const Triangulation& window, int tet, int face) const {
  if (!window.gluing(tet, face).boundary()) return false;
  if (window.origin().empty()) return false;
  int local = window.origin()[tet].local;
  return !spec_.internal[local][face].boundary() || shift_out_[local][face] >= 0 ||
         shift_in_[local][face] >= 0;
}

}  // namespace plsplit
