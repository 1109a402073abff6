#include "hypmetric.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <set>

namespace plsplit {

namespace {

// arccosh(1 + w) without cancellation for small w
double acosh1p(double w) { return std::log1p(w + std::sqrt(w * (w + 2.0))); }

}  // namespace

std::complex<double> model_point(ModelSide side, double s) {
  const double e = std::exp(s);
  switch (side) {
    case ModelSide::A:
      return {0.0, e};
    case ModelSide::B:
      return {1.0, e};
    case ModelSide::C: {
      // image of i e^s under w -> w / (w + 1), which maps side A onto C
      const double d = 1.0 + e * e;
      return {e * e / d, e / d};
    }
  }
  return {};
}

std::complex<double> model_point_ds(ModelSide side, double s) {
  const double e = std::exp(s);
  switch (side) {
    case ModelSide::A:
    case ModelSide::B:
      return {0.0, e};
    case ModelSide::C: {
      const double d = 1.0 + e * e;
      const double x = e * e / d, y = e / d;
      return {2.0 * x * (1.0 - x), -y * std::tanh(s)};
    }
  }
  return {};
}

double hyperbolic_distance(std::complex<double> z1, std::complex<double> z2) {
  const double w = std::norm(z1 - z2) / (2.0 * z1.imag() * z2.imag());
  return acosh1p(w);
}

double model_distance(ModelSide s1, double p1, ModelSide s2, double p2) {
  if (s1 == s2) throw Error(ErrorCode::SameSide, "normal arc endpoints lie on one side");
  return hyperbolic_distance(model_point(s1, p1), model_point(s2, p2));
}

ModelSide model_side_of(int face, int a, int b) {
  auto v = face_vertices(face);
  if (a > b) std::swap(a, b);
  if (a == v[0] && b == v[1]) return ModelSide::C;
  if (a == v[0] && b == v[2]) return ModelSide::A;
  if (a == v[1] && b == v[2]) return ModelSide::B;
  throw Error(ErrorCode::InvalidArgument, "edge is not a side of the face");
}

JRMetricData JRMetricData::regular(const Triangulation& tri) {
  JRMetricData m;
  m.sides.resize(tri.num_faces());
  for (int fc = 0; fc < tri.num_faces(); ++fc) {
    auto [t, f] = tri.face_rep(fc);
    auto v = face_vertices(f);
    const std::array<std::array<int, 2>, 3> pairs{{{v[0], v[2]}, {v[1], v[2]}, {v[0], v[1]}}};
    for (int i = 0; i < 3; ++i) {
      int side = static_cast<int>(model_side_of(f, pairs[i][0], pairs[i][1]));
      m.sides[fc][side].flip = tri.edge_direction(t, edge_index(pairs[i][0], pairs[i][1]));
    }
  }
  return m;
}

bool JRMetricData::is_regular() const {
  for (const auto& s : sides)
    for (const auto& x : s)
      if (x.offset != 0.0) return false;
  return true;
}

double arc_length(const JRMetricData& metric, const Triangulation& tri, int tet, int face, int e1, double p1,
                  int e2, double p2) {
  if (e1 == e2) throw Error(ErrorCode::SameSide, "normal arc endpoints lie on one side");
  const int fc = tri.face_class(tet, face);
  auto [rt, rf] = tri.face_rep(fc);
  (void)rt;
  Perm4 p = tri.face_to_rep(tet, face);
  auto side_of = [&](int e) {
    return model_side_of(rf, p[kEdgeVertices[e][0]], p[kEdgeVertices[e][1]]);
  };
  ModelSide s1 = side_of(e1), s2 = side_of(e2);
  const auto& m1 = metric.sides[fc][static_cast<int>(s1)];
  const auto& m2 = metric.sides[fc][static_cast<int>(s2)];
  return model_distance(s1, m1.flip * (p1 + m1.offset), s2, m2.flip * (p2 + m2.offset));
}

LengthProblem length_problem(const JRMetricData& metric, const RealizedSurface& s) {
  const Triangulation& tri = *s.tri;
  LengthProblem lp;
  lp.num_vars = s.num_crossings();
  for (const auto& arc : s.arcs) {
    const int d = arc.disks[0], face = arc.faces[0];
    const int tet = s.disks[d].tet;
    const int fc = tri.face_class(tet, face);
    const Perm4 p = tri.face_to_rep(tet, face);
    const int rf = tri.face_rep(fc)[1];
    LengthProblem::Term term;
    for (int k = 0; k < 2; ++k) {
      int e = -1;
      for (int j = 0; j < 6; ++j)
        if (s.disk_crossing[d][j] == arc.ends[k]) e = j;
      if (e < 0) throw Error(ErrorCode::NotNormal, "arc end is not a crossing of its disk");
      const ModelSide side = model_side_of(rf, p[kEdgeVertices[e][0]], p[kEdgeVertices[e][1]]);
      const auto& m = metric.sides[fc][static_cast<int>(side)];
      LengthProblem::End end{side, arc.ends[k], static_cast<double>(m.flip), m.flip * m.offset};
      (k == 0 ? term.p : term.q) = end;
    }
    lp.terms.push_back(term);
  }
  return lp;
}

PLArea pl_area(const JRMetricData& metric, const RealizedSurface& s) {
  return PLArea{s.weight(), length_problem(metric, s).evaluate(s.params)};
}

MinimizeResult minimize_length(const JRMetricData& metric, const RealizedSurface& s, const MinimizeOptions& opt) {
  return minimize(length_problem(metric, s), s.params, opt);
}

int compare_pl_area(const PLArea& a, const PLArea& b) {
  if (a.weight != b.weight) return a.weight < b.weight ? -1 : 1;
  if (std::abs(a.length - b.length) <= kLengthTolerance) return 0;
  return a.length < b.length ? -1 : 1;
}

double LengthProblem::evaluate(const std::vector<double>& x, std::vector<double>* grad) const {
  if (grad) grad->assign(num_vars, 0.0);
  double total = 0.0;
  for (const auto& t : terms) {
    const double s1 = t.p.var >= 0 ? t.p.sign * x[t.p.var] + t.p.offset : t.p.offset;
    const double s2 = t.q.var >= 0 ? t.q.sign * x[t.q.var] + t.q.offset : t.q.offset;
    if (t.p.side == t.q.side) throw Error(ErrorCode::SameSide, "normal arc endpoints lie on one side");
    const auto z1 = model_point(t.p.side, s1), z2 = model_point(t.q.side, s2);
    const double y1 = z1.imag(), y2 = z2.imag();
    const double dx = z1.real() - z2.real(), dy = y1 - y2;
    const double n2 = dx * dx + dy * dy;
    const double w = n2 / (2.0 * y1 * y2);
    total += acosh1p(w);
    if (!grad) continue;
    const double dd_dw = 1.0 / std::sqrt(w * (w + 2.0));
    // partials of w with respect to z1 and z2
    const double w_x1 = dx / (y1 * y2);
    const double w_y1 = dy / (y1 * y2) - n2 / (2.0 * y1 * y1 * y2);
    const double w_x2 = -w_x1;
    const double w_y2 = -dy / (y1 * y2) - n2 / (2.0 * y1 * y2 * y2);
    if (t.p.var >= 0) {
      auto d = model_point_ds(t.p.side, s1);
      (*grad)[t.p.var] += dd_dw * (w_x1 * d.real() + w_y1 * d.imag()) * t.p.sign;
    }
    if (t.q.var >= 0) {
      auto d = model_point_ds(t.q.side, s2);
      (*grad)[t.q.var] += dd_dw * (w_x2 * d.real() + w_y2 * d.imag()) * t.q.sign;
    }
  }
  return total;
}

const char* status_name(MinimizeStatus s) {
  switch (s) {
    case MinimizeStatus::Converged: return "Converged";
    case MinimizeStatus::CuspDrift: return "CuspDrift";
    case MinimizeStatus::IterationLimit: return "IterationLimit";
  }
  return "Unknown";
}

MinimizeResult minimize(const LengthProblem& problem, std::vector<double> x0, const MinimizeOptions& opt) {
  const int n = problem.num_vars;
  if (static_cast<int>(x0.size()) != n) throw Error(ErrorCode::InvalidArgument, "start vector has the wrong size");
  MinimizeResult r;
  std::vector<double> g;
  double f = problem.evaluate(x0, &g);
  r.initial_length = f;
  auto norm = [](const std::vector<double>& v) {
    double s = 0;
    for (double a : v) s += a * a;
    return std::sqrt(s);
  };
  // inverse Hessian approximation, row-major
  std::vector<double> H(static_cast<size_t>(n) * n, 0.0);
  auto reset = [&] {
    std::fill(H.begin(), H.end(), 0.0);
    for (int i = 0; i < n; ++i) H[static_cast<size_t>(i) * n + i] = 1.0;
  };
  reset();
  std::vector<double> d(n), xn(n), gn(n), s(n), y(n), Hy(n);
  r.status = MinimizeStatus::IterationLimit;
  int it = 0;
  for (; it < opt.max_iterations; ++it) {
    // along a cusp the gradient shrinks with the length itself, so a small
    // gradient only counts as convergence when it is small relative to f
    if (norm(g) < opt.grad_tol && norm(g) <= 1e-3 * f) {
      r.status = MinimizeStatus::Converged;
      break;
    }
    for (int i = 0; i < n; ++i) {
      double acc = 0;
      for (int j = 0; j < n; ++j) acc -= H[static_cast<size_t>(i) * n + j] * g[j];
      d[i] = acc;
    }
    double slope = 0;
    for (int i = 0; i < n; ++i) slope += d[i] * g[i];
    if (slope >= 0) {
      reset();
      for (int i = 0; i < n; ++i) d[i] = -g[i];
      slope = -norm(g) * norm(g);
    }
    double alpha = 1.0;
    double fn = f;
    bool accepted = false;
    for (int ls = 0; ls < 80; ++ls) {
      for (int i = 0; i < n; ++i) xn[i] = x0[i] + alpha * d[i];
      fn = problem.evaluate(xn, &gn);
      if (std::isfinite(fn) && fn <= f + 1e-4 * alpha * slope && fn < f) {
        accepted = true;
        break;
      }
      alpha *= 0.5;
    }
    if (!accepted) {
      // no further decrease is representable in double precision
      r.status = norm(g) < 1e-6 ? MinimizeStatus::Converged : MinimizeStatus::IterationLimit;
      break;
    }
    for (int i = 0; i < n; ++i) {
      s[i] = xn[i] - x0[i];
      y[i] = gn[i] - g[i];
    }
    x0 = xn;
    f = fn;
    g = gn;
    r.drifting.clear();
    for (int i = 0; i < n; ++i)
      if (std::abs(x0[i]) > opt.drift_bound) r.drifting.push_back(i);
    if (!r.drifting.empty()) {
      r.status = MinimizeStatus::CuspDrift;
      ++it;
      break;
    }
    double sy = 0;
    for (int i = 0; i < n; ++i) sy += s[i] * y[i];
    if (sy <= 1e-300) continue;
    for (int i = 0; i < n; ++i) {
      double acc = 0;
      for (int j = 0; j < n; ++j) acc += H[static_cast<size_t>(i) * n + j] * y[j];
      Hy[i] = acc;
    }
    double yHy = 0;
    for (int i = 0; i < n; ++i) yHy += y[i] * Hy[i];
    const double rho = 1.0 / sy;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        H[static_cast<size_t>(i) * n + j] +=
            (1.0 + yHy * rho) * rho * s[i] * s[j] - rho * (Hy[i] * s[j] + s[i] * Hy[j]);
  }
  r.x = std::move(x0);
  r.length = f;
  r.iterations = it;
  r.grad_norm = norm(g);
  return r;
}

namespace {

using Code = std::vector<int>;

// Canonical encoding of the subcomplex reached from `start` with the given
// relabelling of its vertices.
Code encode(const Triangulation& tri, const std::vector<int>& members, int start, Perm4 sigma) {
  std::vector<int> index(members.size(), -1);
  std::vector<Perm4> frame(members.size());
  auto pos = [&](int t) {
    for (size_t i = 0; i < members.size(); ++i)
      if (members[i] == t) return static_cast<int>(i);
    return -1;
  };
  std::vector<int> order{start};
  index[pos(start)] = 0;
  frame[pos(start)] = sigma;  // old labels -> new labels
  Code code;
  for (size_t k = 0; k < order.size(); ++k) {
    int t = order[k];
    Perm4 fr = frame[pos(t)];
    Perm4 inv = fr.inverse();
    for (int nf = 0; nf < 4; ++nf) {
      int f = inv[nf];
      const Gluing& g = tri.gluing(t, f);
      int q = g.boundary() ? -1 : pos(g.tet);
      if (q < 0) {
        code.push_back(-1);
        continue;
      }
      if (index[q] < 0) {
        index[q] = static_cast<int>(order.size());
        order.push_back(g.tet);
        // the new frame makes this gluing the identity in new labels
        frame[q] = fr.of(g.perm.inverse());
      }
      Perm4 newperm = frame[q].of(g.perm).of(inv);
      code.push_back(index[q]);
      for (int i = 0; i < 4; ++i) code.push_back(newperm[i]);
    }
  }
  return code;
}

}  // namespace

int count_isometry_types(const Triangulation& tri, int n) {
  if (n < 1) return 0;
  std::set<std::vector<int>> subsets;
  std::function<void(std::vector<int>&)> grow = [&](std::vector<int>& cur) {
    std::vector<int> sorted = cur;
    std::sort(sorted.begin(), sorted.end());
    if (!subsets.insert(sorted).second && static_cast<int>(cur.size()) > 1) return;
    if (static_cast<int>(cur.size()) == n) return;
    for (int t : sorted)
      for (int f = 0; f < 4; ++f) {
        const Gluing& g = tri.gluing(t, f);
        if (g.boundary() || std::find(cur.begin(), cur.end(), g.tet) != cur.end()) continue;
        cur.push_back(g.tet);
        grow(cur);
        cur.pop_back();
      }
  };
  for (int t = 0; t < tri.size(); ++t) {
    std::vector<int> cur{t};
    grow(cur);
  }
  std::vector<Perm4> perms;
  int a[4] = {0, 1, 2, 3};
  do perms.emplace_back(a[0], a[1], a[2], a[3]);
  while (std::next_permutation(a, a + 4));
  std::set<Code> classes;
  for (const auto& s : subsets) {
    if (static_cast<int>(s.size()) != n) continue;
    Code best;
    for (int start : s)
      for (const auto& p : perms) {
        Code c = encode(tri, s, start, p);
        if (best.empty() || c < best) best = c;
      }
    classes.insert(best);
  }
  return static_cast<int>(classes.size());
}

}  // namespace plsplit
