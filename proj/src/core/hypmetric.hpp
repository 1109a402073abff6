#pragma once

#include <complex>
#include <vector>

#include "complex.hpp"
#include "normal.hpp"

namespace plsplit {

/// Sides of the model ideal triangle with vertices 0, 1, oo in the upper
/// half-plane. A is x = 0 (0 -> oo), B is x = 1 (1 -> oo), C is the half
/// circle from 0 to 1. The parameter is signed arclength from the point of
/// tangency with the inscribed circle (i, 1 + i, (1 + i) / 2).
enum class ModelSide { A = 0, B = 1, C = 2 };

std::complex<double> model_point(ModelSide side, double s);
/// Derivative of model_point with respect to s.
std::complex<double> model_point_ds(ModelSide side, double s);

/// Hyperbolic distance in the upper half-plane.
double hyperbolic_distance(std::complex<double> z1, std::complex<double> z2);

/// Distance between points on two distinct model sides. Throws SameSide.
double model_distance(ModelSide s1, double p1, ModelSide s2, double p2);

/// Model side of the face edge joining face-representative labels a and b,
/// where the representative's vertices x < y < z map to 0, 1, oo.
ModelSide model_side_of(int face_rep_face, int a, int b);

/// Identification of every face-class side with a model side: the model
/// parameter equals flip * (param + offset), where param runs along the
/// edge class in its representative direction.
struct JRMetricData {
  struct SideMap {
    double offset = 0.0;
    int flip = 1;
  };
  std::vector<std::array<SideMap, 3>> sides;  // per face class, indexed by ModelSide

  /// Regular structure: zero offsets, flips from the edge directions.
  static JRMetricData regular(const Triangulation& tri);
  bool is_regular() const;
};

/// Length of the normal arc in face `face` of `tet` joining the crossing on
/// tet edge e1 (parameter p1) to the crossing on tet edge e2 (parameter p2).
/// Parameters are edge-class positions. Throws SameSide if e1 == e2.
double arc_length(const JRMetricData& metric, const Triangulation& tri, int tet, int face, int e1, double p1,
                  int e2, double p2);

/// The pair (weight, length), ordered lexicographically.
struct PLArea {
  long weight = 0;
  double length = 0.0;
};

inline constexpr double kLengthTolerance = 1e-9;

/// -1, 0 or 1; lengths within 1e-9 compare equal.
int compare_pl_area(const PLArea& a, const PLArea& b);

/// Total length of a family of arcs between model sides, as a function of
/// shared real variables. An endpoint with var < 0 is fixed at `offset`;
/// otherwise its model parameter is sign * x[var] + offset.
struct LengthProblem {
  struct End {
    ModelSide side = ModelSide::A;
    int var = -1;
    double sign = 1.0;
    double offset = 0.0;
  };
  struct Term {
    End p, q;
  };
  int num_vars = 0;
  std::vector<Term> terms;

  double evaluate(const std::vector<double>& x, std::vector<double>* grad = nullptr) const;
};

enum class MinimizeStatus { Converged, CuspDrift, IterationLimit };

const char* status_name(MinimizeStatus s);

struct MinimizeOptions {
  double grad_tol = 1e-8;
  double drift_bound = 50.0;
  int max_iterations = 20000;
};

struct MinimizeResult {
  std::vector<double> x;
  double initial_length = 0.0;
  double length = 0.0;
  MinimizeStatus status = MinimizeStatus::Converged;
  int iterations = 0;
  double grad_norm = 0.0;
  std::vector<int> drifting;  // variables past the drift bound
};

/// Quasi-Newton descent with Armijo backtracking. Every accepted step lowers
/// the length.
MinimizeResult minimize(const LengthProblem& problem, std::vector<double> x0, const MinimizeOptions& opt = {});

/// Arcs of a realized surface as a length problem: one variable per
/// crossing, each arc of the surface counted once.
LengthProblem length_problem(const JRMetricData& metric, const RealizedSurface& s);

/// Weight and total arc length at the surface's crossing parameters.
PLArea pl_area(const JRMetricData& metric, const RealizedSurface& s);

/// Minimizes the total arc length over the crossing parameters, starting
/// from the surface's own parameters.
MinimizeResult minimize_length(const JRMetricData& metric, const RealizedSurface& s, const MinimizeOptions& opt = {});

/// Number of classes of connected n-tet subcomplexes up to combinatorial
/// isomorphism of their gluings. With zero offsets the metric on a
/// subcomplex is determined by its gluings, so this counts isometry types.
int count_isometry_types(const Triangulation& tri, int n);

}  // namespace plsplit
