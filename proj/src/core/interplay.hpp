#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lazy.hpp"
#include "normal.hpp"

namespace plsplit {

/// Homology basis of one closed component of a realized surface: primal
/// cycles in its crossing/arc graph, as signed arc coefficients. Chosen by
/// a tree-cotree decomposition with deterministic (lowest id first) trees.
struct SurfaceBasis {
  int component = 0;
  std::vector<std::map<int, int>> cycles;  // arc -> +1 (ends[0] -> ends[1]) or -1
};

SurfaceBasis surface_basis(const RealizedSurface& s, const SurfaceReport& r, int component);

/// One step of a curve transverse to the arcs: it leaves the disk on side
/// `side` of `arc` and enters the disk on the other side.
struct DualStep {
  int arc = 0;
  int side = 0;
};

/// Algebraic intersection numbers of a closed dual path with each basis cycle.
std::vector<long> dual_path_class(const RealizedSurface& s, const SurfaceReport& r, const SurfaceBasis& basis,
                                  const std::vector<DualStep>& path);

/// A point where an arc of A crosses an arc of B inside a face.
struct IntersectionNode {
  int face_class = 0;
  int arc_a = 0, arc_b = 0;
  double along_a = 0.0, along_b = 0.0;  // fraction along each arc from its ends[0]
};

/// One component of A ∩ B: a cyclic (or, at window boundary, open) chain
/// of chords, each inside one tet where a disk of A meets a disk of B.
struct IntersectionCircle {
  struct Chord {
    int tet = 0;
    int disk_a = 0, disk_b = 0;
    int from = 0, to = 0;            // nodes
    int face_from = 0, face_to = 0;  // tet faces holding them
  };
  std::vector<Chord> chords;
  bool closed = true;
  int component_a = 0, component_b = 0;
  std::vector<long> class_a, class_b;  // empty when the component is not closed
  bool essential_a = true, essential_b = true;
};

struct IntersectionPattern {
  bool equal = false;
  int perturbed = 0;             // crossing parameters of B shifted to break ties
  std::vector<double> params_b;  // B's crossing parameters after the shift
  std::vector<IntersectionNode> nodes;
  std::vector<IntersectionCircle> circles;
  SurfaceReport report_a, report_b;
  std::vector<SurfaceBasis> bases_a, bases_b;  // per component; empty cycles when not closed
};

/// Arcs are straight chords in each face, with crossing positions mapped
/// logistically onto the edges; two disks meet along the chord joining the
/// two face points where their boundaries cross. Throws NotTransverse.
IntersectionPattern intersect_surfaces(const RealizedSurface& a, const RealizedSurface& b);

/// Class up to sign: first nonzero entry made positive, divided by the gcd.
std::vector<long> normalize_class(std::vector<long> c);

struct SpecialClass {
  enum class Status { Found, ConflictingWitnesses };
  Status status = Status::Found;
  std::vector<long> curve_class;
  std::vector<std::vector<long>> seen;  // distinct normalized classes
  int witnesses = 0;                    // patterns contributing an essential circle
};

/// The common class of all essential circles on one side of the patterns.
/// `side_a[i]` says whether the torus is surface A of pattern i.
/// Throws NoEssentialIntersections.
SpecialClass special_class(const std::vector<IntersectionPattern>& patterns, const std::vector<bool>& side_a,
                           int component = 0);

/// Abstract fibered neighbourhood of A ∪ B when they meet in parallel
/// essential circles: base built from one square per circle and one
/// rectangle per annulus of A and of B.
struct SeifertDatum {
  int circles = 0;
  int squares = 0;
  int rectangles = 0;
  int gluings = 0;  // rectangle ends attached to squares
  long euler = 0;   // squares + rectangles - gluings
  int boundary_circles = 0;
  int genus = 0;
  std::vector<long> fiber_class_a, fiber_class_b;
  int boundary_tori() const { return boundary_circles; }
};

/// Throws NonParallelCircles.
SeifertDatum seifert_neighborhood(const RealizedSurface& a, const RealizedSurface& b, const IntersectionPattern& p);

/// Disks of one tet, and for each index of an increasing family the
/// partition of the disks present into components of the family's
/// intersection with the tet (-1 for absent disks).
struct DiskFamily {
  std::vector<int> disk_types;
  std::vector<std::vector<int>> components;
};

/// Classes of the transitive closure of "same type and together in one
/// component at some index". Throws NotMonotone.
std::vector<int> disk_equivalence(const DiskFamily& family);

struct IntervalHull {
  int class_id = 0;
  double lo = 0.0, hi = 0.0;              // closed hull
  double shrunk_lo = 0.0, shrunk_hi = 0.0;  // open subinterval
  /// Increasing affine map of the hull onto the shrunk interval.
  double remap(double x) const;
};

/// Hulls of each class of crossing positions on one edge, and pairwise
/// disjoint shrunk intervals inside them. A one-point class keeps its
/// point as a degenerate interval.
std::vector<IntervalHull> disjointify_intervals(const std::vector<std::vector<double>>& classes);

/// A surface sequence on a periodic complex: per index, coordinates keyed
/// by global tet (absent tets are zero).
struct SurfaceSequence {
  std::vector<std::map<GlobalTet, TetCoords>> members;
};

struct SurfaceSequenceLimit {
  enum class Support { Compact, Noncompact, Empty };
  std::map<GlobalTet, TetCoords> limit;  // nonzero stabilized coordinates
  std::map<GlobalTet, int> stabilization;  // per region tet
  int verified_faces = 0;                  // region faces where matching was checked
  Support support = Support::Empty;
};

/// Per-tet stabilization over the listed region tets: a tet is stable when
/// its coordinates are constant over at least the last `min_tail` members.
/// Throws Unstable otherwise.
SurfaceSequenceLimit limit_surface(const LazyComplex& complex, const SurfaceSequence& seq,
                                   const std::vector<GlobalTet>& region, int min_tail = 2);

struct EndsReport {
  enum class Kind { Torus, Annulus, Violation };
  Kind kind = Kind::Violation;
  bool compact = false;
  int ends = 0;
  std::vector<int> ends_per_radius;
  std::vector<int> genus_per_radius;
  bool planar = true;
  bool disk_slack_ok = true;
  long disk_slack = 0;  // max of diam(D) - diam(boundary of D) over checked subdisks
  std::string witness;
};

const char* ends_kind_name(EndsReport::Kind k);

/// Classifies a limit surface given by periodic or global `.nsc` data on a
/// lazy complex, from windows of radius r, 2r and 4r about `center`.
/// Throws BudgetExceeded when a window exceeds `max_tets`.
EndsReport classify_limit_ends(LazyComplex& complex, const NscSurface& surface, GlobalTet center, int radius,
                               long disk_slack_bound, int max_tets = 20000);

}  // namespace plsplit
