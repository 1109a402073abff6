#pragma once

#include <array>
#include <iosfwd>
#include <memory>
#include <string>
#include <vector>

#include "complex.hpp"

namespace plsplit {

/// Disk-type counts in one tet: triangles t0..t3 (type v cuts off vertex v)
/// then quads q0..q2 (quad q separates {0, q+1} from the other two).
using TetCoords = std::array<long, 7>;

inline constexpr int kQuad0 = 4;

/// Crossings of the disks in `c` with tet edge e.
long edge_crossings(const TetCoords& c, int e);
/// Normal arcs cutting off corner v of face f.
long arc_count(const TetCoords& c, int f, int v);
/// The quad type whose arcs in face f cut off corner v.
inline int quad_cutting(int f, int v) { return quad_type_of_pair(v, f); }

struct NormalCoordinates {
  std::vector<TetCoords> tets;

  NormalCoordinates() = default;
  explicit NormalCoordinates(int n) : tets(n, TetCoords{}) {}

  int size() const { return static_cast<int>(tets.size()); }
  bool is_zero() const;
  /// Set of tets with a nonzero entry.
  std::vector<int> support() const;
  NormalCoordinates operator+(const NormalCoordinates& o) const;
  NormalCoordinates scaled(long k) const;
  friend bool operator==(const NormalCoordinates&, const NormalCoordinates&) = default;
  friend auto operator<=>(const NormalCoordinates&, const NormalCoordinates&) = default;
};

/// At most one nonzero quad type per tet.
bool quads_compatible(const NormalCoordinates& c);
/// Sum is embedded (quad types agree tet by tet).
bool quads_compatible(const NormalCoordinates& a, const NormalCoordinates& b);
/// Matching equations across every interior face.
bool satisfies_matching(const Triangulation& tri, const NormalCoordinates& c, std::string* why = nullptr);
/// Crossing count of each edge class. Throws NotNormal if the tet edges of a
/// class disagree.
std::vector<long> edge_weights(const Triangulation& tri, const NormalCoordinates& c);
long weight(const Triangulation& tri, const NormalCoordinates& c);

struct EnumerateOptions {
  long max_weight = -1;  // -1: no weight bound
  long max_coord = -1;   // -1: no per-coordinate bound
  /// Forbid arcs on boundary faces and on the extra faces listed.
  bool closed = false;
  std::vector<std::array<int, 2>> extra_closed_faces;
  long budget = 10'000'000;  // search nodes before WindowTooLarge
};

/// Every embedded solution of the matching equations within the bounds,
/// including the empty surface, in lexicographic order.
std::vector<NormalCoordinates> enumerate_bounded(const Triangulation& tri, const EnumerateOptions& opt);

/// Extreme rays of the embedded solution cone in standard coordinates,
/// scaled to primitive integer vectors. At most 40 tets.
std::vector<NormalCoordinates> enumerate_vertex(const Triangulation& tri, int max_tets = 40);

/// One normal disk: type 0..3 triangle, 4..6 quad; index counts parallel copies.
struct Disk {
  int tet = 0;
  int type = 0;
  int index = 0;
};

/// Tet edges met by a disk type, in the cyclic order of its boundary.
std::vector<int> disk_cycle(int type);

/// A normal surface realized with explicit crossings and arcs.
///
/// Crossings on each edge class are numbered along the class's reference
/// direction; `params` holds their positions and is increasing per class.
struct RealizedSurface {
  struct Arc {
    int face_class = 0;
    int corner = 0;  // corner cut off, in the face representative's labels
    int index = 0;   // 0 is nearest the corner
    std::array<int, 2> ends{-1, -1};  // crossings, ordered by representative edge index
    std::array<int, 2> disks{-1, -1};
    std::array<int, 2> faces{-1, -1};  // per side: face of the disk's tet holding the arc
    std::array<int, 2> dirs{0, 0};     // per side: +1 if that disk runs ends[0] -> ends[1]
    bool boundary = false;
  };

  std::shared_ptr<const Triangulation> tri;
  NormalCoordinates coords;
  std::vector<Disk> disks;
  std::vector<int> crossing_offset;  // per edge class, plus total at the end
  std::vector<double> params;
  std::vector<std::array<int, 6>> disk_crossing;  // per disk and tet edge, or -1
  std::vector<std::array<int, 4>> disk_arc;       // per disk and face, or -1
  std::vector<std::array<int, 4>> disk_arc_dir;   // +1 if the disk runs ends[0] -> ends[1]
  std::vector<Arc> arcs;

  int num_crossings() const { return crossing_offset.empty() ? 0 : crossing_offset.back(); }
  long weight() const { return num_crossings(); }
  int crossing_edge(int crossing) const;
  int crossing_count(int edge_class) const {
    return crossing_offset[edge_class + 1] - crossing_offset[edge_class];
  }
  /// Position of the crossing of `disk` with tet edge e, measured along the
  /// edge class's reference direction.
  double crossing_param(int disk, int e) const { return params[disk_crossing[disk][e]]; }
};

/// Builds disks, crossings and arcs with default equally spaced parameters
/// in [-1, 1]. Throws QuadConflict or NotNormal.
RealizedSurface realize_surface(std::shared_ptr<const Triangulation> tri, const NormalCoordinates& c);
RealizedSurface realize_surface(const Triangulation& tri, const NormalCoordinates& c);

enum class SurfaceKind { Sphere, Torus, Klein, Disk, Annulus, Other };
const char* kind_name(SurfaceKind k);

struct ComponentReport {
  std::vector<int> disks;
  long vertices = 0, edges = 0, faces = 0;
  long euler = 0;
  bool orientable = true;
  int boundary_circles = 0;
  SurfaceKind kind = SurfaceKind::Other;
};

struct SurfaceReport {
  std::vector<ComponentReport> components;
  std::vector<int> disk_component;
  std::vector<int> disk_side;  // orientation sign per disk (0/1) when orientable
  long euler = 0;
};

/// Side (0 or 1) of `arc` belonging to disk d through its face f.
int arc_side(const RealizedSurface& s, int arc, int disk, int face);

/// True if the disk type's cut-off vertex set contains the corner that its
/// arc in face f cuts off.
bool cuts_toward_corner(int type, int f);

/// Per disk: 0 if the front side of the surface is the disk's cut-off side,
/// 1 otherwise. Throws OneSided.
std::vector<int> front_sides(const RealizedSurface& s);

/// Components, Euler characteristics, orientability and boundary. Arcs on
/// the listed extra faces count as boundary (window frontier).
SurfaceReport analyze_surface(const RealizedSurface& s, const std::vector<std::array<int, 2>>& extra_boundary = {});

SurfaceKind classify(long euler, bool orientable, int boundary_circles);

/// Restricts to the disks of one component, as a new coordinate vector.
NormalCoordinates component_coordinates(const RealizedSurface& s, const SurfaceReport& r, int component);

/// A curve transverse to the 2-skeleton: segment i runs inside `tet` from
/// face `entry` to face `exit`; segment i+1 enters through the face glued to
/// that exit. `points[i]` is the barycentric position on the exit face, in
/// increasing local vertex order.
struct NormalCurve {
  struct Segment {
    int tet = 0;
    int entry = 0;
    int exit = 0;
    std::array<double, 3> point{1.0 / 3, 1.0 / 3, 1.0 / 3};
  };
  std::vector<Segment> segments;
  int length() const { return static_cast<int>(segments.size()); }
};

struct NormalizeResult {
  NormalCurve curve;
  std::vector<std::string> moves;
  bool trivial = false;
};

/// Removes backtracks (segments leaving through their entry face) until
/// every segment joins distinct faces. Throws NotGeneralPosition.
NormalizeResult normalize_curve(const Triangulation& tri, const NormalCurve& curve);

/// `.nsc` surface files.
struct NscEntry {
  enum class Kind { Index, Global, Periodic };
  Kind kind = Kind::Index;
  int tet = 0;
  long block = 0;
  int local = 0;
  TetCoords coords{};
  friend bool operator==(const NscEntry&, const NscEntry&) = default;
};

struct NscSurface {
  std::string name;
  std::vector<NscEntry> entries;
  friend bool operator==(const NscSurface&, const NscSurface&) = default;
};

std::vector<NscSurface> parse_nsc(std::istream& in);
std::vector<NscSurface> parse_nsc_string(const std::string& text);
std::string emit_nsc(const std::vector<NscSurface>& surfaces);
NscSurface to_nsc(const std::string& name, const NormalCoordinates& c);
/// Places the surface on a window, resolving block ids through its origins.
/// With `clip`, entries outside the window are dropped instead of raising
/// NotCovered.
NormalCoordinates nsc_on_window(const NscSurface& s, const Triangulation& window, bool clip = false);

}  // namespace plsplit
