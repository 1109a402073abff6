#pragma once

#include <array>
#include <iosfwd>
#include <mutex>
#include <string>
#include <vector>

#include "complex.hpp"

namespace plsplit {

/// Deterministic periodic generator: block k is a copy of `internal`, and
/// each shift glues face `face` of local tet `tet` in block k to local tet
/// `partner` in block k+1.
struct PeriodicSpec {
  struct Shift {
    int tet = 0;
    int face = 0;
    int partner = 0;
    Perm4 perm;
    friend bool operator==(const Shift&, const Shift&) = default;
  };
  GluingTable internal;
  std::vector<Shift> shifts;
  int bound = 0;  // declared maximum number of tets around a vertex

  int block_size() const { return static_cast<int>(internal.size()); }
  friend bool operator==(const PeriodicSpec&, const PeriodicSpec&) = default;
};

/// Validates the block and shift gluings; throws InvalidGluing.
void validate_periodic(const PeriodicSpec& spec);

PeriodicSpec parse_periodic(std::istream& in);
PeriodicSpec parse_periodic_string(const std::string& text);
std::string emit_periodic(const PeriodicSpec& spec);

/// The sub-complex spanned by the listed tets; gluings leaving the set
/// become boundary. Origins are carried over when present.
Triangulation restrict_to(const Triangulation& tri, const std::vector<int>& tets);

/// An infinite periodic complex expanded on demand.
///
/// Expansion only ever adds blocks, so windows of a given radius are the
/// same whenever they are requested. Expansion is serialized internally.
class LazyComplex {
 public:
  explicit LazyComplex(PeriodicSpec spec, long max_blocks = 4096);

  const PeriodicSpec& spec() const { return spec_; }
  int declared_bound() const { return spec_.bound; }

  /// Blocks [lo, hi] glued together; faces leading outside are boundary.
  Triangulation materialize(long lo, long hi) const;

  /// Currently expanded blocks (initially only block 0).
  Triangulation expanded() const;
  std::array<long, 2> expanded_range() const;

  /// All tets within combinatorial distance radius + 1 of the center tet,
  /// i.e. radius 0 gives the tets sharing a point with the center. Throws
  /// BoundViolated past the declared bound and GeneratorExhausted past the
  /// block cap.
  Triangulation window(GlobalTet center, int radius);

  /// Faces of a window that are boundary in the window but glued in the
  /// infinite complex.
  std::vector<std::array<int, 2>> frontier_faces(const Triangulation& window) const;
  bool is_frontier(const Triangulation& window, int tet, int face) const;

 private:
  PeriodicSpec spec_;
  long max_blocks_;
  std::vector<std::array<int, 4>> shift_out_;  // shift leaving (tet, face) toward block k+1, or -1
  std::vector<std::array<int, 4>> shift_in_;   // shift arriving at (tet, face) from block k-1, or -1
  mutable std::mutex mutex_;
  long lo_ = 0, hi_ = 0;
};

}  // namespace plsplit
