#pragma once

#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "interplay.hpp"
#include "lazy.hpp"
#include "normal.hpp"

namespace plsplit {

// ---------------------------------------------------------------------------
// Cutting along a surface.

/// Convex piece of a tet cut by normal disks: a corner slab of a triangle
/// stack (`corner` >= 0, `layer` counted from the corner) or a central
/// piece between quads (`corner` == -1, `layer` counted from the side of
/// vertex 0).
struct BlockId {
  int tet = 0;
  int corner = -1;
  int layer = 0;
  friend auto operator<=>(const BlockId&, const BlockId&) = default;
};

struct CutComponent {
  Triangulation window;
  std::vector<BlockId> source;  // per tet of `window`
  std::array<int, 4> betti{};
  long boundary_euler = 0;
};

struct CutResult {
  std::vector<CutComponent> components;
  std::map<BlockId, int> block_component;
  long surface_euler = 0;          // of the cutting surface
  long boundary_euler_before = 0;  // of the original window
  long boundary_euler_after = 0;   // summed over components
  /// Boundary of the cut equals the old boundary plus two copies of the surface.
  bool euler_identity() const { return boundary_euler_after - boundary_euler_before == 2 * surface_euler; }
};

/// Euler characteristic of the boundary surface of a window.
long boundary_euler(const Triangulation& tri);

/// Cuts each tet into blocks along the disks of `s` and cones every block
/// from its barycenter. An empty surface returns the window itself, one
/// block per tet. Throws OneSided, NotNormal, QuadConflict.
CutResult cut_along(const Triangulation& tri, const NormalCoordinates& s);

/// Block of the cut along `s` containing a disk of `t`, where `s` and `t`
/// are disjoint (compatible quads). Uses the first disk of `t`.
BlockId block_of(const Triangulation& tri, const NormalCoordinates& s, const NormalCoordinates& t);

// ---------------------------------------------------------------------------
// Torus census.

enum class TorusLabel { Canonical, Noncanonical };
const char* torus_label_name(TorusLabel l);

struct CensusTorus {
  NormalCoordinates coords;
  long weight = 0;
  TorusLabel label = TorusLabel::Canonical;
  std::vector<int> essential_partners;  // census indices meeting it essentially
};

/// Closed connected normal tori of weight at most `max_weight` on a window,
/// up to coordinate equality. A torus is labeled canonical when no other
/// census torus meets it in an essential circle.
struct TorusCensus {
  long max_weight = 0;
  std::vector<CensusTorus> tori;
  long max_census_weight() const;
  long max_canonical_weight() const;
};

TorusCensus torus_census(const Triangulation& window, long max_weight, long budget = 10'000'000);

// ---------------------------------------------------------------------------
// Hypotheses.

struct HypothesisConstants {
  long C1 = 0, C2 = 0, C3 = 0, C4 = 0;
  long C2_prime = 0, C2_second = 0;
  std::string derivation;
};

enum class Hypothesis { A, B, C, D };
const char* hypothesis_name(Hypothesis h);

/// A replayable violation: the torus, plus the tet or disk where the
/// search failed (-1 when not applicable).
struct HypothesisWitness {
  int torus = -1;
  int partner = -1;
  int tet = -1;
  int disk = -1;
  std::string detail;
};

struct HypothesisVerdict {
  enum class Result { VerifiedOnWindow, Counterexample, Inconclusive };
  Hypothesis hypothesis = Hypothesis::A;
  Result result = Result::VerifiedOnWindow;
  HypothesisConstants consts;
  long census_weight = 0;
  int window_tets = 0;
  std::string bounds;  // what was searched exhaustively
  std::vector<HypothesisWitness> witnesses;
};

const char* verdict_name(HypothesisVerdict::Result r);

/// Combinatorial length: number of normal arcs a closed dual path crosses.
/// B searches closed dual paths through each disk of every noncanonical
/// torus. C and D search the census. D has no constant, so it never
/// yields a Counterexample.
HypothesisVerdict check_hypotheses(const Triangulation& window, const TorusCensus& census,
                                   const HypothesisConstants& consts, Hypothesis which);

/// Re-runs the failing search for one witness; true if it fails again.
bool replay_witness(const Triangulation& window, const TorusCensus& census, const HypothesisConstants& consts,
                    Hypothesis which, const HypothesisWitness& w);

// ---------------------------------------------------------------------------
// Splitting collections and graph certificates.

enum class MemberLabel { Canonical, Noncanonical, Annulus };
enum class PieceLabel { Seifert, Atoroidal, Unlabeled };
const char* member_label_name(MemberLabel l);
const char* piece_label_name(PieceLabel l);

struct SplittingCollection {
  std::vector<NormalCoordinates> members;
  std::vector<MemberLabel> labels;
};

struct ConditionVerdict {
  std::string name;
  bool holds = true;
  long search_bound = 0;  // census weight the verdict is tagged with
  std::vector<std::string> violations;
};

struct SplittingReport {
  std::vector<ConditionVerdict> checks;  // disjointness, member types, conditions 1-4
  int pieces = 0;
  bool ok() const;
};

/// Pieces are the components of the window cut along all members, in
/// cut_along order; `piece_labels` gives one label per piece.
SplittingReport validate_splitting(const Triangulation& window, const SplittingCollection& c,
                                   const std::vector<PieceLabel>& piece_labels, const TorusCensus& census);

struct GraphCertificate {
  std::set<int> region;                           // window tets
  std::vector<NormalCoordinates> canonical_tori;  // inside the region
  std::vector<PieceLabel> piece_labels;           // per piece of the region cut along canonical_tori
  std::vector<SeifertDatum> seifert_evidence;     // optional
  std::vector<NormalCoordinates> boundary;        // boundary tori
  std::vector<int> outside;                       // census tori claimed outside the region
};

struct AuditReport {
  std::vector<ConditionVerdict> checks;
  bool ok() const;
};

AuditReport audit_graph_submanifold(const Triangulation& window, const GraphCertificate& cert,
                                    const TorusCensus& census, long c1);

// ---------------------------------------------------------------------------
// Growth loop and limits.

struct TautStage {
  std::set<int> region;
  int boundary_components = 0;
  std::optional<SeifertDatum> datum;
  bool includes_previous = true;
  AuditReport audit;
};

struct TautSequence {
  std::vector<TautStage> stages;
};

/// Stage 0 is empty; stage k adds the tets met by the k-th seed pair.
/// Throws SeedDegenerate if a seed pair has no essential circle.
TautSequence grow_taut_sequence(const Triangulation& window,
                                const std::vector<std::pair<NormalCoordinates, NormalCoordinates>>& seeds,
                                const TorusCensus& census, long c1);

/// Connected components of the faces separating a tet region from the rest.
int region_boundary_components(const Triangulation& tri, const std::set<int>& region);

/// Boundary surfaces of an increasing family of regions on a lazy complex;
/// `boundary[i]` follows one boundary component through the stages.
struct LimitStages {
  std::vector<std::set<GlobalTet>> regions;
  std::vector<SurfaceSequence> boundary;
};

struct LimitAssembly {
  std::set<GlobalTet> region;
  std::vector<SurfaceSequenceLimit> limits;
  std::vector<EndsReport> ends;
  int remapped_edges = 0;
};

/// Shrinks the crossing hulls of equivalent disks on every edge of the
/// window, takes the limit of each boundary sequence over `focus` and
/// classifies it. Throws OverlapUnresolved, Unstable, BudgetExceeded.
LimitAssembly assemble_limit_region(LazyComplex& complex, const LimitStages& stages,
                                    const std::vector<GlobalTet>& focus, GlobalTet center, int radius,
                                    long disk_slack_bound);

}  // namespace plsplit
