#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rspin/winding.hpp"

namespace rspin {

// ============================================================
// ribbon configurations
// ============================================================
//
// A configuration of simple closed curves is stored as its intersection
// graph plus ribbon data: at every node a cyclic order of the incident
// edges. Each edge is a single transverse crossing; the first endpoint in
// the pair plays the "horizontal" strand of the crossing, the second the
// "vertical", and every crossing is positive. For forests any embedding
// can be normalized to this form, so the convention loses nothing.

struct ConfigNode {
  std::string name;
  std::optional<int64_t> winding;                 // framing label, if known
  std::optional<std::vector<int64_t>> homology;   // ambient homology tag
};

struct RimCurve {
  std::string name;     // boundary curve of the ambient surface
  int64_t winding = 0;  // always known
};

// sum of windings over the listed curves (nodes or rim) equals chi
struct NamedConstraint {
  std::vector<std::string> curves;
  int64_t chi = 0;
};

struct RibbonConfig {
  std::vector<ConfigNode> nodes;
  std::vector<std::pair<int, int>> edges;   // node indices, horizontal first
  std::vector<std::vector<int>> cyclic;     // per node: edge ids, cyclic order
  std::vector<std::string> order;           // assemblage order; empty = nodes
  int64_t core_length = -1;                 // prefix forming the core; -1 = all
  std::optional<SurfaceSig> ambient;
  std::vector<RimCurve> rim;
  std::vector<NamedConstraint> constraints;
  std::vector<std::string> enters_once;     // declared handle curves
  bool special_case = false;

  int node_index(const std::string& name) const;  // -1 when absent
  std::vector<std::string> effective_order() const;
  void validate() const;   // throws std::invalid_argument on broken data

  std::string to_json() const;
  static RibbonConfig from_json(const std::string& text);
};

// induced subconfiguration on the named nodes (order as given)
RibbonConfig restrict_to(const RibbonConfig& c,
                         const std::vector<std::string>& names);

// ============================================================
// intersection-graph tests
// ============================================================

struct GraphTests {
  bool simple = false;           // every pair crosses at most once
  bool arboreal = false;         // intersection graph is a tree
  bool e_arboreal = false;       // tree containing an induced E6 subtree
  bool filling_possible = false; // Euler/boundary budget vs declared ambient
};
GraphTests graph_tests(const RibbonConfig& c);

// ============================================================
// regular-neighborhood invariants by ribbon tracing
// ============================================================

struct NeighborhoodInvariants {
  int64_t euler = 0;
  int64_t boundary_components = 0;
  int64_t genus = 0;   // euler = 2 - 2 genus - boundary_components
};

// connected configurations only; throws std::invalid_argument otherwise
NeighborhoodInvariants neighborhood_invariants(const RibbonConfig& c);

struct ComponentInvariants {
  std::vector<std::string> curves;
  NeighborhoodInvariants inv;
};
std::vector<ComponentInvariants> neighborhood_invariants_by_component(
    const RibbonConfig& c);

// ============================================================
// assemblage verification
// ============================================================

struct StageInvariant {
  std::string curve;
  int64_t earlier_crossings = 0;
  int64_t chi = 0;          // handle bookkeeping: drops by 1 per stage
  bool retraced = false;    // boundary/genus below are filled in
  int64_t boundary = -1;
  int64_t genus = -1;
};

struct AssemblageReport {
  bool ok = false;
  int64_t h = -1;       // genus of the core neighborhood
  bool type_E = false;  // core is E-arboreal
  std::vector<StageInvariant> stages;
  std::string message;  // failure description, empty when ok
};

// Verify the ordered sequence attaches one handle per stage: every curve's
// crossings with earlier curves must form a cyclically consecutive block in
// its ribbon order (one arc through the subsurface), or the curve must be
// declared enters-once. chi drops by exactly 1 per handle. boundary/genus
// per stage come from re-tracing the partial configuration, which is valid
// exactly as long as every stage so far met the earlier curves once.
AssemblageReport assemblage_check(const RibbonConfig& c, int64_t base_genus,
                                  int64_t base_boundaries);

// ============================================================
// dual cuts, admissibility propagation
// ============================================================

// True iff cutting the declared ambient surface along all curves leaves a
// connected complement. For a forest of curves this holds exactly when the
// homology tags are linearly independent, so the test doubles as a
// cross-validation of the declared tags. Throws when the ambient or a tag
// is missing, or when the configuration is not a forest.
bool dual_cut_connectivity(const RibbonConfig& c);

struct PropagationResult {
  bool ok = false;                            // every node ended up labeled
  std::map<std::string, int64_t> labels;      // known + derived windings
  std::vector<std::string> underdetermined;
  std::string message;
};

// Solve the linear system "sum of windings over each constraint's curves
// equals its chi" for the unlabeled nodes, exactly over the rationals.
// Inconsistent systems throw std::invalid_argument; a determined value that
// is not an integer throws std::logic_error.
PropagationResult propagate_admissibility(
    const RibbonConfig& c, const std::vector<NamedConstraint>& constraints);

// ============================================================
// induction-step configuration builder
// ============================================================

enum class CoreType { A, B };

// The 2 g_C + N - 1 curve configuration of the induction step: a 2g-curve
// E-arboreal core (circles O_j, connecting segments S_j, and the extra
// curve T on O_1), plus N-1 attachment curves alternating across tops of
// circles O_{kr+1} and bottoms of circles O_{kr-1}, each with a coherence
// constraint against one rim curve of winding -r-1. Attachment windings are
// left to propagate_admissibility (they all come out 0). Requires
// N r = 2 g_C - 2, g_C >= 3, N >= 2; type B needs r even. The attachment
// pattern is a reconstruction: cyclic orders are chosen from a small family
// of slot conventions, validated by re-tracing core and full neighborhoods,
// first passing convention wins. For r = 2, type B and odd chain count the
// last top is rerouted onto the final circle (flagged via special_case).
RibbonConfig build_induction_config(int64_t g_C, int64_t r, int64_t N,
                                    CoreType type = CoreType::A);

// ============================================================
// generation-criterion routing
// ============================================================

struct RouteReport {
  std::string criterion;  // "assemblage_genset" or "gencriterion"
  std::vector<std::pair<std::string, bool>> hypotheses;
};

// Pick the applicable generation criterion for a core configuration:
// core neighborhood genus >= 5 and type E routes to the assemblage
// generating-set theorem; otherwise the subsurface criterion's checklist
// (ambient genus >= 5, core genus >= 2, constant boundary signature -2,
// later curves entering once) is evaluated and must pass in full. When
// neither applies, throws std::invalid_argument naming the failures.
RouteReport route_generation(int64_t g_C, const RibbonConfig& core);

}  // namespace rspin
