#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <utility>
#include <vector>

namespace rspin {

// ============================================================
// simple branched covers of the sphere
// ============================================================

// Monodromy of a degree-N cover branched over k points, every local
// monodromy a transposition (maximally generic). Sheets are labeled 1..N.
struct BranchData {
  int64_t sheets = 0;
  std::vector<std::pair<int, int>> transpositions;

  void validate() const;      // shape only; throws std::invalid_argument
  bool transitive() const;    // the cover is connected
  std::string to_json() const;
  static BranchData from_json(const std::string& text);
};

// genus from the Riemann-Hurwitz count chi = 2N - k. Throws on
// non-transitive data, odd branch count, or a negative genus total.
int64_t genus_rh(const BranchData& b);

// Reorder branch points so the first N-1 selected form a spanning tree on
// the sheets (greedy, lowest index first), and relabel sheets so the i-th
// tree edge attaches the sheet labeled i+1. Deterministic.
struct SpanningOrder {
  std::vector<int> order;    // permutation of branch indices, tree edges first
  std::vector<int> relabel;  // 1-based: relabel[old sheet] = new sheet
  int tree_count = 0;        // = N - 1
};
SpanningOrder select_spanning_order(const BranchData& b);

// Distinguished lifts of the branch-point arcs, with stagewise Euler
// bookkeeping: the first N-1 arcs assemble a disk around all N sheets'
// marked points (chi = 1), every later arc attaches a handle (chi -= 1),
// and the complement of the full system in the cover must be N disks.
struct LiftedArc {
  int branch = 0;                 // original branch-point index
  std::pair<int, int> sheets;     // carried sheets, relabeled
};
struct ArcStage {
  int index = 0;                  // position in the lifting order
  LiftedArc arc;
  int64_t chi = 0;                // neighborhood chi after this stage
};
struct ArcSystem {
  std::vector<LiftedArc> arcs;
  std::vector<ArcStage> stages;
  int64_t chi_neighborhood = 0;   // = N - k
  int64_t complement_disks = 0;   // chi(cover) - chi(neighborhood), must be N
};
ArcSystem lift_arc_system(const BranchData& b, const SpanningOrder& order);

// ============================================================
// weighted cycle maps on surface braids
// ============================================================

struct BraidMove {
  enum Kind { half_twist, strand_loop } kind = half_twist;
  int a = 0, b = 0;                  // half twist: the two points exchanged
  int point = 0;                     // strand loop: the point pushed
  std::vector<int64_t> loop_class;   // strand loop: class traversed
};

struct BraidWord {
  int64_t dim = 0;                   // ambient H_1 coordinate count
  std::vector<int64_t> weights;      // weights[p] for points p = 0..N-1
  std::vector<BraidMove> moves;
};

// Weighted cycle map: half-twists between equal weights contribute zero
// (and violate membership otherwise -> throws); a strand loop contributes
// its point's weight times the class traversed. Additive over the word.
std::vector<int64_t> cycle_map(const BraidWord& w);

// Transport a winding value along a braid: phi(c) + <[c], cycle_map(w)>,
// with the chain-form intersection pairing, reduced mod r (r = 0 exact).
int64_t winding_transport(int64_t phi_c, const std::vector<int64_t>& c_class,
                          const BraidWord& w, int64_t r);

// ============================================================
// tacnode vanishing-cycle arc descriptors
// ============================================================

// The combinatorial shadow of the vanishing cycle over one branch point:
// it carries the two sheets exchanged there and crosses each of their
// boundary curves exactly once, making it an enters-once handle curve.
struct TacnodeArc {
  std::pair<int, int> sheets;                          // relabeled
  std::vector<std::pair<std::string, int>> crossings;  // (boundary curve, 1)
};
TacnodeArc tacnode_arc(const BranchData& b, const SpanningOrder& order,
                       int branch_index);

// rejection-sample a transitive BranchData with even branch count
BranchData random_transitive_branch_data(std::mt19937_64& rng,
                                         int max_sheets = 6,
                                         int max_branch = 14);

}  // namespace rspin
