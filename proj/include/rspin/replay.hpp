#pragma once

#include <optional>

#include "rspin/certificate.hpp"
#include "rspin/config_graph.hpp"
#include "rspin/cover.hpp"
#include "rspin/numerology.hpp"

namespace rspin {

// ============================================================
// induction-step replay
// ============================================================

// Deterministic branch data for the hyperplane-section cover: sheets along a
// path tree, then cycle-closing transpositions walking the path, giving a
// transitive cover of genus genus_prime with k = 2 sheets - 2 + 2 genus_prime.
BranchData synthesize_branch_data(int64_t sheets, int64_t genus_prime);

struct ReplayOptions {
  Multidegree degrees;
  CoreType core_type = CoreType::A;
  std::optional<BranchData> cover;  // default: synthesized
};

// Replays the degeneration induction step for one multidegree: the genus
// gluing arithmetic, the vanishing-cycle configuration with admissibility
// propagation, the branched-cover arc system with tacnode descriptors, the
// generation-criterion routing, and the boundary-signature bookkeeping that
// identifies the successor spin structure. Preconditions (spin number >= 1,
// well-formed cover data, feasible core type) throw invalid_argument; every
// downstream failure lands in the certificate as a failing check.
Certificate induction_replay(const ReplayOptions& opt);

}  // namespace rspin
