#include "rspin/replay.hpp"

#include <sstream>
#include <stdexcept>

#include "rspin/residue.hpp"
#include "rspin/winding.hpp"

namespace rspin {

BranchData synthesize_branch_data(int64_t sheets, int64_t genus_prime) {
  if (sheets < 2) throw std::invalid_argument("need at least two sheets");
  if (genus_prime < 0) throw std::invalid_argument("negative section genus");
  BranchData b;
  b.sheets = sheets;
  const int64_t k = 2 * sheets - 2 + 2 * genus_prime;
  for (int64_t i = 1; i < sheets; ++i)
    b.transpositions.push_back({static_cast<int>(i), static_cast<int>(i + 1)});
  for (int64_t j = 1; j <= k - (sheets - 1); ++j) {
    int a = static_cast<int>(1 + (j - 1) % (sheets - 1));
    b.transpositions.push_back({a, a + 1});
  }
  return b;
}

namespace {

std::string join_degrees(const Multidegree& d) { return degrees_to_string(d); }

// one line of arithmetic evidence, e.g. "10 = 4 + 1 + 6 - 1"
std::string identity_witness(int64_t lhs, int64_t a, int64_t b, int64_t c) {
  std::ostringstream os;
  os << lhs << " = " << a << " + " << b << " + " << c << " - 1";
  return os.str();
}

}  // namespace

Certificate induction_replay(const ReplayOptions& opt) {
  // ---- preconditions: bad input is a usage error, not a failed check ----
  Multidegree d = canonical(opt.degrees);
  const int64_t r = spin_number(d);
  if (r < 1)
    throw std::invalid_argument(
        "induction needs spin number >= 1; multidegree " + join_degrees(d) +
        " has r = " + std::to_string(r) + " (base case, out of scope)");
  if (opt.core_type == CoreType::B && r % 2 != 0)
    throw std::invalid_argument("type B needs an even spin number, got r = " +
                                std::to_string(r));
  const InductionStep step = induction_step(d);
  const int64_t g_C = genus(d);
  const int64_t N = step.sheets;
  const int64_t g_plus = genus(step.plus);
  const int64_t g_prime = genus(step.prime);
  const int64_t r_plus = spin_number(step.plus);
  const int64_t deg_plus = degree_product(step.plus);

  BranchData branch;
  if (opt.cover) {
    branch = *opt.cover;
    branch.validate();
    if (branch.sheets != N)
      throw std::invalid_argument(
          "cover sheet count must equal the degree product N = " +
          std::to_string(N));
    if (!branch.transitive())
      throw std::invalid_argument("cover data is not transitive");
    if ((static_cast<int64_t>(branch.transpositions.size()) - 2 * N + 2) % 2 !=
        0)
      throw std::invalid_argument("cover branch count has wrong parity");
  } else {
    branch = synthesize_branch_data(N, g_prime);
  }
  const int64_t k = static_cast<int64_t>(branch.transpositions.size());

  Certificate cert;
  cert.command = "replay";
  cert.echo("bd", join_degrees(d));
  cert.echo("type", opt.core_type == CoreType::A ? "A" : "B");
  cert.echo("cover", (opt.cover ? "provided k=" : "synthesized k=") +
                         std::to_string(k));

  // ---- step 1: degeneration arithmetic ----
  cert.add("gluing identity", g_plus == g_C + g_prime + N - 1,
           "g(" + join_degrees(step.plus) + ") = " +
               identity_witness(g_plus, g_C, g_prime, N));
  cert.add("spin successor", r_plus == r + 1,
           "r bumps to " + std::to_string(r_plus));

  // ---- step 2: vanishing-cycle configuration ----
  RibbonConfig cfg =
      build_induction_config(g_C, r, N, opt.core_type);
  cert.add("curve count",
           static_cast<int64_t>(cfg.nodes.size()) == 2 * g_C + N - 1,
           std::to_string(cfg.nodes.size()) + " curves = 2 g + N - 1");

  AssemblageReport asm_rep = assemblage_check(cfg, 0, 0);
  {
    std::ostringstream os;
    os << "h = " << asm_rep.h << " over " << asm_rep.stages.size()
       << " stages";
    if (!asm_rep.ok) os << "; " << asm_rep.message;
    cert.add("assemblage", asm_rep.ok && asm_rep.h == g_C, os.str());
  }
  cert.add("core type E", asm_rep.type_E, "induced E6 subtree in the core");

  {
    // forget the derived attachment windings, then re-derive them
    RibbonConfig stripped = cfg;
    for (ConfigNode& n : stripped.nodes)
      if (n.name[0] == 'U' || n.name[0] == 'B') n.winding.reset();
    PropagationResult prop =
        propagate_admissibility(stripped, stripped.constraints);
    bool all_zero = prop.ok;
    for (const ConfigNode& n : cfg.nodes) {
      if (n.name[0] != 'U' && n.name[0] != 'B') continue;
      auto it = prop.labels.find(n.name);
      if (it == prop.labels.end() || it->second != 0) all_zero = false;
    }
    std::ostringstream os;
    os << N - 1 << " attachment windings derived, all 0";
    if (!prop.ok) os << "; " << prop.message;
    cert.add("admissibility propagation", all_zero, os.str());
  }

  {
    std::vector<std::string> core_names;
    for (const ConfigNode& n : cfg.nodes)
      if (n.name[0] != 'U' && n.name[0] != 'B') core_names.push_back(n.name);
    RibbonConfig core = restrict_to(cfg, core_names);
    bool connected = dual_cut_connectivity(core);
    cert.add("dual cut connectivity", connected,
             "complement of the core cut is connected");
  }

  // ---- step 3: branched cover and tacnode arcs ----
  cert.add("cover genus", genus_rh(branch) == g_prime,
           "lifted section genus " + std::to_string(genus_rh(branch)) +
               " matches g(" + join_degrees(step.prime) + ")");

  SpanningOrder span = select_spanning_order(branch);
  ArcSystem arcs = lift_arc_system(branch, span);
  {
    bool ok = arcs.complement_disks == N && arcs.chi_neighborhood == N - k &&
              (N < 2 || arcs.stages[static_cast<size_t>(N - 2)].chi == 1);
    std::ostringstream os;
    os << "tree completes at chi = 1; complement = " << arcs.complement_disks
       << " disks";
    cert.add("arc bookkeeping", ok, os.str());
  }

  std::vector<TacnodeArc> teeth;
  {
    bool ok = true;
    for (int64_t i = 0; i < k; ++i) {
      TacnodeArc t = tacnode_arc(branch, span, static_cast<int>(i));
      if (t.crossings.size() != 2) ok = false;
      for (const auto& [curve, count] : t.crossings)
        if (count != 1) ok = false;
      teeth.push_back(std::move(t));
    }
    cert.add("tacnode descriptors", ok,
             std::to_string(k) +
                 " vanishing arcs, each crossing two boundary curves once");
  }

  // ---- step 3 continued: generation-criterion routing ----
  {
    RibbonConfig routed = cfg;
    routed.ambient = SurfaceSig{g_plus, 0, r};
    RouteReport route = route_generation(g_C, routed);
    bool all_hyp = true;
    for (const auto& [name, held] : route.hypotheses)
      if (!held) all_hyp = false;
    cert.add("generation route", all_hyp,
             route.criterion + " with " +
                 std::to_string(route.hypotheses.size()) +
                 " hypotheses verified");
  }

  // ---- step 4: boundary-signature bookkeeping ----
  WindingState core_state(SurfaceSig{g_C, N, 0},
                          std::vector<int64_t>(static_cast<size_t>(N), -r - 1));
  cert.add("boundary signature", r + 1 == r_plus,
           "all " + std::to_string(N) + " boundary values are " +
               std::to_string(-r - 1) + "; |value| = r(d+)");
  cert.add("core spin divisor", core_state.signature_gcd() == r,
           "gcd over the core boundary = " + std::to_string(r));

  {
    WindingState glued = core_state;
    for (size_t i = 0; i < teeth.size(); ++i) {
      std::vector<int64_t> pairings(static_cast<size_t>(glued.dim()), 0);
      auto [a, b] = teeth[i].sheets;
      if (a - 1 < N - 1) pairings[static_cast<size_t>(2 * g_C + a - 1)] = 1;
      if (b - 1 < N - 1) pairings[static_cast<size_t>(2 * g_C + b - 1)] = -1;
      glued = glued.extend_over_handle("a" + std::to_string(i + 1), pairings, 0);
    }
    cert.add("handle count", glued.extras() == 2 * g_prime + 2 * N - 2,
             std::to_string(glued.extras()) + " handles = 2 g(d') + 2N - 2");
    const int64_t chi_glued = (2 - 2 * g_C - N) - k;
    bool euler_ok = chi_glued + N == 2 - 2 * g_plus &&
                    2 - 2 * g_plus == -deg_plus * r_plus;
    std::ostringstream os;
    os << "chi + N = " << chi_glued + N << " = 2 - 2 g(d+) = -deg(d+) r(d+)";
    cert.add("euler closure", euler_ok, os.str());
    cert.add("successor divisibility",
             r_plus != 0 && (chi_glued + N) % r_plus == 0,
             "r(d+) divides chi + N");
  }

  {
    // the complement disks, modeled as boundary values -1 - m_j r(d+) with
    // multiplicities m_j summing to deg(d+)
    std::vector<int64_t> disk_values(static_cast<size_t>(N), -1 - r_plus);
    disk_values.back() = -1 - (deg_plus - N + 1) * r_plus;
    WindingState filled(SurfaceSig{g_plus, N, 0}, disk_values);
    cert.add("filled spin divisor", filled.signature_gcd() == r_plus,
             "gcd over the disk boundaries = r(d+) = " +
                 std::to_string(r_plus));
    WindingState reduced = filled.reduce_mod(r_plus);
    bool canonical_sig = true;
    for (int64_t v : reduced.boundary_values())
      if (v != norm_mod(-1, r_plus)) canonical_sig = false;
    cert.add("canonical reduction", canonical_sig,
             "all boundary values are -1 mod r(d+)");
  }

  return cert;
}

}  // namespace rspin
