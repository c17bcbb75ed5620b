#include "rspin/cover.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rspin/residue.hpp"

namespace rspin {

using nlohmann::ordered_json;

// ============================================================
// BranchData
// ============================================================

void BranchData::validate() const {
  if (sheets < 2) throw std::invalid_argument("a cover needs at least 2 sheets");
  for (const auto& [i, j] : transpositions) {
    if (i < 1 || j < 1 || i > sheets || j > sheets)
      throw std::invalid_argument("transposition sheet out of range");
    if (i == j)
      throw std::invalid_argument("branch monodromy must exchange two sheets");
  }
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  bool unite(int a, int b) {
    a = find(a), b = find(b);
    if (a == b) return false;
    parent[b] = a;
    return true;
  }
};

}  // namespace

bool BranchData::transitive() const {
  validate();
  UnionFind uf(static_cast<int>(sheets) + 1);
  int components = static_cast<int>(sheets);
  for (const auto& [i, j] : transpositions)
    if (uf.unite(i, j)) --components;
  return components == 1;
}

std::string BranchData::to_json() const {
  ordered_json j;
  j["sheets"] = sheets;
  j["transpositions"] = ordered_json::array();
  for (const auto& [a, b] : transpositions)
    j["transpositions"].push_back({a, b});
  return j.dump(2);
}

BranchData BranchData::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  BranchData b;
  b.sheets = j.at("sheets").get<int64_t>();
  for (const auto& e : j.at("transpositions")) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("each transposition is a pair of sheets");
    b.transpositions.push_back({e[0].get<int>(), e[1].get<int>()});
  }
  b.validate();
  return b;
}

// ============================================================
// Riemann-Hurwitz
// ============================================================

int64_t genus_rh(const BranchData& b) {
  if (!b.transitive())
    throw std::invalid_argument("cover is not connected over these sheets");
  const int64_t k = static_cast<int64_t>(b.transpositions.size());
  const int64_t total = k - 2 * b.sheets + 2;
  if (total % 2 != 0)
    throw std::invalid_argument("branch count parity is wrong for a closed cover");
  if (total < 0)
    throw std::invalid_argument("branch data gives negative genus");
  return total / 2;
}

// ============================================================
// spanning order and lifts
// ============================================================

SpanningOrder select_spanning_order(const BranchData& b) {
  if (!b.transitive())
    throw std::invalid_argument("spanning tree impossible: cover disconnected");
  const int n = static_cast<int>(b.sheets);
  SpanningOrder out;
  out.relabel.assign(n + 1, 0);
  out.tree_count = n - 1;
  std::vector<char> selected(b.transpositions.size(), 0);

  // the tree grows one sheet at a time so the relabeling stays inductive:
  // each selected edge joins the labeled component to one fresh sheet
  auto [f0, f1] = b.transpositions[0];
  out.relabel[std::min(f0, f1)] = 1;
  out.relabel[std::max(f0, f1)] = 2;
  selected[0] = 1;
  out.order.push_back(0);
  int next_label = 3;
  while (static_cast<int>(out.order.size()) < n - 1) {
    size_t pick = b.transpositions.size();
    for (size_t t = 0; t < b.transpositions.size(); ++t) {
      if (selected[t]) continue;
      auto [i, j] = b.transpositions[t];
      if ((out.relabel[i] == 0) != (out.relabel[j] == 0)) {
        pick = t;
        break;
      }
    }
    if (pick == b.transpositions.size())
      throw std::logic_error("transitive cover ran out of frontier arcs");
    auto [i, j] = b.transpositions[pick];
    out.relabel[out.relabel[i] == 0 ? i : j] = next_label++;
    selected[pick] = 1;
    out.order.push_back(static_cast<int>(pick));
  }
  for (size_t t = 0; t < b.transpositions.size(); ++t)
    if (!selected[t]) out.order.push_back(static_cast<int>(t));
  return out;
}

ArcSystem lift_arc_system(const BranchData& b, const SpanningOrder& order) {
  const int64_t g = genus_rh(b);
  const int64_t n = b.sheets;
  const int64_t k = static_cast<int64_t>(b.transpositions.size());
  {
    std::vector<int> sorted = order.order;
    std::sort(sorted.begin(), sorted.end());
    for (int64_t t = 0; t < k; ++t)
      if (sorted[t] != t)
        throw std::invalid_argument("order is not a permutation of the arcs");
  }

  ArcSystem sys;
  UnionFind uf(static_cast<int>(n) + 1);
  int64_t chi = n;  // N marked disks before any arc is attached
  for (int64_t m = 0; m < k; ++m) {
    int t = order.order[m];
    auto [i, j] = b.transpositions[t];
    bool joined = uf.unite(i, j);
    LiftedArc arc;
    arc.branch = t;
    arc.sheets = {std::min(order.relabel[i], order.relabel[j]),
                  std::max(order.relabel[i], order.relabel[j])};
    // tree stage m must attach the fresh sheet labeled m+2 to the part
    // already built; anything else closes a cycle too early
    if (m < n - 1 && (!joined || arc.sheets.second != m + 2)) {
      std::ostringstream msg;
      msg << "stage " << m + 1 << ": arc closes a cycle before the spanning "
          << "tree is complete";
      throw std::invalid_argument(msg.str());
    }
    chi -= 1;
    sys.arcs.push_back(arc);
    sys.stages.push_back({static_cast<int>(m), arc, chi});
  }
  sys.chi_neighborhood = chi;  // = N - k
  if (sys.chi_neighborhood != n - k)
    throw std::logic_error("arc bookkeeping drifted");
  sys.complement_disks = (2 - 2 * g) - sys.chi_neighborhood;
  return sys;
}

// ============================================================
// cycle maps
// ============================================================

std::vector<int64_t> cycle_map(const BraidWord& w) {
  std::vector<int64_t> total(static_cast<size_t>(w.dim), 0);
  for (const BraidMove& m : w.moves) {
    if (m.kind == BraidMove::half_twist) {
      if (m.a < 0 || m.b < 0 ||
          m.a >= static_cast<int>(w.weights.size()) ||
          m.b >= static_cast<int>(w.weights.size()))
        throw std::invalid_argument("half twist between unknown points");
      if (w.weights[m.a] != w.weights[m.b])
        throw std::invalid_argument(
            "weight violation: half twist between points of unequal weight");
      // equal weights: contributes zero
    } else {
      if (m.point < 0 || m.point >= static_cast<int>(w.weights.size()))
        throw std::invalid_argument("strand loop at unknown point");
      if (static_cast<int64_t>(m.loop_class.size()) != w.dim)
        throw std::invalid_argument("loop class has the wrong dimension");
      for (int64_t i = 0; i < w.dim; ++i)
        total[i] += w.weights[m.point] * m.loop_class[i];
    }
  }
  return total;
}

int64_t winding_transport(int64_t phi_c, const std::vector<int64_t>& c_class,
                          const BraidWord& w, int64_t r) {
  if (static_cast<int64_t>(c_class.size()) != w.dim)
    throw std::invalid_argument("curve class has the wrong dimension");
  std::vector<int64_t> eta = cycle_map(w);
  // chain-form pairing: <e_i, e_{i+1}> = +1
  int64_t pair = 0;
  for (size_t i = 0; i + 1 < c_class.size(); ++i)
    pair += c_class[i] * eta[i + 1] - eta[i] * c_class[i + 1];
  return norm_mod(phi_c + pair, r);
}

// ============================================================
// tacnode arcs
// ============================================================

TacnodeArc tacnode_arc(const BranchData& b, const SpanningOrder& order,
                       int branch_index) {
  b.validate();
  if (branch_index < 0 ||
      branch_index >= static_cast<int>(b.transpositions.size()))
    throw std::invalid_argument("no such branch point");
  auto [i, j] = b.transpositions[branch_index];
  TacnodeArc arc;
  arc.sheets = {std::min(order.relabel[i], order.relabel[j]),
                std::max(order.relabel[i], order.relabel[j])};
  arc.crossings = {{"beta" + std::to_string(arc.sheets.first), 1},
                   {"beta" + std::to_string(arc.sheets.second), 1}};
  return arc;
}

BranchData random_transitive_branch_data(std::mt19937_64& rng, int max_sheets,
                                         int max_branch) {
  std::uniform_int_distribution<int> sheets_dist(2, max_sheets);
  for (;;) {
    BranchData b;
    b.sheets = sheets_dist(rng);
    int lo = std::max<int>(2, static_cast<int>(2 * b.sheets - 2));
    if (lo % 2) ++lo;
    if (lo > max_branch) continue;
    std::uniform_int_distribution<int> k_dist(0, (max_branch - lo) / 2);
    int k = lo + 2 * k_dist(rng);
    std::uniform_int_distribution<int> sheet(1, static_cast<int>(b.sheets));
    for (int t = 0; t < k; ++t) {
      int i = sheet(rng), j = sheet(rng);
      while (j == i) j = sheet(rng);
      b.transpositions.push_back({std::min(i, j), std::max(i, j)});
    }
    if (b.transitive()) return b;
  }
}

}  // namespace rspin
