#include "rspin/config_graph.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "rspin/rational.hpp"

namespace rspin {

using nlohmann::ordered_json;

// ============================================================
// RibbonConfig plumbing
// ============================================================

int RibbonConfig::node_index(const std::string& name) const {
  for (size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].name == name) return static_cast<int>(i);
  return -1;
}

std::vector<std::string> RibbonConfig::effective_order() const {
  if (!order.empty()) return order;
  std::vector<std::string> out;
  out.reserve(nodes.size());
  for (const ConfigNode& n : nodes) out.push_back(n.name);
  return out;
}

void RibbonConfig::validate() const {
  std::set<std::string> seen;
  for (const ConfigNode& n : nodes) {
    if (n.name.empty()) throw std::invalid_argument("unnamed curve");
    if (!seen.insert(n.name).second)
      throw std::invalid_argument("duplicate curve name: " + n.name);
  }
  for (const RimCurve& b : rim) {
    if (b.name.empty()) throw std::invalid_argument("unnamed rim curve");
    if (!seen.insert(b.name).second)
      throw std::invalid_argument("duplicate curve name: " + b.name);
  }
  const int nv = static_cast<int>(nodes.size());
  for (const auto& [a, b] : edges) {
    if (a < 0 || a >= nv || b < 0 || b >= nv)
      throw std::invalid_argument("edge endpoint out of range");
    if (a == b) throw std::invalid_argument("self-crossing curves unsupported");
  }
  if (cyclic.size() != nodes.size())
    throw std::invalid_argument("cyclic orders must cover every curve");
  for (int v = 0; v < nv; ++v) {
    std::vector<int> incident;
    for (size_t e = 0; e < edges.size(); ++e)
      if (edges[e].first == v || edges[e].second == v)
        incident.push_back(static_cast<int>(e));
    std::vector<int> given = cyclic[v];
    std::sort(given.begin(), given.end());
    if (given != incident)
      throw std::invalid_argument("cyclic order at " + nodes[v].name +
                                  " does not list its crossings exactly once");
  }
  if (!order.empty()) {
    std::set<std::string> in_order(order.begin(), order.end());
    if (order.size() != nodes.size() || in_order.size() != nodes.size())
      throw std::invalid_argument("assemblage order must list every curve once");
    for (const std::string& name : order)
      if (node_index(name) < 0)
        throw std::invalid_argument("assemblage order names unknown curve " +
                                    name);
  }
  if (core_length != -1 &&
      (core_length < 1 || core_length > static_cast<int64_t>(nodes.size())))
    throw std::invalid_argument("core length out of range");
  for (const std::string& name : enters_once)
    if (node_index(name) < 0)
      throw std::invalid_argument("enters-once declaration for unknown curve " +
                                  name);
  auto known_name = [&](const std::string& name) {
    if (node_index(name) >= 0) return true;
    for (const RimCurve& b : rim)
      if (b.name == name) return true;
    return false;
  };
  for (const NamedConstraint& k : constraints)
    for (const std::string& name : k.curves)
      if (!known_name(name))
        throw std::invalid_argument("constraint names unknown curve " + name);
  std::optional<size_t> tag_dim;
  for (const ConfigNode& n : nodes) {
    if (!n.homology) continue;
    if (tag_dim && n.homology->size() != *tag_dim)
      throw std::invalid_argument("homology tags of mixed dimension");
    tag_dim = n.homology->size();
  }
}

RibbonConfig restrict_to(const RibbonConfig& c,
                         const std::vector<std::string>& names) {
  RibbonConfig out;
  std::vector<int> old_index;
  std::vector<int> new_of_old(c.nodes.size(), -1);
  for (const std::string& name : names) {
    int v = c.node_index(name);
    if (v < 0) throw std::invalid_argument("restriction to unknown curve " + name);
    new_of_old[v] = static_cast<int>(out.nodes.size());
    out.nodes.push_back(c.nodes[v]);
    old_index.push_back(v);
  }
  std::vector<int> edge_map(c.edges.size(), -1);
  for (size_t e = 0; e < c.edges.size(); ++e) {
    auto [a, b] = c.edges[e];
    if (new_of_old[a] < 0 || new_of_old[b] < 0) continue;
    edge_map[e] = static_cast<int>(out.edges.size());
    out.edges.push_back({new_of_old[a], new_of_old[b]});
  }
  for (int v : old_index) {
    std::vector<int> cyc;
    for (int e : c.cyclic[v])
      if (edge_map[e] >= 0) cyc.push_back(edge_map[e]);
    out.cyclic.push_back(std::move(cyc));
  }
  out.order = names;
  out.ambient = c.ambient;
  out.rim = c.rim;
  out.special_case = c.special_case;
  std::set<std::string> kept(names.begin(), names.end());
  for (const RimCurve& b : c.rim) kept.insert(b.name);
  for (const NamedConstraint& k : c.constraints) {
    bool all = true;
    for (const std::string& name : k.curves) all = all && kept.count(name) > 0;
    if (all) out.constraints.push_back(k);
  }
  for (const std::string& name : c.enters_once)
    if (kept.count(name)) out.enters_once.push_back(name);
  return out;
}

// ============================================================
// JSON
// ============================================================

std::string RibbonConfig::to_json() const {
  ordered_json j;
  j["nodes"] = ordered_json::array();
  for (const ConfigNode& n : nodes) {
    ordered_json e;
    e["name"] = n.name;
    if (n.winding) e["winding"] = *n.winding;
    if (n.homology) e["homology"] = *n.homology;
    j["nodes"].push_back(e);
  }
  j["edges"] = ordered_json::array();
  for (const auto& [a, b] : edges)
    j["edges"].push_back({nodes[a].name, nodes[b].name});
  j["cyclic"] = ordered_json::object();
  for (size_t v = 0; v < nodes.size(); ++v)
    j["cyclic"][nodes[v].name] = cyclic[v];
  if (!order.empty()) j["order"] = order;
  if (core_length != -1) j["core_length"] = core_length;
  if (ambient) {
    j["ambient"] = {{"genus", ambient->genus},
                    {"boundary", ambient->boundary},
                    {"r", ambient->r}};
  }
  if (!rim.empty()) {
    j["rim"] = ordered_json::array();
    for (const RimCurve& b : rim)
      j["rim"].push_back({{"name", b.name}, {"winding", b.winding}});
  }
  if (!constraints.empty()) {
    j["constraints"] = ordered_json::array();
    for (const NamedConstraint& k : constraints)
      j["constraints"].push_back({{"curves", k.curves}, {"chi", k.chi}});
  }
  if (!enters_once.empty()) j["enters_once"] = enters_once;
  if (special_case) j["special_case"] = true;
  return j.dump(2);
}

RibbonConfig RibbonConfig::from_json(const std::string& text) {
  ordered_json j = ordered_json::parse(text);
  RibbonConfig c;
  if (!j.contains("nodes") || !j["nodes"].is_array())
    throw std::invalid_argument("config needs a nodes array");
  for (const auto& e : j["nodes"]) {
    ConfigNode n;
    n.name = e.at("name").get<std::string>();
    if (e.contains("winding")) n.winding = e["winding"].get<int64_t>();
    if (e.contains("homology"))
      n.homology = e["homology"].get<std::vector<int64_t>>();
    c.nodes.push_back(std::move(n));
  }
  auto endpoint = [&](const ordered_json& v) {
    if (v.is_number_integer()) return v.get<int>();
    int idx = c.node_index(v.get<std::string>());
    if (idx < 0)
      throw std::invalid_argument("edge names unknown curve " +
                                  v.get<std::string>());
    return idx;
  };
  if (j.contains("edges"))
    for (const auto& e : j["edges"]) {
      if (!e.is_array() || e.size() != 2)
        throw std::invalid_argument("each edge is a pair of curves");
      c.edges.push_back({endpoint(e[0]), endpoint(e[1])});
    }
  c.cyclic.assign(c.nodes.size(), {});
  for (size_t v = 0; v < c.nodes.size(); ++v)
    for (size_t e = 0; e < c.edges.size(); ++e)
      if (c.edges[e].first == static_cast<int>(v) ||
          c.edges[e].second == static_cast<int>(v))
        c.cyclic[v].push_back(static_cast<int>(e));  // listing-order default
  if (j.contains("cyclic"))
    for (auto it = j["cyclic"].begin(); it != j["cyclic"].end(); ++it) {
      int v = c.node_index(it.key());
      if (v < 0)
        throw std::invalid_argument("cyclic order for unknown curve " +
                                    it.key());
      c.cyclic[v] = it.value().get<std::vector<int>>();
    }
  if (j.contains("order")) c.order = j["order"].get<std::vector<std::string>>();
  if (j.contains("core_length")) c.core_length = j["core_length"].get<int64_t>();
  if (j.contains("ambient")) {
    SurfaceSig s;
    s.genus = j["ambient"].at("genus").get<int64_t>();
    s.boundary = j["ambient"].value("boundary", int64_t{0});
    s.r = j["ambient"].value("r", int64_t{0});
    c.ambient = s;
  }
  if (j.contains("rim"))
    for (const auto& e : j["rim"])
      c.rim.push_back({e.at("name").get<std::string>(),
                       e.at("winding").get<int64_t>()});
  if (j.contains("constraints"))
    for (const auto& e : j["constraints"])
      c.constraints.push_back({e.at("curves").get<std::vector<std::string>>(),
                               e.at("chi").get<int64_t>()});
  if (j.contains("enters_once"))
    c.enters_once = j["enters_once"].get<std::vector<std::string>>();
  if (j.contains("special_case")) c.special_case = j["special_case"].get<bool>();
  c.validate();
  return c;
}

// ============================================================
// ribbon boundary tracing
// ============================================================
//
// The neighborhood boundary is walked as a state machine. A state is
// (curve, side, gap): gap g is the boundary segment parallel to the curve
// between its crossings g and g+1 (cyclic). The left side runs with the
// curve's orientation and arrives at crossing g+1; the right side runs
// against it and arrives at crossing g. At a positive crossing between a
// horizontal curve c (position i) and a vertical curve d (position j) the
// four corner turns are:
//   forward  on (c,L) -> (d, L, j)        forward  on (d,L) -> (c, R, i-1)
//   backward on (c,R) -> (d, R, j-1)      backward on (d,R) -> (c, L, i)

namespace {

struct TraceTables {
  std::vector<int> degree;            // crossings per curve
  std::vector<int> state_base;        // first state id per curve
  int state_count = 0;
  std::vector<std::pair<int, int>> edge_pos;  // position on (first, second)
};

TraceTables trace_tables(const RibbonConfig& c) {
  TraceTables t;
  const int nv = static_cast<int>(c.nodes.size());
  t.degree.assign(nv, 0);
  t.state_base.assign(nv, 0);
  for (int v = 0; v < nv; ++v) {
    t.state_base[v] = t.state_count;
    t.degree[v] = static_cast<int>(c.cyclic[v].size());
    t.state_count += 2 * t.degree[v];
  }
  t.edge_pos.assign(c.edges.size(), {-1, -1});
  for (int v = 0; v < nv; ++v)
    for (size_t p = 0; p < c.cyclic[v].size(); ++p) {
      int e = c.cyclic[v][p];
      if (c.edges[e].first == v) t.edge_pos[e].first = static_cast<int>(p);
      if (c.edges[e].second == v) t.edge_pos[e].second = static_cast<int>(p);
    }
  return t;
}

// state id: state_base[v] + side * degree[v] + gap, side 0 = left
int trace_next(const RibbonConfig& c, const TraceTables& t, int state) {
  int v = 0;
  while (state >= t.state_base[v] + 2 * t.degree[v]) ++v;
  int local = state - t.state_base[v];
  int k = t.degree[v];
  int side = local / k, gap = local % k;
  int arrive = side == 0 ? (gap + 1) % k : gap;
  int e = c.cyclic[v][arrive];
  auto [a, b] = c.edges[e];
  auto [i, j] = t.edge_pos[e];
  int ka = t.degree[a], kb = t.degree[b];
  if (side == 0) {
    if (v == a) return t.state_base[b] + 0 * kb + j;
    return t.state_base[a] + 1 * ka + (i - 1 + ka) % ka;
  }
  if (v == a) return t.state_base[b] + 1 * kb + (j - 1 + kb) % kb;
  return t.state_base[a] + 0 * ka + i;
}

std::vector<std::vector<int>> graph_components(const RibbonConfig& c) {
  const int nv = static_cast<int>(c.nodes.size());
  std::vector<int> comp(nv, -1);
  std::vector<std::vector<int>> out;
  for (int s = 0; s < nv; ++s) {
    if (comp[s] >= 0) continue;
    std::vector<int> stack{s}, members;
    comp[s] = static_cast<int>(out.size());
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (const auto& [a, b] : c.edges) {
        int w = a == v ? b : b == v ? a : -1;
        if (w >= 0 && comp[w] < 0) {
          comp[w] = comp[v];
          stack.push_back(w);
        }
      }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

NeighborhoodInvariants trace_component(const RibbonConfig& c,
                                       const TraceTables& t,
                                       const std::vector<int>& members) {
  NeighborhoodInvariants inv;
  int64_t edge_count = 0;
  for (const auto& [a, b] : c.edges)
    if (std::binary_search(members.begin(), members.end(), a)) ++edge_count;
  if (edge_count == 0) {
    // isolated curve: an annulus
    inv.euler = 0;
    inv.boundary_components = 2;
    inv.genus = 0;
    return inv;
  }
  inv.euler = -edge_count;
  std::vector<char> seen(t.state_count, 0);
  for (int v : members) {
    for (int s = t.state_base[v]; s < t.state_base[v] + 2 * t.degree[v]; ++s) {
      if (seen[s]) continue;
      ++inv.boundary_components;
      for (int at = s; !seen[at]; at = trace_next(c, t, at)) seen[at] = 1;
    }
  }
  int64_t twice_genus = 2 - inv.euler - inv.boundary_components;
  if (twice_genus < 0 || twice_genus % 2 != 0)
    throw std::logic_error("ribbon trace bookkeeping is inconsistent");
  inv.genus = twice_genus / 2;
  return inv;
}

}  // namespace

std::vector<ComponentInvariants> neighborhood_invariants_by_component(
    const RibbonConfig& c) {
  c.validate();
  if (c.nodes.empty()) return {};
  TraceTables t = trace_tables(c);
  std::vector<ComponentInvariants> out;
  for (const std::vector<int>& members : graph_components(c)) {
    ComponentInvariants ci;
    for (int v : members) ci.curves.push_back(c.nodes[v].name);
    ci.inv = trace_component(c, t, members);
    out.push_back(std::move(ci));
  }
  return out;
}

NeighborhoodInvariants neighborhood_invariants(const RibbonConfig& c) {
  std::vector<ComponentInvariants> parts =
      neighborhood_invariants_by_component(c);
  if (parts.size() != 1)
    throw std::invalid_argument(
        "configuration is not connected; trace components separately");
  return parts[0].inv;
}

// ============================================================
// graph tests
// ============================================================

GraphTests graph_tests(const RibbonConfig& c) {
  c.validate();
  GraphTests out;
  const int nv = static_cast<int>(c.nodes.size());
  std::set<std::pair<int, int>> pairs;
  out.simple = true;
  for (const auto& [a, b] : c.edges)
    if (!pairs.insert({std::min(a, b), std::max(a, b)}).second)
      out.simple = false;

  std::vector<std::vector<int>> comps = graph_components(c);
  bool connected = comps.size() == 1 && nv > 0;
  out.arboreal =
      connected && static_cast<int>(c.edges.size()) == nv - 1 && out.simple;

  if (out.arboreal) {
    // induced E6: a degree-3 vertex with two branches extendable one step
    std::vector<std::vector<int>> adj(nv);
    for (const auto& [a, b] : c.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    for (int v = 0; v < nv && !out.e_arboreal; ++v) {
      if (adj[v].size() < 3) continue;
      int extendable = 0;
      for (int u : adj[v])
        if (adj[u].size() >= 2) ++extendable;
      if (extendable >= 2) out.e_arboreal = true;
    }
  }

  if (c.ambient) {
    int64_t chi_n = 0, b_n = 0;
    for (const ComponentInvariants& ci :
         neighborhood_invariants_by_component(c)) {
      chi_n += ci.inv.euler;
      b_n += ci.inv.boundary_components;
    }
    int64_t chi_s = 2 - 2 * c.ambient->genus - c.ambient->boundary;
    int64_t slack = chi_s - chi_n;
    out.filling_possible = 0 <= slack && slack <= b_n;
  }
  return out;
}

// ============================================================
// assemblage verification
// ============================================================

namespace {

bool cyclically_consecutive(const std::vector<int>& positions, int k) {
  if (positions.empty() || static_cast<int>(positions.size()) >= k) return true;
  std::vector<char> in(k, 0);
  for (int p : positions) in[p] = 1;
  int runs = 0;
  for (int p = 0; p < k; ++p)
    if (in[p] && !in[(p - 1 + k) % k]) ++runs;
  return runs == 1;
}

}  // namespace

AssemblageReport assemblage_check(const RibbonConfig& c, int64_t base_genus,
                                  int64_t base_boundaries) {
  c.validate();
  AssemblageReport rep;
  if (c.nodes.empty()) {
    rep.message = "empty configuration";
    return rep;
  }
  const std::vector<std::string> ord = c.effective_order();
  const bool empty_base = base_genus == 0 && base_boundaries == 0;
  std::set<std::string> declared(c.enters_once.begin(), c.enters_once.end());

  int64_t chi = empty_base ? 0 : 2 - 2 * base_genus - base_boundaries;
  std::vector<char> added(c.nodes.size(), 0);
  std::vector<std::string> added_names;
  bool retrace_ok = empty_base;
  for (size_t i = 0; i < ord.size(); ++i) {
    int v = c.node_index(ord[i]);
    StageInvariant stage;
    stage.curve = ord[i];
    std::vector<int> earlier_pos;
    for (size_t p = 0; p < c.cyclic[v].size(); ++p) {
      auto [a, b] = c.edges[c.cyclic[v][p]];
      int other = a == v ? b : a;
      if (added[other]) earlier_pos.push_back(static_cast<int>(p));
    }
    stage.earlier_crossings = static_cast<int64_t>(earlier_pos.size());

    const bool seed = i == 0 && empty_base;
    if (seed) {
      chi = 0;  // the first curve's annulus
    } else if (declared.count(ord[i])) {
      chi -= 1;
      if (stage.earlier_crossings != 1) retrace_ok = false;
    } else if (earlier_pos.empty()) {
      rep.stages.push_back(stage);
      std::ostringstream msg;
      msg << "stage " << i + 1 << ": curve " << ord[i]
          << " is disjoint from the assembled subsurface";
      rep.message = msg.str();
      return rep;
    } else if (!cyclically_consecutive(
                   earlier_pos, static_cast<int>(c.cyclic[v].size()))) {
      rep.stages.push_back(stage);
      std::ostringstream msg;
      msg << "stage " << i + 1 << ": crossings of " << ord[i]
          << " with the subsurface are not consecutive in its ribbon order";
      rep.message = msg.str();
      return rep;
    } else {
      chi -= 1;
      if (stage.earlier_crossings != 1) retrace_ok = false;
    }
    stage.chi = chi;
    added[v] = 1;
    added_names.push_back(ord[i]);
    if (retrace_ok) {
      NeighborhoodInvariants inv =
          neighborhood_invariants(restrict_to(c, added_names));
      if (inv.euler != chi)
        throw std::logic_error("handle bookkeeping disagrees with the trace");
      stage.retraced = true;
      stage.boundary = inv.boundary_components;
      stage.genus = inv.genus;
    }
    rep.stages.push_back(stage);
  }

  int64_t core_len =
      c.core_length == -1 ? static_cast<int64_t>(ord.size()) : c.core_length;
  std::vector<std::string> core_names(ord.begin(), ord.begin() + core_len);
  RibbonConfig core = restrict_to(c, core_names);
  std::vector<ComponentInvariants> parts =
      neighborhood_invariants_by_component(core);
  rep.h = 0;
  for (const ComponentInvariants& ci : parts) rep.h += ci.inv.genus;
  rep.type_E = graph_tests(core).e_arboreal;
  rep.ok = true;
  return rep;
}

// ============================================================
// dual cuts
// ============================================================

bool dual_cut_connectivity(const RibbonConfig& c) {
  c.validate();
  if (!c.ambient)
    throw std::invalid_argument("dual-cut test needs a declared ambient");
  const int nv = static_cast<int>(c.nodes.size());
  std::vector<std::vector<int>> comps = graph_components(c);
  if (static_cast<int>(c.edges.size()) != nv - static_cast<int>(comps.size()))
    throw std::invalid_argument("dual-cut test needs a forest of curves");
  std::vector<std::vector<Frac>> tags;
  for (const ConfigNode& n : c.nodes) {
    if (!n.homology)
      throw std::invalid_argument("curve " + n.name + " has no homology tag");
    std::vector<Frac> row;
    for (int64_t x : *n.homology) row.push_back(Frac(x));
    tags.push_back(std::move(row));
  }
  if (tags.empty()) return true;
  return matrix_rank(tags) == nv;
}

// ============================================================
// admissibility propagation
// ============================================================

PropagationResult propagate_admissibility(
    const RibbonConfig& c, const std::vector<NamedConstraint>& constraints) {
  c.validate();
  PropagationResult out;
  std::map<std::string, int64_t> known;
  std::vector<std::string> unknown;
  std::map<std::string, int> var_of;
  for (const ConfigNode& n : c.nodes) {
    if (n.winding)
      known[n.name] = *n.winding;
    else {
      var_of[n.name] = static_cast<int>(unknown.size());
      unknown.push_back(n.name);
    }
  }
  for (const RimCurve& b : c.rim) known[b.name] = b.winding;

  std::vector<std::vector<Frac>> a;
  std::vector<Frac> rhs;
  for (const NamedConstraint& k : constraints) {
    std::vector<Frac> row(unknown.size(), Frac(0));
    Frac b(k.chi);
    for (const std::string& name : k.curves) {
      auto it = known.find(name);
      if (it != known.end()) {
        b = b - Frac(it->second);
      } else {
        auto vit = var_of.find(name);
        if (vit == var_of.end())
          throw std::invalid_argument("constraint names unknown curve " + name);
        row[vit->second] = row[vit->second] + Frac(1);
      }
    }
    a.push_back(std::move(row));
    rhs.push_back(b);
  }

  LinearSolution sol = solve_partial(a, rhs);
  if (!sol.consistent)
    throw std::invalid_argument("inconsistent winding constraints");
  out.labels = known;
  for (size_t i = 0; i < unknown.size(); ++i) {
    if (!sol.values.empty() && sol.values[i]) {
      if (!sol.values[i]->is_integer())
        throw std::logic_error("winding propagation produced a non-integer");
      out.labels[unknown[i]] = sol.values[i]->num;
    } else {
      out.underdetermined.push_back(unknown[i]);
    }
  }
  out.ok = out.underdetermined.empty();
  std::ostringstream msg;
  msg << "derived " << unknown.size() - out.underdetermined.size() << " of "
      << unknown.size() << " unlabeled windings";
  out.message = msg.str();
  return out;
}

// ============================================================
// induction-step configuration builder
// ============================================================

namespace {

struct BuilderNames {
  int64_t g = 0;
  std::string O(int64_t j) const { return "O" + std::to_string(j); }
  std::string S(int64_t j) const { return "S" + std::to_string(j); }
  std::string U(int64_t k) const { return "U" + std::to_string(k); }
  std::string B(int64_t k) const { return "B" + std::to_string(k); }
  std::string beta(int64_t k) const { return "beta" + std::to_string(k); }
};

// Slot model for the cyclic order around a circle: the segment toward the
// lower circle sits west, segments toward higher circles east, top curves
// north, bottoms south. The candidate bits flip reflections and the two
// placements the figures leave ambiguous; the first candidate whose traces
// validate is emitted.
struct SlotConvention {
  bool south_first = false;   // west, south..., east..., north...
  bool t_is_top = true;       // where T sits on its circle
  bool swap_east = false;     // order of the two east segments (type B)
  bool t_after = false;       // T after the co-slotted attachment curve
};

}  // namespace

RibbonConfig build_induction_config(int64_t g_C, int64_t r, int64_t N,
                                    CoreType type) {
  if (g_C < 3 || r < 1 || N < 2 || N * r != 2 * g_C - 2)
    throw std::invalid_argument(
        "infeasible parameters: need g >= 3, r >= 1, N >= 2, N r = 2g - 2");
  if (type == CoreType::B && r % 2 != 0)
    throw std::invalid_argument("type B needs even r");
  const int64_t g = g_C;
  BuilderNames nm{g};

  const int64_t k_top = (g - 2) / r;
  const int64_t k_bot = N / 2;
  // one attachment per constraint, N - 1 in total
  if (k_top + k_bot != N - 1)
    throw std::logic_error("attachment count bookkeeping is off");

  const bool special =
      r == 2 && type == CoreType::B && g % 2 == 1 && k_top >= 1;

  RibbonConfig c;
  c.special_case = special;
  c.core_length = 2 * g;
  c.ambient = SurfaceSig{g, N, r};

  auto add_node = [&](const std::string& name, std::optional<int64_t> w,
                      int64_t tag_pos /* 1-based chain position, 0 = none */) {
    ConfigNode n;
    n.name = name;
    n.winding = w;
    if (tag_pos > 0) {
      std::vector<int64_t> tag(2 * g, 0);
      tag[tag_pos - 1] = 1;
      n.homology = tag;
    }
    c.nodes.push_back(std::move(n));
  };

  // core in assemblage order: O_0 S_1 O_1 ... S_{g-1} O_{g-1}, then T
  add_node(nm.O(0), 0, 1);
  for (int64_t j = 1; j <= g - 1; ++j) {
    add_node(nm.S(j), 0, 2 * j);
    add_node(nm.O(j), 0, 2 * j + 1);
  }
  add_node("T", 0, 2 * g);

  auto top_circle = [&](int64_t k) {
    if (special && k == k_top) return g - 1;
    return k * r + 1;
  };
  for (int64_t k = 1; k <= k_top; ++k) add_node(nm.U(k), std::nullopt, 0);
  for (int64_t k = 1; k <= k_bot; ++k) add_node(nm.B(k), std::nullopt, 0);

  for (int64_t k = 1; k <= N; ++k) c.rim.push_back({nm.beta(k), -(r + 1)});

  // edges, non-circle endpoint first (circles always play the vertical strand)
  auto add_edge = [&](const std::string& a, const std::string& b) {
    c.edges.push_back({c.node_index(a), c.node_index(b)});
  };
  for (int64_t j = 1; j <= g - 1; ++j) {
    int64_t low = j == g - 1 && type == CoreType::B ? g - 3 : j - 1;
    add_edge(nm.S(j), nm.O(low));
    add_edge(nm.S(j), nm.O(j));
  }
  add_edge("T", nm.O(1));
  for (int64_t k = 1; k <= k_top; ++k) add_edge(nm.U(k), nm.O(top_circle(k)));
  for (int64_t k = 1; k <= k_bot; ++k) add_edge(nm.B(k), nm.O(k * r - 1));

  // constraints: each attachment bounds a chi = -(r+1) piece with one rim
  // curve; segments riding along are the ones between the two attachment feet
  int64_t beta_used = 0;
  auto seg_range = [&](int64_t lo, int64_t hi, std::vector<std::string>& out,
                       bool replace_last_for_special) {
    for (int64_t m = lo; m <= hi; ++m) {
      int64_t use = m;
      if (replace_last_for_special && m == g - 2) use = g - 1;
      out.push_back(nm.S(use));
    }
  };
  for (int64_t k = 1; k <= k_top; ++k) {
    NamedConstraint kc;
    bool rep = special && k == k_top;
    if (k == 1) {
      kc.curves.push_back("T");
      seg_range(2, r + 1, kc.curves, rep);
      kc.curves.push_back(nm.U(1));
    } else {
      kc.curves.push_back(nm.U(k - 1));
      seg_range((k - 1) * r + 2, k * r + 1, kc.curves, rep);
      kc.curves.push_back(nm.U(k));
    }
    kc.curves.push_back(nm.beta(++beta_used));
    kc.chi = -(r + 1);
    c.constraints.push_back(std::move(kc));
  }
  for (int64_t k = 1; k <= k_bot; ++k) {
    NamedConstraint kc;
    if (k == 1) {
      kc.curves.push_back(nm.B(1));
      seg_range(1, r - 1, kc.curves, false);
    } else {
      kc.curves.push_back(nm.B(k - 1));
      seg_range((k - 1) * r, k * r - 1, kc.curves, false);
      kc.curves.push_back(nm.B(k));
    }
    kc.curves.push_back(nm.beta(++beta_used));
    kc.chi = -(r + 1);
    c.constraints.push_back(std::move(kc));
  }

  c.order = c.effective_order();

  // cyclic orders: enumerate slot conventions, keep the first whose core and
  // full neighborhoods trace to the expected surfaces
  auto build_cyclic = [&](const SlotConvention& sc) {
    c.cyclic.assign(c.nodes.size(), {});
    for (size_t v = 0; v < c.nodes.size(); ++v) {
      std::vector<int> incident;
      for (size_t e = 0; e < c.edges.size(); ++e)
        if (c.edges[e].first == static_cast<int>(v) ||
            c.edges[e].second == static_cast<int>(v))
          incident.push_back(static_cast<int>(e));
      if (c.nodes[v].name[0] != 'O') {
        c.cyclic[v] = incident;  // <= 2 crossings: any listing is cyclic
        continue;
      }
      std::vector<int> west, east, north, south;
      for (int e : incident) {
        int other = c.edges[e].first;  // circles are always second
        const std::string& name = c.nodes[other].name;
        if (name[0] == 'S') {
          int64_t m = std::stoll(name.substr(1));
          int64_t j = std::stoll(c.nodes[v].name.substr(1));
          (m == j ? west : east).push_back(e);
        } else if (name[0] == 'U') {
          north.push_back(e);
        } else if (name[0] == 'B') {
          south.push_back(e);
        } else {  // T
          (sc.t_is_top ? north : south).push_back(e);
        }
      }
      if (sc.swap_east && east.size() == 2) std::swap(east[0], east[1]);
      auto t_ordered = [&](std::vector<int> slot) {
        if (slot.size() == 2) {
          // T shares the slot with an attachment; pick which comes first
          bool first_is_t = c.edges[slot[0]].first ==
                            c.node_index("T");
          if (first_is_t == sc.t_after) std::swap(slot[0], slot[1]);
        }
        return slot;
      };
      north = t_ordered(north);
      south = t_ordered(south);
      std::vector<int>& cyc = c.cyclic[v];
      auto append = [&](const std::vector<int>& s) {
        cyc.insert(cyc.end(), s.begin(), s.end());
      };
      append(west);
      if (sc.south_first) {
        append(south);
        append(east);
        append(north);
      } else {
        append(north);
        append(east);
        append(south);
      }
    }
  };

  std::vector<std::string> core_names(c.order.begin(),
                                      c.order.begin() + 2 * g);
  for (int mask = 0; mask < 16; ++mask) {
    SlotConvention sc;
    sc.south_first = mask & 1;
    sc.t_is_top = mask & 2;
    sc.swap_east = mask & 4;
    sc.t_after = mask & 8;
    build_cyclic(sc);
    NeighborhoodInvariants core_inv =
        neighborhood_invariants(restrict_to(c, core_names));
    if (core_inv.boundary_components != 1 || core_inv.genus != g) continue;
    NeighborhoodInvariants full_inv = neighborhood_invariants(c);
    if (full_inv.boundary_components != N || full_inv.genus != g) continue;

    // attachment labels must propagate to 0 before they are filled in
    PropagationResult prop = propagate_admissibility(c, c.constraints);
    if (!prop.ok)
      throw std::logic_error("builder constraints left windings undetermined");
    for (ConfigNode& n : c.nodes) {
      int64_t label = prop.labels.at(n.name);
      if (label != 0)
        throw std::logic_error("builder produced an inadmissible curve");
      n.winding = label;
    }
    c.validate();
    return c;
  }
  throw std::logic_error(
      "no cyclic-order convention realizes the attachment pattern");
}

// ============================================================
// generation-criterion routing
// ============================================================

RouteReport route_generation(int64_t g_C, const RibbonConfig& core) {
  core.validate();
  if (core.nodes.empty())
    throw std::invalid_argument("routing needs a configuration");
  const std::vector<std::string> ord = core.effective_order();
  const int64_t core_len =
      core.core_length == -1 ? static_cast<int64_t>(ord.size())
                             : core.core_length;
  std::vector<std::string> core_names(ord.begin(), ord.begin() + core_len);
  RibbonConfig inner = restrict_to(core, core_names);
  NeighborhoodInvariants inv = neighborhood_invariants(inner);
  if (inv.genus != g_C)
    throw std::invalid_argument("core genus disagrees with declared g_C");
  const bool type_e = graph_tests(inner).e_arboreal;

  std::set<std::string> core_set(core_names.begin(), core_names.end());
  bool admissible = true;
  for (const ConfigNode& n : core.nodes)
    admissible = admissible && n.winding && *n.winding == 0;

  RouteReport rep;
  if (inv.genus >= 5 && type_e && admissible) {
    rep.criterion = "assemblage_genset";
    rep.hypotheses = {{"core genus >= 5", true},
                      {"core is E-arboreal", true},
                      {"assemblage curves admissible", true}};
    return rep;
  }

  std::set<std::string> declared(core.enters_once.begin(),
                                 core.enters_once.end());
  bool enter_once = true;
  for (const ConfigNode& n : core.nodes) {
    if (core_set.count(n.name)) continue;
    int crossings = 0;
    for (const auto& [a, b] : core.edges)
      if (core.nodes[a].name == n.name || core.nodes[b].name == n.name)
        ++crossings;
    if (crossings != 1 && !declared.count(n.name)) enter_once = false;
  }
  rep.hypotheses = {
      {"ambient genus >= 5", core.ambient && core.ambient->genus >= 5},
      {"core genus >= 2", inv.genus >= 2},
      {"constant signature -2", core.ambient && core.ambient->r == 1},
      {"later curves enter once", enter_once},
      {"assemblage curves admissible", admissible},
  };
  bool all = true;
  for (const auto& [name, value] : rep.hypotheses) all = all && value;
  if (!all) {
    std::string failed;
    for (const auto& [name, value] : rep.hypotheses)
      if (!value) failed += (failed.empty() ? "" : ", ") + name;
    throw std::invalid_argument("no generation criterion applies: " + failed);
  }
  rep.criterion = "gencriterion";
  return rep;
}

}  // namespace rspin
