#include "rspin/cli_driver.hpp"

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "rspin/certificate.hpp"
#include "rspin/config_graph.hpp"
#include "rspin/cover.hpp"
#include "rspin/germ.hpp"
#include "rspin/numerology.hpp"
#include "rspin/orbit.hpp"
#include "rspin/replay.hpp"

namespace rspin {

namespace {

using nlohmann::ordered_json;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void print_certificate(const Certificate& cert, bool as_json,
                       std::ostream& out) {
  if (as_json) {
    out << cert.dump() << "\n";
    return;
  }
  for (const CheckResult& c : cert.checks)
    out << "[" << (c.passed ? "pass" : "FAIL") << "] " << c.name << ": "
        << c.witness << "\n";
  out << "verdict: " << (cert.verdict() ? "pass" : "fail") << "\n";
}

CoreType parse_core_type(const std::string& s) {
  return s == "B" ? CoreType::B : CoreType::A;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"r-spin mapping class group toolkit"};
  app.require_subcommand(1);
  int rc = 0;

  // ---- numerology table ----
  auto* num = app.add_subcommand("numerology", "multidegree invariants");
  num->require_subcommand(1);
  auto* table = num->add_subcommand("table", "enumerate reduced multidegrees");
  int64_t max_genus = 0, max_r = 0;
  std::string table_format = "tsv";
  bool table_json = false;
  table->add_option("--max-genus", max_genus, "genus bound")->required();
  table->add_option("--max-r", max_r, "spin-number bound")->required();
  table->add_option("--format", table_format, "tsv or json")
      ->check(CLI::IsMember({"tsv", "json"}));
  table->add_flag("--json", table_json, "shorthand for --format json");
  table->callback([&] {
    std::vector<TableRow> rows = enumerate_reduced(max_genus, max_r);
    if (table_json || table_format == "json") {
      ordered_json j = ordered_json::array();
      for (const TableRow& row : rows)
        j.push_back({{"degrees", row.degrees},
                     {"genus", row.genus},
                     {"r", row.r}});
      out << j.dump(2) << "\n";
    } else {
      out << format_table_tsv(rows);
    }
  });

  // ---- orbits enumerate ----
  auto* orbits = app.add_subcommand("orbits", "spin-structure orbits");
  orbits->require_subcommand(1);
  auto* oenum = orbits->add_subcommand("enumerate", "BFS orbit partition");
  int64_t orbit_genus = 0, orbit_r = 0;
  bool orbit_json = false;
  oenum->add_option("--genus", orbit_genus, "closed surface genus")
      ->required();
  oenum->add_option("--r", orbit_r, "spin modulus")->required();
  oenum->add_flag("--json", orbit_json);
  oenum->callback([&] {
    OrbitReport rep = enumerate_orbits(orbit_genus, orbit_r);
    if (orbit_json) {
      out << rep.to_json() << "\n";
      return;
    }
    out << "g=" << rep.genus << " r=" << rep.r << ": " << rep.tuple_count
        << " tuples, " << rep.orbits.size() << " orbits\n";
    for (const OrbitRecord& o : rep.orbits) {
      out << "  rep=" << o.rep << " size=" << o.size;
      if (o.arf) out << " arf=" << *o.arf;
      out << " witness_moves=" << o.witness.size() << "\n";
    }
  });

  // ---- config check / build-induction ----
  auto* config = app.add_subcommand("config", "curve configurations");
  config->require_subcommand(1);
  auto* check = config->add_subcommand("check", "validate a configuration");
  std::string check_file;
  bool check_json = false;
  check->add_option("file", check_file, "RibbonConfig JSON")->required();
  check->add_flag("--json", check_json);
  check->callback([&] {
    RibbonConfig c = RibbonConfig::from_json(slurp(check_file));
    c.validate();
    Certificate cert;
    cert.command = "config check";
    cert.echo("file", check_file);
    GraphTests t = graph_tests(c);
    cert.add("well formed", true,
             std::to_string(c.nodes.size()) + " curves, " +
                 std::to_string(c.edges.size()) + " crossings");
    cert.add("simple", t.simple, "every pair crosses at most once");
    {
      std::ostringstream os;
      os << "arboreal=" << (t.arboreal ? "yes" : "no")
         << " e_arboreal=" << (t.e_arboreal ? "yes" : "no");
      cert.add("graph shape", true, os.str());
    }
    {
      std::ostringstream os;
      bool first = true;
      for (const ComponentInvariants& ci :
           neighborhood_invariants_by_component(c)) {
        if (!first) os << "; ";
        first = false;
        os << "chi=" << ci.inv.euler << " b=" << ci.inv.boundary_components
           << " genus=" << ci.inv.genus;
      }
      cert.add("neighborhood traced", true, os.str());
    }
    if (c.ambient)
      cert.add("filling possible", t.filling_possible,
               "Euler/boundary budget against the declared ambient");
    if (!c.constraints.empty()) {
      bool ok = true;
      std::string witness;
      try {
        PropagationResult p = propagate_admissibility(c, c.constraints);
        witness = std::to_string(p.labels.size()) + " windings known, " +
                  std::to_string(p.underdetermined.size()) +
                  " underdetermined";
      } catch (const std::exception& e) {
        ok = false;
        witness = e.what();
      }
      cert.add("winding constraints consistent", ok, witness);
    }
    print_certificate(cert, check_json, out);
    if (!cert.verdict()) rc = 1;
  });

  auto* build =
      config->add_subcommand("build-induction", "emit the induction config");
  std::string build_bd, build_type = "A";
  build->add_option("--bd", build_bd, "multidegree, e.g. 3,2")->required();
  build->add_option("--type", build_type, "core type")
      ->check(CLI::IsMember({"A", "B"}));
  build->callback([&] {
    Multidegree d = parse_degrees(build_bd);
    int64_t r = spin_number(d);
    if (r < 1)
      throw std::invalid_argument("multidegree " + degrees_to_string(d) +
                                  " has spin number " + std::to_string(r) +
                                  " < 1");
    RibbonConfig c = build_induction_config(genus(d), r, degree_product(d),
                                            parse_core_type(build_type));
    out << c.to_json() << "\n";
  });

  // ---- cover plan / tacnode / selftest ----
  auto* cover = app.add_subcommand("cover", "branched covers of the sphere");
  cover->require_subcommand(1);
  auto* plan = cover->add_subcommand("plan", "spanning order and arc system");
  std::string plan_file;
  bool plan_json = false;
  plan->add_option("file", plan_file, "BranchData JSON")->required();
  plan->add_flag("--json", plan_json);
  plan->callback([&] {
    BranchData b = BranchData::from_json(slurp(plan_file));
    b.validate();
    int64_t g = genus_rh(b);
    SpanningOrder span = select_spanning_order(b);
    ArcSystem sys = lift_arc_system(b, span);
    Certificate cert;
    cert.command = "cover plan";
    cert.echo("file", plan_file);
    cert.add("cover genus", true, "genus " + std::to_string(g));
    {
      std::ostringstream os;
      os << "order";
      for (int t : span.order) os << " " << t;
      cert.add("spanning order", true, os.str());
    }
    {
      std::ostringstream os;
      os << "chi";
      for (const ArcStage& s : sys.stages) os << " " << s.chi;
      cert.add("arc stages", true, os.str());
    }
    cert.add("complement disks", sys.complement_disks == b.sheets,
             std::to_string(sys.complement_disks) + " disks = sheet count");
    print_certificate(cert, plan_json, out);
    if (!cert.verdict()) rc = 1;
  });

  auto* tac = cover->add_subcommand("tacnode", "vanishing-cycle descriptor");
  std::string tac_file;
  int tac_branch = 0;
  bool tac_json = false;
  tac->add_option("file", tac_file, "BranchData JSON")->required();
  tac->add_option("--branch", tac_branch, "branch point index")->required();
  tac->add_flag("--json", tac_json);
  tac->callback([&] {
    BranchData b = BranchData::from_json(slurp(tac_file));
    b.validate();
    SpanningOrder span = select_spanning_order(b);
    TacnodeArc arc = tacnode_arc(b, span, tac_branch);
    if (tac_json) {
      ordered_json j;
      j["sheets"] = {arc.sheets.first, arc.sheets.second};
      j["crossings"] = ordered_json::array();
      for (const auto& [curve, count] : arc.crossings)
        j["crossings"].push_back({curve, count});
      out << j.dump(2) << "\n";
    } else {
      out << "sheets {" << arc.sheets.first << "," << arc.sheets.second
          << "}";
      for (const auto& [curve, count] : arc.crossings)
        out << "; crosses " << curve << " x" << count;
      out << "\n";
    }
  });

  auto* self = cover->add_subcommand("selftest", "randomized pipeline check");
  int64_t self_count = 200;
  uint64_t self_seed = 7;
  bool self_json = false;
  self->add_option("--count", self_count, "sample count");
  self->add_option("--seed", self_seed, "RNG seed");
  self->add_flag("--json", self_json);
  self->callback([&] {
    std::mt19937_64 rng(self_seed);
    int64_t bad_span = 0, bad_chi = 0, bad_disks = 0;
    for (int64_t i = 0; i < self_count; ++i) {
      BranchData b = random_transitive_branch_data(rng);
      int64_t g = genus_rh(b);
      SpanningOrder span;
      try {
        span = select_spanning_order(b);
      } catch (const std::exception&) {
        ++bad_span;
        continue;
      }
      ArcSystem sys = lift_arc_system(b, span);
      int64_t k = static_cast<int64_t>(b.transpositions.size());
      if (sys.chi_neighborhood != b.sheets - k ||
          sys.complement_disks != (2 - 2 * g) - sys.chi_neighborhood)
        ++bad_chi;
      if (sys.complement_disks != b.sheets) ++bad_disks;
    }
    Certificate cert;
    cert.command = "cover selftest";
    cert.echo("count", std::to_string(self_count));
    cert.echo("seed", std::to_string(self_seed));
    std::string base = std::to_string(self_count) + " samples";
    cert.add("spanning order", bad_span == 0, base);
    cert.add("chi bookkeeping", bad_chi == 0, base + ", genus cross-checked");
    cert.add("complement disks", bad_disks == 0,
             base + ", complement = sheet count every time");
    print_certificate(cert, self_json, out);
    if (!cert.verdict()) rc = 1;
  });

  // ---- tacnode span ----
  auto* tacnode = app.add_subcommand("tacnode", "versal deformation algebra");
  tacnode->require_subcommand(1);
  auto* span_cmd = tacnode->add_subcommand("span", "quotient span check");
  std::string sf, sh1, sh2, sh3;
  bool span_json = false;
  span_cmd->add_option("--f", sf, "the singularity germ")->required();
  span_cmd->add_option("--h1", sh1)->required();
  span_cmd->add_option("--h2", sh2)->required();
  span_cmd->add_option("--h3", sh3)->required();
  span_cmd->add_flag("--json", span_json);
  span_cmd->callback([&] {
    SpanReport rep = versal_span_check(parse_germ(sf), parse_germ(sh1),
                                       parse_germ(sh2), parse_germ(sh3));
    Certificate cert;
    cert.command = "tacnode span";
    cert.echo("f", sf);
    cert.echo("h1", sh1);
    cert.echo("h2", sh2);
    cert.echo("h3", sh3);
    cert.add("quotient dimension", quotient_dimension() == 3,
             "basis 1, z, z^2");
    cert.add("spans", rep.spans,
             "matrix rank " + std::to_string(rep.matrix_rank) + " of 3");
    cert.add("conditions imply spanning", rep.conditions_imply_spanning,
             rep.conditions_hold ? "pointwise conditions hold"
                                 : "pointwise conditions not satisfied");
    print_certificate(cert, span_json, out);
    if (!cert.verdict()) rc = 1;
  });

  // ---- replay ----
  auto* replay = app.add_subcommand("replay", "induction-step replay");
  std::string replay_bd, replay_type = "A", replay_input;
  bool replay_json = false;
  replay->add_option("--bd", replay_bd, "multidegree, e.g. 3,2")->required();
  replay->add_option("--type", replay_type, "core type")
      ->check(CLI::IsMember({"A", "B"}));
  replay->add_option("--input", replay_input, "BranchData JSON file");
  replay->add_flag("--json", replay_json);
  replay->callback([&] {
    ReplayOptions opt;
    opt.degrees = parse_degrees(replay_bd);
    opt.core_type = parse_core_type(replay_type);
    if (!replay_input.empty())
      opt.cover = BranchData::from_json(slurp(replay_input));
    Certificate cert = induction_replay(opt);
    print_certificate(cert, replay_json, out);
    if (!cert.verdict()) rc = 1;
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  } catch (const nlohmann::json::exception& e) {
    err << "input error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return rc;
}

}  // namespace rspin
