#include "doctest.h"
#include "rspin/certificate.hpp"
#include "rspin/cli_driver.hpp"
#include "rspin/cover.hpp"
#include "rspin/orbit.hpp"
#include "rspin/replay.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace rspin;

namespace {

struct CliRun {
  int code = 0;
  std::string out, err;
};

CliRun cli(const std::vector<std::string>& args) {
  std::ostringstream o, e;
  int code = run_cli(args, o, e);
  return {code, o.str(), e.str()};
}

bool contains(const std::string& hay, const std::string& needle) {
  return hay.find(needle) != std::string::npos;
}

std::string write_temp(const std::string& name, const std::string& body) {
  std::string path = "/tmp/rspin_test_" + name;
  std::ofstream(path) << body;
  return path;
}

}  // namespace

// ============================================================
// driver plumbing
// ============================================================

TEST_CASE("cli: the frozen multidegree table comes out byte for byte") {
  CliRun run = cli({"numerology", "table", "--max-genus", "4", "--max-r", "1"});
  CHECK(run.code == 0);
  CHECK(run.out ==
        "1\t0\t-2\n"
        "2\t0\t-1\n"
        "3\t1\t0\n"
        "2,2\t1\t0\n"
        "4\t3\t1\n"
        "3,2\t4\t1\n"
        "2,2,2\t5\t1\n");
  CHECK(run.err.empty());

  CliRun js = cli({"numerology", "table", "--max-genus", "4", "--max-r", "1",
                   "--format", "json"});
  CHECK(js.code == 0);
  CHECK(contains(js.out, "\"degrees\""));
  CHECK(js.out.front() == '[');
}

TEST_CASE("cli: orbit enumeration matches the library output") {
  CliRun js = cli({"orbits", "enumerate", "--genus", "2", "--r", "2",
                   "--json"});
  CHECK(js.code == 0);
  CHECK(js.out == enumerate_orbits(2, 2).to_json() + "\n");

  CliRun human = cli({"orbits", "enumerate", "--genus", "2", "--r", "2"});
  CHECK(human.code == 0);
  CHECK(contains(human.out, "g=2 r=2: 16 tuples, 2 orbits"));
  CHECK(contains(human.out, "  rep=0 size=6 arf=1"));
  CHECK(contains(human.out, "  rep=2 size=10 arf=0"));
}

TEST_CASE("cli: usage and domain errors exit with code 2") {
  CHECK(cli({}).code == 2);                      // no subcommand
  CHECK(cli({"frobnicate"}).code == 2);          // unknown subcommand
  CHECK(cli({"numerology", "table", "--max-genus", "1", "--max-r", "1",
             "--bogus"})
            .code == 2);

  CliRun bad_r = cli({"orbits", "enumerate", "--genus", "2", "--r", "3"});
  CHECK(bad_r.code == 2);
  CHECK(contains(bad_r.err, "error: "));

  CHECK(cli({"orbits", "enumerate", "--genus", "6", "--r", "5"}).code == 2);
  CHECK(cli({"--help"}).code == 0);  // asking for help is not an error
}

// ============================================================
// config subcommands
// ============================================================

TEST_CASE("cli: build-induction output feeds straight back into check") {
  CliRun built = cli({"config", "build-induction", "--bd", "3,2"});
  CHECK(built.code == 0);
  std::string path = write_temp("induct32.json", built.out);

  CliRun checked = cli({"config", "check", path});
  CHECK(checked.code == 0);
  CHECK(contains(checked.out, "[pass] well formed"));
  CHECK(contains(checked.out, "[pass] winding constraints consistent"));
  CHECK(contains(checked.out, "verdict: pass"));

  CliRun js = cli({"config", "check", path, "--json"});
  CHECK(js.code == 0);
  Certificate cert = Certificate::parse(js.out);
  CHECK(cert.command == "config check");
  CHECK(cert.verdict());
  CHECK(!cert.checks.empty());
  std::remove(path.c_str());

  // base-case multidegrees have no spin structure to induct on
  CliRun bad = cli({"config", "build-induction", "--bd", "2,2"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "spin number 0 < 1"));
}

TEST_CASE("cli: config check rejects unreadable or malformed input") {
  CliRun missing = cli({"config", "check", "/tmp/rspin_no_such_file.json"});
  CHECK(missing.code == 2);
  CHECK(contains(missing.err, "cannot open"));

  std::string path = write_temp("garbage.json", "{ not json");
  CliRun garbled = cli({"config", "check", path});
  CHECK(garbled.code == 2);
  CHECK(contains(garbled.err, "input error: "));
  std::remove(path.c_str());
}

// ============================================================
// cover subcommands
// ============================================================

TEST_CASE("cli: cover plan certifies the elliptic example") {
  BranchData b{3, {{1, 2}, {1, 2}, {1, 3}, {1, 3}, {2, 3}, {2, 3}}};
  std::string path = write_temp("elliptic.json", b.to_json());

  CliRun run = cli({"cover", "plan", path});
  CHECK(run.code == 0);
  CHECK(contains(run.out, "[pass] cover genus: genus 1"));
  CHECK(contains(run.out, "[pass] complement disks: 3 disks"));
  CHECK(contains(run.out, "verdict: pass"));

  CliRun js = cli({"cover", "plan", path, "--json"});
  Certificate cert = Certificate::parse(js.out);
  CHECK(cert.command == "cover plan");
  CHECK(cert.verdict());

  CliRun tac = cli({"cover", "tacnode", path, "--branch", "0"});
  CHECK(tac.code == 0);
  CHECK(tac.out == "sheets {1,2}; crosses beta1 x1; crosses beta2 x1\n");

  CliRun oob = cli({"cover", "tacnode", path, "--branch", "99"});
  CHECK(oob.code == 2);
  CHECK(contains(oob.err, "no such branch point"));
  std::remove(path.c_str());
}

TEST_CASE("cli: cover selftest samples clean pipelines") {
  CliRun run = cli({"cover", "selftest", "--count", "60", "--seed", "3"});
  CHECK(run.code == 0);
  CHECK(contains(run.out, "[pass] spanning order"));
  CHECK(contains(run.out, "[pass] chi bookkeeping"));
  CHECK(contains(run.out, "[pass] complement disks"));
  CHECK(contains(run.out, "verdict: pass"));
}

// ============================================================
// tacnode span subcommand
// ============================================================

TEST_CASE("cli: tacnode span reports verdicts with exit codes") {
  CliRun good = cli({"tacnode", "span", "--f", "w - z^2", "--h1", "1", "--h2",
                     "z", "--h3", "1"});
  CHECK(good.code == 0);
  CHECK(contains(good.out, "[pass] spans: matrix rank 3 of 3"));
  CHECK(contains(good.out, "verdict: pass"));

  CliRun flat = cli({"tacnode", "span", "--f", "w - z^2", "--h1", "1", "--h2",
                     "z", "--h3", "z"});
  CHECK(flat.code == 1);  // a negative verdict, not a usage error
  CHECK(contains(flat.out, "[FAIL] spans"));
  CHECK(contains(flat.out, "verdict: fail"));

  CliRun bad = cli({"tacnode", "span", "--f", "qq", "--h1", "1", "--h2", "z",
                    "--h3", "1"});
  CHECK(bad.code == 2);
  CHECK(contains(bad.err, "bad germ expression"));
}

// ============================================================
// replay
// ============================================================

TEST_CASE("cli: replay passes the three induction steps and routes them") {
  CliRun d4 = cli({"replay", "--bd", "4"});
  CHECK(d4.code == 0);
  CHECK(contains(d4.out, "gencriterion with 5 hypotheses verified"));
  CHECK(contains(d4.out, "verdict: pass"));

  CliRun d32 = cli({"replay", "--bd", "3,2"});
  CHECK(d32.code == 0);
  CHECK(contains(d32.out, "gencriterion with 5 hypotheses verified"));
  CHECK(contains(d32.out, "verdict: pass"));

  CliRun d222 = cli({"replay", "--bd", "2,2,2"});
  CHECK(d222.code == 0);
  CHECK(contains(d222.out, "assemblage_genset with 3 hypotheses verified"));
  CHECK(contains(d222.out, "verdict: pass"));
}

TEST_CASE("cli: replay certificates parse and are byte-stable") {
  CliRun first = cli({"replay", "--bd", "4", "--json"});
  CliRun second = cli({"replay", "--bd", "4", "--json"});
  CHECK(first.code == 0);
  CHECK(first.out == second.out);

  Certificate cert = Certificate::parse(first.out);
  CHECK(cert.command == "replay");
  CHECK(cert.checks.size() == 18);
  CHECK(cert.verdict());
  for (const CheckResult& c : cert.checks) CHECK(c.passed);
}

TEST_CASE("cli: replay refuses base-case multidegrees") {
  CliRun d3 = cli({"replay", "--bd", "3"});
  CHECK(d3.code == 2);
  CHECK(contains(d3.err, "spin number >= 1"));
  CHECK(cli({"replay", "--bd", "2,2"}).code == 2);
}

TEST_CASE("cli: replay accepts a cover override and audits it") {
  std::string good_path =
      write_temp("cover_g0.json", synthesize_branch_data(4, 0).to_json());
  CliRun good = cli({"replay", "--bd", "4", "--input", good_path, "--json"});
  CHECK(good.code == 0);
  CHECK(contains(good.out, "provided k=6"));
  CHECK(Certificate::parse(good.out).verdict());
  std::remove(good_path.c_str());

  // a transitive cover of the wrong genus is caught, not crashed on
  std::string bad_path =
      write_temp("cover_g1.json", synthesize_branch_data(4, 1).to_json());
  CliRun bad = cli({"replay", "--bd", "4", "--input", bad_path});
  CHECK(bad.code == 1);
  CHECK(contains(bad.out, "[FAIL] cover genus"));
  CHECK(contains(bad.out, "verdict: fail"));
  std::remove(bad_path.c_str());
}

// ============================================================
// certificate container
// ============================================================

TEST_CASE("certificates round trip and reject tampered verdicts") {
  Certificate cert;
  cert.command = "demo";
  cert.echo("k", "v");
  cert.add("alpha", true, "w1");
  cert.add("beta", true, "w2");
  CHECK(cert.verdict());

  std::string text = cert.dump();
  Certificate back = Certificate::parse(text);
  CHECK(back.dump() == text);
  CHECK(back.command == "demo");
  CHECK(back.checks.size() == 2);

  // flip the stored verdict without touching the checks
  std::string tampered = text;
  auto pos = tampered.rfind("\"pass\"");
  tampered.replace(pos, 6, "\"fail\"");
  CHECK_THROWS_WITH_AS(Certificate::parse(tampered),
                       "stored verdict disagrees with checks",
                       std::invalid_argument);

  std::string odd_status = text;
  pos = odd_status.find("\"pass\"");  // first hit is a check status
  odd_status.replace(pos, 6, "\"meh\"");
  CHECK_THROWS_AS(Certificate::parse(odd_status), std::invalid_argument);

  Certificate empty;
  CHECK(empty.verdict());  // vacuous
}
