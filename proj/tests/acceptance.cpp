// Acceptance gate: twelve criteria, one pass/fail line each. Every check is
// exact; time budgets are pinned inline next to the criteria that carry them.
// Exit status is the number of failed criteria.

#include <chrono>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "oracles.hpp"
#include "rspin/certificate.hpp"
#include "rspin/cli_driver.hpp"
#include "rspin/cover.hpp"
#include "rspin/germ.hpp"
#include "rspin/numerology.hpp"
#include "rspin/orbit.hpp"
#include "rspin/winding.hpp"

using namespace rspin;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

std::string cli_out(const std::vector<std::string>& args, int& code) {
  std::ostringstream out, err;
  code = run_cli(args, out, err);
  return out.str();
}

std::vector<int64_t> random_vec(std::mt19937_64& rng, int64_t dim) {
  std::vector<int64_t> v(static_cast<size_t>(dim));
  for (auto& x : v) x = static_cast<int64_t>(rng() % 9) - 4;
  return v;
}

// ---- 1: the frozen small-multidegree table, byte for byte, < 1 s ----------

bool criterion_table() {
  const std::string expected =
      "1\t0\t-2\n"
      "2\t0\t-1\n"
      "3\t1\t0\n"
      "2,2\t1\t0\n"
      "4\t3\t1\n"
      "3,2\t4\t1\n"
      "2,2,2\t5\t1\n";
  Clock::time_point t0 = Clock::now();
  int code = 0;
  std::string out =
      cli_out({"numerology", "table", "--max-genus", "4", "--max-r", "1"},
              code);
  double elapsed = ms_since(t0);
  int code2 = 0;
  std::string again =
      cli_out({"numerology", "table", "--max-genus", "4", "--max-r", "1"},
              code2);
  return code == 0 && code2 == 0 && out == expected && again == expected &&
         elapsed < 1000.0;
}

// ---- 2: genus spot checks --------------------------------------------------

bool criterion_genus() {
  return genus({3, 3}) == 10 && genus({2, 2, 2}) == 5 && genus({4}) == 3;
}

// ---- 3: no multidegree of genus 2 (entries <= 8, n <= 6), < 5 s ------------

bool criterion_no_genus_two() {
  Clock::time_point t0 = Clock::now();
  for (int64_t n = 2; n <= 6; ++n) {
    std::vector<int64_t> d(static_cast<size_t>(n - 1), 1);
    for (;;) {
      if (genus(d) == 2) return false;
      size_t i = 0;
      while (i < d.size() && d[i] == 8) d[i++] = 1;
      if (i == d.size()) break;
      ++d[i];
    }
  }
  return ms_since(t0) < 5000.0;
}

// ---- 4: gluing identity over all multidegrees with entries <= 6, n <= 5 ----

bool criterion_gluing() {
  for (int64_t n = 2; n <= 5; ++n) {
    std::vector<int64_t> d(static_cast<size_t>(n - 1), 1);
    for (;;) {
      InductionStep s = induction_step(d);
      if (genus(s.plus) != genus(d) + genus(s.prime) + s.sheets - 1)
        return false;
      size_t i = 0;
      while (i < d.size() && d[i] == 6) d[i++] = 1;
      if (i == d.size()) break;
      ++d[i];
    }
  }
  return true;
}

// ---- 5: orbit partitions against the quadratic-form oracle, < 10 s ---------

bool orbits_match_oracle(int64_t g, uint64_t size_a, uint64_t size_b) {
  OrbitReport rep = enumerate_orbits(g, 2);
  if (rep.orbits.size() != 2) return false;
  uint64_t s0 = rep.orbits[0].size, s1 = rep.orbits[1].size;
  if (!((s0 == size_a && s1 == size_b) || (s0 == size_b && s1 == size_a)))
    return false;
  for (const OrbitRecord& o : rep.orbits)
    if (!o.arf || !o.arf_constant) return false;
  if (*rep.orbits[0].arf == *rep.orbits[1].arf) return false;

  // independent oracle: count tuples per brute-force Arf class and insist
  // each orbit is exactly its class
  TupleSystem sys(g, 2);
  uint64_t by_class[2] = {0, 0};
  for (uint64_t t = 0; t < sys.count(); ++t) {
    int a = oracle::arf_of_tuple(sys.decode(t), g);
    if (a != 0 && a != 1) return false;
    ++by_class[a];
  }
  for (const OrbitRecord& o : rep.orbits) {
    if (by_class[static_cast<size_t>(*o.arf)] != o.size) return false;
    if (oracle::arf_of_tuple(sys.decode(o.rep), g) != *o.arf) return false;
  }
  return verify_witnesses(rep);
}

bool criterion_orbits() {
  Clock::time_point t0 = Clock::now();
  bool ok = orbits_match_oracle(2, 10, 6) && orbits_match_oracle(3, 36, 28);
  return ok && ms_since(t0) < 10000.0;
}

// ---- 6: Humphries relations act as identities ------------------------------

bool criterion_relations() {
  const std::pair<int64_t, int64_t> cases[] = {
      {2, 1}, {2, 2}, {3, 1}, {3, 2}, {3, 4}};
  for (auto [g, r] : cases) {
    TupleSystem sys(g, r);
    auto braids = [](int a, int b) {
      if (a == 0) return b == 4;
      return b == a + 1;
    };
    for (int a = 0; a < sys.gens(); ++a)
      for (int b = a + 1; b < sys.gens(); ++b)
        for (uint64_t t = 0; t < sys.count(); ++t)
          for (int s : {+1, -1}) {
            if (braids(a, b)) {
              if (sys.act(sys.act(sys.act(t, a, s), b, s), a, s) !=
                  sys.act(sys.act(sys.act(t, b, s), a, s), b, s))
                return false;
            } else {
              if (sys.act(sys.act(t, a, s), b, s) !=
                  sys.act(sys.act(t, b, s), a, s))
                return false;
            }
          }
  }
  return true;
}

// ---- 7: point-push formula vs the parallel-copy composite, 1000 states -----

bool criterion_point_push() {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int64_t> gd(1, 3), bd(1, 3), wd(-6, 6);
  const int64_t mods[] = {0, 0, 2, 3, 5};
  std::uniform_int_distribution<size_t> md(0, 4);
  for (int trial = 0; trial < 1000; ++trial) {
    int64_t g = gd(rng), b = bd(rng), r = mods[md(rng)];
    std::vector<int64_t> bvals(static_cast<size_t>(b));
    for (auto& v : bvals) v = wd(rng);
    WindingState s(SurfaceSig{g, b, r}, bvals);
    for (int i = 0; i < 3; ++i)
      s = s.add_marked(TrackedCurve{"m" + std::to_string(i),
                                    random_vec(rng, s.dim()), wd(rng)});
    std::vector<int64_t> beta = random_vec(rng, s.dim());
    int64_t j = std::uniform_int_distribution<int64_t>(0, b - 1)(rng);
    int64_t v = wd(rng);

    int64_t phi_d = s.boundary_values()[static_cast<size_t>(j)];
    std::vector<int64_t> d = s.boundary_class(j);
    std::vector<int64_t> beta_minus = beta;
    for (size_t i = 0; i < d.size(); ++i) beta_minus[i] -= d[i];
    WindingState composite =
        s.apply_twist(TrackedCurve{"bp", beta, v}, 1)
            .apply_twist(TrackedCurve{"bm", beta_minus, v - phi_d - 1}, -1);
    if (!(s.point_push(beta, j) == composite)) return false;
  }
  return true;
}

// ---- 8: lantern word vs boundary-twist product, 100 framed states ----------

bool criterion_lantern() {
  std::mt19937_64 rng(47);
  std::uniform_int_distribution<int64_t> wd(-6, 6);
  auto vec = [](std::initializer_list<int64_t> nonzero) {
    std::vector<int64_t> v(6, 0);
    for (int64_t i : nonzero) v[static_cast<size_t>(i)] = 1;
    return v;
  };
  for (int trial = 0; trial < 100; ++trial) {
    WindingState s(SurfaceSig{3, 0, 0}, {});
    for (int i = 0; i < 4; ++i)
      s = s.add_marked(
          TrackedCurve{"p" + std::to_string(i), random_vec(rng, 6), wd(rng)});
    int64_t w1 = wd(rng), w2 = wd(rng), w3 = wd(rng);
    TrackedCurve b1{"b1", vec({0}), w1};
    TrackedCurve b2{"b2", vec({2}), w2};
    TrackedCurve b3{"b3", vec({4}), w3};
    TrackedCurve b0{"b0", vec({0, 2, 4}), 2 + w1 + w2 + w3};
    TrackedCurve x{"x", vec({0, 2}), w1 + w2 + 1};
    TrackedCurve y{"y", vec({2, 4}), w2 + w3 + 1};
    TrackedCurve z{"z", vec({0, 4}), w1 + w3 + 1};
    WindingState lhs = s.apply_twist(x, 1).apply_twist(y, 1).apply_twist(z, 1);
    WindingState rhs = s.apply_twist(b0, 1)
                           .apply_twist(b1, 1)
                           .apply_twist(b2, 1)
                           .apply_twist(b3, 1);
    if (!(lhs == rhs)) return false;
  }
  return true;
}

// ---- 9: branched-cover pipeline on 200 random covers, < 5 s ----------------

bool criterion_covers() {
  Clock::time_point t0 = Clock::now();
  std::mt19937_64 rng(2026);
  for (int trial = 0; trial < 200; ++trial) {
    BranchData b = random_transitive_branch_data(rng);
    int64_t k = static_cast<int64_t>(b.transpositions.size());
    int64_t g = genus_rh(b);
    SpanningOrder span = select_spanning_order(b);  // must not throw
    ArcSystem sys = lift_arc_system(b, span);
    for (size_t m = 0; m < sys.stages.size(); ++m)
      if (sys.stages[m].chi != b.sheets - static_cast<int64_t>(m) - 1)
        return false;
    if (sys.chi_neighborhood != b.sheets - k) return false;
    if (sys.complement_disks != (2 - 2 * g) - sys.chi_neighborhood)
      return false;
    if (sys.complement_disks != b.sheets) return false;
  }
  return ms_since(t0) < 5000.0;
}

// ---- 10: versal quotient dimension and span behavior ------------------------

bool criterion_versal() {
  if (quotient_dimension() != 3) return false;
  Germ f = parse_germ("w - z^2");
  std::mt19937_64 rng(10);
  auto coeff = [&] { return static_cast<int64_t>(rng() % 11) - 5; };
  auto nonzero = [&] {
    for (;;) {
      int64_t v = coeff();
      if (v != 0) return v;
    }
  };
  for (int trial = 0; trial < 100; ++trial) {
    Germ h1{nonzero(), coeff(), coeff()};
    Germ h2{0, nonzero(), coeff()};
    Germ h3{nonzero(), coeff(), coeff()};
    SpanReport rep = versal_span_check(f, h1, h2, h3);
    if (!rep.conditions_hold || !rep.spans) return false;
    // zeroing the third function at the point must always break the span
    Germ h3_dead{0, coeff(), coeff()};
    if (versal_span_check(f, h1, h2, h3_dead).spans) return false;
  }
  return true;
}

// ---- 11: induction replays pass with the expected routing, < 10 s each -----

bool criterion_replay() {
  const std::pair<std::string, std::string> runs[] = {
      {"4", "gencriterion"},
      {"3,2", "gencriterion"},
      {"2,2,2", "assemblage_genset"},
  };
  for (const auto& [bd, route] : runs) {
    Clock::time_point t0 = Clock::now();
    int code = 0;
    std::string out = cli_out({"replay", "--bd", bd, "--json"}, code);
    if (ms_since(t0) >= 10000.0 || code != 0) return false;
    Certificate cert = Certificate::parse(out);
    if (!cert.verdict()) return false;
    bool routed = false;
    for (const CheckResult& c : cert.checks)
      if (c.name == "generation route")
        routed = c.passed && c.witness.rfind(route, 0) == 0;
    if (!routed) return false;
  }
  return true;
}

// ---- 12: criteria 5, 9, 11 are byte-identical across reruns ----------------

bool criterion_determinism() {
  for (int64_t g : {2, 3})
    if (enumerate_orbits(g, 2).to_json() != enumerate_orbits(g, 2).to_json())
      return false;
  const std::vector<std::string> selftest = {
      "cover", "selftest", "--count", "200", "--seed", "2026", "--json"};
  int c1 = 0, c2 = 0;
  if (cli_out(selftest, c1) != cli_out(selftest, c2) || c1 != 0 || c2 != 0)
    return false;
  for (const char* bd : {"4", "3,2", "2,2,2"}) {
    std::string first = cli_out({"replay", "--bd", bd, "--json"}, c1);
    std::string second = cli_out({"replay", "--bd", bd, "--json"}, c2);
    if (first != second || c1 != 0 || c2 != 0) return false;
  }
  return true;
}

}  // namespace

int main() {
  int failed = 0;
  auto report = [&](int n, bool ok, const std::string& what) {
    std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << n << ": "
              << what << "\n";
    if (!ok) ++failed;
  };
  auto guard = [](auto&& fn) {
    try {
      return fn();
    } catch (const std::exception& e) {
      std::cout << "  (threw: " << e.what() << ")\n";
      return false;
    }
  };

  report(1, guard(criterion_table),
         "small multidegree table, byte-stable, < 1 s");
  report(2, guard(criterion_genus),
         "genus spot checks g(3,3)=10, g(2,2,2)=5, g(4)=3");
  report(3, guard(criterion_no_genus_two),
         "no multidegree of genus 2 (entries <= 8, n <= 6), < 5 s");
  report(4, guard(criterion_gluing),
         "gluing identity for all entries <= 6, n <= 5");
  report(5, guard(criterion_orbits),
         "orbit partitions {10,6} and {36,28} with distinct constant Arf, "
         "oracle cross-checked, < 10 s");
  report(6, guard(criterion_relations),
         "Humphries relations act as identities, g in {2,3}, r in {1,2,4}");
  report(7, guard(criterion_point_push),
         "point-push equals the parallel-copy composite on 1000 states");
  report(8, guard(criterion_lantern),
         "lantern word equals the boundary-twist product on 100 framed "
         "states");
  report(9, guard(criterion_covers),
         "200 random branched covers: spanning, chi stages, N complement "
         "disks, < 5 s");
  report(10, guard(criterion_versal),
         "versal quotient has dimension 3; conditioned triples span, a "
         "vanishing h3 never does");
  report(11, guard(criterion_replay),
         "replays of 4 / 3,2 / 2,2,2 pass, routed "
         "gencriterion/gencriterion/assemblage_genset, < 10 s each");
  report(12, guard(criterion_determinism),
         "criteria 5, 9, 11 rerun byte-identical");

  std::cout << failed << " of 12 criteria failed\n";
  return failed;
}
