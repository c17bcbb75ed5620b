#include <set>
#include <stdexcept>

#include "doctest.h"
#include "rspin/numerology.hpp"

using namespace rspin;

TEST_CASE("canonical form and basic invariants") {
  CHECK(canonical({2, 3}) == Multidegree{3, 2});
  CHECK(canonical({1}) == Multidegree{1});
  CHECK_THROWS_AS(canonical({}), std::invalid_argument);
  CHECK_THROWS_AS(canonical({3, 0}), std::invalid_argument);

  CHECK(ambient_dim({4}) == 2);
  CHECK(ambient_dim({3, 2}) == 3);
  CHECK(degree_product({3, 2}) == 6);
  CHECK(degree_product({2, 2, 2}) == 8);

  CHECK(spin_number({1}) == -2);
  CHECK(spin_number({2}) == -1);
  CHECK(spin_number({3}) == 0);
  CHECK(spin_number({4}) == 1);
  CHECK(spin_number({3, 2}) == 1);
  CHECK(spin_number({2, 2, 2}) == 1);
  CHECK(spin_number({3, 3}) == 2);
}

TEST_CASE("genus spot values") {
  CHECK(genus({3, 3}) == 10);
  CHECK(genus({2, 2, 2}) == 5);
  CHECK(genus({4}) == 3);
  CHECK(genus({5}) == 6);
  CHECK(genus({3, 2}) == 4);
  CHECK(genus({2, 2}) == 1);
  CHECK(genus({4, 2}) == 9);
  // negative spin number clamps to the rational cases
  CHECK(genus({1}) == 0);
  CHECK(genus({2}) == 0);
  CHECK(genus({2, 1}) == 0);
}

TEST_CASE("degree-spin product is always even") {
  // exhaustive over small multidegrees; genus() would throw otherwise
  for (int64_t n = 2; n <= 5; ++n) {
    std::vector<int64_t> d(static_cast<size_t>(n - 1), 1);
    for (;;) {
      CHECK((degree_product(d) * spin_number(d)) % 2 == 0);
      (void)genus(d);
      size_t i = 0;
      while (i < d.size() && d[i] == 6) d[i++] = 1;
      if (i == d.size()) break;
      ++d[i];
    }
  }
}

TEST_CASE("reducedness") {
  CHECK(is_reduced({1}));
  CHECK(is_reduced({2}));
  CHECK(is_reduced({2, 2}));
  CHECK(!is_reduced({3, 1}));
  CHECK(!is_reduced({2, 2, 1}));
}

TEST_CASE("induction step") {
  InductionStep s4 = induction_step({4});
  CHECK(s4.plus == Multidegree{5});
  CHECK(s4.prime == Multidegree{1});
  CHECK(s4.sheets == 4);
  // identity check from the table: 6 = 3 + 0 + 4 - 1
  CHECK(genus(s4.plus) == genus({4}) + genus(s4.prime) + s4.sheets - 1);

  InductionStep s32 = induction_step({3, 2});
  CHECK(s32.plus == Multidegree{3, 3});
  CHECK(s32.prime == Multidegree{3, 1});
  CHECK(s32.sheets == 6);

  InductionStep s222 = induction_step({2, 2, 2});
  CHECK(s222.plus == Multidegree{3, 2, 2});
  CHECK(s222.prime == Multidegree{2, 2, 1});
  CHECK(s222.sheets == 8);
}

TEST_CASE("gluing identity over all small multidegrees") {
  for (int64_t n = 2; n <= 5; ++n) {
    std::vector<int64_t> d(static_cast<size_t>(n - 1), 1);
    for (;;) {
      InductionStep s = induction_step(d);
      CHECK(genus(s.plus) == genus(d) + genus(s.prime) + s.sheets - 1);
      size_t i = 0;
      while (i < d.size() && d[i] == 6) d[i++] = 1;
      if (i == d.size()) break;
      ++d[i];
    }
  }
}

TEST_CASE("small table is frozen byte for byte") {
  std::vector<TableRow> rows = enumerate_reduced(4, 1);
  const std::string expected =
      "1\t0\t-2\n"
      "2\t0\t-1\n"
      "3\t1\t0\n"
      "2,2\t1\t0\n"
      "4\t3\t1\n"
      "3,2\t4\t1\n"
      "2,2,2\t5\t1\n";
  CHECK(format_table_tsv(rows) == expected);
}

TEST_CASE("enumeration edge cases") {
  // only the two rational cases fall under (0, -1)
  std::vector<TableRow> small = enumerate_reduced(0, -1);
  REQUIRE(small.size() == 2);
  CHECK(small[0].degrees == Multidegree{1});
  CHECK(small[1].degrees == Multidegree{2});

  CHECK_THROWS_AS(enumerate_reduced(-1, -1), std::invalid_argument);

  bool found = false;
  for (const TableRow& row : enumerate_reduced(10, 2))
    if (row.degrees == Multidegree{3, 3}) {
      found = true;
      CHECK(row.genus == 10);
      CHECK(row.r == 2);
    }
  CHECK(found);
}

TEST_CASE("enumeration matches a brute-force scan") {
  // independent oracle: scan everything reduced with entries <= 9, n <= 6 and
  // apply the literal filter
  const int64_t G = 6, R = 1;
  std::set<Multidegree> expected;
  for (int64_t n = 2; n <= 6; ++n) {
    std::vector<int64_t> d(static_cast<size_t>(n - 1), 1);
    for (;;) {
      Multidegree c = canonical(d);
      if (is_reduced(c) && (genus(c) <= G || spin_number(c) <= R))
        expected.insert(c);
      size_t i = 0;
      while (i < d.size() && d[i] == 9) d[i++] = 1;
      if (i == d.size()) break;
      ++d[i];
    }
  }
  std::set<Multidegree> got;
  for (const TableRow& row : enumerate_reduced(G, R)) got.insert(row.degrees);
  CHECK(got == expected);
}

TEST_CASE("no multidegree has genus 2") {
  for (int64_t n = 2; n <= 6; ++n) {
    std::vector<int64_t> d(static_cast<size_t>(n - 1), 1);
    for (;;) {
      CHECK(genus(d) != 2);
      size_t i = 0;
      while (i < d.size() && d[i] == 8) d[i++] = 1;
      if (i == d.size()) break;
      ++d[i];
    }
  }
}

TEST_CASE("degree string round trip") {
  CHECK(degrees_to_string({3, 2}) == "3,2");
  CHECK(parse_degrees("3,2") == Multidegree{3, 2});
  CHECK(parse_degrees("2,3") == Multidegree{3, 2});  // canonicalized
  CHECK(parse_degrees("4") == Multidegree{4});
  CHECK_THROWS_AS(parse_degrees(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_degrees("3,,2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_degrees("3,x"), std::invalid_argument);
  CHECK_THROWS_AS(parse_degrees("0"), std::invalid_argument);
}
