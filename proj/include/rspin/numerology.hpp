#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace rspin {

// A multidegree is a nonempty list of positive hypersurface degrees, kept
// sorted descending (canonical form). It cuts out a curve in an ambient
// projective space of dimension size() + 1.
using Multidegree = std::vector<int64_t>;

Multidegree canonical(Multidegree d);

int64_t ambient_dim(const Multidegree& d);     // n = size + 1
int64_t degree_product(const Multidegree& d);  // N
int64_t spin_number(const Multidegree& d);     // r = sum(d) - n - 1
int64_t genus(const Multidegree& d);           // (N*r + 2)/2 for r >= 0, else 0

// reduced means no degree-1 hypersurface can be eliminated: either the plane
// curve case (n = 2, single degree 1) or all degrees >= 2
bool is_reduced(const Multidegree& d);

// One step of the degeneration ladder: bump the smallest degree (plus) or
// replace it by a hyperplane (prime). sheets = degree product of d itself.
struct InductionStep {
  Multidegree plus;
  Multidegree prime;
  int64_t sheets = 0;
};
InductionStep induction_step(const Multidegree& d);

struct TableRow {
  Multidegree degrees;
  int64_t genus = 0;
  int64_t r = 0;
};

// All reduced multidegrees with genus <= max_genus or spin number <= max_r,
// sorted by (genus, r, ambient dim, degrees). The set is finite for any bounds
// (both genus and r grow with dimension and degree).
std::vector<TableRow> enumerate_reduced(int64_t max_genus, int64_t max_r);

// one row per line: "degrees<TAB>genus<TAB>r", degrees comma-joined
std::string format_table_tsv(const std::vector<TableRow>& rows);

std::string degrees_to_string(const Multidegree& d);  // "3,2"
Multidegree parse_degrees(const std::string& s);      // "3,2" -> {3,2}

}  // namespace rspin
