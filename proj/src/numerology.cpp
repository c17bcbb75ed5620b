#include "rspin/numerology.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace rspin {

Multidegree canonical(Multidegree d) {
  if (d.empty()) throw std::invalid_argument("empty multidegree");
  for (int64_t e : d)
    if (e < 1) throw std::invalid_argument("degrees must be positive");
  std::sort(d.begin(), d.end(), std::greater<int64_t>());
  return d;
}

int64_t ambient_dim(const Multidegree& d) {
  return static_cast<int64_t>(d.size()) + 1;
}

int64_t degree_product(const Multidegree& d) {
  int64_t p = 1;
  for (int64_t e : d) p *= e;
  return p;
}

int64_t spin_number(const Multidegree& d) {
  int64_t s = 0;
  for (int64_t e : d) s += e;
  return s - ambient_dim(d) - 1;
}

int64_t genus(const Multidegree& d) {
  int64_t r = spin_number(d);
  if (r < 0) return 0;
  int64_t nr = degree_product(d) * r;
  // N*r is always even: an even degree makes N even, and with all degrees odd
  // the spin number is even. Anything else is a bug, not a rounding problem.
  if (nr % 2 != 0) throw std::logic_error("odd degree-spin product");
  return (nr + 2) / 2;
}

bool is_reduced(const Multidegree& d) {
  if (d.size() == 1 && d[0] == 1) return true;
  for (int64_t e : d)
    if (e < 2) return false;
  return true;
}

InductionStep induction_step(const Multidegree& d) {
  Multidegree c = canonical(d);
  InductionStep step;
  step.sheets = degree_product(c);
  Multidegree plus = c, prime = c;
  plus.back() += 1;   // smallest entry, since sorted descending
  prime.back() = 1;
  step.plus = canonical(std::move(plus));
  step.prime = canonical(std::move(prime));
  return step;
}

namespace {

void collect(Multidegree& cur, int64_t max_entry, int64_t depth_left,
             const std::function<void(const Multidegree&)>& emit) {
  if (!cur.empty()) emit(cur);
  if (depth_left == 0) return;
  int64_t hi = cur.empty() ? max_entry : std::min<int64_t>(max_entry, cur.back());
  for (int64_t e = 2; e <= hi; ++e) {
    cur.push_back(e);
    collect(cur, max_entry, depth_left - 1, emit);
    cur.pop_back();
  }
}

}  // namespace

std::vector<TableRow> enumerate_reduced(int64_t max_genus, int64_t max_r) {
  if (max_genus < 0 && max_r < 0)
    throw std::invalid_argument("both bounds negative: empty query");

  // Termination bounds. A reduced multidegree with n >= 4 has all entries >= 2,
  // so N >= 2^(n-1) and r >= n-3, hence genus >= 2^(n-2)(n-3)+1. Grow n until
  // both filters are provably dead; the entry cap is likewise generous and the
  // exact filter below does the real work.
  int64_t n_max = 3;
  if (max_r >= 0) n_max = std::max<int64_t>(n_max, max_r + 3);
  if (max_genus >= 0) {
    int64_t n = 4;
    while ((int64_t(1) << (n - 2)) * (n - 3) + 1 <= max_genus) ++n;
    n_max = std::max(n_max, n - 1);
  }

  std::vector<TableRow> rows;
  auto consider = [&](const Multidegree& d) {
    int64_t g = genus(d), r = spin_number(d);
    if (g <= max_genus || r <= max_r) {
      Multidegree copy = d;  // already descending by construction
      rows.push_back({copy, g, r});
    }
  };

  for (int64_t n = 2; n <= n_max; ++n) {
    int64_t len = n - 1;
    // cap on the largest entry: past it both r and genus exceed the bounds
    int64_t cap = 3;
    cap = std::max(cap, max_r + 5 - n);
    cap = std::max(cap, 2 * max_genus - 2);
    cap = std::max<int64_t>(cap, 5 - n);
    Multidegree cur;
    collect(cur, cap, len, [&](const Multidegree& d) {
      if (static_cast<int64_t>(d.size()) == len) consider(d);
    });
    if (n == 2) consider({1});  // the one reduced multidegree with an entry 1
  }

  std::sort(rows.begin(), rows.end(), [](const TableRow& a, const TableRow& b) {
    if (a.genus != b.genus) return a.genus < b.genus;
    if (a.r != b.r) return a.r < b.r;
    if (a.degrees.size() != b.degrees.size())
      return a.degrees.size() < b.degrees.size();
    return a.degrees < b.degrees;
  });
  return rows;
}

std::string format_table_tsv(const std::vector<TableRow>& rows) {
  std::ostringstream out;
  for (const TableRow& row : rows)
    out << degrees_to_string(row.degrees) << '\t' << row.genus << '\t' << row.r
        << '\n';
  return out.str();
}

std::string degrees_to_string(const Multidegree& d) {
  std::ostringstream out;
  for (size_t i = 0; i < d.size(); ++i) {
    if (i) out << ',';
    out << d[i];
  }
  return out.str();
}

Multidegree parse_degrees(const std::string& s) {
  Multidegree d;
  std::istringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part.empty()) throw std::invalid_argument("bad multidegree: " + s);
    size_t pos = 0;
    int64_t v = std::stoll(part, &pos);
    if (pos != part.size()) throw std::invalid_argument("bad multidegree: " + s);
    d.push_back(v);
  }
  if (d.empty()) throw std::invalid_argument("bad multidegree: " + s);
  return canonical(d);
}

}  // namespace rspin
