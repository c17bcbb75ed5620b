#pragma once

#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace rspin {

// Exact rational arithmetic over int64. The linear systems in this project are
// tiny (a handful of coherence constraints, 3x3 germ matrices), so int64
// numerators never get anywhere near overflow once kept reduced.
struct Frac {
  int64_t num = 0;
  int64_t den = 1;

  Frac() = default;
  Frac(int64_t n) : num(n), den(1) {}
  Frac(int64_t n, int64_t d) : num(n), den(d) { normalize(); }

  void normalize() {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
  }

  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }

  friend Frac operator+(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Frac operator-(const Frac& a, const Frac& b) {
    return Frac(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Frac operator*(const Frac& a, const Frac& b) {
    return Frac(a.num * b.num, a.den * b.den);
  }
  friend Frac operator/(const Frac& a, const Frac& b) {
    if (b.num == 0) throw std::invalid_argument("division by zero");
    return Frac(a.num * b.den, a.den * b.num);
  }
  Frac operator-() const { return Frac(-num, den); }
  friend bool operator==(const Frac& a, const Frac& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Frac& a, const Frac& b) { return !(a == b); }
};

// Row-reduce in place; returns the rank.
inline int row_reduce(std::vector<std::vector<Frac>>& m) {
  if (m.empty()) return 0;
  const size_t rows = m.size(), cols = m[0].size();
  size_t r = 0;
  for (size_t c = 0; c < cols && r < rows; ++c) {
    size_t piv = r;
    while (piv < rows && m[piv][c].is_zero()) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Frac lead = m[r][c];
    for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] / lead;
    for (size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c].is_zero()) continue;
      Frac f = m[i][c];
      for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
    }
    ++r;
  }
  return static_cast<int>(r);
}

inline int matrix_rank(std::vector<std::vector<Frac>> m) { return row_reduce(m); }

// Solve A x = b as far as the system determines it: each unknown either gets a
// unique value or is reported free. Inconsistent systems are flagged.
struct LinearSolution {
  bool consistent = true;
  std::vector<std::optional<Frac>> values;  // one entry per unknown
};

inline LinearSolution solve_partial(std::vector<std::vector<Frac>> a,
                                    std::vector<Frac> b) {
  const size_t rows = a.size();
  const size_t cols = rows ? a[0].size() : 0;
  LinearSolution out;
  out.values.assign(cols, std::nullopt);
  // augmented matrix
  for (size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
  row_reduce(a);
  for (size_t i = 0; i < rows; ++i) {
    size_t lead = 0;
    while (lead < cols && a[i][lead].is_zero()) ++lead;
    if (lead == cols) {
      if (!a[i][cols].is_zero()) out.consistent = false;  // 0 = nonzero
      continue;
    }
    // pivot row determines its variable only if no free column interferes
    bool clean = true;
    for (size_t j = lead + 1; j < cols; ++j)
      if (!a[i][j].is_zero()) clean = false;
    if (clean) out.values[lead] = a[i][cols];
  }
  return out;
}

}  // namespace rspin
