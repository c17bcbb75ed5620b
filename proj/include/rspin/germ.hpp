#pragma once

#include <string>

#include "rspin/rational.hpp"

namespace rspin {

// ============================================================
// tacnode germ arithmetic
// ============================================================

// Element of the local quotient algebra C[z,w]/(w, z^3), i.e. a truncated
// series c0 + c1 z + c2 z^2. Anything divisible by w or z^3 is already gone.
struct Germ {
  Frac c0 = 0, c1 = 0, c2 = 0;

  bool is_zero() const { return c0.is_zero() && c1.is_zero() && c2.is_zero(); }

  friend Germ operator+(const Germ& a, const Germ& b) {
    return {a.c0 + b.c0, a.c1 + b.c1, a.c2 + b.c2};
  }
  friend Germ operator-(const Germ& a, const Germ& b) {
    return {a.c0 - b.c0, a.c1 - b.c1, a.c2 - b.c2};
  }
  friend Germ operator*(const Germ& a, const Germ& b) {
    return {a.c0 * b.c0,
            a.c0 * b.c1 + a.c1 * b.c0,
            a.c0 * b.c2 + a.c1 * b.c1 + a.c2 * b.c0};
  }
  Germ operator-() const { return {-c0, -c1, -c2}; }
  friend bool operator==(const Germ& a, const Germ& b) {
    return a.c0 == b.c0 && a.c1 == b.c1 && a.c2 == b.c2;
  }
};

// dim of the quotient as a vector space (basis 1, z, z^2)
int64_t quotient_dimension();

// Parse an integer polynomial expression in z and w into the quotient.
// Grammar: sums/differences of products of powers, parentheses, implicit
// multiplication ("2z", "z(1+z)"), unary minus. Throws invalid_argument.
Germ parse_germ(const std::string& text);

// ============================================================
// versal deformation span check
// ============================================================

// Report on whether {f*h1, h2, h3} spans the quotient algebra, together
// with the classical pointwise conditions on the h_i at the singular point:
// h1(q) != 0;  h2(q) = 0 and dh2/dz(q) != 0;  h3(q) != 0.
struct SpanReport {
  bool spans = false;
  int64_t matrix_rank = 0;
  bool conditions_hold = false;
  bool conditions_imply_spanning = false;
};

SpanReport versal_span_check(const Germ& f, const Germ& h1, const Germ& h2,
                             const Germ& h3);

}  // namespace rspin
