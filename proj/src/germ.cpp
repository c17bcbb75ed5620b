#include "rspin/germ.hpp"

#include <cctype>
#include <stdexcept>

namespace rspin {

int64_t quotient_dimension() { return 3; }

// ============================================================
// parser
// ============================================================

namespace {

// recursive descent over: expr := ['-'] term (('+'|'-') term)*
//                         term := factor (factor | '*' factor)*
//                         factor := base ('^' INT)?
//                         base := INT | 'z' | 'w' | '(' expr ')'
struct Parser {
  const std::string& s;
  size_t pos = 0;

  explicit Parser(const std::string& text) : s(text) {}

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos])))
      ++pos;
  }

  char peek() {
    skip_ws();
    return pos < s.size() ? s[pos] : '\0';
  }

  [[noreturn]] void fail(const std::string& why) {
    throw std::invalid_argument("bad germ expression at position " +
                                std::to_string(pos) + ": " + why);
  }

  int64_t parse_int() {
    skip_ws();
    size_t start = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos])))
      ++pos;
    if (pos == start) fail("expected an integer");
    return std::stoll(s.substr(start, pos - start));
  }

  // a base can start a new (implicitly multiplied) factor
  bool starts_base(char c) {
    return std::isdigit(static_cast<unsigned char>(c)) || c == 'z' ||
           c == 'w' || c == '(';
  }

  Germ parse_base() {
    char c = peek();
    if (c == '(') {
      ++pos;
      Germ inner = parse_expr();
      if (peek() != ')') fail("expected ')'");
      ++pos;
      return inner;
    }
    if (c == 'z') {
      ++pos;
      return {0, 1, 0};
    }
    if (c == 'w') {
      ++pos;
      return {0, 0, 0};  // w is in the defining ideal
    }
    if (std::isdigit(static_cast<unsigned char>(c))) return {parse_int(), 0, 0};
    fail("expected a number, z, w, or '('");
  }

  Germ parse_factor() {
    Germ base = parse_base();
    if (peek() == '^') {
      ++pos;
      int64_t e = parse_int();
      if (e < 0) fail("negative exponent");
      Germ out{1, 0, 0};
      for (int64_t i = 0; i < e; ++i) out = out * base;
      return out;
    }
    return base;
  }

  Germ parse_term() {
    Germ out = parse_factor();
    for (;;) {
      char c = peek();
      if (c == '*') {
        ++pos;
        out = out * parse_factor();
      } else if (starts_base(c)) {
        out = out * parse_factor();
      } else {
        return out;
      }
    }
  }

  Germ parse_expr() {
    bool neg = false;
    if (peek() == '-') {
      ++pos;
      neg = true;
    }
    Germ out = parse_term();
    if (neg) out = -out;
    for (;;) {
      char c = peek();
      if (c == '+') {
        ++pos;
        out = out + parse_term();
      } else if (c == '-') {
        ++pos;
        out = out - parse_term();
      } else {
        return out;
      }
    }
  }
};

}  // namespace

Germ parse_germ(const std::string& text) {
  Parser p(text);
  Germ out = p.parse_expr();
  p.skip_ws();
  if (p.pos != text.size()) p.fail("trailing input");
  return out;
}

// ============================================================
// span check
// ============================================================

SpanReport versal_span_check(const Germ& f, const Germ& h1, const Germ& h2,
                             const Germ& h3) {
  SpanReport rep;
  Germ fh1 = f * h1;
  std::vector<std::vector<Frac>> rows = {
      {fh1.c0, fh1.c1, fh1.c2},
      {h2.c0, h2.c1, h2.c2},
      {h3.c0, h3.c1, h3.c2},
  };
  rep.matrix_rank = matrix_rank(rows);
  rep.spans = rep.matrix_rank == quotient_dimension();
  rep.conditions_hold = !h1.c0.is_zero() && h2.c0.is_zero() &&
                        !h2.c1.is_zero() && !h3.c0.is_zero();
  rep.conditions_imply_spanning = !rep.conditions_hold || rep.spans;
  return rep;
}

}  // namespace rspin
