#pragma once

#include <cstdint>
#include <vector>

namespace rspin {

// GF(2) symplectic extraction for Arf computation. Vectors are subsets of the
// input generators, stored as uint64 masks (at most 64 generators).
//
// Given the mod-2 Gram matrix of a generating system, produce hyperbolic
// pairs (a_i, b_i) as generator-masks. Each mask S carries a correction term
// corr(S) = sum_{i<j in S} gram[i][j] mod 2, so that a quadratic refinement q
// defined on generators extends by q(sum_S e_i) = sum_S q(e_i) + corr(S).
// Leftover masks are everything the reduction could not pair (the radical of
// the span); callers decide whether those are acceptable.
struct SymplecticPair {
  uint64_t a_mask = 0, b_mask = 0;
  int a_corr = 0, b_corr = 0;
};

struct SymplecticExtraction {
  std::vector<SymplecticPair> pairs;
  std::vector<uint64_t> leftover_masks;
  std::vector<int> leftover_corrs;
};

SymplecticExtraction extract_symplectic_gf2(
    const std::vector<std::vector<int>>& gram);

// evaluate the refinement on a mask: q_bits holds q(e_i) in bit i
inline int eval_refinement(uint64_t mask, int corr, uint64_t q_bits) {
  return (__builtin_popcountll(mask & q_bits) + corr) & 1;
}

// Arf = sum q(a_i) q(b_i) over the extracted pairs
int arf_from_extraction(const SymplecticExtraction& ex, uint64_t q_bits);

}  // namespace rspin
