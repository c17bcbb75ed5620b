#include "rspin/quadratic_form.hpp"

#include <stdexcept>

namespace rspin {

namespace {

int mask_correction(uint64_t mask, const std::vector<std::vector<int>>& gram) {
  int c = 0;
  const size_t n = gram.size();
  for (size_t i = 0; i < n; ++i) {
    if (!(mask >> i & 1)) continue;
    for (size_t j = i + 1; j < n; ++j)
      if (mask >> j & 1) c ^= gram[i][j] & 1;
  }
  return c;
}

}  // namespace

SymplecticExtraction extract_symplectic_gf2(
    const std::vector<std::vector<int>>& gram) {
  const size_t n = gram.size();
  if (n > 64) throw std::invalid_argument("too many generators (max 64)");
  for (const auto& row : gram)
    if (row.size() != n) throw std::invalid_argument("gram not square");
  for (size_t i = 0; i < n; ++i) {
    if (gram[i][i] & 1) throw std::invalid_argument("gram diagonal must vanish");
    for (size_t j = 0; j < n; ++j)
      if ((gram[i][j] & 1) != (gram[j][i] & 1))
        throw std::invalid_argument("gram not symmetric mod 2");
  }

  // working vectors as generator masks; pairings recomputed from gram
  std::vector<uint64_t> vecs(n);
  for (size_t i = 0; i < n; ++i) vecs[i] = uint64_t(1) << i;

  auto pair_masks = [&](uint64_t a, uint64_t b) {
    int p = 0;
    for (size_t i = 0; i < n; ++i) {
      if (!(a >> i & 1)) continue;
      for (size_t j = 0; j < n; ++j)
        if (b >> j & 1) p ^= gram[i][j] & 1;
    }
    return p;
  };

  SymplecticExtraction out;
  std::vector<bool> used(n, false);
  while (true) {
    // first unused pair with nonzero pairing, lowest indices
    size_t ia = n, ib = n;
    for (size_t i = 0; i < n && ia == n; ++i) {
      if (used[i]) continue;
      for (size_t j = i + 1; j < n; ++j) {
        if (used[j]) continue;
        if (pair_masks(vecs[i], vecs[j])) {
          ia = i;
          ib = j;
          break;
        }
      }
    }
    if (ia == n) break;
    uint64_t a = vecs[ia], b = vecs[ib];
    used[ia] = used[ib] = true;
    SymplecticPair p;
    p.a_mask = a;
    p.b_mask = b;
    p.a_corr = mask_correction(a, gram);
    p.b_corr = mask_correction(b, gram);
    out.pairs.push_back(p);
    // kill the pair off every remaining vector: w += <w,b>a + <w,a>b
    for (size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      uint64_t w = vecs[k];
      if (pair_masks(w, b)) w ^= a;
      if (pair_masks(w, a)) w ^= b;
      vecs[k] = w;
    }
  }
  for (size_t k = 0; k < n; ++k) {
    if (used[k]) continue;
    out.leftover_masks.push_back(vecs[k]);
    out.leftover_corrs.push_back(mask_correction(vecs[k], gram));
  }
  return out;
}

int arf_from_extraction(const SymplecticExtraction& ex, uint64_t q_bits) {
  int arf = 0;
  for (const SymplecticPair& p : ex.pairs)
    arf ^= eval_refinement(p.a_mask, p.a_corr, q_bits) &
           eval_refinement(p.b_mask, p.b_corr, q_bits);
  return arf;
}

}  // namespace rspin
