#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rspin {

// The finite action on spin-value tuples for a closed genus-g surface with a
// Humphries-type curve system: a 2g-chain c_1..c_2g plus the auxiliary c_0,
// which meets only c_4. A tuple stores the chain values v_1..v_2g in Z/r;
// the auxiliary value is the derived one, v_0 = v_1 + v_3 + 1, coming from
// coherence on the pants decomposition of the c_1,c_2,c_3 chain neighborhood.
// Tuples are addressed by their base-r index with v_1 least significant.
class TupleSystem {
 public:
  TupleSystem(int64_t genus, int64_t r);

  int64_t genus() const { return g_; }
  int64_t modulus() const { return r_; }
  uint64_t count() const { return count_; }
  int gens() const { return static_cast<int>(2 * g_ + 1); }  // c_0..c_2g
  int moves() const { return 2 * gens(); }

  std::vector<int64_t> decode(uint64_t idx) const;
  uint64_t encode(const std::vector<int64_t>& values) const;

  // current value of generator curve `gen` (0 = auxiliary, 1..2g = chain)
  int64_t curve_value(uint64_t idx, int gen) const;

  // twist about generator `gen` with the given sign applied to the tuple
  uint64_t act(uint64_t idx, int gen, int sign) const;

  // move index m <-> (gen, sign): m = 2*gen + (sign < 0)
  uint64_t act_move(uint64_t idx, int move) const {
    return act(idx, move / 2, move % 2 ? -1 : +1);
  }

 private:
  int64_t g_, r_;
  uint64_t count_;
};

struct OrbitRecord {
  uint32_t rep = 0;     // minimal tuple index in the orbit (BFS seed)
  uint64_t size = 0;
  std::optional<int> arf;                        // r even only
  bool arf_constant = true;                      // over the whole orbit
  uint32_t witness_target = 0;                   // maximal tuple index
  std::vector<std::pair<int, int>> witness;      // (gen, sign) rep -> target
};

struct OrbitReport {
  int64_t genus = 0, r = 0;
  uint64_t tuple_count = 0;
  std::vector<OrbitRecord> orbits;   // ordered by rep
  std::string to_json() const;       // stable serialization
};

// BFS over all tuples under all generator moves. Deterministic: the partition,
// representatives, and witness words are identical across thread counts.
// Preconditions: g >= 2, 1 <= r, r | 2g-2, r^2g <= 2^20.
OrbitReport enumerate_orbits(int64_t genus, int64_t r);
// Sequential reference implementation (same algorithm, no thread pool); the
// parallel kernel is required to reproduce its output byte for byte.
OrbitReport enumerate_orbits_serial(int64_t genus, int64_t r);

// replay every witness word and confirm it lands on its target
bool verify_witnesses(const OrbitReport& report);

// Finite-level stabilizer probe. Admissible moves (current value 0) must fix
// any base tuple; allowing moves about curves whose current value is divisible
// by r_prime explores within the mod-r_prime congruence fiber of the base.
struct StabilizerReport {
  bool fixed_under_admissible = false;
  uint64_t reachable = 0;       // moves allowed at values = 0 mod r_prime
  uint64_t fiber = 0;           // tuples congruent to base mod r_prime
  bool matches_fiber = false;
  bool stayed_in_fiber = false; // sanity: reachability never leaves the fiber
};
StabilizerReport stabilizer_orbit_check(int64_t genus, int64_t r,
                                        const std::vector<int64_t>& base,
                                        int64_t r_prime);

}  // namespace rspin
