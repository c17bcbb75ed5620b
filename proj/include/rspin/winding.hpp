#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace rspin {

// Surface bookkeeping: genus, boundary count, and the value modulus.
// r = 0 means integer-valued framings; r > 0 means values live in Z/r.
struct SurfaceSig {
  int64_t genus = 0;
  int64_t boundary = 0;
  int64_t r = 0;
};

// A curve we follow through twists and pushes: an integer homology vector in
// the state's coordinates plus its winding value. The value travels with the
// curve — winding is not linear on homology, so it cannot be recomputed.
struct TrackedCurve {
  std::string name;
  std::vector<int64_t> homology;
  int64_t winding = 0;
};

// A declared bounding family: the named curves positively bound a subsurface
// of Euler characteristic chi, so their values must sum to chi (mod r).
struct CoherenceConstraint {
  std::vector<std::string> curves;
  int64_t chi = 0;
};

// Twist-linearity evaluated pointwise: value of d after k twists about c.
int64_t twist_value(int64_t r, int64_t phi_d, int64_t phi_c, int64_t pairing,
                    int64_t exponent);

bool coherence_check(const std::vector<int64_t>& windings, int64_t chi,
                     int64_t r);

// Winding-number state over a fixed coordinate system. Coordinates are:
// 2g chain classes, then max(boundary-1, 0) boundary classes, then one extra
// per handle extension. The skew pairing is stored explicitly; the default is
// the chain form <c_i, c_{i+1}> = +1 with boundary coordinates radical.
// All operations are value-semantic: they return a new state.
class WindingState {
 public:
  WindingState(SurfaceSig sig, std::vector<int64_t> boundary_values);
  WindingState(SurfaceSig sig, std::vector<int64_t> boundary_values,
               std::vector<std::vector<int64_t>> pairing);

  const SurfaceSig& sig() const { return sig_; }
  int64_t dim() const { return static_cast<int64_t>(pairing_.size()); }
  int64_t extras() const { return extras_; }
  const std::vector<int64_t>& boundary_values() const { return boundary_values_; }
  const std::vector<TrackedCurve>& marked() const { return marked_; }
  const std::vector<CoherenceConstraint>& constraints() const {
    return constraints_;
  }
  const std::vector<std::vector<int64_t>>& pairing_matrix() const {
    return pairing_;
  }

  WindingState add_marked(TrackedCurve c) const;
  WindingState add_constraint(CoherenceConstraint c) const;
  const TrackedCurve& curve(const std::string& name) const;
  bool has_curve(const std::string& name) const;

  int64_t pair(const std::vector<int64_t>& a,
               const std::vector<int64_t>& b) const;

  // homology class of boundary component j (boundary classes sum to zero; a
  // one-boundary surface has a null-homologous boundary)
  std::vector<int64_t> boundary_class(int64_t j) const;

  // negate homology and winding of one tracked curve (orientation reversal)
  WindingState reverse_curve(const std::string& name) const;

  // Dehn twist about a tracked curve, applied to every tracked curve:
  // homology by transvection, winding by twist-linearity.
  WindingState apply_twist(const std::string& about, int64_t exponent) const;
  // same, but the twisting curve need not be tracked
  WindingState apply_twist(const TrackedCurve& about, int64_t exponent) const;

  // Point push about a loop based in boundary component d: winding changes by
  // -(phi(d)+1)<c, beta>, homology by the two-parallel-copy composite.
  WindingState point_push(const std::vector<int64_t>& beta_class,
                          int64_t boundary_index) const;

  // true iff every declared constraint holds
  bool check_constraints() const;

  // gcd of boundary values + 1 (and r); 0 only when r = 0 and all values -1
  int64_t signature_gcd() const;

  // Arf invariant: needs r even and every boundary value odd (domain
  // conditions -> nullopt). The marked curves must span a symplectic basis
  // mod 2 (anything else is a caller error -> logic_error).
  std::optional<int64_t> arf() const;

  // attach a handle: one new coordinate with the given pairings against the
  // existing ones; the new curve is tracked with value w. Framings only.
  WindingState extend_over_handle(const std::string& name,
                                  const std::vector<int64_t>& new_pairings,
                                  int64_t w) const;
  // drop the most recent handle extension (section of forgetting)
  WindingState drop_extension() const;

  WindingState reduce_mod(int64_t r_new) const;

  std::string to_json() const;
  static WindingState from_json(const std::string& text);

  friend bool operator==(const WindingState& a, const WindingState& b);

 private:
  SurfaceSig sig_;
  int64_t extras_ = 0;
  std::vector<int64_t> boundary_values_;
  std::vector<std::vector<int64_t>> pairing_;
  std::vector<TrackedCurve> marked_;
  std::vector<CoherenceConstraint> constraints_;

  int64_t base_dim() const;
  int64_t norm(int64_t v) const;
};

}  // namespace rspin
