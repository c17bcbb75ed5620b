#include "rspin/winding.hpp"

#include <algorithm>
#include <stdexcept>
#include <tuple>

#include "json.hpp"
#include "rspin/quadratic_form.hpp"
#include "rspin/residue.hpp"

namespace rspin {

int64_t twist_value(int64_t r, int64_t phi_d, int64_t phi_c, int64_t pairing,
                    int64_t exponent) {
  return norm_mod(phi_d + exponent * pairing * phi_c, r);
}

bool coherence_check(const std::vector<int64_t>& windings, int64_t chi,
                     int64_t r) {
  int64_t sum = 0;
  for (int64_t w : windings) sum += w;
  return norm_mod(sum - chi, r) == 0;
}

namespace {

std::vector<std::vector<int64_t>> chain_pairing(int64_t genus,
                                                int64_t boundary) {
  // garbage signatures are rejected by the constructor; don't blow up first
  int64_t dim =
      2 * std::max<int64_t>(genus, 0) + std::max<int64_t>(boundary - 1, 0);
  std::vector<std::vector<int64_t>> j(dim, std::vector<int64_t>(dim, 0));
  for (int64_t i = 0; i + 1 < 2 * genus; ++i) {
    j[i][i + 1] = 1;
    j[i + 1][i] = -1;
  }
  return j;  // boundary coordinates stay radical
}

}  // namespace

WindingState::WindingState(SurfaceSig sig, std::vector<int64_t> boundary_values)
    : WindingState(sig, std::move(boundary_values),
                   chain_pairing(sig.genus, sig.boundary)) {}

WindingState::WindingState(SurfaceSig sig, std::vector<int64_t> boundary_values,
                           std::vector<std::vector<int64_t>> pairing)
    : sig_(sig),
      boundary_values_(std::move(boundary_values)),
      pairing_(std::move(pairing)) {
  if (sig_.genus < 0 || sig_.boundary < 0 || sig_.r < 0)
    throw std::invalid_argument("bad surface signature");
  if (sig_.boundary == 0 && sig_.r > 0 && (2 * sig_.genus - 2) % sig_.r != 0)
    throw std::invalid_argument("no such spin structure: r must divide 2g-2");
  if (static_cast<int64_t>(boundary_values_.size()) != sig_.boundary)
    throw std::invalid_argument("boundary value count mismatch");
  int64_t want = 2 * sig_.genus + std::max<int64_t>(sig_.boundary - 1, 0);
  if (static_cast<int64_t>(pairing_.size()) < want)
    throw std::invalid_argument("pairing too small for surface");
  for (auto& row : pairing_)
    if (row.size() != pairing_.size())
      throw std::invalid_argument("pairing not square");
  extras_ = static_cast<int64_t>(pairing_.size()) - want;
  for (int64_t& v : boundary_values_) v = norm(v);
}

int64_t WindingState::base_dim() const {
  return 2 * sig_.genus + std::max<int64_t>(sig_.boundary - 1, 0);
}

int64_t WindingState::norm(int64_t v) const { return norm_mod(v, sig_.r); }

WindingState WindingState::add_marked(TrackedCurve c) const {
  if (static_cast<int64_t>(c.homology.size()) != dim())
    throw std::invalid_argument("homology length mismatch: " + c.name);
  if (has_curve(c.name))
    throw std::invalid_argument("duplicate curve name: " + c.name);
  WindingState next = *this;
  c.winding = norm(c.winding);
  next.marked_.push_back(std::move(c));
  return next;
}

WindingState WindingState::add_constraint(CoherenceConstraint c) const {
  for (const std::string& name : c.curves)
    if (!has_curve(name))
      throw std::invalid_argument("constraint names unknown curve: " + name);
  WindingState next = *this;
  next.constraints_.push_back(std::move(c));
  return next;
}

bool WindingState::has_curve(const std::string& name) const {
  for (const TrackedCurve& c : marked_)
    if (c.name == name) return true;
  return false;
}

const TrackedCurve& WindingState::curve(const std::string& name) const {
  for (const TrackedCurve& c : marked_)
    if (c.name == name) return c;
  throw std::invalid_argument("no such curve: " + name);
}

int64_t WindingState::pair(const std::vector<int64_t>& a,
                           const std::vector<int64_t>& b) const {
  if (a.size() != pairing_.size() || b.size() != pairing_.size())
    throw std::invalid_argument("vector length mismatch in pairing");
  int64_t s = 0;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] == 0) continue;
    for (size_t j = 0; j < b.size(); ++j)
      if (b[j] != 0) s += a[i] * pairing_[i][j] * b[j];
  }
  return s;
}

std::vector<int64_t> WindingState::boundary_class(int64_t j) const {
  if (j < 0 || j >= sig_.boundary)
    throw std::invalid_argument("boundary index out of range");
  std::vector<int64_t> v(dim(), 0);
  if (sig_.boundary == 1) return v;  // single boundary is null-homologous here
  if (j < sig_.boundary - 1) {
    v[2 * sig_.genus + j] = 1;
  } else {
    for (int64_t i = 0; i < sig_.boundary - 1; ++i) v[2 * sig_.genus + i] = -1;
  }
  return v;
}

WindingState WindingState::reverse_curve(const std::string& name) const {
  WindingState next = *this;
  for (TrackedCurve& c : next.marked_) {
    if (c.name != name) continue;
    for (int64_t& x : c.homology) x = -x;
    c.winding = norm(-c.winding);
    return next;
  }
  throw std::invalid_argument("no such curve: " + name);
}

WindingState WindingState::apply_twist(const std::string& about,
                                       int64_t exponent) const {
  return apply_twist(curve(about), exponent);
}

WindingState WindingState::apply_twist(const TrackedCurve& about,
                                       int64_t exponent) const {
  if (static_cast<int64_t>(about.homology.size()) != dim())
    throw std::invalid_argument("twisting curve has wrong dimension");
  WindingState next = *this;
  for (TrackedCurve& m : next.marked_) {
    int64_t p = pair(about.homology, m.homology);
    if (p == 0) continue;
    m.winding = twist_value(sig_.r, m.winding, about.winding, p, exponent);
    for (size_t i = 0; i < m.homology.size(); ++i)
      m.homology[i] += exponent * p * about.homology[i];
  }
  return next;
}

WindingState WindingState::point_push(const std::vector<int64_t>& beta_class,
                                      int64_t boundary_index) const {
  if (boundary_index < 0 || boundary_index >= sig_.boundary)
    throw std::invalid_argument("boundary index out of range");
  if (static_cast<int64_t>(beta_class.size()) != dim())
    throw std::invalid_argument("beta class has wrong dimension");
  int64_t phi_d = boundary_values_[boundary_index];
  std::vector<int64_t> d = boundary_class(boundary_index);
  WindingState next = *this;
  for (TrackedCurve& m : next.marked_) {
    int64_t p = pair(m.homology, beta_class);  // <[c], [beta]>
    if (p == 0) continue;
    m.winding = norm(m.winding - (phi_d + 1) * p);
    // composite of the two parallel-copy transvections: x -> x + <beta,x>[d]
    for (size_t i = 0; i < m.homology.size(); ++i)
      m.homology[i] += -p * d[i];
  }
  return next;
}

bool WindingState::check_constraints() const {
  for (const CoherenceConstraint& cc : constraints_) {
    std::vector<int64_t> vals;
    vals.reserve(cc.curves.size());
    for (const std::string& name : cc.curves) vals.push_back(curve(name).winding);
    if (!coherence_check(vals, cc.chi, sig_.r)) return false;
  }
  return true;
}

int64_t WindingState::signature_gcd() const {
  if (sig_.boundary < 1) throw std::invalid_argument("no boundary components");
  int64_t g = sig_.r;  // gcd in Z/r is gcd with r; 0 passes integers through
  for (int64_t v : boundary_values_) g = gcd64(g, v + 1);
  return g;
}

std::optional<int64_t> WindingState::arf() const {
  if (sig_.r % 2 != 0) return std::nullopt;
  for (int64_t v : boundary_values_)
    if (norm_mod(v, 2) != 1) return std::nullopt;

  const size_t n = marked_.size();
  std::vector<std::vector<int>> gram(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      if (i != j)
        gram[i][j] =
            static_cast<int>(norm_mod(pair(marked_[i].homology,
                                           marked_[j].homology),
                                      2));
  SymplecticExtraction ex = extract_symplectic_gf2(gram);
  if (static_cast<int64_t>(ex.pairs.size()) != sig_.genus)
    throw std::logic_error("marked curves do not span a symplectic basis");

  // leftovers must be genuine radical vectors with even refinement value
  uint64_t q_bits = 0;
  for (size_t i = 0; i < n; ++i)
    if (norm_mod(marked_[i].winding + 1, 2)) q_bits |= uint64_t(1) << i;
  for (size_t k = 0; k < ex.leftover_masks.size(); ++k) {
    uint64_t mask = ex.leftover_masks[k];
    std::vector<int64_t> v(dim(), 0);
    for (size_t i = 0; i < n; ++i)
      if (mask >> i & 1)
        for (size_t c = 0; c < v.size(); ++c) v[c] += marked_[i].homology[c];
    for (size_t i = 0; i < n; ++i)
      if (norm_mod(pair(v, marked_[i].homology), 2) != 0)
        throw std::logic_error("marked curves do not span a symplectic basis");
    // radical directions carry even values when boundary values are odd
    if (eval_refinement(mask, ex.leftover_corrs[k], q_bits) != 0)
      throw std::logic_error("mod-2 incoherent winding values");
  }
  return arf_from_extraction(ex, q_bits);
}

WindingState WindingState::extend_over_handle(
    const std::string& name, const std::vector<int64_t>& new_pairings,
    int64_t w) const {
  if (sig_.r != 0)
    throw std::invalid_argument("handle extension is a framing operation");
  if (static_cast<int64_t>(new_pairings.size()) != dim())
    throw std::invalid_argument("pairing vector has wrong dimension");
  WindingState next = *this;
  next.extras_ += 1;
  size_t old = pairing_.size();
  for (size_t i = 0; i < old; ++i)
    next.pairing_[i].push_back(-new_pairings[i]);
  std::vector<int64_t> row(new_pairings);
  row.push_back(0);
  next.pairing_.push_back(std::move(row));
  for (TrackedCurve& m : next.marked_) m.homology.push_back(0);
  std::vector<int64_t> h(old + 1, 0);
  h[old] = 1;
  next.marked_.push_back(TrackedCurve{name, std::move(h), w});
  return next;
}

WindingState WindingState::drop_extension() const {
  if (extras_ < 1) throw std::invalid_argument("no handle extension to drop");
  WindingState next = *this;
  size_t last = pairing_.size() - 1;
  next.pairing_.pop_back();
  for (auto& row : next.pairing_) row.pop_back();
  next.extras_ -= 1;
  std::vector<TrackedCurve> kept;
  for (TrackedCurve& m : next.marked_) {
    if (m.homology[last] != 0) continue;  // curves over the handle go with it
    m.homology.pop_back();
    kept.push_back(std::move(m));
  }
  next.marked_ = std::move(kept);
  return next;
}

WindingState WindingState::reduce_mod(int64_t r_new) const {
  if (r_new < 0) throw std::invalid_argument("negative modulus");
  if (r_new == 0) {
    if (sig_.r != 0)
      throw std::invalid_argument("cannot lift a finite modulus to a framing");
    return *this;
  }
  if (sig_.r != 0 && sig_.r % r_new != 0)
    throw std::invalid_argument("new modulus must divide the current one");
  WindingState next = *this;
  next.sig_.r = r_new;
  for (int64_t& v : next.boundary_values_) v = norm_mod(v, r_new);
  for (TrackedCurve& m : next.marked_) m.winding = norm_mod(m.winding, r_new);
  return next;
}

bool operator==(const WindingState& a, const WindingState& b) {
  auto key = [](const WindingState& s) {
    return std::tie(s.sig_.genus, s.sig_.boundary, s.sig_.r, s.extras_);
  };
  if (key(a) != key(b)) return false;
  if (a.boundary_values_ != b.boundary_values_) return false;
  if (a.pairing_ != b.pairing_) return false;
  if (a.marked_.size() != b.marked_.size()) return false;
  for (size_t i = 0; i < a.marked_.size(); ++i) {
    const TrackedCurve &x = a.marked_[i], &y = b.marked_[i];
    if (x.name != y.name || x.homology != y.homology || x.winding != y.winding)
      return false;
  }
  return true;
}

std::string WindingState::to_json() const {
  nlohmann::ordered_json j;
  j["genus"] = sig_.genus;
  j["boundary"] = boundary_values_;
  j["r"] = sig_.r;
  j["marked"] = nlohmann::ordered_json::array();
  for (const TrackedCurve& m : marked_) {
    nlohmann::ordered_json e;
    e["homology"] = m.homology;
    e["winding"] = m.winding;
    e["name"] = m.name;
    j["marked"].push_back(e);
  }
  j["constraints"] = nlohmann::ordered_json::array();
  for (const CoherenceConstraint& c : constraints_) {
    nlohmann::ordered_json e;
    e["curves"] = c.curves;
    e["chi"] = c.chi;
    j["constraints"].push_back(e);
  }
  if (pairing_ != chain_pairing(sig_.genus, sig_.boundary))
    j["pairing"] = pairing_;
  return j.dump(2);
}

WindingState WindingState::from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SurfaceSig sig;
  sig.genus = j.at("genus").get<int64_t>();
  sig.r = j.at("r").get<int64_t>();
  std::vector<int64_t> bvals = j.at("boundary").get<std::vector<int64_t>>();
  sig.boundary = static_cast<int64_t>(bvals.size());
  WindingState s =
      j.contains("pairing")
          ? WindingState(sig, bvals,
                         j["pairing"].get<std::vector<std::vector<int64_t>>>())
          : WindingState(sig, bvals);
  for (const auto& e : j.value("marked", nlohmann::json::array())) {
    TrackedCurve c;
    c.name = e.at("name").get<std::string>();
    c.homology = e.at("homology").get<std::vector<int64_t>>();
    c.winding = e.at("winding").get<int64_t>();
    s = s.add_marked(std::move(c));
  }
  for (const auto& e : j.value("constraints", nlohmann::json::array())) {
    CoherenceConstraint c;
    c.curves = e.at("curves").get<std::vector<std::string>>();
    c.chi = e.at("chi").get<int64_t>();
    s = s.add_constraint(std::move(c));
  }
  return s;
}

}  // namespace rspin
