#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blowcycle/factored.hpp"
#include "blowcycle/polynomial.hpp"

namespace blowcycle {

// f = z^(p^e) + F(x_1, ..., x_n). The variable z is formal and not part of the ring.
class InsepHypersurface {
 public:
  InsepHypersurface(std::uint32_t e, FactoredPolynomial F);
  InsepHypersurface(std::uint32_t e, Polynomial F) : InsepHypersurface(e, FactoredPolynomial(std::move(F))) {}

  std::uint32_t e() const { return e_; }
  std::uint64_t p() const { return F_.ring().characteristic(); }
  // p^e
  Exponent q() const { return q_; }
  const FactoredPolynomial& F() const { return F_; }
  const Ring& ring() const { return F_.ring(); }
  const RingPtr& ring_ptr() const { return F_.ring_ptr(); }

  // ord f = min(p^e, ord F); the pair is a same-order state iff ord F >= p^e.
  bool has_full_order() const { return F_.order() >= Order(q_); }

 private:
  std::uint32_t e_;
  Exponent q_;
  FactoredPolynomial F_;
};

// Indices of the variables carrying exceptional components, sorted and unique.
class DivisorState {
 public:
  DivisorState() = default;
  explicit DivisorState(std::vector<std::size_t> delta);
  static DivisorState from_names(const Ring& ring, const std::vector<std::string>& names);

  const std::vector<std::size_t>& indices() const { return delta_; }
  bool contains(std::size_t i) const;
  bool empty() const { return delta_.empty(); }
  DivisorState with(std::size_t i) const;
  DivisorState without(std::size_t i) const;
  DivisorState swapped(std::size_t i, std::size_t j) const;

  friend bool operator==(const DivisorState&, const DivisorState&) = default;

 private:
  std::vector<std::size_t> delta_;
};

std::string to_string(const DivisorState& delta, const Ring& ring);

// P = (z, x_i : i in gamma).
class Center {
 public:
  explicit Center(std::vector<std::size_t> gamma);
  static Center maximal(const Ring& ring);

  const std::vector<std::size_t>& indices() const { return gamma_; }
  bool contains(std::size_t i) const;
  std::size_t size() const { return gamma_.size(); }

  friend bool operator==(const Center&, const Center&) = default;

 private:
  std::vector<std::size_t> gamma_;
};

struct CleanResult {
  FactoredPolynomial g;        // z_1 = z - g
  FactoredPolynomial F_clean;  // F = g^(p^e) + F_clean
};

// Removes every p^e-th power monomial of F. Factor exponents of h.F() must be multiples of p^e.
CleanResult clean(const InsepHypersurface& h);
// The same on an expanded polynomial, for q = p^e.
std::pair<Polynomial, Polynomial> clean(const Polynomial& F, std::uint32_t e);
bool is_clean(const InsepHypersurface& h);
bool is_clean(const Polynomial& F, Exponent q);

template <class Poly>
struct ResidualFactor {
  ExponentVector exceptional;  // r_i for i in delta, 0 elsewhere
  Poly G;                      // F = x^exceptional * G
};

ResidualFactor<Polynomial> residual_factor(const Polynomial& F, const DivisorState& E);
ResidualFactor<FactoredPolynomial> residual_factor(const FactoredPolynomial& F, const DivisorState& E);

// ord G for the residual factor of a clean F. Infinity when F = 0. Throws NotCleanError.
Order residual_order(const InsepHypersurface& h, const DivisorState& E);

struct PermissibilityReport {
  Order gamma_order_F;
  Order gamma_order_G;
  Order residual_order;
  bool condition_f = false;  // f in P^(p^e)
  bool condition_g = false;  // G in P^d
  bool degenerate = false;   // F = 0: only the first condition is checked
  bool permissible() const { return condition_f && condition_g; }
};

PermissibilityReport check_permissible(const InsepHypersurface& h, const DivisorState& E, const Center& c);
bool is_permissible(const InsepHypersurface& h, const DivisorState& E, const Center& c);

// d + p^(e-1)
Exponent moh_bound(Exponent d, std::uint32_t e, std::uint64_t p);
// floor(d / pr) * pr + pr
Exponent flawed_bound(Exponent d, Exponent pr);

}  // namespace blowcycle
