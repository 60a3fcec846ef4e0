#include "blowcycle/divisor.hpp"

#include <algorithm>

#include "blowcycle/errors.hpp"

namespace blowcycle {

namespace {

bool is_power_monomial(const ExponentVector& m, Exponent q) {
  return std::all_of(m.begin(), m.end(), [q](Exponent e) { return e % q == 0; });
}

std::vector<std::size_t> sorted_unique(std::vector<std::size_t> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

InsepHypersurface::InsepHypersurface(std::uint32_t e, FactoredPolynomial F) : e_(e), F_(std::move(F)) {
  if (e == 0) throw ParameterError("the Frobenius exponent e must be positive");
  q_ = checked_pow(F_.ring().characteristic(), e);
  if (F_.ring().contains("z")) throw ParameterError("z is formal and may not be a ring variable");
}

DivisorState::DivisorState(std::vector<std::size_t> delta) : delta_(sorted_unique(std::move(delta))) {}

DivisorState DivisorState::from_names(const Ring& ring, const std::vector<std::string>& names) {
  std::vector<std::size_t> idx;
  for (const auto& n : names) idx.push_back(ring.index_of(n));
  return DivisorState(std::move(idx));
}

bool DivisorState::contains(std::size_t i) const { return std::binary_search(delta_.begin(), delta_.end(), i); }

DivisorState DivisorState::with(std::size_t i) const {
  auto v = delta_;
  v.push_back(i);
  return DivisorState(std::move(v));
}

DivisorState DivisorState::without(std::size_t i) const {
  auto v = delta_;
  v.erase(std::remove(v.begin(), v.end(), i), v.end());
  return DivisorState(std::move(v));
}

DivisorState DivisorState::swapped(std::size_t i, std::size_t j) const {
  auto v = delta_;
  for (auto& k : v) {
    if (k == i)
      k = j;
    else if (k == j)
      k = i;
  }
  return DivisorState(std::move(v));
}

std::string to_string(const DivisorState& delta, const Ring& ring) {
  std::string out = "{";
  for (std::size_t k = 0; k < delta.indices().size(); ++k) {
    if (k) out += ",";
    out += ring.name(delta.indices()[k]);
  }
  return out + "}";
}

Center::Center(std::vector<std::size_t> gamma) : gamma_(sorted_unique(std::move(gamma))) {
  if (gamma_.empty()) throw ParameterError("a center needs at least one x-variable");
}

Center Center::maximal(const Ring& ring) {
  std::vector<std::size_t> all(ring.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return Center(std::move(all));
}

bool Center::contains(std::size_t i) const { return std::binary_search(gamma_.begin(), gamma_.end(), i); }

std::pair<Polynomial, Polynomial> clean(const Polynomial& F, std::uint32_t e) {
  const Exponent q = checked_pow(F.characteristic(), e);
  std::vector<Term> removed;
  std::vector<Term> kept;
  for (const auto& t : F.terms()) (is_power_monomial(t.exponents, q) ? removed : kept).push_back(t);
  return {frobenius_root(Polynomial(F.ring_ptr(), std::move(removed)), e), Polynomial(F.ring_ptr(), std::move(kept))};
}

CleanResult clean(const InsepHypersurface& h) {
  const auto& F = h.F();
  for (const auto& f : F.factors())
    if (f.exponent % h.q() != 0) throw Error("factor exponents of F must be multiples of p^e for cleaning");
  // The factor product is a p^e-th power, so it neither creates nor hides p^e-th power monomials.
  auto [g_residue, kept] = clean(F.residue(), h.e());
  std::vector<PowerFactor> factors(F.factors().begin(), F.factors().end());
  FactoredPolynomial F_clean(std::move(kept), factors);
  for (auto& f : factors) f.exponent /= h.q();
  FactoredPolynomial g(std::move(g_residue), std::move(factors));
  return {std::move(g), std::move(F_clean)};
}

bool is_clean(const Polynomial& F, Exponent q) {
  return std::none_of(F.terms().begin(), F.terms().end(),
                      [q](const Term& t) { return is_power_monomial(t.exponents, q); });
}

bool is_clean(const InsepHypersurface& h) {
  for (const auto& f : h.F().factors())
    if (f.exponent % h.q() != 0) return is_clean(h.F().expand(), h.q());
  return is_clean(h.F().residue(), h.q());
}

ResidualFactor<Polynomial> residual_factor(const Polynomial& F, const DivisorState& E) {
  if (F.is_zero()) throw Error("residual factor of F = 0");
  ExponentVector m(F.num_vars());
  for (auto i : E.indices()) m[i] = order_along(F, i).value();
  return {m, divide_by_monomial(F, m)};
}

ResidualFactor<FactoredPolynomial> residual_factor(const FactoredPolynomial& F, const DivisorState& E) {
  if (F.is_zero()) throw Error("residual factor of F = 0");
  ExponentVector m(F.num_vars());
  for (auto i : E.indices()) m[i] = F.order_along(i).value();
  return {m, F.divide_by_monomial(m)};
}

Order residual_order(const InsepHypersurface& h, const DivisorState& E) {
  if (!is_clean(h)) throw NotCleanError("residual order requires a clean F; apply cleaning first");
  if (h.F().is_zero()) return Order::infinity();
  return residual_factor(h.F(), E).G.order();
}

PermissibilityReport check_permissible(const InsepHypersurface& h, const DivisorState& E, const Center& c) {
  for (auto i : c.indices())
    if (i >= h.ring().size()) throw ParameterError("center variable out of range");
  PermissibilityReport report;
  report.gamma_order_F = h.F().gamma_order(c.indices());
  report.condition_f = report.gamma_order_F >= Order(h.q());
  if (h.F().is_zero()) {
    report.degenerate = true;
    report.residual_order = Order::infinity();
    report.gamma_order_G = Order::infinity();
    report.condition_g = true;
    return report;
  }
  report.residual_order = residual_order(h, E);
  report.gamma_order_G = residual_factor(h.F(), E).G.gamma_order(c.indices());
  report.condition_g = report.gamma_order_G >= report.residual_order;
  return report;
}

bool is_permissible(const InsepHypersurface& h, const DivisorState& E, const Center& c) {
  return check_permissible(h, E, c).permissible();
}

Exponent moh_bound(Exponent d, std::uint32_t e, std::uint64_t p) {
  if (e == 0) throw ParameterError("Moh's bound needs e >= 1");
  return checked_add(d, checked_pow(p, e - 1));
}

Exponent flawed_bound(Exponent d, Exponent pr) {
  if (pr == 0) throw ParameterError("p^r must be at least 1");
  return checked_add(checked_mul(d / pr, pr), pr);
}

}  // namespace blowcycle
