#include "blowcycle/factored.hpp"

#include <algorithm>
#include <limits>
#include <optional>

#include "blowcycle/errors.hpp"

namespace blowcycle {

namespace {

constexpr std::uint64_t kSaturated = std::uint64_t{1} << 63;

std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out) || out > kSaturated) return kSaturated;
  return out;
}

std::uint64_t binomial_bound(std::uint64_t n, std::uint64_t k) {
  std::uint64_t out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out = saturating_mul(out, n - k + i);
    if (out == kSaturated) return out;
    out /= i;
  }
  return out;
}

std::optional<std::size_t> single_variable(const Polynomial& base) {
  if (!base.is_monomial()) return std::nullopt;
  const auto& t = base.terms().front();
  if (t.coefficient != 1 || t.exponents.total_degree() != 1) return std::nullopt;
  for (std::size_t i = 0; i < t.exponents.size(); ++i)
    if (t.exponents[i] == 1) return i;
  return std::nullopt;
}

bool base_less(const PowerFactor& a, const PowerFactor& b) {
  const auto va = single_variable(a.base);
  const auto vb = single_variable(b.base);
  if (va && vb) return *va < *vb;
  if (va || vb) return va.has_value();
  if (a.base.size() != b.base.size()) return a.base.size() < b.base.size();
  const auto ta = a.base.terms();
  const auto tb = b.base.terms();
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].exponents != tb[i].exponents) return ta[i].exponents < tb[i].exponents;
    if (ta[i].coefficient != tb[i].coefficient) return ta[i].coefficient < tb[i].coefficient;
  }
  return false;
}

}  // namespace

FactoredPolynomial::FactoredPolynomial(Polynomial residue) : residue_(std::move(residue)) {}

FactoredPolynomial::FactoredPolynomial(Polynomial residue, std::vector<PowerFactor> factors)
    : residue_(std::move(residue)), factors_(std::move(factors)) {
  normalize();
}

void FactoredPolynomial::normalize() {
  const auto& ring = residue_.ring_ptr();
  const auto& field = ring->field();
  const std::size_t n = ring->size();
  if (residue_.is_zero()) {
    factors_.clear();
    return;
  }
  std::vector<PowerFactor> split;
  ExponentVector var_exponents(n);
  std::uint64_t constant = 1;
  for (auto& f : factors_) {
    require_same_ring(residue_, f.base);
    if (f.exponent == 0) continue;
    if (f.base.is_zero()) {
      residue_ = Polynomial::zero(ring);
      factors_.clear();
      return;
    }
    const ExponentVector content = monomial_content(f.base);
    var_exponents += content.scaled(f.exponent);
    Polynomial rest = blowcycle::divide_by_monomial(f.base, content);
    if (rest.is_constant()) {
      constant = field.mul(constant, field.pow(rest.constant_term(), f.exponent));
      continue;
    }
    const std::uint64_t lead = rest.terms().back().coefficient;
    if (lead != 1) {
      constant = field.mul(constant, field.pow(lead, f.exponent));
      rest = scale(rest, field.inv(lead));
    }
    split.push_back({std::move(rest), f.exponent});
  }
  for (std::size_t i = 0; i < n; ++i)
    if (var_exponents[i] != 0) split.push_back({Polynomial::variable(ring, i), var_exponents[i]});
  std::sort(split.begin(), split.end(), base_less);
  factors_.clear();
  for (auto& f : split) {
    if (!factors_.empty() && factors_.back().base == f.base)
      factors_.back().exponent = checked_add(factors_.back().exponent, f.exponent);
    else
      factors_.push_back(std::move(f));
  }
  if (constant != 1) residue_ = scale(residue_, constant);
}

Polynomial FactoredPolynomial::expand() const {
  Polynomial out = residue_;
  for (const auto& f : factors_) out *= pow(f.base, f.exponent);
  return out;
}

std::uint64_t FactoredPolynomial::expanded_size_bound() const {
  std::uint64_t bound = residue_.size();
  const std::uint64_t p = residue_.characteristic();
  for (const auto& f : factors_) {
    const std::uint64_t k = f.base.size();
    if (k == 1) continue;
    Exponent e = f.exponent;
    while (e > 0 && bound != kSaturated) {
      const std::uint64_t digit = e % p;
      bound = saturating_mul(bound, binomial_bound(digit + k - 1, k - 1));
      e /= p;
    }
  }
  return bound;
}

Order FactoredPolynomial::order() const {
  Order out = blowcycle::order(residue_);
  for (const auto& f : factors_) {
    const Exponent o = blowcycle::order(f.base).value();
    out = out + Order(checked_mul(o, f.exponent));
  }
  return out;
}

Order FactoredPolynomial::order_along(std::size_t i) const {
  Order out = blowcycle::order_along(residue_, i);
  for (const auto& f : factors_) out = out + Order(checked_mul(blowcycle::order_along(f.base, i).value(), f.exponent));
  return out;
}

Order FactoredPolynomial::gamma_order(std::span<const std::size_t> gamma) const {
  Order out = blowcycle::gamma_order(residue_, gamma);
  for (const auto& f : factors_)
    out = out + Order(checked_mul(blowcycle::gamma_order(f.base, gamma).value(), f.exponent));
  return out;
}

ExponentVector FactoredPolynomial::variable_exponents() const {
  ExponentVector out(num_vars());
  for (const auto& f : factors_)
    if (auto v = single_variable(f.base)) out[*v] = checked_add(out[*v], f.exponent);
  return out;
}

bool FactoredPolynomial::unit_factors_are_units() const {
  return std::all_of(factors_.begin(), factors_.end(),
                     [](const PowerFactor& f) { return single_variable(f.base) || f.base.constant_term() != 0; });
}

FactoredPolynomial FactoredPolynomial::substitute(std::span<const Polynomial> images) const {
  Polynomial residue = blowcycle::substitute(residue_, images);
  std::vector<PowerFactor> factors;
  factors.reserve(factors_.size());
  for (const auto& f : factors_) factors.push_back({blowcycle::substitute(f.base, images), f.exponent});
  return FactoredPolynomial(std::move(residue), std::move(factors));
}

FactoredPolynomial FactoredPolynomial::multiply(const Polynomial& g) const {
  return FactoredPolynomial(residue_ * g, factors_);
}

FactoredPolynomial FactoredPolynomial::multiply_by_monomial(const ExponentVector& m) const {
  return FactoredPolynomial(blowcycle::multiply_by_monomial(residue_, m), factors_);
}

FactoredPolynomial FactoredPolynomial::divide_by_monomial(const ExponentVector& m, Exponent chunk) const {
  if (chunk == 0) throw ParameterError("chunk must be positive");
  const std::size_t n = num_vars();
  if (m.size() != n) throw RingMismatch("monomial length does not match the ring");
  if (residue_.is_zero()) return *this;
  const ExponentVector carried = variable_exponents();
  ExponentVector from_factors(n);
  ExponentVector into_residue(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Exponent have = blowcycle::order_along(residue_, i).value();
    if (m[i] <= have) continue;
    const Exponent missing = m[i] - have;
    const Exponent take = checked_mul((missing + chunk - 1) / chunk, chunk);
    if (take > carried[i])
      throw DivisibilityError("x_" + ring().name(i) + "^" + std::to_string(m[i]) + " does not divide the product");
    from_factors[i] = take;
    into_residue[i] = take;
  }
  Polynomial residue = blowcycle::divide_by_monomial(blowcycle::multiply_by_monomial(residue_, into_residue), m);
  std::vector<PowerFactor> factors = factors_;
  for (auto& f : factors)
    if (auto v = single_variable(f.base)) f.exponent -= from_factors[*v];
  return FactoredPolynomial(std::move(residue), std::move(factors));
}

FactoredPolynomial FactoredPolynomial::absorb_content(Exponent chunk) const {
  if (residue_.is_zero()) return *this;
  ExponentVector content = monomial_content(residue_);
  for (std::size_t i = 0; i < content.size(); ++i) content[i] -= content[i] % chunk;
  if (content.is_zero()) return *this;
  std::vector<PowerFactor> factors = factors_;
  for (std::size_t i = 0; i < content.size(); ++i)
    if (content[i]) factors.push_back({Polynomial::variable(ring_ptr(), i), content[i]});
  return FactoredPolynomial(blowcycle::divide_by_monomial(residue_, content), std::move(factors));
}

FactoredPolynomial FactoredPolynomial::frobenius_root(Exponent r) const {
  const Exponent q = checked_pow(residue_.characteristic(), r);
  std::vector<PowerFactor> factors = factors_;
  for (auto& f : factors) {
    if (f.exponent % q != 0) throw DivisibilityError("factor exponent is not divisible by " + std::to_string(q));
    f.exponent /= q;
  }
  return FactoredPolynomial(blowcycle::frobenius_root(residue_, r), std::move(factors));
}

FactoredPolynomial FactoredPolynomial::swap_variables(std::size_t i, std::size_t j) const {
  std::vector<PowerFactor> factors;
  for (const auto& f : factors_) factors.push_back({blowcycle::swap_variables(f.base, i, j), f.exponent});
  return FactoredPolynomial(blowcycle::swap_variables(residue_, i, j), std::move(factors));
}

std::string to_string(const FactoredPolynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  auto append = [&out](const std::string& part) {
    if (!out.empty()) out += "*";
    out += part;
  };
  const auto& r = f.residue();
  if (r.is_constant() && r.constant_term() != 1) append(std::to_string(r.constant_term()));
  for (const auto& factor : f.factors()) {
    const std::string base = factor.base.is_monomial() ? to_string(factor.base) : "(" + to_string(factor.base) + ")";
    append(factor.exponent == 1 ? base : base + "^" + std::to_string(factor.exponent));
  }
  if (!r.is_constant()) append(f.factors().empty() || r.is_monomial() ? to_string(r) : "(" + to_string(r) + ")");
  if (out.empty()) out = "1";
  return out;
}

}  // namespace blowcycle
