#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "blowcycle/exponent.hpp"
#include "blowcycle/field.hpp"

namespace blowcycle {

// Polynomial ring F_p[x_1, ..., x_n] with named variables.
class Ring {
 public:
  Ring(std::uint64_t p, std::vector<std::string> names);

  const PrimeField& field() const { return field_; }
  std::uint64_t characteristic() const { return field_.characteristic(); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }
  const std::string& name(std::size_t i) const { return names_.at(i); }

  // Throws ParameterError for unknown names.
  std::size_t index_of(std::string_view name) const;
  bool contains(std::string_view name) const;

  friend bool operator==(const Ring& a, const Ring& b) {
    return a.characteristic() == b.characteristic() && a.names_ == b.names_;
  }

 private:
  PrimeField field_;
  std::vector<std::string> names_;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::uint64_t p, std::vector<std::string> names);

struct Term {
  ExponentVector exponents;
  std::uint64_t coefficient;

  friend bool operator==(const Term&, const Term&) = default;
};

// Sparse polynomial over F_p. Terms are kept sorted ascending in lex order with
// no zero coefficients, so equality is structural.
class Polynomial {
 public:
  explicit Polynomial(RingPtr ring);
  Polynomial(RingPtr ring, std::vector<Term> terms);

  static Polynomial zero(RingPtr ring) { return Polynomial(std::move(ring)); }
  static Polynomial constant(RingPtr ring, std::uint64_t c);
  static Polynomial one(RingPtr ring) { return constant(std::move(ring), 1); }
  static Polynomial variable(RingPtr ring, std::size_t i);
  static Polynomial variable(RingPtr ring, std::string_view name);
  static Polynomial monomial(RingPtr ring, const ExponentVector& m, std::uint64_t c = 1);

  const Ring& ring() const { return *ring_; }
  const RingPtr& ring_ptr() const { return ring_; }
  std::uint64_t characteristic() const { return ring_->characteristic(); }
  std::size_t num_vars() const { return ring_->size(); }

  std::span<const Term> terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  bool is_monomial() const { return terms_.size() == 1; }
  std::uint64_t coefficient(const ExponentVector& m) const;
  std::uint64_t constant_term() const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Polynomial& other);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  Polynomial operator-() const;

  friend bool operator==(const Polynomial& a, const Polynomial& b);

 private:
  RingPtr ring_;
  std::vector<Term> terms_;
};

void require_same_ring(const Polynomial& a, const Polynomial& b);

Polynomial add(const Polynomial& a, const Polynomial& b);
Polynomial mul(const Polynomial& a, const Polynomial& b);
Polynomial scale(const Polynomial& f, std::uint64_t c);
Polynomial multiply_by_monomial(const Polynomial& f, const ExponentVector& m);

// Uses the Frobenius split P^(sum d_k p^k) = prod (P^(d_k))^(p^k), which keeps
// huge exponents of binomials cheap.
Polynomial pow(const Polynomial& f, Exponent n);

// f^(p^r): exponents scaled by p^r, coefficients fixed (Frobenius is the identity on F_p).
Polynomial frobenius_power(const Polynomial& f, Exponent r);

// Ring homomorphism sending variable i to images[i].
Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images);
Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& images);

// Minimum total degree; infinity for 0.
Order order(const Polynomial& f);
// Minimum exponent of variable i; infinity for 0.
Order order_along(const Polynomial& f, std::size_t i);
// Minimum over the support of the summed exponents of the listed variables.
Order gamma_order(const Polynomial& f, std::span<const std::size_t> gamma);

// Componentwise minimum of the support (the largest monomial dividing f). Requires f != 0.
ExponentVector monomial_content(const Polynomial& f);

// Exact quotient; DivisibilityError if some term is not divisible.
Polynomial divide_by_monomial(const Polynomial& f, const ExponentVector& m);

// Terms of minimal total degree. Requires f != 0.
Polynomial initial_form(const Polynomial& f);

// Largest r such that every exponent of the support is divisible by p^r.
// Returns a capped value (64) for constants. Requires f != 0.
Exponent max_frobenius_power(const Polynomial& f);

// g with g^(p^r) = f; DivisibilityError if some exponent is not divisible by p^r.
Polynomial frobenius_root(const Polynomial& f, Exponent r);

// Exchange variables i and j.
Polynomial swap_variables(const Polynomial& f, std::size_t i, std::size_t j);

// Canonical text: terms in descending lex order, "3*x^2*y" style, "0" for zero.
std::string to_string(const Polynomial& f);

// Parses +, -, *, ^ (natural exponents), parentheses, integer constants and
// ring variables. Constants reduce mod p. Columns in errors are 1-based offsets
// into text plus column_offset.
Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, std::size_t line = 1,
                            std::size_t column_offset = 0);

}  // namespace blowcycle
