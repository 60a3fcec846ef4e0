#pragma once

#include <span>
#include <string>
#include <vector>

#include "blowcycle/polynomial.hpp"

namespace blowcycle {

struct PowerFactor {
  Polynomial base;
  Exponent exponent;

  friend bool operator==(const PowerFactor&, const PowerFactor&) = default;
};

// residue * prod base_k^exponent_k, kept unexpanded.
//
// Exceptional multiplicities of the hypersurfaces grow quickly under repeated
// blowups; stored as p^e-th power factors they never need to be expanded. All
// orders handled here are valuations, so they add over the factors.
//
// Canonical form: bases are single variables or content-free polynomials whose
// highest lex term has coefficient 1; equal bases are merged; constants are
// folded into the residue; a zero residue clears all factors.
class FactoredPolynomial {
 public:
  explicit FactoredPolynomial(Polynomial residue);
  FactoredPolynomial(Polynomial residue, std::vector<PowerFactor> factors);

  const Polynomial& residue() const { return residue_; }
  std::span<const PowerFactor> factors() const { return factors_; }
  const RingPtr& ring_ptr() const { return residue_.ring_ptr(); }
  const Ring& ring() const { return residue_.ring(); }
  std::size_t num_vars() const { return residue_.num_vars(); }
  bool is_zero() const { return residue_.is_zero(); }

  Polynomial expand() const;
  // Upper bound on the number of terms of expand(); saturates at 2^63.
  std::uint64_t expanded_size_bound() const;

  Order order() const;
  Order order_along(std::size_t i) const;
  Order gamma_order(std::span<const std::size_t> gamma) const;

  // Exponents carried by single-variable factors.
  ExponentVector variable_exponents() const;
  // True if every non-variable factor has a nonzero constant term.
  bool unit_factors_are_units() const;

  FactoredPolynomial substitute(std::span<const Polynomial> images) const;
  FactoredPolynomial multiply(const Polynomial& g) const;
  FactoredPolynomial multiply_by_monomial(const ExponentVector& m) const;

  // Exact division. Variable factors are only broken in multiples of `chunk`,
  // so factor exponents that were multiples of chunk stay multiples.
  FactoredPolynomial divide_by_monomial(const ExponentVector& m, Exponent chunk = 1) const;

  // Moves the largest chunk-multiple of the residue's monomial content into variable factors.
  FactoredPolynomial absorb_content(Exponent chunk) const;

  // Requires every factor exponent and every residue exponent divisible by p^r.
  FactoredPolynomial frobenius_root(Exponent r) const;

  FactoredPolynomial swap_variables(std::size_t i, std::size_t j) const;

  // Structural equality of canonical forms. Use expand() to compare values.
  friend bool operator==(const FactoredPolynomial&, const FactoredPolynomial&) = default;

 private:
  void normalize();

  Polynomial residue_;
  std::vector<PowerFactor> factors_;
};

// "x^8*(y + 1)^8*(x^2*w + y)" style; parseable by parse_polynomial.
std::string to_string(const FactoredPolynomial& f);

}  // namespace blowcycle
