#pragma once

#include <cstdint>
#include <ostream>

namespace blowcycle {

using Exponent = std::uint64_t;

// Largest characteristic accepted; keeps products of two residues inside 64 bits.
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

bool is_prime(std::uint64_t n);

// Checked arithmetic on exponents; throws OverflowError instead of wrapping.
Exponent checked_add(Exponent a, Exponent b);
Exponent checked_mul(Exponent a, Exponent b);
Exponent checked_pow(Exponent base, Exponent exp);

// Residue class modulo the ring's characteristic. The value is always reduced.
struct FieldElem {
  std::uint64_t value = 0;

  friend bool operator==(FieldElem, FieldElem) = default;
  friend auto operator<=>(FieldElem, FieldElem) = default;
};

// Arithmetic in F_p.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p);

  std::uint64_t characteristic() const { return p_; }

  std::uint64_t reduce(std::uint64_t v) const { return v % p_; }
  std::uint64_t reduce_signed(std::int64_t v) const;
  std::uint64_t add(std::uint64_t a, std::uint64_t b) const { return (a + b) % p_; }
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const { return (a + p_ - b) % p_; }
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : p_ - a; }
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const { return (a * b) % p_; }
  std::uint64_t pow(std::uint64_t a, Exponent e) const;
  std::uint64_t inv(std::uint64_t a) const;

  FieldElem elem(std::uint64_t v) const { return FieldElem{reduce(v)}; }

 private:
  std::uint64_t p_;
};

inline std::ostream& operator<<(std::ostream& os, FieldElem c) { return os << c.value; }

}  // namespace blowcycle
