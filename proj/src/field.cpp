#include "blowcycle/field.hpp"

#include "blowcycle/errors.hpp"

namespace blowcycle {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0) return false;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

Exponent checked_add(Exponent a, Exponent b) {
  Exponent out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError("exponent overflow in addition");
  return out;
}

Exponent checked_mul(Exponent a, Exponent b) {
  Exponent out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError("exponent overflow in multiplication");
  return out;
}

Exponent checked_pow(Exponent base, Exponent exp) {
  Exponent out = 1;
  while (exp > 0) {
    if (exp & 1) out = checked_mul(out, base);
    exp >>= 1;
    if (exp) base = checked_mul(base, base);
  }
  return out;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (p > kMaxPrime) throw ParameterError("characteristic " + std::to_string(p) + " is too large");
  if (!is_prime(p)) throw ParameterError("characteristic " + std::to_string(p) + " is not prime");
}

std::uint64_t PrimeField::reduce_signed(std::int64_t v) const {
  const auto p = static_cast<std::int64_t>(p_);
  std::int64_t r = v % p;
  if (r < 0) r += p;
  return static_cast<std::uint64_t>(r);
}

std::uint64_t PrimeField::pow(std::uint64_t a, Exponent e) const {
  std::uint64_t result = 1 % p_;
  a %= p_;
  while (e > 0) {
    if (e & 1) result = mul(result, a);
    e >>= 1;
    if (e) a = mul(a, a);
  }
  return result;
}

std::uint64_t PrimeField::inv(std::uint64_t a) const {
  if (a % p_ == 0) throw Error("division by zero in F_" + std::to_string(p_));
  return pow(a, p_ - 2);
}

}  // namespace blowcycle
