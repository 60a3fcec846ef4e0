#pragma once

#include <algorithm>
#include <array>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <ostream>
#include <span>
#include <string>

#include "blowcycle/field.hpp"

namespace blowcycle {

inline constexpr std::size_t kMaxVariables = 12;

// Fixed-length exponent tuple stored inline. Entry arithmetic is overflow-checked.
class ExponentVector {
 public:
  ExponentVector() = default;
  explicit ExponentVector(std::size_t n);
  ExponentVector(std::initializer_list<Exponent> values);
  explicit ExponentVector(std::span<const Exponent> values);

  static ExponentVector unit(std::size_t n, std::size_t i, Exponent power = 1);

  std::size_t size() const { return size_; }
  Exponent operator[](std::size_t i) const { return data_[i]; }
  Exponent& operator[](std::size_t i) { return data_[i]; }

  std::span<const Exponent> values() const { return {data_.data(), size_}; }
  const Exponent* begin() const { return data_.data(); }
  const Exponent* end() const { return data_.data() + size_; }

  Exponent total_degree() const;
  bool is_zero() const;

  // Componentwise <=.
  bool divides(const ExponentVector& other) const;

  ExponentVector& operator+=(const ExponentVector& other);
  // Requires other.divides(*this); throws DivisibilityError otherwise.
  ExponentVector& operator-=(const ExponentVector& other);
  ExponentVector scaled(Exponent factor) const;

  friend ExponentVector operator+(ExponentVector a, const ExponentVector& b) { return a += b; }
  friend ExponentVector operator-(ExponentVector a, const ExponentVector& b) { return a -= b; }

  friend bool operator==(const ExponentVector& a, const ExponentVector& b) {
    return a.size_ == b.size_ && std::equal(a.begin(), a.end(), b.begin());
  }
  // Lexicographic in ring order.
  friend std::strong_ordering operator<=>(const ExponentVector& a, const ExponentVector& b) {
    return std::lexicographical_compare_three_way(a.begin(), a.end(), b.begin(), b.end());
  }

  std::size_t hash() const;

 private:
  std::array<Exponent, kMaxVariables> data_{};
  std::uint8_t size_ = 0;
};

ExponentVector componentwise_min(const ExponentVector& a, const ExponentVector& b);

std::string to_string(const ExponentVector& v);
inline std::ostream& operator<<(std::ostream& os, const ExponentVector& v) { return os << to_string(v); }

struct ExponentVectorHash {
  std::size_t operator()(const ExponentVector& v) const { return v.hash(); }
};

// A natural number or infinity; infinity compares above every natural.
class Order {
 public:
  constexpr Order() = default;
  constexpr Order(Exponent value) : value_(value), infinite_(false) {}  // NOLINT(google-explicit-constructor)
  static constexpr Order infinity() {
    Order o;
    o.infinite_ = true;
    return o;
  }

  constexpr bool is_infinite() const { return infinite_; }
  constexpr bool is_finite() const { return !infinite_; }
  Exponent value() const;

  friend constexpr bool operator==(const Order& a, const Order& b) {
    return a.infinite_ == b.infinite_ && (a.infinite_ || a.value_ == b.value_);
  }
  friend constexpr std::strong_ordering operator<=>(const Order& a, const Order& b) {
    if (a.infinite_ || b.infinite_) return a.infinite_ <=> b.infinite_;
    return a.value_ <=> b.value_;
  }
  friend Order operator+(const Order& a, const Order& b);

 private:
  Exponent value_ = 0;
  bool infinite_ = true;
};

std::string to_string(const Order& o);
inline std::ostream& operator<<(std::ostream& os, const Order& o) { return os << to_string(o); }

}  // namespace blowcycle
