#include "blowcycle/exponent.hpp"

#include "blowcycle/errors.hpp"

namespace blowcycle {

ExponentVector::ExponentVector(std::size_t n) : size_(static_cast<std::uint8_t>(n)) {
  if (n > kMaxVariables)
    throw ParameterError("at most " + std::to_string(kMaxVariables) + " variables are supported");
}

ExponentVector::ExponentVector(std::initializer_list<Exponent> values)
    : ExponentVector(std::span<const Exponent>(values.begin(), values.size())) {}

ExponentVector::ExponentVector(std::span<const Exponent> values) : ExponentVector(values.size()) {
  std::copy(values.begin(), values.end(), data_.begin());
}

ExponentVector ExponentVector::unit(std::size_t n, std::size_t i, Exponent power) {
  ExponentVector v(n);
  v[i] = power;
  return v;
}

Exponent ExponentVector::total_degree() const {
  Exponent sum = 0;
  for (auto e : *this) sum = checked_add(sum, e);
  return sum;
}

bool ExponentVector::is_zero() const {
  return std::all_of(begin(), end(), [](Exponent e) { return e == 0; });
}

bool ExponentVector::divides(const ExponentVector& other) const {
  for (std::size_t i = 0; i < size_; ++i)
    if (data_[i] > other.data_[i]) return false;
  return true;
}

ExponentVector& ExponentVector::operator+=(const ExponentVector& other) {
  for (std::size_t i = 0; i < size_; ++i) data_[i] = checked_add(data_[i], other.data_[i]);
  return *this;
}

ExponentVector& ExponentVector::operator-=(const ExponentVector& other) {
  if (!other.divides(*this))
    throw DivisibilityError("monomial " + to_string(other) + " does not divide " + to_string(*this));
  for (std::size_t i = 0; i < size_; ++i) data_[i] -= other.data_[i];
  return *this;
}

ExponentVector ExponentVector::scaled(Exponent factor) const {
  ExponentVector out(*this);
  for (std::size_t i = 0; i < size_; ++i) out.data_[i] = checked_mul(data_[i], factor);
  return out;
}

std::size_t ExponentVector::hash() const {
  std::size_t h = size_;
  for (auto e : *this) h = (h ^ std::hash<Exponent>{}(e)) * 0x100000001b3ULL + 0x9e3779b97f4a7c15ULL;
  return h;
}

ExponentVector componentwise_min(const ExponentVector& a, const ExponentVector& b) {
  ExponentVector out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = std::min(a[i], b[i]);
  return out;
}

std::string to_string(const ExponentVector& v) {
  std::string out = "(";
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ",";
    out += std::to_string(v[i]);
  }
  return out + ")";
}

Exponent Order::value() const {
  if (infinite_) throw Error("order is infinite");
  return value_;
}

Order operator+(const Order& a, const Order& b) {
  if (a.infinite_ || b.infinite_) return Order::infinity();
  return Order(checked_add(a.value_, b.value_));
}

std::string to_string(const Order& o) { return o.is_infinite() ? "inf" : std::to_string(o.value()); }

}  // namespace blowcycle
