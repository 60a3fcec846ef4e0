#include "blowcycle/polynomial.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "blowcycle/errors.hpp"

namespace blowcycle {

namespace {

using Accumulator = std::unordered_map<ExponentVector, std::uint64_t, ExponentVectorHash>;

std::vector<Term> drain(Accumulator& acc) {
  std::vector<Term> out;
  out.reserve(acc.size());
  for (auto& [m, c] : acc)
    if (c != 0) out.push_back({m, c});
  std::sort(out.begin(), out.end(), [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
  return out;
}

void accumulate(Accumulator& acc, const PrimeField& field, const ExponentVector& m, std::uint64_t c) {
  auto [it, inserted] = acc.try_emplace(m, c);
  if (!inserted) it->second = field.add(it->second, c);
}

}  // namespace

Ring::Ring(std::uint64_t p, std::vector<std::string> names) : field_(p), names_(std::move(names)) {
  if (names_.size() > kMaxVariables)
    throw ParameterError("at most " + std::to_string(kMaxVariables) + " variables are supported");
  std::unordered_set<std::string> seen;
  for (const auto& n : names_) {
    if (n.empty()) throw ParameterError("empty variable name");
    if (!seen.insert(n).second) throw ParameterError("duplicate variable '" + n + "'");
  }
}

std::size_t Ring::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return i;
  throw ParameterError("unknown variable '" + std::string(name) + "'");
}

bool Ring::contains(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

RingPtr make_ring(std::uint64_t p, std::vector<std::string> names) {
  return std::make_shared<const Ring>(p, std::move(names));
}

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(RingPtr ring, std::vector<Term> terms) : ring_(std::move(ring)) {
  const auto& field = ring_->field();
  for (auto& t : terms) {
    if (t.exponents.size() != ring_->size())
      throw RingMismatch("exponent vector length does not match the number of variables");
    t.coefficient = field.reduce(t.coefficient);
  }
  std::sort(terms.begin(), terms.end(), [](const Term& a, const Term& b) { return a.exponents < b.exponents; });
  for (auto& t : terms) {
    if (!terms_.empty() && terms_.back().exponents == t.exponents) {
      terms_.back().coefficient = field.add(terms_.back().coefficient, t.coefficient);
      if (terms_.back().coefficient == 0) terms_.pop_back();
    } else if (t.coefficient != 0) {
      terms_.push_back(std::move(t));
    }
  }
}

Polynomial Polynomial::constant(RingPtr ring, std::uint64_t c) {
  const std::size_t n = ring->size();
  return Polynomial(std::move(ring), {{ExponentVector(n), c}});
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t i) {
  const std::size_t n = ring->size();
  if (i >= n) throw ParameterError("variable index out of range");
  return Polynomial(std::move(ring), {{ExponentVector::unit(n, i), 1}});
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view name) {
  const std::size_t i = ring->index_of(name);
  return variable(std::move(ring), i);
}

Polynomial Polynomial::monomial(RingPtr ring, const ExponentVector& m, std::uint64_t c) {
  return Polynomial(std::move(ring), {{m, c}});
}

bool Polynomial::is_constant() const {
  return terms_.empty() || (terms_.size() == 1 && terms_.front().exponents.is_zero());
}

std::uint64_t Polynomial::coefficient(const ExponentVector& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const ExponentVector& key) { return t.exponents < key; });
  return (it != terms_.end() && it->exponents == m) ? it->coefficient : 0;
}

std::uint64_t Polynomial::constant_term() const {
  if (terms_.empty() || !terms_.front().exponents.is_zero()) return 0;
  return terms_.front().coefficient;
}

void require_same_ring(const Polynomial& a, const Polynomial& b) {
  if (a.ring_ptr() != b.ring_ptr() && !(a.ring() == b.ring()))
    throw RingMismatch("polynomials live in different rings");
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(*this, other);
  const auto& field = ring_->field();
  std::vector<Term> merged;
  merged.reserve(terms_.size() + other.terms_.size());
  auto a = terms_.begin();
  auto b = other.terms_.begin();
  while (a != terms_.end() || b != other.terms_.end()) {
    if (b == other.terms_.end() || (a != terms_.end() && a->exponents < b->exponents)) {
      merged.push_back(*a++);
    } else if (a == terms_.end() || b->exponents < a->exponents) {
      merged.push_back(*b++);
    } else {
      const auto c = field.add(a->coefficient, b->coefficient);
      if (c != 0) merged.push_back({a->exponents, c});
      ++a;
      ++b;
    }
  }
  terms_ = std::move(merged);
  return *this;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& t : out.terms_) t.coefficient = ring_->field().neg(t.coefficient);
  return out;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) { return *this += -other; }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(a, b);
  if (a.is_zero() || b.is_zero()) return Polynomial(a.ring_ptr());
  const auto& field = a.ring().field();
  if (a.size() == 1 || b.size() == 1) {
    const auto& mono = a.size() == 1 ? a.terms_.front() : b.terms_.front();
    const auto& other = a.size() == 1 ? b : a;
    Polynomial out(a.ring_ptr());
    out.terms_.reserve(other.size());
    for (const auto& t : other.terms_) out.terms_.push_back({t.exponents + mono.exponents, field.mul(t.coefficient, mono.coefficient)});
    return out;  // shifting by a monomial preserves the order
  }
  Accumulator acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_)
    for (const auto& t : b.terms_) accumulate(acc, field, s.exponents + t.exponents, field.mul(s.coefficient, t.coefficient));
  Polynomial out(a.ring_ptr());
  out.terms_ = drain(acc);
  return out;
}

Polynomial& Polynomial::operator*=(const Polynomial& other) { return *this = *this * other; }

bool operator==(const Polynomial& a, const Polynomial& b) {
  return (a.ring_ == b.ring_ || *a.ring_ == *b.ring_) && a.terms_ == b.terms_;
}

Polynomial add(const Polynomial& a, const Polynomial& b) { return a + b; }
Polynomial mul(const Polynomial& a, const Polynomial& b) { return a * b; }

Polynomial scale(const Polynomial& f, std::uint64_t c) {
  return f * Polynomial::constant(f.ring_ptr(), c);
}

Polynomial multiply_by_monomial(const Polynomial& f, const ExponentVector& m) {
  return f * Polynomial::monomial(f.ring_ptr(), m);
}

Polynomial frobenius_power(const Polynomial& f, Exponent r) {
  if (r == 0) return f;
  const Exponent factor = checked_pow(f.characteristic(), r);
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) terms.push_back({t.exponents.scaled(factor), t.coefficient});
  return Polynomial(f.ring_ptr(), std::move(terms));
}

namespace {

Polynomial small_pow(const Polynomial& f, Exponent n) {
  Polynomial result = Polynomial::one(f.ring_ptr());
  Polynomial base = f;
  while (n > 0) {
    if (n & 1) result *= base;
    n >>= 1;
    if (n) base *= base;
  }
  return result;
}

}  // namespace

Polynomial pow(const Polynomial& f, Exponent n) {
  if (n == 0) return Polynomial::one(f.ring_ptr());
  if (f.is_zero()) return f;
  if (f.is_monomial()) {
    const auto& t = f.terms().front();
    return Polynomial::monomial(f.ring_ptr(), t.exponents.scaled(n), f.ring().field().pow(t.coefficient, n));
  }
  const Exponent p = f.characteristic();
  Polynomial result = Polynomial::one(f.ring_ptr());
  Exponent level = 0;
  while (n > 0) {
    const Exponent digit = n % p;
    if (digit != 0) result *= frobenius_power(small_pow(f, digit), level);
    n /= p;
    ++level;
  }
  return result;
}

Polynomial substitute(const Polynomial& f, std::span<const Polynomial> images) {
  if (images.size() != f.num_vars()) throw RingMismatch("substitution needs one image per variable");
  if (images.empty()) return f;
  const RingPtr& target = images.front().ring_ptr();
  for (const auto& img : images) require_same_ring(images.front(), img);
  const auto& field = target->field();

  std::vector<std::map<Exponent, Polynomial>> cache(images.size());
  auto power_of = [&](std::size_t i, Exponent e) -> const Polynomial& {
    auto it = cache[i].find(e);
    if (it == cache[i].end()) it = cache[i].emplace(e, pow(images[i], e)).first;
    return it->second;
  };

  Accumulator acc;
  for (const auto& t : f.terms()) {
    Polynomial product = Polynomial::constant(target, t.coefficient);
    for (std::size_t i = 0; i < images.size() && !product.is_zero(); ++i)
      if (t.exponents[i] != 0) product *= power_of(i, t.exponents[i]);
    for (const auto& s : product.terms()) accumulate(acc, field, s.exponents, s.coefficient);
  }
  return Polynomial(target, drain(acc));
}

Polynomial substitute(const Polynomial& f, const std::map<std::string, Polynomial>& images) {
  std::vector<Polynomial> ordered;
  ordered.reserve(f.num_vars());
  for (const auto& name : f.ring().names()) {
    auto it = images.find(name);
    if (it == images.end()) throw ParameterError("no image given for variable '" + name + "'");
    ordered.push_back(it->second);
  }
  return substitute(f, ordered);
}

Order order(const Polynomial& f) {
  Order best = Order::infinity();
  for (const auto& t : f.terms()) best = std::min(best, Order(t.exponents.total_degree()));
  return best;
}

Order order_along(const Polynomial& f, std::size_t i) {
  if (i >= f.num_vars()) throw ParameterError("variable index out of range");
  Order best = Order::infinity();
  for (const auto& t : f.terms()) best = std::min(best, Order(t.exponents[i]));
  return best;
}

Order gamma_order(const Polynomial& f, std::span<const std::size_t> gamma) {
  Order best = Order::infinity();
  for (const auto& t : f.terms()) {
    Exponent s = 0;
    for (auto i : gamma) s = checked_add(s, t.exponents.values()[i]);
    best = std::min(best, Order(s));
  }
  return best;
}

ExponentVector monomial_content(const Polynomial& f) {
  if (f.is_zero()) throw Error("monomial content of the zero polynomial");
  ExponentVector m = f.terms().front().exponents;
  for (const auto& t : f.terms()) m = componentwise_min(m, t.exponents);
  return m;
}

Polynomial divide_by_monomial(const Polynomial& f, const ExponentVector& m) {
  if (m.size() != f.num_vars()) throw RingMismatch("monomial length does not match the ring");
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    if (!m.divides(t.exponents))
      throw DivisibilityError("monomial " + to_string(m) + " does not divide term " + to_string(t.exponents));
    terms.push_back({t.exponents - m, t.coefficient});
  }
  return Polynomial(f.ring_ptr(), std::move(terms));
}

Polynomial initial_form(const Polynomial& f) {
  if (f.is_zero()) throw Error("initial form of the zero polynomial");
  const Exponent d = order(f).value();
  std::vector<Term> terms;
  for (const auto& t : f.terms())
    if (t.exponents.total_degree() == d) terms.push_back(t);
  return Polynomial(f.ring_ptr(), std::move(terms));
}

Exponent max_frobenius_power(const Polynomial& f) {
  if (f.is_zero()) throw Error("Frobenius power of the zero polynomial");
  const Exponent p = f.characteristic();
  Exponent g = 0;
  for (const auto& t : f.terms())
    for (auto e : t.exponents) g = std::gcd(g, e);
  if (g == 0) return 64;
  Exponent r = 0;
  while (g % p == 0) {
    g /= p;
    ++r;
  }
  return r;
}

Polynomial frobenius_root(const Polynomial& f, Exponent r) {
  if (r == 0) return f;
  const Exponent q = checked_pow(f.characteristic(), r);
  std::vector<Term> terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    ExponentVector m(t.exponents.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (t.exponents[i] % q != 0)
        throw DivisibilityError("term " + to_string(t.exponents) + " is not a " + std::to_string(q) + "-th power");
      m[i] = t.exponents[i] / q;
    }
    terms.push_back({m, t.coefficient});
  }
  return Polynomial(f.ring_ptr(), std::move(terms));
}

Polynomial swap_variables(const Polynomial& f, std::size_t i, std::size_t j) {
  std::vector<Term> terms(f.terms().begin(), f.terms().end());
  for (auto& t : terms) std::swap(t.exponents[i], t.exponents[j]);
  return Polynomial(f.ring_ptr(), std::move(terms));
}

std::string to_string(const Polynomial& f) {
  if (f.is_zero()) return "0";
  std::string out;
  const auto& names = f.ring().names();
  for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
    if (!out.empty()) out += " + ";
    std::string mono;
    for (std::size_t i = 0; i < names.size(); ++i) {
      const Exponent e = it->exponents[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += names[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty())
      out += std::to_string(it->coefficient);
    else if (it->coefficient == 1)
      out += mono;
    else
      out += std::to_string(it->coefficient) + "*" + mono;
  }
  return out;
}

namespace {

class PolynomialParser {
 public:
  PolynomialParser(std::string_view text, const RingPtr& ring, std::size_t line, std::size_t offset)
      : text_(text), ring_(ring), line_(line), offset_(offset) {}

  Polynomial parse() {
    skip_space();
    if (at_end()) fail("expected a polynomial");
    Polynomial result = expression();
    skip_space();
    if (!at_end()) fail(std::string("unexpected '") + text_[pos_] + "'");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { throw ParseError(line_, offset_ + pos_ + 1, message); }

  bool at_end() const { return pos_ >= text_.size(); }
  void skip_space() {
    while (!at_end() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  bool accept(char c) {
    skip_space();
    if (!at_end() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  Polynomial expression() {
    Polynomial result = Polynomial::zero(ring_);
    bool negate = false;
    if (accept('-'))
      negate = true;
    else
      accept('+');
    result = negate ? -product() : product();
    for (;;) {
      if (accept('+'))
        result += product();
      else if (accept('-'))
        result -= product();
      else
        return result;
    }
  }

  Polynomial product() {
    Polynomial result = power();
    while (accept('*')) result *= power();
    return result;
  }

  Polynomial power() {
    Polynomial base = atom();
    if (accept('^')) {
      skip_space();
      const auto exponent = natural("exponent");
      base = pow(base, exponent);
    }
    return base;
  }

  Exponent natural(const char* what) {
    if (at_end() || !std::isdigit(static_cast<unsigned char>(text_[pos_]))) fail(std::string("expected ") + what);
    Exponent value = 0;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      value = checked_add(checked_mul(value, 10), static_cast<Exponent>(text_[pos_] - '0'));
      ++pos_;
    }
    return value;
  }

  Polynomial atom() {
    skip_space();
    if (at_end()) fail("unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      Polynomial inner = expression();
      if (!accept(')')) fail("expected ')'");
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      const auto& field = ring_->field();
      std::uint64_t value = 0;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
        value = field.add(field.mul(value, 10 % field.characteristic()), field.reduce(static_cast<std::uint64_t>(text_[pos_] - '0')));
        ++pos_;
      }
      return Polynomial::constant(ring_, value);
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      const std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
      const std::string name(text_.substr(start, pos_ - start));
      if (!ring_->contains(name)) {
        pos_ = start;
        fail("undeclared variable '" + name + "'");
      }
      return Polynomial::variable(ring_, name);
    }
    fail(std::string("unexpected '") + c + "'");
  }

  std::string_view text_;
  const RingPtr& ring_;
  std::size_t line_;
  std::size_t offset_;
  std::size_t pos_ = 0;
};

}  // namespace

Polynomial parse_polynomial(std::string_view text, const RingPtr& ring, std::size_t line, std::size_t column_offset) {
  return PolynomialParser(text, ring, line, column_offset).parse();
}

}  // namespace blowcycle
