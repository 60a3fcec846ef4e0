#include <doctest.h>

#include <random>

#include "blowcycle/errors.hpp"
#include "blowcycle/polynomial.hpp"
#include "oracle.hpp"

using namespace blowcycle;

namespace {

Polynomial P(const RingPtr& ring, const char* text) { return parse_polynomial(text, ring); }

}  // namespace

TEST_CASE("prime field arithmetic") {
  PrimeField f(7);
  CHECK(f.add(5, 4) == 2);
  CHECK(f.sub(2, 5) == 4);
  CHECK(f.mul(3, 5) == 1);
  CHECK(f.inv(3) == 5);
  CHECK(f.reduce_signed(-1) == 6);
  CHECK(f.pow(3, 6) == 1);
  CHECK_THROWS_AS(PrimeField(8), ParameterError);
  CHECK_THROWS_AS(PrimeField(1), ParameterError);
  CHECK_THROWS_AS(f.inv(0), Error);
}

TEST_CASE("checked exponent arithmetic signals overflow") {
  CHECK(checked_add(2, 3) == 5);
  CHECK_THROWS_AS(checked_add(UINT64_MAX, 1), OverflowError);
  CHECK_THROWS_AS(checked_mul(UINT64_MAX / 2, 3), OverflowError);
  CHECK(checked_pow(3, 3) == 27);
  CHECK_THROWS_AS(checked_pow(2, 64), OverflowError);

  auto ring = make_ring(2, {"x"});
  const Polynomial big = Polynomial::monomial(ring, ExponentVector{Exponent{1} << 63});
  CHECK_THROWS_AS(big * big, OverflowError);
  ExponentVector v{Exponent{1} << 63};
  CHECK_THROWS_AS(v += v, OverflowError);
}

TEST_CASE("add") {
  auto r2 = make_ring(2, {"x", "y"});
  auto r3 = make_ring(3, {"x", "y"});
  CHECK((P(r2, "x + y") + P(r2, "x + y")).is_zero());
  CHECK(P(r2, "x*y + 1") + Polynomial(r2) == P(r2, "x*y + 1"));
  const Polynomial s = P(r3, "x^2") + P(r3, "y^2");
  CHECK(s.size() == 2);
  CHECK(to_string(s) == "x^2 + y^2");
  CHECK_THROWS_AS(P(r2, "x") + P(r3, "x"), RingMismatch);
}

TEST_CASE("mul and Frobenius") {
  auto r2 = make_ring(2, {"x", "y"});
  CHECK(pow(P(r2, "x + y"), 4) == P(r2, "x^4 + y^4"));
  CHECK(P(r2, "x + y") * P(r2, "x + y") == P(r2, "x^2 + y^2"));
  CHECK(pow(P(r2, "x + y + 1"), 5) == P(r2, "x + y + 1") * P(r2, "x^4 + y^4 + 1"));

  auto ring = make_ring(2, {"x", "y", "w"});
  const Polynomial f = P(ring, "w*(x+y)^4 + x^13");
  REQUIRE(f.size() == 3);
  CHECK(f.coefficient(ExponentVector{4, 0, 1}) == 1);
  CHECK(f.coefficient(ExponentVector{0, 4, 1}) == 1);
  CHECK(f.coefficient(ExponentVector{13, 0, 0}) == 1);
}

TEST_CASE("pow agrees with repeated multiplication") {
  std::mt19937_64 rng(11);
  for (std::uint64_t p : {2, 3, 5}) {
    auto ring = make_ring(p, {"x", "y"});
    for (int k = 0; k < 10; ++k) {
      const Polynomial f = oracle::random_poly(ring, rng, 3, 2);
      const std::uint64_t n = rng() % 12;
      CHECK(oracle::from(pow(f, n)) == oracle::power(oracle::from(f), n, p, 2));
    }
  }
}

TEST_CASE("ring axioms on random polynomials") {
  std::mt19937_64 rng(5);
  std::size_t cases = 0;
  for (std::uint64_t p : {2, 3, 5}) {
    auto ring = make_ring(p, {"x", "y", "w"});
    for (int k = 0; k < 40; ++k, ++cases) {
      const Polynomial a = oracle::random_poly(ring, rng, 5, 4);
      const Polynomial b = oracle::random_poly(ring, rng, 5, 4);
      const Polynomial c = oracle::random_poly(ring, rng, 5, 4);
      CHECK(a * b == b * a);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(oracle::from(a * b) == oracle::mul(oracle::from(a), oracle::from(b), p));
    }
  }
  CHECK(cases >= 100);
}

TEST_CASE("substitute") {
  auto ring = make_ring(kMaxPrime, {"x", "y", "z"});
  const Polynomial x = Polynomial::variable(ring, "x");
  const Polynomial y = Polynomial::variable(ring, "y");
  const Polynomial z = Polynomial::variable(ring, "z");
  for (auto [a, b, c] : {std::array<Exponent, 3>{2, 3, 3}, {3, 5, 1}, {1, 1, 1}}) {
    const Polynomial f = Polynomial::monomial(ring, ExponentVector{a, 0, 0}) - Polynomial::monomial(ring, ExponentVector{0, b, c});
    const std::vector<Polynomial> images{z * x, z * y, z};
    const Polynomial t = divide_by_monomial(substitute(f, images), ExponentVector{0, 0, a});
    CHECK(t == Polynomial::monomial(ring, ExponentVector{a, 0, 0}) -
                   Polynomial::monomial(ring, ExponentVector{0, b, c + b - a}));
  }

  auto r3 = make_ring(3, {"x", "y"});
  const Polynomial f = P(r3, "x^2*y + 2*y^3 + 1");
  const std::vector<Polynomial> id{Polynomial::variable(r3, 0), Polynomial::variable(r3, 1)};
  CHECK(substitute(f, id) == f);
  CHECK(substitute(f, std::map<std::string, Polynomial>{{"x", P(r3, "x")}, {"y", P(r3, "x")}}) == P(r3, "1"));
  CHECK_THROWS_AS(substitute(f, std::map<std::string, Polynomial>{{"y", P(r3, "x")}}), ParameterError);
  CHECK_THROWS_AS(substitute(f, std::vector<Polynomial>{id[0]}), Error);
}

TEST_CASE("substitution composes") {
  std::mt19937_64 rng(17);
  int cases = 0;
  for (int k = 0; k < 100; ++k, ++cases) {
    const std::uint64_t p = k % 2 ? 3 : 2;
    auto ring = make_ring(p, {"x", "y", "w"});
    const Polynomial f = oracle::random_poly(ring, rng, 4, 5);
    std::vector<Polynomial> m1, m2, composed;
    std::vector<oracle::Poly> n1, n2;
    for (int i = 0; i < 3; ++i) {
      m1.push_back(oracle::random_poly(ring, rng, 3, 2));
      m2.push_back(oracle::random_poly(ring, rng, 2, 2));
      n1.push_back(oracle::from(m1.back()));
      n2.push_back(oracle::from(m2.back()));
    }
    for (int i = 0; i < 3; ++i) composed.push_back(substitute(m1[i], m2));
    const Polynomial twice = substitute(substitute(f, m1), m2);
    CHECK(twice == substitute(f, composed));
    CHECK(oracle::from(twice) == oracle::substitute(oracle::substitute(oracle::from(f), n1, p, 3), n2, p, 3));
  }
  CHECK(cases == 100);
}

TEST_CASE("order") {
  auto ring = make_ring(2, {"x", "y", "w"});
  const Polynomial moh = P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)");
  CHECK(order(moh) == Order(12));
  CHECK(oracle::min_total_degree(oracle::from(moh)) == 12);
  CHECK(order(Polynomial(ring)).is_infinite());
  CHECK(order(P(ring, "w*(x+y)^4 + x^13")) == Order(5));
  CHECK(order(P(ring, "1 + x")) == Order(0));
}

TEST_CASE("order along a variable") {
  auto ring = make_ring(2, {"x", "y", "w"});
  const Polynomial moh = P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)");
  CHECK(order_along(moh, 2) == Order(3));
  CHECK(order_along(moh, 0) == Order(2));
  CHECK(order_along(moh, 1) == Order(2));
  CHECK(order_along(P(ring, "x*y + w"), 0) == Order(0));
  CHECK(order_along(Polynomial(ring), 0).is_infinite());
}

TEST_CASE("order is additive") {
  std::mt19937_64 rng(23);
  for (int k = 0; k < 100; ++k) {
    auto ring = make_ring(k % 2 ? 3 : 5, {"x", "y", "w"});
    const Polynomial f = oracle::random_poly(ring, rng, 4, 4);
    const Polynomial g = oracle::random_poly(ring, rng, 4, 4);
    CHECK(order(f * g) == order(f) + order(g));
    for (std::size_t i = 0; i < 3; ++i) CHECK(order_along(f * g, i) == order_along(f, i) + order_along(g, i));
  }
}

TEST_CASE("gamma order") {
  auto ring = make_ring(2, {"x", "y", "w"});
  const Polynomial moh = P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)");
  const std::vector<std::size_t> x{0}, all{0, 1, 2}, xw{0, 2};
  CHECK(gamma_order(moh, x) == Order(2));
  CHECK(gamma_order(moh, all) == Order(12));
  CHECK(gamma_order(moh, xw) == Order(oracle::gamma_order(oracle::from(moh), xw)));
}

TEST_CASE("divide by monomial") {
  auto ring = make_ring(2, {"x", "y", "w"});
  CHECK(divide_by_monomial(P(ring, "x^3*y"), ExponentVector{2, 0, 0}) == P(ring, "x*y"));
  CHECK_THROWS_AS(divide_by_monomial(P(ring, "x"), ExponentVector{0, 1, 0}), DivisibilityError);

  // Moh: pi(F) / x^4 before cleaning.
  const Polynomial F = P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)");
  const std::vector<Polynomial> images{P(ring, "x"), P(ring, "x*(y+1)"), P(ring, "x*w")};
  const Polynomial t = divide_by_monomial(substitute(F, images), ExponentVector{4, 0, 0});
  CHECK(t == P(ring, "(y+1)^2*x^8*w^3*(w*y^4 + x^8)"));
  CHECK(t == P(ring, "x^8*w^3*(w*y^4 + w*y^6 + x^8 + x^8*y^2)"));

  std::mt19937_64 rng(29);
  for (int k = 0; k < 50; ++k) {
    const Polynomial f = oracle::random_poly(ring, rng, 5, 5);
    const ExponentVector m{rng() % 5, rng() % 5, rng() % 5};
    CHECK(divide_by_monomial(multiply_by_monomial(f, m), m) == f);
    CHECK(divide_by_monomial(f * Polynomial::monomial(ring, m), m) == f);
  }
}

TEST_CASE("initial form") {
  auto ring = make_ring(2, {"x", "y", "w"});
  const Polynomial moh = P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)");
  const Polynomial in = initial_form(moh);
  CHECK(in == P(ring, "x^2*y^2*w^4*(x+y)^4"));
  oracle::Poly degree12;
  for (const auto& [m, c] : oracle::from(moh))
    if (m[0] + m[1] + m[2] == 12) degree12[m] = c;
  CHECK(oracle::from(in) == degree12);
  CHECK(initial_form(P(ring, "x^3*y")) == P(ring, "x^3*y"));
  CHECK(initial_form(P(ring, "x^2 + y^2 + x^3")) == P(ring, "x^2 + y^2"));
  CHECK_THROWS_AS(initial_form(Polynomial(ring)), Error);
}

TEST_CASE("max Frobenius power") {
  auto ring = make_ring(2, {"x", "y", "w"});
  CHECK(max_frobenius_power(initial_form(P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)"))) == 1);
  CHECK(max_frobenius_power(P(ring, "x")) == 0);
  CHECK(max_frobenius_power(P(ring, "x^4")) == 2);
  for (std::uint64_t p : {3, 5, 7}) {
    auto r = make_ring(p, {"x"});
    CHECK(max_frobenius_power(Polynomial::monomial(r, ExponentVector{p * p})) == 2);
    CHECK(max_frobenius_power(Polynomial::monomial(r, ExponentVector{p})) == 1);
  }
}

TEST_CASE("Frobenius root") {
  auto ring = make_ring(2, {"x", "y", "w"});
  CHECK(frobenius_root(P(ring, "x^8*w^4*y^4"), 2) == P(ring, "x^2*w*y"));
  CHECK_THROWS_AS(frobenius_root(P(ring, "x^2*y"), 1), DivisibilityError);
  for (std::uint64_t p : {2, 3, 5}) {
    auto r = make_ring(p, {"x"});
    CHECK(frobenius_root(Polynomial::constant(r, p - 1), 3) == Polynomial::constant(r, p - 1));
  }

  std::mt19937_64 rng(31);
  for (int k = 0; k < 100; ++k) {
    const std::uint64_t p = std::array<std::uint64_t, 3>{2, 3, 5}[k % 3];
    const Exponent rr = p == 5 ? 1 : 1 + rng() % 2;
    auto r = make_ring(p, {"x", "y"});
    const Polynomial g = oracle::random_poly(r, rng, 3, 2);
    const Polynomial f = frobenius_power(g, rr);
    const Polynomial root = frobenius_root(f, rr);
    CHECK(oracle::from(f) == oracle::power(oracle::from(root), checked_pow(p, rr), p, 2));
    if (!f.is_zero() && !f.is_constant()) CHECK(max_frobenius_power(f) >= rr);
  }
}

TEST_CASE("canonical text round trip") {
  auto ring = make_ring(3, {"x", "y", "w"});
  std::mt19937_64 rng(37);
  for (int k = 0; k < 50; ++k) {
    const Polynomial f = oracle::random_poly(ring, rng, 6, 6);
    CHECK(parse_polynomial(to_string(f), ring) == f);
  }
  CHECK(to_string(P(ring, "2*x^3*y + y^2 - 1")) == "2*x^3*y + y^2 + 2");
  CHECK(to_string(Polynomial(ring)) == "0");
  CHECK(P(ring, "-(x - y)^2") == P(ring, "2*x^2 + 2*x*y + 2*y^2"));
  CHECK(P(ring, "4*x") == P(ring, "x"));
}

TEST_CASE("parse errors carry positions") {
  auto ring = make_ring(2, {"x", "y"});
  try {
    parse_polynomial("x + q", ring);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 1);
    CHECK(e.column() == 5);
    CHECK(e.message() == "undeclared variable 'q'");
  }
  CHECK_THROWS_AS(parse_polynomial("x +", ring), ParseError);
  CHECK_THROWS_AS(parse_polynomial("(x", ring), ParseError);
  CHECK_THROWS_AS(parse_polynomial("x^", ring), ParseError);
  CHECK_THROWS_AS(parse_polynomial("", ring), ParseError);
}

TEST_CASE("ring construction") {
  CHECK_THROWS_AS(make_ring(4, {"x"}), ParameterError);
  CHECK_THROWS_AS(make_ring(2, {"x", "x"}), ParameterError);
  CHECK_THROWS_AS(make_ring(2, std::vector<std::string>(13, "v")), ParameterError);
  auto ring = make_ring(2, {"x", "y"});
  CHECK(ring->index_of("y") == 1);
  CHECK_THROWS_AS(ring->index_of("w"), ParameterError);
}
