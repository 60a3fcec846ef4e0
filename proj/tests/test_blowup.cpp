#include <doctest.h>

#include <algorithm>
#include <random>

#include "blowcycle/blowup.hpp"
#include "blowcycle/errors.hpp"
#include "oracle.hpp"

using namespace blowcycle;

namespace {

Polynomial P(const RingPtr& ring, const char* text) { return parse_polynomial(text, ring); }

}  // namespace

TEST_CASE("blowup specs") {
  auto ring = make_ring(3, {"x", "y", "w"});
  const BlowupSpec s = BlowupSpec::point(*ring, "x", {{"w", 2}, {"y", 0}});
  CHECK(s.translations().size() == 1);
  CHECK(s.translation(2).value == 2);
  CHECK(s.translation(1).value == 0);
  CHECK(describe(s, *ring) == "x-chart, w->w+2");
  CHECK(describe(BlowupSpec::curve(1), *ring) == "center (z,y), y-chart");
  CHECK_THROWS_AS(BlowupSpec(Center({0, 1}), 2), ParameterError);
  CHECK_THROWS_AS(BlowupSpec(Center({0, 1}), 0, {{0, FieldElem{1}}}), ParameterError);
  CHECK_THROWS_AS(BlowupSpec(Center({0, 1}), 0, {{2, FieldElem{1}}}), ParameterError);
  CHECK_THROWS_AS(BlowupSpec::point(*ring, "q"), ParameterError);
}

TEST_CASE("build map") {
  auto ring = make_ring(2, {"x", "y", "u", "w"});
  const auto m = build_map(BlowupSpec::point(*ring, "x", {{"y", 1}}), ring);
  CHECK(m[0] == P(ring, "x"));
  CHECK(m[1] == P(ring, "x*(y+1)"));
  CHECK(m[2] == P(ring, "x*u"));
  CHECK(m[3] == P(ring, "x*w"));

  const auto c = build_map(BlowupSpec::curve(2), ring);
  for (std::size_t i = 0; i < 4; ++i) CHECK(c[i] == Polynomial::variable(ring, i));

  const auto sub = build_map(BlowupSpec(Center({0, 3}), 3), ring);
  CHECK(sub[0] == P(ring, "x*w"));
  CHECK(sub[1] == P(ring, "y"));
  CHECK(sub[3] == P(ring, "w"));
}

TEST_CASE("Moh strict transform") {
  auto ring = make_ring(2, {"x", "y", "w"});
  const InsepHypersurface h(2, P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)"));
  const DivisorState E({0, 1, 2});
  const auto out = strict_transform(h, E, BlowupSpec::point(*ring, "x", {{"y", 1}}));
  CHECK(out.status == TransformStatus::SameOrder);
  CHECK(out.h_after.F().expand() == P(ring, "x^8*w^3*(w*y^6 + x^8 + x^8*y^2)"));
  CHECK(out.cleaning_delta.expand() == P(ring, "x^2*w*y"));
  CHECK(out.E_after == DivisorState({0, 2}));
  CHECK(out.cross_checked);
  CHECK(residual_order(out.h_after, out.E_after) == Order(7));
}

TEST_CASE("non-permissible centers are rejected") {
  auto ring = make_ring(2, {"x", "y", "w"});
  const InsepHypersurface h(2, P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)"));
  const DivisorState E({0, 1, 2});
  CHECK_THROWS_AS(strict_transform(h, E, BlowupSpec(Center({0}), 0)), PermissibilityError);
  CHECK_THROWS_AS(strict_transform(h, E, BlowupSpec(Center({1, 2}), 1)), PermissibilityError);
}

TEST_CASE("x^q times a unit") {
  auto ring = make_ring(2, {"x", "y"});
  const Polynomial F = P(ring, "x^8*(1 + y)");
  auto [g, kept] = clean(F, 3);
  CHECK(g == P(ring, "x"));
  CHECK(kept == P(ring, "x^8*y"));
  const InsepHypersurface h(3, kept);
  // Monomial state: G is a unit.
  CHECK(residual_order(h, DivisorState({0, 1})) == Order(0));

  const auto out = strict_transform(h, DivisorState({0, 1}), BlowupSpec::point(*ring, "x"));
  const std::vector<oracle::Poly> images{oracle::from(P(ring, "x")), oracle::from(P(ring, "x*y"))};
  oracle::Poly manual = oracle::substitute(oracle::from(kept), images, 2, 2);
  oracle::Poly divided;
  for (const auto& [m, c] : manual) divided[{m[0] - 8, m[1]}] = c;
  CHECK(oracle::from(out.h_after.F().expand()) == divided);
  CHECK(out.status == TransformStatus::OrderDropped);
  CHECK(out.new_order == Order(2));
}

TEST_CASE("order never exceeds p^e after a permissible blowup") {
  std::mt19937_64 rng(61);
  std::size_t drops = 0, kept = 0;
  for (int k = 0; k < 60; ++k) {
    const std::uint64_t p = k % 2 ? 3 : 2;
    const std::uint32_t e = 1;
    auto ring = make_ring(p, {"x", "y", "w"});
    Polynomial F = oracle::random_poly(ring, rng, 5, 4) * Polynomial::monomial(ring, ExponentVector{p, 1, 0});
    auto [g, clean_F] = clean(F, e);
    const InsepHypersurface h(e, clean_F);
    if (!h.has_full_order() || clean_F.is_zero()) continue;
    const DivisorState E({0});
    const std::size_t chart = rng() % 3;
    std::vector<Translation> ts;
    for (std::size_t i = 0; i < 3; ++i)
      if (i != chart && rng() % 2) ts.push_back({i, FieldElem{1}});
    const auto out = strict_transform(h, E, BlowupSpec::point(*ring, chart, ts));
    CHECK(out.status != TransformStatus::Resolved);
    CHECK((out.status == TransformStatus::SameOrder) == (out.h_after.F().order() >= Order(h.q())));
    if (out.status == TransformStatus::SameOrder) {
      ++kept;
      CHECK(out.h_after.has_full_order());
    } else {
      ++drops;
      CHECK(out.new_order < Order(h.q()));
    }
    CHECK(out.E_after.contains(chart));
    for (const auto& t : ts) CHECK_FALSE(out.E_after.contains(t.variable));
    for (auto i : E.indices()) {
      const bool translated = std::any_of(ts.begin(), ts.end(), [&](const Translation& t) { return t.variable == i; });
      if (!translated) CHECK(out.E_after.contains(i));
    }
  }
  CHECK(kept + drops > 0);
}

TEST_CASE("divisor transform rule") {
  auto ring = make_ring(2, {"x", "y", "u", "w"});
  const InsepHypersurface h(2, P(ring, "x^4*y^4*u^4*w^4*(x + y + u + w)"));
  const DivisorState E({0, 1, 2, 3});
  auto spec = BlowupSpec::point(*ring, "y", {{"x", 1}});
  const auto out = strict_transform(h, E, spec);
  CHECK(out.E_after == DivisorState::from_names(*ring, {"y", "u", "w"}));
  for (std::size_t i = 0; i < 4; ++i) CHECK(out.h_after.F().order_along(i).is_finite());
}

TEST_CASE("reduce exceptional") {
  auto ring = make_ring(2, {"x", "u"});
  const InsepHypersurface h(3, P(ring, "x^12*u"));
  const DivisorState E({0});
  const auto out = reduce_exceptional(h, E, 0);
  CHECK(out.h_after.F().expand() == P(ring, "x^4*u"));
  CHECK(out.E_after == E);
  CHECK(out.status == TransformStatus::OrderDropped);  // ord(x^4 u) = 5 < 8

  const InsepHypersurface exact(3, P(ring, "x^8*u^9"));
  const auto zero = reduce_exceptional(exact, E, 0);
  CHECK(zero.h_after.F().order_along(0) == Order(0));
  CHECK(zero.status == TransformStatus::SameOrder);
  CHECK(residual_order(zero.h_after, E) == residual_order(exact, E));

  CHECK_THROWS_AS(reduce_exceptional(InsepHypersurface(3, P(ring, "x^7*u^9")), E, 0), ParameterError);
  CHECK_THROWS_AS(reduce_exceptional(exact, DivisorState(), 0), ParameterError);
}
