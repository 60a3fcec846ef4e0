#include <doctest.h>

#include <random>

#include "blowcycle/divisor.hpp"
#include "blowcycle/errors.hpp"
#include "oracle.hpp"

using namespace blowcycle;

namespace {

Polynomial P(const RingPtr& ring, const char* text) { return parse_polynomial(text, ring); }

struct Moh {
  RingPtr ring = make_ring(2, {"x", "y", "w"});
  InsepHypersurface h{2, P(ring, "x^2*y^2*w^3*(w*(x+y)^4 + x^13)")};
  DivisorState E = DivisorState::from_names(*ring, {"x", "y", "w"});
};

}  // namespace

TEST_CASE("hypersurface construction") {
  auto ring = make_ring(3, {"x", "y"});
  const InsepHypersurface h(2, P(ring, "x^9 + y^10"));
  CHECK(h.q() == 9);
  CHECK(h.p() == 3);
  CHECK(h.has_full_order());
  CHECK_FALSE(InsepHypersurface(2, P(ring, "x^5")).has_full_order());
  CHECK_THROWS_AS(InsepHypersurface(0, P(ring, "x")), ParameterError);
  auto with_z = make_ring(2, {"x", "z"});
  CHECK_THROWS_AS(InsepHypersurface(1, P(with_z, "x^2")), ParameterError);
}

TEST_CASE("divisor state") {
  const DivisorState E({3, 1, 1, 0});
  CHECK(E.indices() == std::vector<std::size_t>{0, 1, 3});
  CHECK(E.with(2).indices() == std::vector<std::size_t>{0, 1, 2, 3});
  CHECK(E.without(1).indices() == std::vector<std::size_t>{0, 3});
  CHECK(E.swapped(1, 2).indices() == std::vector<std::size_t>{0, 2, 3});
  auto ring = make_ring(2, {"x", "y", "u", "w"});
  CHECK(to_string(E, *ring) == "{x,y,w}");
  CHECK_THROWS_AS(DivisorState::from_names(*ring, {"q"}), ParameterError);
  CHECK_THROWS_AS(Center({}), ParameterError);
}

TEST_CASE("clean") {
  auto ring = make_ring(2, {"x", "y", "w"});
  // Moh's transform before cleaning.
  const InsepHypersurface h(2, P(ring, "x^8*w^3*(w*y^4 + w*y^6 + x^8 + x^8*y^2)"));
  const auto c = clean(h);
  CHECK(c.F_clean.expand() == P(ring, "x^8*w^3*(w*y^6 + x^8 + x^8*y^2)"));
  CHECK(c.g.expand() == P(ring, "x^2*w*y"));
  CHECK(oracle::from(c.g.expand()) == oracle::Poly{{{2, 1, 1}, 1}});

  const Polynomial F = P(ring, "x^3*y + w^5");
  auto [g, kept] = clean(F, 2);
  CHECK(g.is_zero());
  CHECK(kept == F);

  std::mt19937_64 rng(53);
  for (std::uint64_t p : {2, 3, 5}) {
    auto r = make_ring(p, {"x", "y", "w"});
    for (int k = 0; k < 10; ++k) {
      const Polynomial G = oracle::random_poly(r, rng, 4, 3);
      const Polynomial Gq = oracle::to(oracle::power(oracle::from(G), p, p, 3), r);
      auto [root, rest] = clean(Gq, 1);
      CHECK(root == G);
      CHECK(rest.is_zero());
    }
  }
}

TEST_CASE("residual factor") {
  Moh m;
  const auto rf = residual_factor(m.h.F(), m.E);
  CHECK(rf.exceptional == ExponentVector{2, 2, 3});
  CHECK(rf.G.expand() == P(m.ring, "w*(x+y)^4 + x^13"));

  const Polynomial F = P(m.ring, "x^3*y + w^5");
  const auto none = residual_factor(F, DivisorState());
  CHECK(none.exceptional == ExponentVector(3));
  CHECK(none.G == F);

  const auto mono = residual_factor(P(m.ring, "x^5*w^7"), DivisorState({0, 2}));
  CHECK(mono.G == Polynomial::one(m.ring));
  CHECK(mono.exceptional == ExponentVector{5, 0, 7});
  CHECK_THROWS_AS(residual_factor(Polynomial(m.ring), m.E), Error);

  std::mt19937_64 rng(59);
  for (int k = 0; k < 50; ++k) {
    const Polynomial f = oracle::random_poly(m.ring, rng, 5, 6);
    if (f.is_zero()) continue;
    const auto r = residual_factor(f, m.E);
    CHECK(multiply_by_monomial(r.G, r.exceptional) == f);
    for (auto i : m.E.indices()) CHECK(order_along(r.G, i) == Order(0));
  }
}

TEST_CASE("residual order") {
  Moh m;
  CHECK(residual_order(m.h, m.E) == Order(5));
  const InsepHypersurface after(2, P(m.ring, "x^8*w^3*(w*y^6 + x^8 + x^8*y^2)"));
  CHECK(residual_order(after, DivisorState::from_names(*m.ring, {"x", "w"})) == Order(7));
  CHECK(residual_order(InsepHypersurface(2, P(m.ring, "x^5*w^7")), DivisorState({0, 2})) == Order(0));
  CHECK(residual_order(InsepHypersurface(2, Polynomial(m.ring)), m.E).is_infinite());
  CHECK_THROWS_AS(residual_order(InsepHypersurface(2, P(m.ring, "x^4*y + w^8")), m.E), NotCleanError);
}

TEST_CASE("permissibility") {
  Moh m;
  CHECK(is_permissible(m.h, m.E, Center::maximal(*m.ring)));

  const auto x_only = check_permissible(m.h, m.E, Center({0}));
  CHECK(x_only.gamma_order_F == Order(2));
  CHECK(oracle::gamma_order(oracle::from(m.h.F().expand()), {0}) == 2);
  CHECK_FALSE(x_only.permissible());

  const auto all = check_permissible(m.h, m.E, Center({0, 1, 2}));
  CHECK(all.gamma_order_F == Order(12));
  CHECK(all.gamma_order_G == Order(5));
  CHECK(all.residual_order == Order(5));
  CHECK(all.permissible());

  // Condition (1) holds but G is not in P^d.
  const auto yw = check_permissible(m.h, m.E, Center({1, 2}));
  CHECK(yw.condition_f);
  CHECK(yw.gamma_order_G == Order(oracle::gamma_order(oracle::from(P(m.ring, "w*(x+y)^4 + x^13")), {1, 2})));
  CHECK_FALSE(yw.condition_g);

  const auto zero = check_permissible(InsepHypersurface(2, Polynomial(m.ring)), m.E, Center({0}));
  CHECK(zero.degenerate);
  CHECK(zero.permissible());
}

TEST_CASE("Moh bounds") {
  CHECK(moh_bound(5, 2, 2) == 7);
  CHECK(moh_bound(0, 2, 2) == 2);
  CHECK(moh_bound(0, 3, 3) == 9);
  CHECK_THROWS_AS(moh_bound(1, 0, 2), ParameterError);
  CHECK(flawed_bound(5, 2) == 6);
  CHECK(flawed_bound(4, 2) == 6);
  CHECK(flawed_bound(0, 2) == 2);
  CHECK_THROWS_AS(flawed_bound(3, 0), ParameterError);
}
