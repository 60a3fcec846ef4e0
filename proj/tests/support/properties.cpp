#include "properties.hpp"

#include <random>

#include "blowcycle/scenarios.hpp"
#include "oracle.hpp"

namespace props {

using namespace blowcycle;

namespace {

void fail(SuiteResult& r, const std::string& what) {
  ++r.failures;
  if (r.details.size() < 5) r.details.push_back(what);
}

}  // namespace

SuiteResult cleaning(std::size_t cases, std::uint64_t seed) {
  SuiteResult r{"cleaning exactness and idempotence"};
  std::mt19937_64 rng(seed);
  const std::uint64_t primes[] = {2, 3, 5};
  for (std::size_t k = 0; k < cases; ++k) {
    const std::uint64_t p = primes[k % 3];
    const std::uint32_t e = p == 5 ? 1 : static_cast<std::uint32_t>(1 + rng() % 2);
    const std::uint64_t q = checked_pow(p, e);
    auto ring = make_ring(p, {"x", "y", "w"});
    // Mix arbitrary terms with q-th powers so that cleaning has work to do.
    Polynomial root = oracle::random_poly(ring, rng, 3, 2);
    Polynomial F = oracle::random_poly(ring, rng, 6, 3 * q) + oracle::to(oracle::power(oracle::from(root), q, p, 3), ring);
    auto [g, kept] = clean(F, e);
    ++r.cases;
    const auto rebuilt = oracle::add(oracle::power(oracle::from(g), q, p, 3), oracle::from(kept), p);
    if (rebuilt != oracle::from(F)) fail(r, "reconstruction: " + to_string(F));
    for (const auto& t : kept.terms()) {
      bool all = true;
      for (auto x : t.exponents) all = all && x % q == 0;
      if (all) fail(r, "q-th power left in " + to_string(kept));
    }
    auto [g2, kept2] = clean(kept, e);
    if (!g2.is_zero() || !(kept2 == kept)) fail(r, "not idempotent: " + to_string(kept));
    // The factored path agrees with the expanded one.
    const ExponentVector shift{q * (rng() % 3), 0, q * (rng() % 2)};
    const InsepHypersurface h(e, FactoredPolynomial(F).multiply_by_monomial(shift).absorb_content(q));
    const auto c = clean(h);
    auto [g3, kept3] = clean(multiply_by_monomial(F, shift), e);
    if (!(c.F_clean.expand() == kept3) || !(c.g.expand() == g3)) fail(r, "factored clean differs: " + to_string(F));
  }
  return r;
}

SuiteResult substitution_homomorphism(std::size_t cases, std::uint64_t seed) {
  SuiteResult r{"substitution homomorphism"};
  std::mt19937_64 rng(seed + 1);
  for (std::size_t k = 0; k < cases; ++k) {
    const std::uint64_t p = k % 2 == 0 ? 2 : 3;
    auto ring = make_ring(p, {"x", "y", "w"});
    const Polynomial f = oracle::random_poly(ring, rng, 4, 3);
    const Polynomial g = oracle::random_poly(ring, rng, 4, 3);
    std::vector<Polynomial> images;
    std::vector<oracle::Poly> naive;
    for (int i = 0; i < 3; ++i) {
      images.push_back(oracle::random_poly(ring, rng, 3, 2));
      naive.push_back(oracle::from(images.back()));
    }
    ++r.cases;
    const Polynomial sf = substitute(f, images);
    const Polynomial sg = substitute(g, images);
    if (!(substitute(f * g, images) == sf * sg)) fail(r, "product: " + to_string(f) + " ; " + to_string(g));
    if (!(substitute(f + g, images) == sf + sg)) fail(r, "sum: " + to_string(f) + " ; " + to_string(g));
    if (oracle::from(sf) != oracle::substitute(oracle::from(f), naive, p, 3)) fail(r, "oracle: " + to_string(f));
  }
  return r;
}

SuiteResult minimal_vertices(std::size_t cases, std::uint64_t seed) {
  SuiteResult r{"minimal vertices against brute force"};
  std::mt19937_64 rng(seed + 2);
  for (std::size_t k = 0; k < cases; ++k) {
    const std::size_t n = 2 + k % 4;
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    auto ring = make_ring(3, names);
    Polynomial G(ring);
    const std::size_t terms = 1 + rng() % 200;
    const std::uint64_t spread = 2 + rng() % 12;
    for (std::size_t t = 0; t < terms; ++t) {
      ExponentVector m(n);
      for (std::size_t i = 0; i < n; ++i) m[i] = rng() % spread;
      G += Polynomial::monomial(ring, m);
    }
    if (G.is_zero()) continue;
    ++r.cases;
    std::vector<oracle::Mono> support;
    for (const auto& t : G.terms()) support.emplace_back(t.exponents.begin(), t.exponents.end());
    const auto expected = oracle::minimal(support);
    const VertexSet got = blowcycle::minimal_vertices(G);
    std::vector<oracle::Mono> gotm;
    for (const auto& v : got.minimal) gotm.emplace_back(v.begin(), v.end());
    if (gotm != expected) fail(r, "vertex set differs for " + to_string(G));
    for (const auto& s : support) {
      bool dominated = false;
      for (const auto& v : gotm) dominated = dominated || oracle::leq(v, s);
      if (!dominated) fail(r, "support vector dominates no vertex");
    }
  }
  return r;
}

SuiteResult maximal_ideal_permissibility() {
  SuiteResult r{"maximal ideal permissible in every scenario state"};
  std::vector<StepTrace> traces;
  traces.push_back(run_scenario(scenario_moh()));
  traces.push_back(run_scenario(scenario_example1(CycleParams{1, 1, 1, 2, 4})));
  traces.push_back(run_scenario(scenario_example2(3, CycleParams{1, 1, 1, 2, 3})));
  for (const auto& t : traces)
    for (const auto& rec : t.records) {
      ++r.cases;
      if (!rec.maximal_permissible) fail(r, t.scenario + " state " + std::to_string(rec.index));
      if (!rec.center_permissible) fail(r, t.scenario + " center " + std::to_string(rec.index));
    }
  return r;
}

SuiteResult unit_invariance(std::size_t cases, std::uint64_t seed) {
  SuiteResult r{"residual order unit invariance"};
  std::mt19937_64 rng(seed + 3);
  for (std::size_t k = 0; k < cases; ++k) {
    const std::uint64_t p = k % 2 == 0 ? 2 : 3;
    const std::uint32_t e = 2;
    const Exponent q = p * p;
    auto ring = make_ring(p, {"x", "y", "w"});
    Polynomial G = oracle::random_poly(ring, rng, 4, 6);
    if (G.is_zero()) G = Polynomial::variable(ring, 1);
    const ExponentVector m{rng() % 20, rng() % 20, rng() % 20};
    const DivisorState E({0, 1, 2});
    const Polynomial u = random_unit(ring, rng(), 3, 3);
    auto [g0, base] = clean(multiply_by_monomial(G, m), e);
    if (base.is_zero() || order(base) < Order(q)) {
      ++r.skipped;
      continue;
    }
    auto [g1, withu] = clean(multiply_by_monomial(base, ExponentVector(3)) * u, e);
    if (!g1.is_zero()) {
      ++r.skipped;
      continue;
    }
    ++r.cases;
    const Order a = residual_order(InsepHypersurface(e, base), E);
    const Order b = residual_order(InsepHypersurface(e, withu), E);
    if (a != b) fail(r, "unit changed residual order: " + to_string(base) + " * (" + to_string(u) + ")");
  }
  return r;
}

}  // namespace props
