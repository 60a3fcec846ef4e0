#include "blowcycle/scenarios.hpp"

#include <algorithm>
#include <random>

namespace blowcycle {

Step Step::point(BlowupSpec spec) { return Step{Kind::Point, std::move(spec), 1, "", false}; }

Step Step::curve(std::size_t variable) { return Step{Kind::Curve, BlowupSpec::curve(variable), 1, "", true}; }

Step Step::repeat(BlowupSpec spec, Exponent count, std::string formula) {
  const bool curve = spec.gamma().size() == 1;
  return Step{Kind::Repeat, std::move(spec), count, std::move(formula), curve};
}

namespace {

constexpr Exponent kCube = 3;

Exponent cube(std::uint64_t p) { return checked_pow(p, kCube); }

void require(bool condition, const std::string& text) {
  if (!condition) throw ParameterError("parameter constraint violated: " + text);
}

void validate_example1(const CycleParams& c) {
  require(c.d % 2 == 0, "d even");
  require(checked_mul(8, c.s) >= c.d, "8s >= d");
}

void validate_example2(std::uint64_t p, const CycleParams& c) {
  require(p >= 3 && p % 2 == 1 && is_prime(p), "p an odd prime");
  require(c.d % (p * (p - 1) / 2) == 0, "d divisible by p(p-1)/2");
  const Exponent q = cube(p);
  require(checked_mul(c.b, q) >= (q - 1) / 2, "b*p^3 >= (p^3-1)/2");
  require(checked_mul(c.s, q) >= c.d, "s*p^3 >= d");
}

Polynomial unit_or(const std::optional<Polynomial>& u, const RingPtr& ring, std::uint64_t fallback) {
  if (!u) return Polynomial::constant(ring, fallback);
  if (!(u->ring() == *ring)) throw RingMismatch("unit polynomial lives in a different ring");
  return *u;
}

// residue * x^exceptional with the q-multiples kept as factors.
InsepHypersurface build_start(std::uint32_t e, const Polynomial& residue, const ExponentVector& exceptional) {
  const Exponent q = checked_pow(residue.characteristic(), e);
  return InsepHypersurface(e, FactoredPolynomial(multiply_by_monomial(residue, exceptional)).absorb_content(q));
}

Exponent example1_start_order(Exponent d) { return d; }

Exponent example2_start_order(std::uint64_t p, Exponent d) { return (p * p - 1) / 2 + d; }

}  // namespace

Example2Constants example2_constants(std::uint64_t p, Exponent d) {
  require(p >= 3 && p % 2 == 1 && is_prime(p), "p an odd prime");
  require(d % (p * (p - 1) / 2) == 0, "d divisible by p(p-1)/2");
  Example2Constants c{};
  c.d_prime = checked_add(d, (p - 1) / 2 * p);
  c.m = checked_add(2 * d / (p - 1), p - 1);
  c.q = checked_mul((p + 1) / 2, checked_add(d, p * p - 1));
  c.q_prime = checked_mul((p + 1) / 2, checked_add(c.d_prime, p * p - 1));
  return c;
}

RingPtr example1_ring() { return make_ring(2, {"x", "y", "u", "v", "w"}); }

RingPtr example2_ring(std::uint64_t p) { return make_ring(p, {"x", "y", "v", "w"}); }

Scenario scenario_moh() {
  auto ring = make_ring(2, {"x", "y", "w"});
  Polynomial F = parse_polynomial("x^2*y^2*w^3*(w*(x+y)^4 + x^13)", ring);
  Scenario s{"moh",
             ring,
             InsepHypersurface(2, FactoredPolynomial(F).absorb_content(4)),
             DivisorState::from_names(*ring, {"x", "y", "w"}),
             {Step::point(BlowupSpec::point(*ring, "x", {{"y", 1}}))},
             {{0, "d", 5}, {1, "d+p^(e-1)", 7}},
             CycleKind::None,
             std::nullopt};
  return s;
}

Scenario scenario_example1(const CycleParams& c, const Units& units) {
  validate_example1(c);
  auto ring = example1_ring();
  const std::uint64_t lambda = ring->field().reduce(units.lambda);
  if (lambda == 0) throw ParameterError("lambda must be nonzero");
  const Polynomial A = unit_or(units.A, ring, 1);
  const Polynomial Q = unit_or(units.Q, ring, 0);
  if (A.constant_term() == 0) throw ParameterError("A must be a unit");

  const Exponent d = c.d;
  const Exponent k = checked_add(checked_mul(2, d), 6);
  const Polynomial w_d = Polynomial::monomial(ring, ExponentVector{0, 0, 0, 0, d});
  const Polynomial u_k = Polynomial::monomial(ring, ExponentVector{0, 0, k, 0, 0});
  const Polynomial x_d1 = Polynomial::monomial(ring, ExponentVector{checked_add(d, 1), 0, 0, 0, 0});
  const Polynomial G = w_d * (Polynomial::constant(ring, lambda) + u_k * Q) + x_d1 * u_k * A;
  const ExponentVector exceptional{checked_add(checked_mul(8, c.a), 4), checked_add(checked_mul(8, c.b), 4),
                                   checked_mul(8, c.r), 0, checked_mul(8, c.s) - d};

  const Ring& R = *ring;
  std::vector<Step> steps{
      Step::point(BlowupSpec::point(R, "x", {{"y", 1}, {"u", 1}})),
      Step::point(BlowupSpec::point(R, "x")),
      Step::point(BlowupSpec::point(R, "u")),
      Step::repeat(BlowupSpec::point(R, "v"), d / 2, "d/2"),
      Step::point(BlowupSpec::point(R, "w", {{"y", 1}, {"v", 1}})),
      Step::point(BlowupSpec::point(R, "u")),
      Step::repeat(BlowupSpec::point(R, "y"), checked_add(checked_mul(2, d), 10), "2d+10"),
  };
  std::vector<Checkpoint> checkpoints{
      {0, "d", d}, {1, "d+4", d + 4}, {2, "d+3", d + 3}, {6, "d+2", d + 2}, {7, "d+2", d + 2}};
  return Scenario{"example1",
                  ring,
                  build_start(3, G, exceptional),
                  DivisorState::from_names(R, {"x", "y", "u", "w"}),
                  std::move(steps),
                  std::move(checkpoints),
                  CycleKind::Example1,
                  c};
}

Scenario scenario_example2(std::uint64_t p, const CycleParams& c, const Units& units) {
  validate_example2(p, c);
  const auto k = example2_constants(p, c.d);
  auto ring = example2_ring(p);
  const std::uint64_t lambda = ring->field().reduce(units.lambda);
  if (lambda == 0) throw ParameterError("lambda must be nonzero");
  const Polynomial A = unit_or(units.A, ring, 1);
  const Polynomial Q = unit_or(units.Q, ring, 0);
  if (A.constant_term() == 0) throw ParameterError("A must be a unit");

  const Exponent d = c.d;
  const Exponent q3 = cube(p);
  const Exponent half_lo = (p * p - 1) / 2;
  const Exponent half_hi = (p * p + 1) / 2;
  const Polynomial yw = Polynomial::monomial(ring, ExponentVector{0, half_lo, 0, d});
  const Polynomial vq = Polynomial::monomial(ring, ExponentVector{0, 0, k.q, 0});
  const Polynomial xd = Polynomial::monomial(ring, ExponentVector{checked_add(d, half_hi), 0, 0, 0});
  const Polynomial G = yw * (Polynomial::constant(ring, lambda) + vq * Q) + xd * vq * A;
  const ExponentVector exceptional{checked_add(checked_mul(c.a, q3), (q3 - p * p) / 2),
                                   checked_mul(c.b, q3) - (q3 - 1) / 2, checked_mul(c.r, q3),
                                   checked_mul(c.s, q3) - d};

  const Ring& R = *ring;
  std::vector<Step> steps{
      Step::point(BlowupSpec::point(R, "x", {{"y", 1}, {"v", 1}})),
      Step::repeat(BlowupSpec::point(R, "x"), (p - 1) / 2, "(p-1)/2"),
      Step::repeat(BlowupSpec::point(R, "v"), k.m, "m"),
      Step::point(BlowupSpec::point(R, "w", {{"v", 1}})),
      Step::point(BlowupSpec::point(R, "y")),
      Step::repeat(BlowupSpec::point(R, "v"), k.q_prime, "q'"),
  };
  const Exponent start = example2_start_order(p, d);
  const Exponent end = example2_start_order(p, k.d_prime);
  std::vector<Checkpoint> checkpoints{{0, "(p^2-1)/2+d", start},
                                      {1, "p^2+d", p * p + d},
                                      {2, "d'+(p^2+1)/2", k.d_prime + half_hi},
                                      {5, "(p^2-1)/2+d'", end},
                                      {6, "(p^2-1)/2+d'", end}};
  return Scenario{"example2",
                  ring,
                  build_start(3, G, exceptional),
                  DivisorState::from_names(R, {"x", "y", "v", "w"}),
                  std::move(steps),
                  std::move(checkpoints),
                  CycleKind::Example2,
                  c};
}

StepRecord make_record(std::size_t index, std::size_t step, std::string spec, TransformStatus status,
                       const InsepHypersurface& h, const DivisorState& E, FactoredPolynomial delta,
                       bool center_permissible) {
  ExponentVector exceptional(h.ring().size());
  Order ro = Order::infinity();
  if (!h.F().is_zero()) {
    auto rf = residual_factor(h.F(), E);
    exceptional = rf.exceptional;
    ro = rf.G.order();
  }
  const bool maximal = is_clean(h) && check_permissible(h, E, Center::maximal(h.ring())).permissible();
  return StepRecord{index, step, std::move(spec), status, ro, E, exceptional, std::move(delta), h.F(),
                    center_permissible, maximal};
}

StepTrace run_scenario(const Scenario& s, const RunOptions& options) {
  StepTrace trace;
  trace.scenario = s.name;
  trace.ring = s.ring;
  trace.e = s.start.e();

  auto abort = [&](const std::string& message) -> ScenarioAborted {
    return ScenarioAborted(s.name + ": " + message, trace);
  };
  auto check = [&](std::size_t step, const Order& actual) {
    for (const auto& cp : s.checkpoints) {
      if (cp.step != step) continue;
      trace.checkpoints.push_back({cp, actual});
      if (!trace.checkpoints.back().passed())
        throw CheckpointMismatch(s.name + ": checkpoint after step " + std::to_string(step) + " (" + cp.formula +
                                     "): expected residual order " + std::to_string(cp.expected) + ", actual " +
                                     to_string(actual),
                                 trace);
    }
  };

  auto cleaned = clean(s.start);
  InsepHypersurface h(s.start.e(), cleaned.F_clean);
  DivisorState E = s.delta0;
  if (!h.has_full_order()) {
    trace.final_status = h.F().is_zero() ? TransformStatus::Resolved : TransformStatus::OrderDropped;
    throw abort("starting equation has order below p^e");
  }
  trace.records.push_back(make_record(0, 0, "start", TransformStatus::SameOrder, h, E, cleaned.g, true));
  check(0, trace.records.back().residual_order);

  std::size_t index = 0;
  auto apply = [&](std::size_t step_no, const BlowupSpec& spec, bool curve) {
    ++index;
    const auto report = check_permissible(h, E, spec.gamma());
    TransformOutcome out = [&] {
      try {
        if (curve) return reduce_exceptional(h, E, spec.chart());
        return strict_transform(h, E, spec, options.transform);
      } catch (const ScenarioAborted&) {
        throw;
      } catch (const Error& ex) {
        throw abort("step " + std::to_string(step_no) + " (" + describe(spec, h.ring()) + "): " + ex.what());
      }
    }();
    trace.records.push_back(make_record(index, step_no, describe(spec, h.ring()), out.status, out.h_after,
                                        out.E_after, out.cleaning_delta, report.permissible()));
    trace.final_status = out.status;
    h = out.h_after;
    E = out.E_after;
    if (out.status != TransformStatus::SameOrder)
      throw abort("step " + std::to_string(step_no) + " ended in state " + to_string(out.status));
  };

  for (std::size_t k = 0; k < s.steps.size(); ++k) {
    const Step& st = s.steps[k];
    for (Exponent rep = 0; rep < st.repetitions(); ++rep) {
      apply(k + 1, st.spec, st.is_curve());
      if (!options.normalize_exceptional) continue;
      bool reduced = true;
      while (reduced) {
        reduced = false;
        for (std::size_t i : E.indices()) {
          if (h.F().order_along(i) < Order(h.q())) continue;
          if (h.F().order() < Order(checked_add(h.q(), h.q()))) continue;
          apply(k + 1, BlowupSpec::curve(i), true);
          reduced = true;
          break;
        }
      }
    }
    check(k + 1, trace.records.back().residual_order);
  }
  trace.final_state = h;
  trace.final_delta = E;
  return trace;
}

Exponent cycle_increment(CycleKind kind, std::uint64_t p) {
  switch (kind) {
    case CycleKind::Example1:
      return 2;
    case CycleKind::Example2:
      return p * (p - 1) / 2;
    case CycleKind::None:
      break;
  }
  throw ParameterError("scenario has no cycle");
}

ShapeMatch match_shape(const InsepHypersurface& h, const DivisorState& E, CycleKind kind, std::uint64_t p,
                       const CycleParams& params) {
  ShapeMatch m;
  auto fail = [&](std::string reason) {
    m.failure = std::move(reason);
    return m;
  };
  if (kind == CycleKind::None) return fail("template has no cycle");
  const RingPtr ring = kind == CycleKind::Example1 ? example1_ring() : example2_ring(p);
  if (!(h.ring() == *ring))
    return fail("ring mismatch: expected " + std::to_string(ring->size()) + " variables over F_" +
                std::to_string(ring->characteristic()) + ", got " + std::to_string(h.ring().size()) + " over F_" +
                std::to_string(h.p()));
  if (h.e() != 3) return fail("expected e = 3");

  const std::size_t w = ring->index_of("w");
  InsepHypersurface state = h;
  DivisorState delta = E;
  if (kind == CycleKind::Example1) {
    state = InsepHypersurface(h.e(), h.F().swap_variables(ring->index_of("y"), ring->index_of("u")));
    delta = E.swapped(ring->index_of("y"), ring->index_of("u"));
  }
  const Exponent d = checked_add(params.d, cycle_increment(kind, p));
  const Exponent q3 = state.q();
  const DivisorState expected_delta = kind == CycleKind::Example1
                                          ? DivisorState::from_names(*ring, {"x", "y", "u", "w"})
                                          : DivisorState::from_names(*ring, {"x", "y", "v", "w"});
  if (!(delta == expected_delta)) return fail("divisor is " + to_string(delta, *ring));
  if (!is_clean(state)) return fail("end state is not clean");

  // (i) residual order
  const Exponent start_order = kind == CycleKind::Example1 ? example1_start_order(d) : example2_start_order(p, d);
  const Order ro = residual_order(state, delta);
  if (ro != Order(start_order))
    return fail("residual order " + to_string(ro) + ", expected " + std::to_string(start_order));

  // (ii) the two minimal monomials of G
  auto rf = residual_factor(state.F(), delta);
  const VertexSet vertices = minimal_vertices(rf.G);
  std::vector<ExponentVector> expected;
  if (kind == CycleKind::Example1) {
    expected = {ExponentVector{0, 0, 0, 0, d}, ExponentVector{d + 1, 0, 2 * d + 6, 0, 0}};
  } else {
    const auto k = example2_constants(p, d);
    expected = {ExponentVector{0, (p * p - 1) / 2, 0, d}, ExponentVector{d + (p * p + 1) / 2, 0, k.q, 0}};
  }
  std::sort(expected.begin(), expected.end());
  if (vertices.minimal != expected) {
    std::string got;
    for (const auto& v : vertices.minimal) got += " " + to_string(v);
    return fail("minimal vertices of G:" + got);
  }

  // (iii) cofactors are units
  if (!rf.G.unit_factors_are_units()) return fail("a factor of G vanishes at the origin");

  const ExponentVector& x = rf.exceptional;
  CycleParams next;
  next.d = d;
  if (kind == CycleKind::Example1) {
    const std::size_t v = ring->index_of("v");
    if (x[v] != 0) return fail("v carries an exceptional exponent");
    if (x[0] < 4 || (x[0] - 4) % 8 != 0) return fail("x-exponent is not 8a+4");
    if (x[1] < 4 || (x[1] - 4) % 8 != 0) return fail("y-exponent is not 8b+4");
    if (x[2] % 8 != 0) return fail("u-exponent is not 8r");
    if ((x[w] + d) % 8 != 0) return fail("w-exponent is not 8s-d");
    next.a = (x[0] - 4) / 8;
    next.b = (x[1] - 4) / 8;
    next.r = x[2] / 8;
    next.s = (x[w] + d) / 8;
    try {
      validate_example1(next);
    } catch (const ParameterError& ex) {
      return fail(ex.what());
    }
  } else {
    const Exponent xo = (q3 - p * p) / 2;
    const Exponent yo = (q3 - 1) / 2;
    if (x[0] < xo || (x[0] - xo) % q3 != 0) return fail("x-exponent is not a*p^3+(p^3-p^2)/2");
    if ((x[1] + yo) % q3 != 0) return fail("y-exponent is not b*p^3-(p^3-1)/2");
    if (x[2] % q3 != 0) return fail("v-exponent is not r*p^3");
    if ((x[w] + d) % q3 != 0) return fail("w-exponent is not s*p^3-d");
    next.a = (x[0] - xo) / q3;
    next.b = (x[1] + yo) / q3;
    next.r = x[2] / q3;
    next.s = (x[w] + d) / q3;
    try {
      validate_example2(p, next);
    } catch (const ParameterError& ex) {
      return fail(ex.what());
    }
  }

  m.matched = true;
  m.params = next;
  m.edge = significant_edge(vertices, w);
  m.state = std::move(state);
  m.delta = std::move(delta);
  return m;
}

std::vector<CycleSummary> iterate_cycle(CycleKind kind, std::uint64_t p, const CycleParams& params,
                                        std::size_t n_cycles, const Units& units, const RunOptions& options) {
  if (n_cycles == 0) throw ParameterError("at least one cycle is required");
  const Exponent inc = cycle_increment(kind, p);
  std::vector<CycleSummary> out;
  CycleParams current = params;
  for (std::size_t c = 1; c <= n_cycles; ++c) {
    const Units u = c == 1 ? units : Units{};
    const Scenario s = kind == CycleKind::Example1 ? scenario_example1(current, u) : scenario_example2(p, current, u);
    const StepTrace trace = run_scenario(s, options);
    const ShapeMatch match = match_shape(*trace.final_state, trace.final_delta, kind, p, current);
    if (!match.matched) throw ShapeMismatch("cycle " + std::to_string(c) + ": " + match.failure);
    CycleSummary summary{c,
                         current,
                         trace.records.front().residual_order,
                         trace.records.back().residual_order,
                         trace.records.size() - 1,
                         trace.checkpoints,
                         *match.edge,
                         match.params,
                         trace};
    const Order expected_end = summary.start_order + Order(inc);
    if (summary.end_order != expected_end)
      throw Error("cycle " + std::to_string(c) + ": residual order went from " + to_string(summary.start_order) +
                  " to " + to_string(summary.end_order) + ", expected increment " + std::to_string(inc));
    if (!out.empty() && summary.end_order != out.back().end_order + Order(inc))
      throw Error("cycle " + std::to_string(c) + ": cycle-end residual orders do not grow by " + std::to_string(inc));
    out.push_back(std::move(summary));
    current = match.params;
  }
  return out;
}

bool MohReport::passed() const {
  return start_order == Order(5) && end_order == Order(7) && end_F_matches && cleaning_delta_matches &&
         end_order > Order(flawed) && end_order <= Order(bound);
}

MohReport verify_moh() {
  const Scenario s = scenario_moh();
  StepTrace trace = run_scenario(s);
  const auto& ring = s.ring;
  const Polynomial expected_F = parse_polynomial("x^8*w^3*(w*y^6 + x^8 + x^8*y^2)", ring);
  const Polynomial expected_g = parse_polynomial("x^2*w*y", ring);
  const Polynomial F = trace.final_state->F().expand();
  const Polynomial g = trace.records.back().cleaning_delta.expand();
  const Order d = trace.records.front().residual_order;
  return MohReport{d,
                   trace.records.back().residual_order,
                   flawed_bound(d.value(), 2),
                   moh_bound(d.value(), s.start.e(), 2),
                   to_string(F),
                   to_string(g),
                   F == expected_F,
                   g == expected_g,
                   std::move(trace)};
}

IntroSurfaceResult run_intro_surface(Exponent a, Exponent b, Exponent c) {
  if (a == 0) throw ParameterError("a must be positive");
  if (a > checked_add(b, c)) throw ParameterError("parameter constraint violated: a <= b+c");
  auto ring = make_ring(kMaxPrime, {"x", "y", "z"});
  const Polynomial input =
      Polynomial::monomial(ring, ExponentVector{a, 0, 0}) - Polynomial::monomial(ring, ExponentVector{0, b, c});
  const Polynomial x = Polynomial::variable(ring, 0);
  const Polynomial y = Polynomial::variable(ring, 1);
  const Polynomial z = Polynomial::variable(ring, 2);
  const std::vector<Polynomial> images{z * x, z * y, z};
  const Polynomial transform = divide_by_monomial(substitute(input, images), ExponentVector{0, 0, a});
  Exponent z_exp = 0;
  for (const auto& t : transform.terms())
    if (t.exponents[1] == b) z_exp = t.exponents[2];
  return IntroSurfaceResult{input, transform, z_exp, transform == input};
}

Polynomial random_unit(const RingPtr& ring, std::uint64_t seed, Exponent max_degree, std::size_t max_terms) {
  // Raw engine output only, so results do not depend on the standard library's distributions.
  std::mt19937_64 rng(seed);
  const auto& field = ring->field();
  Polynomial u = Polynomial::one(ring);
  const std::size_t n_terms = max_terms == 0 ? 0 : rng() % (max_terms + 1);
  for (std::size_t t = 0; t < n_terms; ++t) {
    const Exponent degree = max_degree == 0 ? 0 : 1 + rng() % max_degree;
    if (degree == 0) continue;
    ExponentVector ev(ring->size());
    for (Exponent k = 0; k < degree; ++k) ev[rng() % ring->size()] += 1;
    const std::uint64_t coeff = 1 + rng() % (field.characteristic() - 1);
    u += Polynomial::monomial(ring, ev, coeff);
  }
  return u;
}

Units random_units(const RingPtr& ring, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Units u;
  u.lambda = 1 + rng() % (ring->characteristic() - 1);
  u.A = random_unit(ring, rng());
  u.Q = random_unit(ring, rng()) - Polynomial::one(ring);
  return u;
}

}  // namespace blowcycle
