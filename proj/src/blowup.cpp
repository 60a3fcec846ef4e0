#include "blowcycle/blowup.hpp"

#include <algorithm>

#include "blowcycle/errors.hpp"

namespace blowcycle {

BlowupSpec::BlowupSpec(Center gamma, std::size_t chart, std::vector<Translation> translations)
    : gamma_(std::move(gamma)), chart_(chart) {
  if (!gamma_.contains(chart_)) throw ParameterError("the chart variable must belong to the center");
  for (const auto& t : translations) {
    if (t.variable == chart_ || !gamma_.contains(t.variable))
      throw ParameterError("translations are only allowed for center variables other than the chart");
    if (t.constant.value == 0) continue;
    auto dup = std::find_if(translations_.begin(), translations_.end(),
                            [&](const Translation& u) { return u.variable == t.variable; });
    if (dup != translations_.end()) throw ParameterError("variable translated twice");
    translations_.push_back(t);
  }
  std::sort(translations_.begin(), translations_.end(),
            [](const Translation& a, const Translation& b) { return a.variable < b.variable; });
}

BlowupSpec BlowupSpec::point(const Ring& ring, std::size_t chart, std::vector<Translation> translations) {
  return BlowupSpec(Center::maximal(ring), chart, std::move(translations));
}

BlowupSpec BlowupSpec::point(const Ring& ring, const std::string& chart,
                             const std::vector<std::pair<std::string, std::uint64_t>>& translations) {
  std::vector<Translation> ts;
  for (const auto& [name, c] : translations) ts.push_back({ring.index_of(name), ring.field().elem(c)});
  return point(ring, ring.index_of(chart), std::move(ts));
}

BlowupSpec BlowupSpec::curve(std::size_t i) { return BlowupSpec(Center({i}), i); }

FieldElem BlowupSpec::translation(std::size_t i) const {
  for (const auto& t : translations_)
    if (t.variable == i) return t.constant;
  return FieldElem{0};
}

std::string describe(const BlowupSpec& spec, const Ring& ring) {
  std::string out;
  if (!spec.is_point(ring)) {
    out = "center (z";
    for (auto i : spec.gamma().indices()) out += "," + ring.name(i);
    out += "), ";
  }
  out += ring.name(spec.chart()) + "-chart";
  for (const auto& t : spec.translations())
    out += ", " + ring.name(t.variable) + "->" + ring.name(t.variable) + "+" + std::to_string(t.constant.value);
  return out;
}

std::vector<Polynomial> build_map(const BlowupSpec& spec, const RingPtr& ring) {
  if (spec.chart() >= ring->size() || spec.gamma().indices().back() >= ring->size())
    throw ParameterError("blowup refers to a variable outside the ring");
  std::vector<Polynomial> images;
  images.reserve(ring->size());
  const Polynomial xj = Polynomial::variable(ring, spec.chart());
  for (std::size_t i = 0; i < ring->size(); ++i) {
    Polynomial xi = Polynomial::variable(ring, i);
    if (i == spec.chart() || !spec.gamma().contains(i)) {
      images.push_back(std::move(xi));
      continue;
    }
    const FieldElem t = spec.translation(i);
    images.push_back(xj * (xi + Polynomial::constant(ring, t.value)));
  }
  return images;
}

std::string to_string(TransformStatus s) {
  switch (s) {
    case TransformStatus::SameOrder:
      return "same-order";
    case TransformStatus::OrderDropped:
      return "order-dropped";
    case TransformStatus::Resolved:
      return "resolved";
  }
  return "?";
}

namespace {

// Number of terms produced by substituting the expanded F term by term: a
// translated variable contributes prod (digit + 1) terms (Lucas).
std::uint64_t substitution_cost(const Polynomial& F, const BlowupSpec& spec, std::uint64_t cap) {
  const std::uint64_t p = F.characteristic();
  std::uint64_t total = 0;
  for (const auto& t : F.terms()) {
    std::uint64_t count = 1;
    for (const auto& tr : spec.translations()) {
      for (Exponent e = t.exponents[tr.variable]; e > 0 && count <= cap; e /= p) count *= e % p + 1;
    }
    total += count;
    if (total > cap) return cap + 1;
  }
  return total;
}

TransformStatus classify(const FactoredPolynomial& F_clean, Exponent q) {
  if (F_clean.is_zero()) return TransformStatus::Resolved;
  return F_clean.order() >= Order(q) ? TransformStatus::SameOrder : TransformStatus::OrderDropped;
}

TransformOutcome finish(const InsepHypersurface& h, FactoredPolynomial F_prime, DivisorState E_after) {
  InsepHypersurface raw(h.e(), std::move(F_prime));
  auto [g, F_clean] = clean(raw);
  TransformOutcome out{classify(F_clean, h.q()), InsepHypersurface(h.e(), F_clean), std::move(E_after), std::move(g),
                       F_clean.order(), false};
  return out;
}

}  // namespace

TransformOutcome strict_transform(const InsepHypersurface& h, const DivisorState& E, const BlowupSpec& spec,
                                  const TransformOptions& options) {
  const auto& ring = h.ring_ptr();
  const auto report = check_permissible(h, E, spec.gamma());
  if (!report.permissible()) {
    std::string why = !report.condition_f ? "f is not in P^(p^e): Gamma-order of F is " + to_string(report.gamma_order_F)
                                          : "G is not in P^d: Gamma-order of G is " + to_string(report.gamma_order_G) +
                                                " < d = " + to_string(report.residual_order);
    throw PermissibilityError("center of '" + describe(spec, *ring) + "' is not permissible: " + why);
  }

  const std::size_t j = spec.chart();
  const auto images = build_map(spec, ring);
  const ExponentVector xj_q = ExponentVector::unit(ring->size(), j, h.q());
  FactoredPolynomial F_prime = [&] {
    try {
      return h.F().substitute(images).divide_by_monomial(xj_q, h.q()).absorb_content(h.q());
    } catch (const DivisibilityError& err) {
      throw DivisibilityError("x_j^(p^e) does not divide pi(F) for '" + describe(spec, *ring) + "': " + err.what());
    }
  }();

  bool cross_checked = false;
  const std::uint64_t budget = options.cross_check_budget;
  if (budget > 0 && h.F().expanded_size_bound() <= budget && F_prime.expanded_size_bound() <= budget) {
    const Polynomial expanded = h.F().expand();
    if (substitution_cost(expanded, spec, budget) <= budget) {
      const Polynomial direct = divide_by_monomial(substitute(expanded, images), xj_q);
      if (!(direct == F_prime.expand()))
        throw Error("internal: factored strict transform disagrees with the expanded computation");
      cross_checked = true;
    }
  }

  DivisorState E_after = E.without(j);
  for (const auto& t : spec.translations()) E_after = E_after.without(t.variable);
  E_after = E_after.with(j);

  auto out = finish(h, std::move(F_prime), std::move(E_after));
  out.cross_checked = cross_checked;
  return out;
}

TransformOutcome reduce_exceptional(const InsepHypersurface& h, const DivisorState& E, std::size_t i) {
  if (!E.contains(i)) throw ParameterError("reduce_exceptional needs an exceptional variable");
  const Order r_i = h.F().order_along(i);
  if (r_i < Order(h.q()))
    throw ParameterError("exceptional exponent r_" + h.ring().name(i) + " = " + to_string(r_i) + " is below p^e = " +
                         std::to_string(h.q()));
  FactoredPolynomial F_prime =
      h.F().divide_by_monomial(ExponentVector::unit(h.ring().size(), i, h.q()), h.q()).absorb_content(h.q());
  return finish(h, std::move(F_prime), E);
}

}  // namespace blowcycle
