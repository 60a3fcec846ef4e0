#pragma once

#include <optional>
#include <string>
#include <vector>

#include "blowcycle/divisor.hpp"

namespace blowcycle {

struct Translation {
  std::size_t variable;
  FieldElem constant;

  friend bool operator==(const Translation&, const Translation&) = default;
};

// Center (z, x_i : i in gamma) viewed in the x_chart chart, with x_i -> x_chart*(x_i + t_i).
class BlowupSpec {
 public:
  BlowupSpec(Center gamma, std::size_t chart, std::vector<Translation> translations = {});

  // Point blowup (maximal ideal) in the given chart.
  static BlowupSpec point(const Ring& ring, std::size_t chart, std::vector<Translation> translations = {});
  static BlowupSpec point(const Ring& ring, const std::string& chart,
                          const std::vector<std::pair<std::string, std::uint64_t>>& translations = {});
  // Codimension-2 center (z, x_i) in the x_i-chart.
  static BlowupSpec curve(std::size_t i);

  const Center& gamma() const { return gamma_; }
  std::size_t chart() const { return chart_; }
  // Nonzero translations only, sorted by variable.
  const std::vector<Translation>& translations() const { return translations_; }
  FieldElem translation(std::size_t i) const;
  bool is_point(const Ring& ring) const { return gamma_.size() == ring.size(); }

  friend bool operator==(const BlowupSpec&, const BlowupSpec&) = default;

 private:
  Center gamma_;
  std::size_t chart_;
  std::vector<Translation> translations_;
};

// "x-chart, y->y+1, u->u+1" for point blowups, "center (z,x), x-chart" otherwise.
std::string describe(const BlowupSpec& spec, const Ring& ring);

// Images of the x-variables; z -> x_chart*z is implicit.
std::vector<Polynomial> build_map(const BlowupSpec& spec, const RingPtr& ring);

enum class TransformStatus { SameOrder, OrderDropped, Resolved };

std::string to_string(TransformStatus s);

struct TransformOutcome {
  TransformStatus status = TransformStatus::SameOrder;
  // Always holds F'_clean; only a valid same-order state when status == SameOrder.
  InsepHypersurface h_after;
  DivisorState E_after;
  FactoredPolynomial cleaning_delta;
  Order new_order;
  // Whether the expanded cross-check ran for this step.
  bool cross_checked = false;
};

struct TransformOptions {
  // Recompute pi(F)/x_j^(p^e) on the expanded polynomial and compare, when the
  // expansion has at most this many terms. Zero disables the check.
  std::uint64_t cross_check_budget = 20000;
};

// pi(F)/x_j^(p^e), cleaned and classified, with E' = V(x_j * prod_{i in delta \ B} x_i),
// B = {j} u {i : t_i != 0}. Throws PermissibilityError for non-permissible centers.
TransformOutcome strict_transform(const InsepHypersurface& h, const DivisorState& E, const BlowupSpec& spec,
                                  const TransformOptions& options = {});

// Blowup of (z, x_i) in the x_i-chart: F' = F / x_i^(p^e). Requires i in delta and r_i >= p^e.
TransformOutcome reduce_exceptional(const InsepHypersurface& h, const DivisorState& E, std::size_t i);

}  // namespace blowcycle
