#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blowcycle/blowup.hpp"
#include "blowcycle/errors.hpp"
#include "blowcycle/polyhedron.hpp"

namespace blowcycle {

struct CycleParams {
  Exponent a = 1;
  Exponent b = 1;
  Exponent r = 1;
  Exponent s = 2;
  Exponent d = 4;

  friend bool operator==(const CycleParams&, const CycleParams&) = default;
};

// lambda, A, Q of the starting equations. A must have nonzero constant term.
struct Units {
  std::uint64_t lambda = 1;
  std::optional<Polynomial> A;  // 1 when absent
  std::optional<Polynomial> Q;  // 0 when absent
};

struct Step {
  enum class Kind { Point, Curve, Repeat };

  Kind kind;
  BlowupSpec spec;
  // Repeat only: the inner step is a point blowup when inner_curve is false.
  Exponent count = 1;
  std::string count_formula;
  bool inner_curve = false;

  static Step point(BlowupSpec spec);
  static Step curve(std::size_t variable);
  static Step repeat(BlowupSpec spec, Exponent count, std::string formula);

  bool is_curve() const { return kind == Kind::Curve || (kind == Kind::Repeat && inner_curve); }
  Exponent repetitions() const { return kind == Kind::Repeat ? count : 1; }
};

// Expected residual order after step `step` (0 is the start).
struct Checkpoint {
  std::size_t step;
  std::string formula;
  Exponent expected;
};

enum class CycleKind { None, Example1, Example2 };

struct Scenario {
  std::string name;
  RingPtr ring;
  InsepHypersurface start;
  DivisorState delta0;
  std::vector<Step> steps;
  std::vector<Checkpoint> checkpoints;
  CycleKind kind = CycleKind::None;
  std::optional<CycleParams> params;
};

// d' = d + p(p-1)/2, m = 2d/(p-1) + p - 1, q = (p+1)/2 (d + p^2 - 1), q' likewise with d'.
struct Example2Constants {
  Exponent d_prime;
  Exponent m;
  Exponent q;
  Exponent q_prime;
};

Example2Constants example2_constants(std::uint64_t p, Exponent d);

RingPtr example1_ring();
RingPtr example2_ring(std::uint64_t p);

Scenario scenario_moh();
// Throws ParameterError unless d is even and 8s >= d.
Scenario scenario_example1(const CycleParams& params, const Units& units = {});
// Throws ParameterError unless p is an odd prime, p(p-1)/2 divides d, b p^3 >= (p^3-1)/2 and s p^3 >= d.
Scenario scenario_example2(std::uint64_t p, const CycleParams& params, const Units& units = {});

struct StepRecord {
  std::size_t index;  // blowup count so far, 0 for the start
  std::size_t step;   // scenario step the blowup belongs to, 0 for the start
  std::string spec;
  TransformStatus status;
  Order residual_order;
  DivisorState delta;
  ExponentVector exceptional;
  FactoredPolynomial cleaning_delta;
  FactoredPolynomial F;
  bool center_permissible;
  bool maximal_permissible;
};

// Snapshot of a state after a transform with the given status.
StepRecord make_record(std::size_t index, std::size_t step, std::string spec, TransformStatus status,
                       const InsepHypersurface& h, const DivisorState& E, FactoredPolynomial delta,
                       bool center_permissible);

struct CheckpointResult {
  Checkpoint checkpoint;
  Order actual;
  bool passed() const { return !actual.is_infinite() && actual.value() == checkpoint.expected; }
};

struct StepTrace {
  std::string scenario;
  RingPtr ring;
  std::uint32_t e = 0;
  std::vector<StepRecord> records;
  std::vector<CheckpointResult> checkpoints;
  // Status of the last transform; anything but SameOrder ends the run.
  TransformStatus final_status = TransformStatus::SameOrder;
  std::optional<InsepHypersurface> final_state;
  DivisorState final_delta;

  bool complete() const { return final_status == TransformStatus::SameOrder && final_state.has_value(); }
};

// Raised with the partial trace when a run stops early.
class ScenarioAborted : public Error {
 public:
  ScenarioAborted(const std::string& message, StepTrace trace) : Error(message), trace_(std::move(trace)) {}
  const StepTrace& trace() const { return trace_; }

 private:
  StepTrace trace_;
};

class CheckpointMismatch : public ScenarioAborted {
 public:
  using ScenarioAborted::ScenarioAborted;
};

struct RunOptions {
  TransformOptions transform;
  // After each blowup, lower exceptional exponents by p^e with codimension 2
  // blowups while the order of F stays at least p^e.
  bool normalize_exceptional = false;
};

// Cleans the start, applies every step and checks every checkpoint.
// Throws CheckpointMismatch or ScenarioAborted (order drop, engine error).
StepTrace run_scenario(const Scenario& s, const RunOptions& options = {});

struct ShapeMatch {
  bool matched = false;
  std::string failure;
  CycleParams params;
  // End state after relabeling (Example 1 swaps y and u).
  std::optional<InsepHypersurface> state;
  DivisorState delta;
  std::optional<Edge> edge;
};

// Compares an end state with the template's starting equation at the shifted d.
ShapeMatch match_shape(const InsepHypersurface& h, const DivisorState& E, CycleKind kind, std::uint64_t p,
                       const CycleParams& params);

struct CycleSummary {
  std::size_t cycle;
  CycleParams params;
  Order start_order;
  Order end_order;
  std::size_t blowups;
  std::vector<CheckpointResult> checkpoints;
  Edge edge;
  CycleParams next;
  StepTrace trace;
};

// Units of the first cycle are `units`; later cycles use the defaults.
// Throws ShapeMismatch when a cycle does not reproduce the starting shape and
// Error when the cycle-end orders do not grow by the expected increment.
std::vector<CycleSummary> iterate_cycle(CycleKind kind, std::uint64_t p, const CycleParams& params,
                                        std::size_t n_cycles, const Units& units = {},
                                        const RunOptions& options = {});

// 2 for Example 1, p(p-1)/2 for Example 2.
Exponent cycle_increment(CycleKind kind, std::uint64_t p);

struct MohReport {
  Order start_order;
  Order end_order;
  Exponent flawed;
  Exponent bound;
  std::string end_F;
  std::string cleaning_delta;
  bool end_F_matches;
  bool cleaning_delta_matches;
  StepTrace trace;

  bool passed() const;
};

MohReport verify_moh();

// x^a - y^b z^c, blown up at the origin and read in the z-chart.
struct IntroSurfaceResult {
  Polynomial input;
  Polynomial transform;
  Exponent z_exponent;
  bool fixed_point;
};

// Requires a <= b + c so that z^a divides the total transform.
IntroSurfaceResult run_intro_surface(Exponent a, Exponent b, Exponent c);

// Constant term 1 plus up to max_terms random terms of degree 1..max_degree.
Polynomial random_unit(const RingPtr& ring, std::uint64_t seed, Exponent max_degree = 2, std::size_t max_terms = 3);
// Random units for a cycle scenario; lambda is a random nonzero constant.
Units random_units(const RingPtr& ring, std::uint64_t seed);

}  // namespace blowcycle
