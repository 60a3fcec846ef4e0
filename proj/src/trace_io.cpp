#include "blowcycle/trace_io.hpp"

#include <cstdio>
#include <sstream>

namespace blowcycle {

namespace {

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::string hex(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

std::vector<std::string> names_of(const DivisorState& E, const Ring& ring) {
  std::vector<std::string> out;
  for (auto i : E.indices()) out.push_back(ring.name(i));
  return out;
}

}  // namespace

std::string render(const FactoredPolynomial& f, const RenderOptions& options) {
  if (options.max_terms == 0 || f.residue().size() <= options.max_terms) return to_string(f);
  std::string head;
  for (const auto& factor : f.factors()) {
    const std::string base = to_string(factor.base);
    head += (factor.base.is_monomial() ? base : "(" + base + ")") + "^" + std::to_string(factor.exponent) + "*";
  }
  return head + "[residue " + std::to_string(f.residue().size()) + " terms fnv1a " +
         hex(fnv1a(to_string(f.residue()))) + "]";
}

std::string render_record(const StepRecord& r, const Ring& ring, const RenderOptions& options) {
  std::ostringstream os;
  os << "step " << r.index << " [" << r.step << "] " << r.spec << "\n";
  os << "  status " << to_string(r.status) << "\n";
  os << "  delta " << to_string(r.delta, ring) << "\n";
  os << "  exceptional " << to_string(r.exceptional) << "\n";
  os << "  resorder " << to_string(r.residual_order) << "\n";
  os << "  cleaned " << (r.cleaning_delta.is_zero() ? "no" : "yes") << "\n";
  os << "  g " << render(r.cleaning_delta, options) << "\n";
  os << "  F " << render(r.F, options) << "\n";
  os << "  permissible center=" << (r.center_permissible ? "yes" : "no")
     << " maximal=" << (r.maximal_permissible ? "yes" : "no") << "\n";
  return os.str();
}

std::string render_trace(const StepTrace& trace, const RenderOptions& options) {
  std::ostringstream os;
  const Ring& ring = *trace.ring;
  os << "scenario " << trace.scenario << "\n";
  os << "ring p=" << ring.characteristic() << " e=" << trace.e << " vars";
  for (const auto& n : ring.names()) os << " " << n;
  os << "\n";
  for (const auto& r : trace.records) os << render_record(r, ring, options);
  for (const auto& c : trace.checkpoints)
    os << "checkpoint step=" << c.checkpoint.step << " formula=" << c.checkpoint.formula
       << " expected=" << c.checkpoint.expected << " actual=" << to_string(c.actual)
       << (c.passed() ? " pass" : " FAIL") << "\n";
  os << "result " << (trace.complete() ? "complete" : "terminal " + to_string(trace.final_status)) << "\n";
  return os.str();
}

nlohmann::json order_to_json(const Order& o) {
  if (o.is_infinite()) return nullptr;
  return o.value();
}

nlohmann::json record_to_json(const StepRecord& r, const Ring& ring, const RenderOptions& options) {
  return {{"index", r.index},
          {"step", r.step},
          {"spec", r.spec},
          {"status", to_string(r.status)},
          {"residual_order", order_to_json(r.residual_order)},
          {"delta", names_of(r.delta, ring)},
          {"exceptional", std::vector<Exponent>(r.exceptional.begin(), r.exceptional.end())},
          {"cleaned", !r.cleaning_delta.is_zero()},
          {"cleaning_delta", render(r.cleaning_delta, options)},
          {"F", render(r.F, options)},
          {"center_permissible", r.center_permissible},
          {"maximal_permissible", r.maximal_permissible}};
}

nlohmann::json trace_to_json(const StepTrace& trace, const RenderOptions& options) {
  const Ring& ring = *trace.ring;
  nlohmann::json records = nlohmann::json::array();
  for (const auto& r : trace.records) records.push_back(record_to_json(r, ring, options));
  nlohmann::json checkpoints = nlohmann::json::array();
  for (const auto& c : trace.checkpoints)
    checkpoints.push_back({{"step", c.checkpoint.step},
                           {"formula", c.checkpoint.formula},
                           {"expected", c.checkpoint.expected},
                           {"actual", order_to_json(c.actual)},
                           {"passed", c.passed()}});
  return {{"scenario", trace.scenario},
          {"p", ring.characteristic()},
          {"e", trace.e},
          {"variables", ring.names()},
          {"records", std::move(records)},
          {"checkpoints", std::move(checkpoints)},
          {"final_status", to_string(trace.final_status)},
          {"complete", trace.complete()}};
}

namespace {

nlohmann::json params_to_json(const CycleParams& c) {
  return {{"a", c.a}, {"b", c.b}, {"r", c.r}, {"s", c.s}, {"d", c.d}};
}

}  // namespace

nlohmann::json cycles_to_json(const std::vector<CycleSummary>& cycles) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& c : cycles) {
    nlohmann::json checkpoints = nlohmann::json::array();
    for (const auto& cp : c.checkpoints)
      checkpoints.push_back({{"step", cp.checkpoint.step},
                             {"formula", cp.checkpoint.formula},
                             {"expected", cp.checkpoint.expected},
                             {"actual", order_to_json(cp.actual)},
                             {"passed", cp.passed()}});
    out.push_back({{"cycle", c.cycle},
                   {"params", params_to_json(c.params)},
                   {"start_order", order_to_json(c.start_order)},
                   {"end_order", order_to_json(c.end_order)},
                   {"blowups", c.blowups},
                   {"checkpoints", std::move(checkpoints)},
                   {"edge",
                    {{"heavy", std::vector<Exponent>(c.edge.heavy.begin(), c.edge.heavy.end())},
                     {"light", std::vector<Exponent>(c.edge.light.begin(), c.edge.light.end())},
                     {"l1_length", c.edge.l1_length()}}},
                   {"next", params_to_json(c.next)}});
  }
  return out;
}

}  // namespace blowcycle
