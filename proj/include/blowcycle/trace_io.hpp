#pragma once

#include <string>

#include <json.hpp>

#include "blowcycle/scenarios.hpp"

namespace blowcycle {

struct RenderOptions {
  // Residues with more terms are rendered as a size and hash digest. Zero renders everything.
  std::size_t max_terms = 0;
};

// Canonical text, or "x^8*[residue 4798 terms fnv1a 0123abcd...]" past the limit.
std::string render(const FactoredPolynomial& f, const RenderOptions& options = {});

std::string render_record(const StepRecord& record, const Ring& ring, const RenderOptions& options = {});
std::string render_trace(const StepTrace& trace, const RenderOptions& options = {});

nlohmann::json record_to_json(const StepRecord& record, const Ring& ring, const RenderOptions& options = {});
nlohmann::json trace_to_json(const StepTrace& trace, const RenderOptions& options = {});
nlohmann::json cycles_to_json(const std::vector<CycleSummary>& cycles);

// Integers as numbers, infinity as null.
nlohmann::json order_to_json(const Order& o);

}  // namespace blowcycle
