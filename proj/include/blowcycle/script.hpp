#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "blowcycle/scenarios.hpp"

namespace blowcycle {

// Line-oriented blowup scripts:
//
//   p=2 e=2
//   vars x y w
//   F = x^2*y^2*w^3*(w*(x+y)^4 + x^13)
//   delta x y w
//   blowup point chart=x translate y=1
//   blowup curve var=x
//   clean
//   assert resorder=7
//   report
//
// '#' starts a comment. The header comes first; delta is optional.
struct ScriptStatement {
  enum class Kind { BlowupPoint, BlowupCurve, Clean, AssertResorder, Report };

  Kind kind;
  std::string variable;  // chart or curve variable
  std::vector<std::pair<std::string, std::uint64_t>> translations;
  Exponent value = 0;  // assert only
  std::size_t line = 0;
  std::size_t column = 0;

  // Positions are ignored.
  bool operator==(const ScriptStatement& other) const;
};

struct Script {
  std::uint64_t p;
  std::uint32_t e;
  RingPtr ring;
  Polynomial F;
  std::vector<std::string> delta;
  std::vector<ScriptStatement> statements;

  bool operator==(const Script& other) const;
};

// Throws ParseError with the line and column of the offending token.
Script parse_script(std::string_view text);
// Canonical text; parse_script(render_script(s)) == s.
std::string render_script(const Script& script);

enum ExitCode : int { kExitOk = 0, kExitAssertion = 1, kExitUsage = 2, kExitEngine = 3 };

struct ExecutionResult {
  int exit_code = kExitOk;
  StepTrace trace;
  std::vector<std::string> messages;
};

// Called by `report` with the trace and the number of records already reported.
using ReportSink = std::function<void(const StepTrace&, std::size_t)>;

ExecutionResult execute(const Script& script, const ReportSink& on_report = {}, const TransformOptions& options = {});

}  // namespace blowcycle
