#include "blowcycle/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>

#include "blowcycle/script.hpp"
#include "blowcycle/trace_io.hpp"

namespace blowcycle {

namespace {

using nlohmann::json;

struct Globals {
  std::string trace_file;
  bool json = false;
  bool quiet = false;
  std::size_t render_limit = 64;
};

struct CycleArgs {
  std::uint64_t p = 3;
  CycleParams params;
  std::size_t cycles = 1;
  std::optional<std::uint64_t> seed_units;
  bool normalize = false;
};

class Output {
 public:
  Output(const Globals& g, std::ostream& out, std::ostream& err, std::string command)
      : g_(g), out_(out), err_(err), doc_{{"command", std::move(command)}} {}

  json& doc() { return doc_; }
  RenderOptions render() const { return RenderOptions{g_.render_limit}; }
  void say(const std::string& line) {
    if (!g_.json && !g_.quiet) out_ << line << "\n";
  }
  void error(const std::string& message) {
    doc_["error"] = message;
    err_ << "error: " << message << "\n";
  }
  void write_trace(const std::vector<const StepTrace*>& traces) {
    if (g_.trace_file.empty() || traces.empty()) return;
    std::ofstream f(g_.trace_file);
    if (!f) {
      err_ << "error: cannot write " << g_.trace_file << "\n";
      return;
    }
    if (g_.json) {
      json all = json::array();
      for (auto* t : traces) all.push_back(trace_to_json(*t, render()));
      f << all.dump(2) << "\n";
    } else {
      for (auto* t : traces) f << render_trace(*t, render());
    }
  }
  int finish(int code) {
    doc_["exit_code"] = code;
    if (g_.json) out_ << doc_.dump(2) << "\n";
    return code;
  }

 private:
  const Globals& g_;
  std::ostream& out_;
  std::ostream& err_;
  json doc_;
};

std::string join(const std::vector<std::string>& items, const std::string& sep) {
  std::string s;
  for (std::size_t i = 0; i < items.size(); ++i) s += (i ? sep : "") + items[i];
  return s;
}

// Runs body and maps engine exceptions to exit codes.
template <class Body>
int guarded(Output& o, Body body) {
  try {
    return o.finish(body());
  } catch (const CheckpointMismatch& ex) {
    o.write_trace({&ex.trace()});
    o.error(ex.what());
    return o.finish(kExitAssertion);
  } catch (const ShapeMismatch& ex) {
    o.error(ex.what());
    return o.finish(kExitAssertion);
  } catch (const ScenarioAborted& ex) {
    o.write_trace({&ex.trace()});
    o.error(ex.what());
    return o.finish(kExitEngine);
  } catch (const ParseError& ex) {
    o.error(ex.what());
    return o.finish(kExitUsage);
  } catch (const ParameterError& ex) {
    o.error(ex.what());
    return o.finish(kExitUsage);
  } catch (const Error& ex) {
    o.error(ex.what());
    return o.finish(kExitEngine);
  }
}

int verify_moh_command(Output& o) {
  return guarded(o, [&] {
    const MohReport r = verify_moh();
    o.say("Moh counterexample over F_2, f = z^4 + x^2*y^2*w^3*(w*(x+y)^4 + x^13)");
    o.say("residual order " + to_string(r.start_order) + " -> " + to_string(r.end_order) +
          " after x-chart, y->y+1 and cleaning");
    o.say("F' = " + r.end_F);
    o.say("cleaning removed g^4 with g = " + r.cleaning_delta);
    o.say("flawed bound " + std::to_string(r.flawed) + ", Moh bound " + std::to_string(r.bound));
    o.say(r.passed() ? "PASS" : "FAIL");
    o.write_trace({&r.trace});
    o.doc()["passed"] = r.passed();
    o.doc()["start_order"] = order_to_json(r.start_order);
    o.doc()["end_order"] = order_to_json(r.end_order);
    o.doc()["flawed_bound"] = r.flawed;
    o.doc()["moh_bound"] = r.bound;
    o.doc()["F"] = r.end_F;
    o.doc()["cleaning_delta"] = r.cleaning_delta;
    o.doc()["end_F_matches"] = r.end_F_matches;
    o.doc()["cleaning_delta_matches"] = r.cleaning_delta_matches;
    return r.passed() ? kExitOk : kExitAssertion;
  });
}

std::vector<CycleSummary> run_cycles(Output& o, CycleKind kind, const CycleArgs& a) {
  const std::uint64_t p = kind == CycleKind::Example1 ? 2 : a.p;
  Units units;
  if (a.seed_units) {
    units = random_units(kind == CycleKind::Example1 ? example1_ring() : example2_ring(p), *a.seed_units);
    o.say("random units (seed " + std::to_string(*a.seed_units) + "): lambda=" + std::to_string(units.lambda) +
          " A=" + to_string(*units.A) + " Q=" + to_string(*units.Q));
    o.doc()["units"] = {{"seed", *a.seed_units},
                        {"lambda", units.lambda},
                        {"A", to_string(*units.A)},
                        {"Q", to_string(*units.Q)}};
  }
  RunOptions options;
  options.normalize_exceptional = a.normalize;
  return iterate_cycle(kind, p, a.params, a.cycles, units, options);
}

int run_example_command(Output& o, CycleKind kind, const CycleArgs& a) {
  return guarded(o, [&] {
    const std::uint64_t p = kind == CycleKind::Example1 ? 2 : a.p;
    if (kind == CycleKind::Example2) {
      const auto k = example2_constants(p, a.params.d);
      o.say("p=" + std::to_string(p) + " d=" + std::to_string(a.params.d) + ": d'=" + std::to_string(k.d_prime) +
            " m=" + std::to_string(k.m) + " q=" + std::to_string(k.q) + " q'=" + std::to_string(k.q_prime));
      o.doc()["constants"] = {{"d_prime", k.d_prime}, {"m", k.m}, {"q", k.q}, {"q_prime", k.q_prime}};
    }
    const auto cycles = run_cycles(o, kind, a);
    std::vector<std::string> ends;
    std::vector<const StepTrace*> traces;
    json end_orders = json::array();
    for (const auto& c : cycles) {
      std::vector<std::string> cps;
      for (const auto& cp : c.checkpoints) cps.push_back(to_string(cp.actual));
      o.say("cycle " + std::to_string(c.cycle) + ": a=" + std::to_string(c.params.a) + " b=" +
            std::to_string(c.params.b) + " r=" + std::to_string(c.params.r) + " s=" + std::to_string(c.params.s) +
            " d=" + std::to_string(c.params.d) + ", " + std::to_string(c.blowups) + " blowups, checkpoints [" +
            join(cps, ", ") + "], residual order " + to_string(c.start_order) + " -> " + to_string(c.end_order));
      ends.push_back(to_string(c.end_order));
      end_orders.push_back(order_to_json(c.end_order));
      traces.push_back(&c.trace);
    }
    o.say("cycle-end residual orders [" + join(ends, ", ") + "]");
    o.write_trace(traces);
    o.doc()["p"] = p;
    o.doc()["cycles"] = cycles_to_json(cycles);
    o.doc()["cycle_end_orders"] = end_orders;
    return kExitOk;
  });
}

int run_script_command(Output& o, const std::string& path, const Globals& g, std::ostream& out) {
  return guarded(o, [&] {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot read " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::optional<Script> parsed;
    try {
      parsed = parse_script(buf.str());
    } catch (const ParseError& ex) {
      o.error(path + ":" + ex.what());
      return static_cast<int>(kExitUsage);
    }
    const Script& script = *parsed;
    json reports = json::array();
    const RenderOptions render{g.render_limit};
    auto sink = [&](const StepTrace& t, std::size_t from) {
      json chunk = json::array();
      for (std::size_t i = from; i < t.records.size(); ++i) {
        chunk.push_back(record_to_json(t.records[i], *t.ring, render));
        if (!g.json && !g.quiet) out << render_record(t.records[i], *t.ring, render);
      }
      reports.push_back(std::move(chunk));
    };
    ExecutionResult r = execute(script, sink);
    for (const auto& m : r.messages) o.say(m);
    if (!g.json)
      for (const auto& m : r.messages)
        if (g.quiet) out << m << "\n";
    o.say("final residual order " +
          (r.trace.records.empty() ? std::string("-") : to_string(r.trace.records.back().residual_order)) +
          ", status " + to_string(r.trace.final_status));
    o.write_trace({&r.trace});
    o.doc()["messages"] = r.messages;
    o.doc()["reports"] = std::move(reports);
    o.doc()["trace"] = trace_to_json(r.trace, render);
    return r.exit_code;
  });
}

int figure_command(Output& o, CycleKind kind, const CycleArgs& a, const std::string& out_file,
                   const std::string& data_file) {
  return guarded(o, [&] {
    const auto cycles = run_cycles(o, kind, a);
    std::vector<EdgeTrackEntry> tracks;
    for (const auto& c : cycles) tracks.push_back({c.cycle, c.edge});
    const RingPtr ring = kind == CycleKind::Example1 ? example1_ring() : example2_ring(a.p);
    const std::size_t light = kind == CycleKind::Example1 ? ring->index_of("u") : ring->index_of("v");
    const FigureProjection projection{{ring->index_of("x"), light}, {ring->index_of("y"), ring->index_of("w")}};
    const FigureDocument doc = emit_figure(tracks, *ring, projection);
    std::ofstream svg(out_file);
    if (!svg) throw ParameterError("cannot write " + out_file);
    svg << doc.svg;
    if (!data_file.empty()) {
      std::ofstream data(data_file);
      if (!data) throw ParameterError("cannot write " + data_file);
      data << doc.data.dump(2) << "\n";
    }
    o.say("wrote " + std::to_string(tracks.size()) + " segments to " + out_file);
    o.doc()["out"] = out_file;
    o.doc()["figure"] = doc.data;
    return kExitOk;
  });
}

void add_cycle_options(CLI::App* cmd, CycleArgs& a, bool with_p) {
  if (with_p) cmd->add_option("--p", a.p, "odd prime characteristic")->capture_default_str();
  cmd->add_option("--d", a.params.d, "d")->capture_default_str();
  cmd->add_option("--a", a.params.a, "a")->capture_default_str();
  cmd->add_option("--b", a.params.b, "b")->capture_default_str();
  cmd->add_option("--r", a.params.r, "r")->capture_default_str();
  cmd->add_option("--s", a.params.s, "s")->capture_default_str();
  cmd->add_option("--cycles", a.cycles, "number of cycles")->capture_default_str()->check(CLI::PositiveNumber);
  cmd->add_option("--seed-units", a.seed_units, "random units for the first cycle from this seed");
  cmd->add_flag("--normalize", a.normalize, "codimension 2 blowups to lower exceptional exponents");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Blowup cycles of purely inseparable hypersurfaces", "blowcycle"};
  app.fallthrough();
  app.require_subcommand(1);
  Globals g;
  app.add_option("--trace", g.trace_file, "write the step trace to this file");
  app.add_flag("--json", g.json, "machine-readable output");
  app.add_flag("--quiet", g.quiet, "suppress human-readable output");
  app.add_option("--render-limit", g.render_limit, "digest residues with more terms (0: no limit)")
      ->capture_default_str();

  auto* verify = app.add_subcommand("verify", "check a claim");
  verify->require_subcommand(1);
  auto* moh = verify->add_subcommand("moh", "Moh's counterexample in characteristic 2");

  auto* run = app.add_subcommand("run", "run a scenario");
  run->require_subcommand(1);
  CycleArgs ex1;
  ex1.params = CycleParams{1, 1, 1, 2, 4};
  CycleArgs ex2;
  ex2.params = CycleParams{1, 1, 1, 2, 3};
  auto* run1 = run->add_subcommand("example1", "characteristic 2 cycle in x, y, u, v, w");
  add_cycle_options(run1, ex1, false);
  auto* run2 = run->add_subcommand("example2", "odd characteristic cycle in x, y, v, w");
  add_cycle_options(run2, ex2, true);
  auto* runs = run->add_subcommand("script", "execute a blowup script");
  std::string script_file;
  runs->add_option("file", script_file, "script path")->required();

  auto* figure = app.add_subcommand("figure", "SVG of the significant edge per cycle");
  figure->require_subcommand(1);
  std::string out_file, data_file;
  CycleArgs fig1 = ex1, fig2 = ex2;
  fig1.cycles = fig2.cycles = 3;
  auto* f1 = figure->add_subcommand("example1", "Example 1 edges");
  auto* f2 = figure->add_subcommand("example2", "Example 2 edges");
  add_cycle_options(f1, fig1, false);
  add_cycle_options(f2, fig2, true);
  for (auto* f : {f1, f2}) {
    f->add_option("--out", out_file, "SVG output path")->required();
    f->add_option("--data", data_file, "JSON endpoint dump path");
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& ex) {
    err << "error: " << ex.what() << "\n";
    if (g.json) out << json{{"command", "usage"}, {"exit_code", kExitUsage}, {"error", ex.what()}}.dump(2) << "\n";
    return kExitUsage;
  }

  if (moh->parsed()) {
    Output o(g, out, err, "verify moh");
    return verify_moh_command(o);
  }
  if (run1->parsed()) {
    Output o(g, out, err, "run example1");
    return run_example_command(o, CycleKind::Example1, ex1);
  }
  if (run2->parsed()) {
    Output o(g, out, err, "run example2");
    return run_example_command(o, CycleKind::Example2, ex2);
  }
  if (runs->parsed()) {
    Output o(g, out, err, "run script");
    return run_script_command(o, script_file, g, out);
  }
  if (f1->parsed() || f2->parsed()) {
    const bool first = f1->parsed();
    Output o(g, out, err, first ? "figure example1" : "figure example2");
    return figure_command(o, first ? CycleKind::Example1 : CycleKind::Example2, first ? fig1 : fig2, out_file,
                          data_file);
  }
  err << "error: no command\n";
  return kExitUsage;
}

}  // namespace blowcycle
