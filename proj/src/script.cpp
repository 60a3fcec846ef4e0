#include "blowcycle/script.hpp"

#include <algorithm>
#include <cctype>
#include <optional>
#include <sstream>

namespace blowcycle {

bool ScriptStatement::operator==(const ScriptStatement& o) const {
  return kind == o.kind && variable == o.variable && translations == o.translations && value == o.value;
}

bool Script::operator==(const Script& o) const {
  return p == o.p && e == o.e && *ring == *o.ring && F == o.F && delta == o.delta && statements == o.statements;
}

namespace {

struct Token {
  enum class Kind { Ident, Number, Equals };
  Kind kind;
  std::string text;
  std::size_t column;  // 1-based
};

class LineParser {
 public:
  LineParser(std::string_view text, std::size_t line) : line_(line) { lex(text); }

  bool done() const { return pos_ == tokens_.size(); }
  std::size_t end_column() const { return end_column_; }
  const Token& peek() const { return tokens_.at(pos_); }

  [[noreturn]] void fail_at(std::size_t column, const std::string& message) const {
    throw ParseError(line_, column, message);
  }
  [[noreturn]] void fail_here(const std::string& message) const {
    fail_at(done() ? end_column_ : peek().column, message);
  }

  const Token& expect(Token::Kind kind, const std::string& what) {
    if (done() || peek().kind != kind) fail_here("expected " + what);
    return tokens_[pos_++];
  }
  const Token& ident(const std::string& what) { return expect(Token::Kind::Ident, what); }
  void keyword(const std::string& word) {
    if (done() || peek().kind != Token::Kind::Ident || peek().text != word) fail_here("expected '" + word + "'");
    ++pos_;
  }
  void equals() { expect(Token::Kind::Equals, "'='"); }

  std::uint64_t number(const Token& t) const {
    std::uint64_t v = 0;
    for (char c : t.text) {
      if (__builtin_mul_overflow(v, 10, &v) || __builtin_add_overflow(v, static_cast<std::uint64_t>(c - '0'), &v))
        fail_at(t.column, "number too large");
    }
    return v;
  }
  std::pair<const Token*, std::uint64_t> number(const std::string& what) {
    const Token& t = expect(Token::Kind::Number, what);
    return {&t, number(t)};
  }
  void finish() {
    if (!done()) fail_here("unexpected '" + peek().text + "'");
  }

 private:
  void lex(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size()) {
      const char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '=') {
        tokens_.push_back({Token::Kind::Equals, "=", i + 1});
        ++i;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
        tokens_.push_back({Token::Kind::Number, std::string(text.substr(i, j - i)), i + 1});
        i = j;
      } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text.size() && (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_')) ++j;
        tokens_.push_back({Token::Kind::Ident, std::string(text.substr(i, j - i)), i + 1});
        i = j;
      } else {
        throw ParseError(line_, i + 1, std::string("unexpected character '") + c + "'");
      }
    }
    end_column_ = text.size() + 1;
  }

  std::size_t line_;
  std::vector<Token> tokens_;
  std::size_t pos_ = 0;
  std::size_t end_column_ = 1;
};

struct PendingF {
  std::string text;
  std::size_t line;
  std::size_t offset;
};

}  // namespace

Script parse_script(std::string_view text) {
  std::optional<std::uint64_t> p;
  std::optional<std::uint32_t> e;
  std::vector<std::string> vars;
  RingPtr ring;
  std::optional<Polynomial> F;
  std::optional<std::vector<std::string>> delta;
  std::vector<ScriptStatement> statements;

  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    start = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    const auto first = line.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      if (end == text.size()) break;
      continue;
    }
    const std::size_t col = first + 1;

    auto header_only = [&](const std::string& what) {
      if (!statements.empty()) throw ParseError(line_no, col, what + " must precede the statements");
    };

    // F = <polynomial>
    if (line[first] == 'F') {
      const auto eq = line.find_first_not_of(" \t", first + 1);
      if (eq != std::string_view::npos && line[eq] == '=') {
        header_only("F");
        if (F) throw ParseError(line_no, col, "duplicate F");
        if (!ring) throw ParseError(line_no, col, "F must follow the vars line");
        F = parse_polynomial(line.substr(eq + 1), ring, line_no, eq + 1);
        if (end == text.size()) break;
        continue;
      }
    }

    LineParser lp(line, line_no);
    const Token& head = lp.ident("a directive");
    const std::string& word = head.text;

    if ((word == "p" || word == "e") && !lp.done() && lp.peek().kind == Token::Kind::Equals) {
      header_only("p and e");
      std::string key = word;
      std::size_t key_col = head.column;
      while (true) {
        lp.equals();
        auto [tok, value] = lp.number("a natural number");
        if (key == "p") {
          if (p) lp.fail_at(key_col, "duplicate p");
          if (ring) lp.fail_at(key_col, "p must precede the vars line");
          if (value > kMaxPrime || !is_prime(value)) lp.fail_at(tok->column, "p = " + tok->text + " is not a supported prime");
          p = value;
        } else if (key == "e") {
          if (e) lp.fail_at(key_col, "duplicate e");
          if (value == 0 || value > 63) lp.fail_at(tok->column, "e must be between 1 and 63");
          e = static_cast<std::uint32_t>(value);
        } else {
          lp.fail_at(key_col, "unknown header field '" + key + "'");
        }
        if (lp.done()) break;
        const Token& next = lp.ident("'p' or 'e'");
        key = next.text;
        key_col = next.column;
      }
    } else if (word == "vars") {
      header_only("vars");
      if (ring) lp.fail_at(head.column, "duplicate vars");
      if (!p) lp.fail_at(head.column, "p must be declared before vars");
      while (!lp.done()) {
        const Token& v = lp.ident("a variable name");
        if (std::find(vars.begin(), vars.end(), v.text) != vars.end())
          lp.fail_at(v.column, "duplicate variable '" + v.text + "'");
        if (v.text == "z") lp.fail_at(v.column, "'z' is the formal hypersurface variable");
        vars.push_back(v.text);
      }
      if (vars.empty()) lp.fail_here("expected at least one variable");
      if (vars.size() > kMaxVariables) lp.fail_at(head.column, "too many variables");
      ring = make_ring(*p, vars);
    } else if (word == "delta") {
      header_only("delta");
      if (delta) lp.fail_at(head.column, "duplicate delta");
      if (!ring) lp.fail_at(head.column, "delta must follow the vars line");
      std::vector<std::string> names;
      while (!lp.done()) {
        const Token& v = lp.ident("a variable name");
        if (!ring->contains(v.text)) lp.fail_at(v.column, "undeclared variable '" + v.text + "'");
        if (std::find(names.begin(), names.end(), v.text) != names.end())
          lp.fail_at(v.column, "duplicate variable '" + v.text + "'");
        names.push_back(v.text);
      }
      delta = std::move(names);
    } else if (word == "blowup" || word == "clean" || word == "assert" || word == "report") {
      for (const char* field : {"p", "e", "vars", "F"}) {
        const bool have = (field[0] == 'p' && p) || (field[0] == 'e' && e) || (field[0] == 'v' && ring) ||
                          (field[0] == 'F' && F);
        if (!have) lp.fail_at(head.column, std::string("missing header field '") + field + "'");
      }
      ScriptStatement st{ScriptStatement::Kind::Clean, "", {}, 0, line_no, head.column};
      auto variable = [&](const Token& t) {
        if (!ring->contains(t.text)) lp.fail_at(t.column, "undeclared variable '" + t.text + "'");
        return t.text;
      };
      if (word == "blowup") {
        const Token& kind = lp.ident("'point' or 'curve'");
        if (kind.text == "point") {
          st.kind = ScriptStatement::Kind::BlowupPoint;
          lp.keyword("chart");
          lp.equals();
          st.variable = variable(lp.ident("a chart variable"));
          if (!lp.done()) {
            lp.keyword("translate");
            if (lp.done()) lp.fail_here("expected a translation");
            while (!lp.done()) {
              const Token& v = lp.ident("a variable name");
              const std::string name = variable(v);
              if (name == st.variable) lp.fail_at(v.column, "the chart variable cannot be translated");
              for (const auto& [n, c] : st.translations)
                if (n == name) lp.fail_at(v.column, "duplicate translation of '" + name + "'");
              lp.equals();
              auto [tok, value] = lp.number("a constant");
              if (value >= *p)
                lp.fail_at(tok->column, "constant " + tok->text + " is not below p = " + std::to_string(*p));
              st.translations.emplace_back(name, value);
            }
          }
        } else if (kind.text == "curve") {
          st.kind = ScriptStatement::Kind::BlowupCurve;
          lp.keyword("var");
          lp.equals();
          st.variable = variable(lp.ident("a variable"));
        } else {
          lp.fail_at(kind.column, "expected 'point' or 'curve'");
        }
      } else if (word == "assert") {
        st.kind = ScriptStatement::Kind::AssertResorder;
        lp.keyword("resorder");
        lp.equals();
        st.value = lp.number("a natural number").second;
      } else if (word == "report") {
        st.kind = ScriptStatement::Kind::Report;
      }
      lp.finish();
      statements.push_back(std::move(st));
    } else {
      lp.fail_at(head.column, "unknown directive '" + word + "'");
    }
    lp.finish();
    if (end == text.size()) break;
  }

  for (const char* field : {"p", "e", "vars", "F"}) {
    const bool have =
        (field[0] == 'p' && p) || (field[0] == 'e' && e) || (field[0] == 'v' && ring) || (field[0] == 'F' && F);
    if (!have) throw ParseError(std::max<std::size_t>(line_no, 1), 1, std::string("missing header field '") + field + "'");
  }
  checked_pow(*p, *e);
  return Script{*p, *e, ring, *F, delta.value_or(std::vector<std::string>{}), std::move(statements)};
}

std::string render_script(const Script& s) {
  std::ostringstream os;
  os << "p=" << s.p << " e=" << s.e << "\n";
  os << "vars";
  for (const auto& n : s.ring->names()) os << " " << n;
  os << "\n";
  os << "F = " << to_string(s.F) << "\n";
  if (!s.delta.empty()) {
    os << "delta";
    for (const auto& n : s.delta) os << " " << n;
    os << "\n";
  }
  for (const auto& st : s.statements) {
    switch (st.kind) {
      case ScriptStatement::Kind::BlowupPoint:
        os << "blowup point chart=" << st.variable;
        if (!st.translations.empty()) {
          os << " translate";
          for (const auto& [n, c] : st.translations) os << " " << n << "=" << c;
        }
        break;
      case ScriptStatement::Kind::BlowupCurve:
        os << "blowup curve var=" << st.variable;
        break;
      case ScriptStatement::Kind::Clean:
        os << "clean";
        break;
      case ScriptStatement::Kind::AssertResorder:
        os << "assert resorder=" << st.value;
        break;
      case ScriptStatement::Kind::Report:
        os << "report";
        break;
    }
    os << "\n";
  }
  return os.str();
}

namespace {

TransformStatus classify(const InsepHypersurface& h) {
  if (h.F().is_zero()) return TransformStatus::Resolved;
  return h.has_full_order() ? TransformStatus::SameOrder : TransformStatus::OrderDropped;
}

std::string where(const ScriptStatement& st) {
  return std::to_string(st.line) + ":" + std::to_string(st.column) + ": ";
}

}  // namespace

ExecutionResult execute(const Script& script, const ReportSink& on_report, const TransformOptions& options) {
  ExecutionResult res;
  StepTrace& trace = res.trace;
  trace.scenario = "script";
  trace.ring = script.ring;
  trace.e = script.e;

  const Exponent q = checked_pow(script.p, script.e);
  InsepHypersurface h(script.e, FactoredPolynomial(script.F).absorb_content(q));
  DivisorState E = DivisorState::from_names(*script.ring, script.delta);
  TransformStatus status = classify(h);
  trace.records.push_back(make_record(0, 0, "start", status, h, E, FactoredPolynomial(Polynomial(script.ring)), true));
  std::size_t reported = 0;
  std::size_t index = 0;

  auto stop = [&](int code, std::string message) {
    res.exit_code = code;
    res.messages.push_back(std::move(message));
  };

  for (std::size_t k = 0; k < script.statements.size() && res.exit_code == kExitOk; ++k) {
    const ScriptStatement& st = script.statements[k];
    if (status != TransformStatus::SameOrder && st.kind != ScriptStatement::Kind::Report) {
      stop(kExitEngine, where(st) + "statement rejected: the state is terminal (" + to_string(status) + ")");
      break;
    }
    try {
      switch (st.kind) {
        case ScriptStatement::Kind::BlowupPoint:
        case ScriptStatement::Kind::BlowupCurve: {
          const std::size_t i = script.ring->index_of(st.variable);
          const bool point = st.kind == ScriptStatement::Kind::BlowupPoint;
          const BlowupSpec spec = point ? BlowupSpec::point(*script.ring, st.variable, st.translations)
                                        : BlowupSpec::curve(i);
          const bool permissible = is_clean(h) && check_permissible(h, E, spec.gamma()).permissible();
          TransformOutcome out = point ? strict_transform(h, E, spec, options) : reduce_exceptional(h, E, i);
          trace.records.push_back(make_record(++index, k + 1, describe(spec, *script.ring), out.status, out.h_after,
                                              out.E_after, out.cleaning_delta, permissible));
          h = out.h_after;
          E = out.E_after;
          status = out.status;
          break;
        }
        case ScriptStatement::Kind::Clean: {
          auto c = clean(h);
          h = InsepHypersurface(script.e, c.F_clean);
          status = classify(h);
          trace.records.push_back(make_record(++index, k + 1, "clean", status, h, E, c.g, true));
          break;
        }
        case ScriptStatement::Kind::AssertResorder: {
          const Order actual = residual_order(h, E);
          if (actual != Order(st.value))
            stop(kExitAssertion, where(st) + "assert resorder=" + std::to_string(st.value) + " failed: expected " +
                                     std::to_string(st.value) + ", actual " + to_string(actual));
          break;
        }
        case ScriptStatement::Kind::Report:
          if (on_report) on_report(trace, reported);
          reported = trace.records.size();
          break;
      }
    } catch (const Error& ex) {
      stop(kExitEngine, where(st) + ex.what());
    }
  }
  trace.final_status = status;
  if (status == TransformStatus::SameOrder) trace.final_state = h;
  trace.final_delta = E;
  return res;
}

}  // namespace blowcycle
