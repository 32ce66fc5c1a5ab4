#pragma once

// Update and query language: ground, time-free prefixed literals that feed
// domain events into a compiled model and read back belief status.
//
//   update [~]obj|bel|rmb(atom)
//   query  [~]obj|bel|rmb(atom)
//   expect [~]obj|bel|rmb(atom) holds|out
//   dump

#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "beliefc/atms.hpp"
#include "beliefc/compiler.hpp"
#include "beliefc/engine.hpp"
#include "beliefc/spec_parser.hpp"

namespace beliefc {

struct UqlStatement {
  enum class Kind { Update, Query, Dump, Expect };
  Kind kind = Kind::Dump;
  Literal literal;
  bool expect_holds = true;
  std::string text;  // source line, trimmed
  int line = 0;
};

inline std::optional<Prefix> parse_prefix(std::string_view s) {
  if (s == "obj") return Prefix::Obj;
  if (s == "bel") return Prefix::Bel;
  if (s == "rmb") return Prefix::Rmb;
  return std::nullopt;
}

namespace detail {

inline std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline bool mentions_prefix(const Atom& a) {
  if (parse_prefix(a.pred)) return true;
  for (const auto& t : a.args)
    if (t.kind == Term::Kind::Quoted && mentions_prefix(unquote(t))) return true;
  return false;
}

inline Literal parse_literal(FormulaParser& p, int line) {
  bool positive = !p.accept("~");
  if (p.peek_is("forall") || p.peek_is("exists"))
    throw Error("QuantifiedUpdate", std::to_string(line) + ": quantified formulas are not allowed here");
  const Token& pre = p.expect_ident();
  auto prefix = parse_prefix(pre.text);
  if (!prefix)
    throw Error("SyntaxError", std::to_string(line) + ":" + std::to_string(pre.column) +
                                   ": expected obj, bel or rmb prefix");
  p.expect("(");
  const Token& start = p.peek();
  Atom a = p.parse_atom();
  if (mentions_prefix(a))
    throw Error("SyntaxError", std::to_string(line) + ":" + std::to_string(start.column) +
                                   ": modal prefixes apply only to whole statements");
  p.expect(")");
  return {positive, *prefix, std::move(a)};
}

}  // namespace detail

inline std::vector<UqlStatement> parse_uql(std::string_view text) {
  std::vector<UqlStatement> out;
  auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    int lineno = static_cast<int>(n) + 1;
    auto toks = Lexer(lines[n], lineno).tokens();
    if (toks.front().kind == Token::Kind::End) continue;
    std::string src = lines[n];
    if (auto hash = src.find('#'); hash != std::string::npos) src.resize(hash);
    UqlStatement st;
    st.text = detail::trim(src);
    st.line = lineno;
    // No `Name:sort` annotations: every identifier is a constant.
    for (std::size_t i = 0; i + 1 < toks.size(); ++i)
      if (toks[i].text == ":")
        throw Error("QuantifiedUpdate", std::to_string(lineno) + ": variables are not allowed in statements");
    FormulaParser p(toks, {});
    const std::string kw = p.expect_ident().text;
    if (kw == "dump") {
      st.kind = UqlStatement::Kind::Dump;
    } else if (kw == "update" || kw == "query" || kw == "expect") {
      st.kind = kw == "update" ? UqlStatement::Kind::Update
                : kw == "query" ? UqlStatement::Kind::Query
                                : UqlStatement::Kind::Expect;
      st.literal = detail::parse_literal(p, lineno);
      if (st.kind == UqlStatement::Kind::Expect) {
        std::string want = p.expect_ident().text;
        if (want != "holds" && want != "out")
          throw Error("SyntaxError", std::to_string(lineno) + ": expect needs 'holds' or 'out'");
        st.expect_holds = want == "holds";
      }
    } else {
      throw Error("SyntaxError", std::to_string(lineno) + ": unknown statement '" + kw + "'");
    }
    p.expect_end();
    out.push_back(std::move(st));
  }
  return out;
}

struct QueryAnswer {
  enum class Kind { Yes, No, Both };
  Kind kind = Kind::No;
  std::string support;  // one minimal environment, or both annotated sides
  bool retracted = false;
};

struct Transcript {
  std::string text;
  int failures = 0;
  int expects = 0;
};

class Runtime {
 public:
  explicit Runtime(CompiledModel model)
      : model_(std::move(model)), atms_(model_.space_order), engine_(model_, atms_) {
    engine_.run_to_fixpoint();
  }

  Runtime(const Runtime&) = delete;
  Runtime& operator=(const Runtime&) = delete;

  // Returns an empty string for a well-sorted ground literal.
  std::string check_literal(const Literal& l) const {
    if (!l.is_ground()) return "literal is not ground";
    std::vector<Violation> v;
    std::string label = "stmt";
    detail::SortWalker w{model_.signature, model_.space_order, label, v};
    w.check_atom(l.atom);
    if (v.empty()) return {};
    return std::string(kind_name(v.front().kind)) + ": " + v.front().message;
  }

  EngineStats apply_update(const Literal& l) {
    if (auto err = check_literal(l); !err.empty()) throw Error("IllSortedLiteral", err);
    atms_.set_epoch(++updates_);
    if (l.positive) {
      engine_.add_premise(l);
    } else {
      // Negative evidence stays retractable and remembers when it arrived.
      engine_.add_assumption(l, Assumption::timestamp(updates_));
    }
    return engine_.run_to_fixpoint();
  }

  QueryAnswer answer_query(const Literal& l) const {
    QueryAnswer a;
    auto mine = atms_.holds(l);
    auto other = atms_.holds(l.negated());
    a.retracted = mine.status == HoldStatus::Retracted;
    if (mine.status != HoldStatus::Holds) return a;
    if (other.status == HoldStatus::Holds) {
      a.kind = QueryAnswer::Kind::Both;
      a.support = annotate(l, mine.environments) + "; " + annotate(l.negated(), other.environments);
      return a;
    }
    a.kind = QueryAnswer::Kind::Yes;
    a.support = atms_.render_environment(smallest(mine.environments));
    return a;
  }

  Transcript run_script(const std::vector<UqlStatement>& script) {
    Transcript t;
    std::ostringstream out;
    for (const auto& st : script) {
      out << "> " << st.text << "\n";
      switch (st.kind) {
        case UqlStatement::Kind::Update: {
          try {
            auto s = apply_update(st.literal);
            out << "  firings=" << s.firings << " justifications=" << s.justifications
                << " assumptions=" << s.assumptions << " premises=" << s.premises
                << " resolutions=" << s.resolutions << (s.partial ? " partial" : "") << "\n";
            for (const auto& r : engine_.last_resolutions())
              for (const auto& e : r.retracted) out << "  retracted " << atms_.render_environment(e) << "\n";
            for (const auto& e : s.errors) out << "  error " << e << "\n";
          } catch (const Error& e) {
            out << "  error " << e.code() << ": " << e.what() << "\n";
          }
          break;
        }
        case UqlStatement::Kind::Query: {
          if (auto err = check_literal(st.literal); !err.empty()) {
            out << "  error IllSortedLiteral: " << err << "\n";
            break;
          }
          out << "  " << render(answer_query(st.literal)) << "\n";
          break;
        }
        case UqlStatement::Kind::Expect: {
          ++t.expects;
          auto a = answer_query(st.literal);
          bool holds = a.kind != QueryAnswer::Kind::No;
          bool pass = holds == st.expect_holds;
          if (!pass) ++t.failures;
          out << "  " << (pass ? "PASS" : "FAIL") << " (" << render(a) << ")\n";
          break;
        }
        case UqlStatement::Kind::Dump: {
          std::istringstream lines(atms_.dump());
          for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
          break;
        }
      }
    }
    t.text = out.str();
    return t;
  }

  static std::string render(const QueryAnswer& a) {
    switch (a.kind) {
      case QueryAnswer::Kind::Yes: return "yes " + a.support;
      case QueryAnswer::Kind::Both: return "both " + a.support;
      case QueryAnswer::Kind::No: return a.retracted ? "no (retracted)" : "no";
    }
    return "?";
  }

  const Atms& atms() const { return atms_; }
  const Engine& engine() const { return engine_; }
  const CompiledModel& model() const { return model_; }

 private:
  static Environment smallest(const std::vector<Environment>& envs) {
    return *std::min_element(envs.begin(), envs.end(), [](const Environment& a, const Environment& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
  }

  std::string annotate(const Literal& l, const std::vector<Environment>& envs) const {
    auto space = atms_.side_space(envs);
    return beliefc::render(l) + (space ? " in space " + std::to_string(*space) : "") + " " + atms_.render_label(envs);
  }

  CompiledModel model_;
  Atms atms_;
  Engine engine_;
  int updates_ = 0;
};

}  // namespace beliefc
