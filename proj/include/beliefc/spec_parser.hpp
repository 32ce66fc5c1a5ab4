#pragma once

// Concrete syntax for belief specifications (.bspec) plus the static checks
// that decide whether a specification can be compiled at all.

#include <cctype>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "beliefc/logic.hpp"

namespace beliefc {

// ---------------------------------------------------------------------------
// Evidential spaces
// ---------------------------------------------------------------------------

// Strict partial order over evidential-space indices. `add_order(weak,
// strong)` records that `strong` outranks `weak`.
class SpaceOrder {
 public:
  void declare(int space) { spaces_.insert(space); }

  void add_order(int weaker, int stronger) {
    declare(weaker);
    declare(stronger);
    if (weaker == stronger || stronger_than(weaker, stronger))
      throw Error("CyclicSpaceOrder", "space order " + std::to_string(weaker) + " < " + std::to_string(stronger) +
                                          " is not a strict partial order");
    edges_.insert({weaker, stronger});
  }

  bool contains(int space) const { return spaces_.count(space) != 0; }
  const std::set<int>& spaces() const { return spaces_; }
  const std::set<std::pair<int, int>>& edges() const { return edges_; }

  // True iff `a` is strictly stronger than `b` (transitively).
  bool stronger_than(int a, int b) const {
    std::set<int> seen;
    std::vector<int> stack{b};
    while (!stack.empty()) {
      int cur = stack.back();
      stack.pop_back();
      for (const auto& [weak, strong] : edges_) {
        if (weak != cur || !seen.insert(strong).second) continue;
        if (strong == a) return true;
        stack.push_back(strong);
      }
    }
    return false;
  }

  bool comparable(int a, int b) const { return a == b || stronger_than(a, b) || stronger_than(b, a); }

  bool operator==(const SpaceOrder&) const = default;

 private:
  std::set<int> spaces_;
  std::set<std::pair<int, int>> edges_;
};

struct Axiom {
  std::string label;
  Formula formula;
  bool operator==(const Axiom&) const = default;
};

struct Spec {
  Signature signature;
  std::vector<Axiom> axioms;
  SpaceOrder space_order;
};

struct Violation {
  enum class Kind {
    CrossAgentBeliefImplication,
    DefInsideModal,
    UnsortedVariable,
    ArityMismatch,
    ExistentialUnderUniversal,
    UnknownSymbol,
    NegatedMutualKnowledge,
  };
  std::string axiom_label;
  Kind kind;
  std::string message;
  bool operator==(const Violation&) const = default;
};

inline const char* kind_name(Violation::Kind k) {
  switch (k) {
    case Violation::Kind::CrossAgentBeliefImplication: return "CrossAgentBeliefImplication";
    case Violation::Kind::DefInsideModal: return "DefInsideModal";
    case Violation::Kind::UnsortedVariable: return "UnsortedVariable";
    case Violation::Kind::ArityMismatch: return "ArityMismatch";
    case Violation::Kind::ExistentialUnderUniversal: return "ExistentialUnderUniversal";
    case Violation::Kind::UnknownSymbol: return "UnknownSymbol";
    case Violation::Kind::NegatedMutualKnowledge: return "NegatedMutualKnowledge";
  }
  return "?";
}

// Diagnostic line format: LABEL:KIND:message
inline std::string render(const Violation& v) {
  return v.axiom_label + ":" + kind_name(v.kind) + ":" + v.message;
}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

struct Token {
  enum class Kind { Ident, Number, Punct, End };
  Kind kind = Kind::End;
  std::string text;
  int line = 0;
  int column = 0;
};

class Lexer {
 public:
  Lexer(std::string_view text, int line) : text_(text), line_(line) {}

  std::vector<Token> tokens() {
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < text_.size()) {
      char c = text_[i];
      if (c == '#') break;
      if (std::isspace(static_cast<unsigned char>(c))) { ++i; continue; }
      Token t;
      t.line = line_;
      t.column = static_cast<int>(i) + 1;
      if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
        std::size_t j = i;
        while (j < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[j])) || text_[j] == '_')) ++j;
        t.kind = Token::Kind::Ident;
        t.text = std::string(text_.substr(i, j - i));
        i = j;
      } else if (std::isdigit(static_cast<unsigned char>(c))) {
        std::size_t j = i;
        while (j < text_.size() && std::isdigit(static_cast<unsigned char>(text_[j]))) ++j;
        t.kind = Token::Kind::Number;
        t.text = std::string(text_.substr(i, j - i));
        i = j;
      } else if (text_.substr(i, 2) == "=>") {
        t.kind = Token::Kind::Punct;
        t.text = "=>";
        i += 2;
      } else if (std::string_view("(),:.[]&|~<").find(c) != std::string_view::npos) {
        t.kind = Token::Kind::Punct;
        t.text = std::string(1, c);
        ++i;
      } else {
        throw Error("SyntaxError", std::to_string(line_) + ":" + std::to_string(i + 1) + ": unexpected character '" +
                                       std::string(1, c) + "'");
      }
      out.push_back(std::move(t));
    }
    Token end;
    end.line = line_;
    end.column = static_cast<int>(text_.size()) + 1;
    out.push_back(end);
    return out;
  }

 private:
  std::string_view text_;
  int line_;
};

// ---------------------------------------------------------------------------
// Formula parser
// ---------------------------------------------------------------------------

class FormulaParser {
 public:
  // `vars` maps every variable name visible in this line to its sort.
  FormulaParser(std::vector<Token> tokens, std::map<std::string, std::string> vars)
      : toks_(std::move(tokens)), vars_(std::move(vars)) {}

  // Collects `Name : sort` annotations; those names are variables.
  static std::map<std::string, std::string> scan_variables(const std::vector<Token>& toks) {
    std::map<std::string, std::string> vars;
    for (std::size_t i = 0; i + 2 < toks.size(); ++i) {
      if (toks[i].kind == Token::Kind::Ident && toks[i + 1].text == ":" && toks[i + 2].kind == Token::Kind::Ident) {
        auto [it, fresh] = vars.emplace(toks[i].text, toks[i + 2].text);
        if (!fresh && it->second != toks[i + 2].text)
          throw Error("SyntaxError", where(toks[i]) + "variable '" + toks[i].text + "' annotated with two sorts");
      }
    }
    return vars;
  }

  Formula parse_formula() {
    if (peek_is("forall") || peek_is("exists")) return parse_quantified();
    Formula lhs = parse_or();
    if (accept("=>")) return Formula::binary(Formula::Kind::Implies, std::move(lhs), parse_formula());
    return lhs;
  }

  Atom parse_atom() {
    const Token& name = expect_ident();
    auto v = vars_.find(name.text);
    if (v != vars_.end() && !peek_is("(")) {
      skip_annotation();
      return Atom::prop_var(Term::var(name.text, v->second));
    }
    Atom a{name.text, {}};
    if (accept("(") && !accept(")")) {
      a.args.push_back(parse_term());
      while (accept(",")) a.args.push_back(parse_term());
      expect(")");
    }
    return a;
  }

  Term parse_term() {
    const Token& name = expect_ident();
    if (peek_is("(")) {
      Atom inner{name.text, {}};
      expect("(");
      inner.args.push_back(parse_term());
      while (accept(",")) inner.args.push_back(parse_term());
      expect(")");
      return quote(inner);
    }
    auto v = vars_.find(name.text);
    if (v != vars_.end()) {
      skip_annotation();
      return Term::var(name.text, v->second);
    }
    return Term::constant(name.text);
  }

  void expect_end() {
    if (toks_[pos_].kind != Token::Kind::End) fail("unexpected '" + toks_[pos_].text + "'");
  }

  bool at_end() const { return toks_[pos_].kind == Token::Kind::End; }
  bool accept(std::string_view p) {
    if (toks_[pos_].kind != Token::Kind::End && toks_[pos_].text == p) { ++pos_; return true; }
    return false;
  }
  const Token& peek() const { return toks_[pos_]; }
  bool peek_is(std::string_view p) const { return toks_[pos_].kind != Token::Kind::End && toks_[pos_].text == p; }
  void expect(std::string_view p) {
    if (!accept(p)) fail("expected '" + std::string(p) + "'");
  }
  const Token& expect_ident() {
    if (toks_[pos_].kind != Token::Kind::Ident) fail("expected identifier");
    return toks_[pos_++];
  }

 private:
  static std::string where(const Token& t) { return std::to_string(t.line) + ":" + std::to_string(t.column) + ": "; }
  [[noreturn]] void fail(const std::string& msg) const { throw Error("SyntaxError", where(toks_[pos_]) + msg); }

  void skip_annotation() {
    if (peek_is(":")) { ++pos_; expect_ident(); }
  }

  Formula parse_quantified() {
    auto kind = toks_[pos_++].text == "forall" ? Formula::Kind::ForAll : Formula::Kind::Exists;
    std::vector<std::pair<std::string, std::string>> binders;
    do {
      const Token& v = expect_ident();
      expect(":");
      binders.emplace_back(v.text, expect_ident().text);
    } while (accept(","));
    expect(".");
    Formula body = parse_formula();
    for (auto it = binders.rbegin(); it != binders.rend(); ++it)
      body = Formula::quantified(kind, it->first, it->second, std::move(body));
    return body;
  }

  Formula parse_or() {
    Formula lhs = parse_and();
    while (accept("|")) lhs = Formula::binary(Formula::Kind::Or, std::move(lhs), parse_and());
    return lhs;
  }

  Formula parse_and() {
    Formula lhs = parse_unary();
    while (accept("&")) lhs = Formula::binary(Formula::Kind::And, std::move(lhs), parse_unary());
    return lhs;
  }

  Formula parse_unary() {
    if (accept("~")) return Formula::negate(parse_unary());
    return parse_primary();
  }

  Formula parse_primary() {
    if (accept("(")) {
      Formula f = parse_formula();
      expect(")");
      return f;
    }
    if (peek_is("forall") || peek_is("exists")) return parse_quantified();
    if (accept("true")) return Formula::truth();
    if (accept("mk")) {
      expect("(");
      Formula f = Formula::mk(parse_formula());
      expect(")");
      return f;
    }
    if (peek_is("bel") && toks_[pos_ + 1].text == "(") {
      ++pos_;
      expect("(");
      Term agent = parse_term();
      expect(",");
      Term time = parse_term();
      expect(",");
      Formula body = parse_formula();
      expect(")");
      return Formula::bel(std::move(agent), std::move(time), std::move(body));
    }
    if (peek_is("def") || peek_is("mdef")) {
      auto kind = toks_[pos_++].text == "def" ? Formula::Kind::Def : Formula::Kind::MDef;
      expect("[");
      if (toks_[pos_].kind != Token::Kind::Number) fail("expected evidential space index");
      int space = std::stoi(toks_[pos_++].text);
      expect("]");
      expect("(");
      Formula body = parse_formula();
      expect(")");
      return Formula::def(kind, space, std::move(body));
    }
    return Formula::atomic(parse_atom());
  }

  std::vector<Token> toks_;
  std::map<std::string, std::string> vars_;
  std::size_t pos_ = 0;
};

// ---------------------------------------------------------------------------
// Spec parser
// ---------------------------------------------------------------------------

namespace detail {

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    auto end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string line(text.substr(start, end - start));
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(std::move(line));
    start = end + 1;
  }
  return lines;
}

// Replaces leading existentials of a closed axiom by fresh constants.
inline Formula skolemize_outer(Formula f, const std::string& label, Signature& sig) {
  while (f.kind == Formula::Kind::Exists) {
    std::string name = "sk_" + label + "_" + f.var;
    while (sig.constants.count(name)) name += "_";
    sig.constants[name] = f.sort;
    Formula body = f.operand();
    f = substitute(body, {{f.var, Term::constant(name)}});
  }
  return f;
}

}  // namespace detail

inline Spec parse_spec(std::string_view text) {
  Spec spec;
  Signature& sig = spec.signature;
  sig.sorts.add(kPropSort);
  std::set<std::string> labels;
  auto lines = detail::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    int lineno = static_cast<int>(n) + 1;
    auto toks = Lexer(lines[n], lineno).tokens();
    if (toks.front().kind == Token::Kind::End) continue;
    const std::string keyword = toks.front().text;
    auto at = [&](const Token& t) { return std::to_string(t.line) + ":" + std::to_string(t.column) + ": "; };

    if (keyword == "axiom") {
      if (toks.size() < 4 || toks[1].kind != Token::Kind::Ident || toks[2].text != ":")
        throw Error("SyntaxError", at(toks[0]) + "expected 'axiom LABEL: formula'");
      std::string label = toks[1].text;
      if (!labels.insert(label).second) throw Error("DuplicateDeclaration", at(toks[1]) + "duplicate axiom '" + label + "'");
      std::vector<Token> body(toks.begin() + 3, toks.end());
      FormulaParser p(body, FormulaParser::scan_variables(body));
      Formula f = p.parse_formula();
      p.expect_end();
      f = detail::skolemize_outer(std::move(f), label, sig);
      auto free = free_vars(f);
      for (auto it = free.rbegin(); it != free.rend(); ++it)
        f = Formula::quantified(Formula::Kind::ForAll, it->name, it->sort, std::move(f));
      spec.axioms.push_back({label, std::move(f)});
      continue;
    }

    FormulaParser p(toks, {});
    p.expect_ident();
    if (keyword == "sort") {
      do {
        const Token& name = p.expect_ident();
        if (name.text == kPropSort) continue;
        if (sig.sorts.contains(name.text)) throw Error("DuplicateDeclaration", at(name) + "duplicate sort '" + name.text + "'");
        sig.sorts.add(name.text);
      } while (p.accept(","));
    } else if (keyword == "subsort") {
      const Token& child = p.expect_ident();
      const Token& parent = p.expect_ident();
      if (sig.sorts.contains(child.text)) throw Error("DuplicateDeclaration", at(child) + "duplicate sort '" + child.text + "'");
      if (!sig.sorts.contains(parent.text)) throw Error("UnknownSymbol", at(parent) + "unknown sort '" + parent.text + "'");
      sig.sorts.add(child.text, parent.text);
    } else if (keyword == "pred") {
      const Token& name = p.expect_ident();
      if (sig.predicates.count(name.text))
        throw Error("DuplicateDeclaration", at(name) + "duplicate predicate '" + name.text + "'");
      std::vector<std::string> args;
      if (p.accept("(") && !p.accept(")")) {
        do {
          const Token& s = p.expect_ident();
          if (!sig.sorts.contains(s.text)) throw Error("UnknownSymbol", at(s) + "unknown sort '" + s.text + "'");
          args.push_back(s.text);
        } while (p.accept(","));
        p.expect(")");
      }
      sig.predicates[name.text] = std::move(args);
    } else if (keyword == "const") {
      std::vector<std::string> names;
      do names.push_back(p.expect_ident().text);
      while (p.accept(","));
      p.expect(":");
      const Token& s = p.expect_ident();
      if (!sig.sorts.contains(s.text)) throw Error("UnknownSymbol", at(s) + "unknown sort '" + s.text + "'");
      for (const auto& c : names) {
        if (sig.constants.count(c)) throw Error("DuplicateDeclaration", at(toks[0]) + "duplicate constant '" + c + "'");
        sig.constants[c] = s.text;
      }
    } else if (keyword == "temporal") {
      do sig.temporal_relations.insert(p.expect_ident().text);
      while (p.accept(","));
    } else if (keyword == "agents") {
      sig.self_agent = p.expect_ident().text;
      sig.partner_agent = p.expect_ident().text;
    } else if (keyword == "space" || keyword == "order") {
      std::vector<int> idx;
      for (std::size_t i = 1; i < toks.size() - 1; ++i) {
        if (toks[i].kind == Token::Kind::Number) idx.push_back(std::stoi(toks[i].text));
        else if (toks[i].text != "<" && toks[i].text != ",")
          throw Error("SyntaxError", at(toks[i]) + "unexpected '" + toks[i].text + "'");
      }
      if (idx.empty()) throw Error("SyntaxError", at(toks[0]) + "expected space index");
      if (keyword == "space") {
        for (int i : idx) spec.space_order.declare(i);
      } else {
        if (idx.size() < 2) throw Error("SyntaxError", at(toks[0]) + "expected 'order A < B'");
        for (std::size_t i = 0; i + 1 < idx.size(); ++i) spec.space_order.add_order(idx[i], idx[i + 1]);
      }
      continue;
    } else {
      throw Error("SyntaxError", at(toks[0]) + "unknown declaration '" + keyword + "'");
    }
    p.expect_end();
  }
  sig.validate();
  return spec;
}

// Canonical text: declarations in a fixed order, then axioms in source order.
inline std::string render_spec(const Spec& spec) {
  std::ostringstream out;
  const Signature& sig = spec.signature;
  // Parents must be declared before children.
  std::set<std::string> done{kPropSort};
  auto names = sig.sorts.names();
  while (done.size() < names.size()) {
    for (const auto& s : names) {
      if (done.count(s)) continue;
      auto parent = sig.sorts.parent(s);
      if (!parent) out << "sort " << s << "\n";
      else if (done.count(*parent)) out << "subsort " << s << " " << *parent << "\n";
      else continue;
      done.insert(s);
    }
  }
  for (const auto& [p, args] : sig.predicates) {
    out << "pred " << p;
    if (!args.empty()) {
      out << "(";
      for (std::size_t i = 0; i < args.size(); ++i) out << (i ? ", " : "") << args[i];
      out << ")";
    }
    out << "\n";
  }
  for (const auto& [c, s] : sig.constants) out << "const " << c << ": " << s << "\n";
  for (const auto& t : sig.temporal_relations) out << "temporal " << t << "\n";
  if (!sig.self_agent.empty()) out << "agents " << sig.self_agent << " " << sig.partner_agent << "\n";
  for (int s : spec.space_order.spaces()) out << "space " << s << "\n";
  for (const auto& [weak, strong] : spec.space_order.edges()) out << "order " << weak << " < " << strong << "\n";
  for (const auto& a : spec.axioms) out << "axiom " << a.label << ": " << render(a.formula) << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------
// Static checks
// ---------------------------------------------------------------------------

namespace detail {

struct BeliefOccurrence {
  Term agent;
  Formula content;
};

// Beliefs reachable from `f` without crossing another modal operator.
inline void top_beliefs(const Formula& f, std::vector<BeliefOccurrence>& out) {
  using K = Formula::Kind;
  switch (f.kind) {
    case K::Bel: out.push_back({f.agent, f.operand()}); break;
    case K::And:
    case K::Or:
    case K::Not:
    case K::ForAll:
    case K::Exists:
    case K::Implies:
      for (const auto& k : f.kids) top_beliefs(k, out);
      break;
    default: break;
  }
}

// Content comparison ignores time arguments of nested belief operators.
inline bool same_content(const Formula& a, const Formula& b) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  if (a.kind == Formula::Kind::Bel && !(a.agent == b.agent)) return false;
  if (a.kind == Formula::Kind::Atomic) return a.atom == b.atom;
  if ((a.kind == Formula::Kind::ForAll || a.kind == Formula::Kind::Exists) && (a.var != b.var || a.sort != b.sort))
    return false;
  if ((a.kind == Formula::Kind::Def || a.kind == Formula::Kind::MDef) && a.space != b.space) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!same_content(a.kids[i], b.kids[i])) return false;
  return true;
}

struct RestrictionWalker {
  const std::string& label;
  std::vector<Violation>& out;

  void add(Violation::Kind k, std::string msg) { out.push_back({label, k, std::move(msg)}); }

  void walk(const Formula& f, bool positive, bool in_modal, bool under_universal) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True:
      case K::Atomic: return;
      case K::Not: walk(f.operand(), !positive, in_modal, under_universal); return;
      case K::And:
      case K::Or:
        for (const auto& k : f.kids) walk(k, positive, in_modal, under_universal);
        return;
      case K::Implies: {
        std::vector<BeliefOccurrence> lhs, rhs;
        top_beliefs(f.operand(0), lhs);
        top_beliefs(f.operand(1), rhs);
        for (const auto& a : lhs)
          for (const auto& b : rhs)
            if (!(a.agent == b.agent) && !same_content(a.content, b.content))
              add(Violation::Kind::CrossAgentBeliefImplication,
                  "belief of " + render(a.agent) + " implies a different belief of " + render(b.agent));
        walk(f.operand(0), !positive, in_modal, under_universal);
        walk(f.operand(1), positive, in_modal, under_universal);
        return;
      }
      case K::ForAll:
      case K::Exists: {
        bool universal = (f.kind == K::ForAll) == positive;
        if (!universal)
          add(Violation::Kind::ExistentialUnderUniversal,
              under_universal ? "existential '" + f.var + "' in the scope of a universal"
                              : "existential '" + f.var + "' is not an outermost quantifier");
        walk(f.operand(), positive, in_modal, under_universal || universal);
        return;
      }
      case K::MK:
        if (!positive) add(Violation::Kind::NegatedMutualKnowledge, "negated mutual knowledge is not compilable");
        walk(f.operand(), positive, true, under_universal);
        return;
      case K::Bel: walk(f.operand(), positive, true, under_universal); return;
      case K::Def:
      case K::MDef:
        if (in_modal) add(Violation::Kind::DefInsideModal, "default inside the scope of a belief operator");
        walk(f.operand(), positive, in_modal, under_universal);
        return;
    }
  }
};

}  // namespace detail

inline std::vector<Violation> check_restrictions(const Spec& spec) {
  std::vector<Violation> out;
  for (const auto& a : spec.axioms) {
    detail::RestrictionWalker w{a.label, out};
    w.walk(a.formula, true, false, false);
  }
  return out;
}

namespace detail {

struct SortWalker {
  const Signature& sig;
  const SpaceOrder& spaces;
  const std::string& label;
  std::vector<Violation>& out;

  void add(Violation::Kind k, std::string msg) { out.push_back({label, k, std::move(msg)}); }

  // Returns the term's sort, or nullopt after reporting.
  std::optional<std::string> term_sort(const Term& t) {
    if (t.kind == Term::Kind::Quoted) {
      check_atom(unquote(t));
      return std::string(kPropSort);
    }
    if (t.is_var() && !sig.sorts.contains(t.sort)) {
      add(Violation::Kind::UnknownSymbol, "variable '" + t.name + "' has undeclared sort '" + t.sort + "'");
      return std::nullopt;
    }
    auto s = sig.sort_of(t);
    if (!s) add(Violation::Kind::UnknownSymbol, "unknown constant '" + t.name + "'");
    return s;
  }

  void expect_sort(const Term& t, const std::string& want, const std::string& where) {
    auto s = term_sort(t);
    if (s && !sig.sorts.is_subsort(*s, want))
      add(Violation::Kind::UnsortedVariable,
          where + ": '" + render(t) + "' has sort " + *s + ", expected " + want);
  }

  void check_atom(const Atom& a) {
    if (a.is_prop_var()) {
      expect_sort(a.args.at(0), kPropSort, "proposition variable");
      return;
    }
    auto it = sig.predicates.find(a.pred);
    if (it == sig.predicates.end()) {
      add(Violation::Kind::UnknownSymbol, "unknown predicate '" + a.pred + "'");
      return;
    }
    if (it->second.size() != a.args.size()) {
      add(Violation::Kind::ArityMismatch, a.pred + " expects " + std::to_string(it->second.size()) +
                                              " arguments, got " + std::to_string(a.args.size()));
      return;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) expect_sort(a.args[i], it->second[i], a.pred);
  }

  void walk(const Formula& f) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::Atomic: check_atom(f.atom); return;
      case K::ForAll:
      case K::Exists:
        if (!sig.sorts.contains(f.sort)) add(Violation::Kind::UnknownSymbol, "undeclared sort '" + f.sort + "'");
        break;
      case K::Bel:
        expect_sort(f.agent, kAgentSort, "belief agent");
        expect_sort(f.time, kTimeSort, "belief time");
        break;
      case K::Def:
      case K::MDef:
        if (!spaces.contains(f.space))
          add(Violation::Kind::UnknownSymbol, "undeclared evidential space " + std::to_string(f.space));
        break;
      default: break;
    }
    for (const auto& k : f.kids) walk(k);
  }
};

}  // namespace detail

inline std::vector<Violation> sort_check(const Spec& spec) {
  std::vector<Violation> out;
  for (const auto& a : spec.axioms) {
    detail::SortWalker w{spec.signature, spec.space_order, a.label, out};
    w.walk(a.formula);
  }
  return out;
}

}  // namespace beliefc
