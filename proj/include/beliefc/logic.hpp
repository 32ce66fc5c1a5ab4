#pragma once

// Sorts, signatures, terms, formulas and sorted unification shared by every
// stage of the belief-model compiler.

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace beliefc {

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& what)
      : std::runtime_error(what), code_(std::move(code)) {}
  const std::string& code() const noexcept { return code_; }

 private:
  std::string code_;
};

inline constexpr const char* kPropSort = "prop";
inline constexpr const char* kAgentSort = "agent";
inline constexpr const char* kTimeSort = "time";

// ---------------------------------------------------------------------------
// Sort forest
// ---------------------------------------------------------------------------

class SortForest {
 public:
  void add(const std::string& name, std::optional<std::string> parent = std::nullopt) {
    if (parents_.count(name)) throw Error("DuplicateDeclaration", "sort '" + name + "' declared twice");
    if (parent && !parents_.count(*parent))
      throw Error("UnknownSymbol", "unknown supersort '" + *parent + "'");
    parents_[name] = std::move(parent);
  }

  bool contains(const std::string& name) const { return parents_.count(name) != 0; }

  std::optional<std::string> parent(const std::string& name) const {
    auto it = parents_.find(name);
    if (it == parents_.end()) throw Error("UnknownSymbol", "undeclared sort '" + name + "'");
    return it->second;
  }

  // Reflexive-transitive closure of the parent relation.
  bool is_subsort(const std::string& lower, const std::string& upper) const {
    if (!contains(upper)) throw Error("UnknownSymbol", "undeclared sort '" + upper + "'");
    std::optional<std::string> cur = lower;
    while (cur) {
      if (*cur == upper) return true;
      cur = parent(*cur);
    }
    return false;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    for (const auto& [k, v] : parents_) out.push_back(k);
    return out;
  }

  bool operator==(const SortForest&) const = default;

 private:
  std::map<std::string, std::optional<std::string>> parents_;
};

// ---------------------------------------------------------------------------
// Terms and atoms
// ---------------------------------------------------------------------------

// A quoted term stores its atom inline: `name` is the predicate, `args` the
// arguments. Quoted terms always have sort prop.
struct Term {
  enum class Kind : std::uint8_t { Variable, Constant, Quoted };
  Kind kind = Kind::Constant;
  std::string name;
  std::string sort;  // variables only
  std::vector<Term> args;

  static Term var(std::string n, std::string s) { return {Kind::Variable, std::move(n), std::move(s), {}}; }
  static Term constant(std::string n) { return {Kind::Constant, std::move(n), {}, {}}; }

  bool is_var() const { return kind == Kind::Variable; }
  bool is_ground() const {
    if (is_var()) return false;
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
  }
  bool operator==(const Term&) const = default;
  auto operator<=>(const Term& o) const {
    if (auto c = kind <=> o.kind; c != 0) return c;
    if (auto c = name <=> o.name; c != 0) return c;
    if (auto c = sort <=> o.sort; c != 0) return c;
    return std::lexicographical_compare_three_way(args.begin(), args.end(), o.args.begin(), o.args.end());
  }
};

// An atom with an empty predicate is a proposition variable standing in
// formula position (e.g. the trailing W in `say(X, assert, W) => W`);
// args[0] is then the prop-sorted variable.
struct Atom {
  std::string pred;
  std::vector<Term> args;

  static Atom prop_var(const Term& v) { return {"", {v}}; }
  bool is_prop_var() const { return pred.empty(); }
  bool is_ground() const {
    return std::all_of(args.begin(), args.end(), [](const Term& t) { return t.is_ground(); });
  }
  bool operator==(const Atom&) const = default;
  auto operator<=>(const Atom& o) const {
    if (auto c = pred <=> o.pred; c != 0) return c;
    return std::lexicographical_compare_three_way(args.begin(), args.end(), o.args.begin(), o.args.end());
  }
};

inline Term quote(const Atom& a) { return {Term::Kind::Quoted, a.pred, {}, a.args}; }
inline Atom unquote(const Term& t) { return {t.name, t.args}; }

// ---------------------------------------------------------------------------
// Signature
// ---------------------------------------------------------------------------

struct Signature {
  SortForest sorts;
  std::map<std::string, std::vector<std::string>> predicates;
  std::map<std::string, std::string> constants;
  std::set<std::string> temporal_relations;
  std::string self_agent;
  std::string partner_agent;

  bool is_subsort(const std::string& s1, const std::string& s2) const {
    if (!sorts.contains(s1)) throw Error("UnknownSymbol", "undeclared sort '" + s1 + "'");
    return sorts.is_subsort(s1, s2);
  }

  std::optional<std::string> sort_of(const Term& t) const {
    switch (t.kind) {
      case Term::Kind::Variable: return t.sort;
      case Term::Kind::Quoted: return std::string(kPropSort);
      case Term::Kind::Constant: {
        auto it = constants.find(t.name);
        if (it == constants.end()) return std::nullopt;
        return it->second;
      }
    }
    return std::nullopt;
  }

  // Throws on the first broken invariant.
  void validate() const {
    for (const auto& [p, args] : predicates)
      for (const auto& s : args)
        if (!sorts.contains(s)) throw Error("UnknownSymbol", "predicate '" + p + "' uses undeclared sort '" + s + "'");
    for (const auto& [c, s] : constants)
      if (!sorts.contains(s)) throw Error("UnknownSymbol", "constant '" + c + "' has undeclared sort '" + s + "'");
    for (const auto& t : temporal_relations) {
      auto it = predicates.find(t);
      if (it == predicates.end()) throw Error("UnknownSymbol", "temporal relation '" + t + "' is not a predicate");
      for (const auto& s : it->second)
        if (s != kTimeSort) throw Error("UnsortedVariable", "temporal relation '" + t + "' has a non-time argument");
    }
    if (!self_agent.empty() || !partner_agent.empty()) {
      if (self_agent == partner_agent) throw Error("UnsortedVariable", "self and partner agents must differ");
      for (const auto& a : {self_agent, partner_agent}) {
        auto it = constants.find(a);
        if (it == constants.end() || it->second != kAgentSort)
          throw Error("UnsortedVariable", "'" + a + "' is not a constant of sort agent");
      }
    }
  }

  bool operator==(const Signature&) const = default;
};

// ---------------------------------------------------------------------------
// Formulas
// ---------------------------------------------------------------------------

struct Formula {
  enum class Kind : std::uint8_t { Atomic, Not, And, Or, Implies, ForAll, Exists, MK, Bel, MDef, Def, True };
  Kind kind = Kind::True;
  Atom atom;                  // Atomic
  std::vector<Formula> kids;  // operands
  std::string var, sort;      // ForAll / Exists
  Term agent, time;           // Bel
  int space = 0;              // Def / MDef

  static Formula atomic(Atom a) { Formula f; f.kind = Kind::Atomic; f.atom = std::move(a); return f; }
  static Formula truth() { return Formula{}; }
  static Formula unary(Kind k, Formula a) { Formula f; f.kind = k; f.kids = {std::move(a)}; return f; }
  static Formula negate(Formula a) { return unary(Kind::Not, std::move(a)); }
  static Formula mk(Formula a) { return unary(Kind::MK, std::move(a)); }
  static Formula binary(Kind k, Formula a, Formula b) {
    Formula f; f.kind = k; f.kids = {std::move(a), std::move(b)}; return f;
  }
  static Formula quantified(Kind k, std::string v, std::string s, Formula body) {
    Formula f; f.kind = k; f.var = std::move(v); f.sort = std::move(s); f.kids = {std::move(body)}; return f;
  }
  static Formula bel(Term agent, Term time, Formula body) {
    Formula f; f.kind = Kind::Bel; f.agent = std::move(agent); f.time = std::move(time); f.kids = {std::move(body)};
    return f;
  }
  static Formula def(Kind k, int space, Formula body) {
    Formula f; f.kind = k; f.space = space; f.kids = {std::move(body)}; return f;
  }

  const Formula& operand(std::size_t i = 0) const { return kids.at(i); }
  bool operator==(const Formula&) const = default;
};

// ---------------------------------------------------------------------------
// Compiled literals
// ---------------------------------------------------------------------------

// Belief depth in the compiled model. The order is nesting depth only; it
// never encodes truth strength.
enum class Prefix : std::uint8_t { Obj = 0, Bel = 1, Rmb = 2 };

inline const char* prefix_name(Prefix p) {
  switch (p) {
    case Prefix::Obj: return "obj";
    case Prefix::Bel: return "bel";
    case Prefix::Rmb: return "rmb";
  }
  return "?";
}

struct Literal {
  bool positive = true;
  Prefix prefix = Prefix::Obj;
  Atom atom;

  Literal negated() const { return {!positive, prefix, atom}; }
  Literal as_positive() const { return {true, prefix, atom}; }
  bool is_ground() const { return atom.is_ground(); }
  bool operator==(const Literal&) const = default;
  auto operator<=>(const Literal&) const = default;
};

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string render(const Atom& a);

inline std::string render(const Term& t) {
  switch (t.kind) {
    case Term::Kind::Variable:
    case Term::Kind::Constant: return t.name;
    case Term::Kind::Quoted: return render(unquote(t));
  }
  return "?";
}

inline std::string render(const Atom& a) {
  if (a.is_prop_var()) return render(a.args.at(0));
  std::string out = a.pred;
  if (a.args.empty()) return out;
  out += '(';
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    if (i) out += ", ";
    out += render(a.args[i]);
  }
  return out + ')';
}

inline std::string render(const Literal& l) {
  return std::string(l.positive ? "" : "~") + prefix_name(l.prefix) + "(" + render(l.atom) + ")";
}

namespace detail {

inline int precedence(Formula::Kind k) {
  switch (k) {
    case Formula::Kind::Implies: return 1;
    case Formula::Kind::Or: return 2;
    case Formula::Kind::And: return 3;
    case Formula::Kind::ForAll:
    case Formula::Kind::Exists: return 0;
    default: return 4;
  }
}

inline std::string render_formula(const Formula& f, int context);

inline std::string render_quantifiers(const Formula& f) {
  const char* word = f.kind == Formula::Kind::ForAll ? "forall " : "exists ";
  std::string out = word;
  const Formula* cur = &f;
  bool first = true;
  while (cur->kind == f.kind) {
    if (!first) out += ", ";
    out += cur->var + ":" + cur->sort;
    first = false;
    cur = &cur->operand();
  }
  return out + " . " + render_formula(*cur, 0);
}

inline std::string render_formula(const Formula& f, int context) {
  using K = Formula::Kind;
  std::string s;
  switch (f.kind) {
    case K::True: s = "true"; break;
    case K::Atomic: s = render(f.atom); break;
    case K::Not: s = "~" + render_formula(f.operand(), 4); break;
    case K::And: s = render_formula(f.operand(0), 3) + " & " + render_formula(f.operand(1), 4); break;
    case K::Or: s = render_formula(f.operand(0), 2) + " | " + render_formula(f.operand(1), 3); break;
    case K::Implies: s = render_formula(f.operand(0), 2) + " => " + render_formula(f.operand(1), 1); break;
    case K::ForAll:
    case K::Exists: s = render_quantifiers(f); break;
    case K::MK: s = "mk(" + render_formula(f.operand(), 0) + ")"; break;
    case K::Bel:
      s = "bel(" + render(f.agent) + ", " + render(f.time) + ", " + render_formula(f.operand(), 0) + ")";
      break;
    case K::Def:
    case K::MDef:
      s = std::string(f.kind == K::Def ? "def[" : "mdef[") + std::to_string(f.space) + "](" +
          render_formula(f.operand(), 0) + ")";
      break;
  }
  if (precedence(f.kind) < context) return "(" + s + ")";
  return s;
}

}  // namespace detail

inline std::string render(const Formula& f) { return detail::render_formula(f, 0); }

// ---------------------------------------------------------------------------
// Substitution and sorted unification
// ---------------------------------------------------------------------------

using Substitution = std::map<std::string, Term>;

inline std::string render(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [k, v] : s) {
    if (!first) out += ", ";
    out += k + "->" + render(v);
    first = false;
  }
  return out + "}";
}

inline Term substitute(const Term& t, const Substitution& s) {
  if (t.is_var()) {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  Term out = t;
  for (auto& a : out.args) a = substitute(a, s);
  return out;
}

inline Atom substitute(const Atom& a, const Substitution& s) {
  if (a.is_prop_var()) {
    Term bound = substitute(a.args.at(0), s);
    if (bound.kind == Term::Kind::Quoted) return unquote(bound);
    return Atom::prop_var(bound);
  }
  Atom out = a;
  for (auto& t : out.args) t = substitute(t, s);
  return out;
}

inline Literal substitute(const Literal& l, const Substitution& s) { return {l.positive, l.prefix, substitute(l.atom, s)}; }

namespace detail {

inline bool occurs(const std::string& v, const Term& t) {
  if (t.is_var()) return t.name == v;
  return std::any_of(t.args.begin(), t.args.end(), [&](const Term& a) { return occurs(v, a); });
}

inline Term walk(Term t, const Substitution& s) {
  while (t.is_var()) {
    auto it = s.find(t.name);
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

inline Term resolve(const Term& t, const Substitution& s) {
  Term w = walk(t, s);
  if (w.is_var()) return w;
  for (auto& a : w.args) a = resolve(a, s);
  return w;
}

inline bool bind_var(const Term& var, const Term& value, Substitution& s, const Signature& sig) {
  Term v = resolve(value, s);
  if (occurs(var.name, v)) return false;
  auto vs = sig.sort_of(v);
  if (!vs || !sig.sorts.contains(*vs) || !sig.sorts.is_subsort(*vs, var.sort)) return false;
  s[var.name] = v;
  return true;
}

inline bool unify_terms(const Term& a0, const Term& b0, Substitution& s, const Signature& sig) {
  Term a = walk(a0, s), b = walk(b0, s);
  if (a.is_var() && b.is_var()) {
    if (a.name == b.name) return true;
    // Bind the variable of the larger sort to the one of the smaller sort.
    if (sig.sorts.is_subsort(b.sort, a.sort)) return bind_var(a, b, s, sig);
    if (sig.sorts.is_subsort(a.sort, b.sort)) return bind_var(b, a, s, sig);
    return false;
  }
  if (a.is_var()) return bind_var(a, b, s, sig);
  if (b.is_var()) return bind_var(b, a, s, sig);
  if (a.kind != b.kind || a.name != b.name || a.args.size() != b.args.size()) return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!unify_terms(a.args[i], b.args[i], s, sig)) return false;
  return true;
}

}  // namespace detail

inline std::optional<Substitution> unify(const Atom& a, const Atom& b, const Signature& sig,
                                         Substitution seed = {}) {
  auto as_term = [](const Atom& x) { return x.is_prop_var() ? x.args.at(0) : quote(x); };
  Substitution s = std::move(seed);
  if (!detail::unify_terms(as_term(a), as_term(b), s, sig)) return std::nullopt;
  Substitution out;
  for (const auto& [k, v] : s) out[k] = detail::resolve(v, s);
  return out;
}

// Prefixes and signs must match exactly.
inline std::optional<Substitution> unify(const Literal& l1, const Literal& l2, const Signature& sig) {
  if (l1.positive != l2.positive || l1.prefix != l2.prefix) return std::nullopt;
  return unify(l1.atom, l2.atom, sig);
}

// Fresh variable names for capture-avoiding substitution.
inline std::string fresh_name(const std::string& base) {
  static std::atomic<std::uint64_t> counter{0};
  auto cut = base.find('#');
  return base.substr(0, cut) + "#" + std::to_string(++counter);
}

inline void collect_vars(const Term& t, std::vector<Term>& out) {
  if (t.is_var()) {
    if (std::find(out.begin(), out.end(), t) == out.end()) out.push_back(t);
    return;
  }
  for (const auto& a : t.args) collect_vars(a, out);
}

inline void collect_vars(const Atom& a, std::vector<Term>& out) {
  for (const auto& t : a.args) collect_vars(t, out);
}

// Capture-avoiding: occurrences bound by an inner quantifier are left alone.
inline Formula substitute(const Formula& f, const Substitution& s) {
  using K = Formula::Kind;
  Formula out = f;
  switch (f.kind) {
    case K::True: break;
    case K::Atomic: out.atom = substitute(f.atom, s); break;
    case K::ForAll:
    case K::Exists: {
      Substitution inner = s;
      inner.erase(f.var);
      bool captures = false;
      for (const auto& [k, v] : inner) {
        (void)k;
        std::vector<Term> vs;
        collect_vars(v, vs);
        for (const auto& t : vs) captures = captures || t.name == f.var;
      }
      if (captures) {
        out.var = fresh_name(f.var);
        inner[f.var] = Term::var(out.var, f.sort);
      }
      out.kids[0] = substitute(f.operand(), inner);
      break;
    }
    case K::Bel:
      out.agent = substitute(f.agent, s);
      out.time = substitute(f.time, s);
      out.kids[0] = substitute(f.operand(), s);
      break;
    default:
      for (auto& k : out.kids) k = substitute(k, s);
  }
  return out;
}

// Sorted substitution application on formulas, as used by callers that need
// the sort check.
inline Formula substitute_checked(const Formula& f, const Substitution& s, const Signature& sig) {
  for (const auto& [name, term] : s) {
    (void)name;
    if (!sig.sort_of(term)) throw Error("SortViolation", "term '" + render(term) + "' has no sort");
  }
  return substitute(f, s);
}

// Free variables in order of first occurrence.
inline std::vector<Term> free_vars(const Formula& f) {
  using K = Formula::Kind;
  std::vector<Term> out;
  switch (f.kind) {
    case K::True: break;
    case K::Atomic: collect_vars(f.atom, out); break;
    case K::ForAll:
    case K::Exists:
      for (const auto& v : free_vars(f.operand()))
        if (v.name != f.var && std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
      break;
    case K::Bel:
      collect_vars(f.agent, out);
      collect_vars(f.time, out);
      [[fallthrough]];
    default:
      for (const auto& k : f.kids)
        for (const auto& v : free_vars(k))
          if (std::find(out.begin(), out.end(), v) == out.end()) out.push_back(v);
  }
  return out;
}

}  // namespace beliefc
