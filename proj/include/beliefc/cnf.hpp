#pragma once

// Translation of checked formulas into modal clauses: a conjunction of
// disjunctions where modal wrappers sit either outside the whole clause or
// on a single disjunct, never deeper than one belief level per disjunct.

#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "beliefc/logic.hpp"

namespace beliefc {

struct Wrapper {
  enum class Kind : std::uint8_t { MK, Bel, Def, MDef };
  Kind kind = Kind::MK;
  Term agent;  // Bel
  std::optional<Term> time;  // Bel; absent once time is stripped
  int space = 0;  // Def / MDef

  static Wrapper mk() { return {}; }
  static Wrapper bel(Term agent, std::optional<Term> time) { return {Kind::Bel, std::move(agent), std::move(time), 0}; }
  static Wrapper def(Kind k, int space) { return {k, {}, std::nullopt, space}; }
  bool operator==(const Wrapper&) const = default;
};

struct SignedAtom {
  bool positive = true;
  Atom atom;
  bool operator==(const SignedAtom&) const = default;
};

// A plain disjunct has no wrappers and a one-atom group whose sign is the
// literal's sign. A wrapped disjunct is `[~]bel(A, g1 | g2 | ...)`; the
// outer `positive` flag is the sign of the belief itself.
struct Disjunct {
  bool positive = true;
  std::vector<Wrapper> wraps;
  std::vector<SignedAtom> group;

  static Disjunct plain(bool positive, Atom a) { return {true, {}, {{positive, std::move(a)}}}; }
  bool is_plain() const { return wraps.empty(); }
  bool operator==(const Disjunct&) const = default;
};

struct ModalClause {
  std::vector<Wrapper> outer;  // outermost first
  std::vector<std::pair<std::string, std::string>> universals;
  std::vector<Disjunct> disjuncts;
  bool operator==(const ModalClause&) const = default;
};

namespace detail {

using Matrix = std::vector<std::vector<Disjunct>>;

inline Matrix cross(const Matrix& a, const Matrix& b) {
  Matrix out;
  for (const auto& x : a)
    for (const auto& y : b) {
      auto c = x;
      c.insert(c.end(), y.begin(), y.end());
      out.push_back(std::move(c));
    }
  return out;
}

class CnfBuilder {
 public:
  std::vector<ModalClause> run(const Formula& f) {
    top(f, {});
    return std::move(out_);
  }

 private:
  // Binds a universal, renaming it when the name is already taken.
  Formula open_universal(const Formula& f) {
    for (const auto& [v, s] : universals_) {
      (void)s;
      if (v == f.var) {
        std::string fresh = fresh_name(f.var);
        universals_.emplace_back(fresh, f.sort);
        return substitute(f.operand(), {{f.var, Term::var(fresh, f.sort)}});
      }
    }
    universals_.emplace_back(f.var, f.sort);
    return f.operand();
  }

  void top(const Formula& f, std::vector<Wrapper> outer) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True: return;
      case K::ForAll: top(open_universal(f), std::move(outer)); return;
      case K::And:
        top(f.operand(0), outer);
        top(f.operand(1), std::move(outer));
        return;
      case K::MK: outer.push_back(Wrapper::mk()); break;
      case K::Bel: outer.push_back(Wrapper::bel(f.agent, f.time)); break;
      case K::Def:
      case K::MDef:
        outer.push_back(Wrapper::def(f.kind == K::Def ? Wrapper::Kind::Def : Wrapper::Kind::MDef, f.space));
        break;
      default:
        emit(matrix(f, true), outer);
        return;
    }
    top(f.operand(), std::move(outer));
  }

  Matrix matrix(const Formula& f, bool positive) {
    using K = Formula::Kind;
    switch (f.kind) {
      case K::True: return positive ? Matrix{} : Matrix{{}};
      case K::Atomic: return {{Disjunct::plain(positive, f.atom)}};
      case K::Not: return matrix(f.operand(), !positive);
      case K::And:
      case K::Or: {
        auto a = matrix(f.operand(0), positive);
        auto b = matrix(f.operand(1), positive);
        if ((f.kind == K::And) == positive) {
          a.insert(a.end(), b.begin(), b.end());
          return a;
        }
        return cross(a, b);
      }
      case K::Implies: {
        auto a = matrix(f.operand(0), !positive);
        auto b = matrix(f.operand(1), positive);
        if (!positive) {
          a.insert(a.end(), b.begin(), b.end());
          return a;
        }
        return cross(a, b);
      }
      case K::ForAll:
      case K::Exists:
        if ((f.kind == K::ForAll) != positive)
          throw Error("ExistentialUnderUniversal", "existential quantifier '" + f.var + "' cannot be clausified");
        return matrix(open_universal(f), positive);
      case K::Bel: {
        auto inner = matrix(f.operand(), true);
        for (const auto& c : inner)
          for (const auto& d : c)
            if (!d.is_plain())
              throw Error("NestingDepthExceeded", "belief nested inside a believed disjunction: " + render(f));
        auto group = [](const std::vector<Disjunct>& c) {
          std::vector<SignedAtom> g;
          for (const auto& d : c) g.push_back(d.group.at(0));
          return g;
        };
        Wrapper w = Wrapper::bel(f.agent, f.time);
        if (positive) {
          Matrix out;
          for (const auto& c : inner) out.push_back({Disjunct{true, {w}, group(c)}});
          return out;
        }
        std::vector<Disjunct> clause;
        for (const auto& c : inner) clause.push_back(Disjunct{false, {w}, group(c)});
        return {clause};
      }
      case K::MK:
      case K::Def:
      case K::MDef:
        throw Error("NestingDepthExceeded", "modal operator inside a disjunction: " + render(f));
    }
    return {};
  }

  static bool complementary(const Disjunct& a, const Disjunct& b) {
    return a.is_plain() && b.is_plain() && a.group[0].atom == b.group[0].atom &&
           a.group[0].positive != b.group[0].positive;
  }

  void emit(const Matrix& m, const std::vector<Wrapper>& outer) {
    for (const auto& raw : m) {
      std::vector<Disjunct> ds;
      for (const auto& d : raw)
        if (std::find(ds.begin(), ds.end(), d) == ds.end()) ds.push_back(d);
      bool tautology = false;
      for (std::size_t i = 0; i < ds.size() && !tautology; ++i)
        for (std::size_t j = i + 1; j < ds.size() && !tautology; ++j) tautology = complementary(ds[i], ds[j]);
      if (tautology) continue;
      ModalClause c;
      c.outer = outer;
      c.disjuncts = std::move(ds);
      c.universals = used_universals(c);
      if (std::find(out_.begin(), out_.end(), c) == out_.end()) out_.push_back(std::move(c));
    }
  }

  std::vector<std::pair<std::string, std::string>> used_universals(const ModalClause& c) const {
    std::vector<Term> vars;
    for (const auto& w : c.outer) {
      collect_vars(w.agent, vars);
      if (w.time) collect_vars(*w.time, vars);
    }
    for (const auto& d : c.disjuncts) {
      for (const auto& w : d.wraps) {
        collect_vars(w.agent, vars);
        if (w.time) collect_vars(*w.time, vars);
      }
      for (const auto& g : d.group) collect_vars(g.atom, vars);
    }
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& u : universals_)
      if (std::any_of(vars.begin(), vars.end(), [&](const Term& t) { return t.name == u.first; })) out.push_back(u);
    return out;
  }

  std::vector<std::pair<std::string, std::string>> universals_;
  std::vector<ModalClause> out_;
};

}  // namespace detail

inline std::vector<ModalClause> to_modal_cnf(const Formula& f) { return detail::CnfBuilder().run(f); }

// True iff every disjunct carries at most one wrapper and that wrapper is a
// belief.
inline bool validate_nesting(const std::vector<ModalClause>& clauses) {
  for (const auto& c : clauses)
    for (const auto& d : c.disjuncts) {
      if (d.wraps.size() > 1) return false;
      for (const auto& w : d.wraps)
        if (w.kind != Wrapper::Kind::Bel) return false;
    }
  return true;
}

// Folds a clause back into a formula. Clauses with stripped time render a
// placeholder constant `now` in belief time positions.
inline Formula to_formula(const ModalClause& c) {
  auto wrap = [](const Wrapper& w, Formula body) {
    switch (w.kind) {
      case Wrapper::Kind::MK: return Formula::mk(std::move(body));
      case Wrapper::Kind::Bel: return Formula::bel(w.agent, w.time.value_or(Term::constant("now")), std::move(body));
      case Wrapper::Kind::Def: return Formula::def(Formula::Kind::Def, w.space, std::move(body));
      case Wrapper::Kind::MDef: return Formula::def(Formula::Kind::MDef, w.space, std::move(body));
    }
    return body;
  };
  auto lit = [](const SignedAtom& s) {
    Formula a = Formula::atomic(s.atom);
    return s.positive ? a : Formula::negate(std::move(a));
  };
  auto disj = [](std::vector<Formula> parts) {
    if (parts.empty()) return Formula::negate(Formula::truth());
    Formula f = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i) f = Formula::binary(Formula::Kind::Or, f, parts[i]);
    return f;
  };
  std::vector<Formula> parts;
  for (const auto& d : c.disjuncts) {
    std::vector<Formula> g;
    for (const auto& s : d.group) g.push_back(lit(s));
    Formula body = disj(std::move(g));
    for (auto it = d.wraps.rbegin(); it != d.wraps.rend(); ++it) body = wrap(*it, std::move(body));
    parts.push_back(d.positive ? body : Formula::negate(std::move(body)));
  }
  Formula f = disj(std::move(parts));
  for (auto it = c.outer.rbegin(); it != c.outer.rend(); ++it) f = wrap(*it, std::move(f));
  for (auto it = c.universals.rbegin(); it != c.universals.rend(); ++it)
    f = Formula::quantified(Formula::Kind::ForAll, it->first, it->second, std::move(f));
  return f;
}

inline std::string render(const ModalClause& c) { return render(to_formula(c)); }

}  // namespace beliefc
