#pragma once

// Compilation of modal clauses into the three-prefix rule base and the
// initial ATMS directives.
//
// Belief depth is tracked as a level: 0 is the modelled agent's own belief
// (obj), 1 its belief about the partner's belief (bel), 2 the residual
// mutual belief standing for every deeper nesting (rmb). Mutual knowledge
// and mutual defaults produce one image per level; explicit belief
// operators move between levels. A named agent (a constant in the source)
// can never reach rmb, since rmb is not about any particular agent.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "beliefc/cnf.hpp"
#include "beliefc/logic.hpp"
#include "beliefc/spec_parser.hpp"

namespace beliefc {

using Universals = std::vector<std::pair<std::string, std::string>>;

struct Rule {
  std::string id;
  Universals universals;
  std::vector<Literal> disjuncts;
  std::optional<int> default_space;

  bool is_default() const { return default_space.has_value(); }
  bool operator==(const Rule&) const = default;
};

struct Premise {
  Literal content;
  bool operator==(const Premise&) const = default;
};
struct JustificationDirective {
  std::vector<Literal> antecedents;
  Literal consequent;
  bool operator==(const JustificationDirective&) const = default;
};
struct DefaultAssumption {
  Literal content;
  int space = 0;
  bool operator==(const DefaultAssumption&) const = default;
};

struct Directive {
  std::string origin;
  std::variant<Premise, JustificationDirective, DefaultAssumption> body;
  bool operator==(const Directive&) const = default;
};

struct CompiledModel {
  std::vector<Rule> rule_base;
  std::vector<Directive> initial_directives;
  SpaceOrder space_order;
  Signature signature;  // time-stripped
  std::vector<std::string> warnings;
  std::vector<std::string> dropped;  // tautological images removed during expansion
};

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

inline std::string render_body(const Rule& r) {
  std::string out;
  if (!r.universals.empty()) {
    out += "forall ";
    for (std::size_t i = 0; i < r.universals.size(); ++i)
      out += (i ? "," : "") + r.universals[i].first + ":" + r.universals[i].second;
    out += " . ";
  }
  if (r.default_space) out += "def[" + std::to_string(*r.default_space) + "] ";
  for (std::size_t i = 0; i < r.disjuncts.size(); ++i) out += (i ? " | " : "") + render(r.disjuncts[i]);
  return out;
}

inline std::string render(const Rule& r) { return r.id + ": " + render_body(r); }

inline std::string render(const Directive& d) {
  std::string out = d.origin + ": ";
  if (auto* p = std::get_if<Premise>(&d.body)) return out + "premise " + render(p->content);
  if (auto* a = std::get_if<DefaultAssumption>(&d.body))
    return out + "assume def[" + std::to_string(a->space) + "] " + render(a->content);
  const auto& j = std::get<JustificationDirective>(d.body);
  out += "justify ";
  for (std::size_t i = 0; i < j.antecedents.size(); ++i) out += (i ? ", " : "") + render(j.antecedents[i]);
  return out + " => " + render(j.consequent);
}

// One rule per line, then directives.
inline std::string dump_rules(const CompiledModel& m) {
  std::string out;
  for (const auto& r : m.rule_base) out += render(r) + "\n";
  for (const auto& d : m.initial_directives) out += render(d) + "\n";
  return out;
}

// Variables renamed by first occurrence; alpha-equivalent rules share a key.
inline std::string canonical_key(const Rule& r) {
  Substitution s;
  Universals us;
  std::vector<Term> vars;
  for (const auto& l : r.disjuncts) collect_vars(l.atom, vars);
  for (const auto& v : vars) {
    std::string n = "_" + std::to_string(s.size());
    s[v.name] = Term::var(n, v.sort);
    us.emplace_back(n, v.sort);
  }
  Rule c = r;
  c.id.clear();
  c.universals = us;
  for (auto& l : c.disjuncts) l = substitute(l, s);
  return render_body(c);
}

// ---------------------------------------------------------------------------
// Time stripping
// ---------------------------------------------------------------------------

namespace detail {

inline bool is_time_sort(const Signature& sig, const std::string& s) {
  return sig.sorts.contains(kTimeSort) && sig.sorts.contains(s) && sig.sorts.is_subsort(s, kTimeSort);
}

inline Term strip_time_term(const Term& t, const Signature& sig);

inline Atom strip_time_atom(const Atom& a, const Signature& sig) {
  if (a.is_prop_var()) return a;
  auto it = sig.predicates.find(a.pred);
  Atom out{a.pred, {}};
  for (std::size_t i = 0; i < a.args.size(); ++i) {
    bool drop = it != sig.predicates.end() && i < it->second.size() && is_time_sort(sig, it->second[i]);
    if (!drop) out.args.push_back(strip_time_term(a.args[i], sig));
  }
  return out;
}

inline Term strip_time_term(const Term& t, const Signature& sig) {
  if (t.kind != Term::Kind::Quoted) return t;
  return quote(strip_time_atom(unquote(t), sig));
}

}  // namespace detail

inline Signature strip_time(const Signature& sig) {
  Signature out = sig;
  out.predicates.clear();
  for (const auto& [p, args] : sig.predicates) {
    if (sig.temporal_relations.count(p)) continue;
    std::vector<std::string> kept;
    for (const auto& s : args)
      if (!detail::is_time_sort(sig, s)) kept.push_back(s);
    out.predicates[p] = kept;
  }
  out.temporal_relations.clear();
  return out;
}

// Returns nullopt when the clause becomes trivially true.
inline std::optional<ModalClause> strip_time(const ModalClause& c, const Signature& sig) {
  ModalClause out;
  out.outer = c.outer;
  for (auto& w : out.outer) w.time.reset();
  for (const auto& d : c.disjuncts) {
    Disjunct nd{d.positive, d.wraps, {}};
    for (auto& w : nd.wraps) w.time.reset();
    bool group_true = false;
    for (const auto& g : d.group) {
      if (!g.atom.is_prop_var() && sig.temporal_relations.count(g.atom.pred)) {
        // A temporal relation is replaced by true.
        if (g.positive) group_true = true;
        continue;
      }
      nd.group.push_back({g.positive, detail::strip_time_atom(g.atom, sig)});
    }
    if (group_true) {
      if (d.positive) return std::nullopt;
      continue;
    }
    if (nd.group.empty()) {
      // ~bel(false) is true; a false group otherwise contributes nothing.
      if (!d.positive) return std::nullopt;
      continue;
    }
    if (std::find(out.disjuncts.begin(), out.disjuncts.end(), nd) == out.disjuncts.end())
      out.disjuncts.push_back(std::move(nd));
  }
  std::vector<Term> used;
  for (const auto& w : out.outer) collect_vars(w.agent, used);
  for (const auto& d : out.disjuncts) {
    for (const auto& w : d.wraps) collect_vars(w.agent, used);
    for (const auto& g : d.group) collect_vars(g.atom, used);
  }
  for (const auto& u : c.universals) {
    if (detail::is_time_sort(sig, u.second)) continue;
    if (std::any_of(used.begin(), used.end(), [&](const Term& t) { return t.name == u.first; }))
      out.universals.push_back(u);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Prefix expansion
// ---------------------------------------------------------------------------

struct ExpansionResult {
  std::vector<Rule> rules;  // ids left empty
  std::vector<std::string> warnings;
  std::vector<std::string> dropped;  // tautological images removed during expansion
};

namespace detail {

struct AgentRef {
  Term term;
  bool named = false;
};

// Level after entering a belief of `agent` from `level`; nullopt when the
// result would have to be a belief about a named agent below rmb depth.
inline std::optional<int> enter_belief(int level, const AgentRef& a, const Signature& sig) {
  bool self = a.term.name == sig.self_agent;
  switch (level) {
    case 0: return self ? 0 : 1;
    case 1:
      if (!self) return 1;
      return a.named ? std::nullopt : std::optional<int>(2);
    default: return a.named ? std::nullopt : std::optional<int>(2);
  }
}

struct Image {
  int level = 0;
  bool mutual = false;
  std::optional<int> space;
};

}  // namespace detail

// `label` is used in diagnostics only.
inline ExpansionResult expand_prefixes(const ModalClause& c, const Signature& sig, const std::string& label = "") {
  using detail::AgentRef;
  ExpansionResult result;
  const std::vector<std::string> agents{sig.partner_agent, sig.self_agent};

  bool has_belief = std::any_of(c.outer.begin(), c.outer.end(), [](const Wrapper& w) { return w.kind == Wrapper::Kind::Bel; }) ||
                    std::any_of(c.disjuncts.begin(), c.disjuncts.end(), [](const Disjunct& d) { return !d.wraps.empty(); });

  Universals agent_vars, rest;
  for (const auto& u : c.universals) {
    if (sig.sorts.contains(u.second) && sig.sorts.is_subsort(u.second, kAgentSort)) agent_vars.push_back(u);
    else rest.push_back(u);
  }
  // Belief-free clauses speak about the partner's actions only.
  const std::vector<std::string> domain = has_belief ? agents : std::vector<std::string>{sig.partner_agent};

  std::vector<Substitution> groundings{{}};
  for (const auto& [v, s] : agent_vars) {
    std::vector<Substitution> next;
    for (const auto& g : groundings)
      for (const auto& a : domain) {
        if (sig.constants.count(a) && !sig.sorts.is_subsort(sig.constants.at(a), s)) continue;
        auto h = g;
        h[v] = Term::constant(a);
        next.push_back(h);
      }
    groundings = std::move(next);
  }

  auto ref = [&](const Term& t, const Substitution& g) {
    return AgentRef{substitute(t, g), !t.is_var()};
  };

  std::set<std::string> seen;
  for (const auto& g : groundings) {
    // The belief chain: outer beliefs then the disjunct wrapper.
    std::vector<AgentRef> chain;
    for (const auto& w : c.outer)
      if (w.kind == Wrapper::Kind::Bel) chain.push_back(ref(w.agent, g));
    bool self_nested = false;
    for (std::size_t i = 0; i + 1 < chain.size(); ++i)
      if (chain[i].term == chain[i + 1].term && !(chain[i].named && chain[i + 1].named)) self_nested = true;
    for (const auto& d : c.disjuncts)
      if (!d.wraps.empty() && !chain.empty()) {
        auto w = ref(d.wraps[0].agent, g);
        if (w.term == chain.back().term && !(w.named && chain.back().named)) self_nested = true;
      }
    if (self_nested) continue;

    std::vector<detail::Image> images{{0, false, std::nullopt}};
    for (const auto& w : c.outer) {
      std::vector<detail::Image> next;
      for (auto im : images) {
        switch (w.kind) {
          case Wrapper::Kind::MK:
          case Wrapper::Kind::MDef:
            for (int l = im.level; l <= 2; ++l) {
              auto n = im;
              n.level = l;
              n.mutual = true;
              if (w.kind == Wrapper::Kind::MDef) n.space = w.space;
              next.push_back(n);
            }
            break;
          case Wrapper::Kind::Def:
            im.space = w.space;
            next.push_back(im);
            break;
          case Wrapper::Kind::Bel: {
            auto l = detail::enter_belief(im.level, ref(w.agent, g), sig);
            if (!l) {
              if (!im.mutual)
                throw Error("UnrepresentableNesting",
                            label + ": belief of named agent " + w.agent.name + " nested beyond one level");
              continue;
            }
            im.level = *l;
            next.push_back(im);
            break;
          }
        }
      }
      images = std::move(next);
    }

    for (const auto& im : images) {
      Rule r;
      r.default_space = im.space;
      bool dropped = false;
      for (const auto& d : c.disjuncts) {
        if (d.wraps.empty()) {
          const auto& s = d.group.at(0);
          r.disjuncts.push_back({s.positive, static_cast<Prefix>(im.level), substitute(s.atom, g)});
          continue;
        }
        auto agent = ref(d.wraps[0].agent, g);
        auto l = detail::enter_belief(im.level, agent, sig);
        if (d.group.size() != 1)
          throw Error("UnrepresentableNesting", label + ": belief in a disjunction inside a wider clause");
        const auto& s = d.group[0];
        bool collapse = im.level == 2 && l && *l == 2;
        bool same_content = std::any_of(c.disjuncts.begin(), c.disjuncts.end(), [&](const Disjunct& o) {
          return o.wraps.empty() && o.group.at(0).atom == s.atom;
        });
        if (!l || (collapse && !same_content)) {
          if (!im.mutual)
            throw Error("UnrepresentableNesting", label + ": distinct-content nesting beyond rmb");
          if (l) result.warnings.push_back(label + ": dropped rmb image with distinct nested content");
          dropped = true;
          break;
        }
        r.disjuncts.push_back({d.positive == s.positive, static_cast<Prefix>(*l), substitute(s.atom, g)});
      }
      if (dropped) continue;

      std::vector<Literal> lits;
      for (const auto& l : r.disjuncts)
        if (std::find(lits.begin(), lits.end(), l) == lits.end()) lits.push_back(l);
      r.disjuncts = std::move(lits);
      bool tautology = false;
      for (const auto& l : r.disjuncts)
        tautology = tautology || std::find(r.disjuncts.begin(), r.disjuncts.end(), l.negated()) != r.disjuncts.end();
      if (tautology) {
        result.dropped.push_back(label + ": " + render_body(r));
        continue;
      }
      if (r.default_space && (r.disjuncts.size() != 1 || !r.disjuncts[0].positive))
        throw Error("MalformedDefault", label + ": default content must be a single positive literal");

      std::vector<Term> vars;
      for (const auto& l : r.disjuncts) collect_vars(l.atom, vars);
      for (const auto& u : rest)
        if (std::any_of(vars.begin(), vars.end(), [&](const Term& t) { return t.name == u.first; }))
          r.universals.push_back(u);
      if (seen.insert(canonical_key(r)).second) result.rules.push_back(std::move(r));
    }
  }
  // Unit images (facts and defaults) are listed from shallowest to deepest.
  bool all_unit = std::all_of(result.rules.begin(), result.rules.end(), [](const Rule& r) { return r.disjuncts.size() == 1; });
  if (all_unit)
    std::stable_sort(result.rules.begin(), result.rules.end(),
                     [](const Rule& a, const Rule& b) { return a.disjuncts[0].prefix < b.disjuncts[0].prefix; });
  return result;
}

// ---------------------------------------------------------------------------
// Whole-spec compilation
// ---------------------------------------------------------------------------

inline CompiledModel compile(const Spec& spec, const std::string& self) {
  std::vector<Violation> violations = sort_check(spec);
  auto restrictions = check_restrictions(spec);
  violations.insert(violations.end(), restrictions.begin(), restrictions.end());
  if (!violations.empty()) {
    std::string msg;
    for (const auto& v : violations) msg += render(v) + "\n";
    throw Error(kind_name(violations.front().kind), msg);
  }

  Signature sig = spec.signature;
  if (!self.empty() && self != sig.self_agent) {
    if (self != sig.partner_agent) throw Error("UnknownSymbol", "'" + self + "' is not one of the declared agents");
    std::swap(sig.self_agent, sig.partner_agent);
  }

  CompiledModel model;
  model.space_order = spec.space_order;
  model.signature = strip_time(sig);

  std::vector<const Axiom*> order;
  for (const auto& a : spec.axioms) order.push_back(&a);
  std::stable_sort(order.begin(), order.end(), [](const Axiom* a, const Axiom* b) { return a->label < b->label; });

  std::set<std::string> seen;
  for (const Axiom* ax : order) {
    std::vector<ModalClause> clauses;
    try {
      clauses = to_modal_cnf(ax->formula);
    } catch (const Error& e) {
      throw Error(e.code(), ax->label + ": " + e.what());
    }
    int index = 0;
    for (const auto& raw : clauses) {
      auto c = strip_time(raw, sig);
      if (!c) continue;
      auto expanded = expand_prefixes(*c, sig, ax->label);
      model.warnings.insert(model.warnings.end(), expanded.warnings.begin(), expanded.warnings.end());
      model.dropped.insert(model.dropped.end(), expanded.dropped.begin(), expanded.dropped.end());
      for (auto& r : expanded.rules) {
        if (!seen.insert(canonical_key(r)).second) continue;
        r.id = ax->label + "." + std::to_string(++index);
        if (!r.universals.empty()) {
          model.rule_base.push_back(std::move(r));
          continue;
        }
        Directive d;
        d.origin = r.id;
        if (r.default_space) {
          d.body = DefaultAssumption{r.disjuncts[0], *r.default_space};
        } else if (r.disjuncts.size() == 1) {
          d.body = Premise{r.disjuncts[0]};
        } else {
          std::vector<Literal> antecedents;
          std::optional<Literal> consequent;
          for (const auto& l : r.disjuncts) {
            if (!l.positive) {
              antecedents.push_back(l.as_positive());
            } else if (consequent) {
              throw Error("MultiPositiveGroundClause", ax->label + ": ground clause " + render_body(r) +
                                                           " has more than one positive literal");
            } else {
              consequent = l;
            }
          }
          if (!consequent)
            throw Error("MultiPositiveGroundClause", ax->label + ": ground clause " + render_body(r) +
                                                         " has no positive literal");
          d.body = JustificationDirective{std::move(antecedents), *consequent};
        }
        model.initial_directives.push_back(std::move(d));
      }
    }
  }
  return model;
}

// Every rule and directive of `m` is free of time symbols.
inline bool is_time_free(const CompiledModel& m, const Signature& original) {
  std::function<bool(const Term&)> term_ok = [&](const Term& t) {
    if (t.is_var() && detail::is_time_sort(original, t.sort)) return false;
    if (t.kind == Term::Kind::Constant && original.constants.count(t.name) &&
        detail::is_time_sort(original, original.constants.at(t.name)))
      return false;
    return std::all_of(t.args.begin(), t.args.end(), term_ok);
  };
  auto lit_ok = [&](const Literal& l) {
    if (original.temporal_relations.count(l.atom.pred)) return false;
    return std::all_of(l.atom.args.begin(), l.atom.args.end(), term_ok);
  };
  for (const auto& r : m.rule_base) {
    for (const auto& u : r.universals)
      if (detail::is_time_sort(original, u.second)) return false;
    if (!std::all_of(r.disjuncts.begin(), r.disjuncts.end(), lit_ok)) return false;
  }
  for (const auto& d : m.initial_directives) {
    bool ok = std::visit(
        [&](const auto& b) {
          using B = std::decay_t<decltype(b)>;
          if constexpr (std::is_same_v<B, JustificationDirective>)
            return lit_ok(b.consequent) && std::all_of(b.antecedents.begin(), b.antecedents.end(), lit_ok);
          else
            return lit_ok(b.content);
        },
        d.body);
    if (!ok) return false;
  }
  return true;
}

}  // namespace beliefc
