#pragma once

// Rule-base driver for the ATMS: forward instantiation of rules against new
// nodes, bounded backward support-seeking for demanded nodes, default
// assumption generation and complementary-node resolution.

#include <deque>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "beliefc/atms.hpp"
#include "beliefc/compiler.hpp"
#include "beliefc/logic.hpp"

namespace beliefc {

struct EngineStats {
  int firings = 0;
  int justifications = 0;
  int assumptions = 0;
  int premises = 0;
  int resolutions = 0;
  bool partial = false;
  std::vector<std::string> errors;

  bool operator==(const EngineStats&) const = default;
};

inline constexpr int kDefaultBackwardDepth = 8;
inline constexpr int kDefaultFiringBudget = 100000;

class Engine {
 public:
  Engine(const CompiledModel& model, Atms& atms) : sig_(model.signature), atms_(atms) {
    for (const auto& r : model.rule_base) rules_.push_back({r, r.id, {}, forward_only(r)});
    for (const auto& d : model.initial_directives) load(d);
  }

  // Lift rules (same atom at two depths) and rules concluding a bare
  // proposition variable are never used for goal regression.
  static bool forward_only(const Rule& r) {
    for (const auto& head : r.disjuncts) {
      if (!head.positive) continue;
      if (head.atom.is_prop_var()) return true;
      for (const auto& body : r.disjuncts)
        if (!body.positive && body.atom == head.atom && body.prefix != head.prefix) return true;
    }
    return false;
  }

  // Schedules a node for backward support-seeking (used by queries).
  void demand(NodeId id) { agenda_.push_back({id, Phase::Backward, backward_depth_}); }

  void note_new_node(NodeId id) {
    agenda_.push_back({id, Phase::Forward, backward_depth_});
    agenda_.push_back({id, Phase::Backward, backward_depth_});
  }

  NodeId intern(const Literal& l) {
    bool fresh = !atms_.find(l);
    NodeId id = atms_.intern(l);
    if (fresh) note_new_node(id);
    return id;
  }

  NodeId add_premise(const Literal& l) {
    bool fresh = !atms_.find(l);
    NodeId id = atms_.add_premise(l);
    if (fresh) agenda_.push_back({id, Phase::Forward, backward_depth_});
    return id;
  }

  NodeId add_assumption(const Literal& l, Assumption a) {
    bool fresh = !atms_.find(l);
    auto [id, aid] = atms_.add_assumption(l, a);
    (void)aid;
    if (fresh) agenda_.push_back({id, Phase::Forward, backward_depth_});
    return id;
  }

  EngineStats run_to_fixpoint(int budget = kDefaultFiringBudget) {
    EngineStats before = stats_;
    while (!agenda_.empty()) {
      if (stats_.firings - before.firings >= budget) {
        stats_.partial = true;
        trace("budget exhausted");
        break;
      }
      Task t = agenda_.front();
      agenda_.pop_front();
      if (t.phase == Phase::Forward) forward_step(t.node);
      else backward_step(t.node, t.depth);
    }
    resolve_all();
    EngineStats delta;
    delta.firings = stats_.firings - before.firings;
    delta.justifications = stats_.justifications - before.justifications;
    delta.assumptions = stats_.assumptions - before.assumptions;
    delta.premises = stats_.premises - before.premises;
    delta.resolutions = stats_.resolutions - before.resolutions;
    delta.partial = stats_.partial;
    delta.errors.assign(stats_.errors.begin() + static_cast<std::ptrdiff_t>(before.errors.size()), stats_.errors.end());
    stats_.partial = false;
    return delta;
  }

  // Matches one node against every rule negative disjunct.
  void forward_step(NodeId id) {
    // Copy: rules_ can grow while we iterate.
    for (std::size_t r = 0; r < rules_.size(); ++r) match_forward(r, id);
  }

  void backward_step(NodeId id, int depth) {
    if (!backward_done_.insert(id).second) return;
    const Literal content = atms_.node(id).content;
    for (const auto& e : atms_.node(id).label)
      if (e.empty()) return;
    if (depth <= 0) {
      trace("depth budget exhausted at " + render(content));
      return;
    }
    for (std::size_t r = 0; r < rules_.size(); ++r) {
      if (rules_[r].forward_only) continue;
      const Rule rule = rules_[r].rule;
      for (const auto& head : rule.disjuncts) {
        if (!head.positive) continue;
        auto sigma = unify(head, content, sig_);
        if (!sigma) continue;
        std::vector<Literal> ground;
        bool determined = true;
        for (const auto& l : rule.disjuncts) {
          ground.push_back(substitute(l, *sigma));
          determined = determined && ground.back().is_ground();
        }
        if (!determined) continue;
        if (!fingerprints_.insert(fingerprint(rules_[r], *sigma)).second) continue;
        Substitution full = compose(rules_[r].bound, *sigma);
        if (rule.default_space) {
          ++stats_.firings;
          ++stats_.assumptions;
          auto [node, aid] = atms_.add_assumption(content, Assumption::make_default(*rule.default_space));
          (void)node;
          trace(rules_[r].base_id + " " + render(full) + " |- assume " + atms_.assumptions()[aid].name() + " " +
                render(content));
          continue;
        }
        if (ground.size() == 1) {
          ++stats_.firings;
          ++stats_.premises;
          atms_.add_premise(content);
          trace(rules_[r].base_id + " " + render(full) + " |- premise " + render(content));
          continue;
        }
        std::vector<NodeId> antecedents;
        for (const auto& l : ground) {
          if (l.positive) continue;
          Literal a = l.negated();
          bool fresh = !atms_.find(a);
          NodeId n = atms_.intern(a);
          if (fresh) {
            agenda_.push_back({n, Phase::Forward, depth - 1});
            agenda_.push_back({n, Phase::Backward, depth - 1});
          }
          antecedents.push_back(n);
        }
        justify(rules_[r].base_id, full, std::move(antecedents), id);
      }
    }
  }

  const EngineStats& totals() const { return stats_; }
  const std::vector<std::string>& trace_log() const { return trace_; }
  std::size_t rule_count() const { return rules_.size(); }
  const std::vector<ResolutionOutcome>& last_resolutions() const { return last_resolutions_; }
  void set_backward_depth(int d) { backward_depth_ = d; }

 private:
  enum class Phase { Forward, Backward };
  struct Task {
    NodeId node;
    Phase phase;
    int depth;
  };
  struct ActiveRule {
    Rule rule;
    std::string base_id;
    Substitution bound;  // bindings already applied to `rule`, keyed by base variables
    bool forward_only = false;
  };

  static Substitution compose(const Substitution& bound, const Substitution& more) {
    Substitution out;
    for (const auto& [k, v] : bound) out[k] = substitute(v, more);
    for (const auto& [k, v] : more)
      if (!out.count(k)) out[k] = v;
    return out;
  }

  std::string fingerprint(const ActiveRule& r, const Substitution& sigma) const {
    return r.base_id + render(compose(r.bound, sigma));
  }

  void trace(std::string line) { trace_.push_back(std::move(line)); }

  void load(const Directive& d) {
    if (auto* p = std::get_if<Premise>(&d.body)) {
      add_premise(p->content);
    } else if (auto* a = std::get_if<DefaultAssumption>(&d.body)) {
      add_assumption(a->content, Assumption::make_default(a->space));
    } else {
      const auto& j = std::get<JustificationDirective>(d.body);
      std::vector<NodeId> ante;
      for (const auto& l : j.antecedents) ante.push_back(intern(l));
      NodeId c = intern(j.consequent);
      atms_.add_justification(std::move(ante), c, d.origin);
    }
  }

  void justify(const std::string& origin, const Substitution& sigma, std::vector<NodeId> antecedents, NodeId consequent) {
    ++stats_.firings;
    ++stats_.justifications;
    std::string line = origin + " " + render(sigma) + " |- " + render(atms_.node(consequent).content);
    atms_.add_justification(std::move(antecedents), consequent, origin);
    trace(std::move(line));
  }

  void match_forward(std::size_t r, NodeId id) {
    const Literal content = atms_.node(id).content;
    if (!content.positive) return;
    const Rule rule = rules_[r].rule;
    for (const auto& d : rule.disjuncts) {
      if (d.positive) continue;
      auto sigma = unify(d.negated(), content, sig_);
      if (!sigma) continue;
      if (!fingerprints_.insert(fingerprint(rules_[r], *sigma)).second) continue;
      Rule inst = rule;
      for (auto& l : inst.disjuncts) l = substitute(l, *sigma);
      Substitution full = compose(rules_[r].bound, *sigma);
      bool ground = std::all_of(inst.disjuncts.begin(), inst.disjuncts.end(), [](const Literal& l) { return l.is_ground(); });
      if (!ground) {
        Universals remaining;
        std::vector<Term> vars;
        for (const auto& l : inst.disjuncts) collect_vars(l.atom, vars);
        for (const auto& u : inst.universals)
          if (std::any_of(vars.begin(), vars.end(), [&](const Term& t) { return t.name == u.first; }))
            remaining.push_back(u);
        inst.universals = std::move(remaining);
        rules_.push_back({inst, rules_[r].base_id, full, rules_[r].forward_only});
        std::size_t added = rules_.size() - 1;
        for (NodeId n = 0; n < atms_.nodes().size(); ++n) match_forward(added, n);
        continue;
      }
      std::vector<NodeId> antecedents;
      std::optional<Literal> head;
      int positives = 0;
      for (const auto& l : inst.disjuncts) {
        if (l.positive) {
          ++positives;
          head = l;
        }
      }
      if (positives != 1) {
        stats_.errors.push_back("MalformedGroundClause: " + rules_[r].base_id + " " + render(full));
        continue;
      }
      for (const auto& l : inst.disjuncts)
        if (!l.positive) antecedents.push_back(intern(l.negated()));
      NodeId c = intern(*head);
      justify(rules_[r].base_id, full, std::move(antecedents), c);
    }
  }

  void resolve_all() {
    last_resolutions_.clear();
    for (NodeId i = 0; i < atms_.nodes().size(); ++i) {
      const Literal& l = atms_.node(i).content;
      if (l.positive) continue;
      auto pos = atms_.find(l.negated());
      if (!pos) continue;
      auto outcome = atms_.resolve_opposites(*pos, i);
      if (outcome.kind == ResolutionOutcome::Kind::NoConflict) continue;
      ++stats_.resolutions;
      std::string retracted;
      for (const auto& e : outcome.retracted) retracted += " " + atms_.render_environment(e);
      trace("resolve " + render(atms_.node(*pos).content) + " vs " + render(l) + ":" + describe(outcome.kind) +
            (retracted.empty() ? "" : " retract" + retracted));
      last_resolutions_.push_back(std::move(outcome));
    }
  }

  static std::string describe(ResolutionOutcome::Kind k) {
    switch (k) {
      case ResolutionOutcome::Kind::PositiveWins: return " positive wins";
      case ResolutionOutcome::Kind::NegativeWins: return " negative wins";
      case ResolutionOutcome::Kind::Unordered: return " unordered spaces, both hold";
      case ResolutionOutcome::Kind::NoConflict: return " no conflict";
    }
    return "";
  }

  Signature sig_;
  Atms& atms_;
  std::vector<ActiveRule> rules_;
  std::deque<Task> agenda_;
  std::set<std::string> fingerprints_;
  std::set<NodeId> backward_done_;
  std::vector<std::string> trace_;
  std::vector<ResolutionOutcome> last_resolutions_;
  EngineStats stats_;
  int backward_depth_ = kDefaultBackwardDepth;
};

}  // namespace beliefc
