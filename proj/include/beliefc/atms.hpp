#pragma once

// Assumption-based truth maintenance with evidential-space defaults and
// timestamped negative evidence.
//
// Labels hold minimal consistent environments. Retraction never deletes
// structure: a losing environment is declared a nogood and pruned from
// every label.

#include <algorithm>
#include <deque>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "beliefc/logic.hpp"
#include "beliefc/spec_parser.hpp"

namespace beliefc {

using NodeId = std::size_t;
using AssumptionId = std::size_t;
using JustificationId = std::size_t;

// Sorted assumption ids.
using Environment = std::vector<AssumptionId>;

inline bool is_subset(const Environment& a, const Environment& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline Environment merge(const Environment& a, const Environment& b) {
  Environment out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

struct Assumption {
  enum class Kind : std::uint8_t { Default, Timestamp };
  Kind kind = Kind::Default;
  int space = 0;       // Default
  int serial = 0;      // Default
  int ordinal = 0;     // Timestamp
  NodeId node = 0;

  static Assumption make_default(int space) { return {Kind::Default, space, 0, 0, 0}; }
  static Assumption timestamp(int ordinal) { return {Kind::Timestamp, 0, 0, ordinal, 0}; }

  std::string name() const {
    if (kind == Kind::Timestamp) return "ts_" + std::to_string(ordinal);
    return "def" + std::to_string(space) + "_" + std::to_string(serial);
  }
};

struct Node {
  enum class Kind : std::uint8_t { Premise, Assumed, Derived, Contradiction };
  Literal content;
  Kind kind = Kind::Derived;
  std::vector<Environment> label;
  std::vector<int> stamps;  // epoch at which each label environment arrived
  std::vector<JustificationId> consequences;
  std::vector<JustificationId> supports;
  bool lost_support = false;
};

struct Justification {
  std::vector<NodeId> antecedents;
  NodeId consequent = 0;
  std::string origin;
};

inline const char* kind_name(Node::Kind k) {
  switch (k) {
    case Node::Kind::Premise: return "premise";
    case Node::Kind::Assumed: return "assumed";
    case Node::Kind::Derived: return "derived";
    case Node::Kind::Contradiction: return "contradiction";
  }
  return "?";
}

class InconsistencySignal : public Error {
 public:
  InconsistencySignal(std::string positive_label, std::string negative_label, const std::string& what)
      : Error("InconsistencySignal", what),
        positive_label_(std::move(positive_label)),
        negative_label_(std::move(negative_label)) {}
  const std::string& positive_label() const { return positive_label_; }
  const std::string& negative_label() const { return negative_label_; }

 private:
  std::string positive_label_;
  std::string negative_label_;
};

struct ResolutionOutcome {
  enum class Kind {
    NoConflict,
    PositiveWins,
    NegativeWins,
    Unordered,
  };
  Kind kind = Kind::NoConflict;
  std::optional<int> positive_space;
  std::optional<int> negative_space;
  std::vector<Environment> retracted;
};

enum class HoldStatus { Holds, Out, Retracted };

struct HoldResult {
  HoldStatus status = HoldStatus::Out;
  std::vector<Environment> environments;
};

class Atms {
 public:
  explicit Atms(SpaceOrder order = {}) : order_(std::move(order)) {}

  // All label environments added from now on carry this epoch.
  void set_epoch(int epoch) { epoch_ = epoch; }
  int epoch() const { return epoch_; }

  std::optional<NodeId> find(const Literal& content) const {
    auto it = index_.find(content);
    if (it == index_.end()) return std::nullopt;
    return it->second;
  }

  NodeId intern(const Literal& content) {
    if (auto id = find(content)) return *id;
    NodeId id = nodes_.size();
    Node n;
    n.content = content;
    nodes_.push_back(std::move(n));
    index_.emplace(content, id);
    return id;
  }

  NodeId add_premise(const Literal& content) {
    NodeId id = intern(content);
    if (nodes_[id].kind != Node::Kind::Contradiction) nodes_[id].kind = Node::Kind::Premise;
    propagate(id, {Environment{}});
    return id;
  }

  std::pair<NodeId, AssumptionId> add_assumption(const Literal& content, Assumption a) {
    NodeId id = intern(content);
    if (nodes_[id].kind == Node::Kind::Derived) nodes_[id].kind = Node::Kind::Assumed;
    if (a.kind == Assumption::Kind::Default) a.serial = ++serials_[a.space];
    a.node = id;
    AssumptionId aid = assumptions_.size();
    assumptions_.push_back(a);
    propagate(id, {Environment{aid}});
    return {id, aid};
  }

  JustificationId add_justification(std::vector<NodeId> antecedents, NodeId consequent, std::string origin) {
    for (JustificationId j : nodes_[consequent].supports)
      if (justifications_[j].antecedents == antecedents) return j;
    JustificationId jid = justifications_.size();
    justifications_.push_back({antecedents, consequent, std::move(origin)});
    nodes_[consequent].supports.push_back(jid);
    std::vector<NodeId> unique = antecedents;
    std::sort(unique.begin(), unique.end());
    unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
    for (NodeId a : unique) nodes_[a].consequences.push_back(jid);
    auto envs = fire(jid, std::nullopt, {});
    if (!envs.empty()) propagate(consequent, envs);
    return jid;
  }

  // Every environment of a contradiction node becomes a nogood.
  void make_contradiction(NodeId id) {
    nodes_[id].kind = Node::Kind::Contradiction;
    auto envs = nodes_[id].label;
    for (const auto& e : envs) add_nogood(e);
  }

  void add_nogood(const Environment& e) {
    for (const auto& n : nogoods_)
      if (is_subset(n, e)) return;
    std::erase_if(nogoods_, [&](const Environment& n) { return is_subset(e, n); });
    nogoods_.push_back(e);
    std::sort(nogoods_.begin(), nogoods_.end());
    for (auto& node : nodes_) {
      bool had = !node.label.empty();
      for (std::size_t i = node.label.size(); i-- > 0;) {
        if (!is_subset(e, node.label[i])) continue;
        node.label.erase(node.label.begin() + static_cast<std::ptrdiff_t>(i));
        node.stamps.erase(node.stamps.begin() + static_cast<std::ptrdiff_t>(i));
      }
      if (had && node.label.empty()) node.lost_support = true;
    }
  }

  bool is_nogood(const Environment& e) const {
    return std::any_of(nogoods_.begin(), nogoods_.end(), [&](const Environment& n) { return is_subset(n, e); });
  }

  HoldResult holds(const Literal& content) const {
    auto id = find(content);
    if (!id) return {};
    const Node& n = nodes_[*id];
    if (!n.label.empty()) return {HoldStatus::Holds, n.label};
    return {n.lost_support ? HoldStatus::Retracted : HoldStatus::Out, {}};
  }

  // Decides between complementary nodes. Premise support beats assumptions;
  // when timestamped evidence is involved the side whose support arrived
  // most recently wins; otherwise the stronger evidential space wins.
  ResolutionOutcome resolve_opposites(NodeId pos, NodeId neg) {
    ResolutionOutcome out;
    const Node& p = nodes_[pos];
    const Node& n = nodes_[neg];
    if (p.label.empty() || n.label.empty()) return out;
    bool p_premise = has_empty(p.label), n_premise = has_empty(n.label);
    if (p_premise && n_premise)
      throw InconsistencySignal(render_label(p.label), render_label(n.label),
                                "both " + render(p.content) + " and " + render(n.content) + " hold as premises");
    if (p_premise || n_premise) return retract(p_premise ? neg : pos, p_premise, std::move(out));

    if (uses_timestamp(p.label) || uses_timestamp(n.label)) {
      auto rp = recency(pos), rn = recency(neg);
      if (rp == rn)
        throw InconsistencySignal(render_label(p.label), render_label(n.label),
                                  render(p.content) + " and its complement rest on equally recent evidence");
      return retract(rp > rn ? neg : pos, rp > rn, std::move(out));
    }

    auto sp = side_space(p.label), sn = side_space(n.label);
    out.positive_space = sp;
    out.negative_space = sn;
    if (!sp || !sn || *sp == *sn)
      throw InconsistencySignal(render_label(p.label), render_label(n.label),
                                render(p.content) + " and its complement are justified in the same space");
    if (order_.stronger_than(*sp, *sn)) return retract(neg, true, std::move(out));
    if (order_.stronger_than(*sn, *sp)) return retract(pos, false, std::move(out));
    out.kind = ResolutionOutcome::Kind::Unordered;
    return out;
  }

  // Space an environment stands in: its weakest default.
  std::optional<int> environment_space(const Environment& e) const {
    std::optional<int> s;
    for (AssumptionId a : e) {
      const auto& as = assumptions_[a];
      if (as.kind != Assumption::Kind::Default) continue;
      if (!s || order_.stronger_than(*s, as.space)) s = as.space;
    }
    return s;
  }

  // Strongest space over a label's environments.
  std::optional<int> side_space(const std::vector<Environment>& label) const {
    std::optional<int> best;
    for (const auto& e : label) {
      auto s = environment_space(e);
      if (s && (!best || order_.stronger_than(*s, *best))) best = s;
    }
    return best;
  }

  const Node& node(NodeId id) const { return nodes_.at(id); }
  const std::vector<Node>& nodes() const { return nodes_; }
  const std::vector<Justification>& justifications() const { return justifications_; }
  const std::vector<Assumption>& assumptions() const { return assumptions_; }
  const std::vector<Environment>& nogoods() const { return nogoods_; }
  const SpaceOrder& space_order() const { return order_; }

  std::string render_environment(const Environment& e) const {
    std::string out = "{";
    for (std::size_t i = 0; i < e.size(); ++i) out += (i ? "," : "") + assumptions_[e[i]].name();
    return out + "}";
  }

  std::string render_label(const std::vector<Environment>& label) const {
    std::vector<std::string> parts;
    for (const auto& e : label) parts.push_back(render_environment(e));
    std::sort(parts.begin(), parts.end());
    std::string out = "{";
    for (std::size_t i = 0; i < parts.size(); ++i) out += (i ? "," : "") + parts[i];
    return out + "}";
  }

  // One record per line, ordered by id.
  std::string dump() const {
    std::ostringstream out;
    for (NodeId i = 0; i < nodes_.size(); ++i)
      out << "node " << i << " " << render(nodes_[i].content) << " " << kind_name(nodes_[i].kind) << " "
          << render_label(nodes_[i].label) << "\n";
    for (JustificationId j = 0; j < justifications_.size(); ++j) {
      const auto& just = justifications_[j];
      out << "just " << j << " " << just.origin << " ";
      for (std::size_t k = 0; k < just.antecedents.size(); ++k) out << (k ? "," : "") << just.antecedents[k];
      out << " -> " << just.consequent << "\n";
    }
    for (const auto& n : nogoods_) out << "nogood " << render_environment(n) << "\n";
    return out.str();
  }

  // Graphviz export of the dependency network.
  std::string to_dot() const {
    std::ostringstream out;
    out << "digraph atms {\n  rankdir=LR;\n";
    for (NodeId i = 0; i < nodes_.size(); ++i) {
      const auto& n = nodes_[i];
      const char* shape = n.kind == Node::Kind::Premise ? "box" : n.kind == Node::Kind::Assumed ? "ellipse" : "plaintext";
      out << "  n" << i << " [label=\"" << render(n.content) << "\\n" << render_label(n.label) << "\", shape=" << shape
          << "];\n";
    }
    for (JustificationId j = 0; j < justifications_.size(); ++j) {
      const auto& just = justifications_[j];
      out << "  j" << j << " [label=\"" << just.origin << "\", shape=point];\n";
      for (NodeId a : just.antecedents) out << "  n" << a << " -> j" << j << ";\n";
      out << "  j" << j << " -> n" << just.consequent << ";\n";
    }
    out << "}\n";
    return out.str();
  }

 private:
  static bool has_empty(const std::vector<Environment>& label) {
    return std::any_of(label.begin(), label.end(), [](const Environment& e) { return e.empty(); });
  }

  bool uses_timestamp(const std::vector<Environment>& label) const {
    for (const auto& e : label)
      for (AssumptionId a : e)
        if (assumptions_[a].kind == Assumption::Kind::Timestamp) return true;
    return false;
  }

  // (latest arrival epoch, latest timestamp ordinal) over a node's label.
  std::pair<int, int> recency(NodeId id) const {
    const Node& n = nodes_[id];
    std::pair<int, int> best{-1, -1};
    for (std::size_t i = 0; i < n.label.size(); ++i) {
      int ordinal = -1;
      for (AssumptionId a : n.label[i])
        if (assumptions_[a].kind == Assumption::Kind::Timestamp) ordinal = std::max(ordinal, assumptions_[a].ordinal);
      best = std::max(best, std::make_pair(n.stamps[i], ordinal));
    }
    return best;
  }

  ResolutionOutcome retract(NodeId loser, bool positive_wins, ResolutionOutcome out) {
    out.kind = positive_wins ? ResolutionOutcome::Kind::PositiveWins : ResolutionOutcome::Kind::NegativeWins;
    out.retracted = nodes_[loser].label;
    for (const auto& e : out.retracted) add_nogood(e);
    return out;
  }

  // Environments produced by a justification. When `changed` is set, that
  // antecedent contributes only `delta`.
  std::vector<Environment> fire(JustificationId jid, std::optional<NodeId> changed,
                                const std::vector<Environment>& delta) const {
    const auto& j = justifications_[jid];
    std::vector<NodeId> antecedents = j.antecedents;
    std::sort(antecedents.begin(), antecedents.end());
    antecedents.erase(std::unique(antecedents.begin(), antecedents.end()), antecedents.end());
    std::vector<Environment> acc{Environment{}};
    for (NodeId a : antecedents) {
      const auto* source = changed && a == *changed ? &delta : &nodes_[a].label;
      std::vector<Environment> next;
      for (const auto& x : acc)
        for (const auto& y : *source) {
          auto e = merge(x, y);
          if (!is_nogood(e)) next.push_back(std::move(e));
        }
      acc = minimize(std::move(next));
      if (acc.empty()) break;
    }
    return acc;
  }

  static std::vector<Environment> minimize(std::vector<Environment> envs) {
    std::sort(envs.begin(), envs.end(), [](const Environment& a, const Environment& b) {
      return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    std::vector<Environment> out;
    for (auto& e : envs)
      if (std::none_of(out.begin(), out.end(), [&](const Environment& o) { return is_subset(o, e); }))
        out.push_back(std::move(e));
    return out;
  }

  void propagate(NodeId start, std::vector<Environment> envs) {
    std::deque<std::pair<NodeId, std::vector<Environment>>> work;
    work.emplace_back(start, std::move(envs));
    while (!work.empty()) {
      auto [id, incoming] = std::move(work.front());
      work.pop_front();
      Node& n = nodes_[id];
      std::vector<Environment> added;
      for (auto& e : incoming) {
        if (is_nogood(e)) continue;
        if (std::any_of(n.label.begin(), n.label.end(), [&](const Environment& l) { return is_subset(l, e); }))
          continue;
        for (std::size_t i = n.label.size(); i-- > 0;) {
          if (!is_subset(e, n.label[i])) continue;
          n.label.erase(n.label.begin() + static_cast<std::ptrdiff_t>(i));
          n.stamps.erase(n.stamps.begin() + static_cast<std::ptrdiff_t>(i));
        }
        std::erase_if(added, [&](const Environment& a) { return is_subset(e, a); });
        n.label.push_back(e);
        n.stamps.push_back(epoch_);
        added.push_back(e);
      }
      if (added.empty()) continue;
      if (n.kind == Node::Kind::Contradiction) {
        for (const auto& e : added) add_nogood(e);
        continue;
      }
      for (JustificationId jid : n.consequences) {
        auto out = fire(jid, id, added);
        if (!out.empty()) work.emplace_back(justifications_[jid].consequent, std::move(out));
      }
    }
  }

  SpaceOrder order_;
  std::vector<Node> nodes_;
  std::map<Literal, NodeId> index_;
  std::vector<Assumption> assumptions_;
  std::vector<Justification> justifications_;
  std::vector<Environment> nogoods_;
  std::map<int, int> serials_;
  int epoch_ = 0;
};

}  // namespace beliefc
