#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <algorithm>
#include <fstream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "beliefc/beliefc.hpp"

#ifndef BELIEFC_DATA_DIR
#define BELIEFC_DATA_DIR "data"
#endif
#ifndef BELIEFC_GOLDEN_DIR
#define BELIEFC_GOLDEN_DIR "tests/golden"
#endif

namespace testsupport {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline std::string data_path(const std::string& name) { return std::string(BELIEFC_DATA_DIR) + "/" + name; }
inline std::string golden_path(const std::string& name) { return std::string(BELIEFC_GOLDEN_DIR) + "/" + name; }

inline beliefc::Spec maptask_spec() { return beliefc::parse_spec(read_file(data_path("maptask.bspec"))); }

// Parses a single prefixed literal such as "~rmb(vivid(section_1))".
inline beliefc::Literal lit(const std::string& text) {
  return beliefc::parse_uql("query " + text).at(0).literal;
}

// ---------------------------------------------------------------------------
// Brute-force ATMS oracle: enumerates every assumption subset and computes
// entailment by forward closure.

struct AtmsInstance {
  int nodes = 0;
  int assumptions = 0;
  std::vector<int> assumption_node;  // assumption i is attached to this node
  std::vector<int> premises;
  std::vector<std::pair<std::vector<int>, int>> justifications;
  int contradiction = -1;
};

using EnvSet = std::set<std::set<int>>;

inline std::vector<bool> closure(const AtmsInstance& in, unsigned mask) {
  std::vector<bool> on(static_cast<std::size_t>(in.nodes), false);
  for (int p : in.premises) on[static_cast<std::size_t>(p)] = true;
  for (int a = 0; a < in.assumptions; ++a)
    if (mask & (1u << a)) on[static_cast<std::size_t>(in.assumption_node[static_cast<std::size_t>(a)])] = true;
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& [ante, cons] : in.justifications) {
      if (on[static_cast<std::size_t>(cons)]) continue;
      if (std::all_of(ante.begin(), ante.end(), [&](int a) { return on[static_cast<std::size_t>(a)]; })) {
        on[static_cast<std::size_t>(cons)] = true;
        changed = true;
      }
    }
  }
  return on;
}

inline std::set<int> mask_set(unsigned mask, int n) {
  std::set<int> s;
  for (int a = 0; a < n; ++a)
    if (mask & (1u << a)) s.insert(a);
  return s;
}

// Minimal consistent environments per node.
inline std::vector<EnvSet> oracle_labels(const AtmsInstance& in) {
  const unsigned total = 1u << in.assumptions;
  std::vector<std::vector<bool>> closures(total);
  std::vector<bool> consistent(total, true);
  for (unsigned m = 0; m < total; ++m) {
    closures[m] = closure(in, m);
    if (in.contradiction >= 0) consistent[m] = !closures[m][static_cast<std::size_t>(in.contradiction)];
  }
  std::vector<EnvSet> labels(static_cast<std::size_t>(in.nodes));
  for (int n = 0; n < in.nodes; ++n) {
    if (n == in.contradiction) continue;
    std::vector<unsigned> support;
    for (unsigned m = 0; m < total; ++m)
      if (consistent[m] && closures[m][static_cast<std::size_t>(n)]) support.push_back(m);
    for (unsigned m : support) {
      bool minimal = std::none_of(support.begin(), support.end(),
                                  [&](unsigned o) { return o != m && (o & m) == o; });
      if (minimal) labels[static_cast<std::size_t>(n)].insert(mask_set(m, in.assumptions));
    }
  }
  return labels;
}

inline AtmsInstance random_instance(std::mt19937& rng, int max_assumptions = 12, int max_nodes = 40,
                                    int max_justifications = 60) {
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  AtmsInstance in;
  in.nodes = pick(4, max_nodes);
  in.assumptions = pick(1, std::min(max_assumptions, in.nodes - 2));
  for (int a = 0; a < in.assumptions; ++a) in.assumption_node.push_back(a);
  int premises = pick(0, 2);
  for (int p = 0; p < premises; ++p) in.premises.push_back(pick(in.assumptions, in.nodes - 1));
  if (pick(0, 3) != 0) in.contradiction = in.nodes - 1;
  int js = pick(1, max_justifications);
  for (int j = 0; j < js; ++j) {
    std::vector<int> ante;
    int k = pick(1, 3);
    for (int i = 0; i < k; ++i) ante.push_back(pick(0, in.nodes - 1));
    int cons = pick(in.assumptions, in.nodes - 1);
    in.justifications.push_back({ante, cons});
  }
  return in;
}

inline beliefc::Literal node_literal(int n) {
  return {true, beliefc::Prefix::Obj, beliefc::Atom{"n" + std::to_string(n), {}}};
}

// Feeds an instance into the incremental ATMS in a shuffled but seeded order.
inline std::vector<EnvSet> incremental_labels(const AtmsInstance& in, std::mt19937& rng) {
  beliefc::Atms atms;
  std::vector<beliefc::NodeId> ids;
  for (int n = 0; n < in.nodes; ++n) ids.push_back(atms.intern(node_literal(n)));
  if (in.contradiction >= 0) atms.make_contradiction(ids[static_cast<std::size_t>(in.contradiction)]);

  enum Op { Premise, Assume, Justify };
  std::vector<std::pair<Op, std::size_t>> ops;
  for (std::size_t i = 0; i < in.premises.size(); ++i) ops.push_back({Premise, i});
  for (std::size_t i = 0; i < static_cast<std::size_t>(in.assumptions); ++i) ops.push_back({Assume, i});
  for (std::size_t i = 0; i < in.justifications.size(); ++i) ops.push_back({Justify, i});
  std::shuffle(ops.begin(), ops.end(), rng);

  std::map<beliefc::AssumptionId, int> assumption_index;
  for (const auto& [op, i] : ops) {
    switch (op) {
      case Premise: atms.add_premise(node_literal(in.premises[i])); break;
      case Assume: {
        auto [node, aid] = atms.add_assumption(node_literal(in.assumption_node[i]), beliefc::Assumption::make_default(1));
        (void)node;
        assumption_index[aid] = static_cast<int>(i);
        break;
      }
      case Justify: {
        std::vector<beliefc::NodeId> ante;
        for (int a : in.justifications[i].first) ante.push_back(ids[static_cast<std::size_t>(a)]);
        atms.add_justification(ante, ids[static_cast<std::size_t>(in.justifications[i].second)], "j" + std::to_string(i));
        break;
      }
    }
  }

  std::vector<EnvSet> labels(static_cast<std::size_t>(in.nodes));
  for (int n = 0; n < in.nodes; ++n) {
    if (n == in.contradiction) continue;
    for (const auto& e : atms.node(ids[static_cast<std::size_t>(n)]).label) {
      std::set<int> s;
      for (auto a : e) s.insert(assumption_index.at(a));
      labels[static_cast<std::size_t>(n)].insert(s);
    }
  }
  return labels;
}

// ---------------------------------------------------------------------------
// Truth-table oracle for modality-free propositional formulas.

inline beliefc::Formula prop(int i) { return beliefc::Formula::atomic(beliefc::Atom{"p" + std::to_string(i), {}}); }

inline beliefc::Formula random_formula(std::mt19937& rng, int atoms, int depth) {
  using beliefc::Formula;
  auto pick = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  if (depth == 0 || pick(0, 4) == 0) return prop(pick(0, atoms - 1));
  switch (pick(0, 3)) {
    case 0: return Formula::negate(random_formula(rng, atoms, depth - 1));
    case 1: return Formula::binary(Formula::Kind::And, random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    case 2: return Formula::binary(Formula::Kind::Or, random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
    default: return Formula::binary(Formula::Kind::Implies, random_formula(rng, atoms, depth - 1), random_formula(rng, atoms, depth - 1));
  }
}

inline bool eval(const beliefc::Formula& f, unsigned v) {
  using K = beliefc::Formula::Kind;
  switch (f.kind) {
    case K::True: return true;
    case K::Atomic: return (v >> std::stoi(f.atom.pred.substr(1))) & 1u;
    case K::Not: return !eval(f.kids[0], v);
    case K::And: return eval(f.kids[0], v) && eval(f.kids[1], v);
    case K::Or: return eval(f.kids[0], v) || eval(f.kids[1], v);
    case K::Implies: return !eval(f.kids[0], v) || eval(f.kids[1], v);
    default: throw std::logic_error("modal operator in propositional oracle");
  }
}

// Evaluates a clause set directly from its disjuncts.
inline bool eval(const std::vector<beliefc::ModalClause>& clauses, unsigned v) {
  for (const auto& c : clauses) {
    bool sat = false;
    for (const auto& d : c.disjuncts) {
      bool val = (v >> std::stoi(d.group.at(0).atom.pred.substr(1))) & 1u;
      sat = sat || (d.group.at(0).positive ? val : !val);
    }
    if (!sat) return false;
  }
  return true;
}

}  // namespace testsupport
