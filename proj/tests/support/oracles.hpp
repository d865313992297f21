/*
 * Copyright 2026 The pis Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Reference implementations used only by the tests.  They follow the
// definitions directly and share no code with the algorithms they check
// beyond the LTS container itself.

#pragma once

#include "pis/pis.hpp"

#include <deque>
#include <map>
#include <set>
#include <vector>

namespace pis::testing {

/// Greatest fixpoint of the branching bisimulation transfer condition,
/// computed on the full relation S x S.  A pair (s, t) survives if every
/// step s -l-> s' is answered either by (l = tau and s' R t) or by
/// t =tau*=> t0 -l-> t' with s R t0 and s' R t', and symmetrically.
template <class A>
std::vector<std::vector<bool>> naive_branching_bisimilarity(const Lts<A>& lts) {
  const std::size_t n = lts.state_count();
  std::vector<std::vector<bool>> related(n, std::vector<bool>(n, true));

  auto tau_closure = [&](StateId from) {
    std::vector<bool> seen(n, false);
    std::vector<StateId> stack{from};
    seen[from] = true;
    while (!stack.empty()) {
      StateId u = stack.back();
      stack.pop_back();
      for (const Transition& t : lts.transitions()) {
        if (t.source == u && lts.label_of(t).is_tau() && !seen[t.target]) {
          seen[t.target] = true;
          stack.push_back(t.target);
        }
      }
    }
    return seen;
  };
  std::vector<std::vector<bool>> closure;
  for (StateId s = 0; s < n; ++s) closure.push_back(tau_closure(s));

  auto answered = [&](StateId s, StateId t) {
    for (const Transition& step : lts.transitions()) {
      if (step.source != s) continue;
      if (lts.label_of(step).is_tau() && related[step.target][t]) continue;
      bool found = false;
      for (StateId t0 = 0; t0 < n && !found; ++t0) {
        if (!closure[t][t0] || !related[s][t0]) continue;
        for (const Transition& answer : lts.transitions()) {
          if (answer.source == t0 && answer.label == step.label && related[step.target][answer.target]) {
            found = true;
            break;
          }
        }
      }
      if (!found) return false;
    }
    return true;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (StateId s = 0; s < n; ++s) {
      for (StateId t = 0; t < n; ++t) {
        if (related[s][t] && (!answered(s, t) || !answered(t, s))) {
          related[s][t] = related[t][s] = false;
          changed = true;
        }
      }
    }
  }
  return related;
}

inline bool partition_matches_relation(const Partition& partition, const std::vector<std::vector<bool>>& relation) {
  for (StateId s = 0; s < relation.size(); ++s) {
    for (StateId t = 0; t < relation.size(); ++t) {
      if (partition.same_block(s, t) != relation[s][t]) return false;
    }
  }
  return true;
}

struct NaiveFactor {
  const ActionLts* lts;
  std::set<ActionId> alphabet;
};

/// Full Cartesian product following the transition rule literally, then
/// restricted to the states reachable from the initial tuples.
inline InteractionLts naive_product(const std::vector<NaiveFactor>& factors, const System& system, bool with_tau) {
  std::set<ActionId> visible;
  for (const auto& f : factors) visible.insert(f.alphabet.begin(), f.alphabet.end());
  std::set<Interaction> labels;
  for (const auto& alpha : system.interactions) {
    std::vector<ActionId> kept;
    for (const auto& a : alpha.actions()) {
      if (visible.contains(a)) kept.push_back(a);
    }
    if (!kept.empty()) labels.insert(Interaction(kept));
  }

  // Enumerate every tuple.
  std::vector<std::vector<StateId>> tuples{{}};
  for (const auto& f : factors) {
    std::vector<std::vector<StateId>> next;
    for (const auto& prefix : tuples) {
      for (StateId s = 0; s < f.lts->state_count(); ++s) {
        auto extended = prefix;
        extended.push_back(s);
        next.push_back(std::move(extended));
      }
    }
    tuples = std::move(next);
  }

  auto has_step = [](const ActionLts& lts, StateId from, const Label<ActionId>& l, StateId to) {
    for (const Transition& t : lts.transitions()) {
      if (t.source == from && t.target == to && lts.label_of(t) == l) return true;
    }
    return false;
  };

  using Tuple = std::vector<StateId>;
  std::map<Tuple, std::vector<std::pair<Label<Interaction>, Tuple>>> edges;
  for (const auto& s : tuples) {
    for (const auto& t : tuples) {
      for (const auto& l : labels) {
        bool ok = true;
        for (std::size_t k = 0; k < factors.size() && ok; ++k) {
          std::vector<ActionId> mine;
          for (const auto& a : l.actions()) {
            if (factors[k].alphabet.contains(a)) mine.push_back(a);
          }
          if (mine.empty()) ok = s[k] == t[k];
          else ok = mine.size() == 1 && has_step(*factors[k].lts, s[k], Label<ActionId>(mine[0]), t[k]);
        }
        if (ok) edges[s].push_back({Label<Interaction>(l), t});
      }
      if (with_tau) {
        std::size_t differing = 0, where = 0;
        for (std::size_t k = 0; k < factors.size(); ++k) {
          if (s[k] != t[k]) {
            ++differing;
            where = k;
          }
        }
        bool ok = false;
        if (differing == 1) {
          ok = has_step(*factors[where].lts, s[where], Label<ActionId>::tau(), t[where]);
        } else if (differing == 0) {
          for (std::size_t k = 0; k < factors.size() && !ok; ++k) {
            ok = has_step(*factors[k].lts, s[k], Label<ActionId>::tau(), t[k]);
          }
        }
        if (ok) edges[s].push_back({Label<Interaction>::tau(), t});
      }
    }
  }

  auto name = [&](const Tuple& tuple) {
    std::string n = "(";
    for (std::size_t k = 0; k < tuple.size(); ++k) n += (k ? "," : "") + factors[k].lts->state_name(tuple[k]);
    return n + ")";
  };

  LtsBuilder<Interaction> builder;
  for (const auto& l : labels) builder.declare_label(Label<Interaction>(l));
  if (with_tau) builder.declare_label(Label<Interaction>::tau());
  std::set<Tuple> seen;
  std::deque<Tuple> queue;
  for (const auto& t : tuples) {
    bool initial = true;
    for (std::size_t k = 0; k < factors.size(); ++k) {
      const auto& in = factors[k].lts->initials();
      initial = initial && std::find(in.begin(), in.end(), t[k]) != in.end();
    }
    if (initial) {
      builder.initial(name(t));
      seen.insert(t);
      queue.push_back(t);
    }
  }
  while (!queue.empty()) {
    Tuple s = queue.front();
    queue.pop_front();
    for (const auto& [l, t] : edges[s]) {
      builder.transition(name(s), l, name(t));
      if (seen.insert(t).second) queue.push_back(t);
    }
  }
  return builder.build();
}

/// Visible label sequences of length <= depth, tau steps skipped.
inline std::set<std::vector<Interaction>> visible_traces(const InteractionLts& lts, std::size_t depth) {
  std::set<std::vector<Interaction>> result;
  auto tau_close = [&](std::set<StateId> states) {
    std::vector<StateId> stack(states.begin(), states.end());
    while (!stack.empty()) {
      StateId s = stack.back();
      stack.pop_back();
      for (const Transition& t : lts.outgoing(s)) {
        if (lts.label_of(t).is_tau() && states.insert(t.target).second) stack.push_back(t.target);
      }
    }
    return states;
  };
  std::vector<std::pair<std::vector<Interaction>, std::set<StateId>>> frontier{
      {{}, tau_close({lts.initials().begin(), lts.initials().end()})}};
  result.insert(std::vector<Interaction>{});
  for (std::size_t d = 0; d < depth; ++d) {
    std::vector<std::pair<std::vector<Interaction>, std::set<StateId>>> next;
    for (const auto& [trace, states] : frontier) {
      std::map<Interaction, std::set<StateId>> by_label;
      for (StateId s : states) {
        for (const Transition& t : lts.outgoing(s)) {
          if (lts.label_of(t).is_visible()) by_label[lts.label_of(t).action()].insert(t.target);
        }
      }
      for (auto& [l, targets] : by_label) {
        auto extended = trace;
        extended.push_back(l);
        result.insert(extended);
        next.push_back({std::move(extended), tau_close(std::move(targets))});
      }
    }
    frontier = std::move(next);
  }
  return result;
}

} // namespace pis::testing
