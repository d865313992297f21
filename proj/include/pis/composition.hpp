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

/// \file composition.hpp
/// Synchronous products of component behaviors and port protocols:
/// global behavior, partial behavior over a component set, and port
/// behavior over a port set.  All products are explored on the fly from
/// the initial tuples, so only reachable composite states exist.

#pragma once

#include "pis/lts.hpp"
#include "pis/system.hpp"

#include <cstddef>
#include <cstdlib>
#include <map>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pis {

inline constexpr std::size_t default_state_budget = 1'000'000;

/// `PIS_BUDGET` if set to a positive integer, else `default_state_budget`.
inline std::size_t state_budget_from_env() {
  if (const char* text = std::getenv("PIS_BUDGET")) {
    char* end = nullptr;
    unsigned long long value = std::strtoull(text, &end, 10);
    if (end != text && *end == '\0' && value > 0) return static_cast<std::size_t>(value);
  }
  return default_state_budget;
}

/// Thrown when a product would exceed its composite-state budget.  This
/// means "unknown", never "deadlocked".
class BudgetExceeded : public std::runtime_error {
public:
  explicit BudgetExceeded(std::size_t budget)
      : std::runtime_error("composite state budget of " + std::to_string(budget) + " states exceeded"),
        budget_(budget) {}

  std::size_t budget() const { return budget_; }

private:
  std::size_t budget_;
};

/// One factor of a product: an LTS together with the actions it owns.
struct Participant {
  const ActionLts* lts = nullptr;
  std::set<ActionId> alphabet;
};

/// Interactions indexed by the actions they contain, so that the
/// projections relevant to a few participants can be found without
/// scanning the whole interaction set.
class InteractionIndex {
public:
  explicit InteractionIndex(const System& system)
      : interactions_(system.interactions.begin(), system.interactions.end()) {
    for (std::size_t k = 0; k < interactions_.size(); ++k) {
      for (const auto& a : interactions_[k].actions()) by_action_[a].push_back(k);
    }
  }

  /// { alpha ∩ actions | alpha ∈ Int } \ {∅}
  std::set<Interaction> project(const std::set<ActionId>& actions) const {
    std::set<Interaction> result;
    std::set<std::size_t> touched;
    for (const auto& a : actions) {
      auto it = by_action_.find(a);
      if (it != by_action_.end()) touched.insert(it->second.begin(), it->second.end());
    }
    for (std::size_t k : touched) {
      std::vector<ActionId> kept;
      for (const auto& a : interactions_[k].actions()) {
        if (actions.contains(a)) kept.push_back(a);
      }
      result.insert(Interaction(std::move(kept)));
    }
    return result;
  }

private:
  std::vector<Interaction> interactions_;
  std::map<ActionId, std::vector<std::size_t>> by_action_;
};

/// Renders a composite state as "(s1,s2,...)".
inline std::string composite_name(std::span<const std::string> parts) {
  std::string name = "(";
  for (std::size_t k = 0; k < parts.size(); ++k) {
    if (k) name += ',';
    name += parts[k];
  }
  return name + ")";
}

/// Product of `participants` synchronised on `labels`.
///
/// A composite step on label L moves every participant whose alphabet
/// meets L by the single action it contributes, and leaves every other
/// participant in place.  With `interleave_tau`, a participant may also
/// take a tau step alone.  Labels are declared even if never enabled.
inline InteractionLts compose(std::span<const Participant> participants, const std::set<Interaction>& labels,
                              bool interleave_tau, std::size_t budget = default_state_budget) {
  const std::size_t arity = participants.size();
  if (arity == 0) throw QueryError("a product needs at least one participant");

  // For each label: (participant, local label index) pairs that must move.
  // A label some participant cannot perform at all is never enabled.
  struct Move {
    std::size_t participant;
    LabelIndex local;
  };
  struct Sync {
    const Interaction* label;
    std::vector<Move> moves;
    bool possible = true;
  };
  std::vector<Sync> syncs;
  for (const Interaction& l : labels) {
    Sync sync{&l, {}, true};
    for (std::size_t k = 0; k < arity; ++k) {
      for (const auto& a : l.actions()) {
        if (!participants[k].alphabet.contains(a)) continue;
        if (auto local = participants[k].lts->find_label(Label<ActionId>(a))) {
          sync.moves.push_back({k, *local});
        } else {
          sync.possible = false;
        }
      }
    }
    syncs.push_back(std::move(sync));
  }
  std::vector<std::optional<LabelIndex>> local_tau(arity);
  if (interleave_tau) {
    for (std::size_t k = 0; k < arity; ++k) local_tau[k] = participants[k].lts->find_label(Label<ActionId>::tau());
  }

  auto successors = [&](std::size_t k, StateId s, LabelIndex l) {
    std::vector<StateId> result;
    for (const Transition& t : participants[k].lts->outgoing(s)) {
      if (t.label == l) result.push_back(t.target);
    }
    return result;
  };

  std::vector<std::string> names;
  std::vector<Label<Interaction>> out_labels;
  std::vector<Transition> out_transitions;
  std::vector<StateId> out_initials;
  std::map<std::vector<StateId>, StateId> index;
  std::vector<std::vector<StateId>> tuples;

  auto visit = [&](const std::vector<StateId>& tuple) -> StateId {
    auto [it, inserted] = index.try_emplace(tuple, static_cast<StateId>(tuples.size()));
    if (inserted) {
      if (tuples.size() >= budget) throw BudgetExceeded(budget);
      tuples.push_back(tuple);
      std::vector<std::string> parts(arity);
      for (std::size_t k = 0; k < arity; ++k) parts[k] = participants[k].lts->state_name(tuple[k]);
      names.push_back(composite_name(parts));
    }
    return it->second;
  };

  for (const Sync& sync : syncs) out_labels.emplace_back(*sync.label);
  LabelIndex tau_out = 0;
  if (interleave_tau) {
    tau_out = static_cast<LabelIndex>(out_labels.size());
    out_labels.push_back(Label<Interaction>::tau());
  }

  // Initial tuples: the Cartesian product of the initial sets.
  std::vector<StateId> tuple(arity);
  auto expand_initials = [&](auto&& self, std::size_t k) -> void {
    if (k == arity) {
      out_initials.push_back(visit(tuple));
      return;
    }
    for (StateId s : participants[k].lts->initials()) {
      tuple[k] = s;
      self(self, k + 1);
    }
  };
  expand_initials(expand_initials, 0);

  for (StateId current = 0; current < tuples.size(); ++current) {
    const std::vector<StateId> source = tuples[current];
    for (LabelIndex l = 0; l < syncs.size(); ++l) {
      const Sync& sync = syncs[l];
      if (!sync.possible) continue;
      std::vector<std::vector<StateId>> choices;
      bool enabled = true;
      for (const Move& m : sync.moves) {
        choices.push_back(successors(m.participant, source[m.participant], m.local));
        if (choices.back().empty()) {
          enabled = false;
          break;
        }
      }
      if (!enabled) continue;
      std::vector<StateId> target = source;
      auto expand = [&](auto&& self, std::size_t j) -> void {
        if (j == sync.moves.size()) {
          out_transitions.push_back({current, l, visit(target)});
          return;
        }
        for (StateId next : choices[j]) {
          target[sync.moves[j].participant] = next;
          self(self, j + 1);
        }
      };
      expand(expand, 0);
    }
    if (interleave_tau) {
      for (std::size_t k = 0; k < arity; ++k) {
        if (!local_tau[k]) continue;
        for (StateId next : successors(k, source[k], *local_tau[k])) {
          std::vector<StateId> target = source;
          target[k] = next;
          out_transitions.push_back({current, tau_out, visit(target)});
        }
      }
    }
  }

  return InteractionLts(std::move(names), std::move(out_labels), std::move(out_transitions), std::move(out_initials));
}

/// LTS_C for a nonempty set of components, participants in component-id
/// order, labels Int_C.
inline InteractionLts partial_behavior(const System& system, const std::set<ComponentId>& components,
                                       const InteractionIndex& index, std::size_t budget = default_state_budget) {
  if (components.empty()) throw QueryError("partial behavior over an empty component set");
  std::vector<Participant> participants;
  std::set<ActionId> actions;
  for (const auto& c : components) {
    auto it = system.behaviors.find(c);
    if (!system.components.contains(c) || it == system.behaviors.end()) {
      throw QueryError("unknown component '" + c + "'");
    }
    Participant part{&it->second, system.component_actions(c)};
    actions.insert(part.alphabet.begin(), part.alphabet.end());
    participants.push_back(std::move(part));
  }
  return compose(participants, index.project(actions), false, budget);
}

inline InteractionLts partial_behavior(const System& system, const std::set<ComponentId>& components,
                                       std::size_t budget = default_state_budget) {
  return partial_behavior(system, components, InteractionIndex(system), budget);
}

/// LTS_Sys.  Identical to the partial behavior over all components; the
/// projection onto all actions is the identity on Int.
inline InteractionLts global_behavior(const System& system, std::size_t budget = default_state_budget) {
  return partial_behavior(system, system.components, budget);
}

/// LTS_P over the given protocols (one per port), participants in port
/// order, labels Int_P ∪ {tau}.  Tau steps of single protocols interleave.
inline InteractionLts port_behavior(const System& system, const std::map<PortRef, ActionLts>& protocols,
                                    const std::set<PortRef>& ports, const InteractionIndex& index,
                                    std::size_t budget = default_state_budget) {
  if (ports.empty()) throw QueryError("port behavior over an empty port set");
  std::vector<Participant> participants;
  std::set<ActionId> actions;
  for (const auto& p : ports) {
    auto it = protocols.find(p);
    if (!system.has_port(p) || it == protocols.end()) throw QueryError("unknown port " + to_string(p));
    Participant part{&it->second, system.port_alphabet(p)};
    actions.insert(part.alphabet.begin(), part.alphabet.end());
    participants.push_back(std::move(part));
  }
  return compose(participants, index.project(actions), true, budget);
}

inline InteractionLts port_behavior(const System& system, const std::set<PortRef>& ports,
                                    std::size_t budget = default_state_budget) {
  return port_behavior(system, system.protocols, ports, InteractionIndex(system), budget);
}

} // namespace pis
