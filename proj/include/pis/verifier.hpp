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

/// \file verifier.hpp
/// Deadlock-freedom verdicts.
///
/// `check_theorem` decides deadlock-freedom compositionally: if the
/// communication graph is a tree, every port is uniquely connected and
/// conform to its component, every minimised port protocol is tau-free,
/// and the product of every pair of linked port protocols is deadlock-free,
/// then the global behavior is deadlock-free.  Only pairs of minimised
/// protocols are ever composed.
///
/// `check_oracle` explores the global behavior and is the reference the
/// compositional verdict is cross-validated against.

#pragma once

#include "pis/composition.hpp"
#include "pis/equivalence.hpp"
#include "pis/lts.hpp"
#include "pis/system.hpp"
#include "pis/topology.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pis {

using Trace = std::vector<Label<Interaction>>;

inline std::string to_string(const Trace& trace) {
  std::string s;
  for (const auto& l : trace) s += (s.empty() ? "" : " ") + to_string(l);
  return s.empty() ? "<empty>" : s;
}

/// Breadth-first search from the initial states, successors in (label,
/// target) order.  Returns a shortest label sequence ending in a reachable
/// state without outgoing transitions.
template <class A>
std::optional<std::vector<Label<A>>> shortest_trace_to_sink(const Lts<A>& lts) {
  constexpr StateId none = UINT32_MAX;
  std::vector<StateId> parent(lts.state_count(), none);
  std::vector<LabelIndex> via(lts.state_count(), 0);
  std::vector<bool> seen(lts.state_count(), false);
  std::vector<StateId> queue;
  for (StateId s : lts.initials()) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const StateId s = queue[head];
    if (lts.outgoing(s).empty()) {
      std::vector<Label<A>> trace;
      for (StateId v = s; parent[v] != none; v = parent[v]) trace.push_back(lts.label(via[v]));
      return std::vector<Label<A>>(trace.rbegin(), trace.rend());
    }
    for (const Transition& t : lts.outgoing(s)) {
      if (!seen[t.target]) {
        seen[t.target] = true;
        parent[t.target] = s;
        via[t.target] = t.label;
        queue.push_back(t.target);
      }
    }
  }
  return std::nullopt;
}

/// States reached from the initial states by following `trace` exactly.
template <class A>
std::set<StateId> replay(const Lts<A>& lts, const std::vector<Label<A>>& trace) {
  std::set<StateId> current(lts.initials().begin(), lts.initials().end());
  for (const auto& step : trace) {
    std::set<StateId> next;
    const auto l = lts.find_label(step);
    if (!l) return {};
    for (StateId s : current) {
      for (const Transition& t : lts.outgoing(s)) {
        if (t.label == *l) next.insert(t.target);
      }
    }
    current = std::move(next);
  }
  return current;
}

template <class A>
bool replays_to_sink(const Lts<A>& lts, const std::vector<Label<A>>& trace) {
  for (StateId s : replay(lts, trace)) {
    if (lts.outgoing(s).empty()) return true;
  }
  return false;
}

enum class Outcome { deadlock_free_by_theorem, deadlock_free_by_oracle, deadlock_witness, inapplicable };

inline const char* to_string(Outcome o) {
  switch (o) {
  case Outcome::deadlock_free_by_theorem: return "DeadlockFreeByTheorem";
  case Outcome::deadlock_free_by_oracle: return "DeadlockFreeByOracle";
  case Outcome::deadlock_witness: return "DeadlockWitness";
  case Outcome::inapplicable: return "Inapplicable";
  }
  return "?";
}

enum class FailureKind {
  not_tree_like,
  port_not_uniquely_connected,
  port_not_conform,
  minimized_protocol_not_tau_free,
  pair_deadlock,
  solo_deadlock,
  component_without_ports,
};

struct PreconditionFailure {
  FailureKind kind;
  std::optional<PortRef> port;
  std::optional<PortRef> peer;
  /// Path to a sink of the checked product, for `pair_deadlock` and
  /// `solo_deadlock`.
  Trace trace;
  ComponentId component;

  static PreconditionFailure of(FailureKind kind, std::optional<PortRef> port = std::nullopt,
                                std::optional<PortRef> peer = std::nullopt, Trace trace = {}) {
    return {kind, std::move(port), std::move(peer), std::move(trace), {}};
  }

  bool operator==(const PreconditionFailure&) const = default;
};

inline std::string describe(const PreconditionFailure& f) {
  switch (f.kind) {
  case FailureKind::not_tree_like: return "NotTreeLike";
  case FailureKind::port_not_uniquely_connected: return "PortNotUniquelyConnected(" + to_string(*f.port) + ")";
  case FailureKind::port_not_conform: return "PortNotConform(" + to_string(*f.port) + ")";
  case FailureKind::minimized_protocol_not_tau_free:
    return "MinimizedProtocolNotTauFree(" + to_string(*f.port) + ")";
  case FailureKind::pair_deadlock:
    return "PairDeadlock(" + to_string(*f.port) + ", " + to_string(*f.peer) + ", " + to_string(f.trace) + ")";
  case FailureKind::solo_deadlock: return "SoloDeadlock(" + to_string(*f.port) + ", " + to_string(f.trace) + ")";
  case FailureKind::component_without_ports: return "ComponentWithoutPorts(" + f.component + ")";
  }
  return "?";
}

/// Result of composing two linked ports (or their owning components).
struct PairCheck {
  PortRef first;
  PortRef second;
  bool deadlock_free = true;
  bool tau_free = true;
  std::size_t state_count = 0;
  std::size_t transition_count = 0;
  std::optional<Trace> witness;

  std::size_t cost() const { return state_count + transition_count; }
  bool operator==(const PairCheck&) const = default;
};

struct Verdict {
  Outcome outcome = Outcome::inapplicable;
  /// Shortest path to a global sink, for `deadlock_witness`.
  Trace witness;
  std::vector<PreconditionFailure> failures;
  std::vector<PairCheck> pair_checks;
  /// Input protocols that were not already minimal (informational).
  std::vector<PortRef> non_minimal_protocols;
  /// Composite states plus transitions explored to reach the verdict.
  std::size_t cost = 0;

  bool operator==(const Verdict&) const = default;
};

inline std::map<PortRef, ActionLts> minimized_protocols(const System& system) {
  std::map<PortRef, ActionLts> result;
  for (const auto& [p, lts] : system.protocols) result.emplace(p, minimize(lts));
  return result;
}

/// Composes every pair of linked ports from `protocols` and checks it
/// for deadlocks.
inline std::vector<PairCheck> check_port_pairs(const System& system, const std::map<PortRef, ActionLts>& protocols,
                                               const CommGraph& graph, const InteractionIndex& index,
                                               std::size_t budget = default_state_budget) {
  std::vector<PairCheck> checks;
  for (const auto& [p, q] : graph.port_links()) {
    const InteractionLts product = port_behavior(system, protocols, {p, q}, index, budget);
    PairCheck check;
    check.first = p;
    check.second = q;
    check.witness = shortest_trace_to_sink(product);
    check.deadlock_free = !check.witness.has_value();
    check.tau_free = is_tau_free(product);
    check.state_count = product.state_count();
    check.transition_count = product.transition_count();
    checks.push_back(std::move(check));
  }
  return checks;
}

/// The baseline the port-protocol approach is compared against: for every
/// pair of linked ports, the partial behavior over the two owning
/// components.  Used for cost comparison only, it is not a decision
/// procedure.
inline std::vector<PairCheck> check_component_pairs(const System& system, std::size_t budget = default_state_budget) {
  const CommGraph graph = comm_graph(system);
  const InteractionIndex index(system);
  std::vector<PairCheck> checks;
  for (const auto& [p, q] : graph.port_links()) {
    const InteractionLts product = partial_behavior(system, {p.component, q.component}, index, budget);
    PairCheck check;
    check.first = p;
    check.second = q;
    check.witness = shortest_trace_to_sink(product);
    check.deadlock_free = !check.witness.has_value();
    check.tau_free = true;
    check.state_count = product.state_count();
    check.transition_count = product.transition_count();
    checks.push_back(std::move(check));
  }
  return checks;
}

/// Compositional verdict.  Returns `deadlock_free_by_theorem` or
/// `inapplicable`; never claims a global deadlock.  Throws
/// `ValidationError` for invalid systems.
///
/// A tree without any port–port link consists of a single component and
/// the pair condition is vacuous there.  In that case every port protocol
/// is checked on its own instead, and a component without ports (whose
/// global behavior is a sink) is rejected.
inline Verdict check_theorem(const System& system, std::size_t budget = default_state_budget) {
  require_valid(system);
  Verdict verdict;

  const auto protocols = minimized_protocols(system);
  for (const auto& [p, lts] : system.protocols) {
    if (protocols.at(p).state_count() != lts.state_count() ||
        protocols.at(p).transition_count() != lts.transition_count()) {
      verdict.non_minimal_protocols.push_back(p);
    }
  }

  // All structural preconditions are collected before giving up.
  const CommGraph graph = comm_graph(system);
  if (!is_tree_like(graph)) verdict.failures.push_back(PreconditionFailure::of(FailureKind::not_tree_like));
  const auto ports = system.all_ports();
  for (const auto& p : ports) {
    if (!is_uniquely_connected(graph, p)) verdict.failures.push_back(PreconditionFailure::of(FailureKind::port_not_uniquely_connected, p));
  }
  for (const auto& p : ports) {
    if (!conforms(system, p)) verdict.failures.push_back(PreconditionFailure::of(FailureKind::port_not_conform, p));
  }
  for (const auto& p : ports) {
    if (!is_tau_free(protocols.at(p))) {
      verdict.failures.push_back(PreconditionFailure::of(FailureKind::minimized_protocol_not_tau_free, p));
    }
  }
  if (!verdict.failures.empty()) {
    verdict.outcome = Outcome::inapplicable;
    return verdict;
  }

  const InteractionIndex index(system);
  verdict.pair_checks = check_port_pairs(system, protocols, graph, index, budget);
  for (const PairCheck& c : verdict.pair_checks) {
    verdict.cost += c.cost();
    if (!c.deadlock_free) {
      verdict.failures.push_back(PreconditionFailure::of(FailureKind::pair_deadlock, c.first, c.second, *c.witness));
    }
  }
  if (verdict.pair_checks.empty()) {
    for (const auto& c : system.components) {
      if (system.ports.at(c).empty()) {
        auto f = PreconditionFailure::of(FailureKind::component_without_ports);
        f.component = c;
        verdict.failures.push_back(std::move(f));
      }
    }
    for (const auto& p : ports) {
      const InteractionLts alone = port_behavior(system, protocols, {p}, index, budget);
      verdict.cost += alone.state_count() + alone.transition_count();
      if (auto trace = shortest_trace_to_sink(alone)) {
        verdict.failures.push_back(PreconditionFailure::of(FailureKind::solo_deadlock, p, std::nullopt, std::move(*trace)));
      }
    }
  }
  verdict.outcome = verdict.failures.empty() ? Outcome::deadlock_free_by_theorem : Outcome::inapplicable;
  return verdict;
}

/// Brute-force verdict over the global behavior.  Throws `BudgetExceeded`
/// when the reachable global state space is larger than `budget`.
inline Verdict check_oracle(const System& system, std::size_t budget = default_state_budget) {
  require_valid(system);
  const InteractionLts global = global_behavior(system, budget);
  Verdict verdict;
  verdict.cost = global.state_count() + global.transition_count();
  if (auto trace = shortest_trace_to_sink(global)) {
    verdict.outcome = Outcome::deadlock_witness;
    verdict.witness = std::move(*trace);
  } else {
    verdict.outcome = Outcome::deadlock_free_by_oracle;
  }
  return verdict;
}

struct CrossValidation {
  Verdict theorem;
  /// Empty when the oracle ran out of budget.
  std::optional<Verdict> oracle;

  bool oracle_unknown() const { return !oracle.has_value(); }

  /// The compositional check claimed deadlock-freedom and the global
  /// behavior has a reachable sink.
  bool soundness_violation() const {
    return theorem.outcome == Outcome::deadlock_free_by_theorem && oracle &&
           oracle->outcome == Outcome::deadlock_witness;
  }
};

inline CrossValidation cross_validate(const System& system, std::size_t budget = default_state_budget) {
  CrossValidation result{check_theorem(system, budget), std::nullopt};
  try {
    result.oracle = check_oracle(system, budget);
  } catch (const BudgetExceeded&) {
  }
  return result;
}

} // namespace pis
