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

/// \file system.hpp
/// Protocol interaction systems: components, ports with disjoint port
/// alphabets, interactions, component behaviors and port protocols.

#pragma once

#include "pis/lts.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace pis {

using ComponentId = std::string;
using PortId = std::string;

/// Raised when an operation is asked about an entity the system does not
/// have (unknown component, unknown port, empty participant set, ...).
class QueryError : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

struct PortRef {
  ComponentId component;
  PortId port;

  auto operator<=>(const PortRef&) const = default;
  bool operator==(const PortRef&) const = default;
};

inline std::string to_string(const PortRef& p) { return p.component + "." + p.port; }

inline std::ostream& operator<<(std::ostream& os, const PortRef& p) { return os << to_string(p); }

/// A set of actions executed jointly.  Kept sorted and duplicate-free, so
/// the derived comparison is set comparison.
class Interaction {
public:
  Interaction() = default;
  Interaction(std::initializer_list<ActionId> actions) : actions_(actions) { normalise(); }
  explicit Interaction(std::vector<ActionId> actions) : actions_(std::move(actions)) { normalise(); }
  explicit Interaction(const std::set<ActionId>& actions) : actions_(actions.begin(), actions.end()) {}

  const std::vector<ActionId>& actions() const { return actions_; }
  std::size_t size() const { return actions_.size(); }
  bool empty() const { return actions_.empty(); }
  bool contains(const ActionId& a) const { return std::binary_search(actions_.begin(), actions_.end(), a); }

  auto operator<=>(const Interaction&) const = default;
  bool operator==(const Interaction&) const = default;

private:
  void normalise() {
    std::sort(actions_.begin(), actions_.end());
    actions_.erase(std::unique(actions_.begin(), actions_.end()), actions_.end());
  }

  std::vector<ActionId> actions_;
};

inline std::ostream& operator<<(std::ostream& os, const Interaction& alpha) {
  os << '{';
  for (std::size_t k = 0; k < alpha.size(); ++k) {
    if (k) os << ',';
    os << alpha.actions()[k];
  }
  return os << '}';
}

inline std::string to_string(const Interaction& alpha) { return detail::to_text(alpha); }

using ActionLts = Lts<ActionId>;
using InteractionLts = Lts<Interaction>;

/// The tuple (Comp, {P_i}, {A_i^p}, Int, Beh).  A plain value; call
/// `validate` before handing it to the analysis functions, which assume a
/// well-formed system.
struct System {
  std::string name = "system";
  std::set<ComponentId> components;
  std::map<ComponentId, std::set<PortId>> ports;
  std::map<PortRef, std::set<ActionId>> alphabets;
  std::set<Interaction> interactions;
  std::map<ComponentId, ActionLts> behaviors;
  std::map<PortRef, ActionLts> protocols;

  bool operator==(const System&) const = default;

  System& add_component(const ComponentId& c) {
    components.insert(c);
    ports[c];
    return *this;
  }

  System& add_port(const PortRef& p, std::set<ActionId> alphabet) {
    ports[p.component].insert(p.port);
    alphabets[p] = std::move(alphabet);
    return *this;
  }

  System& add_interaction(Interaction alpha) {
    interactions.insert(std::move(alpha));
    return *this;
  }

  bool has_port(const PortRef& p) const {
    auto it = ports.find(p.component);
    return it != ports.end() && it->second.contains(p.port);
  }

  std::vector<PortRef> all_ports() const {
    std::vector<PortRef> result;
    for (const auto& [c, ps] : ports) {
      for (const auto& p : ps) result.push_back({c, p});
    }
    return result;
  }

  /// A_i, the union of the component's port alphabets.
  std::set<ActionId> component_actions(const ComponentId& c) const {
    std::set<ActionId> result;
    auto it = ports.find(c);
    if (it == ports.end()) return result;
    for (const auto& p : it->second) {
      auto a = alphabets.find({c, p});
      if (a != alphabets.end()) result.insert(a->second.begin(), a->second.end());
    }
    return result;
  }

  const std::set<ActionId>& port_alphabet(const PortRef& p) const {
    auto it = alphabets.find(p);
    if (it == alphabets.end()) throw QueryError("unknown port " + to_string(p));
    return it->second;
  }

  /// Act, the global action set.
  std::set<ActionId> actions() const {
    std::set<ActionId> result;
    for (const auto& [p, as] : alphabets) result.insert(as.begin(), as.end());
    return result;
  }

  /// Port that owns each action.  First owner wins on (invalid) overlaps.
  std::map<ActionId, PortRef> action_owners() const {
    std::map<ActionId, PortRef> result;
    for (const auto& [p, as] : alphabets) {
      for (const auto& a : as) result.try_emplace(a, p);
    }
    return result;
  }
};

// ---------------------------------------------------------------------------
// Validation

enum class Severity { error, warning };

enum class ViolationKind {
  alphabets_not_disjoint,
  action_not_covered,
  interaction_empty,
  interaction_unknown_action,
  interaction_multiple_actions_of_component,
  behavior_missing,
  behavior_contains_tau,
  behavior_label_outside_component,
  behavior_action_unused,
  protocol_missing,
  protocol_label_outside_port,
  port_of_unknown_component,
  port_alphabet_empty,
  reserved_action_name,
};

struct Violation {
  ViolationKind kind;
  Severity severity = Severity::error;
  /// The offending entity, e.g. a component id, "c.p", an action or "{a,b}".
  std::string subject;
  std::string message;

  auto operator<=>(const Violation& o) const {
    return std::tie(subject, message) <=> std::tie(o.subject, o.message);
  }
  bool operator==(const Violation& o) const { return subject == o.subject && message == o.message; }
};

inline bool has_errors(const std::vector<Violation>& violations) {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::error; });
}

/// Checks every well-formedness clause of a protocol interaction system.
/// Returns one descriptor per violation, sorted by (subject, message).
/// Warning-grade descriptors do not make the system invalid.
inline std::vector<Violation> validate(const System& system) {
  std::vector<Violation> out;
  auto report = [&](ViolationKind kind, std::string subject, std::string message,
                    Severity severity = Severity::error) {
    out.push_back({kind, severity, std::move(subject), std::move(message)});
  };

  for (const auto& [c, ps] : system.ports) {
    if (!system.components.contains(c)) {
      report(ViolationKind::port_of_unknown_component, c, "ports declared for unknown component '" + c + "'");
    }
    for (const auto& p : ps) {
      if (!system.alphabets.contains({c, p})) {
        report(ViolationKind::port_alphabet_empty, to_string(PortRef{c, p}),
               "port " + c + "." + p + " has no alphabet", Severity::warning);
      }
    }
  }

  // Pairwise disjointness of port alphabets.
  std::map<ActionId, std::vector<PortRef>> owners;
  for (const auto& [p, as] : system.alphabets) {
    if (!system.has_port(p)) {
      report(ViolationKind::port_of_unknown_component, to_string(p), "alphabet given for undeclared port " + to_string(p));
    }
    if (as.empty()) {
      report(ViolationKind::port_alphabet_empty, to_string(p),
             "port " + to_string(p) + " has an empty alphabet", Severity::warning);
    }
    for (const auto& a : as) {
      owners[a].push_back(p);
      if (a == tau_token) {
        report(ViolationKind::reserved_action_name, a, "'tau' is reserved and cannot be an action");
      }
    }
  }
  for (const auto& [a, ps] : owners) {
    if (ps.size() > 1) {
      std::string names;
      for (const auto& p : ps) names += (names.empty() ? "" : ", ") + to_string(p);
      report(ViolationKind::alphabets_not_disjoint, a, "action " + a + " occurs in the alphabets of ports " + names);
    }
  }

  // Interactions: nonempty, known actions, at most one action per component.
  std::set<ActionId> covered;
  for (const auto& alpha : system.interactions) {
    const std::string subject = to_string(alpha);
    if (alpha.empty()) {
      report(ViolationKind::interaction_empty, subject, "interaction is empty");
      continue;
    }
    std::map<ComponentId, int> per_component;
    for (const auto& a : alpha.actions()) {
      covered.insert(a);
      auto it = owners.find(a);
      if (it == owners.end()) {
        report(ViolationKind::interaction_unknown_action, subject,
               "interaction " + subject + " uses action " + a + " which belongs to no port");
      } else {
        ++per_component[it->second.front().component];
      }
    }
    for (const auto& [c, count] : per_component) {
      if (count > 1) {
        report(ViolationKind::interaction_multiple_actions_of_component, subject,
               "interaction " + subject + " contains " + std::to_string(count) + " actions of component " + c);
      }
    }
  }
  for (const auto& [a, ps] : owners) {
    if (!covered.contains(a)) {
      report(ViolationKind::action_not_covered, a, "action " + a + " is not covered by any interaction");
    }
  }

  // Behaviors: present, tau-free, labels within A_i.
  for (const auto& c : system.components) {
    auto it = system.behaviors.find(c);
    if (it == system.behaviors.end()) {
      report(ViolationKind::behavior_missing, c, "component " + c + " has no behavior");
      continue;
    }
    const std::set<ActionId> actions = system.component_actions(c);
    std::set<ActionId> used;
    for (const Transition& t : it->second.transitions()) {
      const auto& l = it->second.label_of(t);
      if (l.is_tau()) {
        report(ViolationKind::behavior_contains_tau, c,
               "behavior of " + c + " has a tau transition from " + it->second.state_name(t.source));
        break;
      }
      used.insert(l.action());
    }
    for (const auto& l : it->second.labels()) {
      if (l.is_visible() && !actions.contains(l.action())) {
        report(ViolationKind::behavior_label_outside_component, c,
               "behavior of " + c + " uses action " + l.action() + " outside its action set");
      }
    }
    for (const auto& a : actions) {
      if (!used.contains(a)) {
        report(ViolationKind::behavior_action_unused, c, "behavior of " + c + " never performs action " + a,
               Severity::warning);
      }
    }
  }
  for (const auto& [c, b] : system.behaviors) {
    if (!system.components.contains(c)) {
      report(ViolationKind::port_of_unknown_component, c, "behavior given for unknown component '" + c + "'");
    }
  }

  // Protocols: present, labels within A_{i.p} plus tau.
  for (const auto& p : system.all_ports()) {
    auto it = system.protocols.find(p);
    if (it == system.protocols.end()) {
      report(ViolationKind::protocol_missing, to_string(p), "port " + to_string(p) + " has no protocol");
      continue;
    }
    auto alpha = system.alphabets.find(p);
    for (const auto& l : it->second.labels()) {
      if (l.is_visible() && (alpha == system.alphabets.end() || !alpha->second.contains(l.action()))) {
        report(ViolationKind::protocol_label_outside_port, to_string(p),
               "protocol of " + to_string(p) + " uses action " + l.action() + " outside the port alphabet");
      }
    }
  }
  for (const auto& [p, lts] : system.protocols) {
    if (!system.has_port(p)) {
      report(ViolationKind::port_of_unknown_component, to_string(p), "protocol given for undeclared port " + to_string(p));
    }
  }

  std::sort(out.begin(), out.end());
  return out;
}

class ValidationError : public std::runtime_error {
public:
  explicit ValidationError(std::vector<Violation> violations)
      : std::runtime_error(summary(violations)), violations_(std::move(violations)) {}

  const std::vector<Violation>& violations() const { return violations_; }

private:
  static std::string summary(const std::vector<Violation>& vs) {
    std::string s = "invalid protocol interaction system";
    for (const auto& v : vs) {
      if (v.severity == Severity::error) s += "\n  " + v.message;
    }
    return s;
  }

  std::vector<Violation> violations_;
};

/// Throws `ValidationError` if `validate` reports any error-grade violation.
inline void require_valid(const System& system) {
  auto violations = validate(system);
  if (has_errors(violations)) throw ValidationError(std::move(violations));
}

// ---------------------------------------------------------------------------
// Projections

/// i(alpha) = A_i ∩ alpha.
inline std::set<ActionId> project_component(const Interaction& alpha, const ComponentId& c, const System& system) {
  if (!system.components.contains(c)) throw QueryError("unknown component '" + c + "'");
  const std::set<ActionId> actions = system.component_actions(c);
  std::set<ActionId> result;
  for (const auto& a : alpha.actions()) {
    if (actions.contains(a)) result.insert(a);
  }
  return result;
}

/// i.p(alpha) = A_{i.p} ∩ alpha.
inline std::set<ActionId> project_port(const Interaction& alpha, const PortRef& p, const System& system) {
  if (!system.has_port(p)) throw QueryError("unknown port " + to_string(p));
  const auto& alphabet = system.port_alphabet(p);
  std::set<ActionId> result;
  for (const auto& a : alpha.actions()) {
    if (alphabet.contains(a)) result.insert(a);
  }
  return result;
}

} // namespace pis
