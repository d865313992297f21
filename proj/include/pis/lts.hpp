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

/// \file lts.hpp
/// Explicit-state labeled transition systems.
///
/// An `Lts<A>` is parameterised over its visible action type `A`.  Component
/// behaviors and port protocols use plain action names; composed behaviors
/// use interactions (sets of action names) as their visible labels.  The
/// internal action tau is not a value of `A` but a distinguished `Label`.

#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <deque>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace pis {

using ActionId = std::string;
using StateId = std::uint32_t;
using LabelIndex = std::uint32_t;

/// The reserved spelling of the internal action in text formats.
inline constexpr const char* tau_token = "tau";

/// Either a visible action or tau.  Tau orders before every visible label.
template <class A>
class Label {
public:
  Label() = default; // tau
  explicit Label(A action) : action_(std::move(action)) {}

  static Label tau() { return Label(); }

  bool is_tau() const { return !action_.has_value(); }
  bool is_visible() const { return action_.has_value(); }

  const A& action() const {
    if (!action_) {
      throw std::logic_error("tau label carries no action");
    }
    return *action_;
  }

  auto operator<=>(const Label&) const = default;
  bool operator==(const Label&) const = default;

private:
  std::optional<A> action_;
};

struct Transition {
  StateId source = 0;
  LabelIndex label = 0;
  StateId target = 0;

  auto operator<=>(const Transition&) const = default;
  bool operator==(const Transition&) const = default;
};

namespace detail {

inline std::string to_text(const std::string& s) { return s; }

template <class T>
std::string to_text(const T& value) {
  std::ostringstream os;
  os << value;
  return os.str();
}

} // namespace detail

template <class A>
std::string to_string(const Label<A>& label) {
  return label.is_tau() ? std::string(tau_token) : detail::to_text(label.action());
}

/// An immutable labeled transition system.
///
/// Construction canonicalises the representation: states are ordered by
/// name, labels by value, transitions by (source, label, target) with
/// duplicates removed.  Two `Lts` values are therefore structurally equal
/// iff `operator==` says so.
template <class A>
class Lts {
public:
  using action_type = A;
  using label_type = Label<A>;

  /// Throws `std::invalid_argument` if the arguments violate the LTS
  /// invariants (dangling indices, duplicate state names, no initial state).
  Lts(std::vector<std::string> states, std::vector<label_type> labels,
      std::vector<Transition> transitions, std::vector<StateId> initials) {
    if (initials.empty()) {
      throw std::invalid_argument("an LTS needs at least one initial state");
    }
    for (const Transition& t : transitions) {
      if (t.source >= states.size() || t.target >= states.size() || t.label >= labels.size()) {
        throw std::invalid_argument("transition refers to an unknown state or label");
      }
    }
    for (StateId s : initials) {
      if (s >= states.size()) {
        throw std::invalid_argument("initial state index out of range");
      }
    }

    std::vector<StateId> state_order(states.size());
    for (StateId i = 0; i < state_order.size(); ++i) state_order[i] = i;
    std::sort(state_order.begin(), state_order.end(),
              [&](StateId a, StateId b) { return states[a] < states[b]; });
    std::vector<StateId> state_rank(states.size());
    states_.reserve(states.size());
    for (StateId r = 0; r < state_order.size(); ++r) {
      state_rank[state_order[r]] = r;
      if (r > 0 && states[state_order[r]] == states_.back()) {
        throw std::invalid_argument("duplicate state name '" + states[state_order[r]] + "'");
      }
      states_.push_back(std::move(states[state_order[r]]));
    }

    // Labels are a set: equal labels collapse onto one index.
    std::vector<LabelIndex> label_order(labels.size());
    for (LabelIndex i = 0; i < label_order.size(); ++i) label_order[i] = i;
    std::sort(label_order.begin(), label_order.end(),
              [&](LabelIndex a, LabelIndex b) { return labels[a] < labels[b]; });
    std::vector<LabelIndex> label_rank(labels.size());
    for (LabelIndex r = 0; r < label_order.size(); ++r) {
      const label_type& l = labels[label_order[r]];
      if (labels_.empty() || !(labels_.back() == l)) {
        labels_.push_back(l);
      }
      label_rank[label_order[r]] = static_cast<LabelIndex>(labels_.size() - 1);
    }

    transitions_.reserve(transitions.size());
    for (const Transition& t : transitions) {
      transitions_.push_back({state_rank[t.source], label_rank[t.label], state_rank[t.target]});
    }
    std::sort(transitions_.begin(), transitions_.end());
    transitions_.erase(std::unique(transitions_.begin(), transitions_.end()), transitions_.end());

    for (StateId s : initials) initials_.push_back(state_rank[s]);
    std::sort(initials_.begin(), initials_.end());
    initials_.erase(std::unique(initials_.begin(), initials_.end()), initials_.end());

    offsets_.assign(states_.size() + 1, 0);
    for (const Transition& t : transitions_) ++offsets_[t.source + 1];
    for (std::size_t i = 1; i < offsets_.size(); ++i) offsets_[i] += offsets_[i - 1];
  }

  std::size_t state_count() const { return states_.size(); }
  std::size_t transition_count() const { return transitions_.size(); }

  const std::vector<std::string>& states() const { return states_; }
  const std::string& state_name(StateId s) const { return states_.at(s); }
  const std::vector<label_type>& labels() const { return labels_; }
  const label_type& label(LabelIndex l) const { return labels_.at(l); }
  const label_type& label_of(const Transition& t) const { return labels_.at(t.label); }
  const std::vector<Transition>& transitions() const { return transitions_; }
  const std::vector<StateId>& initials() const { return initials_; }

  /// Outgoing transitions of `s`, ordered by (label, target).
  std::span<const Transition> outgoing(StateId s) const {
    return std::span<const Transition>(transitions_).subspan(offsets_[s], offsets_[s + 1] - offsets_[s]);
  }

  std::optional<StateId> find_state(const std::string& name) const {
    auto it = std::lower_bound(states_.begin(), states_.end(), name);
    if (it == states_.end() || *it != name) return std::nullopt;
    return static_cast<StateId>(it - states_.begin());
  }

  std::optional<LabelIndex> find_label(const label_type& l) const {
    auto it = std::lower_bound(labels_.begin(), labels_.end(), l);
    if (it == labels_.end() || !(*it == l)) return std::nullopt;
    return static_cast<LabelIndex>(it - labels_.begin());
  }

  bool operator==(const Lts& other) const {
    return states_ == other.states_ && labels_ == other.labels_ &&
           transitions_ == other.transitions_ && initials_ == other.initials_;
  }

private:
  std::vector<std::string> states_;
  std::vector<label_type> labels_;
  std::vector<Transition> transitions_;
  std::vector<StateId> initials_;
  std::vector<std::size_t> offsets_;
};

/// Incremental, name-based construction of an `Lts`.
///
/// States come into existence when first mentioned.  Unless labels are
/// declared explicitly, the label set is the set of labels that occur on
/// transitions.
template <class A>
class LtsBuilder {
public:
  using label_type = Label<A>;

  StateId state(const std::string& name) {
    auto [it, inserted] = index_.try_emplace(name, static_cast<StateId>(names_.size()));
    if (inserted) names_.push_back(name);
    return it->second;
  }

  LtsBuilder& initial(const std::string& name) {
    initials_.push_back(state(name));
    return *this;
  }

  LtsBuilder& declare_label(const label_type& l) {
    label_index(l);
    return *this;
  }

  LtsBuilder& transition(const std::string& source, const label_type& l, const std::string& target) {
    StateId s = state(source);
    StateId t = state(target);
    transitions_.push_back({s, label_index(l), t});
    return *this;
  }

  LtsBuilder& transition(const std::string& source, const A& action, const std::string& target) {
    return transition(source, label_type(action), target);
  }

  LtsBuilder& tau(const std::string& source, const std::string& target) {
    return transition(source, label_type::tau(), target);
  }

  bool has_initial() const { return !initials_.empty(); }

  Lts<A> build() const { return Lts<A>(names_, labels_, transitions_, initials_); }

private:
  LabelIndex label_index(const label_type& l) {
    auto [it, inserted] = label_ids_.try_emplace(l, static_cast<LabelIndex>(labels_.size()));
    if (inserted) labels_.push_back(l);
    return it->second;
  }

  std::map<std::string, StateId> index_;
  std::vector<std::string> names_;
  std::map<label_type, LabelIndex> label_ids_;
  std::vector<label_type> labels_;
  std::vector<Transition> transitions_;
  std::vector<StateId> initials_;
};

/// States reachable from some initial state in zero or more steps.
template <class A>
std::set<StateId> reachable_states(const Lts<A>& lts) {
  std::vector<bool> seen(lts.state_count(), false);
  std::deque<StateId> queue;
  for (StateId s : lts.initials()) {
    if (!seen[s]) {
      seen[s] = true;
      queue.push_back(s);
    }
  }
  while (!queue.empty()) {
    StateId s = queue.front();
    queue.pop_front();
    for (const Transition& t : lts.outgoing(s)) {
      if (!seen[t.target]) {
        seen[t.target] = true;
        queue.push_back(t.target);
      }
    }
  }
  std::set<StateId> result;
  for (StateId s = 0; s < seen.size(); ++s) {
    if (seen[s]) result.insert(s);
  }
  return result;
}

/// A reachable state without outgoing transitions, if any.  Tau counts as
/// an outgoing transition.
template <class A>
std::optional<StateId> find_reachable_sink(const Lts<A>& lts) {
  for (StateId s : reachable_states(lts)) {
    if (lts.outgoing(s).empty()) return s;
  }
  return std::nullopt;
}

template <class A>
bool is_deadlock_free(const Lts<A>& lts) {
  return !find_reachable_sink(lts).has_value();
}

/// Relabels every transition whose label is not `Visible(a)` with `a` kept
/// by `keep` to tau.  States and initials are unchanged.
template <class A, class Keep>
Lts<A> hide_if_not(const Lts<A>& lts, Keep&& keep) {
  std::vector<Label<A>> labels;
  std::vector<LabelIndex> relabel(lts.labels().size());
  std::optional<LabelIndex> tau_index;
  std::vector<bool> used(lts.labels().size(), false);
  for (const Transition& t : lts.transitions()) used[t.label] = true;

  for (LabelIndex l = 0; l < lts.labels().size(); ++l) {
    if (!used[l]) continue;
    const Label<A>& label = lts.label(l);
    if (label.is_visible() && keep(label.action())) {
      relabel[l] = static_cast<LabelIndex>(labels.size());
      labels.push_back(label);
    } else {
      if (!tau_index) {
        tau_index = static_cast<LabelIndex>(labels.size());
        labels.push_back(Label<A>::tau());
      }
      relabel[l] = *tau_index;
    }
  }

  std::vector<Transition> transitions;
  transitions.reserve(lts.transition_count());
  for (const Transition& t : lts.transitions()) {
    transitions.push_back({t.source, relabel[t.label], t.target});
  }
  return Lts<A>(lts.states(), std::move(labels), std::move(transitions), lts.initials());
}

template <class A>
Lts<A> hide(const Lts<A>& lts, const std::set<A>& keep) {
  return hide_if_not(lts, [&](const A& a) { return keep.contains(a); });
}

/// Disjoint union with state names prefixed by `left_prefix` / `right_prefix`.
/// Initial states of both operands become initial.
template <class A>
Lts<A> disjoint_union(const Lts<A>& left, const Lts<A>& right,
                      const std::string& left_prefix = "0:", const std::string& right_prefix = "1:") {
  std::vector<std::string> states;
  states.reserve(left.state_count() + right.state_count());
  for (const auto& s : left.states()) states.push_back(left_prefix + s);
  for (const auto& s : right.states()) states.push_back(right_prefix + s);

  std::vector<Label<A>> labels = left.labels();
  labels.insert(labels.end(), right.labels().begin(), right.labels().end());

  auto offset = static_cast<StateId>(left.state_count());
  auto label_offset = static_cast<LabelIndex>(left.labels().size());
  std::vector<Transition> transitions = left.transitions();
  for (const Transition& t : right.transitions()) {
    transitions.push_back({t.source + offset, t.label + label_offset, t.target + offset});
  }
  std::vector<StateId> initials = left.initials();
  for (StateId s : right.initials()) initials.push_back(s + offset);
  return Lts<A>(std::move(states), std::move(labels), std::move(transitions), std::move(initials));
}

} // namespace pis
