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

/// \file equivalence.hpp
/// Branching bisimilarity (divergence-blind) by signature refinement,
/// quotient minimisation and port conformance.

#pragma once

#include "pis/lts.hpp"
#include "pis/system.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace pis {

using BlockId = std::uint32_t;

/// A partition of the states of an LTS into blocks.  Blocks are numbered
/// in order of their least member.
struct Partition {
  std::vector<BlockId> block_of;
  std::size_t block_count = 0;

  bool same_block(StateId a, StateId b) const { return block_of.at(a) == block_of.at(b); }

  std::vector<std::vector<StateId>> blocks() const {
    std::vector<std::vector<StateId>> result(block_count);
    for (StateId s = 0; s < block_of.size(); ++s) result[block_of[s]].push_back(s);
    return result;
  }

  bool operator==(const Partition&) const = default;
};

namespace detail {

/// Strongly connected components of the graph given by `succ`, listed so
/// that every component comes after all components it can reach.
inline std::vector<std::vector<StateId>> sccs_sinks_first(const std::vector<std::vector<StateId>>& succ) {
  const std::size_t n = succ.size();
  constexpr std::uint32_t unvisited = UINT32_MAX;
  std::vector<std::uint32_t> index(n, unvisited), low(n, 0);
  std::vector<bool> on_stack(n, false);
  std::vector<StateId> stack;
  std::vector<std::vector<StateId>> result;
  std::uint32_t counter = 0;

  // Explicit call stack of (state, next successor position).
  std::vector<std::pair<StateId, std::size_t>> frames;
  for (StateId root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    frames.push_back({root, 0});
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, pos] = frames.back();
      if (pos < succ[v].size()) {
        StateId w = succ[v][pos++];
        if (index[w] == unvisited) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.push_back({w, 0});
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<StateId> component;
        StateId w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        result.push_back(std::move(component));
      }
      StateId finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        StateId parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  return result;
}

inline Partition canonical_partition(const std::vector<BlockId>& raw) {
  Partition p;
  p.block_of.resize(raw.size());
  std::map<BlockId, BlockId> rename;
  for (StateId s = 0; s < raw.size(); ++s) {
    auto [it, inserted] = rename.try_emplace(raw[s], static_cast<BlockId>(rename.size()));
    p.block_of[s] = it->second;
  }
  p.block_count = rename.size();
  return p;
}

struct KeyLess {
  template <class Key>
  bool operator()(const Key& a, const Key& b) const {
    if (a.first != b.first) return a.first < b.first;
    return *a.second < *b.second;
  }
};

} // namespace detail

/// The coarsest partition whose blocks are the branching bisimilarity
/// classes of `lts`.
///
/// Signature refinement: the signature of a state is the set of
/// (label, target block) pairs it can reach after a sequence of inert tau
/// steps (tau steps that stay inside the current block), excluding inert
/// tau steps themselves.  States with the same block and signature stay
/// together; the loop ends when no block splits.  Tau cycles inside a
/// block are handled by collapsing strongly connected components of the
/// inert-tau graph first, which makes the definition divergence-blind.
template <class A>
Partition branching_partition(const Lts<A>& lts) {
  const std::size_t n = lts.state_count();
  const std::optional<LabelIndex> tau = lts.find_label(Label<A>::tau());
  using Signature = std::vector<std::pair<LabelIndex, BlockId>>;

  std::vector<BlockId> block(n, 0);
  std::size_t block_count = n == 0 ? 0 : 1;

  while (true) {
    std::vector<std::vector<StateId>> inert(n);
    if (tau) {
      for (const Transition& t : lts.transitions()) {
        if (t.label == *tau && block[t.source] == block[t.target]) inert[t.source].push_back(t.target);
      }
    }
    const auto components = detail::sccs_sinks_first(inert);
    std::vector<std::uint32_t> component_of(n);
    for (std::uint32_t k = 0; k < components.size(); ++k) {
      for (StateId s : components[k]) component_of[s] = k;
    }

    std::vector<Signature> signature(components.size());
    for (std::uint32_t k = 0; k < components.size(); ++k) {
      Signature& sig = signature[k];
      for (StateId s : components[k]) {
        for (const Transition& t : lts.outgoing(s)) {
          const bool is_inert = tau && t.label == *tau && block[t.target] == block[s];
          if (!is_inert) {
            sig.emplace_back(t.label, block[t.target]);
          } else if (component_of[t.target] != k) {
            const Signature& below = signature[component_of[t.target]];
            sig.insert(sig.end(), below.begin(), below.end());
          }
        }
      }
      std::sort(sig.begin(), sig.end());
      sig.erase(std::unique(sig.begin(), sig.end()), sig.end());
    }

    std::map<std::pair<BlockId, const Signature*>, BlockId, detail::KeyLess> keys;
    std::vector<BlockId> next(n);
    for (StateId s = 0; s < n; ++s) {
      auto [it, inserted] = keys.try_emplace({block[s], &signature[component_of[s]]}, static_cast<BlockId>(keys.size()));
      next[s] = it->second;
    }
    block = std::move(next);
    if (keys.size() == block_count) break;
    block_count = keys.size();
  }
  return detail::canonical_partition(block);
}

template <class A>
bool branching_bisimilar(const Lts<A>& left, const Lts<A>& right) {
  const Lts<A> both = disjoint_union(left, right, "0:", "1:");
  const Partition partition = branching_partition(both);

  // Left states sort before right states in the union.
  std::set<BlockId> left_blocks, right_blocks;
  for (StateId s : both.initials()) {
    (s < left.state_count() ? left_blocks : right_blocks).insert(partition.block_of[s]);
  }
  return left_blocks == right_blocks;
}

/// Quotient of `lts` by branching bisimilarity, restricted to blocks
/// reachable from an initial block.  Tau transitions inside a block are
/// dropped.  Each quotient state is named after the least member of its
/// block.
template <class A>
Lts<A> minimize(const Lts<A>& lts) {
  const Partition partition = branching_partition(lts);
  const auto blocks = partition.blocks();

  std::vector<std::vector<Transition>> lifted(partition.block_count);
  for (const Transition& t : lts.transitions()) {
    BlockId from = partition.block_of[t.source];
    BlockId to = partition.block_of[t.target];
    if (from == to && lts.label_of(t).is_tau()) continue;
    lifted[from].push_back({from, t.label, to});
  }

  std::vector<bool> seen(partition.block_count, false);
  std::vector<BlockId> queue;
  LtsBuilder<A> builder;
  for (StateId s : lts.initials()) {
    BlockId b = partition.block_of[s];
    builder.initial(lts.state_name(blocks[b].front()));
    if (!seen[b]) {
      seen[b] = true;
      queue.push_back(b);
    }
  }
  for (std::size_t head = 0; head < queue.size(); ++head) {
    for (const Transition& t : lifted[queue[head]]) {
      builder.transition(lts.state_name(blocks[t.source].front()), lts.label(t.label),
                         lts.state_name(blocks[t.target].front()));
      if (!seen[t.target]) {
        seen[t.target] = true;
        queue.push_back(t.target);
      }
    }
  }
  return builder.build();
}

/// True if `lts` is already its own branching-bisimulation quotient.
template <class A>
bool is_minimal(const Lts<A>& lts) {
  const Lts<A> m = minimize(lts);
  return m.state_count() == lts.state_count() && m.transition_count() == lts.transition_count();
}

template <class A>
bool is_tau_free(const Lts<A>& lts) {
  return std::none_of(lts.transitions().begin(), lts.transitions().end(),
                      [&](const Transition& t) { return lts.label_of(t).is_tau(); });
}

/// f_{i.p}(LTS_i): the component behavior with every action outside the
/// port alphabet hidden.
inline ActionLts port_view(const System& system, const PortRef& p) {
  if (!system.has_port(p)) throw QueryError("unknown port " + to_string(p));
  auto behavior = system.behaviors.find(p.component);
  if (behavior == system.behaviors.end()) throw QueryError("component " + p.component + " has no behavior");
  return hide(behavior->second, system.port_alphabet(p));
}

/// LTS_{i.p} ≈_b f_{i.p}(LTS_i).
inline bool conforms(const System& system, const PortRef& p) {
  auto protocol = system.protocols.find(p);
  if (!system.has_port(p) || protocol == system.protocols.end()) {
    throw QueryError("unknown port " + to_string(p));
  }
  return branching_bisimilar(protocol->second, port_view(system, p));
}

} // namespace pis
