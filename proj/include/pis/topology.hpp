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

/// \file topology.hpp
/// The protocol communication graph and the structural predicates over it.

#pragma once

#include "pis/system.hpp"

#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace pis {

/// A vertex is either a component or one of its ports.  Components sort
/// before their ports.
struct Vertex {
  ComponentId component;
  std::optional<PortId> port;

  static Vertex of(const ComponentId& c) { return {c, std::nullopt}; }
  static Vertex of(const PortRef& p) { return {p.component, p.port}; }

  bool is_port() const { return port.has_value(); }
  PortRef port_ref() const { return {component, port.value()}; }

  auto operator<=>(const Vertex&) const = default;
  bool operator==(const Vertex&) const = default;
};

inline std::string to_string(const Vertex& v) { return v.port ? v.component + "." + *v.port : v.component; }

/// Undirected edge stored with `first < second`.
using Edge = std::pair<Vertex, Vertex>;

struct CommGraph {
  std::set<Vertex> vertices;
  std::set<Edge> edges;

  bool operator==(const CommGraph&) const = default;

  /// Port–port edges only.
  std::vector<std::pair<PortRef, PortRef>> port_links() const {
    std::vector<std::pair<PortRef, PortRef>> result;
    for (const auto& [u, v] : edges) {
      if (u.is_port() && v.is_port()) result.emplace_back(u.port_ref(), v.port_ref());
    }
    return result;
  }
};

inline Edge make_edge(Vertex a, Vertex b) {
  if (b < a) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

/// G = (V, E): every component is joined to each of its ports, and two
/// ports are joined when some interaction contains an action of each.
inline CommGraph comm_graph(const System& system) {
  CommGraph g;
  for (const auto& c : system.components) g.vertices.insert(Vertex::of(c));
  for (const auto& p : system.all_ports()) {
    g.vertices.insert(Vertex::of(p));
    g.edges.insert(make_edge(Vertex::of(p.component), Vertex::of(p)));
  }
  const auto owners = system.action_owners();
  for (const auto& alpha : system.interactions) {
    std::set<PortRef> touched;
    for (const auto& a : alpha.actions()) {
      auto it = owners.find(a);
      if (it != owners.end()) touched.insert(it->second);
    }
    for (auto i = touched.begin(); i != touched.end(); ++i) {
      for (auto j = std::next(i); j != touched.end(); ++j) {
        g.edges.insert(make_edge(Vertex::of(*i), Vertex::of(*j)));
      }
    }
  }
  return g;
}

/// Number of distinct ports `p` is linked to.
inline std::size_t port_connectivity(const CommGraph& graph, const PortRef& p) {
  const Vertex v = Vertex::of(p);
  if (!graph.vertices.contains(v)) throw QueryError("unknown port " + to_string(p));
  std::size_t count = 0;
  for (const auto& [a, b] : graph.edges) {
    if (a.is_port() && b.is_port() && (a == v || b == v)) ++count;
  }
  return count;
}

inline bool is_uniquely_connected(const CommGraph& graph, const PortRef& p) {
  return port_connectivity(graph, p) < 2;
}

/// Connected and acyclic.  An empty graph is not a tree.
inline bool is_tree_like(const CommGraph& graph) {
  if (graph.vertices.empty() || graph.edges.size() + 1 != graph.vertices.size()) return false;
  std::map<Vertex, std::vector<const Vertex*>> adjacent;
  for (const auto& [a, b] : graph.edges) {
    adjacent[a].push_back(&b);
    adjacent[b].push_back(&a);
  }
  std::set<Vertex> seen{*graph.vertices.begin()};
  std::vector<Vertex> stack{*graph.vertices.begin()};
  while (!stack.empty()) {
    Vertex v = std::move(stack.back());
    stack.pop_back();
    for (const Vertex* w : adjacent[v]) {
      if (seen.insert(*w).second) stack.push_back(*w);
    }
  }
  return seen.size() == graph.vertices.size();
}

} // namespace pis
