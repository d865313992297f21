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

/// \file dot.hpp
/// Graphviz output for communication graphs and transition systems.

#pragma once

#include "pis/lts.hpp"
#include "pis/topology.hpp"

#include <sstream>
#include <string>

namespace pis {

namespace detail {

inline std::string dot_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out + "\"";
}

} // namespace detail

/// Undirected; components are ellipses, ports are boxes.
inline std::string emit_dot(const CommGraph& graph) {
  std::ostringstream os;
  os << "graph comm {\n";
  for (const Vertex& v : graph.vertices) {
    os << "  " << detail::dot_quote(to_string(v)) << (v.is_port() ? " [shape=box]" : " [shape=ellipse]") << ";\n";
  }
  for (const auto& [a, b] : graph.edges) {
    os << "  " << detail::dot_quote(to_string(a)) << " -- " << detail::dot_quote(to_string(b)) << ";\n";
  }
  os << "}\n";
  return os.str();
}

/// Directed; initial states get an arrow from an invisible point, tau
/// edges are dashed.
template <class A>
std::string emit_dot(const Lts<A>& lts) {
  std::ostringstream os;
  os << "digraph lts {\n";
  for (StateId s = 0; s < lts.state_count(); ++s) {
    os << "  " << detail::dot_quote(lts.state_name(s)) << ";\n";
  }
  std::size_t k = 0;
  for (StateId s : lts.initials()) {
    os << "  __init" << k << " [shape=point];\n";
    os << "  __init" << k++ << " -> " << detail::dot_quote(lts.state_name(s)) << ";\n";
  }
  for (const Transition& t : lts.transitions()) {
    os << "  " << detail::dot_quote(lts.state_name(t.source)) << " -> " << detail::dot_quote(lts.state_name(t.target))
       << " [label=" << detail::dot_quote(to_string(lts.label_of(t)));
    if (lts.label_of(t).is_tau()) os << ", style=dashed";
    os << "];\n";
  }
  os << "}\n";
  return os.str();
}

} // namespace pis
