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

/// \file generators.hpp
/// Reference systems.
///
///  - `generate_ex1`: two components whose single ports restrict each other;
///    together they can only alternate {a_i,a_j} and {c_i,c_j}.
///  - `generate_star(n)`: a middle component m with one port per border
///    component 1..n.
///  - `generate_ring(k)`: k components linked in a cycle; deadlock-free but
///    not tree-like.
///  - `generate_pair_mismatch()`: a star whose first arm deadlocks at the
///    port level while the system as a whole keeps running.

#pragma once

#include "pis/equivalence.hpp"
#include "pis/lts.hpp"
#include "pis/system.hpp"

#include <string>

namespace pis {

namespace detail {

/// Protocols of every port as the minimised image of the hidden behavior.
inline void derive_protocols(System& system) {
  for (const auto& p : system.all_ports()) {
    system.protocols.insert_or_assign(p, minimize(port_view(system, p)));
  }
}

} // namespace detail

inline System generate_ex1() {
  System sys;
  sys.name = "ex1";
  sys.add_component("i").add_component("j");
  sys.add_port({"i", "p"}, {"a_i", "b_i", "c_i", "d_i"});
  sys.add_port({"j", "q"}, {"a_j", "b_j", "c_j", "d_j"});
  for (const char* x : {"a", "b", "c", "d"}) {
    sys.add_interaction({std::string(x) + "_i", std::string(x) + "_j"});
  }

  // i may start with a or b; after c it is back in a copy of its start.
  LtsBuilder<ActionId> i;
  i.initial("s0")
      .transition("s0", "a_i", "s1")
      .transition("s0", "b_i", "s2")
      .transition("s1", "c_i", "s3")
      .transition("s2", "d_i", "s0")
      .transition("s3", "a_i", "s1")
      .transition("s3", "b_i", "s2");
  sys.behaviors.emplace("i", i.build());

  LtsBuilder<ActionId> ip;
  ip.initial("p0")
      .transition("p0", "a_i", "p1")
      .transition("p1", "c_i", "p0")
      .transition("p0", "b_i", "p2")
      .transition("p2", "d_i", "p0");
  sys.protocols.emplace(PortRef{"i", "p"}, ip.build());

  // j may start with a or d; b and d come in the opposite order to i.
  LtsBuilder<ActionId> j;
  j.initial("t0")
      .transition("t0", "a_j", "t1")
      .transition("t1", "c_j", "t0")
      .transition("t0", "d_j", "t2")
      .transition("t2", "b_j", "t0");
  sys.behaviors.emplace("j", j.build());

  LtsBuilder<ActionId> jq;
  jq.initial("q0")
      .transition("q0", "a_j", "q1")
      .transition("q1", "c_j", "q0")
      .transition("q0", "d_j", "q2")
      .transition("q2", "b_j", "q0");
  sys.protocols.emplace(PortRef{"j", "q"}, jq.build());
  return sys;
}

inline System generate_star(int n) {
  if (n < 1) throw QueryError("star systems need n >= 1, got " + std::to_string(n));
  System sys;
  sys.name = "star" + std::to_string(n);
  sys.add_component("m");
  LtsBuilder<ActionId> middle;
  middle.initial("m0");
  for (int k = 1; k <= n; ++k) {
    const std::string id = std::to_string(k);
    const std::string mine = "a_m^" + id, theirs = "a_" + id;
    sys.add_component(id);
    sys.add_port({"m", id}, {mine});
    sys.add_port({id, "p"}, {theirs});
    sys.add_interaction({mine, theirs});
    middle.transition("m0", mine, "m0");
    LtsBuilder<ActionId> border;
    border.initial("b0").transition("b0", theirs, "b0");
    sys.behaviors.emplace(id, border.build());
  }
  sys.behaviors.emplace("m", middle.build());
  detail::derive_protocols(sys);
  return sys;
}

inline System generate_ring(int k) {
  if (k < 3) throw QueryError("rings need at least 3 components, got " + std::to_string(k));
  System sys;
  sys.name = "ring" + std::to_string(k);
  for (int c = 0; c < k; ++c) {
    const std::string id = "c" + std::to_string(c);
    const std::string left = "l_" + std::to_string(c), right = "r_" + std::to_string(c);
    sys.add_component(id);
    sys.add_port({id, "l"}, {left});
    sys.add_port({id, "r"}, {right});
    sys.add_interaction({right, "l_" + std::to_string((c + 1) % k)});
    LtsBuilder<ActionId> b;
    b.initial("s0").transition("s0", left, "s0").transition("s0", right, "s0");
    sys.behaviors.emplace(id, b.build());
  }
  detail::derive_protocols(sys);
  return sys;
}

inline System generate_pair_mismatch() {
  System sys = generate_star(2);
  sys.name = "mismatch";
  // Arm 1 must alternate a_1 and b_1, but b_1 needs x_m^1 which m never offers.
  sys.add_port({"m", "1"}, {"a_m^1", "x_m^1"});
  sys.add_port({"1", "p"}, {"a_1", "b_1"});
  sys.add_interaction({"x_m^1", "b_1"});
  LtsBuilder<ActionId> border;
  border.initial("u0").transition("u0", "a_1", "u1").transition("u1", "b_1", "u0");
  sys.behaviors.insert_or_assign("1", border.build());
  detail::derive_protocols(sys);
  return sys;
}

} // namespace pis
