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

/// \file bench.hpp
/// Cost of the pairwise checks on star systems: port-protocol pairs versus
/// pairs of whole components.

#pragma once

#include "pis/generators.hpp"
#include "pis/verifier.hpp"

#include <chrono>
#include <sstream>
#include <string>
#include <vector>

namespace pis {

struct BenchRow {
  int n = 0;
  /// Composite states plus transitions over all port-protocol pairs.
  std::size_t theorem_cost = 0;
  /// Same metric over the partial behaviors of all component pairs.
  std::size_t baseline_cost = 0;
  double theorem_ms = 0;
  double baseline_ms = 0;
};

inline BenchRow bench_star(int n) {
  using clock = std::chrono::steady_clock;
  const System system = generate_star(n);
  BenchRow row;
  row.n = n;

  auto start = clock::now();
  const CommGraph graph = comm_graph(system);
  for (const PairCheck& c : check_port_pairs(system, system.protocols, graph, InteractionIndex(system))) {
    row.theorem_cost += c.cost();
  }
  row.theorem_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();

  start = clock::now();
  for (const PairCheck& c : check_component_pairs(system)) row.baseline_cost += c.cost();
  row.baseline_ms = std::chrono::duration<double, std::milli>(clock::now() - start).count();
  return row;
}

inline std::vector<BenchRow> bench_scaling(const std::vector<int>& n_values) {
  if (n_values.empty()) throw QueryError("bench_scaling needs at least one n");
  std::vector<BenchRow> rows;
  for (int n : n_values) rows.push_back(bench_star(n));
  return rows;
}

inline std::string render_csv(const std::vector<BenchRow>& rows) {
  std::ostringstream os;
  os << "n,theorem_cost,baseline_cost,theorem_ms,baseline_ms\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.theorem_cost << ',' << r.baseline_cost << ',' << r.theorem_ms << ',' << r.baseline_ms
       << '\n';
  }
  return os.str();
}

} // namespace pis
