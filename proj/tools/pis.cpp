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

/// \file pis.cpp
/// Command line front end: validation, compositional deadlock checking,
/// conformance tables, graph export, minimisation, generators, benchmarks.

#include "pis/pis.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace {

enum ExitCode : int {
  deadlock_free = 0,
  witness_found = 1,
  inapplicable = 2,
  unknown = 3,
  invalid_input = 4,
};

struct InvalidInput {
  std::string message;
};

std::string read_file(const std::string& path) {
  if (path == "-") {
    std::ostringstream os;
    os << std::cin.rdbuf();
    return os.str();
  }
  std::ifstream in(path);
  if (!in) throw InvalidInput{"cannot open '" + path + "'"};
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

pis::System load(const std::string& path) {
  pis::ParseResult parsed = pis::parse_system(read_file(path));
  for (const auto& w : parsed.warnings) std::cerr << path << ": warning: " << pis::to_string(w) << '\n';
  if (!parsed.ok()) {
    for (const auto& e : parsed.errors) std::cerr << path << ": error: " << pis::to_string(e) << '\n';
    throw InvalidInput{path + ": " + std::to_string(parsed.errors.size()) + " error(s)"};
  }
  return std::move(*parsed.system);
}

void print_verdict(const char* heading, const pis::Verdict& v) {
  std::cout << heading << ": " << pis::to_string(v.outcome) << '\n';
  if (v.outcome == pis::Outcome::deadlock_witness) std::cout << "  witness: " << pis::to_string(v.witness) << '\n';
  for (const auto& f : v.failures) std::cout << "  " << pis::describe(f) << '\n';
  for (const auto& p : v.non_minimal_protocols) {
    std::cout << "  note: protocol of " << p << " was not minimal and has been minimised\n";
  }
}

int run_validate(const std::string& path) {
  pis::ParseResult parsed = pis::parse_system(read_file(path));
  for (const auto& e : parsed.errors) std::cout << "error: " << pis::to_string(e) << '\n';
  for (const auto& w : parsed.warnings) std::cout << "warning: " << pis::to_string(w) << '\n';
  if (parsed.ok()) std::cout << "valid\n";
  return parsed.ok() ? 0 : invalid_input;
}

int run_check(const std::string& path, bool oracle, std::size_t budget) {
  const pis::System system = load(path);
  if (!oracle) {
    const pis::Verdict v = pis::check_theorem(system, budget);
    print_verdict("theorem", v);
    return v.outcome == pis::Outcome::deadlock_free_by_theorem ? deadlock_free : inapplicable;
  }

  const pis::CrossValidation cv = pis::cross_validate(system, budget);
  print_verdict("theorem", cv.theorem);
  if (!cv.oracle) {
    std::cout << "oracle: unknown (state budget " << budget << " exceeded)\n";
    return cv.theorem.outcome == pis::Outcome::deadlock_free_by_theorem ? deadlock_free : unknown;
  }
  print_verdict("oracle", *cv.oracle);
  if (cv.soundness_violation()) std::cout << "SOUNDNESS VIOLATION\n";
  else std::cout << "consistent\n";
  return cv.oracle->outcome == pis::Outcome::deadlock_witness ? witness_found : deadlock_free;
}

int run_conformance(const std::string& path) {
  const pis::System system = load(path);
  std::cout << "port,conform,protocol_states,minimal_states,minimal_tau_free\n";
  bool all = true;
  for (const auto& p : system.all_ports()) {
    const auto& protocol = system.protocols.at(p);
    const pis::ActionLts minimal = pis::minimize(protocol);
    const bool ok = pis::conforms(system, p);
    all = all && ok;
    std::cout << p << ',' << (ok ? "yes" : "no") << ',' << protocol.state_count() << ',' << minimal.state_count()
              << ',' << (pis::is_tau_free(minimal) ? "yes" : "no") << '\n';
  }
  return all ? 0 : inapplicable;
}

int run_minimize(const std::string& path, const std::string& port) {
  const pis::System system = load(path);
  const auto dot = port.find('.');
  if (dot == std::string::npos) throw InvalidInput{"expected <cid>.<pid>, got '" + port + "'"};
  const pis::PortRef p{port.substr(0, dot), port.substr(dot + 1)};
  auto it = system.protocols.find(p);
  if (it == system.protocols.end()) throw InvalidInput{"unknown port " + port};
  pis::render_lts(std::cout, "protocol", port, pis::minimize(it->second));
  return 0;
}

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"pis: compositional deadlock checking for protocol interaction systems"};
  app.require_subcommand(1);

  std::string file;
  bool with_oracle = false;
  std::size_t budget = pis::state_budget_from_env();

  auto* validate = app.add_subcommand("validate", "check well-formedness; exit 0 iff valid");
  validate->add_option("file", file, "system description ('-' for stdin)")->required();

  auto* check = app.add_subcommand("check", "decide deadlock-freedom from port protocols");
  check->add_option("file", file, "system description ('-' for stdin)")->required();
  check->add_flag("--oracle", with_oracle, "also explore the global behavior and cross-validate");
  check->add_option("--budget", budget, "composite state budget (default: PIS_BUDGET or 1000000)");

  auto* conformance = app.add_subcommand("conformance", "per-port conformance table");
  conformance->add_option("file", file, "system description")->required();

  bool dot = false;
  auto* graph = app.add_subcommand("graph", "protocol communication graph");
  graph->add_option("file", file, "system description")->required();
  graph->add_flag("--dot", dot, "emit Graphviz (the only supported output)");

  std::string port;
  auto* minimize = app.add_subcommand("minimize", "print the minimised protocol of a port");
  minimize->add_option("file", file, "system description")->required();
  minimize->add_option("port", port, "<cid>.<pid>")->required();

  std::vector<std::string> gen_args;
  auto* gen = app.add_subcommand("gen", "emit a generated system: ex1 | star <n> | ring <k> | mismatch");
  gen->add_option("what", gen_args, "generator and its arguments")->required()->expected(1, 2);

  std::string bench_family;
  std::vector<int> bench_n;
  auto* bench = app.add_subcommand("bench", "scaling table as CSV: n,theorem_cost,baseline_cost,theorem_ms,baseline_ms");
  bench->add_option("family", bench_family, "system family (star)")->required()->check(CLI::IsMember({"star"}));
  bench->add_option("--n", bench_n, "values of n")->required()->delimiter(',')->check(CLI::PositiveNumber);

  CLI11_PARSE(app, argc, argv);

  try {
    if (*validate) return run_validate(file);
    if (*check) return run_check(file, with_oracle, budget);
    if (*conformance) return run_conformance(file);
    if (*graph) {
      std::cout << pis::emit_dot(pis::comm_graph(load(file)));
      return 0;
    }
    if (*minimize) return run_minimize(file, port);
    if (*gen) {
      const std::string& what = gen_args[0];
      auto count = [&]() {
        if (gen_args.size() != 2) throw InvalidInput{"gen " + what + " needs a size argument"};
        return std::stoi(gen_args[1]);
      };
      if (what == "ex1") std::cout << pis::render_system(pis::generate_ex1());
      else if (what == "star") std::cout << pis::render_system(pis::generate_star(count()));
      else if (what == "ring") std::cout << pis::render_system(pis::generate_ring(count()));
      else if (what == "mismatch") std::cout << pis::render_system(pis::generate_pair_mismatch());
      else throw InvalidInput{"unknown generator '" + what + "'"};
      return 0;
    }
    if (*bench) {
      std::cout << pis::render_csv(pis::bench_scaling(bench_n));
      return 0;
    }
  } catch (const InvalidInput& e) {
    std::cerr << "pis: " << e.message << '\n';
    return invalid_input;
  } catch (const pis::ValidationError& e) {
    std::cerr << "pis: " << e.what() << '\n';
    return invalid_input;
  } catch (const pis::BudgetExceeded& e) {
    std::cerr << "pis: " << e.what() << '\n';
    return unknown;
  } catch (const std::exception& e) {
    std::cerr << "pis: " << e.what() << '\n';
    return invalid_input;
  }
  return 0;
}
