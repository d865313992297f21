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

/// \file format.hpp
/// The line-oriented system description format.
///
///     system <name>
///     component <cid>
///     port <cid>.<pid> alphabet <action> [<action> ...]
///     behavior <cid> init <state> [<state> ...]
///     behavior <cid> trans <state> <action> <state>
///     protocol <cid>.<pid> init <state> [<state> ...]
///     protocol <cid>.<pid> trans <state> <action|tau> <state>
///     interaction <action> [<action> ...]
///
/// `#` starts a comment.  Components must be declared before their ports,
/// ports before their protocol lines; everything else is unordered.

#pragma once

#include "pis/lts.hpp"
#include "pis/system.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

namespace pis {

struct Diagnostic {
  std::size_t line = 0;   // 1-based; 0 when not attributable to a line
  std::size_t column = 0; // 1-based
  std::string message;

  bool operator==(const Diagnostic&) const = default;
};

inline std::string to_string(const Diagnostic& d) {
  if (d.line == 0) return d.message;
  return "line " + std::to_string(d.line) + ":" + std::to_string(d.column) + ": " + d.message;
}

struct ParseResult {
  std::optional<System> system;
  std::vector<Diagnostic> errors;
  std::vector<Diagnostic> warnings;

  bool ok() const { return system.has_value(); }
};

namespace detail {

struct Token {
  std::string_view text;
  std::size_t column;
};

inline std::vector<Token> tokenize(std::string_view line) {
  if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
  std::vector<Token> tokens;
  std::size_t k = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f'; };
  while (k < line.size()) {
    while (k < line.size() && is_space(line[k])) ++k;
    std::size_t start = k;
    while (k < line.size() && !is_space(line[k])) ++k;
    if (k > start) tokens.push_back({line.substr(start, k - start), start + 1});
  }
  return tokens;
}

class SystemParser {
public:
  ParseResult parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
      std::size_t end = text.find('\n', pos);
      if (end == std::string_view::npos) end = text.size();
      ++line_no;
      line_ = line_no;
      parse_line(tokenize(text.substr(pos, end - pos)));
      pos = end + 1;
    }
    finish();

    ParseResult result;
    result.errors = std::move(errors_);
    if (result.errors.empty()) {
      for (const auto& v : validate(system_)) {
        Diagnostic d{line_of(v.subject), 0, v.message};
        if (d.line) d.column = 1;
        (v.severity == Severity::error ? result.errors : result.warnings).push_back(std::move(d));
      }
    }
    if (result.errors.empty()) result.system = std::move(system_);
    return result;
  }

private:
  template <class A>
  struct PendingLts {
    LtsBuilder<A> builder;
    std::size_t first_line = 0;
  };

  void error(const Token& at, std::string message) { errors_.push_back({line_, at.column, std::move(message)}); }
  void error_after(const std::vector<Token>& tokens, std::string message) {
    const Token& last = tokens.back();
    errors_.push_back({line_, last.column + last.text.size(), std::move(message)});
  }

  void remember(const std::string& subject) { subject_line_.try_emplace(subject, line_); }

  std::size_t line_of(const std::string& subject) const {
    auto it = subject_line_.find(subject);
    return it == subject_line_.end() ? 0 : it->second;
  }

  bool check_name(const Token& t, std::string_view what) {
    if (t.text == tau_token) {
      error(t, std::string("'tau' is reserved and cannot be used as ") + std::string(what));
      return false;
    }
    return true;
  }

  std::optional<PortRef> port_ref(const Token& t) {
    const auto dot = t.text.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == t.text.size()) {
      error(t, "expected <component>.<port>, found '" + std::string(t.text) + "'");
      return std::nullopt;
    }
    return PortRef{std::string(t.text.substr(0, dot)), std::string(t.text.substr(dot + 1))};
  }

  void parse_line(const std::vector<Token>& tokens) {
    if (tokens.empty()) return;
    const std::string_view keyword = tokens[0].text;
    if (keyword == "system") {
      if (tokens.size() != 2) return error_after(tokens, "expected: system <name>");
      if (have_name_) return error(tokens[0], "duplicate system declaration");
      have_name_ = true;
      system_.name = std::string(tokens[1].text);
    } else if (keyword == "component") {
      if (tokens.size() != 2) return error_after(tokens, "expected: component <cid>");
      const std::string c(tokens[1].text);
      if (c.find('.') != std::string::npos) return error(tokens[1], "component ids cannot contain '.'");
      if (system_.components.contains(c)) return error(tokens[1], "duplicate component '" + c + "'");
      remember(c);
      system_.add_component(c);
    } else if (keyword == "port") {
      parse_port(tokens);
    } else if (keyword == "behavior") {
      parse_behavior(tokens);
    } else if (keyword == "protocol") {
      parse_protocol(tokens);
    } else if (keyword == "interaction") {
      if (tokens.size() < 2) return error_after(tokens, "expected: interaction <action> [<action> ...]");
      std::vector<ActionId> actions;
      for (std::size_t k = 1; k < tokens.size(); ++k) {
        if (!check_name(tokens[k], "an action name")) return;
        actions.emplace_back(tokens[k].text);
      }
      Interaction alpha(std::move(actions));
      remember(to_string(alpha));
      system_.add_interaction(std::move(alpha));
    } else {
      error(tokens[0], "unknown keyword '" + std::string(keyword) +
                           "'; expected system, component, port, behavior, protocol or interaction");
    }
  }

  void parse_port(const std::vector<Token>& tokens) {
    if (tokens.size() < 3 || tokens[2].text != "alphabet") {
      return error_after(tokens, "expected: port <cid>.<pid> alphabet <action> ...");
    }
    auto p = port_ref(tokens[1]);
    if (!p) return;
    if (!system_.components.contains(p->component)) {
      return error(tokens[1], "port of undeclared component '" + p->component + "'");
    }
    if (system_.has_port(*p)) return error(tokens[1], "duplicate port " + to_string(*p));
    std::set<ActionId> alphabet;
    for (std::size_t k = 3; k < tokens.size(); ++k) {
      if (!check_name(tokens[k], "an action name")) return;
      const std::string a(tokens[k].text);
      remember(a);
      alphabet.insert(a);
    }
    remember(to_string(*p));
    system_.add_port(*p, std::move(alphabet));
  }

  template <class Key>
  bool parse_lts_line(const std::vector<Token>& tokens, PendingLts<ActionId>& pending, bool allow_tau,
                      const Key& owner) {
    if (pending.first_line == 0) pending.first_line = line_;
    const std::string_view kind = tokens.size() > 2 ? tokens[2].text : std::string_view{};
    if (kind == "init") {
      if (tokens.size() < 4) {
        error_after(tokens, "expected at least one initial state");
        return false;
      }
      for (std::size_t k = 3; k < tokens.size(); ++k) pending.builder.initial(std::string(tokens[k].text));
      return true;
    }
    if (kind == "trans") {
      if (tokens.size() != 6) {
        error_after(tokens, "expected: trans <state> <action> <state>");
        return false;
      }
      const std::string source(tokens[3].text), target(tokens[5].text);
      if (tokens[4].text == tau_token) {
        if (!allow_tau) {
          error(tokens[4], "behavior of component " + owner + " cannot use tau");
          return false;
        }
        pending.builder.tau(source, target);
      } else {
        pending.builder.transition(source, std::string(tokens[4].text), target);
      }
      return true;
    }
    error(tokens.size() > 2 ? tokens[2] : tokens.back(), "expected 'init' or 'trans'");
    return false;
  }

  void parse_behavior(const std::vector<Token>& tokens) {
    if (tokens.size() < 2) return error_after(tokens, "expected: behavior <cid> init|trans ...");
    const std::string c(tokens[1].text);
    parse_lts_line(tokens, behaviors_[c], false, c);
  }

  void parse_protocol(const std::vector<Token>& tokens) {
    if (tokens.size() < 2) return error_after(tokens, "expected: protocol <cid>.<pid> init|trans ...");
    auto p = port_ref(tokens[1]);
    if (!p) return;
    if (!system_.has_port(*p)) return error(tokens[1], "protocol for undeclared port " + to_string(*p));
    parse_lts_line(tokens, protocols_[*p], true, to_string(*p));
  }

  void finish() {
    for (auto& [c, pending] : behaviors_) {
      if (!system_.components.contains(c)) {
        errors_.push_back({pending.first_line, 1, "behavior given for undeclared component '" + c + "'"});
      } else if (!pending.builder.has_initial()) {
        errors_.push_back({pending.first_line, 1, "behavior of component " + c + " has no initial state"});
      } else {
        system_.behaviors.emplace(c, pending.builder.build());
      }
    }
    for (const auto& c : system_.components) {
      if (!behaviors_.contains(c)) {
        errors_.push_back({line_of(c), 1, "component " + c + " has no behavior (no init line)"});
      }
    }
    for (auto& [p, pending] : protocols_) {
      if (!pending.builder.has_initial()) {
        errors_.push_back({pending.first_line, 1, "protocol of port " + to_string(p) + " has no initial state"});
      } else {
        system_.protocols.emplace(p, pending.builder.build());
      }
    }
    for (const auto& p : system_.all_ports()) {
      if (!protocols_.contains(p)) {
        errors_.push_back({line_of(to_string(p)), 1, "port " + to_string(p) + " has no protocol (no init line)"});
      }
    }
    std::stable_sort(errors_.begin(), errors_.end(),
                     [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  }

  System system_;
  bool have_name_ = false;
  std::size_t line_ = 0;
  std::vector<Diagnostic> errors_;
  std::map<std::string, std::size_t> subject_line_;
  std::map<ComponentId, PendingLts<ActionId>> behaviors_;
  std::map<PortRef, PendingLts<ActionId>> protocols_;
};

} // namespace detail

/// Parses and validates a system description.  On failure `system` is
/// empty and `errors` lists every syntax error, or every error-grade
/// validation descriptor when the syntax was fine.
inline ParseResult parse_system(std::string_view text) { return detail::SystemParser().parse(text); }

/// Writes `lts` as `<keyword> <owner> init ...` / `... trans ...` lines.
template <class A>
void render_lts(std::ostream& os, std::string_view keyword, std::string_view owner, const Lts<A>& lts) {
  os << keyword << ' ' << owner << " init";
  for (StateId s : lts.initials()) os << ' ' << lts.state_name(s);
  os << '\n';
  for (const Transition& t : lts.transitions()) {
    os << keyword << ' ' << owner << " trans " << lts.state_name(t.source) << ' ' << to_string(lts.label_of(t))
       << ' ' << lts.state_name(t.target) << '\n';
  }
}

/// Canonical text form; `parse_system(render_system(s))` yields `s` again.
inline std::string render_system(const System& system) {
  std::ostringstream os;
  os << "system " << system.name << '\n';
  for (const auto& c : system.components) {
    os << "\ncomponent " << c << '\n';
    auto ports = system.ports.find(c);
    if (ports != system.ports.end()) {
      for (const auto& p : ports->second) {
        os << "port " << c << '.' << p << " alphabet";
        auto alphabet = system.alphabets.find({c, p});
        if (alphabet != system.alphabets.end()) {
          for (const auto& a : alphabet->second) os << ' ' << a;
        }
        os << '\n';
      }
    }
    if (auto b = system.behaviors.find(c); b != system.behaviors.end()) render_lts(os, "behavior", c, b->second);
    if (ports != system.ports.end()) {
      for (const auto& p : ports->second) {
        if (auto pr = system.protocols.find({c, p}); pr != system.protocols.end()) {
          render_lts(os, "protocol", c + "." + p, pr->second);
        }
      }
    }
  }
  if (!system.interactions.empty()) os << '\n';
  for (const auto& alpha : system.interactions) {
    os << "interaction";
    for (const auto& a : alpha.actions()) os << ' ' << a;
    os << '\n';
  }
  return os.str();
}

} // namespace pis
