#pragma once

#include "symba/term.hpp"

#include <cstdint>
#include <optional>
#include <utility>

namespace symba {

// Most general unifier with occurs check. The result is normalized: every
// value is fully resolved, so substitute(a, *u) and substitute(b, *u) are structurally
// equal after a single application.
std::optional<Binding> unify(const TermPtr& a, const TermPtr& b);

// Unification under an existing substitution; on success the result
// contains the seed plus whatever the new equation added, normalized.
std::optional<Binding> unify(const TermPtr& a, const TermPtr& b,
                             const Binding& seed);

// Applies a binding. Bindings are acyclic by construction (the occurs
// check rejects X = f(X)); a cyclic map passed in by hand is reported via
// std::invalid_argument rather than looping forever.
TermPtr substitute(const TermPtr& t, const Binding& binding);
Literal substitute(const Literal& l, const Binding& binding);

// Resolves chains: {X -> Y, Y -> a} becomes {X -> a, Y -> a}. Normalized
// bindings are idempotent under bind.
Binding normalize(const Binding& binding);

// Composition: applies delta to base's values, then adds delta's own
// entries for variables base does not bind.
Binding merge(const Binding& base, const Binding& delta);

// Restriction to the given variable names.
Binding project(const Binding& binding, const std::vector<std::string>& names);

TermPtr rename_variables(const TermPtr& t,
                         const std::map<std::string, std::string>& renaming);
Literal rename_variables(const Literal& l,
                         const std::map<std::string, std::string>& renaming);

// Source of fresh variable numbers for one solving session.
struct VariableCounter {
  std::uint64_t next = 1;
};

// Fresh copy of c with every variable replaced by _V<n>. Distinct calls
// against the same counter never reuse a name. When fresh_to_original is
// given it receives the reverse map, letting callers restore the source
// clause's variable names for display.
Clause rename_apart(const Clause& c, VariableCounter& counter,
                    std::map<std::string, std::string>* fresh_to_original =
                        nullptr);

// Bumps the counter past any _V<n> names already present, so user programs
// that happen to use such names cannot collide with renamed clauses.
void reserve_variable_names(const Clause& c, VariableCounter& counter);
void reserve_variable_names(const Literal& l, VariableCounter& counter);

// Variant-invariant form of a goal: variables renamed to _G0, _G1, ... in
// first-occurrence order. Two goals are variants exactly when their keys
// are equal.
struct CanonicalGoal {
  Literal literal;
  std::string key;
  // original name -> canonical name, first-occurrence order.
  std::vector<std::pair<std::string, std::string>> vars;
};

CanonicalGoal canonicalize_goal(const Literal& goal);

}  // namespace symba
