#pragma once

#include "symba/term.hpp"

#include <optional>
#include <string>
#include <variant>

namespace symba {

// Comparison goals: == < > >= =<
bool is_comparison_functor(const std::string& name);
// Arithmetic value constructors: + - * / (never valid as goals or heads).
bool is_arithmetic_functor(const std::string& name);
// True for literals the engine evaluates itself instead of resolving
// against the database: X = Expr and ground comparisons.
bool is_builtin_literal(const Literal& l);

struct BuiltinSuccess {
  // New bindings produced by the evaluation (empty for checks that
  // succeed without binding anything).
  Binding delta;
};
struct BuiltinFailure {};
struct BuiltinError {
  std::string message;
};

using BuiltinResult =
    std::variant<BuiltinSuccess, BuiltinFailure, BuiltinError>;

// Evaluates a builtin literal under the given binding.
//
//   X = Expr   evaluates Expr arithmetically and unifies the result with X.
//   a == b     structural equality after binding (no arithmetic).
//   < > >= =<  both sides must evaluate to numbers.
//
// Unbound variables inside arithmetic, division by zero, and non-numeric
// comparison operands are errors, not failures: the goal is ill-posed
// rather than false, and the caller reports it as a diagnostic.
BuiltinResult eval_builtin(const Literal& l, const Binding& binding);

// Evaluates Expr to a number if possible: numbers evaluate to themselves,
// + - * / recurse, anything else (variables, atoms, predicates) is an
// error described in the returned message.
std::variant<Rational, std::string> eval_arithmetic(const TermPtr& t);

}  // namespace symba
