#include "symba/builtins.hpp"

#include "symba/unify.hpp"

namespace symba {

bool is_comparison_functor(const std::string& name) {
  return name == "==" || name == "<" || name == ">" || name == ">=" ||
         name == "=<";
}

bool is_arithmetic_functor(const std::string& name) {
  return name == "+" || name == "-" || name == "*" || name == "/";
}

bool is_builtin_literal(const Literal& l) {
  const TermPtr& t = l.term;
  if (!t->is_compound() || t->arity() != 2) return false;
  return t->name() == "=" || is_comparison_functor(t->name());
}

std::variant<Rational, std::string> eval_arithmetic(const TermPtr& t) {
  switch (t->kind()) {
    case TermKind::number:
      return t->value();
    case TermKind::variable:
      return "variable " + t->name() + " is not bound to a number";
    case TermKind::atom:
      return "'" + t->name() + "' is not a number";
    case TermKind::compound:
      break;
  }
  if (t->arity() == 1 && t->name() == "-") {
    auto v = eval_arithmetic(t->args()[0]);
    if (auto* err = std::get_if<std::string>(&v)) return *err;
    return -std::get<Rational>(v);
  }
  if (t->arity() == 2 && is_arithmetic_functor(t->name())) {
    auto lhs = eval_arithmetic(t->args()[0]);
    if (auto* err = std::get_if<std::string>(&lhs)) return *err;
    auto rhs = eval_arithmetic(t->args()[1]);
    if (auto* err = std::get_if<std::string>(&rhs)) return *err;
    const Rational& a = std::get<Rational>(lhs);
    const Rational& b = std::get<Rational>(rhs);
    switch (t->name()[0]) {
      case '+': return a + b;
      case '-': return a - b;
      case '*': return a * b;
      case '/':
        if (b == 0) return "division by zero in " + format_term(t);
        return a / b;
    }
  }
  return "'" + format_term(t) + "' is not an arithmetic expression";
}

namespace {

BuiltinResult eval_positive(const TermPtr& t) {
  const std::string& op = t->name();
  const TermPtr& lhs = t->args()[0];
  const TermPtr& rhs = t->args()[1];

  if (op == "=") {
    auto value = eval_arithmetic(rhs);
    if (auto* err = std::get_if<std::string>(&value))
      return BuiltinError{*err + " in " + format_term(t)};
    auto u = unify(lhs, Term::number(std::get<Rational>(value)));
    if (!u) return BuiltinFailure{};
    return BuiltinSuccess{*u};
  }

  if (op == "==") {
    return structural_equal(lhs, rhs) ? BuiltinResult(BuiltinSuccess{})
                                      : BuiltinResult(BuiltinFailure{});
  }

  auto lv = eval_arithmetic(lhs);
  if (auto* err = std::get_if<std::string>(&lv))
    return BuiltinError{*err + " in " + format_term(t)};
  auto rv = eval_arithmetic(rhs);
  if (auto* err = std::get_if<std::string>(&rv))
    return BuiltinError{*err + " in " + format_term(t)};
  const Rational& a = std::get<Rational>(lv);
  const Rational& b = std::get<Rational>(rv);
  bool holds = false;
  if (op == "<") holds = a < b;
  else if (op == ">") holds = a > b;
  else if (op == ">=") holds = a >= b;
  else if (op == "=<") holds = a <= b;
  else return BuiltinError{"unknown builtin '" + op + "'"};
  return holds ? BuiltinResult(BuiltinSuccess{})
               : BuiltinResult(BuiltinFailure{});
}

}  // namespace

BuiltinResult eval_builtin(const Literal& l, const Binding& binding) {
  if (!is_builtin_literal(l))
    return BuiltinError{"'" + format_literal(l) + "' is not a builtin"};
  TermPtr t = substitute(l.term, binding);
  BuiltinResult base = eval_positive(t);
  if (!l.negative) return base;
  // Negation over a builtin succeeds exactly when the positive form is
  // unsatisfiable; a satisfiable form (even one that would bind variables)
  // makes the negation fail.
  if (std::holds_alternative<BuiltinError>(base)) return base;
  if (std::holds_alternative<BuiltinSuccess>(base)) return BuiltinFailure{};
  return BuiltinSuccess{};
}

}  // namespace symba
