#pragma once

#include "symba/term.hpp"

#include <stdexcept>
#include <string_view>
#include <vector>

namespace symba {

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& message, std::size_t line, std::size_t column);

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

// Program text is a sequence of period-terminated clauses with `%` line
// comments. Each `_` becomes a fresh variable scoped to its clause.
std::vector<Clause> parse_program(std::string_view text);

// Single clause; the trailing period may be omitted. Used for one-line
// statements coming back from the generator.
Clause parse_clause(std::string_view text);

// Single literal such as `is(charlie, cold)` or `not eats(X, mouse)`;
// trailing period optional.
Literal parse_literal(std::string_view text);

// Single term; bare variables and numbers are allowed here.
TermPtr parse_term(std::string_view text);

}  // namespace symba
