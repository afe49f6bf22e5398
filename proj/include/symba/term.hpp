#pragma once

#include "symba/number.hpp"

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

namespace symba {

enum class TermKind { variable, atom, number, compound };

class Term;
using TermPtr = std::shared_ptr<const Term>;

// Immutable first-order term. Shared subterms are safe to alias because
// nothing mutates a Term after construction.
class Term {
 public:
  static TermPtr var(std::string name);
  static TermPtr atom(std::string symbol);
  static TermPtr number(Rational value);
  // Compounds have at least one argument; zero-arity symbols are atoms.
  static TermPtr compound(std::string functor, std::vector<TermPtr> args);

  TermKind kind() const { return kind_; }
  bool is_variable() const { return kind_ == TermKind::variable; }
  bool is_atom() const { return kind_ == TermKind::atom; }
  bool is_number() const { return kind_ == TermKind::number; }
  bool is_compound() const { return kind_ == TermKind::compound; }

  // Variable name, atom symbol, or compound functor.
  const std::string& name() const { return name_; }
  const Rational& value() const { return value_; }
  const std::vector<TermPtr>& args() const { return args_; }
  std::size_t arity() const { return args_.size(); }

 private:
  Term(TermKind kind, std::string name, Rational value,
       std::vector<TermPtr> args)
      : kind_(kind),
        name_(std::move(name)),
        value_(std::move(value)),
        args_(std::move(args)) {}

  TermKind kind_;
  std::string name_;
  Rational value_;
  std::vector<TermPtr> args_;
};

bool structural_equal(const TermPtr& a, const TermPtr& b);
// Total order: variable < number < atom < compound, then by name/value,
// then arity, then arguments left to right. Gives deterministic sorts.
int compare_terms(const TermPtr& a, const TermPtr& b);
bool is_ground(const TermPtr& t);
// Appends distinct variable names in first-occurrence order.
void collect_variables(const TermPtr& t, std::vector<std::string>& out);

// An atom or compound term with a sign. `not p(X)` is the negative literal
// over p(X); plain terms are positive literals.
struct Literal {
  bool negative = false;
  TermPtr term;
};

bool literal_equal(const Literal& a, const Literal& b);
void collect_variables(const Literal& l, std::vector<std::string>& out);

enum class ClauseSource { parsed, generated, fixture };

struct Clause {
  Literal head;
  std::vector<Literal> body;
  ClauseSource source = ClauseSource::parsed;

  bool is_fact() const { return body.empty(); }
};

// Equality over head and body only; provenance does not distinguish clauses.
bool clause_equal(const Clause& a, const Clause& b);
void collect_variables(const Clause& c, std::vector<std::string>& out);

// Substitution from variable names to terms. std::map keeps iteration
// order stable so formatted bindings and serialized results are
// deterministic.
using Binding = std::map<std::string, TermPtr>;

bool binding_equal(const Binding& a, const Binding& b);

struct FormatOptions {
  // Print every variable as "_"; used when a goal is shown to the
  // statement generator, which should not see internal variable names.
  bool anonymize_variables = false;
};

// Arithmetic and comparison functors print infix with minimal parentheses;
// everything else prints as functor(args). Output re-parses to an equal term.
std::string format_term(const TermPtr& t, const FormatOptions& opts = {});
std::string format_literal(const Literal& l, const FormatOptions& opts = {});
std::string format_clause(const Clause& c);
std::string format_binding(const Binding& b);

}  // namespace symba
