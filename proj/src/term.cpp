#include "symba/term.hpp"

#include <stdexcept>
#include <utility>

namespace symba {
namespace {

struct OpInfo {
  int prec;
  bool left_assoc;
};

// Printing precedence; mirrors the parser so output re-parses to the
// same tree. Higher binds tighter.
const OpInfo* binary_op(const std::string& name) {
  static const std::map<std::string, OpInfo> ops = {
      {"=", {1, false}},  {"==", {2, false}}, {"<", {2, false}},
      {">", {2, false}},  {">=", {2, false}}, {"=<", {2, false}},
      {"+", {3, true}},   {"-", {3, true}},   {"*", {4, true}},
      {"/", {4, true}},
  };
  auto it = ops.find(name);
  return it == ops.end() ? nullptr : &it->second;
}

constexpr int kUnaryMinusPrec = 5;
constexpr int kPrimaryPrec = 6;

void format_rec(const TermPtr& t, const FormatOptions& opts, int min_prec,
                std::string& out) {
  switch (t->kind()) {
    case TermKind::variable:
      out += opts.anonymize_variables ? "_" : t->name();
      return;
    case TermKind::atom:
      out += t->name();
      return;
    case TermKind::number:
      out += format_number(t->value());
      return;
    case TermKind::compound:
      break;
  }

  if (t->arity() == 2) {
    if (const OpInfo* op = binary_op(t->name())) {
      bool parens = op->prec < min_prec;
      if (parens) out += '(';
      format_rec(t->args()[0], opts, op->left_assoc ? op->prec : op->prec + 1,
                 out);
      out += ' ';
      out += t->name();
      out += ' ';
      format_rec(t->args()[1], opts, op->prec + 1, out);
      if (parens) out += ')';
      return;
    }
  }
  if (t->arity() == 1 && t->name() == "-") {
    bool parens = kUnaryMinusPrec < min_prec;
    if (parens) out += '(';
    out += '-';
    format_rec(t->args()[0], opts, kUnaryMinusPrec + 1, out);
    if (parens) out += ')';
    return;
  }

  out += t->name();
  out += '(';
  for (std::size_t i = 0; i < t->arity(); ++i) {
    if (i > 0) out += ", ";
    format_rec(t->args()[i], opts, 0, out);
  }
  out += ')';
}

}  // namespace

TermPtr Term::var(std::string name) {
  if (name.empty()) throw std::invalid_argument("variable name is empty");
  return TermPtr(new Term(TermKind::variable, std::move(name), {}, {}));
}

TermPtr Term::atom(std::string symbol) {
  if (symbol.empty()) throw std::invalid_argument("atom symbol is empty");
  return TermPtr(new Term(TermKind::atom, std::move(symbol), {}, {}));
}

TermPtr Term::number(Rational value) {
  return TermPtr(new Term(TermKind::number, {}, std::move(value), {}));
}

TermPtr Term::compound(std::string functor, std::vector<TermPtr> args) {
  if (functor.empty()) throw std::invalid_argument("functor is empty");
  if (args.empty())
    throw std::invalid_argument("compound term needs at least one argument");
  for (const auto& a : args) {
    if (!a) throw std::invalid_argument("null argument in compound term");
  }
  return TermPtr(
      new Term(TermKind::compound, std::move(functor), {}, std::move(args)));
}

int compare_terms(const TermPtr& a, const TermPtr& b) {
  auto rank = [](TermKind k) {
    switch (k) {
      case TermKind::variable: return 0;
      case TermKind::number: return 1;
      case TermKind::atom: return 2;
      case TermKind::compound: return 3;
    }
    return 4;
  };
  if (rank(a->kind()) != rank(b->kind()))
    return rank(a->kind()) < rank(b->kind()) ? -1 : 1;
  switch (a->kind()) {
    case TermKind::variable:
    case TermKind::atom:
      return a->name().compare(b->name());
    case TermKind::number:
      if (a->value() == b->value()) return 0;
      return a->value() < b->value() ? -1 : 1;
    case TermKind::compound: {
      if (int c = a->name().compare(b->name())) return c;
      if (a->arity() != b->arity()) return a->arity() < b->arity() ? -1 : 1;
      for (std::size_t i = 0; i < a->arity(); ++i) {
        if (int c = compare_terms(a->args()[i], b->args()[i])) return c;
      }
      return 0;
    }
  }
  return 0;
}

bool structural_equal(const TermPtr& a, const TermPtr& b) {
  if (a.get() == b.get()) return true;
  return compare_terms(a, b) == 0;
}

bool is_ground(const TermPtr& t) {
  if (t->is_variable()) return false;
  for (const auto& a : t->args()) {
    if (!is_ground(a)) return false;
  }
  return true;
}

void collect_variables(const TermPtr& t, std::vector<std::string>& out) {
  if (t->is_variable()) {
    for (const auto& seen : out) {
      if (seen == t->name()) return;
    }
    out.push_back(t->name());
    return;
  }
  for (const auto& a : t->args()) collect_variables(a, out);
}

bool literal_equal(const Literal& a, const Literal& b) {
  return a.negative == b.negative && structural_equal(a.term, b.term);
}

void collect_variables(const Literal& l, std::vector<std::string>& out) {
  collect_variables(l.term, out);
}

bool clause_equal(const Clause& a, const Clause& b) {
  if (!literal_equal(a.head, b.head)) return false;
  if (a.body.size() != b.body.size()) return false;
  for (std::size_t i = 0; i < a.body.size(); ++i) {
    if (!literal_equal(a.body[i], b.body[i])) return false;
  }
  return true;
}

void collect_variables(const Clause& c, std::vector<std::string>& out) {
  collect_variables(c.head, out);
  for (const auto& l : c.body) collect_variables(l, out);
}

bool binding_equal(const Binding& a, const Binding& b) {
  if (a.size() != b.size()) return false;
  auto ia = a.begin();
  auto ib = b.begin();
  for (; ia != a.end(); ++ia, ++ib) {
    if (ia->first != ib->first) return false;
    if (!structural_equal(ia->second, ib->second)) return false;
  }
  return true;
}

std::string format_term(const TermPtr& t, const FormatOptions& opts) {
  std::string out;
  format_rec(t, opts, 0, out);
  return out;
}

std::string format_literal(const Literal& l, const FormatOptions& opts) {
  std::string out = l.negative ? "not " : "";
  return out + format_term(l.term, opts);
}

std::string format_clause(const Clause& c) {
  std::string out = format_literal(c.head);
  if (!c.body.empty()) {
    out += " :- ";
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      if (i > 0) out += ", ";
      out += format_literal(c.body[i]);
    }
  }
  out += '.';
  return out;
}

std::string format_binding(const Binding& b) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, value] : b) {
    if (!first) out += ", ";
    first = false;
    out += name;
    out += " = ";
    out += format_term(value);
  }
  out += '}';
  return out;
}

}  // namespace symba
