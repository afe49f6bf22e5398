#include "symba/parser.hpp"

#include "symba/builtins.hpp"

#include <cctype>
#include <map>
#include <utility>

namespace symba {
namespace {

enum class Tok {
  ident,
  variable,
  number,
  lparen,
  rparen,
  comma,
  period,
  turnstile,
  op,
  not_kw,
  eof,
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line = 1;
  std::size_t col = 1;
};

std::string describe(const Token& t) {
  switch (t.kind) {
    case Tok::ident: return "'" + t.text + "'";
    case Tok::variable: return "variable '" + t.text + "'";
    case Tok::number: return "number '" + t.text + "'";
    case Tok::lparen: return "'('";
    case Tok::rparen: return "')'";
    case Tok::comma: return "','";
    case Tok::period: return "'.'";
    case Tok::turnstile: return "':-'";
    case Tok::op: return "'" + t.text + "'";
    case Tok::not_kw: return "'not'";
    case Tok::eof: return "end of input";
  }
  return "token";
}

bool is_lower(char c) { return c >= 'a' && c <= 'z'; }
bool is_upper(char c) { return (c >= 'A' && c <= 'Z') || c == '_'; }
bool is_digit(char c) { return c >= '0' && c <= '9'; }
bool is_ident_char(char c) {
  return is_lower(c) || is_upper(c) || is_digit(c);
}

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) { current_ = scan(); }

  const Token& peek() const { return current_; }
  Token next() {
    Token t = current_;
    current_ = scan();
    return t;
  }

 private:
  char cur() const { return pos_ < src_.size() ? src_[pos_] : '\0'; }
  char ahead(std::size_t n = 1) const {
    return pos_ + n < src_.size() ? src_[pos_ + n] : '\0';
  }
  void advance() {
    if (src_[pos_] == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    ++pos_;
  }

  Token scan() {
    for (;;) {
      while (pos_ < src_.size() &&
             (cur() == ' ' || cur() == '\t' || cur() == '\r' ||
              cur() == '\n')) {
        advance();
      }
      if (cur() == '%') {
        while (pos_ < src_.size() && cur() != '\n') advance();
        continue;
      }
      break;
    }

    Token t;
    t.line = line_;
    t.col = col_;
    if (pos_ >= src_.size()) {
      t.kind = Tok::eof;
      return t;
    }

    char c = cur();
    if (is_digit(c)) {
      std::size_t start = pos_;
      while (is_digit(cur())) advance();
      if (cur() == '.' && is_digit(ahead())) {
        advance();
        while (is_digit(cur())) advance();
      } else if (cur() == 'r' && is_digit(ahead())) {
        advance();
        while (is_digit(cur())) advance();
      }
      t.kind = Tok::number;
      t.text = std::string(src_.substr(start, pos_ - start));
      return t;
    }
    if (is_lower(c) || is_upper(c)) {
      std::size_t start = pos_;
      while (is_ident_char(cur())) advance();
      t.text = std::string(src_.substr(start, pos_ - start));
      if (is_lower(c)) {
        t.kind = t.text == "not" ? Tok::not_kw : Tok::ident;
      } else {
        t.kind = Tok::variable;
      }
      return t;
    }

    switch (c) {
      case '(': advance(); t.kind = Tok::lparen; return t;
      case ')': advance(); t.kind = Tok::rparen; return t;
      case ',': advance(); t.kind = Tok::comma; return t;
      case '.': advance(); t.kind = Tok::period; return t;
      case ':':
        advance();
        if (cur() != '-')
          throw ParseError("expected '-' after ':'", t.line, t.col);
        advance();
        t.kind = Tok::turnstile;
        return t;
      case '=':
        advance();
        t.kind = Tok::op;
        if (cur() == '=') {
          advance();
          t.text = "==";
        } else if (cur() == '<') {
          advance();
          t.text = "=<";
        } else {
          t.text = "=";
        }
        return t;
      case '>':
        advance();
        t.kind = Tok::op;
        if (cur() == '=') {
          advance();
          t.text = ">=";
        } else {
          t.text = ">";
        }
        return t;
      case '<':
        advance();
        if (cur() == '=')
          throw ParseError("'<=' is not an operator; use '=<'", t.line, t.col);
        t.kind = Tok::op;
        t.text = "<";
        return t;
      case '+':
      case '-':
      case '*':
      case '/':
        advance();
        t.kind = Tok::op;
        t.text = std::string(1, c);
        return t;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'",
                         t.line, t.col);
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
  Token current_;
};

TermPtr rename_vars(const TermPtr& t,
                    const std::map<std::string, std::string>& m) {
  switch (t->kind()) {
    case TermKind::variable: {
      auto it = m.find(t->name());
      return it == m.end() ? t : Term::var(it->second);
    }
    case TermKind::compound: {
      std::vector<TermPtr> args;
      args.reserve(t->arity());
      for (const auto& a : t->args()) args.push_back(rename_vars(a, m));
      return Term::compound(t->name(), std::move(args));
    }
    default:
      return t;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view src) : lex_(src) {}

  std::vector<Clause> program() {
    std::vector<Clause> clauses;
    while (lex_.peek().kind != Tok::eof) clauses.push_back(clause(true));
    return clauses;
  }

  Clause single_clause() {
    Clause c = clause(true);
    expect_eof();
    return c;
  }

  Literal single_literal() {
    Literal l = literal();
    l = finalize(l);
    if (lex_.peek().kind == Tok::period) lex_.next();
    expect_eof();
    return l;
  }

  TermPtr single_term() {
    TermPtr t = expr();
    expect_eof();
    std::vector<std::string> names;
    collect_variables(t, names);
    return rename_vars(t, anon_map(names));
  }

 private:
  Clause clause(bool require_period) {
    Token head_tok = lex_.peek();
    Clause c;
    c.head = literal();
    const TermPtr& h = c.head.term;
    if (h->is_compound() &&
        (h->name() == "=" || is_comparison_functor(h->name()))) {
      throw ParseError("'" + h->name() + "' cannot be the head of a clause",
                       head_tok.line, head_tok.col);
    }
    if (lex_.peek().kind == Tok::turnstile) {
      lex_.next();
      c.body.push_back(literal());
      while (lex_.peek().kind == Tok::comma) {
        lex_.next();
        c.body.push_back(literal());
      }
    }
    if (lex_.peek().kind == Tok::period) {
      lex_.next();
    } else if (require_period || lex_.peek().kind != Tok::eof) {
      const Token& t = lex_.peek();
      throw ParseError("expected '.' at end of clause, found " + describe(t),
                       t.line, t.col);
    }
    return finalize(c);
  }

  Literal literal() {
    Token start = lex_.peek();
    Literal l;
    if (start.kind == Tok::not_kw) {
      lex_.next();
      l.negative = true;
      start = lex_.peek();
    }
    l.term = expr();
    if (l.term->is_variable())
      throw ParseError("a variable is not a valid goal", start.line,
                       start.col);
    if (l.term->is_number())
      throw ParseError("a number is not a valid goal", start.line, start.col);
    if (l.term->is_compound() && is_arithmetic_functor(l.term->name()))
      throw ParseError("an arithmetic expression is not a valid goal",
                       start.line, start.col);
    return l;
  }

  TermPtr expr() {
    TermPtr lhs = rel();
    if (lex_.peek().kind == Tok::op && lex_.peek().text == "=") {
      lex_.next();
      TermPtr rhs = rel();
      return Term::compound("=", {lhs, rhs});
    }
    return lhs;
  }

  TermPtr rel() {
    TermPtr lhs = additive();
    if (lex_.peek().kind == Tok::op && is_comparison_functor(lex_.peek().text)) {
      std::string op = lex_.next().text;
      TermPtr rhs = additive();
      return Term::compound(op, {lhs, rhs});
    }
    return lhs;
  }

  TermPtr additive() {
    TermPtr lhs = multiplicative();
    while (lex_.peek().kind == Tok::op &&
           (lex_.peek().text == "+" || lex_.peek().text == "-")) {
      std::string op = lex_.next().text;
      lhs = Term::compound(op, {lhs, multiplicative()});
    }
    return lhs;
  }

  TermPtr multiplicative() {
    TermPtr lhs = unary();
    while (lex_.peek().kind == Tok::op &&
           (lex_.peek().text == "*" || lex_.peek().text == "/")) {
      std::string op = lex_.next().text;
      lhs = Term::compound(op, {lhs, unary()});
    }
    return lhs;
  }

  TermPtr unary() {
    if (lex_.peek().kind == Tok::op && lex_.peek().text == "-") {
      lex_.next();
      TermPtr operand = unary();
      if (operand->is_number()) return Term::number(-operand->value());
      return Term::compound("-", {operand});
    }
    return primary();
  }

  TermPtr primary() {
    Token t = lex_.next();
    switch (t.kind) {
      case Tok::number: {
        auto value = parse_number(t.text);
        if (!value)
          throw ParseError("invalid number '" + t.text + "'", t.line, t.col);
        return Term::number(*value);
      }
      case Tok::variable:
        if (t.text == "_")
          return Term::var("_#" + std::to_string(++anon_count_));
        return Term::var(t.text);
      case Tok::ident: {
        if (lex_.peek().kind != Tok::lparen) return Term::atom(t.text);
        lex_.next();
        if (lex_.peek().kind == Tok::rparen) {
          const Token& r = lex_.peek();
          throw ParseError("empty argument list for '" + t.text + "'", r.line,
                           r.col);
        }
        std::vector<TermPtr> args;
        args.push_back(expr());
        while (lex_.peek().kind == Tok::comma) {
          lex_.next();
          args.push_back(expr());
        }
        expect(Tok::rparen, "')'");
        return Term::compound(t.text, std::move(args));
      }
      case Tok::lparen: {
        TermPtr inner = expr();
        expect(Tok::rparen, "')'");
        return inner;
      }
      default:
        throw ParseError("expected a term, found " + describe(t), t.line,
                         t.col);
    }
  }

  void expect(Tok kind, const std::string& what) {
    const Token& t = lex_.peek();
    if (t.kind != kind)
      throw ParseError("expected " + what + ", found " + describe(t), t.line,
                       t.col);
    lex_.next();
  }

  void expect_eof() {
    const Token& t = lex_.peek();
    if (t.kind != Tok::eof)
      throw ParseError("unexpected " + describe(t) + " after end of input",
                       t.line, t.col);
  }

  // Maps the placeholder names minted for `_` to clause-local _A1, _A2, ...
  // skipping any names the clause already uses.
  std::map<std::string, std::string> anon_map(
      const std::vector<std::string>& names) {
    std::map<std::string, std::string> m;
    int next = 1;
    auto taken = [&](const std::string& candidate) {
      for (const auto& n : names) {
        if (n == candidate) return true;
      }
      return false;
    };
    for (const auto& n : names) {
      if (n.rfind("_#", 0) != 0) continue;
      std::string fresh;
      do {
        fresh = "_A" + std::to_string(next++);
      } while (taken(fresh));
      m[n] = fresh;
    }
    return m;
  }

  Literal finalize(const Literal& l) {
    std::vector<std::string> names;
    collect_variables(l, names);
    auto m = anon_map(names);
    if (m.empty()) return l;
    return Literal{l.negative, rename_vars(l.term, m)};
  }

  Clause finalize(const Clause& c) {
    std::vector<std::string> names;
    collect_variables(c, names);
    auto m = anon_map(names);
    if (m.empty()) return c;
    Clause out;
    out.source = c.source;
    out.head = Literal{c.head.negative, rename_vars(c.head.term, m)};
    out.body.reserve(c.body.size());
    for (const auto& l : c.body)
      out.body.push_back(Literal{l.negative, rename_vars(l.term, m)});
    return out;
  }

  Lexer lex_;
  int anon_count_ = 0;
};

}  // namespace

ParseError::ParseError(const std::string& message, std::size_t line,
                       std::size_t column)
    : std::runtime_error("line " + std::to_string(line) + ", column " +
                         std::to_string(column) + ": " + message),
      line_(line),
      column_(column) {}

std::vector<Clause> parse_program(std::string_view text) {
  return Parser(text).program();
}

Clause parse_clause(std::string_view text) {
  return Parser(text).single_clause();
}

Literal parse_literal(std::string_view text) {
  return Parser(text).single_literal();
}

TermPtr parse_term(std::string_view text) {
  return Parser(text).single_term();
}

}  // namespace symba
