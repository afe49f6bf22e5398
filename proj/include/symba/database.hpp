#pragma once

#include "symba/term.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

namespace symba {

// Head index key. Polarity is part of the key: `not p(...)` heads form
// their own predicate space and never resolve positive goals.
struct PredicateKey {
  std::string functor;
  std::size_t arity = 0;
  bool negative = false;

  bool operator<(const PredicateKey& o) const {
    return std::tie(functor, arity, negative) <
           std::tie(o.functor, o.arity, o.negative);
  }
};

PredicateKey predicate_key(const Literal& l);

class Database {
 public:
  Database() = default;
  explicit Database(std::vector<Clause> clauses);

  // Appends unless an equal clause is already present (same head and body;
  // provenance is ignored). Returns whether anything was added. Clause
  // order within a predicate is insertion order, which is the order
  // resolution tries them in.
  bool insert(Clause c);

  const std::vector<Clause>& clauses() const { return clauses_; }
  const Clause& clause_at(std::size_t i) const { return clauses_[i]; }
  std::size_t size() const { return clauses_.size(); }

  // Indices of clauses whose head can match the goal's functor, arity
  // and sign.
  const std::vector<std::size_t>& candidates(const Literal& goal) const;

  // Bumped on every successful insert; cached solver state keyed on this.
  std::uint64_t version() const { return version_; }

  // The program as text, one clause per line, in insertion order.
  std::string to_text() const;

 private:
  std::vector<Clause> clauses_;
  std::map<PredicateKey, std::vector<std::size_t>> index_;
  std::uint64_t version_ = 0;
};

}  // namespace symba
