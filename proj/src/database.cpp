#include "symba/database.hpp"

namespace symba {

PredicateKey predicate_key(const Literal& l) {
  PredicateKey k;
  k.functor = l.term->name();
  k.arity = l.term->is_compound() ? l.term->arity() : 0;
  k.negative = l.negative;
  return k;
}

Database::Database(std::vector<Clause> clauses) {
  for (auto& c : clauses) insert(std::move(c));
}

bool Database::insert(Clause c) {
  PredicateKey key = predicate_key(c.head);
  auto& bucket = index_[key];
  for (std::size_t i : bucket) {
    if (clause_equal(clauses_[i], c)) return false;
  }
  bucket.push_back(clauses_.size());
  clauses_.push_back(std::move(c));
  ++version_;
  return true;
}

const std::vector<std::size_t>& Database::candidates(
    const Literal& goal) const {
  static const std::vector<std::size_t> empty;
  auto it = index_.find(predicate_key(goal));
  return it == index_.end() ? empty : it->second;
}

std::string Database::to_text() const {
  std::string out;
  for (const auto& c : clauses_) {
    out += format_clause(c);
    out += '\n';
  }
  return out;
}

}  // namespace symba
