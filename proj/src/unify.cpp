#include "symba/unify.hpp"

#include <set>
#include <stdexcept>

namespace symba {
namespace {

TermPtr walk(TermPtr t, const Binding& s) {
  while (t->is_variable()) {
    auto it = s.find(t->name());
    if (it == s.end()) break;
    t = it->second;
  }
  return t;
}

bool occurs(const std::string& name, const TermPtr& t, const Binding& s) {
  TermPtr w = walk(t, s);
  if (w->is_variable()) return w->name() == name;
  for (const auto& a : w->args()) {
    if (occurs(name, a, s)) return true;
  }
  return false;
}

bool unify_rec(TermPtr a, TermPtr b, Binding& s) {
  a = walk(std::move(a), s);
  b = walk(std::move(b), s);
  if (a->is_variable() && b->is_variable() && a->name() == b->name())
    return true;
  if (a->is_variable()) {
    if (occurs(a->name(), b, s)) return false;
    s[a->name()] = b;
    return true;
  }
  if (b->is_variable()) {
    if (occurs(b->name(), a, s)) return false;
    s[b->name()] = a;
    return true;
  }
  switch (a->kind()) {
    case TermKind::atom:
      return b->is_atom() && a->name() == b->name();
    case TermKind::number:
      return b->is_number() && a->value() == b->value();
    case TermKind::compound: {
      if (!b->is_compound() || a->name() != b->name() ||
          a->arity() != b->arity())
        return false;
      for (std::size_t i = 0; i < a->arity(); ++i) {
        if (!unify_rec(a->args()[i], b->args()[i], s)) return false;
      }
      return true;
    }
    default:
      return false;
  }
}

TermPtr bind_rec(const TermPtr& t, const Binding& b,
                 std::set<std::string>& active) {
  switch (t->kind()) {
    case TermKind::variable: {
      auto it = b.find(t->name());
      if (it == b.end()) return t;
      if (!active.insert(t->name()).second)
        throw std::invalid_argument("cyclic binding through " + t->name());
      TermPtr out = bind_rec(it->second, b, active);
      active.erase(t->name());
      return out;
    }
    case TermKind::compound: {
      bool changed = false;
      std::vector<TermPtr> args;
      args.reserve(t->arity());
      for (const auto& a : t->args()) {
        TermPtr bound = bind_rec(a, b, active);
        changed = changed || bound.get() != a.get();
        args.push_back(std::move(bound));
      }
      if (!changed) return t;
      return Term::compound(t->name(), std::move(args));
    }
    default:
      return t;
  }
}

}  // namespace

std::optional<Binding> unify(const TermPtr& a, const TermPtr& b,
                             const Binding& seed) {
  Binding s = seed;
  if (!unify_rec(a, b, s)) return std::nullopt;
  return normalize(s);
}

std::optional<Binding> unify(const TermPtr& a, const TermPtr& b) {
  return unify(a, b, {});
}

TermPtr substitute(const TermPtr& t, const Binding& binding) {
  std::set<std::string> active;
  return bind_rec(t, binding, active);
}

Literal substitute(const Literal& l, const Binding& binding) {
  return Literal{l.negative, substitute(l.term, binding)};
}

Binding normalize(const Binding& binding) {
  Binding out;
  for (const auto& [name, value] : binding) out[name] = substitute(value, binding);
  return out;
}

Binding merge(const Binding& base, const Binding& delta) {
  Binding out;
  for (const auto& [name, value] : base) out[name] = substitute(value, delta);
  for (const auto& [name, value] : delta) {
    if (!out.count(name)) out[name] = value;
  }
  return normalize(out);
}

Binding project(const Binding& binding,
                const std::vector<std::string>& names) {
  Binding out;
  for (const auto& n : names) {
    auto it = binding.find(n);
    if (it != binding.end()) out[n] = it->second;
  }
  return out;
}

TermPtr rename_variables(const TermPtr& t,
                         const std::map<std::string, std::string>& renaming) {
  switch (t->kind()) {
    case TermKind::variable: {
      auto it = renaming.find(t->name());
      return it == renaming.end() ? t : Term::var(it->second);
    }
    case TermKind::compound: {
      std::vector<TermPtr> args;
      args.reserve(t->arity());
      for (const auto& a : t->args())
        args.push_back(rename_variables(a, renaming));
      return Term::compound(t->name(), std::move(args));
    }
    default:
      return t;
  }
}

Literal rename_variables(const Literal& l,
                         const std::map<std::string, std::string>& renaming) {
  return Literal{l.negative, rename_variables(l.term, renaming)};
}

Clause rename_apart(const Clause& c, VariableCounter& counter,
                    std::map<std::string, std::string>* fresh_to_original) {
  std::vector<std::string> names;
  collect_variables(c, names);
  std::map<std::string, std::string> renaming;
  for (const auto& n : names) {
    std::string fresh = "_V" + std::to_string(counter.next++);
    if (fresh_to_original) (*fresh_to_original)[fresh] = n;
    renaming[n] = std::move(fresh);
  }
  Clause out;
  out.source = c.source;
  out.head = rename_variables(c.head, renaming);
  out.body.reserve(c.body.size());
  for (const auto& l : c.body) out.body.push_back(rename_variables(l, renaming));
  return out;
}

namespace {

void reserve_names(const std::vector<std::string>& names,
                   VariableCounter& counter) {
  for (const auto& n : names) {
    if (n.rfind("_V", 0) != 0 || n.size() <= 2) continue;
    bool digits = true;
    for (std::size_t i = 2; i < n.size(); ++i) {
      if (n[i] < '0' || n[i] > '9') {
        digits = false;
        break;
      }
    }
    if (!digits) continue;
    std::uint64_t v = 0;
    try {
      v = std::stoull(n.substr(2));
    } catch (const std::exception&) {
      continue;
    }
    if (v + 1 > counter.next) counter.next = v + 1;
  }
}

}  // namespace

void reserve_variable_names(const Clause& c, VariableCounter& counter) {
  std::vector<std::string> names;
  collect_variables(c, names);
  reserve_names(names, counter);
}

void reserve_variable_names(const Literal& l, VariableCounter& counter) {
  std::vector<std::string> names;
  collect_variables(l, names);
  reserve_names(names, counter);
}

CanonicalGoal canonicalize_goal(const Literal& goal) {
  std::vector<std::string> names;
  collect_variables(goal, names);
  CanonicalGoal out;
  std::map<std::string, std::string> renaming;
  for (std::size_t i = 0; i < names.size(); ++i) {
    std::string canon = "_G" + std::to_string(i);
    renaming[names[i]] = canon;
    out.vars.emplace_back(names[i], canon);
  }
  out.literal = rename_variables(goal, renaming);
  out.key = format_literal(out.literal);
  return out;
}

}  // namespace symba
