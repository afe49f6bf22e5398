#include "symba/solver.hpp"

#include <stdexcept>
#include <utility>

namespace symba {
namespace {

// Simultaneous variable rename across a whole proof subtree: goals, bound
// goals, binding keys and values, clause instances.
void rename_proof(ProofNode& node, const std::map<std::string, std::string>& m) {
  node.goal = rename_variables(node.goal, m);
  node.bound_goal = rename_variables(node.bound_goal, m);
  Binding b;
  for (const auto& [k, v] : node.binding) {
    auto it = m.find(k);
    b[it == m.end() ? k : it->second] = rename_variables(v, m);
  }
  node.binding = std::move(b);
  if (node.clause_used) {
    Clause& cl = *node.clause_used;
    cl.head = rename_variables(cl.head, m);
    for (auto& l : cl.body) l = rename_variables(l, m);
  }
  for (auto& ch : node.children) rename_proof(ch, m);
}

void collect_proof_names(const ProofNode& node, std::set<std::string>& out) {
  std::vector<std::string> names;
  collect_variables(node.goal, names);
  collect_variables(node.bound_goal, names);
  for (const auto& [k, v] : node.binding) {
    names.push_back(k);
    collect_variables(v, names);
  }
  if (node.clause_used) collect_variables(*node.clause_used, names);
  out.insert(names.begin(), names.end());
  for (const auto& ch : node.children) collect_proof_names(ch, out);
}

}  // namespace

// --------------------------------------------------------------------------
// Table

TableEntry* Table::lookup(const Literal& goal) {
  return find(canonicalize_goal(goal).key);
}

const TableEntry* Table::lookup(const Literal& goal) const {
  auto it = entries_.find(canonicalize_goal(goal).key);
  return it == entries_.end() ? nullptr : &it->second;
}

TableEntry* Table::find(const std::string& key) {
  auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

TableEntry& Table::obtain(const Literal& goal) {
  CanonicalGoal cg = canonicalize_goal(goal);
  auto it = entries_.find(cg.key);
  if (it != entries_.end()) return it->second;
  TableEntry e;
  e.goal = std::move(cg);
  e.display_goal = goal;
  e.creation_index = next_creation_++;
  auto [pos, added] = entries_.emplace(e.goal.key, std::move(e));
  order_.push_back(pos->first);
  return pos->second;
}

void Table::clear() {
  entries_.clear();
  order_.clear();
  next_creation_ = 0;
}

// --------------------------------------------------------------------------
// Session

Session::Session(Database db, SolverConfig config, GeneratorHook generator)
    : db_(std::move(db)), cfg_(config), gen_(std::move(generator)) {
  if (cfg_.depth_limit < 1)
    throw std::invalid_argument("depth_limit must be at least 1");
  db_version_seen_ = db_.version();
  for (const auto& c : db_.clauses()) reserve_variable_names(c, counter_);
}

SolveResult Session::solve(const TermPtr& goal) {
  return solve(Literal{false, goal});
}

SolveResult Session::solve(const Literal& goal) {
  if (!goal.term || goal.term->is_variable() || goal.term->is_number())
    throw std::invalid_argument("goal must be an atom or compound term");
  return run(goal);
}

void Session::add_diagnostic(const std::string& kind,
                             const std::string& message) {
  if (!diag_seen_.insert(kind + "|" + message).second) return;
  diags_.push_back(Diagnostic{kind, message});
}

bool Session::generation_exhausted(const std::string& key) const {
  if (!gen_) return true;
  auto it = generation_attempts_.find(key);
  return it != generation_attempts_.end() &&
         it->second >= cfg_.max_generation_rounds_per_goal;
}

SolveResult Session::run(const Literal& goal) {
  stats_ = SolveStats{};
  diags_.clear();
  diag_seen_.clear();

  // Builtins are evaluated directly; they are never tabled or generated for.
  if (is_builtin_literal(goal)) {
    SolveResult res;
    BuiltinResult r = eval_builtin(goal, {});
    if (auto* err = std::get_if<BuiltinError>(&r)) {
      add_diagnostic("builtin_error", err->message);
    } else if (auto* ok = std::get_if<BuiltinSuccess>(&r)) {
      std::vector<std::string> names;
      collect_variables(goal, names);
      res.bindings.push_back(project(ok->delta, names));
      ProofNode n;
      n.goal = goal;
      n.binding = ok->delta;
      n.bound_goal = substitute(goal, ok->delta);
      n.kind = ProofKind::arithmetic;
      res.proofs.push_back(std::move(n));
    }
    res.stats = stats_;
    res.diagnostics = diags_;
    return res;
  }

  if (db_.version() != db_version_seen_) {
    table_.clear();
    answer_seq_ = 0;
    db_version_seen_ = db_.version();
    for (const auto& c : db_.clauses()) reserve_variable_names(c, counter_);
  }
  reserve_variable_names(goal, counter_);

  std::size_t generation_invocations = 0;
  for (;;) {
    symbolic_rounds(goal);
    TableEntry* root = table_.lookup(goal);
    if (root && !root->answers.empty()) break;
    if (!gen_) break;

    std::string target;
    for (const auto& key : failures_) {
      if (!generation_exhausted(key)) {
        target = key;
        break;
      }
    }
    if (target.empty()) break;
    if (++generation_invocations > 1000) {
      add_diagnostic("generation_limit",
                     "statement generation exceeded 1000 invocations");
      break;
    }

    ++generation_attempts_[target];
    TableEntry* te = table_.find(target);
    std::vector<Clause> produced = gen_(te->display_goal, stats_);
    std::size_t inserted = 0;
    for (auto& c : produced) {
      c.source = ClauseSource::generated;
      if (db_.insert(std::move(c))) ++inserted;
    }
    if (inserted > 0) {
      stats_.clauses_generated += inserted;
      table_.clear();
      answer_seq_ = 0;
      db_version_seen_ = db_.version();
      for (const auto& c : db_.clauses()) reserve_variable_names(c, counter_);
    }
    // With nothing inserted the tables are still valid; the loop re-walks
    // them cheaply and picks the next failed goal.
  }

  SolveResult res;
  res.stats = stats_;
  res.diagnostics = diags_;
  TableEntry* root = table_.lookup(goal);
  if (!root) return res;

  CanonicalGoal cg = canonicalize_goal(goal);
  std::map<std::string, std::string> back;
  for (const auto& [orig, canon] : cg.vars) back[canon] = orig;
  for (const auto& a : root->answers) {
    res.bindings.push_back(translate_answer(*root, goal, a.binding));
    ProofNode p = build_proof(root->goal.key, a.seq);
    // Rename the whole tree into the caller's variable names, keeping a
    // canonical name wherever the caller's choice is already in use deeper
    // in the proof.
    std::set<std::string> taken;
    collect_proof_names(p, taken);
    std::map<std::string, std::string> restore;
    for (const auto& [canon, orig] : back) {
      if (taken.count(orig) && !back.count(orig)) continue;
      restore[canon] = orig;
    }
    if (!restore.empty()) rename_proof(p, restore);
    res.proofs.push_back(std::move(p));
  }
  return res;
}

void Session::symbolic_rounds(const Literal& root) {
  naf_oracle_.clear();
  const std::size_t round_limit = 32;
  for (std::size_t round = 0; round < round_limit; ++round) {
    naf_decisions_.clear();
    bool converged = fixpoint_passes(root);

    std::vector<std::string> violations;
    for (const auto& [key, decided_empty] : naf_decisions_) {
      if (!decided_empty) continue;
      TableEntry* e = table_.find(key);
      if (e && !e->answers.empty()) violations.push_back(key);
    }
    if (violations.empty()) {
      if (converged) {
        for (const auto& key : table_.creation_order()) {
          TableEntry* e = table_.find(key);
          if (!e || e->complete) continue;
          if (e->last_pass == pass_ && !e->tainted && !e->pending)
            e->complete = true;
        }
      }
      return;
    }
    // A negation-as-failure conclusion was contradicted by answers derived
    // later; pin the contradicted goals as provable and redo the round.
    for (const auto& key : violations) naf_oracle_[key] = false;
    table_.clear();
    answer_seq_ = 0;
  }
  add_diagnostic("negation_cycle",
                 "negation did not stabilize; result may be incomplete");
}

bool Session::fixpoint_passes(const Literal& root) {
  const std::size_t pass_cap = cfg_.depth_limit;
  for (std::size_t i = 0; i < pass_cap; ++i) {
    ++pass_;
    grew_ = false;
    failures_.clear();
    diags_.clear();
    diag_seen_.clear();
    depth_ = 0;
    eval_subgoal(root);
    if (!grew_) return true;
  }
  add_diagnostic("convergence_limit",
                 "evaluation did not reach a fixpoint within " +
                     std::to_string(pass_cap) + " passes");
  return false;
}

Session::SubgoalOutcome Session::eval_subgoal(const Literal& posed) {
  SubgoalOutcome out;
  TableEntry& e = table_.obtain(posed);
  out.entry = &e;
  if (e.complete) return out;
  if (e.in_progress || e.last_pass == pass_) {
    // Cyclic or repeated reading within this pass: consume the answers
    // derived so far instead of recursing; later passes deliver the rest.
    out.pending = e.pending;
    out.tainted = e.tainted;
    return out;
  }
  if (depth_ >= cfg_.depth_limit) {
    add_diagnostic("depth_limit",
                   "depth limit exceeded at " + format_literal(posed));
    out.tainted = true;
    return out;
  }

  e.last_pass = pass_;
  e.in_progress = true;
  ++depth_;
  evaluate_entry(e);
  --depth_;
  e.in_progress = false;
  if (e.answers.empty()) failures_.push_back(e.goal.key);
  out.pending = e.pending;
  out.tainted = e.tainted;
  return out;
}

void Session::evaluate_entry(TableEntry& e) {
  e.tainted = false;
  e.pending = false;
  const auto& cand = db_.candidates(e.goal.literal);
  bool used_clause = false;
  for (std::size_t idx : cand) {
    resolve_with_clause(e, idx, used_clause);
    if (!cfg_.enable_backtracking && used_clause) break;
  }
  if (e.goal.literal.negative) naf_fallback(e);
  if (e.answers.empty() && !generation_exhausted(e.goal.key))
    e.pending = true;
}

void Session::resolve_with_clause(TableEntry& e, std::size_t clause_idx,
                                  bool& used_clause) {
  ++stats_.nodes_expanded;
  std::map<std::string, std::string> clause_vars;
  Clause inst = rename_apart(db_.clause_at(clause_idx), counter_, &clause_vars);
  // Clause variables on the left so they bind toward goal variables; a goal
  // variable the clause does not constrain then stays out of the answer.
  auto theta0 = unify(inst.head.term, e.goal.literal.term);
  if (!theta0) return;
  used_clause = true;

  if (inst.body.empty()) {
    record_answer(e, *theta0, ProofKind::fact, std::move(inst), {},
                  std::move(clause_vars));
    return;
  }

  if (!cfg_.enable_binding_propagation) {
    // Subgoals are solved as written, with no bindings applied; only
    // provability flows back, and the answer is the head unifier alone.
    std::vector<ProofChildRef> path;
    for (const Literal& lit : inst.body) {
      if (is_builtin_literal(lit)) {
        BuiltinResult r = eval_builtin(lit, {});
        if (auto* err = std::get_if<BuiltinError>(&r)) {
          add_diagnostic("builtin_error", err->message);
          return;
        }
        if (std::holds_alternative<BuiltinFailure>(r)) return;
        ProofChildRef cr;
        cr.kind = ProofChildRef::Kind::builtin;
        cr.goal = lit;
        cr.delta = std::get<BuiltinSuccess>(r).delta;
        path.push_back(std::move(cr));
        continue;
      }
      SubgoalOutcome sub = eval_subgoal(lit);
      e.pending = e.pending || sub.pending;
      e.tainted = e.tainted || sub.tainted;
      if (sub.entry->answers.empty()) return;
      ProofChildRef cr;
      cr.kind = ProofChildRef::Kind::answer;
      cr.goal = lit;
      cr.key = sub.entry->goal.key;
      cr.answer_seq = sub.entry->answers.front().seq;
      for (const auto& [orig, canon] : canonicalize_goal(lit).vars)
        cr.var_map[canon] = orig;
      path.push_back(std::move(cr));
    }
    record_answer(e, *theta0, ProofKind::rule, std::move(inst),
                  std::move(path), std::move(clause_vars));
    return;
  }

  std::vector<ProofChildRef> path;
  join(e, inst, clause_vars, 0, *theta0, path);
}

void Session::join(TableEntry& e, const Clause& inst,
                   const std::map<std::string, std::string>& clause_vars,
                   std::size_t idx, Binding theta,
                   std::vector<ProofChildRef>& path) {
  if (idx == inst.body.size()) {
    record_answer(e, theta, ProofKind::rule, inst, path, clause_vars);
    return;
  }

  Literal lit = substitute(inst.body[idx], theta);

  if (is_builtin_literal(lit)) {
    BuiltinResult r = eval_builtin(lit, {});
    if (auto* err = std::get_if<BuiltinError>(&r)) {
      add_diagnostic("builtin_error", err->message);
      return;
    }
    if (std::holds_alternative<BuiltinFailure>(r)) return;
    const Binding& delta = std::get<BuiltinSuccess>(r).delta;
    ProofChildRef cr;
    cr.kind = ProofChildRef::Kind::builtin;
    cr.goal = lit;
    cr.delta = delta;
    path.push_back(std::move(cr));
    join(e, inst, clause_vars, idx + 1, merge(theta, delta), path);
    path.pop_back();
    return;
  }

  SubgoalOutcome sub = eval_subgoal(lit);
  e.pending = e.pending || sub.pending;
  e.tainted = e.tainted || sub.tainted;
  TableEntry& se = *sub.entry;
  if (se.answers.empty()) return;

  std::size_t limit = cfg_.enable_backtracking ? se.answers.size() : 1;
  CanonicalGoal cg = canonicalize_goal(lit);
  std::map<std::string, std::string> var_map;
  for (const auto& [orig, canon] : cg.vars) var_map[canon] = orig;

  struct Pick {
    Binding caller;
    std::uint64_t seq;
  };
  std::vector<Pick> picks;
  picks.reserve(limit);
  for (std::size_t i = 0; i < limit; ++i)
    picks.push_back(
        Pick{translate_answer(se, lit, se.answers[i].binding),
             se.answers[i].seq});

  for (const Pick& p : picks) {
    ProofChildRef cr;
    cr.kind = ProofChildRef::Kind::answer;
    cr.goal = lit;
    cr.key = se.goal.key;
    cr.answer_seq = p.seq;
    cr.var_map = var_map;
    path.push_back(std::move(cr));
    join(e, inst, clause_vars, idx + 1, merge(theta, p.caller), path);
    path.pop_back();
  }
}

void Session::naf_fallback(TableEntry& e) {
  if (!e.answers.empty()) return;
  const Literal& g = e.goal.literal;
  if (!is_ground(g.term)) {
    add_diagnostic("floundering", "'" + format_literal(g) +
                                      "' has unbound variables; "
                                      "negation-as-failure is undefined");
    e.tainted = true;
    return;
  }
  Literal inner{false, g.term};
  TableEntry* known = table_.lookup(inner);
  if (known && known->in_progress) {
    add_diagnostic("negation_cycle",
                   "cycle through negation at " + format_literal(inner));
    e.tainted = true;
    return;
  }
  SubgoalOutcome sub = eval_subgoal(inner);
  e.tainted = e.tainted || sub.tainted;
  const std::string& ikey = sub.entry->goal.key;
  if (!sub.entry->answers.empty()) return;  // definitive: inner is provable
  auto pin = naf_oracle_.find(ikey);
  if (pin != naf_oracle_.end() && pin->second == false) return;
  if (sub.pending) {
    // The inner goal might still be proved by generation; deciding the
    // negation now would be premature.
    e.pending = true;
    return;
  }
  if (sub.tainted) return;

  naf_decisions_[ikey] = true;
  ProofChildRef cr;
  cr.kind = ProofChildRef::Kind::naf;
  cr.goal = inner;
  cr.key = ikey;
  record_answer(e, {}, ProofKind::naf, std::nullopt, {std::move(cr)});
}

void Session::record_answer(TableEntry& e, const Binding& full_theta,
                            ProofKind via, std::optional<Clause> clause,
                            std::vector<ProofChildRef> children,
                            std::map<std::string, std::string> clause_vars) {
  std::vector<std::string> goal_names;
  for (const auto& [orig, canon] : e.goal.vars) goal_names.push_back(canon);
  Binding proj = project(full_theta, goal_names);

  // Clause-local free variables surviving in answer values get canonical
  // _F names so that variant answers from different passes deduplicate.
  std::map<std::string, std::string> fmap;
  std::size_t next_free = 0;
  std::vector<std::string> value_vars;
  for (const auto& [k, v] : proj) collect_variables(v, value_vars);
  for (const auto& name : value_vars) {
    bool is_goal_var = false;
    for (const auto& gn : goal_names) {
      if (gn == name) {
        is_goal_var = true;
        break;
      }
    }
    if (!is_goal_var && !fmap.count(name))
      fmap[name] = "_F" + std::to_string(next_free++);
  }
  Binding canon;
  for (const auto& [k, v] : proj) canon[k] = rename_variables(v, fmap);

  std::string akey = format_binding(canon);
  if (e.answer_keys.count(akey)) return;
  e.answer_keys.insert(akey);

  TableAnswer a;
  a.binding = std::move(canon);
  a.seq = answer_seq_++;
  a.via = via;
  a.clause = std::move(clause);
  a.full_theta = full_theta;
  a.children = std::move(children);
  a.clause_vars = std::move(clause_vars);
  e.answers.push_back(std::move(a));
  grew_ = true;
}

Binding Session::translate_answer(const TableEntry& e, const Literal& posed,
                                  const Binding& canonical) {
  CanonicalGoal cg = canonicalize_goal(posed);
  std::map<std::string, std::string> back;
  for (const auto& [orig, canon] : cg.vars) back[canon] = orig;
  // Answer-local free variables become fresh _V names in the caller's
  // space; the same free variable keeps one name across the whole answer.
  Binding out;
  for (const auto& [orig, canon] : cg.vars) {
    auto it = canonical.find(canon);
    if (it == canonical.end()) continue;
    std::vector<std::string> vars;
    collect_variables(it->second, vars);
    for (const auto& v : vars) {
      if (!back.count(v))
        back[v] = "_V" + std::to_string(counter_.next++);
    }
    out[orig] = rename_variables(it->second, back);
  }
  return out;
}

ProofNode Session::build_proof(const std::string& key, std::uint64_t seq) {
  ProofNode n;
  TableEntry* it = table_.find(key);
  if (!it) return n;
  const TableEntry& e = *it;
  const TableAnswer* ans = nullptr;
  for (const auto& a : e.answers) {
    if (a.seq == seq) {
      ans = &a;
      break;
    }
  }
  if (!ans) return n;

  n.goal = e.goal.literal;
  n.binding = ans->full_theta;
  n.bound_goal = substitute(n.goal, ans->full_theta);
  n.kind = ans->via;
  n.status = ProofStatus::proved;
  n.clause_used = ans->clause;

  for (const auto& cr : ans->children) {
    switch (cr.kind) {
      case ProofChildRef::Kind::builtin: {
        ProofNode c;
        c.goal = cr.goal;
        c.binding = cr.delta;
        c.bound_goal = substitute(cr.goal, cr.delta);
        c.kind = ProofKind::arithmetic;
        n.children.push_back(std::move(c));
        break;
      }
      case ProofChildRef::Kind::naf: {
        // Attempt record: the positive goal that finitely failed.
        ProofNode c;
        c.goal = cr.goal;
        c.bound_goal = cr.goal;
        c.kind = ProofKind::rule;
        c.status = ProofStatus::failed;
        n.children.push_back(std::move(c));
        break;
      }
      case ProofChildRef::Kind::answer: {
        ProofNode c = build_proof(cr.key, cr.answer_seq);
        // Child proof is in its entry's canonical space; bring its goal
        // variables back into this entry's names.
        rename_proof(c, cr.var_map);
        n.children.push_back(std::move(c));
        break;
      }
    }
  }

  if (!ans->clause_vars.empty()) {
    // Restore the source clause's variable names for readability — but a
    // name already visible in the subtree (a child clause using the same
    // letter, say) stays fresh to keep distinct variables distinct.
    std::set<std::string> taken;
    collect_proof_names(n, taken);
    std::map<std::string, std::string> restore;
    for (const auto& [fresh, orig] : ans->clause_vars) {
      if (taken.count(orig) && !ans->clause_vars.count(orig)) continue;
      restore[fresh] = orig;
    }
    if (!restore.empty()) rename_proof(n, restore);
  }
  return n;
}

SolveResult solve(const TermPtr& goal, const Database& db,
                  const SolverConfig& cfg, GeneratorHook gen) {
  Session s(db, cfg, std::move(gen));
  return s.solve(goal);
}

SolveResult solve_literal(const Literal& goal, const Database& db,
                          const SolverConfig& cfg, GeneratorHook gen) {
  Session s(db, cfg, std::move(gen));
  return s.solve(goal);
}

}  // namespace symba
