#pragma once

#include "symba/builtins.hpp"
#include "symba/database.hpp"
#include "symba/unify.hpp"

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace symba {

struct SolverConfig {
  bool enable_backtracking = true;
  bool enable_binding_propagation = true;
  std::size_t depth_limit = 128;
  std::size_t max_generation_rounds_per_goal = 1;
};

enum class ProofKind { fact, rule, naf, arithmetic };
enum class ProofStatus { proved, failed };

struct ProofNode {
  Literal goal;
  Literal bound_goal;
  ProofKind kind = ProofKind::fact;
  // Renamed-apart instance actually used; absent for naf/arithmetic nodes
  // and for failed attempt records.
  std::optional<Clause> clause_used;
  Binding binding;
  std::vector<ProofNode> children;
  ProofStatus status = ProofStatus::proved;
};

struct SolveStats {
  std::uint64_t llm_calls = 0;
  std::uint64_t clauses_generated = 0;
  std::uint64_t nodes_expanded = 0;
};

// Non-fatal conditions the engine reports instead of crashing or guessing:
// kinds are "floundering", "depth_limit", "builtin_error", "negation_cycle",
// "convergence_limit", "generation_limit".
struct Diagnostic {
  std::string kind;
  std::string message;
};

struct SolveResult {
  // Answer substitutions over the goal's own variables, first-derivation
  // order, deduplicated. Empty means not provable. A provable ground goal
  // yields one empty binding.
  std::vector<Binding> bindings;
  std::vector<ProofNode> proofs;  // index-aligned with bindings
  SolveStats stats;
  std::vector<Diagnostic> diagnostics;

  bool proved() const { return !bindings.empty(); }
};

// Called when a goal failed symbolically and generation is still allowed
// for it. Returns validated clauses to insert; implementations account
// their own provider usage through the stats reference.
using GeneratorHook =
    std::function<std::vector<Clause>(const Literal& goal, SolveStats& stats)>;

// ---------------------------------------------------------------------------
// Goal table. Entries are keyed by the variant-canonical form of a literal
// (variables renamed _G0, _G1, ... left to right), so p(X) and p(Y) share
// one entry. Answers accumulate monotonically; a cyclic re-entry consumes
// the answers derived so far instead of recursing, and the evaluation loop
// iterates to a fixpoint so that late answers still reach earlier readers.

// How one stored answer was derived; enough to replay its proof tree.
struct ProofChildRef {
  enum class Kind { answer, builtin, naf } kind = Kind::answer;
  Literal goal;  // subgoal as posed, in the parent entry's local space
  std::string key;                // table key (answer / naf inner goal)
  std::uint64_t answer_seq = 0;   // for Kind::answer
  // child canonical name -> parent-local name, for Kind::answer.
  std::map<std::string, std::string> var_map;
  Binding delta;  // for Kind::builtin
};

struct TableAnswer {
  // Canonical answer over the entry's _G variables; clause-local free
  // variables in values are canonicalized to _F0, _F1, ...
  Binding binding;
  // Global insertion order; justifications reference strictly smaller
  // numbers, which keeps proof replay well-founded on cyclic programs.
  std::uint64_t seq = 0;
  ProofKind via = ProofKind::fact;
  std::optional<Clause> clause;  // renamed instance (fact/rule)
  Binding full_theta;            // entry-local path binding for proof replay
  std::vector<ProofChildRef> children;
  // Renamed-instance variable -> source clause variable; proofs restore
  // the original names where that introduces no collision.
  std::map<std::string, std::string> clause_vars;
};

struct TableEntry {
  CanonicalGoal goal;
  Literal display_goal;  // first posed form; shown in prompts/diagnostics
  std::vector<TableAnswer> answers;
  std::set<std::string> answer_keys;  // dedup by formatted canonical binding
  bool complete = false;

  // Per-pass evaluation bookkeeping (engine internal).
  std::uint64_t last_pass = 0;
  bool in_progress = false;
  bool tainted = false;  // depth cut / floundering / negation cycle beneath
  bool pending = false;  // failed, but generation might still add clauses
  std::uint64_t creation_index = 0;
};

class Table {
 public:
  // Variant lookup; null when no entry exists.
  TableEntry* lookup(const Literal& goal);
  const TableEntry* lookup(const Literal& goal) const;
  TableEntry* find(const std::string& key);
  // Find-or-create.
  TableEntry& obtain(const Literal& goal);
  void clear();
  std::size_t size() const { return entries_.size(); }
  const std::vector<std::string>& creation_order() const { return order_; }

 private:
  std::map<std::string, TableEntry> entries_;
  std::vector<std::string> order_;
  std::uint64_t next_creation_ = 0;
};

// ---------------------------------------------------------------------------
// A solving session: one thread of control over a private copy of the
// database (generated clauses land in this copy; callers merge back by
// reading database()), plus tables and failure memory that persist across
// solve calls until the database changes.

class Session {
 public:
  explicit Session(Database db, SolverConfig config = {},
                   GeneratorHook generator = {});

  SolveResult solve(const TermPtr& goal);
  SolveResult solve(const Literal& goal);

  Database& database() { return db_; }
  const Database& database() const { return db_; }
  const SolverConfig& config() const { return cfg_; }
  const Table& table() const { return table_; }

 private:
  struct SubgoalOutcome {
    TableEntry* entry = nullptr;
    bool pending = false;
    bool tainted = false;
  };

  SolveResult run(const Literal& goal);
  void symbolic_rounds(const Literal& root);
  bool fixpoint_passes(const Literal& root);
  SubgoalOutcome eval_subgoal(const Literal& posed);
  void evaluate_entry(TableEntry& e);
  void resolve_with_clause(TableEntry& e, std::size_t clause_idx,
                           bool& used_clause);
  void join(TableEntry& e, const Clause& inst,
            const std::map<std::string, std::string>& clause_vars,
            std::size_t idx, Binding theta,
            std::vector<ProofChildRef>& path);
  void naf_fallback(TableEntry& e);
  void record_answer(TableEntry& e, const Binding& full_theta, ProofKind via,
                     std::optional<Clause> clause,
                     std::vector<ProofChildRef> children,
                     std::map<std::string, std::string> clause_vars = {});
  // Translates a stored answer into the space of the posed literal,
  // renaming clause-local frees to fresh _V names.
  Binding translate_answer(const TableEntry& e, const Literal& posed,
                           const Binding& canonical);
  bool generation_exhausted(const std::string& key) const;
  void add_diagnostic(const std::string& kind, const std::string& message);
  ProofNode build_proof(const std::string& key, std::uint64_t seq);

  Database db_;
  SolverConfig cfg_;
  GeneratorHook gen_;
  Table table_;
  VariableCounter counter_;
  std::map<std::string, std::size_t> generation_attempts_;
  std::uint64_t db_version_seen_ = 0;
  std::uint64_t answer_seq_ = 0;

  // Per solve-call state.
  SolveStats stats_;
  std::vector<Diagnostic> diags_;
  std::set<std::string> diag_seen_;
  std::uint64_t pass_ = 0;
  bool grew_ = false;
  std::size_t depth_ = 0;
  std::vector<std::string> failures_;  // post-order, current pass
  std::map<std::string, bool> naf_decisions_;  // inner key -> decided empty
  std::map<std::string, bool> naf_oracle_;     // inner key -> known emptiness
};

// One-shot helpers over a private session.
SolveResult solve(const TermPtr& goal, const Database& db,
                  const SolverConfig& cfg = {}, GeneratorHook gen = {});
SolveResult solve_literal(const Literal& goal, const Database& db,
                          const SolverConfig& cfg = {}, GeneratorHook gen = {});

}  // namespace symba
