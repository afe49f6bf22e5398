#include "symba/database.hpp"
#include "symba/parser.hpp"
#include "symba/solver.hpp"
#include "symba/term.hpp"
#include "symba/unify.hpp"

#include "doctest.h"

#include <algorithm>
#include <set>
#include <string>

using namespace symba;

namespace {

Database make_db(std::string_view text) {
  Database db;
  for (auto& c : parse_program(text)) db.insert(std::move(c));
  return db;
}

bool has_diagnostic(const SolveResult& r, const std::string& kind) {
  return std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                     [&](const Diagnostic& d) { return d.kind == kind; });
}

// Collects every binding appearing anywhere in a proof tree, so tests can
// assert that a particular intermediate assignment was used.
void collect_proof_bindings(const ProofNode& n, std::vector<Binding>& out) {
  out.push_back(n.binding);
  for (const auto& c : n.children) collect_proof_bindings(c, out);
}

bool proof_mentions(const ProofNode& n, const std::string& var,
                    const std::string& value) {
  std::vector<Binding> all;
  collect_proof_bindings(n, all);
  return std::any_of(all.begin(), all.end(), [&](const Binding& b) {
    auto it = b.find(var);
    return it != b.end() && format_term(it->second) == value;
  });
}

const char* kColdness =
    "is(alan, young).\n"
    "is(bob, young).\n"
    "is(bob, round).\n"
    "is(charlie, cold) :- is(X, young), is(X, round).\n";

}  // namespace

TEST_CASE("ground rule goal proved through the correct intermediate binding") {
  Database db = make_db(kColdness);
  auto r = solve(parse_term("is(charlie, cold)"), db, {});
  REQUIRE(r.proved());
  REQUIRE(r.bindings.size() == 1);
  CHECK(r.bindings[0].empty());
  REQUIRE(r.proofs.size() == 1);
  const ProofNode& p = r.proofs[0];
  CHECK(p.kind == ProofKind::rule);
  CHECK(p.status == ProofStatus::proved);
  REQUIRE(p.clause_used.has_value());
  CHECK(p.children.size() == 2);
  // alan is young but not round; the proof must run through bob.
  CHECK(proof_mentions(p, "X", "bob"));
  CHECK_FALSE(proof_mentions(p, "X", "alan"));
}

TEST_CASE("without backtracking the first candidate commits and fails") {
  Database db = make_db(kColdness);
  SolverConfig cfg;
  cfg.enable_backtracking = false;
  auto r = solve(parse_term("is(charlie, cold)"), db, cfg);
  CHECK_FALSE(r.proved());
  CHECK(r.bindings.empty());
}

TEST_CASE("empty database proves nothing") {
  Database db;
  auto r = solve(parse_term("is(erin, round)"), db, {});
  CHECK(r.bindings.empty());
  CHECK(r.proofs.empty());
}

TEST_CASE("binding propagation carries arithmetic results to the goal") {
  Database db = make_db(
      "number_of_remaining_pages(72).\n"
      "answer(X) :- number_of_remaining_pages(A), X = A / 2.\n");
  auto r = solve(parse_term("answer(Y)"), db, {});
  REQUIRE(r.proved());
  REQUIRE(r.bindings.size() == 1);
  CHECK(format_term(r.bindings[0].at("Y")) == "36");
  // The proof records both the fact lookup and the evaluation step.
  REQUIRE(r.proofs.size() == 1);
  CHECK(r.proofs[0].children.size() == 2);
  CHECK(r.proofs[0].children[1].kind == ProofKind::arithmetic);
}

TEST_CASE("without binding propagation values cannot flow to the goal") {
  Database db = make_db(
      "number_of_remaining_pages(72).\n"
      "answer(X) :- number_of_remaining_pages(A), X = A / 2.\n");
  SolverConfig cfg;
  cfg.enable_binding_propagation = false;
  auto r = solve(parse_term("answer(Y)"), db, cfg);
  CHECK(r.bindings.empty());
  CHECK(has_diagnostic(r, "builtin_error"));
}

TEST_CASE("all bindings are enumerated in database order, deduplicated") {
  Database db = make_db(kColdness);
  auto r = solve(parse_term("is(Who, young)"), db, {});
  REQUIRE(r.bindings.size() == 2);
  CHECK(format_term(r.bindings[0].at("Who")) == "alan");
  CHECK(format_term(r.bindings[1].at("Who")) == "bob");
  CHECK(r.proofs.size() == 2);
  CHECK(r.proofs[0].kind == ProofKind::fact);
}

TEST_CASE("duplicate answers keep first occurrence") {
  Database db = make_db(
      "p(a).\n"
      "p(X) :- q(X).\n"
      "q(a).\n"
      "q(b).\n");
  auto r = solve(parse_term("p(Z)"), db, {});
  REQUIRE(r.bindings.size() == 2);
  CHECK(format_term(r.bindings[0].at("Z")) == "a");
  CHECK(format_term(r.bindings[1].at("Z")) == "b");
  // First proof of a comes from the fact, not the rule.
  CHECK(r.proofs[0].kind == ProofKind::fact);
}

TEST_CASE("negation as failure on ground goals") {
  Database db;
  auto r = solve_literal(parse_literal("not is(erin, round)"), db, {});
  REQUIRE(r.proved());
  CHECK(r.bindings.size() == 1);
  CHECK(r.bindings[0].empty());
  REQUIRE(r.proofs.size() == 1);
  CHECK(r.proofs[0].kind == ProofKind::naf);

  Database db2 = make_db("is(erin, round).\n");
  auto r2 = solve_literal(parse_literal("not is(erin, round)"), db2, {});
  CHECK_FALSE(r2.proved());
}

TEST_CASE("explicit negative facts prove negative goals directly") {
  Database db = make_db("not eats(bald_eagle, mouse).\n");
  auto r = solve_literal(parse_literal("not eats(bald_eagle, mouse)"), db, {});
  REQUIRE(r.proved());
  REQUIRE(r.proofs.size() == 1);
  CHECK(r.proofs[0].kind == ProofKind::fact);
  REQUIRE(r.proofs[0].clause_used.has_value());
  CHECK(r.proofs[0].clause_used->head.negative);
}

TEST_CASE("negative rules resolve against negative goals") {
  Database db = make_db(
      "not eats(X, mouse) :- is(X, herbivore).\n"
      "is(deer, herbivore).\n");
  auto r = solve_literal(parse_literal("not eats(deer, mouse)"), db, {});
  REQUIRE(r.proved());
  CHECK(r.proofs[0].kind == ProofKind::rule);
}

TEST_CASE("floundering is reported, not guessed") {
  Database db = make_db("p(a).\n");
  auto r = solve_literal(parse_literal("not q(X)"), db, {});
  CHECK_FALSE(r.proved());
  CHECK(has_diagnostic(r, "floundering"));
}

TEST_CASE("negation sees bindings propagated from earlier subgoals") {
  Database db = make_db(
      "animal(bald_eagle).\n"
      "animal(deer).\n"
      "eats(bald_eagle, rabbit).\n"
      "peaceful(X) :- animal(X), not eats(X, rabbit).\n");
  auto r = solve(parse_term("peaceful(W)"), db, {});
  REQUIRE(r.bindings.size() == 1);
  CHECK(format_term(r.bindings[0].at("W")) == "deer");
}

TEST_CASE("cycles terminate as finite failure") {
  Database db = make_db("p :- q.\nq :- p.\n");
  auto r = solve(parse_term("p"), db, {});
  CHECK(r.bindings.empty());
}

TEST_CASE("recursive programs still reach every derivable fact") {
  Database db = make_db(
      "edge(a, b).\n"
      "edge(b, c).\n"
      "edge(c, d).\n"
      "path(X, Y) :- edge(X, Y).\n"
      "path(X, Y) :- edge(X, Z), path(Z, Y).\n");
  auto r = solve(parse_term("path(a, W)"), db, {});
  std::set<std::string> ends;
  for (const auto& b : r.bindings) ends.insert(format_term(b.at("W")));
  CHECK(ends == std::set<std::string>{"b", "c", "d"});

  // Left recursion derives the same answers.
  Database db2 = make_db(
      "edge(a, b).\n"
      "edge(b, c).\n"
      "edge(c, d).\n"
      "path(X, Y) :- edge(X, Y).\n"
      "path(X, Y) :- path(X, Z), edge(Z, Y).\n");
  auto r2 = solve(parse_term("path(a, W)"), db2, {});
  std::set<std::string> ends2;
  for (const auto& b : r2.bindings) ends2.insert(format_term(b.at("W")));
  CHECK(ends2 == ends);
}

TEST_CASE("cyclic graph reachability terminates with the full answer set") {
  Database db = make_db(
      "edge(a, b).\n"
      "edge(b, a).\n"
      "edge(b, c).\n"
      "reach(X, Y) :- edge(X, Y).\n"
      "reach(X, Y) :- edge(X, Z), reach(Z, Y).\n");
  auto r = solve(parse_term("reach(a, W)"), db, {});
  std::set<std::string> ends;
  for (const auto& b : r.bindings) ends.insert(format_term(b.at("W")));
  CHECK(ends == std::set<std::string>{"a", "b", "c"});
  // Every answer must still carry a replayable proof.
  REQUIRE(r.proofs.size() == r.bindings.size());
  for (const auto& p : r.proofs) CHECK(p.status == ProofStatus::proved);
}

TEST_CASE("variant goals share one table entry") {
  Database db = make_db("p(a).\np(b).\n");
  Session s(db, {});
  auto r1 = s.solve(parse_term("p(X)"));
  auto r2 = s.solve(parse_term("p(Y)"));
  CHECK(r1.bindings.size() == 2);
  REQUIRE(r2.bindings.size() == 2);
  CHECK(r2.bindings[0].count("Y") == 1);
  CHECK(s.table().size() == 1);
}

TEST_CASE("re-solving a completed goal expands no new nodes") {
  Database db = make_db(kColdness);
  Session s(db, {});
  auto r1 = s.solve(parse_term("is(charlie, cold)"));
  REQUIRE(r1.proved());
  CHECK(r1.stats.nodes_expanded > 0);
  auto r2 = s.solve(parse_term("is(charlie, cold)"));
  CHECK(r2.proved());
  CHECK(r2.stats.nodes_expanded == 0);
}

TEST_CASE("database growth invalidates the table") {
  Database db;
  Session s(db, {});
  CHECK_FALSE(s.solve(parse_term("p(a)")).proved());
  s.database().insert(parse_clause("p(a)."));
  CHECK(s.solve(parse_term("p(a)")).proved());
}

TEST_CASE("depth limit reports a diagnostic instead of crashing") {
  Database db = make_db("count(X) :- count(Y), X = Y + 1.\ncount(0).\n");
  SolverConfig cfg;
  cfg.depth_limit = 16;
  auto r = solve(parse_term("count(N)"), db, cfg);
  // The fact is reachable; the unbounded recursion is cut with a report.
  CHECK(!r.bindings.empty());
  CHECK((has_diagnostic(r, "depth_limit") ||
         has_diagnostic(r, "convergence_limit")));
}

TEST_CASE("top-level builtin goals evaluate directly") {
  Database db;
  auto r = solve(parse_term("X = 3 * 4"), db, {});
  REQUIRE(r.proved());
  CHECK(format_term(r.bindings[0].at("X")) == "12");
  CHECK(r.proofs[0].kind == ProofKind::arithmetic);

  auto fail = solve(parse_term("3 < 3"), db, {});
  CHECK_FALSE(fail.proved());
}

TEST_CASE("builtin errors surface as diagnostics") {
  Database db = make_db("broken(X) :- X = Y + 1.\n");
  auto r = solve(parse_term("broken(Z)"), db, {});
  CHECK_FALSE(r.proved());
  CHECK(has_diagnostic(r, "builtin_error"));
}

TEST_CASE("negated comparison inside a rule body") {
  Database db = make_db(
      "score(alan, 3).\n"
      "score(bob, 7).\n"
      "low(P) :- score(P, S), not S > 5.\n");
  auto r = solve(parse_term("low(W)"), db, {});
  REQUIRE(r.bindings.size() == 1);
  CHECK(format_term(r.bindings[0].at("W")) == "alan");
}

TEST_CASE("backtracking explores every rule alternative") {
  Database db = make_db(
      "pick(1).\npick(2).\npick(3).\n"
      "pair(X, Y) :- pick(X), pick(Y).\n");
  auto r = solve(parse_term("pair(A, B)"), db, {});
  CHECK(r.bindings.size() == 9);
  // Left subgoal varies slowest: database order again.
  CHECK(format_term(r.bindings[0].at("A")) == "1");
  CHECK(format_term(r.bindings[0].at("B")) == "1");
  CHECK(format_term(r.bindings[1].at("B")) == "2");
  CHECK(format_term(r.bindings[8].at("A")) == "3");
}

TEST_CASE("no-backtrack keeps only the first answer of each subgoal") {
  Database db = make_db(
      "pick(1).\npick(2).\npick(3).\n"
      "pair(X, Y) :- pick(X), pick(Y).\n");
  SolverConfig cfg;
  cfg.enable_backtracking = false;
  auto r = solve(parse_term("pair(A, B)"), db, cfg);
  REQUIRE(r.bindings.size() == 1);
  CHECK(format_term(r.bindings[0].at("A")) == "1");
  CHECK(format_term(r.bindings[0].at("B")) == "1");
}

TEST_CASE("no-binding-propagation solves subgoals as written") {
  // Each subgoal is independently provable without inherited bindings, so
  // the head unifier alone survives to the answer.
  Database db = make_db(
      "q(a).\n"
      "r(b).\n"
      "p(X, Y) :- q(X), r(Y).\n");
  SolverConfig cfg;
  cfg.enable_binding_propagation = false;
  auto r = solve(parse_term("p(U, V)"), db, cfg);
  REQUIRE(r.bindings.size() == 1);
  // The answer binds nothing: subgoal results are not merged back.
  CHECK(r.bindings[0].empty());

  // A chained rule whose second subgoal needs the first's binding fails.
  Database db2 = make_db(
      "first(a).\n"
      "second(a).\n"
      "chained(X) :- first(X), second(X).\n");
  auto r2 = solve(parse_term("chained(W)"), db2, cfg);
  REQUIRE(r2.bindings.size() == 1);
  CHECK(r2.bindings[0].empty());
}

TEST_CASE("generator hook fires on failure and its clauses are used") {
  Database db = make_db("answer(X) :- missing(X).\n");
  int calls = 0;
  GeneratorHook gen = [&](const Literal& goal, SolveStats&) {
    ++calls;
    if (goal.term->name() == "missing")
      return std::vector<Clause>{parse_clause("missing(42).")};
    return std::vector<Clause>{};
  };
  Session s(db, {}, gen);
  auto r = s.solve(parse_term("answer(N)"));
  REQUIRE(r.proved());
  CHECK(format_term(r.bindings[0].at("N")) == "42");
  CHECK(calls >= 1);
  CHECK(r.stats.clauses_generated == 1);
  CHECK(s.database().size() == 2);
}

TEST_CASE("generator is asked innermost-first and at most once per goal") {
  Database db = make_db("top :- mid.\nmid :- leaf.\n");
  std::vector<std::string> asked;
  GeneratorHook gen = [&](const Literal& goal, SolveStats&) {
    asked.push_back(format_literal(goal));
    return std::vector<Clause>{};
  };
  Session s(db, {}, gen);
  auto r = s.solve(parse_term("top"));
  CHECK_FALSE(r.proved());
  REQUIRE(asked.size() == 3);
  CHECK(asked[0] == "leaf");
  CHECK(asked[1] == "mid");
  CHECK(asked[2] == "top");
}

TEST_CASE("generated clauses reshape earlier negation decisions") {
  // NAF initially succeeds for the inner goal; a generated clause later
  // proves it, and the final answer must reflect the updated database.
  Database db = make_db(
      "good(X) :- candidate(X), not blocked(X).\n"
      "candidate(a).\n"
      "needs_gen.\n"
      "top :- good(a), gap.\n");
  GeneratorHook gen = [&](const Literal& goal, SolveStats&) {
    if (goal.term->name() == "gap")
      return std::vector<Clause>{parse_clause("gap :- not blocked(a)."),
                                 parse_clause("blocked(a).")};
    return std::vector<Clause>{};
  };
  Session s(db, {}, gen);
  auto r = s.solve(parse_term("top"));
  // blocked(a) now holds, so both good(a) and gap fail: no proof.
  CHECK_FALSE(r.proved());
}

TEST_CASE("deep conjunction chains bind left to right") {
  Database db = make_db(
      "start(5).\n"
      "stepwise(R) :- start(A), B = A * 2, C = B + 1, R = C * C.\n");
  auto r = solve(parse_term("stepwise(V)"), db, {});
  REQUIRE(r.proved());
  CHECK(format_term(r.bindings[0].at("V")) == "121");
}

TEST_CASE("rational results print exactly") {
  Database db = make_db("portion(X) :- X = 1 / 3.\nhalf(X) :- X = 7 / 2.\n");
  auto r = solve(parse_term("portion(P)"), db, {});
  REQUIRE(r.proved());
  CHECK(format_term(r.bindings[0].at("P")) == "1r3");
  auto r2 = solve(parse_term("half(H)"), db, {});
  CHECK(format_term(r2.bindings[0].at("H")) == "3.5");
}

TEST_CASE("solve rejects bare variable and number goals") {
  Database db;
  CHECK_THROWS_AS(solve(parse_term("X"), db, {}), std::invalid_argument);
  CHECK_THROWS_AS(solve(parse_term("3"), db, {}), std::invalid_argument);
}

TEST_CASE("proofs replay the exact clause instances used") {
  Database db = make_db(kColdness);
  auto r = solve(parse_term("is(charlie, cold)"), db, {});
  REQUIRE(r.proved());
  const ProofNode& root = r.proofs[0];
  REQUIRE(root.clause_used.has_value());
  // The recorded clause is a renamed instance of the program rule: its head
  // must unify with the goal.
  CHECK(unify(root.clause_used->head.term, root.goal.term).has_value());
  // Children line up with the rule body.
  REQUIRE(root.children.size() == root.clause_used->body.size());
  for (const auto& child : root.children)
    CHECK(child.status == ProofStatus::proved);
  // And applying the node binding to its goal gives the bound goal.
  CHECK(structural_equal(substitute(root.goal.term, root.binding),
                         root.bound_goal.term));
}

TEST_CASE("negation through a cycle is reported") {
  Database db = make_db("win(X) :- move(X, Y), not win(Y).\nmove(a, a).\n");
  auto r = solve(parse_term("win(a)"), db, {});
  CHECK_FALSE(r.proved());
  CHECK((has_diagnostic(r, "negation_cycle") ||
         has_diagnostic(r, "depth_limit")));
}

TEST_CASE("stratified negation across rules stays consistent") {
  Database db = make_db(
      "node(a).\nnode(b).\nnode(c).\n"
      "edge(a, b).\n"
      "linked(X) :- edge(X, Y).\n"
      "linked(Y) :- edge(X, Y).\n"
      "isolated(X) :- node(X), not linked(X).\n");
  auto r = solve(parse_term("isolated(W)"), db, {});
  REQUIRE(r.bindings.size() == 1);
  CHECK(format_term(r.bindings[0].at("W")) == "c");
}

TEST_CASE("answers with residual free variables stay fresh per retrieval") {
  Database db = make_db("p(X, b).\n");
  Session s(db, {});
  auto r1 = s.solve(parse_term("p(U, V)"));
  REQUIRE(r1.bindings.size() == 1);
  CHECK(format_term(r1.bindings[0].at("V")) == "b");
  CHECK(r1.bindings[0].count("U") == 0);
  auto r2 = s.solve(parse_term("q(U)"));
  (void)r2;
}
