#include "symba/proof.hpp"

#include "symba/parser.hpp"

#include <set>
#include <stdexcept>

namespace symba {
namespace {

const char* kind_name(ProofKind k) {
  switch (k) {
    case ProofKind::fact: return "fact";
    case ProofKind::rule: return "rule";
    case ProofKind::naf: return "naf";
    case ProofKind::arithmetic: return "arithmetic";
  }
  return "fact";
}

ProofKind kind_from(const std::string& s) {
  if (s == "fact") return ProofKind::fact;
  if (s == "rule") return ProofKind::rule;
  if (s == "naf") return ProofKind::naf;
  if (s == "arithmetic") return ProofKind::arithmetic;
  throw std::runtime_error("unknown proof kind '" + s + "'");
}

Json binding_to_json(const Binding& b) {
  Json j = Json::object();
  for (const auto& [name, value] : b) j[name] = format_term(value);
  return j;
}

Binding binding_from_json(const Json& j) {
  Binding b;
  for (auto it = j.begin(); it != j.end(); ++it)
    b[it.key()] = parse_term(it.value().get<std::string>());
  return b;
}

// Variant-invariant form of a clause, for membership checks.
std::string canonical_clause(const Clause& c) {
  std::vector<std::string> names;
  collect_variables(c, names);
  std::map<std::string, std::string> m;
  for (std::size_t i = 0; i < names.size(); ++i)
    m[names[i]] = "_C" + std::to_string(i);
  Clause out;
  out.head = rename_variables(c.head, m);
  for (const auto& l : c.body) out.body.push_back(rename_variables(l, m));
  return format_clause(out);
}

struct Validator {
  const Database& db;
  std::set<std::string> program_clauses;
  std::vector<ValidationIssue> issues;

  explicit Validator(const Database& database) : db(database) {
    for (const auto& c : db.clauses())
      program_clauses.insert(canonical_clause(c));
  }

  void fail(const std::string& path, const std::string& message) {
    issues.push_back(ValidationIssue{path, message});
  }

  void check(const ProofNode& n, const std::string& path) {
    if (n.status == ProofStatus::failed) {
      // Failed nodes are attempt records (under naf); nothing to prove.
      return;
    }
    switch (n.kind) {
      case ProofKind::fact:
      case ProofKind::rule:
        check_resolution(n, path);
        break;
      case ProofKind::arithmetic:
        check_arithmetic(n, path);
        break;
      case ProofKind::naf:
        check_naf(n, path);
        break;
    }
  }

  void check_resolution(const ProofNode& n, const std::string& path) {
    if (!n.clause_used) {
      fail(path, "missing clause");
      return;
    }
    const Clause& c = *n.clause_used;
    if (c.head.negative != n.goal.negative)
      fail(path, "head polarity mismatch");
    if (!unify(c.head.term, n.goal.term)) fail(path, "head does not unify");
    if (!program_clauses.count(canonical_clause(c)))
      fail(path, "clause not present in program");
    if (!literal_equal(substitute(n.goal, n.binding), n.bound_goal))
      fail(path, "binding does not produce bound goal");
    if (n.kind == ProofKind::fact && !c.body.empty())
      fail(path, "fact node uses a clause with subgoals");
    if (n.children.size() != c.body.size()) {
      fail(path, "missing subgoal proof");
      return;
    }
    for (std::size_t i = 0; i < n.children.size(); ++i) {
      const ProofNode& child = n.children[i];
      std::string cpath = path + ".children[" + std::to_string(i) + "]";
      if (child.status != ProofStatus::proved) {
        fail(cpath, "subgoal of a proved rule is not proved");
        continue;
      }
      Literal expected = substitute(c.body[i], n.binding);
      if (expected.negative != child.goal.negative)
        fail(cpath, "subgoal polarity mismatch");
      if (!unify(expected.term, child.bound_goal.term))
        fail(cpath, "subgoal does not match child proof");
      check(child, cpath);
    }
  }

  void check_arithmetic(const ProofNode& n, const std::string& path) {
    if (!is_builtin_literal(n.goal)) {
      fail(path, "arithmetic node over a non-builtin goal");
      return;
    }
    BuiltinResult r = eval_builtin(n.goal, n.binding);
    if (!std::holds_alternative<BuiltinSuccess>(r))
      fail(path, "builtin re-evaluation failed");
    if (!literal_equal(substitute(n.goal, n.binding), n.bound_goal))
      fail(path, "binding does not produce bound goal");
    if (!n.children.empty()) fail(path, "arithmetic node has children");
  }

  void check_naf(const ProofNode& n, const std::string& path) {
    if (!n.goal.negative) {
      fail(path, "naf node over a positive goal");
      return;
    }
    if (!literal_equal(substitute(n.goal, n.binding), n.bound_goal))
      fail(path, "binding does not produce bound goal");
    if (!is_ground(n.bound_goal.term)) {
      fail(path, "naf goal is not ground");
      return;
    }
    Literal inner{false, n.bound_goal.term};
    SolveResult sub = solve_literal(inner, db);
    if (sub.proved()) fail(path, "negated goal is provable");
    if (n.children.size() > 1) fail(path, "naf node has extra children");
    if (!n.children.empty() &&
        n.children.front().status != ProofStatus::failed)
      fail(path + ".children[0]", "naf attempt record marked proved");
  }
};

}  // namespace

Json proof_to_json(const ProofNode& n) {
  Json j = Json::object();
  j["goal"] = format_literal(n.goal);
  j["bound_goal"] = format_literal(n.bound_goal);
  j["kind"] = kind_name(n.kind);
  if (n.clause_used)
    j["clause"] = format_clause(*n.clause_used);
  else
    j["clause"] = nullptr;
  j["binding"] = binding_to_json(n.binding);
  j["status"] = n.status == ProofStatus::proved ? "proved" : "failed";
  Json children = Json::array();
  for (const auto& c : n.children) children.push_back(proof_to_json(c));
  j["children"] = std::move(children);
  return j;
}

ProofNode proof_from_json(const Json& j) {
  if (!j.is_object()) throw std::runtime_error("proof node must be an object");
  for (const char* field : {"goal", "bound_goal", "kind", "binding", "status",
                            "children"}) {
    if (!j.contains(field))
      throw std::runtime_error(std::string("proof node missing '") + field +
                               "'");
  }
  ProofNode n;
  n.goal = parse_literal(j.at("goal").get<std::string>());
  n.bound_goal = parse_literal(j.at("bound_goal").get<std::string>());
  n.kind = kind_from(j.at("kind").get<std::string>());
  if (j.contains("clause") && !j.at("clause").is_null())
    n.clause_used = parse_clause(j.at("clause").get<std::string>());
  n.binding = binding_from_json(j.at("binding"));
  std::string status = j.at("status").get<std::string>();
  if (status == "proved")
    n.status = ProofStatus::proved;
  else if (status == "failed")
    n.status = ProofStatus::failed;
  else
    throw std::runtime_error("unknown proof status '" + status + "'");
  for (const auto& c : j.at("children")) n.children.push_back(proof_from_json(c));
  return n;
}

Json solve_result_to_json(const SolveResult& r) {
  Json j = Json::object();
  Json bindings = Json::array();
  for (const auto& b : r.bindings) bindings.push_back(binding_to_json(b));
  j["bindings"] = std::move(bindings);
  Json proofs = Json::array();
  for (const auto& p : r.proofs) proofs.push_back(proof_to_json(p));
  j["proofs"] = std::move(proofs);
  j["stats"] = Json{{"llm_calls", r.stats.llm_calls},
                    {"clauses_generated", r.stats.clauses_generated},
                    {"nodes_expanded", r.stats.nodes_expanded}};
  Json diags = Json::array();
  for (const auto& d : r.diagnostics)
    diags.push_back(Json{{"kind", d.kind}, {"message", d.message}});
  j["diagnostics"] = std::move(diags);
  return j;
}

ValidationReport validate_proof(const ProofNode& proof, const Database& db) {
  Validator v(db);
  if (proof.status != ProofStatus::proved)
    v.fail("root", "root is not proved");
  v.check(proof, "root");
  ValidationReport report;
  report.issues = std::move(v.issues);
  return report;
}

}  // namespace symba
