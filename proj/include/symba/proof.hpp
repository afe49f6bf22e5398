#pragma once

#include "symba/solver.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace symba {

// Deterministic serialization: ordered_json preserves field order, terms
// and clauses serialize as their parseable text forms.
using Json = nlohmann::ordered_json;

// Schema: {goal, bound_goal, kind, clause, binding, status, children[]}
Json proof_to_json(const ProofNode& n);
// Throws std::runtime_error (or ParseError) on schema violations.
ProofNode proof_from_json(const Json& j);

Json solve_result_to_json(const SolveResult& r);

struct ValidationIssue {
  std::string path;  // e.g. "root.children[1]"
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }
};

// Re-checks a proof structurally against a program snapshot, independent of
// any solver state: head unification, clause membership, binding
// consistency, child coverage, builtin re-evaluation; naf nodes are
// re-verified by a fresh sub-solve against the snapshot.
ValidationReport validate_proof(const ProofNode& proof, const Database& db);

}  // namespace symba
