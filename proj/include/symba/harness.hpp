#pragma once

#include "symba/number.hpp"
#include "symba/proof.hpp"
#include "symba/solver.hpp"
#include "symba/stepgen.hpp"

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace symba {

// ---------------------------------------------------------------------------
// Benchmark data

struct BenchmarkInstance {
  std::string id;
  std::string context;     // natural-language facts/rules or word problem
  std::string goal_text;   // the literal as written in the dataset
  Literal goal;            // parsed eagerly at load
  std::variant<bool, Rational> label;
  std::string family;      // deductive | relational | arithmetic
  std::string split;       // optional evaluation split tag
};

// Reads the normalized JSONL dataset, one instance per line. Malformed rows
// fail the whole load with their row number. "jsonl" is the only format.
std::vector<BenchmarkInstance> load_dataset(const std::string& path,
                                            const std::string& format_hint = "jsonl");

// ---------------------------------------------------------------------------
// Run configuration and records

struct BenchConfig {
  SolverConfig solver;
  std::string templates_dir;  // holds one subdirectory per family
  std::string fixtures_dir;   // optional; seeds <family>.lp when present
  std::string provider;       // scripted | null | http
  std::string script_path;    // scripted only
  std::string model;
  int workers = 4;
};

struct Prediction {
  enum class Kind { boolean, number, no_answer, errored };
  Kind kind = Kind::no_answer;
  bool truth = false;
  Rational value = Rational(0);
  std::string error;  // provider failure message when errored
};

struct UsageTotals {
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  std::uint64_t llm_calls = 0;
  double wall_time = 0;  // seconds; zero under deterministic providers
};

struct RunRecord {
  std::string instance_id;
  std::string family;
  std::string split;
  Prediction prediction;
  bool correct = false;
  std::optional<ProofNode> proof;  // first proof when one exists
  UsageTotals usage;
  std::vector<Diagnostic> diagnostics;
  std::size_t rejected_candidates = 0;
  // Final database after generation, formatted one clause per entry; the
  // proof re-validates against exactly this program.
  std::vector<std::string> program;
  // Config snapshot sufficient to replay the run with a scripted provider.
  BenchConfig config;
};

// Compares a prediction against an instance label: booleans exactly,
// numbers within absolute tolerance 1e-6; no-answer and errored never match.
bool prediction_correct(const Prediction& pred,
                        const std::variant<bool, Rational>& label);

// Solves one instance in a fresh session seeded only with the family
// fixture. Provider transport failures mark the record errored instead of
// propagating.
RunRecord run_instance(const BenchmarkInstance& inst, const BenchConfig& cfg,
                       const TemplateSet& templates,
                       CompletionProvider& provider,
                       const std::vector<Clause>& fixture = {});

// ---------------------------------------------------------------------------
// Evaluation

struct Tally {
  std::size_t total = 0;
  std::size_t correct = 0;
  double accuracy() const {
    return total == 0 ? 0.0 : static_cast<double>(correct) / static_cast<double>(total);
  }
};

struct CostRates {
  double input_per_1k = 0;
  double output_per_1k = 0;
};
// Model id -> rates; the "default" entry catches models not listed.
using CostTable = std::map<std::string, CostRates>;

CostTable load_cost_table(const std::string& path);

struct EvalReport {
  Tally overall;
  std::map<std::string, Tally> by_family;
  std::map<std::string, Tally> by_split;  // only when split tags are present
  UsageTotals usage;
  double input_cost = 0;
  double output_cost = 0;
  double total_cost = 0;
};

// Scores records against their instances (correctness is recomputed from
// labels). Throws when a record is missing for an instance.
EvalReport evaluate(const std::vector<RunRecord>& records,
                    const std::vector<BenchmarkInstance>& instances,
                    const CostTable& costs = {});

// Aggregates persisted records alone, trusting their stored verdicts; used
// when the dataset is not at hand.
EvalReport aggregate_records(const std::vector<RunRecord>& records,
                             const CostTable& costs = {});

// ---------------------------------------------------------------------------
// Whole-suite execution

struct BenchResult {
  std::vector<RunRecord> records;  // in instance order
  EvalReport report;
};

// Runs every instance through run_instance with a bounded worker pool.
// Records come back in instance order regardless of completion order.
BenchResult run_bench(const std::vector<BenchmarkInstance>& instances,
                      const BenchConfig& cfg, CompletionProvider& provider,
                      const CostTable& costs = {});

// ---------------------------------------------------------------------------
// Persistence

Json record_to_json(const RunRecord& r);
RunRecord record_from_json(const Json& j);
Json report_to_json(const EvalReport& r);

void write_run_log(const std::vector<RunRecord>& records,
                   const std::string& path);
std::vector<RunRecord> read_run_log(const std::string& path);

}  // namespace symba
