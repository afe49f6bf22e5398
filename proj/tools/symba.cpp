#include "CLI11.hpp"

#include "symba/harness.hpp"
#include "symba/parser.hpp"
#include "symba/proof.hpp"

#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using namespace symba;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

void print_diagnostics(const std::vector<Diagnostic>& diags) {
  for (const Diagnostic& d : diags)
    std::cerr << "diagnostic: " << d.kind << ": " << d.message << "\n";
}

std::string percent(const Tally& t) {
  std::ostringstream out;
  out << std::fixed << std::setprecision(1) << t.accuracy() * 100.0 << "%";
  return out.str();
}

std::string dollars(double v) {
  std::ostringstream out;
  out << "$" << std::fixed << std::setprecision(4) << v;
  return out.str();
}

// --- solve ---------------------------------------------------------------

struct SolveArgs {
  std::string program;
  std::string goal;
  std::string proof_out;
  bool no_backtrack = false;
  bool no_binding_prop = false;
  std::size_t depth_limit = 128;
};

int run_solve(const SolveArgs& args) {
  Database db(parse_program(read_file(args.program)));
  Literal goal = parse_literal(args.goal);

  SolverConfig cfg;
  cfg.enable_backtracking = !args.no_backtrack;
  cfg.enable_binding_propagation = !args.no_binding_prop;
  cfg.depth_limit = args.depth_limit;

  SolveResult result = solve_literal(goal, db, cfg);
  print_diagnostics(result.diagnostics);

  if (!args.proof_out.empty())
    write_file(args.proof_out, solve_result_to_json(result).dump(2) + "\n");

  if (!result.proved()) {
    std::cout << "no.\n";
    return 1;
  }
  for (const Binding& b : result.bindings)
    std::cout << (b.empty() ? "true." : format_binding(b)) << "\n";
  return 0;
}

// --- bench ---------------------------------------------------------------

struct BenchArgs {
  std::string dataset;
  std::string templates_dir;
  std::string provider;
  std::string script;
  std::string fixtures_dir;
  std::string model;
  std::string costs_path;
  std::string out_dir;
  int workers = 4;
  bool no_backtrack = false;
  bool no_binding_prop = false;
  std::size_t depth_limit = 128;
  std::size_t gen_rounds = 1;
};

std::unique_ptr<CompletionProvider> make_provider(const BenchArgs& args) {
  if (args.provider == "null") return make_null_provider();
  if (args.provider == "scripted") {
    if (args.script.empty())
      throw std::runtime_error("--provider scripted requires --script");
    return make_scripted_provider(args.script);
  }
  // http: flags first, SYMBA_API_BASE / SYMBA_API_KEY / SYMBA_MODEL fill
  // whatever is left empty.
  HttpProviderConfig cfg;
  cfg.model = args.model;
  return make_http_provider(cfg);
}

int run_bench_cmd(const BenchArgs& args) {
  auto instances = load_dataset(args.dataset);

  BenchConfig cfg;
  cfg.templates_dir = args.templates_dir;
  cfg.fixtures_dir = args.fixtures_dir;
  cfg.provider = args.provider;
  cfg.script_path = args.script;
  cfg.model = args.model;
  cfg.workers = args.workers;
  cfg.solver.enable_backtracking = !args.no_backtrack;
  cfg.solver.enable_binding_propagation = !args.no_binding_prop;
  cfg.solver.depth_limit = args.depth_limit;
  cfg.solver.max_generation_rounds_per_goal = args.gen_rounds;

  CostTable costs;
  if (!args.costs_path.empty()) costs = load_cost_table(args.costs_path);

  auto provider = make_provider(args);
  BenchResult result = run_bench(instances, cfg, *provider, costs);

  fs::create_directories(args.out_dir);
  const std::string runs_path = (fs::path(args.out_dir) / "runs.jsonl").string();
  const std::string report_path =
      (fs::path(args.out_dir) / "report.json").string();
  write_run_log(result.records, runs_path);
  write_file(report_path, report_to_json(result.report).dump(2) + "\n");

  const EvalReport& r = result.report;
  std::cout << "instances: " << r.overall.total << "  correct: "
            << r.overall.correct << "  accuracy: " << percent(r.overall)
            << "\n";
  for (const auto& [family, tally] : r.by_family)
    std::cout << "  " << family << ": " << tally.correct << "/" << tally.total
              << " (" << percent(tally) << ")\n";
  for (const auto& [split, tally] : r.by_split)
    std::cout << "  split " << split << ": " << tally.correct << "/"
              << tally.total << " (" << percent(tally) << ")\n";
  std::cout << "llm calls: " << r.usage.llm_calls
            << "  prompt tokens: " << r.usage.prompt_tokens
            << "  completion tokens: " << r.usage.completion_tokens << "\n";
  std::cout << "cost: " << dollars(r.total_cost) << " (input "
            << dollars(r.input_cost) << ", output " << dollars(r.output_cost)
            << ")\n";
  std::cout << "wrote " << runs_path << " and " << report_path << "\n";

  std::size_t errored = 0;
  for (const RunRecord& rec : result.records)
    if (rec.prediction.kind == Prediction::Kind::errored) ++errored;
  if (errored > 0)
    std::cerr << errored << " instance(s) errored; see the run log\n";
  return 0;
}

// --- validate-proof -------------------------------------------------------

int run_validate(const std::string& proof_path,
                 const std::string& program_path) {
  Database db(parse_program(read_file(program_path)));
  Json j = Json::parse(read_file(proof_path));

  // Accept either a single proof node or a whole solve result.
  std::vector<ProofNode> proofs;
  if (j.is_object() && j.contains("proofs")) {
    for (const Json& p : j["proofs"]) proofs.push_back(proof_from_json(p));
  } else {
    proofs.push_back(proof_from_json(j));
  }

  bool all_ok = true;
  for (std::size_t i = 0; i < proofs.size(); ++i) {
    ValidationReport report = validate_proof(proofs[i], db);
    if (report.ok()) continue;
    all_ok = false;
    for (const ValidationIssue& issue : report.issues)
      std::cout << "proof " << i << " " << issue.path << ": " << issue.message
                << "\n";
  }
  if (all_ok) {
    std::cout << "ok (" << proofs.size() << " proof"
              << (proofs.size() == 1 ? "" : "s") << ")\n";
    return 0;
  }
  return 1;
}

// --- report ---------------------------------------------------------------

int run_report(const std::string& runs_path, const std::string& costs_path) {
  fs::path path = runs_path;
  if (fs::is_directory(path)) path /= "runs.jsonl";
  CostTable costs;
  if (!costs_path.empty()) costs = load_cost_table(costs_path);
  EvalReport report = aggregate_records(read_run_log(path.string()), costs);
  std::cout << report_to_json(report).dump(2) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Backward-chaining solver with LLM statement generation"};
  app.require_subcommand(1);

  SolveArgs solve_args;
  CLI::App* solve_cmd =
      app.add_subcommand("solve", "Prove a goal against a program file");
  solve_cmd->add_option("--program", solve_args.program, "Logic program file")
      ->required()
      ->check(CLI::ExistingFile);
  solve_cmd->add_option("--goal", solve_args.goal, "Goal literal to prove")
      ->required();
  solve_cmd->add_flag("--no-backtrack", solve_args.no_backtrack,
                      "Commit to the first binding of each subgoal");
  solve_cmd->add_flag("--no-binding-prop", solve_args.no_binding_prop,
                      "Do not propagate bindings across sibling subgoals");
  solve_cmd->add_option("--depth-limit", solve_args.depth_limit,
                        "Maximum resolution depth");
  solve_cmd->add_option("--proof-out", solve_args.proof_out,
                        "Write the solve result (bindings, proofs) as JSON");

  BenchArgs bench_args;
  CLI::App* bench_cmd =
      app.add_subcommand("bench", "Run a benchmark dataset end to end");
  bench_cmd->add_option("--dataset", bench_args.dataset, "Dataset JSONL")
      ->required()
      ->check(CLI::ExistingFile);
  bench_cmd
      ->add_option("--templates", bench_args.templates_dir,
                   "Directory with one template set per family")
      ->required()
      ->check(CLI::ExistingDirectory);
  bench_cmd
      ->add_option("--provider", bench_args.provider,
                   "Completion provider backend")
      ->required()
      ->check(CLI::IsMember({"http", "scripted", "null"}));
  bench_cmd->add_option("--script", bench_args.script,
                        "Replay script for the scripted provider");
  bench_cmd->add_option("--fixtures", bench_args.fixtures_dir,
                        "Directory with per-family fixture programs");
  bench_cmd->add_option("--model", bench_args.model,
                        "Model id for requests and cost lookup");
  bench_cmd->add_option("--costs", bench_args.costs_path,
                        "Cost table JSON (model id -> per-1k rates)");
  bench_cmd->add_option("--workers", bench_args.workers,
                        "Concurrent instances");
  bench_cmd->add_option("--out", bench_args.out_dir, "Output directory")
      ->required();
  bench_cmd->add_flag("--no-backtrack", bench_args.no_backtrack,
                      "Commit to the first binding of each subgoal");
  bench_cmd->add_flag("--no-binding-prop", bench_args.no_binding_prop,
                      "Do not propagate bindings across sibling subgoals");
  bench_cmd->add_option("--depth-limit", bench_args.depth_limit,
                        "Maximum resolution depth");
  bench_cmd->add_option("--gen-rounds", bench_args.gen_rounds,
                        "Generation attempts per failed goal");

  std::string proof_path, program_path;
  CLI::App* validate_cmd = app.add_subcommand(
      "validate-proof", "Re-check a stored proof against a program");
  validate_cmd->add_option("--proof", proof_path, "Proof or solve-result JSON")
      ->required()
      ->check(CLI::ExistingFile);
  validate_cmd->add_option("--program", program_path, "Logic program file")
      ->required()
      ->check(CLI::ExistingFile);

  std::string runs_path, report_costs;
  CLI::App* report_cmd = app.add_subcommand(
      "report", "Aggregate a run log into an evaluation report");
  report_cmd
      ->add_option("--runs", runs_path,
                   "Run log JSONL or the directory containing runs.jsonl")
      ->required();
  report_cmd->add_option("--costs", report_costs,
                         "Cost table JSON (model id -> per-1k rates)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (solve_cmd->parsed()) return run_solve(solve_args);
    if (bench_cmd->parsed()) return run_bench_cmd(bench_args);
    if (validate_cmd->parsed()) return run_validate(proof_path, program_path);
    if (report_cmd->parsed()) return run_report(runs_path, report_costs);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
