#include "symba/harness.hpp"

#include "symba/parser.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace symba {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

[[noreturn]] void fail_row(const std::string& path, std::size_t row,
                           const std::string& message) {
  throw std::runtime_error(path + ":" + std::to_string(row) + ": " + message);
}

bool known_family(const std::string& f) {
  return f == "deductive" || f == "relational" || f == "arithmetic";
}

// Reads a JSON number without a detour through double, so labels like
// 36.05 stay exact.
Rational exact_number(const Json& j) {
  auto parsed = parse_number(j.dump());
  if (!parsed) throw std::runtime_error("unreadable number " + j.dump());
  return *parsed;
}

std::string prediction_kind_name(Prediction::Kind k) {
  switch (k) {
    case Prediction::Kind::boolean: return "boolean";
    case Prediction::Kind::number: return "number";
    case Prediction::Kind::no_answer: return "no_answer";
    case Prediction::Kind::errored: return "errored";
  }
  return "no_answer";
}

Prediction::Kind prediction_kind_from(const std::string& name) {
  if (name == "boolean") return Prediction::Kind::boolean;
  if (name == "number") return Prediction::Kind::number;
  if (name == "no_answer") return Prediction::Kind::no_answer;
  if (name == "errored") return Prediction::Kind::errored;
  throw std::runtime_error("unknown prediction kind \"" + name + "\"");
}

Json solver_to_json(const SolverConfig& s) {
  Json j;
  j["enable_backtracking"] = s.enable_backtracking;
  j["enable_binding_propagation"] = s.enable_binding_propagation;
  j["depth_limit"] = s.depth_limit;
  j["max_generation_rounds_per_goal"] = s.max_generation_rounds_per_goal;
  return j;
}

SolverConfig solver_from_json(const Json& j) {
  SolverConfig s;
  s.enable_backtracking = j.at("enable_backtracking").get<bool>();
  s.enable_binding_propagation = j.at("enable_binding_propagation").get<bool>();
  s.depth_limit = j.at("depth_limit").get<std::size_t>();
  s.max_generation_rounds_per_goal =
      j.at("max_generation_rounds_per_goal").get<std::size_t>();
  return s;
}

const CostRates* rates_for(const CostTable& costs, const std::string& model) {
  auto it = costs.find(model);
  if (it == costs.end()) it = costs.find("default");
  return it == costs.end() ? nullptr : &it->second;
}

}  // namespace

// ---------------------------------------------------------------------------
// Dataset loading

std::vector<BenchmarkInstance> load_dataset(const std::string& path,
                                            const std::string& format_hint) {
  if (format_hint != "jsonl")
    throw std::runtime_error("unknown dataset format \"" + format_hint + "\"");
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);

  std::vector<BenchmarkInstance> out;
  std::string line;
  std::size_t row = 0;
  std::set<std::string> seen_ids;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    Json j;
    try {
      j = Json::parse(line);
    } catch (const Json::parse_error& e) {
      fail_row(path, row, std::string("invalid JSON: ") + e.what());
    }
    if (!j.is_object()) fail_row(path, row, "expected an object");
    for (const char* key : {"id", "context", "goal", "family"}) {
      if (!j.contains(key) || !j[key].is_string())
        fail_row(path, row, std::string("missing string field \"") + key + "\"");
    }
    if (!j.contains("label")) fail_row(path, row, "missing field \"label\"");

    BenchmarkInstance inst;
    inst.id = j["id"].get<std::string>();
    if (inst.id.empty()) fail_row(path, row, "empty id");
    if (!seen_ids.insert(inst.id).second)
      fail_row(path, row, "duplicate id \"" + inst.id + "\"");
    inst.context = j["context"].get<std::string>();
    inst.goal_text = j["goal"].get<std::string>();
    inst.family = j["family"].get<std::string>();
    if (!known_family(inst.family))
      fail_row(path, row, "unknown family \"" + inst.family + "\"");
    if (j.contains("split")) {
      if (!j["split"].is_string())
        fail_row(path, row, "field \"split\" must be a string");
      inst.split = j["split"].get<std::string>();
    }

    const Json& label = j["label"];
    if (label.is_boolean()) {
      inst.label = label.get<bool>();
    } else if (label.is_number()) {
      try {
        inst.label = exact_number(label);
      } catch (const std::exception& e) {
        fail_row(path, row, e.what());
      }
    } else {
      fail_row(path, row, "label must be a boolean or a number");
    }

    try {
      inst.goal = parse_literal(inst.goal_text);
    } catch (const ParseError& e) {
      fail_row(path, row, "bad goal: " + std::string(e.what()));
    }
    out.push_back(std::move(inst));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Scoring

bool prediction_correct(const Prediction& pred,
                        const std::variant<bool, Rational>& label) {
  switch (pred.kind) {
    case Prediction::Kind::boolean:
      return std::holds_alternative<bool>(label) &&
             std::get<bool>(label) == pred.truth;
    case Prediction::Kind::number: {
      if (!std::holds_alternative<Rational>(label)) return false;
      Rational diff = pred.value - std::get<Rational>(label);
      if (diff < 0) diff = -diff;
      return diff <= Rational(1, 1000000);
    }
    case Prediction::Kind::no_answer:
    case Prediction::Kind::errored:
      return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Single-instance execution

RunRecord run_instance(const BenchmarkInstance& inst, const BenchConfig& cfg,
                       const TemplateSet& templates,
                       CompletionProvider& provider,
                       const std::vector<Clause>& fixture) {
  RunRecord rec;
  rec.instance_id = inst.id;
  rec.family = inst.family;
  rec.split = inst.split;
  rec.config = cfg;

  CompletionParams base;
  base.model = cfg.model;
  base.instance = inst.id;
  StepGenerator gen(inst.context, templates, provider, base);

  Session session(Database(fixture), cfg.solver, std::ref(gen));

  // Deterministic providers get a fixed zero so replayed logs match byte
  // for byte; only live HTTP runs carry real timings.
  const bool timed = cfg.provider == "http";
  const auto t0 = std::chrono::steady_clock::now();

  std::optional<SolveResult> result;
  try {
    result = session.solve(inst.goal);
  } catch (const std::exception& e) {
    rec.prediction.kind = Prediction::Kind::errored;
    rec.prediction.error = e.what();
  }

  if (timed) {
    rec.usage.wall_time =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
            .count();
  }
  rec.usage.prompt_tokens = gen.prompt_tokens();
  rec.usage.completion_tokens = gen.completion_tokens();
  rec.usage.llm_calls = gen.calls().size();
  rec.rejected_candidates = gen.rejected().size();
  for (const Clause& c : session.database().clauses())
    rec.program.push_back(format_clause(c));

  if (result) {
    rec.diagnostics = result->diagnostics;
    if (!result->proofs.empty()) rec.proof = result->proofs.front();
    if (inst.family == "arithmetic") {
      // The answer is whatever number the goal's first variable ends up
      // bound to; an unproved goal or a non-numeric binding is no answer.
      std::vector<std::string> vars;
      collect_variables(inst.goal, vars);
      rec.prediction.kind = Prediction::Kind::no_answer;
      if (!vars.empty() && !result->bindings.empty()) {
        const Binding& first = result->bindings.front();
        auto it = first.find(vars.front());
        if (it != first.end() && it->second->is_number()) {
          rec.prediction.kind = Prediction::Kind::number;
          rec.prediction.value = it->second->value();
        }
      }
    } else {
      rec.prediction.kind = Prediction::Kind::boolean;
      rec.prediction.truth = result->proved();
    }
  }

  rec.correct = prediction_correct(rec.prediction, inst.label);
  return rec;
}

// ---------------------------------------------------------------------------
// Evaluation

namespace {

void add_usage(UsageTotals& total, const UsageTotals& u) {
  total.prompt_tokens += u.prompt_tokens;
  total.completion_tokens += u.completion_tokens;
  total.llm_calls += u.llm_calls;
  total.wall_time += u.wall_time;
}

void add_cost(EvalReport& report, const RunRecord& r, const CostTable& costs) {
  const CostRates* rates = rates_for(costs, r.config.model);
  if (!rates) return;
  report.input_cost +=
      static_cast<double>(r.usage.prompt_tokens) / 1000.0 * rates->input_per_1k;
  report.output_cost += static_cast<double>(r.usage.completion_tokens) /
                        1000.0 * rates->output_per_1k;
}

void tally_into(EvalReport& report, const std::string& family,
                const std::string& split, bool correct) {
  report.overall.total += 1;
  report.overall.correct += correct ? 1 : 0;
  Tally& fam = report.by_family[family];
  fam.total += 1;
  fam.correct += correct ? 1 : 0;
  if (!split.empty()) {
    Tally& sp = report.by_split[split];
    sp.total += 1;
    sp.correct += correct ? 1 : 0;
  }
}

}  // namespace

EvalReport evaluate(const std::vector<RunRecord>& records,
                    const std::vector<BenchmarkInstance>& instances,
                    const CostTable& costs) {
  std::map<std::string, const RunRecord*> by_id;
  for (const RunRecord& r : records) by_id[r.instance_id] = &r;

  EvalReport report;
  for (const BenchmarkInstance& inst : instances) {
    auto it = by_id.find(inst.id);
    if (it == by_id.end())
      throw std::runtime_error("no record for instance \"" + inst.id + "\"");
    const RunRecord& r = *it->second;
    tally_into(report, inst.family, inst.split,
               prediction_correct(r.prediction, inst.label));
    add_usage(report.usage, r.usage);
    add_cost(report, r, costs);
  }
  report.total_cost = report.input_cost + report.output_cost;
  return report;
}

EvalReport aggregate_records(const std::vector<RunRecord>& records,
                             const CostTable& costs) {
  EvalReport report;
  for (const RunRecord& r : records) {
    tally_into(report, r.family, r.split, r.correct);
    add_usage(report.usage, r.usage);
    add_cost(report, r, costs);
  }
  report.total_cost = report.input_cost + report.output_cost;
  return report;
}

CostTable load_cost_table(const std::string& path) {
  Json j;
  try {
    j = Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw std::runtime_error(path + ": invalid JSON: " + e.what());
  }
  if (!j.is_object()) throw std::runtime_error(path + ": expected an object");
  CostTable table;
  for (const auto& [model, rates] : j.items()) {
    if (!rates.is_object() || !rates.contains("input_per_1k") ||
        !rates.contains("output_per_1k")) {
      throw std::runtime_error(path + ": entry \"" + model +
                               "\" needs input_per_1k and output_per_1k");
    }
    table[model] = CostRates{rates["input_per_1k"].get<double>(),
                             rates["output_per_1k"].get<double>()};
  }
  return table;
}

// ---------------------------------------------------------------------------
// Whole-suite execution

BenchResult run_bench(const std::vector<BenchmarkInstance>& instances,
                      const BenchConfig& cfg, CompletionProvider& provider,
                      const CostTable& costs) {
  std::map<std::string, TemplateSet> template_cache;
  std::map<std::string, std::vector<Clause>> fixture_cache;
  for (const BenchmarkInstance& inst : instances) {
    if (!template_cache.count(inst.family)) {
      template_cache.emplace(
          inst.family,
          TemplateSet::load_dir(cfg.templates_dir + "/" + inst.family));
      std::vector<Clause> fixture;
      if (!cfg.fixtures_dir.empty()) {
        std::string path = cfg.fixtures_dir + "/" + inst.family + ".lp";
        if (std::filesystem::exists(path)) {
          fixture = parse_program(read_file(path));
          for (Clause& c : fixture) c.source = ClauseSource::fixture;
        }
      }
      fixture_cache.emplace(inst.family, std::move(fixture));
    }
  }

  BenchResult result;
  result.records.resize(instances.size());

  const std::size_t workers = std::min<std::size_t>(
      std::max(cfg.workers, 1), std::max<std::size_t>(instances.size(), 1));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) break;
      const BenchmarkInstance& inst = instances[i];
      result.records[i] =
          run_instance(inst, cfg, template_cache.at(inst.family), provider,
                       fixture_cache.at(inst.family));
    }
  };
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t i = 0; i < workers; ++i) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
  }

  result.report = evaluate(result.records, instances, costs);
  return result;
}

// ---------------------------------------------------------------------------
// Persistence

namespace {

Json prediction_to_json(const Prediction& p) {
  Json j;
  j["kind"] = prediction_kind_name(p.kind);
  switch (p.kind) {
    case Prediction::Kind::boolean:
      j["truth"] = p.truth;
      break;
    case Prediction::Kind::number:
      // Exact textual form; JSON doubles would round long rationals.
      j["value"] = format_number(p.value);
      break;
    case Prediction::Kind::errored:
      j["error"] = p.error;
      break;
    case Prediction::Kind::no_answer:
      break;
  }
  return j;
}

Prediction prediction_from_json(const Json& j) {
  Prediction p;
  p.kind = prediction_kind_from(j.at("kind").get<std::string>());
  switch (p.kind) {
    case Prediction::Kind::boolean:
      p.truth = j.at("truth").get<bool>();
      break;
    case Prediction::Kind::number: {
      auto value = parse_number(j.at("value").get<std::string>());
      if (!value)
        throw std::runtime_error("bad prediction value " + j.at("value").dump());
      p.value = *value;
      break;
    }
    case Prediction::Kind::errored:
      p.error = j.at("error").get<std::string>();
      break;
    case Prediction::Kind::no_answer:
      break;
  }
  return p;
}

Json usage_to_json(const UsageTotals& u) {
  Json j;
  j["prompt_tokens"] = u.prompt_tokens;
  j["completion_tokens"] = u.completion_tokens;
  j["llm_calls"] = u.llm_calls;
  j["wall_time"] = u.wall_time;
  return j;
}

UsageTotals usage_from_json(const Json& j) {
  UsageTotals u;
  u.prompt_tokens = j.at("prompt_tokens").get<std::size_t>();
  u.completion_tokens = j.at("completion_tokens").get<std::size_t>();
  u.llm_calls = j.at("llm_calls").get<std::uint64_t>();
  u.wall_time = j.at("wall_time").get<double>();
  return u;
}

// The worker count is deliberately not part of the snapshot: scheduling
// must never change what a run produced.
Json config_to_json(const BenchConfig& c) {
  Json j;
  j["provider"] = c.provider;
  j["script"] = c.script_path;
  j["templates"] = c.templates_dir;
  j["fixtures"] = c.fixtures_dir;
  j["model"] = c.model;
  j["solver"] = solver_to_json(c.solver);
  return j;
}

BenchConfig config_from_json(const Json& j) {
  BenchConfig c;
  c.provider = j.at("provider").get<std::string>();
  c.script_path = j.at("script").get<std::string>();
  c.templates_dir = j.at("templates").get<std::string>();
  c.fixtures_dir = j.at("fixtures").get<std::string>();
  c.model = j.at("model").get<std::string>();
  c.solver = solver_from_json(j.at("solver"));
  return c;
}

}  // namespace

Json record_to_json(const RunRecord& r) {
  Json j;
  j["instance"] = r.instance_id;
  j["family"] = r.family;
  j["split"] = r.split;
  j["prediction"] = prediction_to_json(r.prediction);
  j["correct"] = r.correct;
  j["usage"] = usage_to_json(r.usage);
  j["rejected_candidates"] = r.rejected_candidates;
  Json diags = Json::array();
  for (const Diagnostic& d : r.diagnostics)
    diags.push_back(Json{{"kind", d.kind}, {"message", d.message}});
  j["diagnostics"] = std::move(diags);
  j["program"] = r.program;
  if (r.proof) j["proof"] = proof_to_json(*r.proof);
  j["config"] = config_to_json(r.config);
  return j;
}

RunRecord record_from_json(const Json& j) {
  RunRecord r;
  r.instance_id = j.at("instance").get<std::string>();
  r.family = j.at("family").get<std::string>();
  r.split = j.at("split").get<std::string>();
  r.prediction = prediction_from_json(j.at("prediction"));
  r.correct = j.at("correct").get<bool>();
  r.usage = usage_from_json(j.at("usage"));
  r.rejected_candidates = j.at("rejected_candidates").get<std::size_t>();
  for (const Json& d : j.at("diagnostics"))
    r.diagnostics.push_back(
        Diagnostic{d.at("kind").get<std::string>(),
                   d.at("message").get<std::string>()});
  r.program = j.at("program").get<std::vector<std::string>>();
  if (j.contains("proof")) r.proof = proof_from_json(j.at("proof"));
  r.config = config_from_json(j.at("config"));
  return r;
}

Json report_to_json(const EvalReport& r) {
  auto tally = [](const Tally& t) {
    Json j;
    j["total"] = t.total;
    j["correct"] = t.correct;
    j["accuracy"] = t.accuracy();
    return j;
  };
  Json j;
  j["overall"] = tally(r.overall);
  Json fam = Json::object();
  for (const auto& [name, t] : r.by_family) fam[name] = tally(t);
  j["by_family"] = std::move(fam);
  Json sp = Json::object();
  for (const auto& [name, t] : r.by_split) sp[name] = tally(t);
  j["by_split"] = std::move(sp);
  j["usage"] = usage_to_json(r.usage);
  j["cost"] = Json{{"input", r.input_cost},
                   {"output", r.output_cost},
                   {"total", r.total_cost}};
  return j;
}

void write_run_log(const std::vector<RunRecord>& records,
                   const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const RunRecord& r : records) out << record_to_json(r).dump() << '\n';
}

std::vector<RunRecord> read_run_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<RunRecord> out;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      out.push_back(record_from_json(Json::parse(line)));
    } catch (const std::exception& e) {
      fail_row(path, row, e.what());
    }
  }
  return out;
}

}  // namespace symba
