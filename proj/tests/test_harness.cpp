#include "doctest.h"

#include "symba/harness.hpp"
#include "symba/parser.hpp"
#include "symba/proof.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace symba;

namespace {

const std::string kTemplates = SYMBA_DATA_DIR "/templates";

std::string script_entry(const std::string& instance, const std::string& module,
                         const std::string& goal,
                         const std::vector<std::string>& responses) {
  nlohmann::json j{{"instance", instance},
                   {"module", module},
                   {"goal", goal},
                   {"responses", responses}};
  return j.dump();
}

std::string write_lines(const std::string& name,
                        const std::vector<std::string>& lines) {
  auto path = std::filesystem::temp_directory_path() / name;
  std::ofstream out(path);
  for (const auto& l : lines) out << l << '\n';
  return path.string();
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::string instance_row(const std::string& id, const std::string& context,
                         const std::string& goal, Json label,
                         const std::string& family,
                         const std::string& split = "") {
  Json j;
  j["id"] = id;
  j["context"] = context;
  j["goal"] = goal;
  j["label"] = std::move(label);
  j["family"] = family;
  if (!split.empty()) j["split"] = split;
  return j.dump();
}

// The worked example the suite revolves around: prove is(bob, cold) from
// scratch by generating one rule and the two facts it needs.
const char* kColdContext =
    "Alan is young. Bob is young. Bob is round. "
    "If someone is young and round then they are cold.";

std::vector<std::string> cold_script(const std::string& id) {
  return {
      script_entry(id, "rule_search", "is(bob, cold)",
                   {"If someone is young and round, then they are cold."}),
      script_entry(id, "rule_translation", "is(bob, cold)",
                   {"is(X, cold) :- is(X, young), is(X, round)."}),
      script_entry(id, "fact_search", "is(bob, young)", {"Bob is young."}),
      script_entry(id, "fact_translation", "is(bob, young)",
                   {"is(bob, young)."}),
      script_entry(id, "fact_search", "is(bob, round)", {"Bob is round."}),
      script_entry(id, "fact_translation", "is(bob, round)",
                   {"is(bob, round)."}),
  };
}

const char* kPagesContext =
    "Julie is reading a 120-page book. Yesterday, she was able to read 12 "
    "pages and today, she read twice as many pages as yesterday. If she wants "
    "to read half of the remaining pages tomorrow, how many pages should she "
    "read?";

std::vector<std::string> pages_script(const std::string& id) {
  return {
      script_entry(id, "rule_search", "answer(_)",
                   {"The number of pages Julie should read tomorrow can be "
                    "calculated as half of the remaining pages."}),
      script_entry(id, "rule_translation", "answer(_)",
                   {"answer(X) :- number_of_remaining_pages(A), X = A / 2."}),
      script_entry(
          id, "rule_search", "number_of_remaining_pages(_)",
          {"The number of remaining pages can be calculated by subtracting "
           "the pages read yesterday and today from the total pages."}),
      script_entry(id, "rule_translation", "number_of_remaining_pages(_)",
                   {"number_of_remaining_pages(X) :- number_of_total_pages(T), "
                    "number_of_pages_read_yesterday(A), "
                    "number_of_pages_read_today(B), X = T - A - B."}),
      script_entry(id, "fact_search", "number_of_total_pages(_)",
                   {"Julie is reading a 120-page book."}),
      script_entry(id, "fact_translation", "number_of_total_pages(_)",
                   {"number_of_total_pages(120)."}),
      script_entry(id, "fact_search", "number_of_pages_read_yesterday(_)",
                   {"Yesterday, she was able to read 12 pages."}),
      script_entry(id, "fact_translation", "number_of_pages_read_yesterday(_)",
                   {"number_of_pages_read_yesterday(12)."}),
      script_entry(id, "rule_search", "number_of_pages_read_today(_)",
                   {"The number of pages read today can be calculated as "
                    "twice the number of pages read yesterday."}),
      script_entry(id, "rule_translation", "number_of_pages_read_today(_)",
                   {"number_of_pages_read_today(X) :- "
                    "number_of_pages_read_yesterday(A), X = 2 * A."}),
  };
}

BenchmarkInstance cold_instance(const std::string& id) {
  BenchmarkInstance inst;
  inst.id = id;
  inst.context = kColdContext;
  inst.goal_text = "is(bob, cold)";
  inst.goal = parse_literal(inst.goal_text);
  inst.label = true;
  inst.family = "deductive";
  return inst;
}

BenchmarkInstance pages_instance(const std::string& id) {
  BenchmarkInstance inst;
  inst.id = id;
  inst.context = kPagesContext;
  inst.goal_text = "answer(X)";
  inst.goal = parse_literal(inst.goal_text);
  inst.label = Rational(42);
  inst.family = "arithmetic";
  return inst;
}

BenchConfig scripted_config(const std::string& script) {
  BenchConfig cfg;
  cfg.templates_dir = kTemplates;
  cfg.provider = "scripted";
  cfg.script_path = script;
  cfg.model = "scripted-replay";
  return cfg;
}

struct BoomProvider : CompletionProvider {
  Completion complete(const std::string&, const CompletionParams&) override {
    throw ProviderError("connection refused", 3);
  }
};

Database program_of(const RunRecord& rec) {
  std::string text;
  for (const auto& line : rec.program) text += line + "\n";
  return Database(parse_program(text));
}

}  // namespace

TEST_CASE("dataset rows load with exact labels") {
  auto path = write_lines(
      "symba_harness_ds.jsonl",
      {
          instance_row("d1", "Bob is round.", "is(bob, round)", Json(true),
                       "deductive", "depth-2"),
          "",  // blank lines are skipped
          instance_row("a1", "Pages.", "answer(X)", Json(36.05), "arithmetic"),
          instance_row("r1", "[A] is [B]'s father.",
                       "isRelationOf(a, father, b)", Json(false), "relational"),
      });
  auto ds = load_dataset(path);
  REQUIRE(ds.size() == 3);

  CHECK(ds[0].id == "d1");
  CHECK(ds[0].family == "deductive");
  CHECK(ds[0].split == "depth-2");
  CHECK(std::get<bool>(ds[0].label));
  CHECK(format_literal(ds[0].goal) == "is(bob, round)");

  // 36.05 survives the trip exactly instead of picking up double noise.
  CHECK(ds[1].split.empty());
  CHECK(std::get<Rational>(ds[1].label) == Rational(3605, 100));

  CHECK_FALSE(std::get<bool>(ds[2].label));
}

TEST_CASE("dataset loading reports row-numbered errors") {
  auto check_fails = [](const std::string& name, const std::string& line,
                        const char* needle) {
    auto path = write_lines(name, {line});
    CHECK_THROWS_WITH_AS(load_dataset(path), doctest::Contains(needle),
                         std::runtime_error);
    CHECK_THROWS_WITH_AS(load_dataset(path), doctest::Contains(":1:"),
                         std::runtime_error);
  };

  check_fails("symba_harness_bad1.jsonl", "{not json", "invalid JSON");
  check_fails(
      "symba_harness_bad2.jsonl",
      R"x({"id":"x","goal":"p(a)","label":true,"family":"deductive"})x",
      "\"context\"");
  check_fails(
      "symba_harness_bad3.jsonl",
      R"x({"id":"x","context":"c","goal":"p(a)","label":true,"family":"weird"})x",
      "unknown family");
  check_fails(
      "symba_harness_bad4.jsonl",
      R"x({"id":"x","context":"c","goal":"p(","label":true,"family":"deductive"})x",
      "bad goal");
  check_fails(
      "symba_harness_bad5.jsonl",
      R"x({"id":"x","context":"c","goal":"p(a)","label":"yes","family":"deductive"})x",
      "label must be");

  auto dup = write_lines(
      "symba_harness_bad6.jsonl",
      {instance_row("x", "c", "p(a)", Json(true), "deductive"),
       instance_row("x", "c", "q(a)", Json(true), "deductive")});
  CHECK_THROWS_WITH_AS(load_dataset(dup), doctest::Contains("duplicate id"),
                       std::runtime_error);
  CHECK_THROWS_WITH_AS(load_dataset(dup), doctest::Contains(":2:"),
                       std::runtime_error);

  CHECK_THROWS_WITH_AS(load_dataset("/nonexistent/ds.jsonl"),
                       doctest::Contains("cannot open"), std::runtime_error);
  CHECK_THROWS_WITH_AS(load_dataset(dup, "csv"),
                       doctest::Contains("unknown dataset format"),
                       std::runtime_error);
}

TEST_CASE("prediction scoring uses an exact 1e-6 band") {
  Prediction p;
  p.kind = Prediction::Kind::number;

  p.value = Rational(42);
  CHECK(prediction_correct(p, Rational(42)));
  p.value = Rational(42) + Rational(1, 1000000);  // boundary included
  CHECK(prediction_correct(p, Rational(42)));
  p.value = Rational(42) + Rational(1, 999999);  // just past it
  CHECK_FALSE(prediction_correct(p, Rational(42)));
  p.value = Rational(42) - Rational(1, 1000000);
  CHECK(prediction_correct(p, Rational(42)));
  CHECK_FALSE(prediction_correct(p, true));  // kind/label mismatch

  Prediction b;
  b.kind = Prediction::Kind::boolean;
  b.truth = false;
  CHECK(prediction_correct(b, false));
  CHECK_FALSE(prediction_correct(b, true));
  CHECK_FALSE(prediction_correct(b, Rational(0)));

  Prediction n;
  n.kind = Prediction::Kind::no_answer;
  CHECK_FALSE(prediction_correct(n, true));
  CHECK_FALSE(prediction_correct(n, Rational(0)));
  n.kind = Prediction::Kind::errored;
  CHECK_FALSE(prediction_correct(n, true));
}

TEST_CASE("a deductive instance proves end to end from a scripted run") {
  auto script =
      write_lines("symba_harness_cold.jsonl", cold_script("deduct-01"));
  auto provider = make_scripted_provider(script);
  BenchConfig cfg = scripted_config(script);
  BenchmarkInstance inst = cold_instance("deduct-01");

  TemplateSet templates = TemplateSet::load_dir(kTemplates + "/deductive");
  RunRecord rec = run_instance(inst, cfg, templates, *provider);

  CHECK(rec.prediction.kind == Prediction::Kind::boolean);
  CHECK(rec.prediction.truth);
  CHECK(rec.correct);
  CHECK(rec.diagnostics.empty());
  CHECK(rec.usage.wall_time == 0.0);

  // Three generation rounds, three module calls each: the markers answered
  // for missing script keys still count as calls.
  CHECK(rec.usage.llm_calls == 9);
  CHECK(rec.usage.prompt_tokens > 0);
  CHECK(rec.usage.completion_tokens > 0);
  CHECK(rec.rejected_candidates == 0);

  REQUIRE(rec.program.size() == 3);
  CHECK(rec.program[0] == "is(X, cold) :- is(X, young), is(X, round).");
  CHECK(rec.program[1] == "is(bob, young).");
  CHECK(rec.program[2] == "is(bob, round).");

  // The stored program is a complete witness: the proof re-validates
  // against it alone.
  REQUIRE(rec.proof.has_value());
  ValidationReport vr = validate_proof(*rec.proof, program_of(rec));
  CHECK(vr.ok());
}

TEST_CASE("an arithmetic instance computes the exact answer") {
  auto script =
      write_lines("symba_harness_pages.jsonl", pages_script("arith-01"));
  BenchConfig cfg = scripted_config(script);
  BenchmarkInstance inst = pages_instance("arith-01");
  TemplateSet templates = TemplateSet::load_dir(kTemplates + "/arithmetic");

  SUBCASE("full configuration") {
    auto provider = make_scripted_provider(script);
    RunRecord rec = run_instance(inst, cfg, templates, *provider);

    CHECK(rec.prediction.kind == Prediction::Kind::number);
    CHECK(rec.prediction.value == Rational(42));
    CHECK(rec.correct);
    CHECK(rec.usage.llm_calls == 15);
    REQUIRE(rec.proof.has_value());
    ValidationReport vr = validate_proof(*rec.proof, program_of(rec));
    CHECK(vr.ok());
  }

  SUBCASE("binding propagation disabled") {
    auto provider = make_scripted_provider(script);
    cfg.solver.enable_binding_propagation = false;
    RunRecord rec = run_instance(inst, cfg, templates, *provider);

    // Subgoal results no longer reach the arithmetic literals, so the
    // chain cannot conclude and the instance scores as unanswered.
    CHECK(rec.prediction.kind == Prediction::Kind::no_answer);
    CHECK_FALSE(rec.correct);
  }
}

TEST_CASE("provider failures produce errored records, not crashes") {
  BoomProvider boom;
  BenchConfig cfg = scripted_config("unused.jsonl");
  BenchmarkInstance inst = cold_instance("deduct-err");
  TemplateSet templates = TemplateSet::load_dir(kTemplates + "/deductive");

  RunRecord rec = run_instance(inst, cfg, templates, boom);
  CHECK(rec.prediction.kind == Prediction::Kind::errored);
  CHECK(rec.prediction.error == "connection refused");
  CHECK_FALSE(rec.correct);
  CHECK(rec.usage.llm_calls == 0);
  CHECK(rec.proof == std::nullopt);
}

TEST_CASE("a bundled run is byte-identical across worker counts") {
  // Four instances across the three families. The second deductive
  // instance shares its goal text with the first, so replay correctness
  // depends on instance-scoped script entries.
  std::vector<std::string> script_lines = cold_script("deduct-01");
  for (const auto& line : pages_script("arith-01")) script_lines.push_back(line);
  script_lines.push_back(script_entry(
      "rel-01", "fact_search", "isRelationOf(george, father, _)",
      {"[George] is [Tim]'s father."}));
  script_lines.push_back(script_entry(
      "rel-01", "fact_translation", "isRelationOf(george, father, _)",
      {"isRelationOf(george, father, tim)."}));
  // The second hop is posed fully ground: the top goal already fixed both
  // ends, so only the middle link was open.
  script_lines.push_back(script_entry(
      "rel-01", "fact_search", "isRelationOf(tim, father, sam)",
      {"[Tim] is [Sam]'s father."}));
  script_lines.push_back(script_entry(
      "rel-01", "fact_translation", "isRelationOf(tim, father, sam)",
      {"isRelationOf(tim, father, sam)."}));
  auto script = write_lines("symba_harness_bundle.jsonl", script_lines);

  auto fixtures = std::filesystem::temp_directory_path() / "symba_harness_fx";
  std::filesystem::create_directories(fixtures);
  {
    std::ofstream out(fixtures / "relational.lp");
    out << "isRelationOf(X, grandfather, Y) :- isRelationOf(X, father, Z), "
           "isRelationOf(Z, father, Y).\n";
  }

  std::vector<BenchmarkInstance> instances;
  instances.push_back(cold_instance("deduct-01"));
  instances.back().split = "depth-2";
  instances.push_back(pages_instance("arith-01"));
  {
    BenchmarkInstance rel;
    rel.id = "rel-01";
    rel.context = "[George] is [Tim]'s father. [Tim] is [Sam]'s father.";
    rel.goal_text = "isRelationOf(george, grandfather, sam)";
    rel.goal = parse_literal(rel.goal_text);
    rel.label = true;
    rel.family = "relational";
    instances.push_back(rel);
  }
  // Same goal text as deduct-01 but nothing scripted for it: every module
  // answers its marker and the goal stays unproved.
  instances.push_back(cold_instance("deduct-02"));
  instances.back().label = false;
  instances.back().split = "depth-5";

  BenchConfig cfg = scripted_config(script);
  cfg.fixtures_dir = fixtures.string();
  CostTable costs{{"default", CostRates{0.03, 0.05}}};

  cfg.workers = 1;
  auto serial_provider = make_scripted_provider(script);
  BenchResult serial = run_bench(instances, cfg, *serial_provider, costs);
  cfg.workers = 4;
  auto parallel_provider = make_scripted_provider(script);
  BenchResult parallel = run_bench(instances, cfg, *parallel_provider, costs);

  auto log_a = write_lines("symba_harness_log_a.jsonl", {});
  auto log_b = write_lines("symba_harness_log_b.jsonl", {});
  write_run_log(serial.records, log_a);
  write_run_log(parallel.records, log_b);
  CHECK(slurp(log_a) == slurp(log_b));

  // Reading the log back reproduces the records bit for bit.
  std::vector<RunRecord> reread = read_run_log(log_a);
  REQUIRE(reread.size() == serial.records.size());
  for (std::size_t i = 0; i < reread.size(); ++i)
    CHECK(record_to_json(reread[i]).dump() ==
          record_to_json(serial.records[i]).dump());

  const EvalReport& report = serial.report;
  CHECK(report.overall.total == 4);
  CHECK(report.overall.correct == 4);
  CHECK(report.overall.accuracy() == 1.0);
  CHECK(report.by_family.at("deductive").total == 2);
  CHECK(report.by_family.at("deductive").correct == 2);
  CHECK(report.by_family.at("arithmetic").correct == 1);
  CHECK(report.by_family.at("relational").correct == 1);
  CHECK(report.by_split.at("depth-2").correct == 1);
  CHECK(report.by_split.at("depth-5").total == 1);
  CHECK(report.by_split.size() == 2);

  // 9 + 15 + 4 + 2 calls by hand-trace, and totals match the record sums.
  CHECK(report.usage.llm_calls == 30);
  UsageTotals sum;
  for (const RunRecord& r : serial.records) {
    sum.prompt_tokens += r.usage.prompt_tokens;
    sum.completion_tokens += r.usage.completion_tokens;
    sum.llm_calls += r.usage.llm_calls;
  }
  CHECK(report.usage.prompt_tokens == sum.prompt_tokens);
  CHECK(report.usage.completion_tokens == sum.completion_tokens);
  CHECK(report.usage.llm_calls == sum.llm_calls);
  CHECK(report.usage.wall_time == 0.0);

  double want_input = static_cast<double>(sum.prompt_tokens) / 1000.0 * 0.03;
  double want_output =
      static_cast<double>(sum.completion_tokens) / 1000.0 * 0.05;
  CHECK(report.input_cost == doctest::Approx(want_input));
  CHECK(report.output_cost == doctest::Approx(want_output));
  CHECK(report.total_cost == doctest::Approx(want_input + want_output));
  CHECK(report.total_cost > 0.0);

  // Aggregating the persisted records alone reproduces the same report.
  EvalReport replayed = aggregate_records(reread, costs);
  CHECK(report_to_json(replayed).dump() == report_to_json(report).dump());

  // The relational proof leans on the fixture rule; the stored program
  // includes it, so validation still goes through.
  const RunRecord& rel = serial.records[2];
  REQUIRE(rel.proof.has_value());
  CHECK(rel.program.size() == 3);
  CHECK(validate_proof(*rel.proof, program_of(rel)).ok());

  const RunRecord& unproved = serial.records[3];
  CHECK(unproved.prediction.kind == Prediction::Kind::boolean);
  CHECK_FALSE(unproved.prediction.truth);
  CHECK(unproved.correct);
  CHECK(unproved.usage.llm_calls == 2);
}

TEST_CASE("evaluate demands a record per instance") {
  std::vector<BenchmarkInstance> instances{cold_instance("deduct-01")};
  CHECK_THROWS_WITH_AS(evaluate({}, instances),
                       doctest::Contains("no record for instance"),
                       std::runtime_error);

  // Correctness is recomputed from labels, not trusted from the record.
  RunRecord rec;
  rec.instance_id = "deduct-01";
  rec.family = "deductive";
  rec.prediction.kind = Prediction::Kind::boolean;
  rec.prediction.truth = true;
  rec.correct = false;  // stale verdict
  EvalReport report = evaluate({rec}, instances);
  CHECK(report.overall.correct == 1);
}

TEST_CASE("cost tables load and reject incomplete entries") {
  auto path = write_lines(
      "symba_harness_costs.json",
      {R"({"default": {"input_per_1k": 0.03, "output_per_1k": 0.05},)"
       R"( "other": {"input_per_1k": 0.01, "output_per_1k": 0.02}})"});
  CostTable table = load_cost_table(path);
  REQUIRE(table.size() == 2);
  CHECK(table.at("default").input_per_1k == doctest::Approx(0.03));
  CHECK(table.at("other").output_per_1k == doctest::Approx(0.02));

  auto bad = write_lines("symba_harness_costs_bad.json",
                         {R"({"default": {"input_per_1k": 0.03}})"});
  CHECK_THROWS_WITH_AS(load_cost_table(bad),
                       doctest::Contains("output_per_1k"), std::runtime_error);
}
