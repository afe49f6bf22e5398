#include "symba/stepgen.hpp"

#include "symba/parser.hpp"
#include "symba/unify.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

namespace symba {

namespace {

std::string strip(std::string_view s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(text);
  while (std::getline(in, cur)) out.push_back(cur);
  return out;
}

void replace_all(std::string& text, std::string_view from, std::string_view to) {
  if (from.empty()) return;
  std::size_t pos = 0;
  while ((pos = text.find(from, pos)) != std::string::npos) {
    text.replace(pos, from.size(), to);
    pos += to.size();
  }
}

bool contains_any(const std::string& line, const std::vector<std::string>& markers) {
  for (const auto& m : markers)
    if (!m.empty() && line.find(m) != std::string::npos) return true;
  return false;
}

// Search responses imitate the shot layout, so the first line usually
// carries the module's cue. The retrieved sentence is what follows it.
std::string drop_cue_prefix(const std::string& line) {
  static const std::string_view cues[] = {
      "Applicable facts:", "Applicable fact:",
      "Applicable rules:", "Applicable rule:", "Statement:",
  };
  for (std::string_view cue : cues)
    if (line.rfind(cue, 0) == 0) return strip(line.substr(cue.size()));
  return line;
}

bool is_known_module(const std::string& name) {
  return name == "fact_search" || name == "rule_search" ||
         name == "fact_translation" || name == "rule_translation";
}

}  // namespace

std::size_t count_tokens(const std::string& text) {
  std::istringstream in(text);
  std::string tok;
  std::size_t n = 0;
  while (in >> tok) ++n;
  return n;
}

// ---------------------------------------------------------------------------
// PromptTemplate

PromptTemplate PromptTemplate::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open template file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse(buf.str(), path);
}

PromptTemplate PromptTemplate::parse(std::string_view text,
                                     const std::string& origin) {
  PromptTemplate t;
  auto fail = [&](const std::string& msg) {
    throw std::runtime_error(origin + ": " + msg);
  };

  std::vector<std::string> lines = split_lines(std::string(text));
  std::size_t i = 0;

  // Header: `key: value` lines, blank lines, and '#' comments, up to the
  // first [block].
  for (; i < lines.size(); ++i) {
    std::string line = strip(lines[i]);
    if (!line.empty() && line.front() == '[') break;
    if (line.empty() || line.front() == '#') continue;
    std::size_t colon = line.find(':');
    if (colon == std::string::npos) fail("header line is not `key: value`: " + line);
    std::string key = strip(line.substr(0, colon));
    std::string value = strip(line.substr(colon + 1));
    if (key == "module") {
      if (!is_known_module(value)) fail("unknown module name: " + value);
      t.module_ = value;
    } else if (key == "no_answer") {
      if (value.empty()) fail("empty no_answer marker");
      t.markers_.push_back(value);
    } else if (key == "mode") {
      if (value != "fixed") fail("unknown mode: " + value);
      t.fixed_ = true;
    } else {
      fail("unknown header key: " + key);
    }
  }
  if (t.module_.empty()) fail("missing `module:` header");

  // Blocks: verbatim text between section headers, outer blank lines trimmed.
  std::string current;
  std::vector<std::string> body;
  auto flush = [&]() {
    if (current.empty()) return;
    while (!body.empty() && strip(body.front()).empty()) body.erase(body.begin());
    while (!body.empty() && strip(body.back()).empty()) body.pop_back();
    std::string joined;
    for (std::size_t k = 0; k < body.size(); ++k) {
      if (k) joined += '\n';
      joined += body[k];
    }
    if (current == "[preamble]") {
      t.preamble_ = joined;
    } else if (current == "[shot positive]") {
      t.shots_.push_back({true, joined});
    } else if (current == "[shot negative]") {
      t.shots_.push_back({false, joined});
    } else if (current == "[final]") {
      t.final_ = joined;
    }
    body.clear();
  };
  for (; i < lines.size(); ++i) {
    std::string s = strip(lines[i]);
    if (!s.empty() && s.front() == '[' && s.back() == ']') {
      if (s != "[preamble]" && s != "[shot positive]" &&
          s != "[shot negative]" && s != "[final]")
        fail("unknown block: " + s);
      flush();
      current = s;
      continue;
    }
    if (current.empty()) fail("text outside any block: " + s);
    body.push_back(lines[i]);
  }
  flush();

  if (!t.fixed_ && t.final_.empty()) fail("missing [final] block");
  return t;
}

std::string PromptTemplate::render(const std::string& context,
                                   const std::string& query) const {
  if (fixed_)
    throw std::runtime_error("template '" + module_ +
                             "' is fixed and renders no prompt");
  std::string out;
  if (!preamble_.empty()) {
    out += preamble_;
    out += "\n\n";
  }
  std::size_t n = 1;
  for (const auto& shot : shots_) {
    out += "Example " + std::to_string(n++) + "\n";
    out += shot.text;
    out += "\n\n";
  }
  out += "Example " + std::to_string(n) + "\n";
  std::string fin = final_;
  // The live block reads like the shots, so templates may name the slot
  // after what it holds; every spelling receives the same context string.
  for (std::string_view slot : {"{facts}", "{rules}", "{fact}", "{rule}", "{context}"})
    replace_all(fin, slot, context);
  replace_all(fin, "{query}", query);
  out += fin;
  return out;
}

TemplateSet TemplateSet::load_dir(const std::string& dir) {
  auto one = [&](const std::string& module) {
    std::string path = dir + "/" + module + ".tmpl";
    PromptTemplate t = PromptTemplate::load(path);
    if (t.module() != module)
      throw std::runtime_error(path + ": declares module '" + t.module() +
                               "', expected '" + module + "'");
    return t;
  };
  TemplateSet s{one("fact_search"), one("rule_search"),
                one("fact_translation"), one("rule_translation")};
  return s;
}

// ---------------------------------------------------------------------------
// Validation

ValidationOutcome validate_candidate(const std::string& candidate_text,
                                     const Literal& goal) {
  ValidationOutcome out;
  std::string text = strip(candidate_text);
  if (text.empty()) {
    out.reason = "empty";
    return out;
  }
  Clause c;
  try {
    c = parse_clause(text);
  } catch (const ParseError&) {
    out.reason = "parse_error";
    return out;
  }
  if (c.is_fact() && c.head.negative && c.head.term->is_atom()) {
    // "not answer." — a bodiless zero-arity negative fact is the model
    // declining to produce a value, not an assertable statement.
    out.reason = "refusal_marker";
    return out;
  }
  if (c.head.negative != goal.negative) {
    out.reason = "no_unify";
    return out;
  }
  VariableCounter counter;
  reserve_variable_names(goal, counter);
  Clause inst = rename_apart(c, counter);
  if (!unify(inst.head.term, goal.term)) {
    out.reason = "no_unify";
    return out;
  }
  c.source = ClauseSource::generated;
  out.clause = std::move(c);
  return out;
}

// ---------------------------------------------------------------------------
// Generation

GenerationOutcome generate(const Literal& goal, const std::string& nl_context,
                           const TemplateSet& templates,
                           CompletionProvider& provider,
                           const CompletionParams& base_params) {
  GenerationOutcome out;
  FormatOptions anon;
  anon.anonymize_variables = true;
  const std::string query = format_literal(goal, anon);

  auto call = [&](const PromptTemplate& tmpl, const std::string& context) {
    CompletionParams p = base_params;
    p.module = tmpl.module();
    p.goal = query;
    p.no_answer = tmpl.no_answer();
    Completion c = provider.complete(tmpl.render(context, query), p);
    out.usage.push_back(
        {tmpl.module(), c.prompt_tokens, c.completion_tokens, c.usage_estimated});
    return c.text;
  };

  auto run_path = [&](const PromptTemplate& search,
                      const PromptTemplate& translate) {
    std::string response =
        search.fixed() ? search.no_answer() : call(search, nl_context);
    for (const std::string& raw_line : split_lines(response)) {
      std::string line = strip(raw_line);
      if (line.empty()) continue;
      if (contains_any(line, search.markers())) continue;
      line = drop_cue_prefix(line);
      if (line.empty()) continue;

      std::string raw =
          translate.fixed() ? translate.no_answer() : call(translate, line);
      std::string cand;
      for (const std::string& tl : split_lines(raw)) {
        cand = drop_cue_prefix(strip(tl));
        if (!cand.empty()) break;
      }
      const std::string& shown = cand.empty() ? raw : cand;
      if (contains_any(cand, translate.markers())) {
        out.rejected.push_back({shown, "refusal_marker"});
        continue;
      }
      ValidationOutcome v = validate_candidate(cand, goal);
      if (!v.clause) {
        out.rejected.push_back({shown, v.reason});
        continue;
      }
      bool dup = std::any_of(out.clauses.begin(), out.clauses.end(),
                             [&](const Clause& c) { return clause_equal(c, *v.clause); });
      if (!dup) out.clauses.push_back(std::move(*v.clause));
    }
  };

  run_path(templates.fact_search, templates.fact_translation);
  run_path(templates.rule_search, templates.rule_translation);
  return out;
}

// ---------------------------------------------------------------------------
// StepGenerator

StepGenerator::StepGenerator(std::string nl_context, const TemplateSet& templates,
                             CompletionProvider& provider,
                             CompletionParams base_params)
    : nl_context_(std::move(nl_context)),
      templates_(templates),
      provider_(provider),
      base_(std::move(base_params)) {}

std::vector<Clause> StepGenerator::operator()(const Literal& goal,
                                              SolveStats& stats) {
  GenerationOutcome g =
      generate(goal, nl_context_, templates_, provider_, base_);
  stats.llm_calls += g.usage.size();
  calls_.insert(calls_.end(), g.usage.begin(), g.usage.end());
  rejected_.insert(rejected_.end(), g.rejected.begin(), g.rejected.end());
  return std::move(g.clauses);
}

std::size_t StepGenerator::prompt_tokens() const {
  std::size_t n = 0;
  for (const auto& c : calls_) n += c.prompt_tokens;
  return n;
}

std::size_t StepGenerator::completion_tokens() const {
  std::size_t n = 0;
  for (const auto& c : calls_) n += c.completion_tokens;
  return n;
}

}  // namespace symba
