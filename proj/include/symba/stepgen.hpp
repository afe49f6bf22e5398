#pragma once

#include "symba/solver.hpp"
#include "symba/term.hpp"

#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace symba {

// ---------------------------------------------------------------------------
// Completion providers

struct CompletionParams {
  std::string model;
  int max_tokens = 512;
  double temperature = 0.0;
  // Call metadata, filled in by the generation pipeline. Replay providers
  // key on these; network providers ignore them.
  std::string instance;  // benchmark instance id, empty outside the harness
  std::string module;
  std::string goal;
  std::string no_answer;  // the module's no-answer marker
};

struct Completion {
  std::string text;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  // True when the provider did not report usage and the counts are
  // whitespace-token estimates.
  bool usage_estimated = false;
};

class ProviderError : public std::runtime_error {
 public:
  ProviderError(const std::string& message, int attempts)
      : std::runtime_error(message), attempts(attempts) {}
  int attempts = 1;
};

class CompletionProvider {
 public:
  virtual ~CompletionProvider() = default;
  // Must be safe to call from multiple threads.
  virtual Completion complete(const std::string& prompt,
                              const CompletionParams& params) = 0;
};

// Whitespace-delimited token count, the estimate used whenever a provider
// does not report usage itself.
std::size_t count_tokens(const std::string& text);

// Always returns empty text; solving proceeds purely symbolically.
std::unique_ptr<CompletionProvider> make_null_provider();

// Deterministic replay from a JSONL script of
//   {"module": ..., "goal": ..., "responses": [...]}
// entries, optionally scoped with "instance": an entry without one answers
// any caller, a scoped entry only calls made for that benchmark instance.
// Responses for one key are consumed in order; a missing or exhausted key
// yields the calling module's no-answer marker.
std::unique_ptr<CompletionProvider> make_scripted_provider(
    const std::string& script_path);

struct HttpProviderConfig {
  std::string base_url;  // e.g. https://api.example.com/v1
  std::string api_key;
  std::string model;
  int max_retries = 3;
  int timeout_seconds = 120;
};

// Chat-completion client: one user message per call, temperature 0 unless
// overridden. Reads SYMBA_API_BASE / SYMBA_API_KEY / SYMBA_MODEL when the
// corresponding config fields are empty.
std::unique_ptr<CompletionProvider> make_http_provider(HttpProviderConfig cfg);

// ---------------------------------------------------------------------------
// Prompt templates

struct Shot {
  bool positive = true;
  std::string text;
};

// Template file layout: `key: value` headers (module, no_answer, mode),
// then [preamble] / [shot positive] / [shot negative] / [final] blocks.
// The final block carries {context} and {query} placeholders; shots are
// rendered verbatim under auto-numbered "Example N" headings.
class PromptTemplate {
 public:
  static PromptTemplate load(const std::string& path);
  static PromptTemplate parse(std::string_view text, const std::string& origin);

  const std::string& module() const { return module_; }
  // First marker: what a replay provider returns for a missing key.
  const std::string& no_answer() const { return markers_.empty() ? empty_ : markers_.front(); }
  // All markers; a search line containing any of them asserts nothing.
  const std::vector<std::string>& markers() const { return markers_; }
  // Fixed templates never call the provider; they "answer" no_answer().
  bool fixed() const { return fixed_; }
  const std::vector<Shot>& shots() const { return shots_; }

  std::string render(const std::string& context, const std::string& query) const;

 private:
  std::string module_;
  std::vector<std::string> markers_;
  bool fixed_ = false;
  std::string preamble_;
  std::vector<Shot> shots_;
  std::string final_;
  std::string empty_;
};

struct TemplateSet {
  PromptTemplate fact_search;
  PromptTemplate rule_search;
  PromptTemplate fact_translation;
  PromptTemplate rule_translation;

  // Loads <dir>/{fact_search,rule_search,fact_translation,rule_translation}.tmpl
  static TemplateSet load_dir(const std::string& dir);
};

// ---------------------------------------------------------------------------
// Generation

struct RejectedCandidate {
  std::string raw_text;
  std::string reason;  // parse_error | no_unify | empty | refusal_marker
};

struct ModuleCall {
  std::string module;
  std::size_t prompt_tokens = 0;
  std::size_t completion_tokens = 0;
  bool usage_estimated = false;
};

struct GenerationOutcome {
  std::vector<Clause> clauses;  // all passed validation; source=generated
  std::vector<RejectedCandidate> rejected;
  std::vector<ModuleCall> usage;
};

// Symbolic gate for one candidate statement: parse as a single clause, then
// require the head to unify with the goal at matching polarity. Performs no
// provider calls. On rejection, clause is empty and reason is set.
struct ValidationOutcome {
  std::optional<Clause> clause;
  std::string reason;
};
ValidationOutcome validate_candidate(const std::string& candidate_text,
                                     const Literal& goal);

// One single-step generation round: fact search -> per-line fact
// translation, rule search -> per-line rule translation, each statement
// through validation. Marker lines assert nothing and reject nothing.
GenerationOutcome generate(const Literal& goal, const std::string& nl_context,
                           const TemplateSet& templates,
                           CompletionProvider& provider,
                           const CompletionParams& base_params);

// GeneratorHook adapter owning the cross-call ledgers (provider usage and
// rejected candidates) for one solve run.
class StepGenerator {
 public:
  StepGenerator(std::string nl_context, const TemplateSet& templates,
                CompletionProvider& provider, CompletionParams base_params);

  std::vector<Clause> operator()(const Literal& goal, SolveStats& stats);

  const std::vector<ModuleCall>& calls() const { return calls_; }
  const std::vector<RejectedCandidate>& rejected() const { return rejected_; }
  std::size_t prompt_tokens() const;
  std::size_t completion_tokens() const;

 private:
  std::string nl_context_;
  const TemplateSet& templates_;
  CompletionProvider& provider_;
  CompletionParams base_;
  std::vector<ModuleCall> calls_;
  std::vector<RejectedCandidate> rejected_;
};

}  // namespace symba
