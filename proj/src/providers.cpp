#include "symba/stepgen.hpp"

#include <chrono>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <map>
#include <mutex>
#include <thread>

#include "httplib.h"
#include "json.hpp"

namespace symba {

namespace {

using Json = nlohmann::json;

std::string env_or(const char* name, std::string fallback) {
  const char* v = std::getenv(name);
  return (v && *v) ? std::string(v) : std::move(fallback);
}

// ---------------------------------------------------------------------------

class NullProvider final : public CompletionProvider {
 public:
  Completion complete(const std::string& prompt,
                      const CompletionParams&) override {
    Completion c;
    c.text.clear();
    c.prompt_tokens = count_tokens(prompt);
    c.completion_tokens = 0;
    return c;
  }
};

// ---------------------------------------------------------------------------

class ScriptedProvider final : public CompletionProvider {
 public:
  explicit ScriptedProvider(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open script file: " + path);
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      std::string_view sv = line;
      if (sv.find_first_not_of(" \t\r") == std::string_view::npos) continue;
      Json j;
      try {
        j = Json::parse(line);
      } catch (const Json::exception& e) {
        throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                 ": invalid JSON: " + e.what());
      }
      if (!j.is_object() || !j.contains("module") || !j.contains("goal") ||
          !j.contains("responses") || !j["responses"].is_array())
        throw std::runtime_error(
            path + ":" + std::to_string(lineno) +
            ": expected {\"module\", \"goal\", \"responses\": [...]}");
      Key key{j.value("instance", std::string{}),
              j["module"].get<std::string>(), j["goal"].get<std::string>()};
      auto& queue = responses_[key];
      for (const auto& r : j["responses"]) {
        if (!r.is_string())
          throw std::runtime_error(path + ":" + std::to_string(lineno) +
                                   ": responses must be strings");
        queue.push_back(r.get<std::string>());
      }
    }
  }

  Completion complete(const std::string& prompt,
                      const CompletionParams& params) override {
    Completion c;
    c.prompt_tokens = count_tokens(prompt);
    {
      std::lock_guard<std::mutex> lock(mu_);
      // Instance-scoped entries shadow shared ones, so concurrent instances
      // never steal each other's replies.
      auto it = responses_.find({params.instance, params.module, params.goal});
      if (it == responses_.end() || it->second.empty())
        it = responses_.find({std::string{}, params.module, params.goal});
      if (it == responses_.end() || it->second.empty()) {
        c.text = params.no_answer;
      } else {
        c.text = it->second.front();
        it->second.pop_front();
      }
    }
    c.completion_tokens = count_tokens(c.text);
    return c;
  }

 private:
  using Key = std::tuple<std::string, std::string, std::string>;
  std::mutex mu_;
  std::map<Key, std::deque<std::string>> responses_;
};

// ---------------------------------------------------------------------------

struct SplitUrl {
  std::string host;  // scheme://authority, what the client connects to
  std::string path;  // leading path prefix, possibly empty
};

SplitUrl split_url(const std::string& base) {
  if (base.rfind("http://", 0) != 0 && base.rfind("https://", 0) != 0)
    throw std::runtime_error("base URL must start with http:// or https://: " +
                             base);
  std::size_t scheme = base.find("://");
  std::size_t slash = base.find('/', scheme + 3);
  SplitUrl out;
  if (slash == std::string::npos) {
    out.host = base;
  } else {
    out.host = base.substr(0, slash);
    out.path = base.substr(slash);
    while (!out.path.empty() && out.path.back() == '/') out.path.pop_back();
  }
  return out;
}

class HttpProvider final : public CompletionProvider {
 public:
  explicit HttpProvider(HttpProviderConfig cfg) : cfg_(std::move(cfg)) {
    if (cfg_.base_url.empty())
      throw std::runtime_error(
          "http provider needs a base URL (flag or SYMBA_API_BASE)");
    if (cfg_.model.empty())
      throw std::runtime_error(
          "http provider needs a model id (flag or SYMBA_MODEL)");
    url_ = split_url(cfg_.base_url);
  }

  Completion complete(const std::string& prompt,
                      const CompletionParams& params) override {
    Json body = {
        {"model", params.model.empty() ? cfg_.model : params.model},
        {"messages", Json::array({Json{{"role", "user"}, {"content", prompt}}})},
        {"temperature", params.temperature},
        {"max_tokens", params.max_tokens},
    };
    const std::string payload = body.dump();
    const std::string target = url_.path + "/chat/completions";

    std::string last_error;
    int attempts = 0;
    for (int attempt = 1; attempt <= cfg_.max_retries; ++attempt) {
      attempts = attempt;
      // One client per call keeps concurrent solves independent.
      httplib::Client cli(url_.host);
      cli.set_connection_timeout(cfg_.timeout_seconds, 0);
      cli.set_read_timeout(cfg_.timeout_seconds, 0);
      httplib::Headers headers;
      if (!cfg_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + cfg_.api_key);

      auto res = cli.Post(target, headers, payload, "application/json");
      if (!res) {
        last_error = "transport error: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status == 429 || res->status >= 500) {
        last_error = "HTTP " + std::to_string(res->status);
        int wait = 1;
        std::string ra = res->get_header_value("Retry-After");
        if (!ra.empty()) {
          try {
            wait = std::min(std::max(std::stoi(ra), 0), 30);
          } catch (const std::exception&) {
          }
        }
        if (attempt < cfg_.max_retries)
          std::this_thread::sleep_for(std::chrono::seconds(wait));
        continue;
      }
      if (res->status != 200)
        throw ProviderError("HTTP " + std::to_string(res->status) + " from " +
                                url_.host + target + ": " + res->body,
                            attempt);
      return parse_completion(res->body, prompt, attempt);
    }
    throw ProviderError("request to " + url_.host + target + " failed (" +
                            last_error + ")",
                        attempts);
  }

 private:
  Completion parse_completion(const std::string& body,
                              const std::string& prompt, int attempt) const {
    Json j;
    try {
      j = Json::parse(body);
    } catch (const Json::exception& e) {
      throw ProviderError(std::string("malformed response body: ") + e.what(),
                          attempt);
    }
    if (!j.contains("choices") || !j["choices"].is_array() ||
        j["choices"].empty())
      throw ProviderError("response has no choices", attempt);
    const Json& first = j["choices"][0];
    if (!first.contains("message") || !first["message"].contains("content"))
      throw ProviderError("response choice has no message content", attempt);

    Completion c;
    c.text = first["message"]["content"].get<std::string>();
    if (j.contains("usage") && j["usage"].contains("prompt_tokens") &&
        j["usage"].contains("completion_tokens")) {
      c.prompt_tokens = j["usage"]["prompt_tokens"].get<std::size_t>();
      c.completion_tokens = j["usage"]["completion_tokens"].get<std::size_t>();
    } else {
      c.prompt_tokens = count_tokens(prompt);
      c.completion_tokens = count_tokens(c.text);
      c.usage_estimated = true;
    }
    return c;
  }

  HttpProviderConfig cfg_;
  SplitUrl url_;
};

}  // namespace

std::unique_ptr<CompletionProvider> make_null_provider() {
  return std::make_unique<NullProvider>();
}

std::unique_ptr<CompletionProvider> make_scripted_provider(
    const std::string& script_path) {
  return std::make_unique<ScriptedProvider>(script_path);
}

std::unique_ptr<CompletionProvider> make_http_provider(HttpProviderConfig cfg) {
  cfg.base_url = cfg.base_url.empty()
                     ? env_or("SYMBA_API_BASE", "")
                     : cfg.base_url;
  cfg.api_key = cfg.api_key.empty() ? env_or("SYMBA_API_KEY", "") : cfg.api_key;
  cfg.model = cfg.model.empty() ? env_or("SYMBA_MODEL", "") : cfg.model;
  return std::make_unique<HttpProvider>(cfg);
}

}  // namespace symba
