#include "core/gateway.hpp"

#include <chrono>
#include <cstdlib>
#include <thread>

#include <httplib.h>

#include "core/util.hpp"

namespace persim {

Gateway::Gateway(std::shared_ptr<Backend> backend, int max_inflight, RetryPolicy retry,
                 std::shared_ptr<Backend> critic)
    : backend_(std::move(backend)),
      critic_(critic ? std::move(critic) : backend_),
      retry_(retry),
      max_inflight_(std::max(1, max_inflight)),
      slots_(std::max(1, max_inflight)) {}

Completion Gateway::complete_with_retry(Backend& b, const std::string& prompt,
                                        const GenerationParams& params) {
  if (prompt.empty()) throw Error(Errc::invalid_argument, "prompt must be non-empty");
  params.validate();
  int delay_ms = retry_.base_delay_ms;
  for (int attempt = 0;; ++attempt) {
    try {
      slots_.acquire();
      Completion c;
      try {
        c = b.complete(prompt, params);
      } catch (...) {
        slots_.release();
        throw;
      }
      slots_.release();
      return c;
    } catch (const Error& e) {
      if (e.code() != Errc::backend_unavailable || attempt >= retry_.max_retries) throw;
      if (delay_ms > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(delay_ms));
        delay_ms *= 2;
      }
    }
  }
}

Completion Gateway::complete(const std::string& prompt, const GenerationParams& params) {
  return complete_with_retry(*backend_, prompt, params);
}

std::string render_judge_prompt(const std::string& candidate, const std::string& rubric) {
  std::string prompt = rubric;
  prompt += "\n\nText to evaluate:\n<<<\n";
  prompt += candidate;
  prompt += "\n>>>\n\nRespond with ACCEPT or REJECT followed by a brief reason.";
  return prompt;
}

JudgeVerdict parse_verdict(const std::string& critic_text) {
  std::string text = trim(critic_text);
  size_t end = 0;
  while (end < text.size() && !std::isspace(static_cast<unsigned char>(text[end])) &&
         text[end] != ':' && text[end] != ',' && text[end] != '.')
    ++end;
  std::string head = to_lower(text.substr(0, end));
  std::string rest = trim(text.substr(end));
  while (!rest.empty() && (rest.front() == ':' || rest.front() == ',' || rest.front() == '.'))
    rest = trim(rest.substr(1));
  if (head == "accept") return JudgeVerdict{true, rest};
  if (head == "reject") return JudgeVerdict{false, rest.empty() ? "no reason given" : rest};
  throw Error(Errc::unparseable_verdict,
              "critic reply matches neither ACCEPT nor REJECT: '" + text.substr(0, 80) + "'");
}

JudgeVerdict Gateway::judge(const std::string& candidate, const std::string& rubric,
                            const GenerationParams& params) {
  if (params.temperature != 0.0)
    throw Error(Errc::invalid_argument, "critic calls must run at temperature 0");
  Completion reply = complete_with_retry(*critic_, render_judge_prompt(candidate, rubric), params);
  if (reply.finish_reason == FinishReason::error)
    throw Error(Errc::unparseable_verdict, "critic returned an error completion");
  return parse_verdict(reply.text);
}

SampleResult Gateway::sample_until_accepted(const std::string& prompt, GenerationParams gen,
                                            const std::string& rubric, int max_attempts) {
  if (max_attempts < 1) throw Error(Errc::invalid_argument, "max_attempts must be >= 1");
  std::vector<JudgeVerdict> audit;
  uint64_t base_seed = gen.seed;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    gen.seed = base_seed + static_cast<uint64_t>(attempt - 1);
    Completion c = complete(prompt, gen);
    JudgeVerdict v = judge(c.text, rubric, GenerationParams::critic());
    audit.push_back(v);
    if (v.accept) return SampleResult{std::move(c), attempt, std::move(audit)};
  }
  throw ExhaustedError("no completion accepted after " + std::to_string(max_attempts) +
                           " attempts",
                       std::move(audit));
}

std::string dialog_rubric() {
  return
      "You are screening a candidate answer from a spoken life-story interview.\n"
      "Reject the text if it contains any of: code blocks, markup, factual\n"
      "inconsistencies with itself, or structure that is not natural spoken\n"
      "dialog (lists of headings, tables, scripts). Accept plain first-person\n"
      "narrative even when it hedges or rambles; people speak imperfectly.";
}

// ---------------------------------------------------------------------------
// HttpBackend

HttpBackend::HttpBackend(HttpBackendConfig cfg) : cfg_(std::move(cfg)) {
  if (cfg_.endpoint.empty())
    throw Error(Errc::config, "http backend requires an endpoint URL");
  if (!cfg_.auth_env.empty()) {
    const char* tok = std::getenv(cfg_.auth_env.c_str());
    if (tok != nullptr) token_ = tok;
  }
}

std::string HttpBackend::tag() const { return "http:" + cfg_.model; }

Completion HttpBackend::complete(const std::string& prompt, const GenerationParams& params) {
  json body{{"model", cfg_.model},
            {"prompt", prompt},
            {"max_tokens", params.max_tokens},
            {"temperature", params.temperature},
            {"stop", params.stop_sequences},
            {"seed", params.seed}};

  httplib::Client client(cfg_.endpoint);
  client.set_connection_timeout(0, cfg_.connect_timeout_ms * 1000);
  client.set_read_timeout(cfg_.read_timeout_ms / 1000, (cfg_.read_timeout_ms % 1000) * 1000);
  httplib::Headers headers;
  if (!token_.empty()) headers.emplace("Authorization", "Bearer " + token_);

  auto res = client.Post(cfg_.path, headers, body.dump(), "application/json");
  if (!res)
    throw Error(Errc::backend_unavailable,
                "transport failure to " + cfg_.endpoint + ": " + httplib::to_string(res.error()));
  if (res->status == 429 || res->status >= 500)
    throw Error(Errc::backend_unavailable,
                "backend returned status " + std::to_string(res->status));
  if (res->status != 200)
    throw Error(Errc::backend_malformed, "backend returned status " + std::to_string(res->status) +
                                             ": " + res->body.substr(0, 200));

  json reply;
  try {
    reply = json::parse(res->body);
  } catch (const json::parse_error&) {
    throw Error(Errc::backend_malformed, "backend response is not JSON");
  }
  if (!reply.contains("choices") || !reply["choices"].is_array() || reply["choices"].empty())
    throw Error(Errc::backend_malformed, "backend response has no choices");
  const json& choice = reply["choices"][0];
  if (!choice.contains("text") || !choice["text"].is_string())
    throw Error(Errc::backend_malformed, "backend choice has no text field");

  Completion c;
  c.text = choice["text"].get<std::string>();
  c.backend_tag = tag();
  c.finish_reason = FinishReason::stop;
  if (choice.contains("finish_reason") && choice["finish_reason"].is_string()) {
    std::string fr = choice["finish_reason"].get<std::string>();
    if (fr == "length") c.finish_reason = FinishReason::length;
    else if (fr != "stop") c.finish_reason = FinishReason::error;
  }
  if (c.finish_reason == FinishReason::error) c.text.clear();
  return c;
}

}  // namespace persim
