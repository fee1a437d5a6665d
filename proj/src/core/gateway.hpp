#pragma once

#include <condition_variable>
#include <functional>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "core/types.hpp"

namespace persim {

// A text-completion backend. Implementations must be safe for concurrent
// calls; deterministic backends are pure functions of (prompt, params).
class Backend {
 public:
  virtual ~Backend() = default;
  virtual Completion complete(const std::string& prompt, const GenerationParams& params) = 0;
  virtual std::string tag() const = 0;
};

struct RetryPolicy {
  int max_retries = 3;      // transport retries, distinct from rejection sampling
  int base_delay_ms = 100;  // doubled per retry; 0 disables sleeping (tests)
};

struct SampleResult {
  Completion completion;
  int attempts = 0;
  std::vector<JudgeVerdict> audit;  // one verdict per attempt
};

// Bounded counting semaphore; caps in-flight backend requests.
class Semaphore {
 public:
  explicit Semaphore(int slots) : slots_(slots) {}
  void acquire() {
    std::unique_lock lk(mu_);
    cv_.wait(lk, [&] { return slots_ > 0; });
    --slots_;
  }
  void release() {
    {
      std::lock_guard lk(mu_);
      ++slots_;
    }
    cv_.notify_one();
  }

 private:
  std::mutex mu_;
  std::condition_variable cv_;
  int slots_;
};

// Uniform access to a completion backend plus the critic loop. Transport
// failures (Errc::backend_unavailable) are retried with exponential backoff;
// a retried request reuses the same (prompt, seed) so deterministic backends
// return the original completion rather than a fresh sample.
class Gateway {
 public:
  explicit Gateway(std::shared_ptr<Backend> backend, int max_inflight = 4,
                   RetryPolicy retry = {}, std::shared_ptr<Backend> critic = nullptr);

  Completion complete(const std::string& prompt, const GenerationParams& params);

  // Asks the critic to classify `candidate` under `rubric`. The critic must
  // run at temperature 0. The reply is parsed case-insensitively from its
  // first token: ACCEPT or REJECT, followed by a reason.
  JudgeVerdict judge(const std::string& candidate, const std::string& rubric,
                     const GenerationParams& params);

  // Resamples until the critic accepts, salting the seed per attempt.
  // Performs at most max_attempts complete() calls; throws ExhaustedError
  // carrying the full audit when none is accepted.
  SampleResult sample_until_accepted(const std::string& prompt, GenerationParams gen,
                                     const std::string& rubric, int max_attempts);

  Backend& backend() { return *backend_; }
  Backend& critic() { return *critic_; }
  int max_inflight() const { return max_inflight_; }

 private:
  Completion complete_with_retry(Backend& b, const std::string& prompt,
                                 const GenerationParams& params);

  std::shared_ptr<Backend> backend_;
  std::shared_ptr<Backend> critic_;
  RetryPolicy retry_;
  int max_inflight_;
  Semaphore slots_;
};

// Builds the prompt a judge call sends to the critic backend.
std::string render_judge_prompt(const std::string& candidate, const std::string& rubric);

// First-token ACCEPT/REJECT parse; throws Errc::unparseable_verdict.
JudgeVerdict parse_verdict(const std::string& critic_text);

// Rubric for narrative backstory filtering: rejects completions that are not
// plausible spoken dialog.
std::string dialog_rubric();

// Applies fn(i) for i in [0, n) on up to `workers` threads. Results are
// collected by index, so output order never depends on scheduling. The first
// exception aborts outstanding work and is rethrown.
template <typename T>
std::vector<T> map_indexed(size_t n, int workers, const std::function<T(size_t)>& fn) {
  std::vector<T> results(n);
  if (n == 0) return results;
  workers = std::max(1, std::min<int>(workers, static_cast<int>(n)));
  if (workers == 1) {
    for (size_t i = 0; i < n; ++i) results[i] = fn(i);
    return results;
  }
  std::mutex mu;
  size_t next = 0;
  std::exception_ptr first_error;
  auto worker = [&] {
    while (true) {
      size_t i;
      {
        std::lock_guard lk(mu);
        if (first_error || next >= n) return;
        i = next++;
      }
      try {
        T value = fn(i);
        std::lock_guard lk(mu);
        results[i] = std::move(value);
      } catch (...) {
        std::lock_guard lk(mu);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(static_cast<size_t>(workers));
  for (int w = 0; w < workers; ++w) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
  return results;
}

// ---------------------------------------------------------------------------
// Remote backend speaking the common completions-API shape:
// POST {model, prompt, max_tokens, temperature, stop, seed} ->
// {choices: [{text, finish_reason}]}.

struct HttpBackendConfig {
  std::string endpoint;              // scheme://host[:port]
  std::string path = "/v1/completions";
  std::string model;
  std::string auth_env;              // env var holding the bearer token; may be empty
  int connect_timeout_ms = 5000;
  int read_timeout_ms = 60000;
};

class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig cfg);
  Completion complete(const std::string& prompt, const GenerationParams& params) override;
  std::string tag() const override;

 private:
  HttpBackendConfig cfg_;
  std::string token_;
};

}  // namespace persim
