#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace persim {

// Every failure the library reports maps onto one of these kinds. The C API
// folds them into coarser status codes; tests match on the exact kind.
enum class Errc {
  spec_violation,
  config,
  io,
  backend_unavailable,
  backend_malformed,
  unparseable_verdict,
  exhausted_attempts,
  degenerate_distribution,
  schema_mismatch,
  dimension,
  empty_roster,
  missing_trait,
  no_number_found,
  out_of_range,
  unknown_framing,
  empty_cell,
  incomplete_design,
  rank_deficient,
  insufficient_data,
  unknown_term,
  invalid_argument,
  internal,
};

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

  Errc code() const { return code_; }

 private:
  Errc code_;
};

struct JudgeVerdict {
  bool accept = false;
  std::string reason;
};

// Raised when rejection sampling runs out of attempts; keeps the per-attempt
// verdicts so callers can report what the critic objected to.
class ExhaustedError : public Error {
 public:
  ExhaustedError(const std::string& what, std::vector<JudgeVerdict> audit, int failed_index = -1)
      : Error(Errc::exhausted_attempts, what), audit_(std::move(audit)), failed_index_(failed_index) {}

  const std::vector<JudgeVerdict>& audit() const { return audit_; }
  int failed_index() const { return failed_index_; }

 private:
  std::vector<JudgeVerdict> audit_;
  int failed_index_;
};

}  // namespace persim
