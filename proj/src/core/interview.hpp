#pragma once

#include <string>
#include <vector>

#include "core/gateway.hpp"
#include "core/types.hpp"

namespace persim {

struct InterviewScript {
  std::vector<std::string> questions;
  std::string preamble;

  void validate() const;
};

// The ten life-narrative interview questions, in order.
InterviewScript default_interview_questions();

// Prompt sent for question i: preamble, the accepted pairs 1..i-1 rendered as
// Question/Answer blocks, then question i with a dangling "Answer:".
std::string interview_prompt(const InterviewScript& script,
                             const std::vector<QAPair>& accepted, size_t next_question);

// Full transcript rendering (preamble + every block), as used for deep
// persona binding.
std::string render_transcript(const InterviewScript& script, const std::vector<QAPair>& pairs);

struct BackstoryOptions {
  int max_attempts = 8;
  uint64_t seed = 0;
  std::string persona_id;  // assigned by the caller
};

// Interviews the backend question by question, critic-filtering each answer.
// Throws ExhaustedError naming the failing question when an answer never
// passes the critic.
Backstory generate_backstory(Gateway& gateway, const InterviewScript& script,
                             const GenerationParams& gen, const std::string& rubric,
                             const BackstoryOptions& options);

}  // namespace persim
