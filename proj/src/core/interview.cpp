#include "core/interview.hpp"

#include "core/prompts.hpp"
#include "core/util.hpp"

namespace persim {

void InterviewScript::validate() const {
  if (questions.empty()) throw Error(Errc::spec_violation, "interview script has no questions");
  for (const auto& q : questions)
    if (trim(q).empty()) throw Error(Errc::spec_violation, "interview script has a blank question");
}

InterviewScript default_interview_questions() {
  InterviewScript s;
  s.preamble = prompt_text::kInterviewPreamble;
  s.questions = {
      "To start, I would like to begin with a big question: tell me the story of your life. "
      "Start from the beginning--from your childhood, to education, to family and relationships, "
      "and to any major life events you may have had.",

      "Some people tell us that they've reached a crossroads at some points in their life where "
      "multiple paths were available, and their choice then made a significant difference in "
      "defining who they are. What about you? Was there a moment like that for you, and if so, "
      "could you tell me the whole story about that from start to finish?",

      "Tell me about anyone else in your life we haven't discussed (like friends or romantic "
      "partners). Are there people outside of your family who are important to you?",

      "Now let's talk about your current neighborhood. Tell me all about the neighborhood and "
      "area in which you are living now.",

      "Tell me about any recent changes to your daily routine.",

      "How would you describe your political views?",

      "How have you been thinking about race in the U.S. recently?",

      "For you, what makes it easy or hard to stay healthy?",

      "Some people are excited about medical vaccination, and others, not so much. How about "
      "you?",

      "Some people say they struggle with depression, anxiety, or something else like that. How "
      "about for you?",
  };
  return s;
}

std::string interview_prompt(const InterviewScript& script, const std::vector<QAPair>& accepted,
                             size_t next_question) {
  std::string prompt = script.preamble + "\n\n";
  for (const auto& pair : accepted) prompt += render_qa_block(pair.question, pair.answer);
  prompt += prompt_text::kQuestionPrefix + script.questions.at(next_question) + "\n" +
            prompt_text::kAnswerPrefix;
  return prompt;
}

std::string render_transcript(const InterviewScript& script, const std::vector<QAPair>& pairs) {
  std::string out = script.preamble + "\n\n";
  for (const auto& pair : pairs) out += render_qa_block(pair.question, pair.answer);
  return out;
}

namespace {

// A completion continues after "Answer:"; anything from a stray next
// "Question:" onward belongs to the next turn, not this answer.
std::string cut_at_stop(const std::string& text, const std::vector<std::string>& stops) {
  std::string out = text;
  for (const auto& stop : stops) {
    size_t pos = out.find(stop);
    if (pos != std::string::npos) out = out.substr(0, pos);
  }
  return out;
}

}  // namespace

Backstory generate_backstory(Gateway& gateway, const InterviewScript& script,
                             const GenerationParams& gen, const std::string& rubric,
                             const BackstoryOptions& options) {
  script.validate();
  Backstory story;
  story.persona_id = options.persona_id;
  story.generator_tag = gateway.backend().tag() + "#preamble=interview-transcript-v1";

  GenerationParams params = gen;
  if (params.stop_sequences.empty()) params.stop_sequences = {prompt_text::kQuestionPrefix};

  for (size_t qi = 0; qi < script.questions.size(); ++qi) {
    std::string prompt = interview_prompt(script, story.qa_pairs, qi);
    params.seed = options.seed + qi * 4096;  // leave room for attempt salting
    SampleResult result;
    try {
      result = gateway.sample_until_accepted(prompt, params, rubric, options.max_attempts);
    } catch (const ExhaustedError& e) {
      throw ExhaustedError("question " + std::to_string(qi + 1) + " exhausted " +
                               std::to_string(options.max_attempts) + " attempts for persona " +
                               options.persona_id,
                           e.audit(), static_cast<int>(qi));
    }
    // Only the accepted answer is trimmed; interior text stays verbatim.
    std::string answer = trim(cut_at_stop(result.completion.text, params.stop_sequences));
    story.qa_pairs.push_back(QAPair{script.questions[qi], answer});
    story.attempts_used.push_back(result.attempts);
  }
  return story;
}

}  // namespace persim
