#pragma once

#include <string>

#include "core/types.hpp"

namespace persim {

// One table for every fixed string that appears inside a prompt, so golden
// tests can pin the exact bytes.
namespace prompt_text {

inline constexpr const char* kInterviewPreamble =
    "The following is an interview transcript.";
inline constexpr const char* kQuestionPrefix = "Question: ";
inline constexpr const char* kAnswerPrefix = "Answer:";
inline constexpr const char* kGroundingQuestion = "Interviewer: What Year is it?";
inline constexpr const char* kGroundingAnswerPrefix = "Me: ";

// Survey instruction markers (also how the scripted backend recognizes the
// request class).
inline constexpr const char* kExplicitTraitInstruction = "Answer with exactly one of: ";
inline constexpr const char* kNoEvidenceMarker = "UNKNOWN";
inline constexpr const char* kWeightInstruction =
    "Rate how well each option describes the speaker on a 0-10 scale.";

}  // namespace prompt_text

// Renders a question/answer block exactly as interview transcripts and
// conditioning contexts lay it out.
std::string render_qa_block(const std::string& question, const std::string& answer);

// The study-instruction text for the given framing with the partner's party
// substituted. WD and WT end with the boldface-reminder line
// "How much money do you want to send to REPUBLICAN?" (or DEMOCRAT).
std::string render_study_prompt(const GameSpec& spec, Party partner_party);

// Party surface forms used in the templates.
std::string party_noun(Party p);        // "Democrat" / "Republican"
std::string party_adjective(Party p);   // "Democratic" / "Republican"
std::string party_caps(Party p);        // "DEMOCRAT" / "REPUBLICAN"

// Appends the forced year pair after the context; identity when year absent.
std::string apply_temporal_grounding(const std::string& context, std::optional<int> year);

// The trait-specific question used by the QA conditioning method.
std::string qa_trait_question(const std::string& trait_name);

// First-person biography sentence for a trait ("I am a Republican").
std::string bio_trait_sentence(const std::string& trait_name, const std::string& label);

// Second-person variant ("You are a Republican").
std::string portray_trait_sentence(const std::string& trait_name, const std::string& label);

}  // namespace persim
