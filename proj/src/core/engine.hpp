#pragma once

#include <string>
#include <vector>

#include "core/gateway.hpp"
#include "core/interview.hpp"
#include "core/prompts.hpp"
#include "core/types.hpp"

namespace persim {

struct ConditioningContext {
  Method method = Method::DeepBind;
  std::string text;
  std::string persona_id;
};

struct FilterRubric {
  std::vector<std::string> checks;

  void validate() const;
  std::string render() const;
};

// The default reply filter: persona consistency plus a usable numeric answer.
FilterRubric default_filter_rubric();

// QA: forced question-answer lines per trait; Bio: first-person sentences;
// Portray: the same in second person; DeepBind: the full interview
// transcript. Trait values come from the profile's top category.
ConditioningContext build_persona_context(const Backstory& backstory, const TraitProfile& profile,
                                          Method method, const TraitSchema& schema);

// First integer in the completion (optionally $-prefixed); must land in
// [0, endowment]. Throws Errc::no_number_found / Errc::out_of_range.
int parse_allocation(const std::string& raw, const GameSpec& spec);

// Critic check that the reply stays consistent with the bound persona and is
// a plausible in-dialog numeric answer.
JudgeVerdict consistency_check(const std::string& context, const std::string& completion,
                               const FilterRubric& rubric, Gateway& gateway);

struct TrialOptions {
  bool grounding = true;
  bool filtering = true;
  int max_attempts = 8;
  uint64_t seed = 0;
  FilterRubric rubric = default_filter_rubric();
};

struct TrialInputs {
  const Backstory* backstory = nullptr;
  const TraitProfile* profile = nullptr;
  Party self_party = Party::Democrat;
  std::string pool;
  std::string trial_id;
};

// Assembles context [+ year grounding] + study question, samples the
// decision, optionally filtering until the critic accepts, and parses the
// allocation. The full attempt audit lands in the record.
TrialRecord run_trial(const TrialInputs& inputs, Method method, const GameSpec& spec,
                      Party partner_party, const TrialOptions& options, Gateway& gateway,
                      const TraitSchema& schema);

// The exact prompt run_trial sends (exposed so tests can pin assembly order).
std::string assemble_trial_prompt(const ConditioningContext& context, const GameSpec& spec,
                                  Party partner_party, bool grounding);

}  // namespace persim
