#include "core/engine.hpp"

#include <cctype>

#include "core/util.hpp"

namespace persim {

void FilterRubric::validate() const {
  if (checks.empty()) throw Error(Errc::spec_violation, "filter rubric has no checks");
}

std::string FilterRubric::render() const {
  validate();
  std::string out =
      "You are screening one reply from a study participant. Reject it only if it fails a "
      "check below. People hedge, qualify, and contradict themselves in small ways; accept "
      "ordinary human imperfection.\nChecks:\n";
  for (size_t i = 0; i < checks.size(); ++i)
    out += std::to_string(i + 1) + ". " + checks[i] + "\n";
  return out;
}

FilterRubric default_filter_rubric() {
  return FilterRubric{{
      "identity consistency: the reply does not contradict who the persona is",
      "party consistency: the reply does not claim the opposite party affiliation",
      "plausible dialog form: spoken-answer prose, not code blocks or markup",
      "numeric answer present: the reply states how much is sent",
  }};
}

ConditioningContext build_persona_context(const Backstory& backstory, const TraitProfile& profile,
                                          Method method, const TraitSchema& schema) {
  ConditioningContext ctx;
  ctx.method = method;
  ctx.persona_id = backstory.persona_id;

  if (method == Method::DeepBind) {
    InterviewScript script;
    script.preamble = prompt_text::kInterviewPreamble;
    ctx.text = render_transcript(script, backstory.qa_pairs);
    return ctx;
  }

  // The baselines reduce the persona to its top trait categories.
  std::vector<std::pair<std::string, std::string>> labels;
  for (const auto& trait : schema.traits)
    labels.emplace_back(trait.name, profile.top_label(trait.name));

  std::string text;
  switch (method) {
    case Method::QA:
      for (const auto& [name, label] : labels)
        text += "Q: " + qa_trait_question(name) + "\nA: " + label + "\n";
      text += "\n";
      break;
    case Method::Bio: {
      for (size_t i = 0; i < labels.size(); ++i) {
        if (i) text += " ";
        text += bio_trait_sentence(labels[i].first, labels[i].second);
      }
      text += "\n\n";
      break;
    }
    case Method::Portray: {
      for (size_t i = 0; i < labels.size(); ++i) {
        if (i) text += " ";
        text += portray_trait_sentence(labels[i].first, labels[i].second);
      }
      text += "\n\n";
      break;
    }
    case Method::DeepBind:
      break;  // handled above
  }
  ctx.text = std::move(text);
  return ctx;
}

int parse_allocation(const std::string& raw, const GameSpec& spec) {
  for (size_t i = 0; i < raw.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(raw[i]))) continue;
    size_t start = i;
    bool negative = start > 0 && raw[start - 1] == '-';
    size_t end = start;
    while (end < raw.size() && std::isdigit(static_cast<unsigned char>(raw[end]))) ++end;
    if (end - start > 6)
      throw Error(Errc::out_of_range, "allocation '" + raw.substr(start, end - start) +
                                          "' is out of range");
    int value = std::stoi(raw.substr(start, end - start));
    if (negative) value = -value;
    if (value < 0 || value > spec.endowment)
      throw Error(Errc::out_of_range, "allocation " + std::to_string(value) + " outside [0, " +
                                          std::to_string(spec.endowment) + "]");
    return value;
  }
  throw Error(Errc::no_number_found, "no allocation amount in completion: '" +
                                         trim(raw).substr(0, 60) + "'");
}

JudgeVerdict consistency_check(const std::string& context, const std::string& completion,
                               const FilterRubric& rubric, Gateway& gateway) {
  std::string candidate = "Persona context:\n" + context + "\nReply:\n" + completion;
  return gateway.judge(candidate, rubric.render(), GenerationParams::critic());
}

std::string assemble_trial_prompt(const ConditioningContext& context, const GameSpec& spec,
                                  Party partner_party, bool grounding) {
  std::string text = context.text;
  if (grounding) text = apply_temporal_grounding(text, spec.year);
  text += prompt_text::kQuestionPrefix + render_study_prompt(spec, partner_party) + "\n" +
          prompt_text::kAnswerPrefix;
  return text;
}

TrialRecord run_trial(const TrialInputs& inputs, Method method, const GameSpec& spec,
                      Party partner_party, const TrialOptions& options, Gateway& gateway,
                      const TraitSchema& schema) {
  validate_game_spec(spec);
  if (inputs.backstory == nullptr || inputs.profile == nullptr)
    throw Error(Errc::invalid_argument, "run_trial needs a surveyed persona");

  ConditioningContext context = build_persona_context(*inputs.backstory, *inputs.profile, method, schema);
  std::string grounded_context = options.grounding
                                     ? apply_temporal_grounding(context.text, spec.year)
                                     : context.text;
  std::string prompt = grounded_context + prompt_text::kQuestionPrefix +
                       render_study_prompt(spec, partner_party) + "\n" + prompt_text::kAnswerPrefix;

  TrialRecord record;
  record.trial_id = inputs.trial_id;
  record.persona_id = inputs.backstory->persona_id;
  record.method = method;
  record.game_spec = spec;
  record.self_party = inputs.self_party;
  record.partner_party = partner_party;
  record.pool = inputs.pool;
  record.seed = options.seed;

  GenerationParams gen = GenerationParams::narrative(options.seed);
  gen.max_tokens = 128;
  gen.stop_sequences = {prompt_text::kQuestionPrefix};

  for (int attempt = 1; attempt <= options.max_attempts; ++attempt) {
    gen.seed = options.seed + static_cast<uint64_t>(attempt - 1);
    Completion completion = gateway.complete(prompt, gen);

    if (options.filtering) {
      JudgeVerdict verdict = consistency_check(grounded_context, completion.text, options.rubric, gateway);
      if (!verdict.accept) {
        record.filter_audit.push_back(FilterAuditEntry{attempt, false, verdict.reason});
        continue;
      }
    }

    int amount;
    try {
      amount = parse_allocation(completion.text, spec);
    } catch (const Error& e) {
      if (!options.filtering) throw;  // parse failure is fatal with filtering off
      record.filter_audit.push_back(FilterAuditEntry{attempt, false, e.what()});
      continue;
    }

    record.filter_audit.push_back(FilterAuditEntry{
        attempt, true, options.filtering ? "accepted" : "filtering off"});
    record.raw_text = completion.text;
    record.amount = amount;
    record.validate();
    return record;
  }
  std::vector<JudgeVerdict> audit;
  for (const auto& entry : record.filter_audit)
    audit.push_back(JudgeVerdict{entry.accept, entry.reason});
  throw ExhaustedError("trial " + inputs.trial_id + " exhausted " +
                           std::to_string(options.max_attempts) + " attempts",
                       std::move(audit));
}

}  // namespace persim
