#include "core/survey.hpp"

#include "core/prompts.hpp"
#include "core/util.hpp"

namespace persim {

namespace {

std::string transcript_of(const Backstory& backstory) {
  InterviewScript script;
  script.preamble = prompt_text::kInterviewPreamble;
  return script.preamble + "\n\n" + [&] {
    std::string blocks;
    for (const auto& pair : backstory.qa_pairs) blocks += render_qa_block(pair.question, pair.answer);
    return blocks;
  }();
}

std::string label_list(const TraitSpec& trait) {
  std::string out;
  for (size_t i = 0; i < trait.labels.size(); ++i) {
    if (i) out += " | ";
    out += trait.labels[i];
  }
  return out;
}

const TraitSpec& require_trait(const TraitSchema& schema, const std::string& trait) {
  const TraitSpec* spec = schema.find(trait);
  if (spec == nullptr)
    throw Error(Errc::schema_mismatch, "trait '" + trait + "' is not in the schema");
  return *spec;
}

}  // namespace

std::string explicit_trait_prompt(const Backstory& backstory, const TraitSpec& trait) {
  std::string prompt = transcript_of(backstory);
  prompt += "Question about the speaker: what is the speaker's " + trait.name + "?\n";
  prompt += "Only answer from what the transcript states outright; do not guess.\n";
  prompt += std::string(prompt_text::kExplicitTraitInstruction) + label_list(trait) + ", or " +
            prompt_text::kNoEvidenceMarker + ".\n";
  return prompt;
}

std::string weight_prompt(const Backstory& backstory, const TraitSpec& trait) {
  std::string prompt = transcript_of(backstory);
  prompt += std::string(prompt_text::kWeightInstruction) + "\n";
  prompt += "Options: " + label_list(trait) + "\n";
  prompt += "Reply with one 'option: number' line per option.\n";
  return prompt;
}

std::optional<std::string> extract_explicit_trait(const Backstory& backstory,
                                                  const std::string& trait,
                                                  const TraitSchema& schema, Gateway& gateway) {
  const TraitSpec& spec = require_trait(schema, trait);
  Completion reply = gateway.complete(explicit_trait_prompt(backstory, spec),
                                      GenerationParams::critic());
  std::string answer = trim(reply.text);
  if (answer == prompt_text::kNoEvidenceMarker) return std::nullopt;
  for (const auto& label : spec.labels)
    if (answer == label) return label;
  throw Error(Errc::unparseable_verdict, "extractor answered '" + answer.substr(0, 60) +
                                             "', not a schema label for trait '" + trait + "'");
}

std::vector<CategoryMass> infer_trait_distribution(const Backstory& backstory,
                                                   const std::string& trait,
                                                   const TraitSchema& schema, Gateway& gateway) {
  const TraitSpec& spec = require_trait(schema, trait);
  Completion reply = gateway.complete(weight_prompt(backstory, spec), GenerationParams::critic());

  std::vector<double> weights(spec.labels.size(), 0.0);
  for (const auto& line : split_lines(reply.text)) {
    size_t colon = line.rfind(':');
    if (colon == std::string::npos) continue;
    std::string label = trim(line.substr(0, colon));
    std::string value = trim(line.substr(colon + 1));
    for (size_t i = 0; i < spec.labels.size(); ++i) {
      if (label != spec.labels[i]) continue;
      try {
        double w = std::stod(value);
        if (w < 0.0 || w > 10.0)
          throw Error(Errc::unparseable_verdict,
                      "weight " + value + " for '" + label + "' outside 0-10");
        weights[i] = w;
      } catch (const std::invalid_argument&) {
        throw Error(Errc::unparseable_verdict, "unparseable weight '" + value + "' for '" + label + "'");
      }
    }
  }

  double total = 0.0;
  for (double w : weights) total += w;
  if (total <= 0.0)
    throw Error(Errc::degenerate_distribution,
                "all elicited weights are zero for trait '" + trait + "'");

  std::vector<CategoryMass> dist;
  dist.reserve(spec.labels.size());
  for (size_t i = 0; i < spec.labels.size(); ++i)
    dist.push_back(CategoryMass{spec.labels[i], weights[i] / total});
  return dist;
}

TraitProfile survey_persona(const Backstory& backstory, const TraitSchema& schema,
                            Gateway& gateway) {
  schema.validate();
  TraitProfile profile;
  profile.persona_id = backstory.persona_id;
  for (const auto& trait : schema.traits) {
    try {
      if (auto label = extract_explicit_trait(backstory, trait.name, schema, gateway)) {
        std::vector<CategoryMass> one_hot;
        for (const auto& l : trait.labels)
          one_hot.push_back(CategoryMass{l, l == *label ? 1.0 : 0.0});
        profile.traits[trait.name] = std::move(one_hot);
      } else {
        profile.traits[trait.name] = infer_trait_distribution(backstory, trait.name, schema, gateway);
      }
    } catch (const Error& e) {
      if (e.code() == Errc::schema_mismatch) throw;
      throw Error(e.code(), std::string("trait '") + trait.name + "': " + e.what());
    }
  }
  profile.validate();
  return profile;
}

}  // namespace persim
