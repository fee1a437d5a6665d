#pragma once

#include <optional>
#include <string>

#include "core/gateway.hpp"
#include "core/interview.hpp"
#include "core/types.hpp"

namespace persim {

// Stage 1 of the trait survey: asks the extractor whether the transcript
// states the trait outright. Returns the label only on clear verbal
// evidence, otherwise nothing. Extraction runs at temperature 0.
std::optional<std::string> extract_explicit_trait(const Backstory& backstory,
                                                  const std::string& trait,
                                                  const TraitSchema& schema, Gateway& gateway);

// Stage 2: elicits a 0-10 weight per category and normalizes. Only called
// when stage 1 found no evidence. Throws Errc::degenerate_distribution when
// every weight is zero.
std::vector<CategoryMass> infer_trait_distribution(const Backstory& backstory,
                                                   const std::string& trait,
                                                   const TraitSchema& schema, Gateway& gateway);

// Runs the two-stage procedure for every schema trait: one-hot when stage 1
// fires, inferred distribution otherwise.
TraitProfile survey_persona(const Backstory& backstory, const TraitSchema& schema,
                            Gateway& gateway);

// Prompt builders (exposed for the scripted backend contract and tests).
std::string explicit_trait_prompt(const Backstory& backstory, const TraitSpec& trait);
std::string weight_prompt(const Backstory& backstory, const TraitSpec& trait);

}  // namespace persim
