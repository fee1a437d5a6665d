#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "core/errors.hpp"

namespace persim {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Enumerations

enum class Party { Democrat, Republican };
enum class Game { Dictator, Trust };
enum class Framing { ID, WD, CT, WT };
enum class Method { QA, Bio, Portray, DeepBind };
enum class Unit { dollars, raffle_tickets };
enum class FinishReason { stop, length, error };

const char* to_string(Party p);
const char* to_string(Game g);
const char* to_string(Framing f);
const char* to_string(Method m);
const char* to_string(Unit u);
const char* to_string(FinishReason r);

Party party_from_string(const std::string& s);
Game game_from_string(const std::string& s);
Framing framing_from_string(const std::string& s);
Method method_from_string(const std::string& s);
Unit unit_from_string(const std::string& s);
FinishReason finish_reason_from_string(const std::string& s);

inline Party opposite(Party p) { return p == Party::Democrat ? Party::Republican : Party::Democrat; }

// ---------------------------------------------------------------------------
// Interview transcripts

struct QAPair {
  std::string question;
  std::string answer;

  bool operator==(const QAPair&) const = default;
};

struct Backstory {
  std::string persona_id;
  std::vector<QAPair> qa_pairs;   // preserves interview-question order
  std::string generator_tag;
  std::vector<int> attempts_used; // one entry per question

  bool operator==(const Backstory&) const = default;
};

// ---------------------------------------------------------------------------
// Traits

struct CategoryMass {
  std::string label;
  double probability = 0.0;

  bool operator==(const CategoryMass&) const = default;
};

// Per-trait categorical distribution. Probabilities are validated to be
// non-negative and to sum to 1 within 1e-9; labels unique per trait.
struct TraitProfile {
  std::string persona_id;
  std::map<std::string, std::vector<CategoryMass>> traits;

  void validate() const;
  // Probability mass the trait places on `label`; 0 if the label is absent.
  double mass(const std::string& trait, const std::string& label) const;
  // Highest-mass label; throws Errc::missing_trait if the trait is absent.
  const std::string& top_label(const std::string& trait) const;

  bool operator==(const TraitProfile&) const = default;
};

struct TraitSpec {
  std::string name;
  std::vector<std::string> labels;

  bool operator==(const TraitSpec&) const = default;
};

struct TraitSchema {
  std::vector<TraitSpec> traits;  // ordered

  void validate() const;
  const TraitSpec* find(const std::string& name) const;

  bool operator==(const TraitSchema&) const = default;
};

// The six traits used when no schema file is given.
TraitSchema default_trait_schema();

struct HumanParticipant {
  std::string id;
  std::map<std::string, std::string> traits;
  Party party = Party::Democrat;
  std::string pool;

  // Checks trait names against the schema and that traits["party"] agrees
  // with the party field.
  void validate(const TraitSchema& schema) const;

  bool operator==(const HumanParticipant&) const = default;
};

// ---------------------------------------------------------------------------
// Games

struct GameSpec {
  Game game = Game::Dictator;
  Framing framing = Framing::ID;
  std::optional<int> year;
  int endowment = 10;
  int multiplier = 1;
  Unit unit = Unit::dollars;

  bool operator==(const GameSpec&) const = default;
};

// Throws Errc::spec_violation naming the violated invariant.
void validate_game_spec(const GameSpec& spec);

// The canonical configuration of each of the four studies, optionally with
// the year overridden (counterfactual runs move years between studies).
GameSpec spec_for_study(Framing framing, std::optional<int> year_override = std::nullopt);

struct FilterAuditEntry {
  int attempt = 0;
  bool accept = false;
  std::string reason;

  bool operator==(const FilterAuditEntry&) const = default;
};

struct TrialRecord {
  std::string trial_id;
  std::string persona_id;
  Method method = Method::DeepBind;
  GameSpec game_spec;
  Party self_party = Party::Democrat;
  Party partner_party = Party::Democrat;
  std::string pool;
  std::string raw_text;
  int amount = 0;
  std::vector<FilterAuditEntry> filter_audit;
  uint64_t seed = 0;

  void validate() const;

  bool operator==(const TrialRecord&) const = default;
};

// ---------------------------------------------------------------------------
// Generation

struct GenerationParams {
  double temperature = 1.0;  // narrative default; critic calls use 0.0
  int max_tokens = 512;
  std::vector<std::string> stop_sequences;
  uint64_t seed = 0;

  void validate() const;

  static GenerationParams narrative(uint64_t seed);
  static GenerationParams critic(uint64_t seed = 0);

  bool operator==(const GenerationParams&) const = default;
};

struct Completion {
  std::string text;
  FinishReason finish_reason = FinishReason::stop;
  std::string backend_tag;

  bool operator==(const Completion&) const = default;
};

// ---------------------------------------------------------------------------
// JSON encoding (field names match the type definitions; one record per line
// in the on-disk JSONL stores)

json to_json(const QAPair& v);
json to_json(const Backstory& v);
json to_json(const TraitProfile& v);
json to_json(const TraitSchema& v);
json to_json(const HumanParticipant& v);
json to_json(const GameSpec& v);
json to_json(const TrialRecord& v);
json to_json(const GenerationParams& v);
json to_json(const Completion& v);
json to_json(const JudgeVerdict& v);

QAPair qa_pair_from_json(const json& j);
Backstory backstory_from_json(const json& j);
TraitProfile trait_profile_from_json(const json& j);
TraitSchema trait_schema_from_json(const json& j);
HumanParticipant human_from_json(const json& j);
GameSpec game_spec_from_json(const json& j);
TrialRecord trial_record_from_json(const json& j);
GenerationParams generation_params_from_json(const json& j);
Completion completion_from_json(const json& j);
JudgeVerdict judge_verdict_from_json(const json& j);

}  // namespace persim
