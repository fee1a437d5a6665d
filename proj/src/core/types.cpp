#include "core/types.hpp"

#include <cmath>
#include <set>

namespace persim {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::spec_violation: return "SpecViolation";
    case Errc::config: return "ConfigError";
    case Errc::io: return "IoError";
    case Errc::backend_unavailable: return "BackendUnavailable";
    case Errc::backend_malformed: return "BackendMalformed";
    case Errc::unparseable_verdict: return "UnparseableVerdict";
    case Errc::exhausted_attempts: return "ExhaustedAttempts";
    case Errc::degenerate_distribution: return "DegenerateDistribution";
    case Errc::schema_mismatch: return "SchemaMismatch";
    case Errc::dimension: return "DimensionError";
    case Errc::empty_roster: return "EmptyRoster";
    case Errc::missing_trait: return "MissingTrait";
    case Errc::no_number_found: return "NoNumberFound";
    case Errc::out_of_range: return "OutOfRange";
    case Errc::unknown_framing: return "UnknownFraming";
    case Errc::empty_cell: return "EmptyCell";
    case Errc::incomplete_design: return "IncompleteDesign";
    case Errc::rank_deficient: return "RankDeficient";
    case Errc::insufficient_data: return "InsufficientData";
    case Errc::unknown_term: return "UnknownTerm";
    case Errc::invalid_argument: return "InvalidArgument";
    case Errc::internal: return "InternalError";
  }
  return "UnknownError";
}

// ---------------------------------------------------------------------------
// Enum <-> string

const char* to_string(Party p) { return p == Party::Democrat ? "Democrat" : "Republican"; }
const char* to_string(Game g) { return g == Game::Dictator ? "Dictator" : "Trust"; }

const char* to_string(Framing f) {
  switch (f) {
    case Framing::ID: return "ID";
    case Framing::WD: return "WD";
    case Framing::CT: return "CT";
    case Framing::WT: return "WT";
  }
  return "?";
}

const char* to_string(Method m) {
  switch (m) {
    case Method::QA: return "QA";
    case Method::Bio: return "Bio";
    case Method::Portray: return "Portray";
    case Method::DeepBind: return "DeepBind";
  }
  return "?";
}

const char* to_string(Unit u) { return u == Unit::dollars ? "dollars" : "raffle_tickets"; }

const char* to_string(FinishReason r) {
  switch (r) {
    case FinishReason::stop: return "stop";
    case FinishReason::length: return "length";
    case FinishReason::error: return "error";
  }
  return "?";
}

namespace {
[[noreturn]] void bad_enum(const char* kind, const std::string& s) {
  throw Error(Errc::invalid_argument, std::string("unknown ") + kind + ": '" + s + "'");
}
}  // namespace

Party party_from_string(const std::string& s) {
  if (s == "Democrat") return Party::Democrat;
  if (s == "Republican") return Party::Republican;
  bad_enum("party", s);
}

Game game_from_string(const std::string& s) {
  if (s == "Dictator") return Game::Dictator;
  if (s == "Trust") return Game::Trust;
  bad_enum("game", s);
}

Framing framing_from_string(const std::string& s) {
  if (s == "ID") return Framing::ID;
  if (s == "WD") return Framing::WD;
  if (s == "CT") return Framing::CT;
  if (s == "WT") return Framing::WT;
  bad_enum("framing", s);
}

Method method_from_string(const std::string& s) {
  if (s == "QA") return Method::QA;
  if (s == "Bio") return Method::Bio;
  if (s == "Portray") return Method::Portray;
  if (s == "DeepBind") return Method::DeepBind;
  bad_enum("method", s);
}

Unit unit_from_string(const std::string& s) {
  if (s == "dollars") return Unit::dollars;
  if (s == "raffle_tickets") return Unit::raffle_tickets;
  bad_enum("unit", s);
}

FinishReason finish_reason_from_string(const std::string& s) {
  if (s == "stop") return FinishReason::stop;
  if (s == "length") return FinishReason::length;
  if (s == "error") return FinishReason::error;
  bad_enum("finish_reason", s);
}

// ---------------------------------------------------------------------------
// Validation

void TraitProfile::validate() const {
  for (const auto& [name, dist] : traits) {
    if (dist.empty())
      throw Error(Errc::spec_violation, "trait '" + name + "' has an empty distribution");
    double sum = 0.0;
    std::set<std::string> seen;
    for (const auto& cm : dist) {
      if (cm.probability < 0.0)
        throw Error(Errc::spec_violation, "trait '" + name + "' has negative mass on '" + cm.label + "'");
      if (!seen.insert(cm.label).second)
        throw Error(Errc::spec_violation, "trait '" + name + "' repeats label '" + cm.label + "'");
      sum += cm.probability;
    }
    if (std::fabs(sum - 1.0) > 1e-9)
      throw Error(Errc::spec_violation, "trait '" + name + "' mass sums to " + std::to_string(sum));
  }
}

double TraitProfile::mass(const std::string& trait, const std::string& label) const {
  auto it = traits.find(trait);
  if (it == traits.end()) return 0.0;
  for (const auto& cm : it->second)
    if (cm.label == label) return cm.probability;
  return 0.0;
}

const std::string& TraitProfile::top_label(const std::string& trait) const {
  auto it = traits.find(trait);
  if (it == traits.end() || it->second.empty())
    throw Error(Errc::missing_trait, "profile " + persona_id + " lacks trait '" + trait + "'");
  const CategoryMass* best = &it->second.front();
  for (const auto& cm : it->second)
    if (cm.probability > best->probability) best = &cm;
  return best->label;
}

void TraitSchema::validate() const {
  std::set<std::string> names;
  for (const auto& t : traits) {
    if (t.labels.empty())
      throw Error(Errc::spec_violation, "schema trait '" + t.name + "' has no categories");
    if (!names.insert(t.name).second)
      throw Error(Errc::spec_violation, "schema repeats trait '" + t.name + "'");
    std::set<std::string> labels(t.labels.begin(), t.labels.end());
    if (labels.size() != t.labels.size())
      throw Error(Errc::spec_violation, "schema trait '" + t.name + "' repeats a label");
    if (t.name == "party") {
      const std::vector<std::string> want = {"Democrat", "Republican", "Independent/Other"};
      if (t.labels != want)
        throw Error(Errc::spec_violation,
                    "party trait must have exactly {Democrat, Republican, Independent/Other}");
    }
  }
}

const TraitSpec* TraitSchema::find(const std::string& name) const {
  for (const auto& t : traits)
    if (t.name == name) return &t;
  return nullptr;
}

TraitSchema default_trait_schema() {
  TraitSchema s;
  s.traits = {
      {"age_bracket", {"18-29", "30-44", "45-64", "65+"}},
      {"gender", {"Male", "Female", "Other"}},
      {"race", {"White", "Black", "Hispanic", "Asian", "Other"}},
      {"education", {"High school or less", "Some college", "Bachelor's degree", "Graduate degree"}},
      {"income_bracket", {"Under $30k", "$30k-$60k", "$60k-$100k", "Over $100k"}},
      {"party", {"Democrat", "Republican", "Independent/Other"}},
  };
  return s;
}

void HumanParticipant::validate(const TraitSchema& schema) const {
  for (const auto& [name, label] : traits) {
    const TraitSpec* spec = schema.find(name);
    if (spec == nullptr)
      throw Error(Errc::schema_mismatch, "participant " + id + " carries unknown trait '" + name + "'");
    bool known = false;
    for (const auto& l : spec->labels) known = known || l == label;
    if (!known)
      throw Error(Errc::schema_mismatch,
                  "participant " + id + " trait '" + name + "' has label '" + label +
                      "' outside the schema");
  }
  auto it = traits.find("party");
  if (it != traits.end() && it->second != to_string(party))
    throw Error(Errc::spec_violation,
                "participant " + id + " party trait '" + it->second + "' disagrees with party field");
}

void validate_game_spec(const GameSpec& spec) {
  bool dictator_framing = spec.framing == Framing::ID || spec.framing == Framing::WD;
  if (dictator_framing && spec.game != Game::Dictator)
    throw Error(Errc::spec_violation, "framing " + std::string(to_string(spec.framing)) +
                                          " requires game = Dictator");
  if (!dictator_framing && spec.game != Game::Trust)
    throw Error(Errc::spec_violation, "framing " + std::string(to_string(spec.framing)) +
                                          " requires game = Trust");
  if ((spec.multiplier == 3) != (spec.game == Game::Trust))
    throw Error(Errc::spec_violation, "multiplier must be 3 exactly when game = Trust (got " +
                                          std::to_string(spec.multiplier) + ")");
  if (spec.game == Game::Dictator && spec.multiplier != 1)
    throw Error(Errc::spec_violation, "multiplier must be 1 for Dictator");
  if ((spec.unit == Unit::raffle_tickets) != (spec.framing == Framing::CT))
    throw Error(Errc::spec_violation, "unit must be raffle_tickets exactly when framing = CT");
  if (spec.endowment <= 0)
    throw Error(Errc::spec_violation, "endowment must be positive");
}

GameSpec spec_for_study(Framing framing, std::optional<int> year_override) {
  GameSpec s;
  s.framing = framing;
  switch (framing) {
    case Framing::ID: s.game = Game::Dictator; s.year = 2014; s.multiplier = 1; s.unit = Unit::dollars; break;
    case Framing::WD: s.game = Game::Dictator; s.year = 2019; s.multiplier = 1; s.unit = Unit::dollars; break;
    case Framing::CT: s.game = Game::Trust; s.year = 2015; s.multiplier = 3; s.unit = Unit::raffle_tickets; break;
    case Framing::WT: s.game = Game::Trust; s.year = 2019; s.multiplier = 3; s.unit = Unit::dollars; break;
  }
  if (year_override) s.year = year_override;
  validate_game_spec(s);
  return s;
}

void TrialRecord::validate() const {
  if (amount < 0 || amount > game_spec.endowment)
    throw Error(Errc::spec_violation, "trial " + trial_id + " amount " + std::to_string(amount) +
                                          " outside [0, " + std::to_string(game_spec.endowment) + "]");
  if (filter_audit.empty())
    throw Error(Errc::spec_violation, "trial " + trial_id + " has an empty filter audit");
}

void GenerationParams::validate() const {
  if (temperature < 0.0) throw Error(Errc::invalid_argument, "temperature must be non-negative");
  if (max_tokens <= 0) throw Error(Errc::invalid_argument, "max_tokens must be positive");
}

GenerationParams GenerationParams::narrative(uint64_t seed) {
  GenerationParams p;
  p.temperature = 1.0;
  p.seed = seed;
  return p;
}

GenerationParams GenerationParams::critic(uint64_t seed) {
  GenerationParams p;
  p.temperature = 0.0;
  p.max_tokens = 128;
  p.seed = seed;
  return p;
}

// ---------------------------------------------------------------------------
// JSON

json to_json(const QAPair& v) { return json{{"question", v.question}, {"answer", v.answer}}; }

json to_json(const Backstory& v) {
  json pairs = json::array();
  for (const auto& p : v.qa_pairs) pairs.push_back(to_json(p));
  return json{{"persona_id", v.persona_id},
              {"qa_pairs", pairs},
              {"generator_tag", v.generator_tag},
              {"attempts_used", v.attempts_used}};
}

json to_json(const TraitProfile& v) {
  json traits = json::object();
  for (const auto& [name, dist] : v.traits) {
    json d = json::array();
    for (const auto& cm : dist) d.push_back(json::array({cm.label, cm.probability}));
    traits[name] = d;
  }
  return json{{"persona_id", v.persona_id}, {"traits", traits}};
}

json to_json(const TraitSchema& v) {
  json arr = json::array();
  for (const auto& t : v.traits) arr.push_back(json{{"name", t.name}, {"labels", t.labels}});
  return json{{"traits", arr}};
}

json to_json(const HumanParticipant& v) {
  return json{{"id", v.id}, {"traits", v.traits}, {"party", to_string(v.party)}, {"pool", v.pool}};
}

json to_json(const GameSpec& v) {
  json j{{"game", to_string(v.game)}, {"framing", to_string(v.framing)},
         {"endowment", v.endowment},  {"multiplier", v.multiplier},
         {"unit", to_string(v.unit)}};
  if (v.year) j["year"] = *v.year;
  else j["year"] = nullptr;
  return j;
}

json to_json(const TrialRecord& v) {
  json audit = json::array();
  for (const auto& e : v.filter_audit)
    audit.push_back(json{{"attempt", e.attempt}, {"accept", e.accept}, {"reason", e.reason}});
  return json{{"trial_id", v.trial_id},
              {"persona_id", v.persona_id},
              {"method", to_string(v.method)},
              {"game_spec", to_json(v.game_spec)},
              {"self_party", to_string(v.self_party)},
              {"partner_party", to_string(v.partner_party)},
              {"pool", v.pool},
              {"raw_text", v.raw_text},
              {"amount", v.amount},
              {"filter_audit", audit},
              {"seed", v.seed}};
}

json to_json(const GenerationParams& v) {
  return json{{"temperature", v.temperature},
              {"max_tokens", v.max_tokens},
              {"stop_sequences", v.stop_sequences},
              {"seed", v.seed}};
}

json to_json(const Completion& v) {
  return json{{"text", v.text}, {"finish_reason", to_string(v.finish_reason)},
              {"backend_tag", v.backend_tag}};
}

json to_json(const JudgeVerdict& v) { return json{{"accept", v.accept}, {"reason", v.reason}}; }

namespace {
const json& need(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw Error(Errc::io, std::string("record is missing field '") + key + "'");
  return *it;
}
}  // namespace

QAPair qa_pair_from_json(const json& j) {
  return QAPair{need(j, "question").get<std::string>(), need(j, "answer").get<std::string>()};
}

Backstory backstory_from_json(const json& j) {
  Backstory b;
  b.persona_id = need(j, "persona_id").get<std::string>();
  for (const auto& p : need(j, "qa_pairs")) b.qa_pairs.push_back(qa_pair_from_json(p));
  b.generator_tag = need(j, "generator_tag").get<std::string>();
  b.attempts_used = need(j, "attempts_used").get<std::vector<int>>();
  return b;
}

TraitProfile trait_profile_from_json(const json& j) {
  TraitProfile p;
  p.persona_id = need(j, "persona_id").get<std::string>();
  for (const auto& [name, dist] : need(j, "traits").items()) {
    std::vector<CategoryMass> d;
    for (const auto& cm : dist)
      d.push_back(CategoryMass{cm.at(0).get<std::string>(), cm.at(1).get<double>()});
    p.traits[name] = std::move(d);
  }
  p.validate();
  return p;
}

TraitSchema trait_schema_from_json(const json& j) {
  TraitSchema s;
  for (const auto& t : need(j, "traits"))
    s.traits.push_back(TraitSpec{need(t, "name").get<std::string>(),
                                 need(t, "labels").get<std::vector<std::string>>()});
  s.validate();
  return s;
}

HumanParticipant human_from_json(const json& j) {
  HumanParticipant h;
  h.id = need(j, "id").get<std::string>();
  h.traits = need(j, "traits").get<std::map<std::string, std::string>>();
  h.party = party_from_string(need(j, "party").get<std::string>());
  h.pool = need(j, "pool").get<std::string>();
  return h;
}

GameSpec game_spec_from_json(const json& j) {
  GameSpec g;
  g.game = game_from_string(need(j, "game").get<std::string>());
  g.framing = framing_from_string(need(j, "framing").get<std::string>());
  if (j.contains("year") && !j["year"].is_null()) g.year = j["year"].get<int>();
  g.endowment = need(j, "endowment").get<int>();
  g.multiplier = need(j, "multiplier").get<int>();
  g.unit = unit_from_string(need(j, "unit").get<std::string>());
  return g;
}

TrialRecord trial_record_from_json(const json& j) {
  TrialRecord t;
  t.trial_id = need(j, "trial_id").get<std::string>();
  t.persona_id = need(j, "persona_id").get<std::string>();
  t.method = method_from_string(need(j, "method").get<std::string>());
  t.game_spec = game_spec_from_json(need(j, "game_spec"));
  t.self_party = party_from_string(need(j, "self_party").get<std::string>());
  t.partner_party = party_from_string(need(j, "partner_party").get<std::string>());
  t.pool = need(j, "pool").get<std::string>();
  t.raw_text = need(j, "raw_text").get<std::string>();
  t.amount = need(j, "amount").get<int>();
  for (const auto& e : need(j, "filter_audit"))
    t.filter_audit.push_back(FilterAuditEntry{need(e, "attempt").get<int>(),
                                              need(e, "accept").get<bool>(),
                                              need(e, "reason").get<std::string>()});
  t.seed = need(j, "seed").get<uint64_t>();
  t.validate();
  return t;
}

GenerationParams generation_params_from_json(const json& j) {
  GenerationParams p;
  p.temperature = need(j, "temperature").get<double>();
  p.max_tokens = need(j, "max_tokens").get<int>();
  p.stop_sequences = need(j, "stop_sequences").get<std::vector<std::string>>();
  p.seed = need(j, "seed").get<uint64_t>();
  return p;
}

Completion completion_from_json(const json& j) {
  Completion c;
  c.text = need(j, "text").get<std::string>();
  c.finish_reason = finish_reason_from_string(need(j, "finish_reason").get<std::string>());
  c.backend_tag = need(j, "backend_tag").get<std::string>();
  return c;
}

JudgeVerdict judge_verdict_from_json(const json& j) {
  return JudgeVerdict{need(j, "accept").get<bool>(), need(j, "reason").get<std::string>()};
}

}  // namespace persim
