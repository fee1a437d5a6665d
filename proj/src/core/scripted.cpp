#include "core/scripted.hpp"

#include <array>
#include <optional>

#include "core/prompts.hpp"
#include "core/util.hpp"

namespace persim {

namespace {

constexpr std::array<const char*, 8> kTowns = {
    "Maplewood", "Cedar Falls", "Brookfield", "Santa Rosa",
    "Galveston", "Harrisburg", "Twin Oaks", "Port Clinton"};
constexpr std::array<const char*, 8> kJobs = {
    "schoolteacher", "electrician",  "nurse",        "shop owner",
    "truck driver",  "accountant",   "line cook",    "office manager"};
constexpr std::array<const char*, 6> kHobbies = {
    "fishing", "gardening", "woodworking", "reading mysteries", "bowling", "hiking"};

uint64_t mix(uint64_t a, uint64_t b) { return splitmix64(a ^ splitmix64(b)); }

template <size_t N>
const char* pick(const std::array<const char*, N>& bank, uint64_t h) {
  return bank[h % N];
}

// Party markers the rest of the pipeline can find again: the survey stage
// looks for the explicit claim, the game stage looks for any of them.
std::optional<Party> find_self_party(std::string_view text) {
  for (Party p : {Party::Democrat, Party::Republican}) {
    std::string noun = party_noun(p);
    if (contains(text, "I am a " + noun) || contains(text, "I'm a proud " + noun) ||
        contains(text, "You are a " + noun) || contains(text, "A: " + noun))
      return p;
  }
  return std::nullopt;
}

std::optional<Party> find_partner_party(std::string_view question) {
  for (Party p : {Party::Democrat, Party::Republican}) {
    if (contains(question, "identifies politically with the " + party_adjective(p) + " Party") ||
        contains(question, "identifies politically as a " + party_noun(p)) ||
        contains(question, "- Political party: " + party_noun(p)) ||
        contains(question, "send to " + party_caps(p) + "?"))
      return p;
  }
  return std::nullopt;
}

// The final "Question: ...\nAnswer:" block of an assembled prompt.
std::string last_question(const std::string& prompt) {
  size_t pos = prompt.rfind(prompt_text::kQuestionPrefix);
  if (pos == std::string::npos) return prompt;
  return prompt.substr(pos);
}

bool is_game_prompt(const std::string& question) {
  return contains(question, "How much money do you want to send to") ||
         contains(question, "So put the dollars you wish to go to Player 2.") ||
         contains(question, "select the amount from the options below.");
}

}  // namespace

ScriptedBackend::ScriptedBackend(ScriptedPolicy policy, std::map<std::string, std::string> fixtures)
    : policy_(policy), fixtures_(std::move(fixtures)) {}

std::string ScriptedBackend::fixture_key(const std::string& prompt, uint64_t seed) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "h%016llx:s%llu",
                static_cast<unsigned long long>(fnv1a64(prompt)),
                static_cast<unsigned long long>(seed));
  return buf;
}

Completion ScriptedBackend::complete(const std::string& prompt, const GenerationParams& params) {
  if (prompt.empty()) throw Error(Errc::invalid_argument, "prompt must be non-empty");
  // Temperature 0 means the reply may not depend on the sampling seed.
  uint64_t seed = params.temperature == 0.0 ? 0 : params.seed;
  Completion c;
  c.backend_tag = tag();
  c.finish_reason = FinishReason::stop;
  if (auto it = fixtures_.find(fixture_key(prompt, seed)); it != fixtures_.end()) {
    c.text = it->second;
    return c;
  }
  c.text = reply_text(prompt, seed);
  return c;
}

std::string ScriptedBackend::reply_text(const std::string& prompt, uint64_t seed) const {
  if (contains(prompt, "Respond with ACCEPT or REJECT")) return judge_reply(prompt);
  if (contains(prompt, prompt_text::kExplicitTraitInstruction)) return explicit_trait_reply(prompt);
  if (contains(prompt, prompt_text::kWeightInstruction)) return weight_reply(prompt);
  std::string question = last_question(prompt);
  if (is_game_prompt(question)) return game_reply(prompt, seed);
  return interview_reply(prompt, seed);
}

// ---------------------------------------------------------------------------
// Critic

std::string ScriptedBackend::judge_reply(const std::string& prompt) const {
  // Candidate text sits between the <<< >>> fence the judge prompt uses.
  size_t open = prompt.rfind("<<<\n");
  size_t close = prompt.rfind("\n>>>");
  std::string candidate = (open != std::string::npos && close != std::string::npos && close > open)
                              ? prompt.substr(open + 4, close - open - 4)
                              : prompt;
  if (trim(candidate).empty()) return "REJECT empty reply";
  if (contains(candidate, "```")) return "REJECT contains a code block";
  if (contains(candidate, "</") || contains(candidate, "<html") || contains(candidate, "<div"))
    return "REJECT contains markup";

  bool consistency = contains(prompt, "Persona context:");
  if (consistency) {
    size_t reply_pos = candidate.find("Reply:");
    std::string context_part = reply_pos == std::string::npos ? candidate
                                                              : candidate.substr(0, reply_pos);
    std::string reply_part = reply_pos == std::string::npos ? candidate
                                                            : candidate.substr(reply_pos);
    auto bound = find_self_party(context_part);
    for (Party p : {Party::Democrat, Party::Republican}) {
      bool claims = contains(reply_part, "I am a " + party_noun(p)) ||
                    contains(reply_part, "As a lifelong " + party_noun(p)) ||
                    contains(reply_part, "As a " + party_noun(p));
      if (claims && bound && *bound != p)
        return "REJECT reply claims to be a " + party_noun(p) + " but the persona is a " +
               party_noun(*bound);
    }
    bool has_digit = reply_part.find_first_of("0123456789") != std::string::npos;
    if (!has_digit) return "REJECT no numeric allocation stated";
  }
  return "ACCEPT plausible in-character dialog";
}

// ---------------------------------------------------------------------------
// Trait survey

std::string ScriptedBackend::explicit_trait_reply(const std::string& prompt) const {
  size_t list_pos = prompt.rfind(prompt_text::kExplicitTraitInstruction);
  std::string tail = prompt.substr(list_pos + std::string(prompt_text::kExplicitTraitInstruction).size());
  size_t stop = tail.find(", or ");
  std::string label_list = stop == std::string::npos ? tail : tail.substr(0, stop);
  std::string transcript = prompt.substr(0, list_pos);

  std::vector<std::string> labels;
  size_t pos = 0;
  while (pos <= label_list.size()) {
    size_t sep = label_list.find(" | ", pos);
    if (sep == std::string::npos) {
      labels.push_back(trim(label_list.substr(pos)));
      break;
    }
    labels.push_back(trim(label_list.substr(pos, sep - pos)));
    pos = sep + 3;
  }

  for (const std::string& label : labels) {
    if (label == "Democrat" || label == "Republican") {
      if (contains(transcript, "I am a " + label) || contains(transcript, "I'm a proud " + label))
        return label;
    } else if (label == "Male" || label == "Female") {
      const char* claim = label == "Male" ? "I am a man" : "I am a woman";
      if (contains(transcript, claim)) return label;
    } else if (contains(label, "-") || contains(label, "+")) {
      // Age bracket: look for "I am N years old".
      size_t p = transcript.find(" years old");
      if (p != std::string::npos) {
        size_t digits_end = p;
        size_t digits_begin = digits_end;
        while (digits_begin > 0 && std::isdigit(static_cast<unsigned char>(transcript[digits_begin - 1])))
          --digits_begin;
        if (digits_begin < digits_end) {
          int age = std::stoi(transcript.substr(digits_begin, digits_end - digits_begin));
          int lo = 0, hi = 200;
          if (std::sscanf(label.c_str(), "%d-%d", &lo, &hi) == 2) {
            if (age >= lo && age <= hi) return label;
          } else if (std::sscanf(label.c_str(), "%d+", &lo) == 1) {
            if (age >= lo) return label;
          }
        }
      }
    }
  }
  return prompt_text::kNoEvidenceMarker;
}

std::string ScriptedBackend::weight_reply(const std::string& prompt) const {
  size_t options_pos = prompt.rfind("Options: ");
  if (options_pos == std::string::npos) return "";
  std::string tail = prompt.substr(options_pos + 9);
  size_t eol = tail.find('\n');
  if (eol != std::string::npos) tail = tail.substr(0, eol);
  std::string out;
  size_t pos = 0;
  while (pos <= tail.size()) {
    size_t sep = tail.find(" | ", pos);
    std::string label = trim(sep == std::string::npos ? tail.substr(pos) : tail.substr(pos, sep - pos));
    if (!label.empty()) {
      uint64_t h = mix(fnv1a64(prompt.substr(0, options_pos)), fnv1a64(label));
      out += label + ": " + std::to_string(1 + h % 5) + "\n";
    }
    if (sep == std::string::npos) break;
    pos = sep + 3;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Game decisions

std::string ScriptedBackend::game_reply(const std::string& prompt, uint64_t seed) const {
  (void)seed;
  std::string question = last_question(prompt);
  std::string context = prompt.substr(0, prompt.size() - question.size());

  // The base allocation depends only on the persona context with the year
  // pair and party words stripped out, so a persona answers identically
  // across partner/year/framing conditions and cell deltas isolate the
  // policy's bonus.
  std::string stable = context;
  for (const std::string needle :
       {std::string(prompt_text::kGroundingQuestion), std::string("Democrat"),
        std::string("Republican"), std::string("Democratic"), std::string("Me: ")}) {
    size_t pos;
    while ((pos = stable.find(needle)) != std::string::npos) stable.erase(pos, needle.size());
  }
  // Strip the grounded year digits as well.
  std::string digitless;
  digitless.reserve(stable.size());
  for (char ch : stable)
    if (!std::isdigit(static_cast<unsigned char>(ch))) digitless += ch;

  int amount = policy_.base_min +
               static_cast<int>(splitmix64(fnv1a64(digitless)) %
                                static_cast<uint64_t>(std::max(1, policy_.base_spread)));

  auto self = find_self_party(context);
  auto partner = find_partner_party(question);
  bool grounded = contains(context, prompt_text::kGroundingQuestion);
  if (self && partner && *self == *partner &&
      (grounded || !policy_.bonus_requires_grounding))
    amount += policy_.copartisan_bonus;
  amount = std::clamp(amount, 0, 10);

  if (contains(question, "raffle tickets"))
    return " I will send " + std::to_string(amount) + " tickets to Player 2.";
  return " I will send $" + std::to_string(amount) + " to the other person.";
}

// ---------------------------------------------------------------------------
// Interview narration

namespace {

// Reuses a fact already stated in the transcript: the text following `lead`
// up to the next sentence break.
std::optional<std::string> established_fact(const std::string& prompt, const std::string& lead) {
  size_t pos = prompt.find(lead);
  if (pos == std::string::npos) return std::nullopt;
  pos += lead.size();
  size_t end = prompt.find_first_of(".,\n", pos);
  if (end == std::string::npos || end == pos) return std::nullopt;
  return prompt.substr(pos, end - pos);
}

}  // namespace

std::string ScriptedBackend::interview_reply(const std::string& prompt, uint64_t seed) const {
  std::string question = last_question(prompt);
  uint64_t h = mix(fnv1a64(prompt), seed);

  // Rarely emit something the critic must reject, so rejection sampling has
  // real work to do on scripted runs.
  if (policy_.flaky_narratives && h % 13 == 0)
    return " ```\nprint(\"hello\")\n```";

  // Personal facts are fixed by the first answer; later answers re-read them
  // from the transcript so the persona stays coherent regardless of how many
  // attempts any one question took.
  std::string town = established_fact(prompt, "born and raised in ").value_or(pick(kTowns, h));
  std::string job = established_fact(prompt, "work as a ").value_or(pick(kJobs, h >> 7));
  uint64_t persona_h = fnv1a64(town + job);
  const char* hobby = pick(kHobbies, persona_h >> 3);
  Party party = (persona_h >> 13) % 2 == 0 ? Party::Democrat : Party::Republican;
  std::string gender_claim = contains(prompt, "I am a man")   ? "I am a man"
                             : contains(prompt, "I am a woman") ? "I am a woman"
                                                                : "I am someone";

  if (contains(question, "story of your life")) {
    // First question: fix the facts every later answer hangs off.
    uint64_t h1 = mix(h, 0xa11ce);
    std::string out = " I was born and raised in " + std::string(pick(kTowns, h1)) + ". I am " +
                      std::to_string(19 + static_cast<int>((h1 >> 21) % 60)) +
                      " years old and I work as a " + pick(kJobs, h1 >> 7) + ". ";
    if ((h1 >> 11) % 3 != 0)
      out += std::string((h1 >> 17) % 2 == 0 ? "I am a man" : "I am a woman") +
             ", and most of my family still lives close by. ";
    out += "School was ordinary for me, and after a few detours I settled into steady work and a "
           "quiet routine.";
    return out;
  }
  if (contains(question, "crossroads")) {
    return " The biggest fork in the road was deciding whether to leave " + town +
           " after school. I stayed, took the " + job +
           " work that was in front of me, and I think staying made me who I am.";
  }
  if (contains(question, "anyone else in your life")) {
    return " My closest friend is someone I met through " + std::string(hobby) +
           ". We talk most weeks. Outside of that I keep a small circle, mostly people from work "
           "and a neighbor I trade favors with.";
  }
  if (contains(question, "current neighborhood")) {
    return " I live in " + town +
           ", a few streets from the main road. It is quiet, people wave, and you can get most "
           "errands done in one trip. Work is the hard part around here, but we manage.";
  }
  if (contains(question, "daily routine")) {
    return " Not much has changed lately. I get up early, put in my hours as a " + job +
           ", and try to leave the evenings for " + std::string(hobby) + ".";
  }
  if (contains(question, "political views")) {
    return " I am a " + party_noun(party) +
           " and I have voted that way in every election I can remember. I don't argue politics "
           "at the dinner table, but I know where I stand.";
  }
  if (contains(question, "race in the U.S.")) {
    return " I think about it more than I used to. Around " + town +
           " people mostly get along, but I know that isn't everyone's experience, and I try to "
           "listen more than I talk on it.";
  }
  if (contains(question, "stay healthy")) {
    return " Staying on my feet all day as a " + job +
           " keeps me moving, which helps. The hard part is eating right when the day runs long.";
  }
  if (contains(question, "vaccination")) {
    return " I got my shots and my family did too. I understand why some folks hesitate, but our "
           "doctor has never steered us wrong.";
  }
  if (contains(question, "depression, anxiety")) {
    return " I have my low stretches like anyone. " + gender_claim +
           ", and I mostly work through it by staying busy with " + std::string(hobby) +
           ", and by talking to a friend when it gets heavy.";
  }
  return " That's a fair question. Honestly, life in " + town +
         " keeps me busy enough that I take things one day at a time.";
}

}  // namespace persim
