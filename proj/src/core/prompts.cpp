#include "core/prompts.hpp"

#include "core/util.hpp"

namespace persim {

std::string render_qa_block(const std::string& question, const std::string& answer) {
  return std::string(prompt_text::kQuestionPrefix) + question + "\n" +
         prompt_text::kAnswerPrefix + " " + answer + "\n\n";
}

std::string party_noun(Party p) { return to_string(p); }

std::string party_adjective(Party p) {
  return p == Party::Democrat ? "Democratic" : "Republican";
}

std::string party_caps(Party p) { return p == Party::Democrat ? "DEMOCRAT" : "REPUBLICAN"; }

namespace {

// Study instructions for the four designs. {P} = partner party noun,
// {PADJ} = partner party adjective, {PCAPS} = partner party in capitals.

constexpr const char* kTemplateID =
    "This game is played by pairs of individuals. Each pair is made up of a Player 1 and a "
    "Player 2. Each player will have some information about the other player, but you will not "
    "be told who the other players are during or after the experiment.\n"
    "\n"
    "The game is conducted as follows: A sum of $10 will be provisionally allocated to Player 1 "
    "at the start of each round. Player 1 will then decide how much of the $10 to offer to "
    "player 2. Player 1 could give some, all, or none of the $10. Player 1 keeps all money not "
    "given to player 2. Player 2 gets to keep all the money Player 1 offers.\n"
    "\n"
    "The computer has randomly assigned you to play as Player 1. You will play this game once "
    "with another person. The more money you obtain, the more successful you will be.\n"
    "\n"
    "You are Player 1. You have $10. You can split the money between yourself and Player 2 in "
    "any way you want.\n"
    "\n"
    "Information about the Player 2\n"
    "\n"
    "- Political party: {P}\n"
    "\n"
    "So put the dollars you wish to go to Player 2.";

constexpr const char* kTemplateWD =
    "In this task you have $10. You must decide how much to keep for yourself and how much to "
    "give to another person. In this task, the only information we can give you is that the "
    "other person identifies politically as a {P}. Whatever you send to the other person will "
    "be given to them if they are selected to receive a payment. Whatever you keep for yourself "
    "will be paid to you if you are selected to receive a payment. Please make your decision.\n"
    "\n"
    "How much money do you want to send to {PCAPS}?";

constexpr const char* kTemplateCT =
    "In this game, there are two players: \"Player 1\" and \"Player 2.\" You are Player 1.\n"
    "\n"
    "Player 2, like you, received 10 raffle tickets to participate in the study. You will not "
    "be told who this person is either during or after the survey (nor will that person be "
    "told who you are). We have chosen to give you one piece of information about Player 2:\n"
    "\n"
    "Player 2 identifies politically with the {PADJ} Party.\n"
    "\n"
    "Today, you will have the opportunity to send some, all, or none of 10 raffle tickets to "
    "Player 2. This person will then keep the tickets sent to them, if any, and you keep the "
    "remainder.\n"
    "\n"
    "The game is as follows:\n"
    "1.) You must decide how many raffle tickets (if any) you will send to Player 2. Any amount "
    "you keep for yourself will be given to you.\n"
    "2.) Whatever amount you send to Player 2 will be tripled before it is passed on to Player "
    "2. Player 2 then has the option of returning any portion of this tripled amount to you. "
    "Then the game is over.\n"
    "\n"
    "For example:\n"
    "(a) If you send 1 ticket, Player 2 receives 3 tickets.\n"
    "(b) If you send 5 tickets, Player 2 receives 15 tickets.\n"
    "\n"
    "These are examples only. To review, any number of tickets you send will be tripled and "
    "given to Player 2. This person will keep the tickets you send them, minus the number of "
    "tickets they return to you. Your payoff in this game is the number of tickets that you "
    "kept for yourself, plus any tickets Player 2 returned to you. Once you understand this "
    "game, and are ready to make a decision, select the amount from the options below.";

constexpr const char* kTemplateWT =
    "In this task you have $10. You must decide how much to keep for yourself and how much to "
    "give to another person. The only information we can give you is that the other person "
    "identifies politically as a {P}.\n"
    "\n"
    "Whatever you keep for yourself will be paid to you if you are selected to receive a "
    "payment. Whatever you send to the other person will be multiplied by 3 and then given to "
    "the other person. The other person then has the option to give money back to you.\n"
    "\n"
    "For example:\n"
    "- If you keep $10, then the other person receives $0.\n"
    "- If you send $10, then we multiply that sum by 3 ($10 x 3 = $30) and the other person "
    "receives $30.\n"
    "- The other person then decides how much (if any) of the $30 to give back to you.\n"
    "  - If the person keeps all $30, then you receive $0.\n"
    "  - If the person returns half, then you and the other person receive $15 each.\n"
    "\n"
    "How much money do you want to send to {PCAPS}?";

std::string substitute(std::string text, const std::string& key, const std::string& value) {
  size_t pos = 0;
  while ((pos = text.find(key, pos)) != std::string::npos) {
    text.replace(pos, key.size(), value);
    pos += value.size();
  }
  return text;
}

}  // namespace

std::string render_study_prompt(const GameSpec& spec, Party partner_party) {
  validate_game_spec(spec);
  const char* tpl = nullptr;
  switch (spec.framing) {
    case Framing::ID: tpl = kTemplateID; break;
    case Framing::WD: tpl = kTemplateWD; break;
    case Framing::CT: tpl = kTemplateCT; break;
    case Framing::WT: tpl = kTemplateWT; break;
  }
  if (tpl == nullptr)
    throw Error(Errc::unknown_framing, "no template for framing value");
  std::string text = tpl;
  text = substitute(text, "{P}", party_noun(partner_party));
  text = substitute(text, "{PADJ}", party_adjective(partner_party));
  text = substitute(text, "{PCAPS}", party_caps(partner_party));
  return text;
}

std::string apply_temporal_grounding(const std::string& context, std::optional<int> year) {
  if (!year) return context;
  return context + prompt_text::kGroundingQuestion + "\n" + prompt_text::kGroundingAnswerPrefix +
         std::to_string(*year) + "\n\n";
}

namespace {
std::string humanize(const std::string& trait_name) {
  std::string out = trait_name;
  for (char& c : out)
    if (c == '_') c = ' ';
  return out;
}
}  // namespace

std::string qa_trait_question(const std::string& trait_name) {
  if (trait_name == "age_bracket") return "What is your age?";
  if (trait_name == "gender") return "What is your gender?";
  if (trait_name == "race") return "What is your race?";
  if (trait_name == "education") return "What is your education level?";
  if (trait_name == "income_bracket") return "What is your household income?";
  if (trait_name == "party") return "What is your political affiliation?";
  return "What is your " + humanize(trait_name) + "?";
}

std::string bio_trait_sentence(const std::string& trait_name, const std::string& label) {
  if (trait_name == "age_bracket") return "I am " + label + " years old.";
  if (trait_name == "party") return "I am a " + label + ".";
  if (trait_name == "gender") return "I am " + label + ".";
  if (trait_name == "race") return "I am " + label + ".";
  return "My " + humanize(trait_name) + " is " + label + ".";
}

std::string portray_trait_sentence(const std::string& trait_name, const std::string& label) {
  if (trait_name == "age_bracket") return "You are " + label + " years old.";
  if (trait_name == "party") return "You are a " + label + ".";
  if (trait_name == "gender") return "You are " + label + ".";
  if (trait_name == "race") return "You are " + label + ".";
  return "Your " + humanize(trait_name) + " is " + label + ".";
}

}  // namespace persim
