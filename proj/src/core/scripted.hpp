#pragma once

#include <map>
#include <string>

#include "core/gateway.hpp"

namespace persim {

// Behavior knobs for the deterministic backend. The partisan bonus is what
// makes ablation runs show a measurable in-group effect: it applies only to
// co-partisan partners, and (by default) only when the forced year pair is
// present in the prompt.
struct ScriptedPolicy {
  int base_min = 2;                    // smallest base allocation
  int base_spread = 4;                 // base in [base_min, base_min + base_spread - 1]
  int copartisan_bonus = 1;
  bool bonus_requires_grounding = true;
  bool flaky_narratives = true;        // rarely emit a code block so the critic loop fires
};

// A pure function of (prompt, seed): recognizes the request class from
// markers in the prompt and synthesizes a plausible deterministic reply.
// Used for offline runs, fixtures, and every determinism test.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(ScriptedPolicy policy = {},
                           std::map<std::string, std::string> fixtures = {});

  Completion complete(const std::string& prompt, const GenerationParams& params) override;
  std::string tag() const override { return "scripted"; }

  // Key under which a fixture entry overrides the procedural reply.
  static std::string fixture_key(const std::string& prompt, uint64_t seed);

 private:
  std::string reply_text(const std::string& prompt, uint64_t seed) const;
  std::string judge_reply(const std::string& prompt) const;
  std::string explicit_trait_reply(const std::string& prompt) const;
  std::string weight_reply(const std::string& prompt) const;
  std::string game_reply(const std::string& prompt, uint64_t seed) const;
  std::string interview_reply(const std::string& prompt, uint64_t seed) const;

  ScriptedPolicy policy_;
  std::map<std::string, std::string> fixtures_;
};

}  // namespace persim
