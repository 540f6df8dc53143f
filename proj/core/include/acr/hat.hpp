#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "acr/lightworld.hpp"

namespace acr::rl {

using lightworld::Action;

// Discrete state description the decision list conditions on. Values are
// small integers; FeatureSchema gives them names.
using FeatureVector = std::vector<std::uint8_t>;

struct FeatureSchema {
  std::vector<std::string> names;
  std::vector<std::vector<std::string>> values;  // per feature, value names

  int find(std::string_view name) const;
  std::string describe(int feature, std::uint8_t value) const;
};

// Lightworld features: what lies underfoot, the first step of a shortest
// walkable route to the nearest unused key, unpressed switch and the goal,
// one open bit per door, and which neighbours are safely enterable.
const FeatureSchema& lightworld_schema(const lightworld::GridMap& map);
FeatureVector extract_features(const lightworld::GridMap& map,
                               const lightworld::GridState& s);

struct Condition {
  int feature = 0;
  std::uint8_t value = 0;
  friend bool operator==(const Condition&, const Condition&) = default;
};

struct Rule {
  std::vector<Condition> conditions;  // conjunction; empty matches everything
  Action action = Action::kDown;
  int coverage = 0;      // examples newly covered when the rule was grown
  double precision = 0;  // fraction of those with the rule's action
  int discovery = 0;     // order in which covering produced the rule

  bool matches(const FeatureVector& f) const;
  friend bool operator==(const Rule&, const Rule&) = default;
};

// Ordered rules; the first match fires. No match means the caller's default
// (uniform random) action.
class DecisionList {
 public:
  DecisionList() = default;
  explicit DecisionList(std::vector<Rule> rules) : rules_(std::move(rules)) {}

  const std::vector<Rule>& rules() const { return rules_; }
  std::optional<Action> lookup(const FeatureVector& f) const;
  std::string describe(const FeatureSchema& schema) const;

  friend bool operator==(const DecisionList&, const DecisionList&) = default;

 private:
  std::vector<Rule> rules_;
};

using Example = std::pair<FeatureVector, Action>;

// Greedy sequential covering. Each rule targets the majority action of the
// examples not yet covered (ties: smallest label) and starts empty; it then
// adds the feature=value test that most raises its precision over the whole
// example set (ties: more newly covered examples, then lower feature index,
// then lower value) until it is pure or no test helps. The examples it covers
// with its action are removed and the next rule is grown. Final order:
// coverage descending, then precision, then discovery. Throws ValidationError
// on an empty example set.
DecisionList learn_decision_list(const std::vector<Example>& examples);

}  // namespace acr::rl
