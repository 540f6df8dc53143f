#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "acr/graph.hpp"
#include "acr/hat.hpp"
#include "acr/inference.hpp"
#include "acr/qlearning.hpp"

namespace acr::rl {

// The ACR as an RL agent sees it, plus the shared inference state for objects
// whose category is still unknown. Lives for a whole training run so each
// object kind is learned once.
class AcrGuide {
 public:
  // Objects listed in `unseen` start with every object category of the ACR as
  // a hypothesis, even if the ACR already links them.
  AcrGuide(CategorySet acr, const LabelSet& unseen,
           ProbeStrategy strategy = ProbeStrategy::kPaperMinEntropy);

  const CategorySet& acr() const { return acr_; }
  const LabelSet& non_object_actions() const { return non_object_; }

  bool is_resolved(const std::string& object) const;
  // Object-related actions the ACR links to any of the objects. Unresolved
  // objects contribute the union of their remaining candidates.
  LabelSet object_actions(const LabelSet& objects) const;
  // non_object_actions() plus object_actions(objects); every action when that
  // is empty.
  std::vector<Action> permitted(const LabelSet& objects) const;

  // The first unresolved object among `objects`, if any.
  std::optional<std::string> unresolved_object(const LabelSet& objects) const;
  // Entropy-selected probe for an unresolved object.
  Action probe_action(const std::string& object) const;

  // Feeds a step back. When `action` is an object action tried on an
  // unresolved object, its success flag eliminates candidates.
  void observe(const LabelSet& objects, Action action, bool succeeded);

  // Probes spent so far, per object.
  const std::map<std::string, std::vector<std::pair<std::string, bool>>>& probes() const {
    return probes_;
  }

 private:
  struct Pending {
    HypothesisSet candidates;
    LabelSet tried;
  };

  CategorySet acr_;
  ProbeStrategy strategy_;
  LabelSet non_object_;
  std::map<std::string, Pending> pending_;
  std::map<std::string, LabelSet> learned_;
  std::map<std::string, std::vector<std::pair<std::string, bool>>> probes_;
};

// During the first n_acr episodes: probe unseen objects, otherwise act
// epsilon-greedily inside the ACR-permitted set. Afterwards plain
// epsilon-greedy.
Action select_action_acr(const QTable& q, StateKey s, const LabelSet& env_objects,
                         const AcrGuide& guide, int episode, Rng& rng,
                         const RLParams& params);

// Decision-list action for the first n_hat episodes (uniform when no rule
// fires), plain epsilon-greedy afterwards.
Action select_action_hat(const QTable& q, StateKey s, const FeatureVector& features,
                         const DecisionList& dlist, int episode, Rng& rng,
                         const RLParams& params);

// For the first max(n_acr, n_hat) episodes the decision-list action is taken
// when the ACR permits it; otherwise epsilon-greedy over the permitted set.
Action select_action_acr_hat(const QTable& q, StateKey s, const LabelSet& env_objects,
                             const FeatureVector& features, const AcrGuide& guide,
                             const DecisionList& dlist, int episode, Rng& rng,
                             const RLParams& params);

}  // namespace acr::rl
